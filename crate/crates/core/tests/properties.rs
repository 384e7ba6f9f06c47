mod common;

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use supervariety_core::budget::Budget;
use supervariety_core::cohomology::{
    build_complex, build_graded, cup_multiply, phi_embed, Cochain, CochainComplex, OddPolynomial,
};
use supervariety_core::liesuper::{clifford_assoc_graded, make_gl, LieSuperAlgebra, OddPoint};
use supervariety_core::superlinalg::{sparse, MatrixFp, PrimeField};
use supervariety_core::supermodule::{
    assoc_graded_module, dual, free_test, natural_module, standard_filtration, tensor,
    validate_module, SuperModule,
};
use supervariety_core::varieties::{nullcone_points, rank_variety_points};

fn matrix_strategy() -> impl Strategy<Value = (u64, Vec<Vec<i64>>)> {
    (prop::sample::select(vec![3u64, 5, 7, 2_147_483_647]), 1usize..8, 1usize..8).prop_flat_map(
        |(p, r, c)| {
            // sparse-ish rows so both storage layouts get exercised
            let entry = prop_oneof![3 => Just(0i64), 2 => -20i64..20];
            (Just(p), prop::collection::vec(prop::collection::vec(entry, c), r))
        },
    )
}

proptest! {
    #[test]
    fn rank_nullity((p, rows) in matrix_strategy()) {
        let f = PrimeField::new(p).unwrap();
        let a = MatrixFp::from_rows(f, &rows).unwrap();
        let kernel = a.kernel_basis();
        prop_assert_eq!(a.rank() + kernel.len(), a.cols());
        for v in &kernel {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(|&x| x == 0));
        }
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn solve_recovers_consistent_systems((p, rows) in matrix_strategy(), seed in any::<u64>()) {
        let f = PrimeField::new(p).unwrap();
        let a = MatrixFp::from_rows(f, &rows).unwrap();
        let x: Vec<u32> = (0..a.cols()).map(|i| f.reduce((seed.rotate_left(i as u32 * 7) % 1000) as i64)).collect();
        let b = a.mul_vec(&x).unwrap();
        let y = a.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(a.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn product_is_associative((p, rows) in matrix_strategy()) {
        let f = PrimeField::new(p).unwrap();
        let a = MatrixFp::from_rows(f, &rows).unwrap();
        let at = a.transpose();
        let lhs = a.mul(&at).unwrap().mul(&a).unwrap();
        let rhs = a.mul(&at.mul(&a).unwrap()).unwrap();
        prop_assert_eq!(lhs.to_dense_rows(), rhs.to_dense_rows());
    }
}

struct Gl11 {
    g: Arc<LieSuperAlgebra>,
    trivial: CochainComplex,
    hom: CochainComplex,
}

fn gl11() -> &'static Gl11 {
    static CELL: OnceLock<Gl11> = OnceLock::new();
    CELL.get_or_init(|| {
        let g = Arc::new(make_gl(1, 1, 3).unwrap());
        let b = Budget::default();
        let trivial =
            CochainComplex::with_coefficients(&SuperModule::trivial(g.clone()), 7, None, &b).unwrap();
        let nat = natural_module(&g).unwrap();
        let hom = build_complex(&nat, &nat, 6, &b).unwrap();
        Gl11 { g, trivial, hom }
    })
}

fn random_cochain(c: &CochainComplex, degree: usize, coeffs: &[i64]) -> Cochain {
    let f = c.field();
    let d = c.dim(degree);
    let entries = coeffs.iter().enumerate().map(|(k, &a)| ((k * 7919) % d, f.reduce(a)));
    Cochain {
        degree,
        coords: sparse::collect(f, entries.collect::<Vec<_>>()),
    }
}

fn add(f: PrimeField, a: &Cochain, b: &Cochain, sign_b: bool) -> Cochain {
    let c = if sign_b { f.neg(1) } else { 1 };
    Cochain {
        degree: a.degree,
        coords: sparse::axpy(f, &a.coords, c, &b.coords),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn leibniz_rule(i in 0usize..3, j in 0usize..3, a in prop::collection::vec(-5i64..5, 1..6), b in prop::collection::vec(-5i64..5, 1..10)) {
        let s = gl11();
        let f = s.g.field();
        let omega = random_cochain(&s.trivial, i, &a);
        let c = random_cochain(&s.hom, j, &b);
        let lhs = s.hom.differential(&cup_multiply(&s.trivial, &omega, &s.hom, &c).unwrap()).unwrap();
        let t1 = cup_multiply(&s.trivial, &s.trivial.differential(&omega).unwrap(), &s.hom, &c).unwrap();
        let t2 = cup_multiply(&s.trivial, &omega, &s.hom, &s.hom.differential(&c).unwrap()).unwrap();
        let rhs = add(f, &t1, &t2, i % 2 == 1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_lands_in_cocycles(a in -3i64..3, b in -3i64..3, c in -3i64..3, quadratic in any::<bool>()) {
        let s = gl11();
        let f = s.g.field();
        let poly = if quadratic {
            OddPolynomial::from_terms(f, 2, [(vec![2, 0], f.reduce(a)), (vec![1, 1], f.reduce(b)), (vec![0, 2], f.reduce(c))])
        } else {
            OddPolynomial::from_terms(f, 2, [(vec![1, 0], f.reduce(a)), (vec![0, 1], f.reduce(b))])
        }
        .unwrap();
        let trivial = if quadratic {
            CochainComplex::with_coefficients(&SuperModule::trivial(s.g.clone()), 7, None, &Budget::default()).unwrap()
        } else {
            CochainComplex::with_coefficients(&SuperModule::trivial(s.g.clone()), 4, None, &Budget::default()).unwrap()
        };
        let z = phi_embed(&trivial, &poly).unwrap();
        prop_assert!(trivial.is_cocycle(&z).unwrap());
    }

    #[test]
    fn cohomology_is_graded_commutative(i in 1usize..3, j in 1usize..3, pa in any::<bool>(), pb in any::<bool>(), seed in any::<u64>()) {
        let s = gl11();
        let t = &s.trivial;
        let f = t.field();
        let cocycle = |n: usize, odd: bool, salt: u64| -> Cochain {
            let kernel = t.differential_matrix(n).kernel_basis();
            let mut v = vec![0u32; t.dim(n)];
            for (k, basis) in kernel.iter().enumerate() {
                let c = f.reduce(((seed ^ salt).rotate_left(k as u32 * 5) % 7) as i64);
                for (x, &y) in v.iter_mut().zip(basis) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
            // keep one parity; ∂ preserves the number of η's mod 2
            for (idx, x) in v.iter_mut().enumerate() {
                let (m, _) = t.basis_element(n, idx);
                if (m.sym_len() % 2 == 1) != odd {
                    *x = 0;
                }
            }
            Cochain { degree: n, coords: sparse::from_dense(&v) }
        };
        let alpha = cocycle(i, pa, 1);
        let beta = cocycle(j, pb, 2);
        prop_assert!(t.is_cocycle(&alpha).unwrap() && t.is_cocycle(&beta).unwrap());
        let ab = cup_multiply(t, &alpha, t, &beta).unwrap();
        let ba = cup_multiply(t, &beta, t, &alpha).unwrap();
        let sign = (i * j) % 2 == 1 || (pa && pb);
        let diff = add(f, &ab, &ba, !sign);
        prop_assert!(t.is_coboundary(&diff).unwrap().is_coboundary());
    }

    #[test]
    fn random_module_constructions_are_modules(seed in any::<u64>()) {
        let g = gl11().g.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = common::random_module(&mut rng, &g);
        let n = common::random_module(&mut rng, &g);
        prop_assert!(validate_module(&m).is_valid());
        prop_assert!(validate_module(&dual(&m)).is_valid());
        prop_assert!(validate_module(&tensor(&m, &n).unwrap().module).is_valid());
    }

    #[test]
    fn varieties_are_conical(seed in any::<u64>()) {
        let g = gl11().g.clone();
        let f = g.field();
        let b = Budget::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = common::random_module(&mut rng, &g);
        let cone = nullcone_points(&g, &b).unwrap();
        let rv = rank_variety_points(&m, None, &b).unwrap();
        prop_assert!(rv.contains(&OddPoint::zero(2)));
        for x in &rv {
            prop_assert!(cone.binary_search(x).is_ok());
            for c in 1..f.p() {
                prop_assert!(rv.binary_search(&x.scale(f, c)).is_ok());
                prop_assert!(cone.binary_search(&x.scale(f, c)).is_ok());
            }
        }
        for x in &cone {
            prop_assert_eq!(free_test(&m, x).unwrap().rank, free_test(&m, &x.scale(f, 2)).unwrap().rank);
        }
    }

    #[test]
    fn graded_dims_sum_to_ungraded(seed in any::<u64>()) {
        let g = gl11().g.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = common::random_module(&mut rng, &g);
        let units: Vec<Vec<u32>> = (0..m.dim()).map(|i| { let mut v = vec![0; m.dim()]; v[i] = 1; v }).collect();
        // a single generator when one suffices, so the filtration is not trivial
        let filt = units
            .iter()
            .find_map(|u| standard_filtration(&m, std::slice::from_ref(u)).ok())
            .unwrap_or_else(|| standard_filtration(&m, &units).unwrap());
        let tilde = Arc::new(clifford_assoc_graded(&g));
        let gm = assoc_graded_module(&tilde, &m, &filt).unwrap();
        let b = Budget::default();
        let graded = build_graded(&gm, &gm, 4, &b).unwrap();
        let table = graded.graded_cohomology_dims().unwrap();
        let plain = graded.cohomology_dims();
        for (n, &d) in plain.iter().enumerate() {
            let s: usize = table.iter().filter(|(k, _)| k.0 == n).map(|(_, &v)| v).sum();
            prop_assert_eq!(s, d);
        }
    }
}

//! Module constructions over gl(1|1) shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use supervariety_core::liesuper::LieSuperAlgebra;
use supervariety_core::superlinalg::MatrixFp;
use supervariety_core::supermodule::{change_basis, direct_sum, validate_module, SuperModule};

/// Builds a module from action matrices given with signed entries, in the
/// basis order E11, E22, E12, E21, after reordering the basis so even
/// vectors come first.
fn from_parts(g: &Arc<LieSuperAlgebra>, parities: &[bool], rows: [Vec<Vec<i64>>; 4]) -> SuperModule {
    let f = g.field();
    let order: Vec<usize> = (0..parities.len())
        .filter(|&i| !parities[i])
        .chain((0..parities.len()).filter(|&i| parities[i]))
        .collect();
    let d1 = parities.iter().filter(|&&p| p).count();
    let action = rows
        .iter()
        .map(|m| {
            let permuted: Vec<Vec<i64>> = order
                .iter()
                .map(|&r| order.iter().map(|&c| m[r][c]).collect())
                .collect();
            MatrixFp::from_rows(f, &permuted).unwrap()
        })
        .collect();
    let m = SuperModule::new(g.clone(), (parities.len() - d1, d1), action).unwrap();
    assert!(validate_module(&m).is_valid());
    m
}

/// The Kac module `K(a, b)` on `v, w = E21·v` with `v` of parity `shift`.
pub fn kac(g: &Arc<LieSuperAlgebra>, a: i64, b: i64, shift: bool) -> SuperModule {
    let e11 = vec![vec![a, 0], vec![0, a - 1]];
    let e22 = vec![vec![b, 0], vec![0, b + 1]];
    let e12 = vec![vec![0, a + b], vec![0, 0]];
    let e21 = vec![vec![0, 0], vec![1, 0]];
    from_parts(g, &[shift, !shift], [e11, e22, e12, e21])
}

/// One-dimensional module where `E11` acts by `a` and `E22` by `-a`.
pub fn one_dim(g: &Arc<LieSuperAlgebra>, a: i64, shift: bool) -> SuperModule {
    from_parts(
        g,
        &[shift],
        [vec![vec![a]], vec![vec![-a]], vec![vec![0]], vec![vec![0]]],
    )
}

/// Random invertible parity-preserving change of basis.
fn random_even_basis(rng: &mut impl Rng, m: &SuperModule) -> SuperModule {
    let f = m.field();
    let d = m.dim();
    loop {
        let rows: Vec<Vec<i64>> = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| {
                        if m.parity(r) == m.parity(c) {
                            rng.gen_range(0..f.p() as i64)
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        let p = MatrixFp::from_rows(f, &rows).unwrap();
        if p.rank() == d {
            return change_basis(m, &p).unwrap();
        }
    }
}

/// A random gl(1|1)-module of dimension 2 to 4: a direct sum of Kac modules
/// and one-dimensional modules, in a random even basis.
pub fn random_module(rng: &mut impl Rng, g: &Arc<LieSuperAlgebra>) -> SuperModule {
    let p = g.p() as i64;
    let target = rng.gen_range(2..=4);
    let mut m: Option<SuperModule> = None;
    let mut dim = 0;
    while dim < target {
        let piece = if target - dim >= 2 && rng.gen_bool(0.6) {
            kac(g, rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_bool(0.5))
        } else {
            one_dim(g, rng.gen_range(0..p), rng.gen_bool(0.5))
        };
        dim += piece.dim();
        m = Some(match m {
            None => piece,
            Some(prev) => direct_sum(&prev, &piece).unwrap(),
        });
    }
    random_even_basis(rng, &m.unwrap())
}

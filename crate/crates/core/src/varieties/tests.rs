use std::sync::Arc;

use super::*;
use crate::liesuper::{abelian, clifford_pair, make_gl};
use crate::supermodule::natural_module;

fn pt(c: &[u32]) -> OddPoint {
    OddPoint::new(c.to_vec())
}

#[test]
fn ideal_examples() {
    let g = make_gl(1, 1, 3).unwrap();
    let ideal = nullcone_ideal(&g);
    assert_eq!(ideal.forms.len(), 1);
    assert_eq!(ideal.forms[0].to_string(), "y1*y2");
    assert!(nullcone_ideal(&abelian(1, 3, 5).unwrap()).is_empty());
    let c = nullcone_ideal(&clifford_pair(3).unwrap());
    assert_eq!(c.forms.len(), 1);
    assert_eq!(c.forms[0].to_string(), "y1^2");
}

#[test]
fn point_examples() {
    let b = Budget::default();
    let pts = nullcone_points(&make_gl(1, 1, 3).unwrap(), &b).unwrap();
    assert_eq!(
        pts,
        vec![pt(&[0, 0]), pt(&[0, 1]), pt(&[0, 2]), pt(&[1, 0]), pt(&[2, 0])]
    );
    assert_eq!(nullcone_points(&abelian(0, 2, 3).unwrap(), &b).unwrap().len(), 9);
    assert_eq!(nullcone_points(&clifford_pair(3).unwrap(), &b).unwrap(), vec![pt(&[0])]);
    let tight = Budget { points: 8, ..b };
    assert!(matches!(
        nullcone_points(&abelian(0, 2, 3).unwrap(), &tight),
        Err(Error::Budget(_))
    ));
}

#[test]
fn nullcone_agrees_with_bracket() {
    let g = make_gl(2, 1, 3).unwrap();
    let pts: BTreeSet<_> = nullcone_points(&g, &Budget::default()).unwrap().into_iter().collect();
    for idx in 0..3u64.pow(4) {
        let x = decode_point(idx, 3, 4);
        let zero = g.self_bracket(&x).unwrap().iter().all(|&c| c == 0);
        assert_eq!(zero, pts.contains(&x));
    }
}

#[test]
fn rank_variety_examples() {
    let b = Budget::default();
    let g = Arc::new(make_gl(1, 1, 3).unwrap());
    let nat = natural_module(&g).unwrap();
    assert_eq!(rank_variety_points(&nat, None, &b).unwrap(), vec![pt(&[0, 0])]);
    let k = SuperModule::trivial(g.clone());
    assert_eq!(rank_variety_points(&k, None, &b).unwrap().len(), 5);
    assert!(rank_variety_points(&k, Some(&[pt(&[1, 1])]), &b).is_err());
}

#[test]
fn orbit_reps() {
    assert_eq!(gl_orbit_rep(1, 1, 0, 0).unwrap(), pt(&[0, 0]));
    // odd order for gl(2|2): E13 E14 E23 E24 E31 E32 E41 E42
    assert_eq!(gl_orbit_rep(2, 2, 1, 1).unwrap(), pt(&[1, 0, 0, 0, 0, 0, 0, 1]));
    assert_eq!(gl_orbit_rep(2, 2, 1, 0).unwrap(), pt(&[1, 0, 0, 0, 0, 0, 0, 0]));
    assert_eq!(gl_orbit_rep(2, 2, 0, 2).unwrap(), pt(&[0, 0, 0, 0, 1, 0, 0, 1]));
    assert!(gl_orbit_rep(2, 2, 2, 1).is_err());
    let g = make_gl(2, 2, 3).unwrap();
    for (r, s) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)] {
        let x = gl_orbit_rep(2, 2, r, s).unwrap();
        assert!(g.self_bracket(&x).unwrap().iter().all(|&c| c == 0));
    }
    let g = Arc::new(make_gl(2, 2, 3).unwrap());
    let nat = natural_module(&g).unwrap();
    assert_eq!(free_test(&nat, &gl_orbit_rep(2, 2, 1, 0).unwrap()).unwrap().rank, 1);
}

#[test]
fn support_probe_examples() {
    let b = Budget::default();
    let g = Arc::new(make_gl(1, 1, 3).unwrap());
    let nat = natural_module(&g).unwrap();
    let r = support_zero_probe(&nat, 8, 4, None, &b).unwrap();
    assert_eq!(r.verdict, SupportVerdict::FiniteProjectiveDimensionExpected);
    assert!(r.window.is_some_and(|(i0, len)| i0 <= 8 && len >= 4));

    let k = SuperModule::trivial(g.clone());
    let r = support_zero_probe(&k, 8, 4, None, &b).unwrap();
    assert_eq!(r.verdict, SupportVerdict::InfiniteProjectiveDimensionExpected);
    let w = r.witness.unwrap();
    assert_eq!(w.point, pt(&[1, 0]));
    assert_eq!(w.form.to_string(), "y1");
    assert_eq!(w.steps.iter().map(|s| s.degree).collect::<Vec<_>>(), vec![3, 6, 9, 12]);

    let c = Arc::new(clifford_pair(3).unwrap());
    let r = support_zero_probe(&SuperModule::trivial(c), 8, 4, None, &b).unwrap();
    assert_eq!(r.window, Some((2, 4)));
}

#[test]
fn tensor_examples() {
    let b = Budget::default();
    let g = Arc::new(make_gl(1, 1, 3).unwrap());
    let nat = natural_module(&g).unwrap();
    let k = SuperModule::trivial(g.clone());
    let r = tensor_property_check(&k, &k, None, &b).unwrap();
    assert!(r.holds);
    assert_eq!(r.points_tensor.len(), 5);
    for (m, n) in [(&nat, &nat), (&nat, &k), (&k, &nat)] {
        let r = tensor_property_check(m, n, None, &b).unwrap();
        assert!(r.holds);
        assert_eq!(r.points_tensor, vec![pt(&[0, 0])]);
    }
}

#[test]
fn global_dimension_examples() {
    let b = Budget::default();
    let c = Arc::new(clifford_pair(3).unwrap());
    let r = global_dim_probe(&c, 8, 4, &b).unwrap();
    assert_eq!(r.verdict, GlobalDimVerdict::FiniteGlobalDimensionExpected);
    assert_eq!(r.certificate, Some(vec![vec![1]]));

    let g = Arc::new(make_gl(1, 1, 3).unwrap());
    let r = global_dim_probe(&g, 8, 4, &b).unwrap();
    assert_eq!(r.verdict, GlobalDimVerdict::NonzeroNullcone);
    assert_eq!(r.witness, Some(pt(&[1, 0])));

    let even = Arc::new(abelian(2, 0, 3).unwrap());
    let r = global_dim_probe(&even, 3, 4, &b).unwrap();
    assert_eq!(r.verdict, GlobalDimVerdict::FiniteGlobalDimensionExpected);
}

/// `[y_1,y_1] = z_1`, `[y_2,y_2] = z_2`: both squares lie in the ideal.
#[test]
fn certification_handles_diagonal_squares() {
    use crate::liesuper::{BasisElement, Parity};
    let f = PrimeField::new(5).unwrap();
    let basis = vec![
        BasisElement::new("z1", Parity::Even),
        BasisElement::new("z2", Parity::Even),
        BasisElement::new("y1", Parity::Odd),
        BasisElement::new("y2", Parity::Odd),
    ];
    let g = LieSuperAlgebra::new(f, basis, [((2, 2), vec![(0, 1)]), ((3, 3), vec![(1, 1)])], None)
        .unwrap();
    assert_eq!(certify_trivial_nullcone(&g, &Budget::default()), Some(vec![vec![1, 0], vec![1]]));

    // [y,y] = z only through y1^2 + y2^2, which has points over the closure
    let basis = vec![
        BasisElement::new("z", Parity::Even),
        BasisElement::new("y1", Parity::Odd),
        BasisElement::new("y2", Parity::Odd),
    ];
    let f = PrimeField::new(3).unwrap();
    let g = LieSuperAlgebra::new(f, basis, [((1, 1), vec![(0, 1)]), ((2, 2), vec![(0, 1)])], None)
        .unwrap();
    // y1^2 + y2^2 has no nonzero F_3-zero but is not certified
    assert_eq!(nullcone_points(&g, &Budget::default()).unwrap().len(), 1);
    let r = global_dim_probe(&Arc::new(g), 8, 4, &Budget::default()).unwrap();
    assert_eq!(r.verdict, GlobalDimVerdict::Undetermined);
}

#[test]
fn points_file_parsing() {
    let g = make_gl(1, 1, 3).unwrap();
    let pts = parse_points(&g, "# nullcone\n1,0\n\n0, -1\n1,0\n").unwrap();
    assert_eq!(pts, vec![pt(&[0, 2]), pt(&[1, 0])]);
    assert!(parse_points(&g, "1,0,0\n").is_err());
    assert!(parse_points(&g, "a,0\n").is_err());
}

use carlitz_core::carlitz::{act, TensorPoint};
use carlitz_core::ff::{Fe, Field, Poly, RatFunc};
use carlitz_core::linalg::rank_tpoly_matrix;
use carlitz_core::places::{rr_basis, Divisor, Place};
use carlitz_core::relsolve::*;
use carlitz_core::Error;
use proptest::prelude::*;

fn f3() -> Field {
    Field::prime(3).unwrap()
}

fn th(f: &Field, k: i64) -> RatFunc {
    RatFunc::theta(f).pow(k)
}

fn tp(f: &Field, c: &[i64]) -> Poly {
    Poly::from_ints(f, c)
}

fn worked_example(f: &Field) -> RelationProblem {
    let p1 = TensorPoint::new(vec![RatFunc::zero(f), &th(f, 2) + &RatFunc::one(f)]).unwrap();
    let p2 = TensorPoint::new(vec![RatFunc::zero(f), th(f, -1)]).unwrap();
    RelationProblem::new(vec![p1, p2]).unwrap()
}

#[test]
fn worked_example_divisor() {
    let f = f3();
    let prob = worked_example(&f);
    let c = c_values(&prob).unwrap();
    let w = Place::Finite(tp(&f, &[1, 0, 1]));
    assert!(c.contains(&(Place::Infinity, -3)));
    assert!(c.contains(&(Place::at(&f, Fe::ZERO), -1)));
    assert!(!c.iter().any(|(p, v)| *p == w && *v != 0));
    let d = relation_divisor(&prob).unwrap();
    assert_eq!(d, Divisor::from_pairs([(Place::Infinity, 3), (Place::at(&f, Fe::ZERO), 1)]));
}

#[test]
fn worked_example_matrix() {
    let f = f3();
    let prob = worked_example(&f);
    let rr = rr_basis(&f, &relation_divisor(&prob).unwrap());
    let sys = assemble_system(&prob, &rr).unwrap();
    // Rows θ^{-3}, θ^{-1}, 1, θ, ..., θ^6, θ^9; G = θ^3.
    let exps: Vec<usize> = sys.row_labels.iter().map(|&(e, _)| e).collect();
    assert_eq!(exps, vec![0, 2, 3, 4, 5, 6, 7, 8, 9, 12]);
    let z = || tp(&f, &[]);
    let one = || tp(&f, &[1]);
    let m1 = || tp(&f, &[-1]);
    let mt2 = || tp(&f, &[0, 0, -1]);
    let t2 = || tp(&f, &[0, 2]);
    let expect = vec![
        vec![one(), z(), z(), z(), z(), z(), z()],
        vec![mt2(), z(), z(), z(), z(), z(), m1()],
        vec![t2(), tp(&f, &[1, 0, -1]), z(), z(), z(), m1(), z()],
        vec![m1(), t2(), mt2(), z(), z(), z(), z()],
        vec![z(), m1(), t2(), mt2(), z(), m1(), z()],
        vec![z(), z(), z(), t2(), mt2(), z(), z()],
        vec![z(), z(), z(), m1(), t2(), z(), z()],
        vec![z(), z(), z(), z(), m1(), z(), z()],
        vec![z(), z(), z(), one(), z(), z(), z()],
        vec![z(), z(), z(), z(), one(), z(), z()],
    ];
    assert_eq!(sys.matrix, expect);
    assert!(sys.matrix.iter().flatten().all(|p| p.deg().unwrap_or(0) <= 2));
    assert_eq!(rank_tpoly_matrix(&sys.matrix), 7);
    let k = kernel_bounded(&f, &sys.matrix, 7, 2 * 7);
    assert!(k.is_empty());
    let module = relation_generators(&prob).unwrap();
    assert!(module.generators.is_empty());
    assert_eq!(module.rr_dim, 5);
    assert_eq!(module.degree_bound, 14);
}

#[test]
fn dependent_pair() {
    let f = f3();
    let p1 = TensorPoint::last(2, RatFunc::one(&f));
    let p2 = act(&Poly::x(&f), &p1).unwrap();
    let prob = RelationProblem::new(vec![p1, p2]).unwrap();
    let module = relation_generators(&prob).unwrap();
    // (0, 1) is killed by t^3 - t when n = q - 1, so G has rank 2.
    assert_eq!(
        module.generators,
        vec![vec![tp(&f, &[0, 1]), tp(&f, &[2])], vec![tp(&f, &[0, 2]), tp(&f, &[0, 0, 1])]]
    );
    let brute = brute_force_relations(&prob, 1).unwrap();
    assert_eq!(brute.len(), 3);
    assert!(brute.contains(&vec![tp(&f, &[0, 1]), tp(&f, &[2])]));
}

#[test]
fn single_non_torsion_points() {
    let f = f3();
    for w in [tp(&f, &[0, 1]), tp(&f, &[1, 0, 1]), tp(&f, &[1, 1])] {
        let alpha = RatFunc::from_poly(w).inv().unwrap();
        let prob = RelationProblem::new(vec![TensorPoint::last(2, alpha)]).unwrap();
        assert!(relation_generators(&prob).unwrap().generators.is_empty());
        assert_eq!(brute_force_relations(&prob, 2).unwrap().len(), 1);
    }
}

#[test]
fn input_validation() {
    let f = f3();
    let p = TensorPoint::last(2, RatFunc::one(&f));
    assert!(matches!(RelationProblem::new(vec![p.clone(), p.clone()]), Err(Error::DuplicatePoints(1, 2))));
    assert!(matches!(RelationProblem::new(vec![TensorPoint::zero(&f, 2)]), Err(Error::ZeroPoint(1))));
    assert!(RelationProblem::new(vec![p, TensorPoint::last(3, RatFunc::one(&f))]).is_err());
    let big = RelationProblem::new(vec![TensorPoint::last(2, th(&f, 1))]).unwrap();
    assert!(matches!(brute_force_relations(&big, 20), Err(Error::EnumerationTooLarge(_))));
}

#[test]
fn constant_basis_system_shape() {
    let f = f3();
    let prob = RelationProblem::new(vec![TensorPoint::last(2, RatFunc::one(&f))]).unwrap();
    let rr = rr_basis(&f, &Divisor::zero());
    let sys = assemble_system(&prob, &rr).unwrap();
    assert_eq!(sys.nrows(), 3);
    assert_eq!(sys.ncols(), 2);
}

fn small_rat(f: &Field, num: &[u64], den: &[u64]) -> RatFunc {
    let a = Poly::new(f, num.iter().map(|&c| f.element(c)).collect());
    let b = Poly::new(f, den.iter().map(|&c| f.element(c)).collect());
    if b.is_zero() {
        RatFunc::from_poly(a)
    } else {
        RatFunc::new(a, b).unwrap()
    }
}

fn point_strategy() -> impl Strategy<Value = Vec<(Vec<u64>, Vec<u64>)>> {
    proptest::collection::vec((proptest::collection::vec(0u64..3, 0..3), proptest::collection::vec(0u64..3, 0..3)), 1..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn solver_agrees_with_enumeration(
        pts in proptest::collection::vec(point_strategy(), 1..3),
        n in 1usize..3,
        rel in proptest::collection::vec(0u64..3, 2),
    ) {
        let f = f3();
        let mut points: Vec<TensorPoint> = pts
            .iter()
            .map(|raw| {
                let mut coords: Vec<RatFunc> = raw.iter().map(|(a, b)| small_rat(&f, a, b)).collect();
                coords.resize(n, RatFunc::zero(&f));
                coords.truncate(n);
                TensorPoint::new(coords).unwrap()
            })
            .collect();
        // Make some instances dependent on purpose.
        if points.len() == 2 && rel[0] == 0 {
            let a = Poly::new(&f, vec![f.element(rel[1]), Fe::ONE]);
            points[1] = act(&a, &points[0]).unwrap();
        }
        prop_assume!(points.iter().all(|p| !p.is_zero()));
        prop_assume!(points.len() < 2 || points[0] != points[1]);
        let prob = RelationProblem::new(points).unwrap();
        let module = relation_generators(&prob).unwrap();
        for g in &module.generators {
            prop_assert!(prob.combine(g).unwrap().is_zero());
            prop_assert!(g.iter().filter_map(|p| p.deg()).all(|k| k <= module.degree_bound));
        }
        let brute = brute_force_relations(&prob, 2).unwrap();
        for v in &brute {
            if v.iter().all(|p| p.is_zero()) { continue; }
            prop_assert!(!module.generators.is_empty());
            prop_assert!(module_contains(&module.generators, v));
            // The difference equation has a solution for every relation and it
            // satisfies the assembled system.
            let g = solve_difference(&prob.combine_motives(v), prob.n).unwrap();
            let rr = rr_basis(&f, &module.divisor);
            let sys = assemble_system(&prob, &rr).unwrap();
            let mut x = expand_in_basis(&rr, &g).unwrap();
            x.extend(v.iter().cloned());
            prop_assert!(sys.apply(&x).iter().all(|p| p.is_zero()));
        }
        // Conversely every F_q-combination of t^k·m_i of degree ≤ 2 is enumerated;
        // checking the shifted generators themselves suffices since brute is a subspace.
        for g in &module.generators {
            let d = g.iter().filter_map(|p| p.deg()).max().unwrap_or(0);
            for k in 0..=2usize.saturating_sub(d) {
                if d + k <= 2 {
                    let shifted: TVec = g.iter().map(|p| p.shift(k)).collect();
                    prop_assert!(brute.contains(&shifted));
                }
            }
        }
    }
}

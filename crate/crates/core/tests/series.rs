use carlitz_core::carlitz::{act, l_i, point_to_motive, TensorPoint};
use carlitz_core::ff::{Field, FieldSpec, Poly, RatFunc, Val};
use carlitz_core::places::Place;
use carlitz_core::series::*;
use carlitz_core::tpoly::TPoly;
use carlitz_core::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f3() -> Field {
    Field::prime(3).unwrap()
}

fn th(f: &Field, k: i64) -> RatFunc {
    RatFunc::theta(f).pow(k)
}

fn int(f: &Field, c: i64) -> RatFunc {
    RatFunc::from_int(f, c)
}

fn poly(f: &Field, c: &[i64]) -> RatFunc {
    RatFunc::from_poly(Poly::from_ints(f, c))
}

fn identity_residual(n_prec: i64) -> Val {
    let f = f3();
    let coeffs = vec![th(&f, 1).scale(f.from_int(2)), int(&f, -1), poly(&f, &[1, 0, -1])];
    let prec = n_prec + guard_digits(&coeffs, Completion::Infinity);
    let values = vec![
        cpl_inf(2, &th(&f, 1), prec).unwrap(),
        cpl_inf(2, &th(&f, 2), prec).unwrap(),
        cpl_inf(2, &int(&f, 1), prec).unwrap(),
    ];
    verify_relation(&values, &coeffs).unwrap()
}

#[test]
fn polylog_identity_holds_numerically() {
    assert!(identity_residual(100) >= Val::Finite(100));
    assert!(identity_residual(200) >= Val::Finite(200));
    // perturbing a coefficient breaks the identity
    let f = f3();
    let values = vec![cpl_inf(2, &th(&f, 1), 102).unwrap(), cpl_inf(2, &int(&f, 1), 102).unwrap()];
    let bad = verify_relation(&values, &[th(&f, 1).scale(f.from_int(2)), poly(&f, &[0, 0, -1])]).unwrap();
    assert!(bad < Val::Finite(10));
}

#[test]
fn embedding_examples() {
    let f = f3();
    let x = embed(&th(&f, 1), Completion::Infinity, 10);
    assert_eq!(x.valuation(), -1);
    assert_eq!(x.digits()[0], f.from_int(1));
    assert!(x.digits()[1..].iter().all(|d| d.is_zero()));
    let c = f.from_int(2);
    let y = embed(&poly(&f, &[-2, 1]).inv().unwrap(), Completion::At(c), 10);
    assert_eq!(y.valuation(), -1);
    // 1/(1 - 1/θ) = θ/(θ - 1)
    let g = (&th(&f, 1) / &poly(&f, &[-1, 1])).clone();
    let s = embed(&g, Completion::Infinity, 20);
    assert_eq!(s.valuation(), 0);
    assert!(s.digits().iter().all(|&d| d == f.from_int(1)));
    assert_eq!(s.digits().len(), 20);
}

#[test]
fn polylog_leading_terms() {
    let f = f3();
    assert!(cpl_inf(3, &RatFunc::zero(&f), 50).unwrap().is_zero());
    let li = cpl_inf(1, &int(&f, 1), 30).unwrap();
    let first = embed(&int(&f, 1), Completion::Infinity, 30);
    let rest = li.sub(&first).unwrap();
    let second = embed(&l_i(&f, 1).inv().unwrap(), Completion::Infinity, 30);
    assert_eq!(rest.valuation(), second.valuation());
    assert_eq!(rest.valuation(), 3);
}

#[test]
fn polylog_domain_is_enforced() {
    let f = f3();
    // n = 1, q = 3: need (q-1)(-ord) < 3, so θ^2 is outside.
    assert!(matches!(cpl_inf(1, &th(&f, 2), 20), Err(Error::Domain(_))));
    assert!(cpl_inf(1, &th(&f, 1), 20).is_ok());
}

#[test]
fn deformation_specializes() {
    let f = f3();
    let z = poly(&f, &[1, 1]);
    let a = cpl_deform_at_theta(2, &TPoly::constant(z.clone()), 60).unwrap();
    let b = cpl_inf(2, &z, 60).unwrap();
    assert!(a.agrees_to(&b, 60));
    // f_0 + f_1 t gives Li_n(f_0) + θ Li_n(f_1)
    let f0 = th(&f, 1);
    let f1 = int(&f, 2);
    let ft = TPoly::new(&f, vec![f0.clone(), f1.clone()]);
    let lhs = cpl_deform_at_theta(2, &ft, 60).unwrap();
    let rhs = verify_relation(
        &[lhs, cpl_inf(2, &f0, 61).unwrap(), cpl_inf(2, &f1, 61).unwrap()],
        &[int(&f, 1), int(&f, -1), th(&f, 1).scale(f.from_int(-1))],
    )
    .unwrap();
    assert!(rhs >= Val::Finite(60));
    assert!(cpl_deform_at_theta(2, &TPoly::zero(&f), 10).unwrap().is_zero());
}

#[test]
fn log_formula_on_the_worked_point() {
    let f = f3();
    let p = TensorPoint::new(vec![th(&f, 1).scale(f.from_int(2)), th(&f, 2)]).unwrap();
    let formula = log_last_coord_formula(&p, 64).unwrap();
    let coeffs = [th(&f, 1).scale(f.from_int(2)), int(&f, -1)];
    let prec = 64 + guard_digits(&coeffs, Completion::Infinity);
    let direct = verify_relation(
        &[formula, cpl_inf(2, &th(&f, 1), prec).unwrap(), cpl_inf(2, &th(&f, 2), prec).unwrap()],
        &[int(&f, 1), coeffs[0].clone().scale(f.from_int(-1)), int(&f, 1)],
    )
    .unwrap();
    assert!(direct >= Val::Finite(64));
}

#[test]
fn log_of_simple_points() {
    let f = f3();
    let zero = log_point(&TensorPoint::zero(&f, 2), 30).unwrap();
    assert!(zero.iter().all(|x| x.is_zero()));
    let alpha = poly(&f, &[1, 2]);
    let l = log_point(&TensorPoint::last(1, alpha.clone()), 40).unwrap();
    assert!(l[0].agrees_to(&cpl_inf(1, &alpha, 40).unwrap(), 40));
    let l = log_point(&TensorPoint::last(3, alpha.clone()), 40).unwrap();
    assert!(l[2].agrees_to(&cpl_inf(3, &alpha, 40).unwrap(), 40));
}

#[test]
fn precision_is_honest() {
    let f = f3();
    let alpha = poly(&f, &[2, 0, 1]);
    let a = cpl_inf(2, &alpha, 64).unwrap();
    let b = cpl_inf(2, &alpha, 128).unwrap();
    assert_eq!(a.precision(), 64);
    assert!(a.agrees_to(&b, 64));
    let p = TensorPoint::new(vec![th(&f, 1), int(&f, 1)]).unwrap();
    let a = log_point(&p, 40).unwrap();
    let b = log_point(&p, 80).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!(x.agrees_to(y, 40));
    }
}

#[test]
fn verify_edge_cases() {
    let f = f3();
    let v = cpl_inf(1, &int(&f, 1), 10).unwrap();
    assert_eq!(verify_relation(&[v.clone()], &[RatFunc::zero(&f)]).unwrap(), Val::Infinity);
    let w = embed(&int(&f, 1), Completion::At(f.from_int(0)), 10);
    assert!(matches!(verify_relation(&[v, w], &[int(&f, 1), int(&f, 1)]), Err(Error::MixedCompletions)));
}

#[test]
fn vadic_valuation_of_l_i() {
    for spec in [FieldSpec::new(3, 1, 1), FieldSpec::new(2, 1, 2), FieldSpec::new(5, 1, 1)] {
        let f = Field::new(spec).unwrap();
        for c in f.subfield_elements() {
            let place = Place::at(&f, c);
            for i in 0..5 {
                assert_eq!(place.ord(&l_i(&f, i)), Val::Finite(i as i64));
            }
        }
    }
}

#[test]
fn vadic_polylog() {
    let f = f3();
    let v = Place::at(&f, f.from_int(0));
    assert!(cpl_v(2, &RatFunc::zero(&f), &v, 20).unwrap().is_zero());
    // ord_v(α) = 1: the twisted value matches the direct series.
    let alpha = poly(&f, &[0, 1, 1]);
    let direct = cpl_v(1, &alpha, &v, 64).unwrap();
    for a in admissible_multipliers(1, &alpha, &v, 2).unwrap() {
        assert!(cpl_v_with(1, &alpha, &v, &a, 64).unwrap().agrees_to(&direct, 64));
    }
    // ord_v(α) = 0: two multipliers give the same value.
    let alpha = poly(&f, &[1, 1]);
    let ms = admissible_multipliers(1, &alpha, &v, 2).unwrap();
    assert_eq!(ms.len(), 2);
    let a = cpl_v_with(1, &alpha, &v, &ms[0], 64).unwrap();
    let b = cpl_v_with(1, &alpha, &v, &ms[1], 64).unwrap();
    assert!(a.agrees_to(&b, 64));
    assert!(cpl_v(1, &alpha, &v, 64).unwrap().agrees_to(&a, 64));
    assert!(matches!(cpl_v(1, &th(&f, -1), &v, 10), Err(Error::Domain(_))));
}

/// A random point with |p_j| small enough for log, over F_3.
fn random_point(rng: &mut ChaCha8Rng, f: &Field, n: usize) -> TensorPoint {
    let q = f.q() as i64;
    let coords = (0..n)
        .map(|idx| {
            let j = (n - 1 - idx) as i64;
            // largest admissible degree d: (q-1)(d - j) < nq
            let dmax = j + (n as i64 * q - 1) / (q - 1);
            loop {
                let dden = rng.gen_range(0..=2usize);
                let dnum = rng.gen_range(0..=(dmax + dden as i64).clamp(0, 3) as usize);
                let num: Vec<i64> = (0..=dnum).map(|_| rng.gen_range(0..3)).collect();
                let mut den: Vec<i64> = (0..dden).map(|_| rng.gen_range(0..3)).collect();
                den.push(1);
                let x = RatFunc::new(Poly::from_ints(f, &num), Poly::from_ints(f, &den));
                if let Ok(x) = x {
                    if let Val::Finite(v) = x.ord_inf() {
                        if (q - 1) * (j - v) >= n as i64 * q {
                            continue;
                        }
                    }
                    return x;
                }
            }
        })
        .collect();
    TensorPoint::new(coords).unwrap()
}

#[test]
fn exp_inverts_log_and_functional_equation() {
    let f = f3();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let t = Poly::from_ints(&f, &[0, 1]);
    for _ in 0..12 {
        let n = rng.gen_range(1..=3);
        let p = random_point(&mut rng, &f, n);
        let l = log_point(&p, 64).unwrap();
        let e = exp_lie(&l, 64).unwrap();
        for (x, y) in e.iter().zip(embed_point(&p, Completion::Infinity, 64)) {
            assert!(x.agrees_to(&y, 64), "exp∘log at {p:?}");
        }
        let tp = act(&t, &p).unwrap();
        if !carlitz_core::carlitz::in_log_domain(&tp) {
            continue;
        }
        let lhs = log_point(&tp, 64).unwrap();
        let rhs = apply_differential(&t, &log_point(&p, 65).unwrap()).unwrap();
        for (x, y) in lhs.iter().zip(&rhs) {
            assert!(x.agrees_to(y, 64), "functional equation at {p:?}");
        }
        let last = log_last_coord_formula(&p, 64).unwrap();
        assert!(last.agrees_to(&l[n - 1], 64));
        let deform = cpl_deform_at_theta(n, &point_to_motive(&p), 64).unwrap();
        assert!(deform.agrees_to(&l[n - 1], 64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn polylog_is_fq_linear(c in 0i64..3, num in proptest::collection::vec(0i64..3, 1..3)) {
        let f = f3();
        let alpha = poly(&f, &num);
        let lhs = cpl_inf(2, &alpha.scale(f.from_int(c)), 40).unwrap();
        let rhs = cpl_inf(2, &alpha, 40).unwrap().scale(f.from_int(c));
        prop_assert!(lhs.agrees_to(&rhs.truncate(40), 40));
    }

    #[test]
    fn laurent_ring_laws(a in proptest::collection::vec(0i64..3, 1..5), b in proptest::collection::vec(0i64..3, 1..5), d in proptest::collection::vec(0i64..3, 0..3)) {
        let f = f3();
        let mut den = d.clone();
        den.push(1);
        let x = RatFunc::new(Poly::from_ints(&f, &a), Poly::from_ints(&f, &den)).unwrap();
        let y = poly(&f, &b);
        for comp in [Completion::Infinity, Completion::At(f.from_int(1))] {
            if den.len() > 1 && Poly::from_ints(&f, &den).eval(f.from_int(1)).is_zero() && comp != Completion::Infinity {
                continue;
            }
            let ex = embed(&x, comp, 30);
            let ey = embed(&y, comp, 30);
            let prod = ex.mul(&ey).unwrap();
            let exact = embed(&(&x * &y), comp, prod.precision());
            prop_assert!(prod.agrees_to(&exact, prod.precision()));
            let sum = ex.add(&ey).unwrap();
            prop_assert!(sum.agrees_to(&embed(&(&x + &y), comp, 30), sum.precision()));
            if !x.is_zero() {
                let inv = ex.inv().unwrap();
                prop_assert!(inv.agrees_to(&embed(&x.inv().unwrap(), comp, inv.precision()), inv.precision()));
            }
            prop_assert!(ex.frob().agrees_to(&embed(&x.frob(), comp, 90), ex.frob().precision().min(90)));
        }
    }
}

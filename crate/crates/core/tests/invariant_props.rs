use crflat::construct::RigidModelData;
use crflat::invariants::{
    compute_j, compute_s, compute_w, ma_residual, monge_residual, reduced_j, s1111_residuals,
};
use crflat::series::count_upto_order;
use crflat::{full_report, mtilde0, HypersurfaceGerm, Monomial, Series, Tolerances, Var, C64};
use proptest::prelude::*;

const ORDER: u32 = 10;

fn coeff() -> impl Strategy<Value = C64> {
    (-0.3..0.3f64, -0.3..0.3f64).prop_map(|(a, b)| C64::new(a, b))
}

/// The model germ plus a real perturbation of degree >= 3.
fn perturbed_model() -> impl Strategy<Value = HypersurfaceGerm> {
    prop::collection::vec((0..count_upto_order(ORDER), coeff()), 0..6).prop_map(|extra| {
        let mut f = mtilde0(ORDER).unwrap().into_series();
        for (i, c) in extra {
            let m = Monomial::from_index(i);
            if m.degree() < 3 {
                continue;
            }
            let pair =
                &Series::monomial(m, c, ORDER) + &Series::monomial(m.conj(), c.conj(), ORDER);
            f = &f + &pair;
        }
        HypersurfaceGerm::new(f).unwrap()
    })
}

/// A random `z2, z2b` series with the given minimum degree.
fn z2_series(order: u32, min_degree: u32) -> impl Strategy<Value = Series> {
    prop::collection::vec((0..=order, 0..=order, coeff()), 0..6).prop_map(move |t| {
        Series::from_terms(
            t.into_iter()
                .filter(|(p, q, _)| p + q >= min_degree)
                .map(|(p, q, c)| (Monomial::new(0, 0, p, q), c)),
            order,
        )
    })
}

fn real(s: &Series) -> Series {
    (s + &s.conj()).scale(0.5)
}

/// Arbitrary data of model form, ignoring the structural equations.
fn model_form() -> impl Strategy<Value = HypersurfaceGerm> {
    (
        z2_series(ORDER - 2, 1),
        z2_series(ORDER - 2, 2),
        z2_series(ORDER - 1, 1),
        z2_series(ORDER, 2),
        0.5..1.5f64,
    )
        .prop_map(|(r, t, u, v, lead)| {
            let data = RigidModelData {
                r: &Series::one(ORDER - 2) + &real(&r),
                t: &Series::monomial(Monomial::new(0, 0, 0, 1), lead, ORDER - 2) + &t,
                u,
                rev: real(&v),
            };
            HypersurfaceGerm::new(data.assemble_series()).unwrap()
        })
}

fn tol() -> Tolerances {
    Tolerances::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn scaling_equivariance(g in perturbed_model(), a in 0.2..5.0f64) {
        let t = tol();
        let h = g.scaled(a).unwrap();
        prop_assert!(t.agree(&compute_s(&h, &t).unwrap(), &compute_s(&g, &t).unwrap()));
        let ma = ma_residual(&g).unwrap();
        prop_assert!(t.agree(&ma_residual(&h).unwrap(), &ma.scale(a * a)));
        let mg = monge_residual(&g).unwrap();
        prop_assert!(t.agree(&monge_residual(&h).unwrap(), &mg.scale(a.powi(3))));
        if let (Ok(wg), Ok(wh)) = (compute_w(&g, &t), compute_w(&h, &t)) {
            prop_assert!(t.agree(&wg, &wh));
        }
        match (compute_j(&g, &t), compute_j(&h, &t)) {
            (Ok(jg), Ok(jh)) => {
                prop_assert_eq!(jg.formula, jh.formula);
                prop_assert!(t.agree(&jg.j, &jh.j));
            }
            (Err(eg), Err(eh)) => prop_assert_eq!(eg, eh),
            (x, y) => prop_assert!(false, "{:?} vs {:?}", x.map(|j| j.formula), y.map(|j| j.formula)),
        }
    }

    #[test]
    fn monge_is_a_multiple_of_reduced_j(g in perturbed_model()) {
        let t = tol();
        let j = reduced_j(&g, &t).unwrap();
        let f2 = g.f().diff_many(&[Var::Z1, Var::Z1b]).unwrap();
        let lhs = (&j * &f2.pow(3)).scale(-54.0);
        let monge = monge_residual(&g).unwrap();
        prop_assert!(t.agree(&lhs.truncate(monge.order()), &monge));
        prop_assert_eq!(t.is_zero(&j), t.is_zero(&monge));
    }

    #[test]
    fn model_form_has_s1111_and_flat_w(g in model_form()) {
        let t = tol();
        let (s1, s1b) = s1111_residuals(&g, &t).unwrap();
        prop_assert!(t.is_zero(&s1));
        prop_assert!(t.is_zero(&s1b));
        let w = compute_w(&g, &t).unwrap();
        prop_assert!(t.is_zero(&w), "W = {:?}", w.leading_term());
        let rep = full_report(&g, &t);
        prop_assert!(rep.flags.s1111_holds.value);
        prop_assert!(rep.flags.specclass_holds.value);
    }

    #[test]
    fn report_is_consistent(g in perturbed_model()) {
        let t = tol();
        let rep = full_report(&g, &t);
        let mags = rep.max_residual_magnitudes();
        let ma_zero = mags["ma"].is_some_and(|m| m <= t.cmp * (1.0 + m));
        prop_assert_eq!(rep.flags.levi_rank_one.value, ma_zero);
        if rep.flags.cr_flat_candidate.value {
            prop_assert!(rep.flags.levi_rank_one.value && rep.flags.two_nondegenerate.value);
            prop_assert!(rep.errors().is_empty());
        }
        prop_assert!(rep.s0.is_some());
    }
}

use proptest::prelude::*;

use whittaker::hypergeom::{g1, g1_kummer, pfq, s_finite, PfqArgs};
use whittaker::incgamma::{dGamma_dnu, dgamma_dnu, lower_gamma, upper_gamma, IncGammaArgs};
use whittaker::kernels::{digamma, gamma};
use whittaker::logint::{i_integral, j_integral, IntRoute};
use whittaker::verify::fd_derivative;
use whittaker::whittaker::{m_reflect, m_series, WhittakerParams};
use whittaker::SeriesCtrl;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kummer_transformation_of_1f1(a in -3.0f64..4.0, b in 0.2f64..5.0, x in -6.0f64..6.0) {
        let c = SeriesCtrl::default();
        let lhs = pfq(&PfqArgs::new(vec![a], vec![b], x), &c).unwrap().value;
        let rhs = x.exp() * pfq(&PfqArgs::new(vec![b - a], vec![b], -x), &c).unwrap().value;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()).max(1.0) * (1.0 + x.abs().exp()));
    }

    #[test]
    fn g1_kummer_agrees_with_series(a in 0.1f64..4.0, b in 0.1f64..5.0, x in -3.0f64..3.0) {
        let c = SeriesCtrl::default();
        let s = g1(a, b, x, &c).unwrap().value;
        let k = g1_kummer(a, b, x).unwrap().value;
        prop_assert!((s - k).abs() <= 1e-10 * s.abs().max(1e-2), "{} vs {}", s, k);
    }

    #[test]
    fn reflection_matches_series(k in -3.0f64..3.0, n in 0i32..4, x in -6.0f64..6.0) {
        let mu = n as f64 + 0.5;
        let p = WhittakerParams::new(k, mu, x).unwrap();
        let c = SeriesCtrl::default();
        let s = m_series(&p, &c).unwrap().value;
        let r = m_reflect(&p, &c).unwrap().value;
        let scale = x.abs().powf(mu + 0.5) * (x.abs() / 2.0).exp();
        prop_assert!((s - r).abs() <= 1e-12 * scale.max(1e-300) + 1e-300);
    }

    #[test]
    fn incomplete_gamma_complements(nu in 0.1f64..8.0, x in 0.05f64..20.0) {
        let a = IncGammaArgs::new(nu, x).unwrap();
        let g = gamma(nu).unwrap();
        let sum = lower_gamma(&a).unwrap().value + upper_gamma(&a).unwrap().value;
        prop_assert!(rel(sum, g) < 1e-12);
        let d = dgamma_dnu(&a).unwrap().value + dGamma_dnu(&a).unwrap().value;
        let want = g * digamma(nu).unwrap();
        prop_assert!((d - want).abs() < 1e-11 * g.max(1.0), "{} vs {}", d, want);
    }

    #[test]
    fn digamma_recurrence(z in 0.05f64..30.0) {
        let l = digamma(z + 1.0).unwrap();
        let r = digamma(z).unwrap() + 1.0 / z;
        prop_assert!((l - r).abs() <= 1e-13 * l.abs().max(1.0));
    }

    #[test]
    fn shifted_integrals_follow_their_relations(k in -0.45f64..0.45, dm in 0.0f64..1.5, x in 0.1f64..3.0) {
        let mu = k.abs() + dm;
        for idx in [2u8, 3, 4] {
            let q = i_integral(idx, k, mu, x, IntRoute::Quad).unwrap().value;
            let r = i_integral(idx, k, mu, x, IntRoute::Relation).unwrap().value;
            prop_assert!(rel(q, r) < 1e-9 || (q - r).abs() < 1e-12, "I{}: {} vs {}", idx, q, r);
        }
        let q = j_integral(2, k, mu, x, IntRoute::Quad).unwrap().value;
        let r = j_integral(2, k, mu, x, IntRoute::Relation).unwrap().value;
        prop_assert!(rel(q, r) < 1e-9);
    }

    #[test]
    fn finite_sum_bounds(n in 2u32..30, l in 1u32..29) {
        prop_assume!(l < n);
        let s = s_finite(n, l).unwrap();
        // every term lies in (0, 1]
        prop_assert!(s >= 1.0 && s <= (n - l) as f64);
    }

    #[test]
    fn richardson_difference_is_exact_on_quartics(c in prop::array::uniform5(-3.0f64..3.0), x0 in -2.0f64..2.0) {
        let f = |x: f64| Ok(c[0] + x * (c[1] + x * (c[2] + x * (c[3] + x * c[4]))));
        let d = c[1] + x0 * (2.0 * c[2] + x0 * (3.0 * c[3] + x0 * 4.0 * c[4]));
        let fd = fd_derivative(f, x0, 1.0).unwrap();
        prop_assert!((fd - d).abs() < 1e-8 * (1.0 + d.abs()));
    }
}

#[test]
fn finite_sum_edge_value() {
    for n in 2..20 {
        assert_eq!(s_finite(n, n - 1).unwrap(), 1.0);
    }
    assert!(s_finite(3, 3).is_err());
    assert!(s_finite(3, 0).is_err());
}

//! Topology properties: ball-inclusion certificates in both directions,
//! the sharp-sphere openness witness, the infinitesimal indicator, and
//! real traces of generalized-absolute-value balls.

mod common;

use common::*;
use num::ToPrimitive;
use proptest::prelude::*;
use sharpnum::topology::{
    gabs_to_sharp, indicator_infinitesimal, real_trace_of_gabs_ball, sharp_to_gabs,
    sphere_openness_witness, Ball, RealTrace,
};
use sharpnum::{EpsOrder, EpsSeries, Exponent, GenNum, Verdict};

proptest! {
    /// Sharp-to-gabs certificates: every point of the certified gabs ball
    /// lies in the target sharp ball, for radii across six decades.
    #[test]
    fn sharp_to_gabs_certificate(
        center in dyadic_gennum(),
        log_r in -7.0f64..7.0,
        step in pos_exponent(),
        c in dyadic(),
    ) {
        let r = log_r.exp();
        let cert = sharp_to_gabs(r).unwrap();
        // Rounding up the exponent keeps the certified ball inside.
        prop_assert!(cert.rho_exponent.to_f64().unwrap() >= cert.q - 1e-12);
        let member = center.add(&GenNum::monomial(cert.rho_exponent + step, c));
        let gabs = Ball::Gabs { center: center.clone(), rho: cert.rho() };
        prop_assert!(gabs.contains(&member).unwrap().holds());
        let sharp = Ball::Sharp { center: center.clone(), r };
        prop_assert!(sharp.contains(&member).unwrap().holds());
    }

    /// Gabs-to-sharp certificates: a positive invertible radius admits an
    /// inner sharp ball whose members are gabs-ball members.
    #[test]
    fn gabs_to_sharp_certificate(
        center in dyadic_gennum(),
        lead_num in -24i64..=36,
        lead_c in 1i64..=64,
        step in pos_exponent(),
        c in dyadic(),
    ) {
        let rho: GenNum = GenNum::monomial(Exponent::new(lead_num, 12), lead_c as f64 / 16.0);
        let cert = gabs_to_sharp(&rho).unwrap();
        // ε^q ≤ ρ eventually, so q is at least the leading order.
        prop_assert!(cert.q as f64 >= Exponent::new(lead_num, 12).to_f64().unwrap() - 1.0 - 1e-12);
        let v = Exponent::new(cert.q + 1, 1) + step;
        let member = center.add(&GenNum::monomial(v, c));
        let sharp = Ball::Sharp { center: center.clone(), r: cert.r };
        prop_assert!(sharp.contains(&member).unwrap().holds());
        let gabs = Ball::Gabs { center: center.clone(), rho };
        prop_assert!(gabs.contains(&member).unwrap().holds());
    }

    /// Sphere openness: around any point of a sharp sphere, the whole
    /// gabs ball of exponent m+1 stays on the sphere; points outside the
    /// ball satisfy the witness vacuously.
    #[test]
    fn sphere_openness(
        center in dyadic_gennum(),
        m_num in 1i64..=8,
        m_den in prop::sample::select(vec![1i64, 2, 3, 4]),
        c in dyadic(),
        step in pos_exponent(),
    ) {
        let m = Exponent::new(m_num, m_den);
        let y = center.add(&GenNum::monomial(m, c));
        let cert = sphere_openness_witness(&center, &y).unwrap();
        prop_assert_eq!(cert.m, m);
        prop_assert_eq!(cert.q, m + Exponent::new(1, 1));

        // Inside the certified neighborhood: still on the sphere.
        let z = y.add(&GenNum::monomial(cert.q + step, c));
        prop_assert!(cert.check(&center, &y, &z).unwrap().holds());
        prop_assert_eq!(z.dist_valuation(&center).value().unwrap(), EpsOrder::Finite(m));

        // Far point: outside the neighborhood, vacuously fine.
        let far = y.add(&GenNum::monomial(m, c));
        prop_assert!(cert.check(&center, &y, &far).unwrap().holds());
    }

    /// The monad indicator is decidable on exact inputs: 1 exactly on
    /// positive leading order, 0 otherwise.
    #[test]
    fn indicator_on_exact_inputs(e in exponent(), c in dyadic()) {
        let x: GenNum = GenNum::monomial(e, c);
        let expected = u8::from(e > Exponent::new(0, 1));
        prop_assert_eq!(indicator_infinitesimal(&x).unwrap(), expected);
    }

    /// Real traces: infinitesimal radii collapse to the center, standard
    /// radii trace the open interval, a standard-plus-infinitesimal
    /// radius decides the endpoints by the sign of the correction.
    #[test]
    fn real_trace_shapes(
        cm in -64i64..=64,
        rm in 1i64..=64,
        e in pos_exponent(),
        c in dyadic(),
    ) {
        let center = cm as f64 / 16.0;
        let r = rm as f64 / 16.0;

        let inf_radius: GenNum = GenNum::monomial(e, c.abs());
        prop_assert_eq!(
            real_trace_of_gabs_ball(center, &inf_radius).unwrap(),
            RealTrace::Singleton(center)
        );

        let std_radius: GenNum = GenNum::from_real(r);
        prop_assert_eq!(
            real_trace_of_gabs_ball(center, &std_radius).unwrap(),
            RealTrace::Interval { lo: center - r, hi: center + r, closed: false }
        );

        let bumped = std_radius.add(&GenNum::monomial(e, c));
        prop_assert_eq!(
            real_trace_of_gabs_ball(center, &bumped).unwrap(),
            RealTrace::Interval { lo: center - r, hi: center + r, closed: c > 0.0 }
        );

        let neg_radius: GenNum = GenNum::monomial(e, -c.abs());
        prop_assert_eq!(real_trace_of_gabs_ball(center, &neg_radius).unwrap(), RealTrace::Empty);

        let unbounded: GenNum = GenNum::monomial(Exponent::new(-1, 1), c.abs());
        prop_assert_eq!(real_trace_of_gabs_ball(center, &unbounded).unwrap(), RealTrace::Line);
    }

    /// Gabs-ball membership against a monomial radius is decided by the
    /// valuation gap in the expected direction.
    #[test]
    fn gabs_ball_valuation_gap(
        center in dyadic_gennum(),
        m in pos_exponent(),
        step in pos_exponent(),
        c in dyadic(),
    ) {
        let rho: GenNum = GenNum::monomial(m, 1.0);
        let ball = Ball::Gabs { center: center.clone(), rho };
        let inside = center.add(&GenNum::monomial(m + step, c));
        prop_assert_eq!(ball.contains(&inside).unwrap(), Verdict::Holds);
        if m > step {
            let outside = center.add(&GenNum::monomial(m - step, c));
            prop_assert_eq!(ball.contains(&outside).unwrap(), Verdict::Fails);
        }
    }

    /// Fermat balls are blind to infinitesimal displacement; omega balls
    /// see it — membership separates the two topologies pointwise.
    #[test]
    fn fermat_vs_omega_balls(x in near_std_gennum(), e in pos_exponent(), c in dyadic()) {
        let y = x.add(&GenNum::monomial(e, c));
        let fermat = Ball::Fermat { center: x.clone(), r: 1e-9 };
        prop_assert!(fermat.contains(&y).unwrap().holds());
        let d = y.omega_dist(&x).unwrap();
        let gap = match d {
            sharpnum::SharpDist::Point(v) => v,
            sharpnum::SharpDist::Interval { .. } => unreachable!("exact inputs"),
        };
        prop_assert!(gap > 0.0);
        let omega_tight = Ball::Omega { center: x.clone(), r: gap / 2.0 };
        prop_assert_eq!(omega_tight.contains(&y).unwrap(), Verdict::Fails);
        let omega_loose = Ball::Omega { center: x.clone(), r: gap * 2.0 };
        prop_assert!(omega_loose.contains(&y).unwrap().holds());
    }
}

/// An unknown tail at a nonpositive order makes the indicator an honest
/// error instead of a guess; knowledge past order zero decides it.
#[test]
fn indicator_is_honest_about_unknown_tails() {
    let undecided: GenNum = GenNum::from_series(EpsSeries::unknown_tail(Exponent::new(0, 1)));
    assert!(indicator_infinitesimal(&undecided).is_err());
    let decided: GenNum = GenNum::from_series(EpsSeries::unknown_tail(Exponent::new(1, 2)));
    assert_eq!(indicator_infinitesimal(&decided).unwrap(), 1);
}

/// A mixed net — unbounded on one branch, standard on the other — has no
/// real trace interval and reports the failure as an error.
#[test]
fn mixed_unbounded_trace_errors() {
    let rho: GenNum = GenNum::new(vec![
        EpsSeries::monomial(Exponent::new(-2, 1), 1.0),
        EpsSeries::constant(1.0),
    ])
    .unwrap();
    assert!(real_trace_of_gabs_ball(0.0, &rho).is_err());
}

/// Certificates compose: going sharp → gabs → sharp only shrinks the
/// radius (the round trip is a contraction, never an enlargement).
#[test]
fn certificate_round_trip_contracts() {
    for &r in &[0.25f64, 1.0, 3.0, 10.0] {
        let cert1 = sharp_to_gabs(r).unwrap();
        let rho: GenNum = cert1.rho();
        let cert2 = gabs_to_sharp(&rho).unwrap();
        assert!(
            cert2.r <= r,
            "round trip enlarged the sharp radius: {} -> {}",
            r,
            cert2.r
        );
    }
}

//! Order and generalized-absolute-value properties: the partial order on
//! branched generalized numbers, the six ⌈·⌉ laws, lattice operations,
//! and interval membership in both reading conventions.

mod common;

use common::*;
use proptest::prelude::*;
use sharpnum::gennum::{interval_contains, IntervalKind};
use sharpnum::{EpsSeries, Exponent, GenNum, OrderVerdict, Verdict};

/// A certainly-nonnegative generalized number: every branch is zero or
/// has a positive leading coefficient.
fn nonneg_gennum() -> impl Strategy<Value = GenNum> {
    prop::collection::vec(
        prop::option::of((exponent(), 1i64..=64, prop::collection::vec((exponent(), dyadic()), 0..2))),
        1..=3,
    )
    .prop_map(|branches| {
        GenNum::new(
            branches
                .into_iter()
                .map(|b| match b {
                    None => EpsSeries::zero(),
                    Some((e, m, rest)) => {
                        let lead = (e, m as f64 / 16.0);
                        // Push the remaining terms strictly above the lead
                        // so the sign of the leading coefficient is the
                        // sign of the branch.
                        let rest = rest
                            .into_iter()
                            .map(|(d, c)| (e + Exponent::new(d.numer().abs() + 1, *d.denom()), c))
                            .collect::<Vec<_>>();
                        EpsSeries::exact([lead].into_iter().chain(rest).collect())
                    }
                })
                .collect(),
        )
        .expect("at least one branch")
    })
}

proptest! {
    /// Reflexivity, compatibility with addition, and constructed
    /// transitive chains a ≤ a+p ≤ a+p+q for nonnegative p, q.
    #[test]
    fn partial_order_laws(a in dyadic_gennum(), p in nonneg_gennum(), q in nonneg_gennum()) {
        prop_assert_eq!(a.order_compare(&a), OrderVerdict::EQ);
        let ap = a.add(&p);
        let apq = ap.add(&q);
        for (lo, hi) in [(&a, &ap), (&ap, &apq), (&a, &apq)] {
            let v = lo.order_compare(hi);
            prop_assert!(v == OrderVerdict::LE || v == OrderVerdict::EQ,
                "expected ≤, got {:?}", v);
            prop_assert!(v.le_holds().holds());
        }
        // Antisymmetry on the same chain: a ≤ a+p and a+p ≤ a force p = 0.
        if ap.order_compare(&a).le_holds().holds() {
            prop_assert!(p.is_zero());
        }
    }

    /// The six generalized-absolute-value laws.
    #[test]
    fn gabs_laws(x in dyadic_gennum(), y in dyadic_gennum(), lambda in dyadic()) {
        let ax = x.gen_abs().unwrap();
        // ⌈x⌉ = max(x, −x).
        let mx = x.max(&x.neg()).unwrap();
        prop_assert_eq!(ax.order_compare(&mx), OrderVerdict::EQ);
        // 0 ≤ ⌈x⌉.
        prop_assert!(GenNum::zero().order_compare(&ax).le_holds().holds());
        // ⌈x⌉ = 0 exactly on x = 0.
        prop_assert_eq!(ax.is_zero(), x.is_zero());
        // Homogeneity: ⌈λx⌉ = |λ|·⌈x⌉ (bit-exact: |λ| only flips signs).
        let lhs = x.scale(&lambda).gen_abs().unwrap();
        let rhs = ax.scale(&lambda.abs());
        prop_assert!(gen_exact_eq(&lhs, &rhs));
        // Triangle: ⌈x+y⌉ ≤ ⌈x⌉ + ⌈y⌉.
        let ay = y.gen_abs().unwrap();
        let tri = x.add(&y).gen_abs().unwrap().order_compare(&ax.add(&ay));
        prop_assert!(tri.le_holds().holds(), "triangle gave {:?}", tri);
        // Idempotence: ⌈⌈x⌉⌉ = ⌈x⌉.
        prop_assert!(gen_exact_eq(&ax.gen_abs().unwrap(), &ax));
    }

    /// ⌈·⌉ is multiplicative: ⌈xy⌉ = ⌈x⌉·⌈y⌉ bit-for-bit on dyadics.
    #[test]
    fn gabs_is_multiplicative(x in dyadic_gennum(), y in dyadic_gennum()) {
        let lhs = x.mul(&y).gen_abs().unwrap();
        let rhs = x.gen_abs().unwrap().mul(&y.gen_abs().unwrap());
        prop_assert!(gen_exact_eq(&lhs, &rhs));
    }

    /// ⌈·⌉ restricted to the embedded reals is the usual absolute value.
    #[test]
    fn gabs_extends_real_abs(m in -640i64..=640) {
        let r = m as f64 / 16.0;
        let x: GenNum = GenNum::from_real(r);
        let ax = x.gen_abs().unwrap();
        prop_assert!(gen_exact_eq(&ax, &GenNum::from_real(r.abs())));
    }

    /// Lattice identities: min + max = x + y, min ≤ both ≤ max, and the
    /// de-Morgan-style reflection max(x, y) = −min(−x, −y).
    #[test]
    fn min_max_lattice(x in dyadic_gennum(), y in dyadic_gennum()) {
        let mn = x.min(&y).unwrap();
        let mx = x.max(&y).unwrap();
        prop_assert!(gen_exact_eq(&mn.add(&mx), &x.add(&y)));
        prop_assert!(mn.order_compare(&x).le_holds().holds());
        prop_assert!(mn.order_compare(&y).le_holds().holds());
        prop_assert!(x.order_compare(&mx).le_holds().holds());
        prop_assert!(y.order_compare(&mx).le_holds().holds());
        let refl = x.neg().min(&y.neg()).unwrap().neg();
        prop_assert!(gen_exact_eq(&mx, &refl));
        prop_assert!(gen_exact_eq(&x.min(&x).unwrap(), &x));
    }

    /// Strict comparison is consistent with the partial order: a strict
    /// witness implies ≤ and rules out equality.
    #[test]
    fn strictly_less_refines_le(x in dyadic_gennum(), p in nonneg_gennum()) {
        let y = x.add(&p);
        match x.strictly_less(&y) {
            Verdict::Holds => {
                prop_assert!(x.order_compare(&y).le_holds().holds());
                prop_assert!(x.order_compare(&y) != OrderVerdict::EQ);
                prop_assert!(!y.sub(&x).is_zero());
            }
            Verdict::Fails => {
                // p has a zero branch (or is zero): strictness genuinely
                // fails somewhere along the net.
                prop_assert!(p.branches().iter().any(EpsSeries::is_zero));
            }
            Verdict::Unknown(_) => prop_assert!(false, "exact inputs cannot be unknown"),
        }
    }

    /// Interval membership: x sits in (x − p, x + q) for positive
    /// invertible gaps in both conventions; with a zero gap the order
    /// reading keeps it (endpoints close) while the invertible-endpoints
    /// reading drops it.
    #[test]
    fn interval_membership(x in dyadic_gennum(), e1 in exponent(), e2 in exponent(), c1 in dyadic(), c2 in dyadic()) {
        let p = GenNum::monomial(e1, c1.abs());
        let q = GenNum::monomial(e2, c2.abs());
        let a = x.sub(&p);
        let b = x.add(&q);
        prop_assert!(interval_contains(IntervalKind::Order, &a, &b, &x).holds());
        prop_assert!(interval_contains(IntervalKind::InvertibleEndpoints, &a, &b, &x).holds());
        // Degenerate left endpoint: a = x.
        prop_assert!(interval_contains(IntervalKind::Order, &x, &b, &x).holds());
        prop_assert!(!interval_contains(IntervalKind::InvertibleEndpoints, &x, &b, &x).holds());
        // Outside on the order reading: b < x + p + margin fails.
        let beyond = b.add(&GenNum::monomial(e2, 1.0));
        prop_assert!(!interval_contains(IntervalKind::Order, &a, &b, &beyond).holds());
    }

    /// Scalar order embeds: for reals, order_compare agrees with f64.
    #[test]
    fn real_order_embeds(ma in -640i64..=640, mb in -640i64..=640) {
        let (ra, rb) = (ma as f64 / 16.0, mb as f64 / 16.0);
        let a: GenNum = GenNum::from_real(ra);
        let b: GenNum = GenNum::from_real(rb);
        let expected = match ra.partial_cmp(&rb).unwrap() {
            std::cmp::Ordering::Less => OrderVerdict::LE,
            std::cmp::Ordering::Equal => OrderVerdict::EQ,
            std::cmp::Ordering::Greater => OrderVerdict::GE,
        };
        prop_assert_eq!(a.order_compare(&b), expected);
    }
}

/// Branch-split numbers are incomparable when the branches disagree in
/// sign — the net order really is partial.
#[test]
fn mixed_sign_branches_are_incomparable() {
    let x = GenNum::new(vec![EpsSeries::constant(1.0), EpsSeries::constant(-1.0)]).unwrap();
    let z = GenNum::zero();
    assert_eq!(x.order_compare(&z), OrderVerdict::Incomparable);
    assert_eq!(z.order_compare(&x), OrderVerdict::Incomparable);
    // Its gabs is still well-defined and positive.
    let ax = x.gen_abs().unwrap();
    assert_eq!(ax.order_compare(&GenNum::one()), OrderVerdict::EQ);
}

/// An infinitesimal is strictly between 0 and every standard positive
/// real — the defining order property of ε.
#[test]
fn eps_is_a_positive_infinitesimal() {
    let eps: GenNum = GenNum::eps();
    assert!(GenNum::zero().strictly_less(&eps).holds());
    for m in [1i64, 16, 160, 1600] {
        let r: GenNum = GenNum::from_real(m as f64 / 1600.0);
        assert!(eps.strictly_less(&r).holds(), "eps should be below {}", m);
    }
}

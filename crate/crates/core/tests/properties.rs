use proptest::prelude::*;

use rlcm::boundary::{theta_apply, BoundaryPoint, Image};
use rlcm::hull::{hull_mul, hull_star, is_idempotent, pair, Hull};
use rlcm::instances::builtins::{modified_odometer, odometer};
use rlcm::instances::free::FreeMonoid;
use rlcm::instances::groups::Power;
use rlcm::instances::nat::{FreeAbelian, NatElem};
use rlcm::instances::zappa_szep::ZsElem;
use rlcm::semigroup::RightLcmSemigroup;
use rlcm::{Alphabet, RightLcmOutcome, Word};

fn word(letters: u8, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..letters, 0..=max).prop_map(|v| v.into_iter().collect())
}

fn zs(letters: u8) -> impl Strategy<Value = ZsElem<Power>> {
    (word(letters, 4), -6i64..=6).prop_map(|(w, m)| ZsElem::new(w, Power(m)))
}

fn nat() -> impl Strategy<Value = NatElem> {
    prop::collection::vec(0u32..20, 2).prop_map(NatElem)
}

/// The right LCM is a common right multiple dividing every other one
/// found among small candidates.
fn lcm_is_least<P: RightLcmSemigroup>(inst: &P, p: &P::Elem, q: &P::Elem) -> Result<(), TestCaseError> {
    match inst.right_lcm(p, q) {
        RightLcmOutcome::Meet { r: lcm, p_comp, q_comp } => {
            prop_assert_eq!(inst.mul(p, &p_comp), lcm.clone());
            prop_assert_eq!(inst.mul(q, &q_comp), lcm.clone());
            for k in inst.enumerate(3) {
                let m = inst.mul(p, &k);
                if inst.left_quotient(q, &m).is_some() {
                    prop_assert!(inst.left_quotient(&lcm, &m).is_some());
                }
            }
        }
        RightLcmOutcome::Disjoint => {
            for k in inst.enumerate(3) {
                prop_assert!(inst.left_quotient(q, &inst.mul(p, &k)).is_none());
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn right_lcms_are_least(p in zs(3), q in zs(3)) {
        lcm_is_least(&modified_odometer(), &p, &q)?;
    }

    #[test]
    fn right_lcms_in_the_lattice(p in nat(), q in nat()) {
        lcm_is_least(&FreeAbelian::new(2).unwrap(), &p, &q)?;
    }

    #[test]
    fn multiplication_is_associative(a in zs(2), b in zs(2), c in zs(2)) {
        let o = odometer();
        prop_assert_eq!(o.mul(&o.mul(&a, &b), &c), o.mul(&a, &o.mul(&b, &c)));
    }

    #[test]
    fn left_cancellation(a in zs(3), b in zs(3), c in zs(3)) {
        let o = modified_odometer();
        prop_assert_eq!(o.mul(&a, &b) == o.mul(&a, &c), b == c);
    }

    #[test]
    fn hull_is_an_inverse_monoid(p in zs(3), q in zs(3), r in zs(3), t in zs(3)) {
        let o = modified_odometer();
        let s = pair(&o, &p, &q);
        let u = pair(&o, &r, &t);
        let ss = hull_star(&o, &s);
        prop_assert_eq!(hull_mul(&o, &hull_mul(&o, &s, &ss), &s), s.clone());
        prop_assert_eq!(hull_star(&o, &ss), s.clone());
        prop_assert_eq!(hull_star(&o, &hull_mul(&o, &s, &u)), hull_mul(&o, &hull_star(&o, &u), &ss));
        prop_assert!(is_idempotent(&o, &hull_mul(&o, &ss, &s)));
    }

    #[test]
    fn canonical_points_are_unique(u in word(2, 5), w in word(2, 3), k in 1usize..4, j in 0usize..4) {
        prop_assume!(!w.is_empty());
        let x = BoundaryPoint::new(u.clone(), w.clone()).unwrap();
        let longer = BoundaryPoint::new(u.concat(&w.repeat(j)), w.repeat(k)).unwrap();
        prop_assert_eq!(&x, &longer);
        prop_assert_eq!(x.take(20), longer.take(20));
        prop_assert_eq!(x.shift(u.len()).take(12), w.repeat(12).prefix(12));
    }

    #[test]
    fn theta_of_a_pair_swaps_prefixes(p in word(2, 3), q in word(2, 3), tail in word(2, 4), period in word(2, 3)) {
        prop_assume!(!period.is_empty());
        let m = FreeMonoid::new(Alphabet::binary());
        let x = BoundaryPoint::new(q.concat(&tail), period.clone()).unwrap();
        let s = Hull::Pair(p.clone(), q.clone());
        let y = BoundaryPoint::new(p.concat(&tail), period).unwrap();
        prop_assert_eq!(theta_apply(&m, &s, &x, 16), Image::Exact(y));
    }
}

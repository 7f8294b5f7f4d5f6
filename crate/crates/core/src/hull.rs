//! The inverse hull `𝒮 = {[p, q]} ∪ {0}` of a right LCM semigroup:
//! product, involution, order, idempotents and covers, together with the
//! fixed-point, core and contraction conditions stated in terms of it.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::semigroup::{
    core_contains, divides, is_foundation_set, meets, minimal_ideals, pair_bound, RightLcmOutcome, RightLcmSemigroup,
};
use crate::verdict::{Support, Verdict};

/// `0` or the class `[p, q]` of `(p, q)` modulo `(p, q) ~ (pu, qu)` for
/// units `u`, stored in the instance's normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hull<E> {
    Zero,
    Pair(E, E),
}

impl<E> Hull<E> {
    pub fn is_zero(&self) -> bool {
        matches!(self, Hull::Zero)
    }

    pub fn parts(&self) -> Option<(&E, &E)> {
        match self {
            Hull::Zero => None,
            Hull::Pair(p, q) => Some((p, q)),
        }
    }
}

pub fn pair<P: RightLcmSemigroup + ?Sized>(inst: &P, p: &P::Elem, q: &P::Elem) -> Hull<P::Elem> {
    let (p, q) = inst.normalize_pair(p, q);
    Hull::Pair(p, q)
}

/// `[p, p]`, the idempotent with domain `pP`.
pub fn idempotent<P: RightLcmSemigroup + ?Sized>(inst: &P, p: &P::Elem) -> Hull<P::Elem> {
    pair(inst, p, p)
}

/// `1_𝒮 = [1, 1]`.
pub fn one<P: RightLcmSemigroup + ?Sized>(inst: &P) -> Hull<P::Elem> {
    let e = inst.identity();
    pair(inst, &e, &e)
}

/// `[a, b][c, d] = [ab', dc']` when `bP ∩ cP = rP` with `bb' = cc' = r`,
/// and `0` when the ideals are disjoint.
pub fn hull_mul<P: RightLcmSemigroup + ?Sized>(inst: &P, s: &Hull<P::Elem>, t: &Hull<P::Elem>) -> Hull<P::Elem> {
    let (Hull::Pair(a, b), Hull::Pair(c, d)) = (s, t) else {
        return Hull::Zero;
    };
    match inst.right_lcm(b, c) {
        RightLcmOutcome::Disjoint => Hull::Zero,
        RightLcmOutcome::Meet { p_comp, q_comp, .. } => pair(inst, &inst.mul(a, &p_comp), &inst.mul(d, &q_comp)),
    }
}

/// `[p, q]* = [q, p]`, renormalized.
pub fn hull_star<P: RightLcmSemigroup + ?Sized>(inst: &P, s: &Hull<P::Elem>) -> Hull<P::Elem> {
    match s {
        Hull::Zero => Hull::Zero,
        Hull::Pair(p, q) => pair(inst, q, p),
    }
}

/// `s ≤ t` iff `s = t s* s`.
pub fn leq<P: RightLcmSemigroup + ?Sized>(inst: &P, s: &Hull<P::Elem>, t: &Hull<P::Elem>) -> bool {
    let sss = hull_mul(inst, &hull_star(inst, s), s);
    *s == hull_mul(inst, t, &sss)
}

/// Nonzero idempotents are exactly the classes `[p, p]`.
pub fn is_idempotent<P: RightLcmSemigroup + ?Sized>(inst: &P, s: &Hull<P::Elem>) -> bool {
    match s {
        Hull::Zero => true,
        Hull::Pair(p, q) => {
            let (p, q) = inst.normalize_pair(p, q);
            p == q
        }
    }
}

/// Size of a hull element: the sizes of both normalized coordinates.
pub fn hull_size<P: RightLcmSemigroup + ?Sized>(inst: &P, s: &Hull<P::Elem>) -> usize {
    match s {
        Hull::Zero => 0,
        Hull::Pair(p, q) => inst.size(p) + inst.size(q),
    }
}

pub fn format_hull<P: RightLcmSemigroup + ?Sized>(inst: &P, s: &Hull<P::Elem>) -> String {
    match s {
        Hull::Zero => "0".into(),
        Hull::Pair(p, q) => inst.format_pair(p, q),
    }
}

pub fn parse_hull<P: RightLcmSemigroup + ?Sized>(inst: &P, s: &str) -> Result<Hull<P::Elem>> {
    if s.trim() == "0" {
        return Ok(Hull::Zero);
    }
    let (p, q) = inst.parse_pair(s)?;
    Ok(pair(inst, &p, &q))
}

/// Every nonzero hull element of size ≤ `max_size`, sorted by
/// `(size, p, q)`.
pub fn hull_elements<P: RightLcmSemigroup + ?Sized>(inst: &P, max_size: usize) -> Vec<Hull<P::Elem>> {
    let elems = inst.enumerate(max_size);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in &elems {
        for q in &elems {
            let (np, nq) = inst.normalize_pair(p, q);
            if inst.size(&np) + inst.size(&nq) <= max_size && seen.insert((np.clone(), nq.clone())) {
                out.push(Hull::Pair(np, nq));
            }
        }
    }
    out.sort_by_cached_key(|s| (hull_size(inst, s), s.clone()));
    out
}

/// `[1, p][q, 1]`, checked against `[p', q']` (or `0`) predicted by the
/// right LCM of `p` and `q`.
pub fn starnot_identity<P: RightLcmSemigroup + ?Sized>(inst: &P, p: &P::Elem, q: &P::Elem) -> Result<Hull<P::Elem>> {
    let e = inst.identity();
    let product = hull_mul(inst, &pair(inst, &e, p), &pair(inst, q, &e));
    let predicted = match inst.right_lcm(p, q) {
        RightLcmOutcome::Disjoint => Hull::Zero,
        RightLcmOutcome::Meet { p_comp, q_comp, .. } => pair(inst, &p_comp, &q_comp),
    };
    if product != predicted {
        return Err(Error::Invariant(format!(
            "[1, {p}][{q}, 1] = {} but the right LCM predicts {}",
            format_hull(inst, &product),
            format_hull(inst, &predicted),
            p = inst.format(p),
            q = inst.format(q),
        )));
    }
    Ok(product)
}

/// Representatives `r = pk = qk` of the ideals `rP` with `[r, r] ≤ [p, q]`,
/// for `k` and `r` of size ≤ `bound`, one per ideal, sorted by size.
pub fn j_set<P: RightLcmSemigroup + ?Sized>(inst: &P, s: &Hull<P::Elem>, bound: usize) -> Result<Vec<P::Elem>> {
    let (p, q) = s.parts().ok_or_else(|| Error::usage("J is only defined for nonzero elements"))?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for k in inst.enumerate(bound) {
        let pk = inst.mul(p, &k);
        if pk != inst.mul(q, &k) {
            continue;
        }
        let r = inst.ideal_key(&pk);
        if inst.size(&r) <= bound && seen.insert(r.clone()) {
            out.push(r);
        }
    }
    out.sort_by_cached_key(|r| (inst.size(r), r.clone()));
    Ok(out)
}

/// Whether the idempotents `F`, all below `x`, cover `x`: every nonzero
/// idempotent below `x` meets some member. Reduces to whether the left
/// quotients of `F` by `x`'s generator form a foundation set.
pub fn is_cover<P: RightLcmSemigroup + ?Sized>(
    inst: &P,
    f: &[Hull<P::Elem>],
    x: &Hull<P::Elem>,
    bound: usize,
) -> Result<Verdict<(), Hull<P::Elem>>> {
    for e in f.iter().chain(std::iter::once(x)) {
        if !is_idempotent(inst, e) {
            return Err(Error::usage(format!("{} is not idempotent", format_hull(inst, e))));
        }
    }
    for e in f {
        if !leq(inst, e, x) {
            return Err(Error::usage(format!(
                "{} is not below {}",
                format_hull(inst, e),
                format_hull(inst, x)
            )));
        }
    }
    let Some((a, _)) = x.parts() else {
        return Ok(Verdict::holds((), Support::exact("nothing to cover")));
    };
    let quotients: Vec<P::Elem> = f
        .iter()
        .filter_map(|e| e.parts())
        .map(|(fi, _)| inst.left_quotient(a, fi).expect("members lie below x"))
        .collect();
    if quotients.is_empty() {
        return Ok(Verdict::fails(x.clone()));
    }
    let found = is_foundation_set(inst, &quotients, bound)?;
    Ok(found.map(|w| w, |p| idempotent(inst, &inst.mul(a, &p))))
}

/// Fixedness of the idempotent `[qk, qk]` by `s = [p, q]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeaklyFixed<E> {
    /// `pk = qk`.
    pub fixed: bool,
    /// `qkaP ∩ pkaP ≠ ∅` for every `a`; fails with an `a` where the ideals
    /// are disjoint.
    pub weakly_fixed: Verdict<(), E>,
}

pub fn weakly_fixed<P: RightLcmSemigroup + ?Sized>(
    inst: &P,
    k: &P::Elem,
    s: &Hull<P::Elem>,
    bound: usize,
) -> Result<WeaklyFixed<P::Elem>> {
    let (p, q) = s
        .parts()
        .ok_or_else(|| Error::usage("weak fixedness needs a nonzero element"))?;
    let pk = inst.mul(p, k);
    let qk = inst.mul(q, k);
    let fixed = pk == qk;
    if fixed {
        return Ok(WeaklyFixed {
            fixed,
            weakly_fixed: Verdict::holds((), Support::exact("pk = qk")),
        });
    }
    for a in inst.enumerate(bound) {
        if !meets(inst, &inst.mul(&pk, &a), &inst.mul(&qk, &a)) {
            return Ok(WeaklyFixed {
                fixed,
                weakly_fixed: Verdict::fails(a),
            });
        }
    }
    let weakly_fixed = if inst.lcm_total() {
        Verdict::holds((), Support::exact("right LCMs always exist"))
    } else {
        Verdict::holds((), Support::bounded(bound))
    };
    Ok(WeaklyFixed { fixed, weakly_fixed })
}

/// A weakly fixed `[qk, qk]` and a foundation set `F` with `pkf = qkf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpEntry<E> {
    pub k: E,
    pub foundation: Vec<E>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpWitness<E> {
    pub entries: Vec<EpEntry<E>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpCounterexample<E> {
    pub k: E,
    pub reason: String,
}

/// Size cap for the foundation-set candidates `f` tried by
/// [`condition_ep`].
pub const EP_CANDIDATE_SIZE: usize = 2;

/// Condition (EP) for `s = [p, q]`: for every `[qk, qk]` weakly fixed by
/// `s` there is a foundation set `F` with `pkf = qkf` for all `f ∈ F`.
pub fn condition_ep<P: RightLcmSemigroup + ?Sized>(
    inst: &P,
    s: &Hull<P::Elem>,
    bound: usize,
) -> Result<Verdict<EpWitness<P::Elem>, EpCounterexample<P::Elem>>> {
    let (p, q) = s.parts().ok_or_else(|| Error::usage("(EP) needs a nonzero element"))?;
    let unit = inst.identity();
    if is_idempotent(inst, s) {
        let entries = vec![EpEntry {
            k: unit.clone(),
            foundation: vec![unit],
        }];
        return Ok(Verdict::holds(EpWitness { entries }, Support::exact("idempotent")));
    }
    if let Some(v) = inst.ep_hook(p, q, bound) {
        return Ok(v);
    }
    let candidates = inst.enumerate(EP_CANDIDATE_SIZE);
    let mut seen = HashSet::new();
    let mut entries = Vec::new();
    let mut unknown = false;
    for k in inst.enumerate(bound) {
        if !seen.insert(inst.ideal_key(&inst.mul(q, &k))) {
            continue;
        }
        let wf = weakly_fixed(inst, &k, s, bound)?;
        if !wf.weakly_fixed.is_holds() {
            continue;
        }
        if wf.fixed {
            entries.push(EpEntry {
                k,
                foundation: vec![inst.identity()],
            });
            continue;
        }
        if inst.right_cancellative_proof().is_some() {
            let reason = "pk ≠ qk and P is right cancellative, so no f has pkf = qkf".to_string();
            return Ok(Verdict::fails(EpCounterexample { k, reason }));
        }
        let pk = inst.mul(p, &k);
        let qk = inst.mul(q, &k);
        let agree: Vec<P::Elem> = candidates
            .iter()
            .filter(|f| inst.mul(&pk, f) == inst.mul(&qk, f))
            .cloned()
            .collect();
        if agree.is_empty() || !is_foundation_set(inst, &agree, bound)?.is_holds() {
            unknown = true;
            continue;
        }
        entries.push(EpEntry { k, foundation: agree });
    }
    if unknown {
        return Ok(Verdict::unknown(bound));
    }
    Ok(Verdict::holds(EpWitness { entries }, Support::bounded(bound)))
}

/// The two core notions for a hull element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullCore<E> {
    /// `p, q ∈ P₀`; fails with an element whose ideal misses one of them.
    pub lcm_core: Verdict<(), E>,
    /// `s*se ≠ 0` and `ss*e ≠ 0` for every nonzero idempotent `e`; fails
    /// with such an `e`.
    pub appendix_core: Verdict<(), Hull<E>>,
}

impl<E> HullCore<E> {
    pub fn agree(&self) -> bool {
        self.lcm_core.is_holds() == self.appendix_core.is_holds()
            && self.lcm_core.is_fails() == self.appendix_core.is_fails()
    }
}

pub fn hull_core_contains<P: RightLcmSemigroup + ?Sized>(
    inst: &P,
    s: &Hull<P::Elem>,
    bound: usize,
) -> Result<HullCore<P::Elem>> {
    let (p, q) = s.parts().ok_or_else(|| Error::usage("the core is defined for nonzero elements"))?;
    let cp = core_contains(inst, p, bound);
    let cq = core_contains(inst, q, bound);
    let lcm_core = match (cp, cq) {
        (Verdict::Fails { counterexample }, _) | (_, Verdict::Fails { counterexample }) => {
            Verdict::fails(counterexample)
        }
        (Verdict::Unknown { bound }, _) | (_, Verdict::Unknown { bound }) => Verdict::unknown(bound),
        (Verdict::Holds { support: a, .. }, Verdict::Holds { support: b, .. }) => Verdict::holds((), a.meet(&b)),
    };
    let range = idempotent(inst, p);
    let domain = idempotent(inst, q);
    let mut appendix_core = if inst.lcm_total() {
        Verdict::holds((), Support::exact("right LCMs always exist"))
    } else {
        Verdict::holds((), Support::bounded(bound))
    };
    for r in inst.enumerate(bound) {
        let e = idempotent(inst, &r);
        if hull_mul(inst, &domain, &e).is_zero() || hull_mul(inst, &range, &e).is_zero() {
            appendix_core = Verdict::fails(e);
            break;
        }
    }
    Ok(HullCore {
        lcm_core,
        appendix_core,
    })
}

/// A nonzero idempotent below a non-idempotent element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonUnitary<E> {
    pub e: Hull<E>,
    pub s: Hull<E>,
}

/// E*-unitarity: `0 ≠ e ≤ s` with `e` idempotent forces `s` idempotent.
/// Exact for right-cancellative instances; otherwise searches `s = [p, q]`
/// with `p, q` of size ≤ `pair_bound(bound)` against `k` of size ≤
/// `bound` with `pk = qk`.
pub fn e_star_unitary_probe<P: RightLcmSemigroup + ?Sized>(
    inst: &P,
    bound: usize,
) -> Verdict<(), NonUnitary<P::Elem>> {
    if let Some(reason) = inst.right_cancellative_proof() {
        return Verdict::holds((), Support::exact(reason));
    }
    if bound == 0 {
        return Verdict::unknown(0);
    }
    let ks = inst.enumerate(bound);
    let elems = inst.enumerate(pair_bound(bound));
    let mut pairs: Vec<(usize, P::Elem, P::Elem)> = Vec::new();
    let mut seen = HashSet::new();
    for p in &elems {
        for q in &elems {
            let (np, nq) = inst.normalize_pair(p, q);
            if np != nq && seen.insert((np.clone(), nq.clone())) {
                pairs.push((inst.size(&np) + inst.size(&nq), np, nq));
            }
        }
    }
    pairs.sort();
    for (_, p, q) in pairs {
        for k in &ks {
            let pk = inst.mul(&p, k);
            if pk == inst.mul(&q, k) {
                return Verdict::fails(NonUnitary {
                    e: idempotent(inst, &pk),
                    s: Hull::Pair(p, q),
                });
            }
        }
    }
    Verdict::holds((), Support::bounded(bound))
}

/// Elements `f₀ = rprq`, `f₁ = a = rp` built from a disjoint pair, with
/// `f₀P ⊂ f₁P ⊂ rP`, `a f₁P ⊂ f₁P` and `[f₀, f₀][a, 1][f₁, f₁] = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionWitness<E> {
    pub f0: E,
    pub f1: E,
    pub a: E,
    pub product_is_zero: bool,
}

pub fn locally_contracting_witness<P: RightLcmSemigroup + ?Sized>(
    inst: &P,
    r: &P::Elem,
    p: &P::Elem,
    q: &P::Elem,
) -> Result<ContractionWitness<P::Elem>> {
    if meets(inst, p, q) {
        return Err(Error::usage(format!(
            "{} and {} generate intersecting ideals",
            inst.format(p),
            inst.format(q)
        )));
    }
    let f1 = inst.mul(r, p);
    let a = f1.clone();
    let f0 = inst.mul(&inst.mul(&f1, r), q);
    let nested = divides(inst, &f1, &f0) && divides(inst, r, &f1);
    let absorbing = divides(inst, &f1, &inst.mul(&a, &f1));
    if !nested || !absorbing {
        return Err(Error::Invariant(format!(
            "contraction witness for r = {} is not nested",
            inst.format(r)
        )));
    }
    let e = inst.identity();
    let product = hull_mul(
        inst,
        &hull_mul(inst, &idempotent(inst, &f0), &pair(inst, &a, &e)),
        &idempotent(inst, &f1),
    );
    Ok(ContractionWitness {
        f0,
        f1,
        a,
        product_is_zero: product.is_zero(),
    })
}

/// A non-idempotent `s` with its minimal `J_s` representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JCover<E> {
    pub s: Hull<E>,
    pub cover: Vec<E>,
}

/// The hull-side form of condition (H): each `J_s` has a finite cover.
/// For `s` of coordinate size ≤ `pair_bound(bound)`, the minimal ideals of
/// `J_s` below `bound` must cover all of `J_s` up to `bound`.
pub fn j_cover_probe<P: RightLcmSemigroup + ?Sized>(inst: &P, bound: usize) -> Verdict<Vec<JCover<P::Elem>>, String> {
    if bound == 0 {
        return Verdict::unknown(0);
    }
    if let Some(v) = inst.j_cover_hook(bound) {
        return v;
    }
    j_cover_search(inst, bound)
}

/// The generic bounded search behind [`j_cover_probe`], with no shortcuts.
pub fn j_cover_search<P: RightLcmSemigroup + ?Sized>(inst: &P, bound: usize) -> Verdict<Vec<JCover<P::Elem>>, String> {
    if bound == 0 {
        return Verdict::unknown(0);
    }
    let elems = inst.enumerate(pair_bound(bound));
    let mut seen = HashSet::new();
    let mut covers = Vec::new();
    for p in &elems {
        for q in &elems {
            let (np, nq) = inst.normalize_pair(p, q);
            if np == nq || !seen.insert((np.clone(), nq.clone())) {
                continue;
            }
            let s = Hull::Pair(np, nq);
            let j = j_set(inst, &s, bound).expect("nonzero");
            if j.is_empty() {
                continue;
            }
            let inner: Vec<P::Elem> = j.iter().filter(|r| inst.size(r) < bound).cloned().collect();
            let cover = minimal_ideals(inst, &inner);
            if !j.iter().all(|r| cover.iter().any(|f| meets(inst, f, r))) {
                return Verdict::unknown(bound);
            }
            covers.push(JCover { s, cover });
        }
    }
    Verdict::holds(covers, Support::bounded(bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::builtins::{modified_odometer, odometer};
    use crate::instances::free::FreeMonoid;
    use crate::word::{Alphabet, Word};

    fn x01() -> FreeMonoid {
        FreeMonoid::new(Alphabet::binary())
    }

    fn w(s: &str) -> Word {
        Alphabet::binary().parse_word(s).unwrap()
    }

    fn h(m: &FreeMonoid, p: &str, q: &str) -> Hull<Word> {
        pair(m, &w(p), &w(q))
    }

    #[test]
    fn products_in_the_polycyclic_monoid() {
        let m = x01();
        assert_eq!(hull_mul(&m, &h(&m, "0", "1"), &h(&m, "10", "11")), h(&m, "00", "11"));
        assert_eq!(hull_mul(&m, &h(&m, "01", "1"), &h(&m, "1", "0")), h(&m, "01", "0"));
        assert!(hull_mul(&m, &h(&m, "0", "0"), &h(&m, "1", "1")).is_zero());
        assert_eq!(hull_star(&m, &h(&m, "0", "1")), h(&m, "1", "0"));
    }

    #[test]
    fn order() {
        let m = x01();
        assert!(leq(&m, &h(&m, "01", "11"), &h(&m, "0", "1")));
        assert!(!leq(&m, &h(&m, "00", "01"), &h(&m, "0", "1")));
    }

    #[test]
    fn starnot_cases() {
        let m = x01();
        assert_eq!(starnot_identity(&m, &w("0"), &w("01")).unwrap(), h(&m, "1", ""));
        assert_eq!(starnot_identity(&m, &w("01"), &w("01")).unwrap(), one(&m));
        assert!(starnot_identity(&m, &w("0"), &w("1")).unwrap().is_zero());
    }

    #[test]
    fn j_sets() {
        let m = x01();
        assert!(j_set(&m, &h(&m, "0", "1"), 4).unwrap().is_empty());
        assert_eq!(j_set(&m, &h(&m, "0", "0"), 2).unwrap(), vec![w("0"), w("00"), w("01")]);
        let mo = modified_odometer();
        let s = parse_hull(&mo, "(ε, z, ε)").unwrap();
        let j = j_set(&mo, &s, 2).unwrap();
        assert!(!j.is_empty());
        assert!(j.iter().all(|r| r.word.first() == Some(&2)));
    }

    #[test]
    fn covers() {
        let m = x01();
        let f = [h(&m, "0", "0"), h(&m, "1", "1")];
        assert!(is_cover(&m, &f, &one(&m), 4).unwrap().is_exact());
        assert_eq!(
            is_cover(&m, &[h(&m, "00", "00")], &h(&m, "0", "0"), 4)
                .unwrap()
                .counterexample(),
            Some(&h(&m, "01", "01"))
        );
        assert!(is_cover(&m, &[h(&m, "0", "1")], &one(&m), 4).is_err());
    }

    #[test]
    fn j_covers_from_msf() {
        let mo = modified_odometer();
        let v = j_cover_probe(&mo, 2);
        assert!(v.is_exact());
        let s = parse_hull(&mo, "(ε, z, ε)").unwrap();
        let c = v.witness().unwrap().iter().find(|c| c.s == s).unwrap();
        let shown: Vec<String> = c.cover.iter().map(|e| mo.format(e)).collect();
        assert_eq!(shown, ["(B, e)"]);
        assert!(j_cover_search(&mo, 2).is_unknown());
        assert!(j_cover_search(&mo, 4).is_holds());
    }

    #[test]
    fn weak_fixedness() {
        let mo = modified_odometer();
        let s = parse_hull(&mo, "(ε, z, ε)").unwrap();
        let b = mo.parse("(B, e)").unwrap();
        let r = weakly_fixed(&mo, &b, &s, 3).unwrap();
        assert!(r.fixed && r.weakly_fixed.is_holds());
        let o = odometer();
        let s = parse_hull(&o, "(ε, z, ε)").unwrap();
        let r = weakly_fixed(&o, &o.parse("(0, e)").unwrap(), &s, 3).unwrap();
        assert!(!r.fixed);
        assert_eq!(r.weakly_fixed.counterexample(), Some(&o.identity()));
    }

    #[test]
    fn ep_examples() {
        let m = x01();
        assert!(condition_ep(&m, &h(&m, "01", "01"), 3).unwrap().is_exact());
        let o = odometer();
        assert!(condition_ep(&o, &parse_hull(&o, "(ε, z, ε)").unwrap(), 4).unwrap().is_holds());
        let mo = modified_odometer();
        let v = condition_ep(&mo, &parse_hull(&mo, "(ε, z, ε)").unwrap(), 4).unwrap();
        let entries = &v.witness().unwrap().entries;
        assert_eq!(entries[0].k, mo.parse("(B, e)").unwrap());
        assert_eq!(entries[0].foundation, vec![mo.identity()]);
    }

    #[test]
    fn core_notions() {
        let m = x01();
        let c = hull_core_contains(&m, &one(&m), 3).unwrap();
        assert!(c.lcm_core.is_holds() && c.appendix_core.is_holds());
        let c = hull_core_contains(&m, &h(&m, "0", "1"), 3).unwrap();
        assert!(c.lcm_core.is_fails() && c.appendix_core.is_fails());
        let o = odometer();
        let c = hull_core_contains(&o, &parse_hull(&o, "(ε, z, ε)").unwrap(), 3).unwrap();
        assert!(c.lcm_core.is_holds() && c.appendix_core.is_holds());
    }

    #[test]
    fn e_star_unitarity() {
        assert!(e_star_unitary_probe(&x01(), 4).is_exact());
        let mo = modified_odometer();
        let v = e_star_unitary_probe(&mo, 3);
        let c = v.counterexample().unwrap();
        assert_eq!(format_hull(&mo, &c.e), "(B, e, B)");
        assert_eq!(format_hull(&mo, &c.s), "(ε, z, ε)");
        assert!(e_star_unitary_probe(&mo, 0).is_unknown());
    }

    #[test]
    fn contraction_witness() {
        let m = x01();
        let c = locally_contracting_witness(&m, &w(""), &w("0"), &w("1")).unwrap();
        assert_eq!((c.f1.clone(), c.f0.clone()), (w("0"), w("01")));
        assert!(c.product_is_zero);
        let c = locally_contracting_witness(&m, &w("1"), &w("0"), &w("1")).unwrap();
        assert_eq!((c.f1, c.f0), (w("10"), w("1011")));
        assert!(locally_contracting_witness(&m, &w(""), &w("0"), &w("01")).is_err());
    }
}

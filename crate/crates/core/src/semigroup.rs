//! The right LCM semigroup interface and the decision procedures that only
//! need multiplication, right LCMs and units: ideal equality, condition (H),
//! core membership, foundation sets and an axiom probe.

use std::collections::{HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hull::{EpCounterexample, EpWitness, JCover};
use crate::verdict::{Support, Verdict};

/// Result of intersecting two principal right ideals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RightLcmOutcome<E> {
    Disjoint,
    /// `pP ∩ qP = rP` with `p·p_comp = r = q·q_comp`.
    Meet { r: E, p_comp: E, q_comp: E },
}

impl<E> RightLcmOutcome<E> {
    pub fn is_disjoint(&self) -> bool {
        matches!(self, RightLcmOutcome::Disjoint)
    }
}

/// A finite subset of some `P_{p,q}` covering the sampled part of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetCover<E> {
    pub p: E,
    pub q: E,
    pub cover: Vec<E>,
}

/// A concrete right LCM semigroup with identity.
///
/// Elements are canonical normal forms: two elements are equal exactly when
/// their normal forms are. Every procedure is pure; instances are shared
/// freely across threads.
pub trait RightLcmSemigroup: Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn describe(&self) -> String;
    fn identity(&self) -> Self::Elem;
    fn generators(&self) -> Vec<Self::Elem>;
    /// Whether `p` is a well-formed element of this instance.
    fn contains(&self, p: &Self::Elem) -> bool;
    fn mul(&self, p: &Self::Elem, q: &Self::Elem) -> Self::Elem;
    fn right_lcm(&self, p: &Self::Elem, q: &Self::Elem) -> RightLcmOutcome<Self::Elem>;
    /// The unique `x` with `p·x = r`, if one exists.
    fn left_quotient(&self, p: &Self::Elem, r: &Self::Elem) -> Option<Self::Elem>;
    /// A unit `u` with `p·u = q`, if one exists.
    fn unit_between(&self, p: &Self::Elem, q: &Self::Elem) -> Option<Self::Elem>;
    fn is_unit(&self, p: &Self::Elem) -> bool;
    fn size(&self, p: &Self::Elem) -> usize;
    /// All elements of size at most `max_size`, sorted.
    fn enumerate(&self, max_size: usize) -> Vec<Self::Elem>;
    /// All units of size at most `max_size`, sorted.
    fn units(&self, max_size: usize) -> Vec<Self::Elem>;
    fn format(&self, p: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// Canonical generator of the principal right ideal `pP`.
    fn ideal_key(&self, p: &Self::Elem) -> Self::Elem {
        p.clone()
    }

    /// Canonical representative of the class of `(p, q)` modulo
    /// simultaneous right multiplication by units.
    fn normalize_pair(&self, p: &Self::Elem, q: &Self::Elem) -> (Self::Elem, Self::Elem) {
        (p.clone(), q.clone())
    }

    fn format_pair(&self, p: &Self::Elem, q: &Self::Elem) -> String {
        format!("[{}, {}]", self.format(p), self.format(q))
    }

    fn parse_pair(&self, s: &str) -> Result<(Self::Elem, Self::Elem)> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::parse(1, 1, "expected [p, q]"))?;
        let (a, b) = split_top_level_comma(inner).ok_or_else(|| Error::parse(1, 1, "expected [p, q]"))?;
        let (p, q) = (self.parse(a)?, self.parse(b)?);
        Ok(self.normalize_pair(&p, &q))
    }

    /// `Some(Ok(()))` / `Some(Err(q))` when core membership of `p` is known
    /// exactly; `q` is a witness with `pP ∩ qP = ∅`.
    fn core_shortcut(&self, _p: &Self::Elem) -> Option<Result<(), Self::Elem>> {
        None
    }

    /// Exact foundation-set decision, with a counterexample on failure.
    fn foundation_shortcut(&self, _f: &[Self::Elem]) -> Option<Result<(), Self::Elem>> {
        None
    }

    /// Name of the argument proving right cancellativity, when known.
    fn right_cancellative_proof(&self) -> Option<String> {
        None
    }

    /// True when any two principal right ideals intersect.
    fn lcm_total(&self) -> bool {
        false
    }

    /// Instance-specific decision of condition (H).
    fn condition_h_hook(&self, _bound: usize) -> Option<Verdict<Vec<MeetCover<Self::Elem>>, String>> {
        None
    }

    /// Instance-specific computation of the minimal covers of every `J_s`.
    fn j_cover_hook(&self, _bound: usize) -> Option<Verdict<Vec<JCover<Self::Elem>>, String>> {
        None
    }

    /// Instance-specific decision of condition (EP) for `[p, q]`.
    fn ep_hook(
        &self,
        _p: &Self::Elem,
        _q: &Self::Elem,
        _bound: usize,
    ) -> Option<Verdict<EpWitness<Self::Elem>, EpCounterexample<Self::Elem>>> {
        None
    }
}

pub(crate) fn split_top_level_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                if split.is_some() {
                    return None;
                }
                split = Some(i);
            }
            _ => {}
        }
    }
    split.map(|i| (&s[..i], &s[i + 1..]))
}

/// Size cap for the pairs `(p, q)` quantified over by the bounded searches
/// when the witnesses range up to `bound`.
pub fn pair_bound(bound: usize) -> usize {
    (bound / 2).max(1)
}

fn check<P: RightLcmSemigroup + ?Sized>(inst: &P, p: &P::Elem) -> Result<()> {
    if inst.contains(p) {
        Ok(())
    } else {
        Err(Error::ForeignElement {
            element: format!("{p:?}"),
            instance: inst.describe(),
        })
    }
}

/// Multiplication with a membership check on both factors.
pub fn try_mul<P: RightLcmSemigroup + ?Sized>(inst: &P, p: &P::Elem, q: &P::Elem) -> Result<P::Elem> {
    check(inst, p)?;
    check(inst, q)?;
    Ok(inst.mul(p, q))
}

/// Right LCM with a membership check on both arguments.
pub fn try_right_lcm<P: RightLcmSemigroup + ?Sized>(
    inst: &P,
    p: &P::Elem,
    q: &P::Elem,
) -> Result<RightLcmOutcome<P::Elem>> {
    check(inst, p)?;
    check(inst, q)?;
    Ok(inst.right_lcm(p, q))
}

/// Whether `r ∈ aP`, certified by recomputing `a·(a⁻¹r)`.
pub fn divides<P: RightLcmSemigroup + ?Sized>(inst: &P, a: &P::Elem, r: &P::Elem) -> bool {
    inst.left_quotient(a, r).is_some_and(|x| inst.mul(a, &x) == *r)
}

pub fn meets<P: RightLcmSemigroup + ?Sized>(inst: &P, p: &P::Elem, q: &P::Elem) -> bool {
    !inst.right_lcm(p, q).is_disjoint()
}

/// `pP = qP`, witnessed by a unit `u` with `p·u = q`.
pub fn ideal_eq<P: RightLcmSemigroup + ?Sized>(inst: &P, p: &P::Elem, q: &P::Elem) -> Verdict<P::Elem, String> {
    match inst.unit_between(p, q) {
        Some(u) if inst.is_unit(&u) && inst.mul(p, &u) == *q => {
            Verdict::holds(u, Support::exact("unit search"))
        }
        Some(u) => Verdict::fails(format!(
            "unit search returned {} which does not rescale {} to {}",
            inst.format(&u),
            inst.format(p),
            inst.format(q)
        )),
        None => Verdict::fails(format!("no unit u with {}·u = {}", inst.format(p), inst.format(q))),
    }
}

pub fn same_ideal<P: RightLcmSemigroup + ?Sized>(inst: &P, p: &P::Elem, q: &P::Elem) -> bool {
    inst.ideal_key(p) == inst.ideal_key(q)
}

/// Minimal elements of `sample` in the order `a ≼ b ⇔ bP ⊆ aP`, one
/// representative per ideal.
pub fn minimal_ideals<P: RightLcmSemigroup + ?Sized>(inst: &P, sample: &[P::Elem]) -> Vec<P::Elem> {
    let mut keys: Vec<P::Elem> = sample.iter().map(|b| inst.ideal_key(b)).collect();
    keys.sort_by_key(|k| (inst.size(k), k.clone()));
    keys.dedup();
    let mut minimal: Vec<P::Elem> = Vec::new();
    for k in keys {
        if !minimal.iter().any(|m| divides(inst, m, &k)) {
            minimal.push(k);
        }
    }
    minimal
}

/// Condition (H): every meeting pair `p, q` has a finite `F ⊆ P_{p,q}` such
/// that every `b ∈ P_{p,q}` meets some `f ∈ F`.
///
/// Exact when the instance supplies its own argument or is right
/// cancellative; otherwise pairs of size ≤ `pair_bound(bound)` are examined
/// against witnesses of size ≤ `bound`, and a pair whose minimal witnesses
/// keep appearing at the search frontier makes the result unknown.
pub fn condition_h<P: RightLcmSemigroup + ?Sized>(
    inst: &P,
    bound: usize,
) -> Verdict<Vec<MeetCover<P::Elem>>, String> {
    if bound == 0 {
        return Verdict::unknown(0);
    }
    if let Some(v) = inst.condition_h_hook(bound) {
        return v;
    }
    if let Some(reason) = inst.right_cancellative_proof() {
        return Verdict::holds(Vec::new(), Support::exact(reason));
    }
    condition_h_search(inst, pair_bound(bound), bound)
}

/// The generic bounded search behind [`condition_h`], with no shortcuts.
pub fn condition_h_search<P: RightLcmSemigroup + ?Sized>(
    inst: &P,
    pair_size: usize,
    bound: usize,
) -> Verdict<Vec<MeetCover<P::Elem>>, String> {
    if bound == 0 {
        return Verdict::unknown(0);
    }
    let pairs = inst.enumerate(pair_size);
    let witnesses = inst.enumerate(bound);
    let mut covers = Vec::new();
    let mut seen = HashSet::new();
    for p in &pairs {
        for q in &pairs {
            if p == q {
                continue;
            }
            let (np, nq) = inst.normalize_pair(p, q);
            if !seen.insert((np.clone(), nq.clone())) || !meets(inst, &np, &nq) {
                continue;
            }
            let sample: Vec<P::Elem> = witnesses
                .iter()
                .filter(|b| inst.mul(&np, b) == inst.mul(&nq, b))
                .cloned()
                .collect();
            if sample.is_empty() {
                continue;
            }
            let inner: Vec<P::Elem> = sample.iter().filter(|b| inst.size(b) < bound).cloned().collect();
            let cover = minimal_ideals(inst, &inner);
            let stable = sample.iter().all(|b| cover.iter().any(|f| meets(inst, f, b)));
            if !stable {
                return Verdict::unknown(bound);
            }
            covers.push(MeetCover {
                p: np,
                q: nq,
                cover,
            });
        }
    }
    Verdict::holds(covers, Support::bounded(bound))
}

/// Membership of `p` in the core `P₀ = {p : pP ∩ qP ≠ ∅ for all q}`.
pub fn core_contains<P: RightLcmSemigroup + ?Sized>(inst: &P, p: &P::Elem, bound: usize) -> Verdict<(), P::Elem> {
    match inst.core_shortcut(p) {
        Some(Ok(())) => return Verdict::holds((), Support::exact("core shortcut")),
        Some(Err(q)) => return Verdict::fails(q),
        None => {}
    }
    if inst.lcm_total() {
        return Verdict::holds((), Support::exact("right LCMs always exist"));
    }
    for q in inst.enumerate(bound) {
        if inst.right_lcm(p, &q).is_disjoint() {
            return Verdict::fails(q);
        }
    }
    Verdict::unknown(bound)
}

/// Whether `F` is a foundation set: every `p` meets some `f ∈ F`.
pub fn is_foundation_set<P: RightLcmSemigroup + ?Sized>(
    inst: &P,
    f: &[P::Elem],
    bound: usize,
) -> Result<Verdict<(), P::Elem>> {
    if f.is_empty() {
        return Err(Error::usage("a foundation-set candidate must be nonempty"));
    }
    for x in f {
        check(inst, x)?;
    }
    if let Some(r) = inst.foundation_shortcut(f) {
        return Ok(match r {
            Ok(()) => Verdict::holds((), Support::exact("prefix-tree depth check")),
            Err(p) => Verdict::fails(p),
        });
    }
    if inst.lcm_total() {
        return Ok(Verdict::holds((), Support::exact("right LCMs always exist")));
    }
    for p in inst.enumerate(bound) {
        if f.iter().all(|x| inst.right_lcm(x, &p).is_disjoint()) {
            return Ok(Verdict::fails(p));
        }
    }
    Ok(Verdict::holds((), Support::bounded(bound)))
}

/// Right cancellativity: no `p ≠ q` and `b` with `pb = qb`.
pub fn right_cancellativity_probe<P: RightLcmSemigroup + ?Sized>(
    inst: &P,
    bound: usize,
) -> Verdict<(), (P::Elem, P::Elem, P::Elem)> {
    if let Some(reason) = inst.right_cancellative_proof() {
        return Verdict::holds((), Support::exact(reason));
    }
    if bound == 0 {
        return Verdict::unknown(0);
    }
    let pairs = inst.enumerate(pair_bound(bound));
    let witnesses = inst.enumerate(bound);
    for b in &witnesses {
        let mut images: HashMap<P::Elem, &P::Elem> = HashMap::new();
        for p in &pairs {
            let pb = inst.mul(p, b);
            if let Some(q) = images.insert(pb, p) {
                return Verdict::fails(((*q).clone(), p.clone(), b.clone()));
            }
        }
    }
    Verdict::holds((), Support::bounded(bound))
}

/// A law that failed during [`axioms_probe`], with the elements involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation<E> {
    pub law: &'static str,
    pub elements: Vec<E>,
}

/// Exhaustive check at `bound` plus `samples` random triples drawn from
/// elements of size ≤ `bound + 1`: identity, associativity, left
/// cancellativity, right-LCM correctness, the translation identity
/// `a(pP ∩ qP) = apP ∩ aqP`, and unit invariance of right LCMs.
pub fn axioms_probe<P: RightLcmSemigroup + ?Sized>(
    inst: &P,
    samples: usize,
    bound: usize,
) -> Verdict<(), AxiomViolation<P::Elem>> {
    let elems = inst.enumerate(bound);
    let units = inst.units(bound);
    let one = inst.identity();
    let fail = |law, elements: Vec<P::Elem>| Verdict::fails(AxiomViolation { law, elements });

    for p in &elems {
        if inst.mul(&one, p) != *p || inst.mul(p, &one) != *p {
            return fail("identity", vec![p.clone()]);
        }
    }
    for p in &elems {
        let mut images: HashMap<P::Elem, &P::Elem> = HashMap::new();
        for q in &elems {
            if let Some(s) = images.insert(inst.mul(p, q), q) {
                return fail("left cancellativity", vec![p.clone(), s.clone(), q.clone()]);
            }
        }
    }
    for p in &elems {
        for q in &elems {
            if let Some(v) = check_lcm(inst, p, q, &elems) {
                return fail(v, vec![p.clone(), q.clone()]);
            }
            for u in &units {
                for w in &units {
                    let a = inst.right_lcm(p, q);
                    let b = inst.right_lcm(&inst.mul(p, u), &inst.mul(q, w));
                    let ok = match (&a, &b) {
                        (RightLcmOutcome::Disjoint, RightLcmOutcome::Disjoint) => true,
                        (RightLcmOutcome::Meet { r, .. }, RightLcmOutcome::Meet { r: r2, .. }) => {
                            ideal_eq(inst, r, r2).is_holds()
                        }
                        _ => false,
                    };
                    if !ok {
                        return fail("unit invariance", vec![p.clone(), q.clone(), u.clone(), w.clone()]);
                    }
                }
            }
        }
    }
    let mut triples: Vec<(P::Elem, P::Elem, P::Elem)> = Vec::new();
    for a in &elems {
        for p in &elems {
            for q in &elems {
                triples.push((a.clone(), p.clone(), q.clone()));
            }
        }
    }
    let pool = inst.enumerate(bound + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..samples {
        let pick = |rng: &mut ChaCha8Rng| pool.choose(rng).cloned().unwrap_or_else(|| one.clone());
        triples.push((pick(&mut rng), pick(&mut rng), pick(&mut rng)));
    }
    for (a, p, q) in &triples {
        if inst.mul(&inst.mul(a, p), q) != inst.mul(a, &inst.mul(p, q)) {
            return fail("associativity", vec![a.clone(), p.clone(), q.clone()]);
        }
        let lhs = inst.right_lcm(&inst.mul(a, p), &inst.mul(a, q));
        let rhs = inst.right_lcm(p, q);
        let ok = match (&lhs, &rhs) {
            (RightLcmOutcome::Disjoint, RightLcmOutcome::Disjoint) => true,
            (RightLcmOutcome::Meet { r, .. }, RightLcmOutcome::Meet { r: r2, .. }) => {
                same_ideal(inst, r, &inst.mul(a, r2))
            }
            _ => false,
        };
        if !ok {
            return fail("translation identity", vec![a.clone(), p.clone(), q.clone()]);
        }
    }
    Verdict::holds((), Support::bounded(bound))
}

/// Check one right-LCM outcome against sampled common multiples.
fn check_lcm<P: RightLcmSemigroup + ?Sized>(
    inst: &P,
    p: &P::Elem,
    q: &P::Elem,
    sample: &[P::Elem],
) -> Option<&'static str> {
    let p_mult: HashSet<P::Elem> = sample.iter().map(|x| inst.mul(p, x)).collect();
    let common: Vec<P::Elem> = sample
        .iter()
        .map(|y| inst.mul(q, y))
        .filter(|c| p_mult.contains(c))
        .collect();
    match inst.right_lcm(p, q) {
        RightLcmOutcome::Disjoint => (!common.is_empty()).then_some("right LCM disjointness"),
        RightLcmOutcome::Meet { r, p_comp, q_comp } => {
            if inst.mul(p, &p_comp) != r || inst.mul(q, &q_comp) != r {
                return Some("right LCM complements");
            }
            if common.iter().any(|c| !divides(inst, &r, c)) {
                return Some("right LCM minimality");
            }
            None
        }
    }
}

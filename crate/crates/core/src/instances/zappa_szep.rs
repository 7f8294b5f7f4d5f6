//! Zappa-Szép products `X* ⋈ G` of a free monoid with a self-similar group,
//! multiplied by `(u, a)(v, b) = (u(a·v), a|_v b)`.

use crate::error::{Error, Result};
use crate::hull::{weakly_fixed, EpCounterexample, EpEntry, EpWitness, Hull, JCover};
use crate::semigroup::{pair_bound, split_top_level_comma, MeetCover, RightLcmOutcome, RightLcmSemigroup};
use crate::verdict::{Support, Verdict};
use crate::word::{Alphabet, Word};

use super::self_similar::{act, act_restrict, msf_enumerate, strongly_fixes, verify_zs_axioms, SelfSimilarGroup};
use super::TreeSemigroup;

/// Group elements of size ≤ this and words up to [`ZS_VERIFY_DEPTH`] are
/// checked against the Zappa-Szép axioms when a product is built.
pub const ZS_VERIFY_SIZE: usize = 2;
pub const ZS_VERIFY_DEPTH: usize = 3;

/// `(α, g)`, ordered by word (shortlex) and then by group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZsElem<G> {
    pub word: Word,
    pub group: G,
}

impl<G> ZsElem<G> {
    pub fn new(word: Word, group: G) -> Self {
        ZsElem { word, group }
    }
}

/// A hull element `[(α, g), (β, h)]` in the form `(α, gh⁻¹, β)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple<G> {
    pub left: Word,
    pub group: G,
    pub right: Word,
}

#[derive(Clone, Debug)]
pub struct ZappaSzep<G: SelfSimilarGroup> {
    name: String,
    group: G,
}

type Elem<G> = ZsElem<<G as SelfSimilarGroup>::Elem>;

impl<G: SelfSimilarGroup> ZappaSzep<G> {
    /// Build `X* ⋈ G` after verifying ZS1–ZS8 and letter bijectivity.
    pub fn new(name: impl Into<String>, group: G) -> Result<Self> {
        let elems = group.elements(ZS_VERIFY_SIZE);
        verify_zs_axioms(&group, &elems, ZS_VERIFY_DEPTH)?;
        Ok(ZappaSzep {
            name: name.into(),
            group,
        })
    }

    /// Build without verification. Only for negative-control fixtures.
    pub fn new_unchecked(name: impl Into<String>, group: G) -> Self {
        ZappaSzep {
            name: name.into(),
            group,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.group.alphabet()
    }

    pub fn elem(&self, word: Word, g: G::Elem) -> Elem<G> {
        ZsElem::new(word, g)
    }

    /// Product of triples by the closed formula
    /// `(α,g,β)(γ,h,ν) = (α(g·γ'), g|_{γ'}h, ν)` if `γ = βγ'`,
    /// `(α, g(h⁻¹|_{β'})⁻¹, ν(h⁻¹·β'))` if `β = γβ'`, and `0` otherwise.
    /// Independent of the right-LCM route used by the hull product.
    pub fn triple_mul(&self, s: &Triple<G::Elem>, t: &Triple<G::Elem>) -> Option<Triple<G::Elem>> {
        let gr = &self.group;
        if let Some(gamma) = t.left.strip_prefix(&s.right) {
            let (moved, r) = act_restrict(gr, &s.group, &gamma);
            return Some(Triple {
                left: s.left.concat(&moved),
                group: gr.mul(&r, &t.group),
                right: t.right.clone(),
            });
        }
        if let Some(beta) = s.right.strip_prefix(&t.left) {
            let h_inv = gr.inverse(&t.group);
            let (moved, r) = act_restrict(gr, &h_inv, &beta);
            return Some(Triple {
                left: s.left.clone(),
                group: gr.mul(&s.group, &gr.inverse(&r)),
                right: t.right.concat(&moved),
            });
        }
        None
    }

    pub fn to_triple(&self, s: &Hull<Elem<G>>) -> Option<Triple<G::Elem>> {
        match s {
            Hull::Zero => None,
            Hull::Pair(p, q) => Some(Triple {
                left: p.word.clone(),
                group: self.group.mul(&p.group, &self.group.inverse(&q.group)),
                right: q.word.clone(),
            }),
        }
    }

    pub fn from_triple(&self, t: &Triple<G::Elem>) -> Hull<Elem<G>> {
        Hull::Pair(
            ZsElem::new(t.left.clone(), t.group.clone()),
            ZsElem::new(t.right.clone(), self.group.identity()),
        )
    }

    fn sibling(&self, alpha: &Word) -> Option<Word> {
        let first = *alpha.first()?;
        self.alphabet().letters().find(|&x| x != first).map(Word::letter)
    }

    fn parse_word(&self, s: &str) -> Result<Word> {
        self.alphabet().parse_word(s)
    }
}

impl<G: SelfSimilarGroup> RightLcmSemigroup for ZappaSzep<G> {
    type Elem = Elem<G>;

    fn describe(&self) -> String {
        format!(
            "{}: X*⋈G over {} with {} group oracle",
            self.name,
            self.alphabet(),
            self.group.oracle().describe()
        )
    }
    fn identity(&self) -> Self::Elem {
        ZsElem::new(Word::empty(), self.group.identity())
    }
    fn generators(&self) -> Vec<Self::Elem> {
        let letters = self
            .alphabet()
            .letters()
            .map(|x| ZsElem::new(Word::letter(x), self.group.identity()));
        let units = self
            .group
            .generators()
            .into_iter()
            .map(|g| ZsElem::new(Word::empty(), g));
        letters.chain(units).collect()
    }
    fn contains(&self, p: &Self::Elem) -> bool {
        self.alphabet().contains(&p.word)
    }
    fn mul(&self, p: &Self::Elem, q: &Self::Elem) -> Self::Elem {
        let (moved, r) = act_restrict(&self.group, &p.group, &q.word);
        ZsElem::new(p.word.concat(&moved), self.group.mul(&r, &q.group))
    }
    fn right_lcm(&self, p: &Self::Elem, q: &Self::Elem) -> RightLcmOutcome<Self::Elem> {
        let gr = &self.group;
        // pP consists of the elements whose word extends p's word, so the
        // ideals meet iff the words are comparable. The shorter side takes
        // a word complement with trivial group part; the longer side a unit.
        if let Some(delta) = q.word.strip_prefix(&p.word) {
            let gamma = act(gr, &gr.inverse(&p.group), &delta);
            let p_comp = ZsElem::new(gamma, gr.identity());
            let r = self.mul(p, &p_comp);
            let q_comp = ZsElem::new(Word::empty(), gr.mul(&gr.inverse(&q.group), &r.group));
            RightLcmOutcome::Meet { r, p_comp, q_comp }
        } else if let Some(delta) = p.word.strip_prefix(&q.word) {
            let gamma = act(gr, &gr.inverse(&q.group), &delta);
            let q_comp = ZsElem::new(gamma, gr.identity());
            let r = self.mul(q, &q_comp);
            let p_comp = ZsElem::new(Word::empty(), gr.mul(&gr.inverse(&p.group), &r.group));
            RightLcmOutcome::Meet { r, p_comp, q_comp }
        } else {
            RightLcmOutcome::Disjoint
        }
    }
    fn left_quotient(&self, p: &Self::Elem, r: &Self::Elem) -> Option<Self::Elem> {
        let gr = &self.group;
        let delta = r.word.strip_prefix(&p.word)?;
        let gamma = act(gr, &gr.inverse(&p.group), &delta);
        let (_, restricted) = act_restrict(gr, &p.group, &gamma);
        Some(ZsElem::new(gamma, gr.mul(&gr.inverse(&restricted), &r.group)))
    }
    fn unit_between(&self, p: &Self::Elem, q: &Self::Elem) -> Option<Self::Elem> {
        (p.word == q.word).then(|| {
            ZsElem::new(
                Word::empty(),
                self.group.mul(&self.group.inverse(&p.group), &q.group),
            )
        })
    }
    fn is_unit(&self, p: &Self::Elem) -> bool {
        p.word.is_empty()
    }
    fn size(&self, p: &Self::Elem) -> usize {
        p.word.len() + self.group.size(&p.group)
    }
    fn enumerate(&self, max_size: usize) -> Vec<Self::Elem> {
        let mut out = Vec::new();
        for len in 0..=max_size {
            let groups = self.group.elements(max_size - len);
            for w in self.alphabet().words_of_len(len) {
                out.extend(groups.iter().map(|g| ZsElem::new(w.clone(), g.clone())));
            }
        }
        out.sort();
        out
    }
    fn units(&self, max_size: usize) -> Vec<Self::Elem> {
        self.group
            .elements(max_size)
            .into_iter()
            .map(|g| ZsElem::new(Word::empty(), g))
            .collect()
    }
    fn format(&self, p: &Self::Elem) -> String {
        format!(
            "({}, {})",
            self.alphabet().format_word(&p.word),
            self.group.format(&p.group)
        )
    }
    fn parse(&self, s: &str) -> Result<Self::Elem> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|u| u.strip_suffix(')'))
            .ok_or_else(|| Error::parse(1, 1, "expected (word, group element)"))?;
        let (w, g) = split_top_level_comma(inner).ok_or_else(|| Error::parse(1, 1, "expected (word, group element)"))?;
        Ok(ZsElem::new(self.parse_word(w)?, self.group.parse(g)?))
    }

    fn ideal_key(&self, p: &Self::Elem) -> Self::Elem {
        ZsElem::new(p.word.clone(), self.group.identity())
    }

    fn normalize_pair(&self, p: &Self::Elem, q: &Self::Elem) -> (Self::Elem, Self::Elem) {
        let g = self.group.mul(&p.group, &self.group.inverse(&q.group));
        (
            ZsElem::new(p.word.clone(), g),
            ZsElem::new(q.word.clone(), self.group.identity()),
        )
    }

    fn format_pair(&self, p: &Self::Elem, q: &Self::Elem) -> String {
        let (p, q) = self.normalize_pair(p, q);
        format!(
            "({}, {}, {})",
            self.alphabet().format_word(&p.word),
            self.group.format(&p.group),
            self.alphabet().format_word(&q.word)
        )
    }

    fn parse_pair(&self, s: &str) -> Result<(Self::Elem, Self::Elem)> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix('[') {
            let inner = rest.strip_suffix(']').ok_or_else(|| Error::parse(1, t.len(), "expected ']'"))?;
            let (a, b) = split_top_level_comma(inner).ok_or_else(|| Error::parse(1, 1, "expected [p, q]"))?;
            let (p, q) = (self.parse(a)?, self.parse(b)?);
            return Ok(self.normalize_pair(&p, &q));
        }
        let inner = t
            .strip_prefix('(')
            .and_then(|u| u.strip_suffix(')'))
            .ok_or_else(|| Error::parse(1, 1, "expected (α, g, β) or [p, q]"))?;
        let parts: Vec<&str> = inner.split(',').collect();
        let [a, g, b] = parts[..] else {
            return Err(Error::parse(1, 1, "expected (α, g, β)"));
        };
        let t = Triple {
            left: self.parse_word(a)?,
            group: self.group.parse(g)?,
            right: self.parse_word(b)?,
        };
        match self.from_triple(&t) {
            Hull::Pair(p, q) => Ok((p, q)),
            Hull::Zero => unreachable!("triples are nonzero"),
        }
    }

    fn core_shortcut(&self, p: &Self::Elem) -> Option<Result<(), Self::Elem>> {
        Some(match self.sibling(&p.word) {
            Some(w) => Err(ZsElem::new(w, self.group.identity())),
            None => Ok(()),
        })
    }

    fn foundation_shortcut(&self, f: &[Self::Elem]) -> Option<Result<(), Self::Elem>> {
        let depth = f.iter().map(|p| p.word.len()).max().unwrap_or(0);
        let miss = self
            .alphabet()
            .words_of_len(depth)
            .into_iter()
            .find(|w| !f.iter().any(|m| m.word.is_prefix_of(w)));
        Some(miss.map_or(Ok(()), |w| Err(ZsElem::new(w, self.group.identity()))))
    }

    fn right_cancellative_proof(&self) -> Option<String> {
        self.group
            .pseudo_free_proof()
            .map(|via| format!("pseudo-freeness ({via})"))
    }

    fn lcm_total(&self) -> bool {
        self.alphabet().len() == 1
    }

    /// For `p = (α, g)`, `q = (β, 1)` the equalizer `P_{p,q}` is empty
    /// unless `α = β`, and is then `SF_g ⋈ G`, covered by `MSF_g`. So (H)
    /// reduces to finiteness of every `MSF_g`.
    fn condition_h_hook(&self, bound: usize) -> Option<Verdict<Vec<MeetCover<Self::Elem>>, String>> {
        let gr = &self.group;
        let mut covers = Vec::new();
        let mut unknown = false;
        for g in gr.elements(pair_bound(bound)) {
            if gr.is_identity(&g) {
                continue;
            }
            let res = msf_enumerate(gr, &g, bound).ok()?;
            match &res.finiteness {
                Verdict::Fails { counterexample: fam } => {
                    let a = self.alphabet();
                    return Some(Verdict::fails(format!(
                        "MSF_{} is infinite: {}({})^k{} for all k",
                        gr.format(&g),
                        a.format_word(&fam.prefix),
                        a.format_word(&fam.pump),
                        a.format_word(&fam.tail)
                    )));
                }
                Verdict::Unknown { .. } => unknown = true,
                Verdict::Holds { .. } => {}
            }
            covers.push(MeetCover {
                p: ZsElem::new(Word::empty(), g),
                q: self.identity(),
                cover: res
                    .words
                    .into_iter()
                    .map(|w| ZsElem::new(w, gr.identity()))
                    .collect(),
            });
        }
        if unknown {
            return Some(Verdict::unknown(bound));
        }
        let support = if gr.msf_finiteness_proof().is_some() {
            Support::exact("MSF finiteness").at(bound)
        } else {
            Support::bounded(bound).via("MSF enumeration")
        };
        Some(Verdict::holds(covers, support))
    }

    /// `J_(α, g, β)` is empty unless `α = β`, and is then generated by
    /// `(αγ, 1)` for `γ ∈ MSF_g`.
    fn j_cover_hook(&self, bound: usize) -> Option<Verdict<Vec<JCover<Self::Elem>>, String>> {
        let gr = &self.group;
        let elems = self.enumerate(pair_bound(bound));
        let mut seen = std::collections::HashSet::new();
        let mut covers = Vec::new();
        let mut unknown = false;
        for p in &elems {
            for q in &elems {
                let (np, nq) = self.normalize_pair(p, q);
                if np == nq || !seen.insert((np.clone(), nq.clone())) {
                    continue;
                }
                let s = Hull::Pair(np, nq);
                let t = self.to_triple(&s)?;
                if t.left != t.right || gr.is_identity(&t.group) {
                    continue;
                }
                let res = msf_enumerate(gr, &t.group, bound).ok()?;
                match &res.finiteness {
                    Verdict::Fails { .. } => {
                        return Some(Verdict::fails(format!("J of {} has no finite cover", crate::hull::format_hull(self, &s))));
                    }
                    Verdict::Unknown { .. } => unknown = true,
                    Verdict::Holds { .. } => {}
                }
                let cover = res
                    .words
                    .iter()
                    .map(|w| ZsElem::new(t.left.concat(w), gr.identity()))
                    .collect();
                covers.push(JCover { s, cover });
            }
        }
        if unknown {
            return Some(Verdict::unknown(bound));
        }
        let support = if gr.msf_finiteness_proof().is_some() {
            Support::exact("MSF finiteness").at(bound)
        } else {
            Support::bounded(bound).via("MSF enumeration")
        };
        Some(Verdict::holds(covers, support))
    }

    /// For a faithful action, `(ε, g, ε)` satisfies (EP): a weakly fixed
    /// `(α, 1, α)` is strongly fixed, so `pk = qk` already. The equivalence
    /// is re-checked on short words before the shortcut is used.
    fn ep_hook(
        &self,
        p: &Self::Elem,
        q: &Self::Elem,
        bound: usize,
    ) -> Option<Verdict<EpWitness<Self::Elem>, EpCounterexample<Self::Elem>>> {
        let gr = &self.group;
        if !p.word.is_empty() || !q.word.is_empty() {
            return None;
        }
        let via = gr.faithful_proof()?;
        let g = gr.mul(&p.group, &gr.inverse(&q.group));
        let s = Hull::Pair(p.clone(), q.clone());
        let depth = bound.min(4);
        let mut entries: Vec<EpEntry<Self::Elem>> = Vec::new();
        for alpha in self.alphabet().words_up_to(depth) {
            let k = ZsElem::new(alpha.clone(), gr.identity());
            let wf = weakly_fixed(self, &k, &s, depth).ok()?;
            let strong = strongly_fixes(gr, &g, &alpha);
            if wf.weakly_fixed.is_holds() != strong {
                return None;
            }
            if strong && !entries.iter().any(|e| e.k.word.is_prefix_of(&alpha)) {
                entries.push(EpEntry {
                    k,
                    foundation: vec![self.identity()],
                });
            }
        }
        Some(Verdict::holds(
            EpWitness { entries },
            Support::exact(format!("faithful self-similar action ({via})")),
        ))
    }
}

impl<G: SelfSimilarGroup> TreeSemigroup for ZappaSzep<G> {
    type Group = G;

    fn group(&self) -> &G {
        &self.group
    }
    fn split(&self, p: &Self::Elem) -> (Word, G::Elem) {
        (p.word.clone(), p.group.clone())
    }
    fn join(&self, word: Word, g: G::Elem) -> Self::Elem {
        ZsElem::new(word, g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::builtins::{modified_odometer, odometer};
    use crate::instances::groups::Power;
    use crate::semigroup::{condition_h, ideal_eq};

    #[test]
    fn odometer_products() {
        let o = odometer();
        let z = o.parse("(ε, z)").unwrap();
        let zero = o.parse("(0, e)").unwrap();
        assert_eq!(o.mul(&z, &zero), o.parse("(1, e)").unwrap());
        assert_eq!(
            o.right_lcm(&z, &zero),
            RightLcmOutcome::Meet {
                r: o.parse("(0, z)").unwrap(),
                p_comp: o.parse("(1, e)").unwrap(),
                q_comp: o.parse("(ε, z)").unwrap(),
            }
        );
        let u = ideal_eq(&o, &o.parse("(0, z)").unwrap(), &zero);
        assert_eq!(u.witness(), Some(&o.parse("(ε, z^-1)").unwrap()));
    }

    #[test]
    fn triples_round_trip() {
        let m = modified_odometer();
        let (p, q) = m.parse_pair("(0B, z^2, 1)").unwrap();
        assert_eq!(m.format_pair(&p, &q), "(0B, z^2, 1)");
        let (p2, q2) = m.parse_pair("[(0B, z^3), (1, z)]").unwrap();
        assert_eq!((p2, q2), (p, q));
    }

    #[test]
    fn triple_formula_matches_sample() {
        let o = odometer();
        let s = Triple {
            left: Word::empty(),
            group: Power(1),
            right: Word::empty(),
        };
        let t = Triple {
            left: Word::letter(0),
            group: Power(0),
            right: Word::empty(),
        };
        let st = o.triple_mul(&s, &t).unwrap();
        assert_eq!(st.left, Word::letter(1));
        assert_eq!(st.group, Power(0));
    }

    #[test]
    fn condition_h_via_msf() {
        let m = modified_odometer();
        let v = condition_h(&m, 6);
        let s = v.support().unwrap();
        assert_eq!(s.to_string(), "bound=6, via MSF finiteness");
        let covers = v.witness().unwrap();
        let z = covers.iter().find(|c| c.p.group == Power(1)).unwrap();
        assert_eq!(z.cover, vec![m.parse("(B, e)").unwrap()]);
    }
}

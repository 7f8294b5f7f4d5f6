//! Self-similar group actions: the letter-level interface implemented by each
//! group oracle, and the word-level calculus built on it (action,
//! restriction, strongly fixed words, MSF sets, axiom verification).

use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::verdict::{Support, Verdict};
use crate::word::{Alphabet, Letter, Word};

/// How group-element equality is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleKind {
    Trivial,
    IntegerPower,
    FiniteTable,
    /// Equality of actions on words of length `2·depth`.
    BoundedPortrait { depth: usize },
}

impl OracleKind {
    pub fn describe(&self) -> String {
        match self {
            OracleKind::Trivial => "trivial".into(),
            OracleKind::IntegerPower => "integer-power".into(),
            OracleKind::FiniteTable => "finite-table".into(),
            OracleKind::BoundedPortrait { depth } => format!("bounded-portrait(depth={depth})"),
        }
    }
}

/// A group acting on `X*` by `g(xα) = (g·x)(g|_x·α)`, described letter by
/// letter. Multiplication composes actions: `(gh)·x = g·(h·x)`.
pub trait SelfSimilarGroup: Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn alphabet(&self) -> &Alphabet;
    fn oracle(&self) -> OracleKind;
    fn identity(&self) -> Self::Elem;
    fn generators(&self) -> Vec<Self::Elem>;
    fn mul(&self, g: &Self::Elem, h: &Self::Elem) -> Self::Elem;
    fn inverse(&self, g: &Self::Elem) -> Self::Elem;
    fn act_letter(&self, g: &Self::Elem, x: Letter) -> Letter;
    fn restrict_letter(&self, g: &Self::Elem, x: Letter) -> Self::Elem;
    fn size(&self, g: &Self::Elem) -> usize;
    /// All elements of size at most `max_size`, sorted and deduplicated.
    fn elements(&self, max_size: usize) -> Vec<Self::Elem>;
    fn format(&self, g: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// Whether `==` on elements is true group equality.
    fn equality_exact(&self) -> bool {
        !matches!(self.oracle(), OracleKind::BoundedPortrait { .. })
    }

    fn is_identity(&self, g: &Self::Elem) -> bool {
        *g == self.identity()
    }

    /// The words of length ≤ `max_len` in `MSF_g`, from a closed form proven
    /// for the whole group, if the group belongs to a family with one. The
    /// closed form also certifies that `MSF_g` is finite.
    fn msf_closed_form(&self, _g: &Self::Elem, _max_len: usize) -> Option<Vec<Word>> {
        None
    }

    /// Name of an argument proving that every `MSF_g` is finite.
    fn msf_finiteness_proof(&self) -> Option<String> {
        None
    }

    /// Name of an argument proving that no `g ≠ 1` strongly fixes a word.
    fn pseudo_free_proof(&self) -> Option<String> {
        None
    }

    /// Name of an argument proving the action is faithful.
    fn faithful_proof(&self) -> Option<String> {
        None
    }
}

/// `g·α`.
pub fn act<G: SelfSimilarGroup + ?Sized>(group: &G, g: &G::Elem, alpha: &[Letter]) -> Word {
    act_restrict(group, g, alpha).0
}

/// `g|_α`, computed letter by letter.
pub fn restrict<G: SelfSimilarGroup + ?Sized>(group: &G, g: &G::Elem, alpha: &[Letter]) -> G::Elem {
    act_restrict(group, g, alpha).1
}

/// `(g·α, g|_α)` in a single pass.
pub fn act_restrict<G: SelfSimilarGroup + ?Sized>(group: &G, g: &G::Elem, alpha: &[Letter]) -> (Word, G::Elem) {
    let mut state = g.clone();
    let mut out = Word::empty();
    for &x in alpha {
        out.push(group.act_letter(&state, x));
        state = group.restrict_letter(&state, x);
    }
    (out, state)
}

pub fn strongly_fixes<G: SelfSimilarGroup + ?Sized>(group: &G, g: &G::Elem, alpha: &[Letter]) -> bool {
    let (image, r) = act_restrict(group, g, alpha);
    image.as_slice() == alpha && group.is_identity(&r)
}

/// An infinite family of minimal strongly fixed words
/// `prefix · loop^k · tail`, all of them in `MSF_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MsfFamily {
    pub prefix: Word,
    pub pump: Word,
    pub tail: Word,
}

impl MsfFamily {
    pub fn member(&self, k: usize) -> Word {
        self.prefix.concat(&self.pump.repeat(k)).concat(&self.tail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MsfResult {
    pub words: Vec<Word>,
    pub finiteness: Verdict<(), MsfFamily>,
}

/// `MSF_g`: words of length ≤ `max_len` strongly fixed by `g` with no
/// strongly fixed proper prefix.
///
/// The search walks only letters fixed by the current restriction, since a
/// word is fixed exactly when each letter is fixed by the restriction to
/// the prefix before it. Finiteness is exact when a closed form is
/// available or the walk dies out before `max_len`; a repeated restriction
/// that can still reach the identity yields an infinite family.
pub fn msf_enumerate<G: SelfSimilarGroup + ?Sized>(group: &G, g: &G::Elem, max_len: usize) -> Result<MsfResult> {
    if group.is_identity(g) {
        return Err(Error::usage("MSF is only defined for g ≠ 1: the empty word is strongly fixed by 1"));
    }
    let mut walk = MsfWalk {
        group,
        max_len,
        words: Vec::new(),
        live: false,
        repeats: Vec::new(),
    };
    walk.explore(g, &mut Word::empty(), &mut vec![g.clone()]);
    let mut words = walk.words;
    words.sort();

    if let Some(mut closed) = group.msf_closed_form(g, max_len) {
        closed.sort();
        if closed != words {
            return Err(Error::Invariant(format!(
                "MSF walk disagrees with the closed form for {}",
                group.format(g)
            )));
        }
        let via = group.msf_finiteness_proof().unwrap_or_else(|| "closed form".into());
        return Ok(MsfResult {
            words,
            finiteness: Verdict::holds((), Support::exact(via)),
        });
    }

    for (start, repeat) in &walk.repeats {
        if let Some(w) = words.iter().find(|w| start.is_prefix_of(w)) {
            let family = MsfFamily {
                prefix: start.clone(),
                pump: repeat.suffix_from(start.len()),
                tail: w.suffix_from(start.len()),
            };
            return Ok(MsfResult {
                words,
                finiteness: Verdict::fails(family),
            });
        }
    }
    let finiteness = if walk.live {
        Verdict::unknown(max_len)
    } else {
        Verdict::holds((), Support::exact("search tree exhausted"))
    };
    Ok(MsfResult { words, finiteness })
}

struct MsfWalk<'a, G: SelfSimilarGroup + ?Sized> {
    group: &'a G,
    max_len: usize,
    words: Vec<Word>,
    live: bool,
    // (prefix where the restriction first occurred, prefix where it recurred)
    repeats: Vec<(Word, Word)>,
}

impl<G: SelfSimilarGroup + ?Sized> MsfWalk<'_, G> {
    fn explore(&mut self, state: &G::Elem, word: &mut Word, path: &mut Vec<G::Elem>) {
        for x in self.group.alphabet().letters() {
            if self.group.act_letter(state, x) != x {
                continue;
            }
            let next = self.group.restrict_letter(state, x);
            word.push(x);
            if self.group.is_identity(&next) {
                self.words.push(word.clone());
            } else if word.len() >= self.max_len {
                self.live = true;
            } else if let Some(i) = self
                .group
                .equality_exact()
                .then(|| path.iter().position(|h| *h == next))
                .flatten()
            {
                self.repeats.push((word.prefix(i), word.clone()));
            } else {
                path.push(next.clone());
                self.explore(&next, word, path);
                path.pop();
            }
            word.pop();
        }
    }
}

/// Outcome of [`pseudo_free_faithful_probe`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoFreeFaithful<E> {
    /// Fails with `(g, α)`, `α ∈ SF_g`.
    pub pseudo_free: Verdict<(), (E, Word)>,
    /// Holds with one moving word per examined element; fails with an
    /// element that fixes every word up to the bound.
    pub faithful: Verdict<Vec<(E, Word)>, E>,
}

/// Search every `g ≠ 1` of size ≤ `bound` for a strongly fixed word and a
/// moved word, each of length ≤ `bound`.
pub fn pseudo_free_faithful_probe<G: SelfSimilarGroup + ?Sized>(
    group: &G,
    bound: usize,
) -> PseudoFreeFaithful<G::Elem> {
    let elems: Vec<G::Elem> = group
        .elements(bound)
        .into_iter()
        .filter(|g| !group.is_identity(g))
        .collect();
    let words = group.alphabet().words_up_to(bound);

    let mut pseudo_free = None;
    for g in &elems {
        if let Ok(res) = msf_enumerate(group, g, bound) {
            if let Some(w) = res.words.first() {
                pseudo_free = Some(Verdict::fails((g.clone(), w.clone())));
                break;
            }
        }
    }
    let pseudo_free = pseudo_free.unwrap_or_else(|| match group.pseudo_free_proof() {
        Some(via) => Verdict::holds((), Support::exact(via).at(bound)),
        None => Verdict::holds((), Support::bounded(bound)),
    });

    let mut moved = Vec::new();
    let mut faithful = None;
    for g in &elems {
        match words.iter().find(|w| act(group, g, w) != **w) {
            Some(w) => moved.push((g.clone(), w.clone())),
            None => {
                faithful = Some(Verdict::fails(g.clone()));
                break;
            }
        }
    }
    let faithful = faithful.unwrap_or_else(|| {
        let support = match group.faithful_proof() {
            Some(via) => Support::exact(via).at(bound),
            None => Support::bounded(bound),
        };
        Verdict::holds(moved, support)
    });
    PseudoFreeFaithful { pseudo_free, faithful }
}

/// Verify the Zappa-Szép axioms ZS1–ZS8 for `X*` and `G` on the given group
/// elements and all word pairs `u, v` with `|u| + |v| ≤ depth`, together
/// with bijectivity of each letter map.
pub fn verify_zs_axioms<G: SelfSimilarGroup + ?Sized>(group: &G, elems: &[G::Elem], depth: usize) -> Result<()> {
    let alphabet = group.alphabet();
    let one = group.identity();
    let fmt_w = |w: &Word| alphabet.format_word(w);
    let fail = |axiom: &str, inputs: String| Err(Error::construction(axiom, inputs));

    for g in elems {
        let mut image: Vec<Letter> = alphabet.letters().map(|x| group.act_letter(g, x)).collect();
        image.sort_unstable();
        image.dedup();
        if image.len() != alphabet.len() {
            return fail(
                "letter bijection",
                format!("x ↦ {}·x is not a bijection on {}", group.format(g), alphabet),
            );
        }
    }

    let words = alphabet.words_up_to(depth);
    for u in &words {
        if act(group, &one, u) != *u {
            return fail("ZS1 (1·u = u)", format!("u = {}", fmt_w(u)));
        }
        if !group.is_identity(&restrict(group, &one, u)) {
            return fail("ZS7 (1|_u = 1)", format!("u = {}", fmt_w(u)));
        }
    }
    for a in elems {
        if !act(group, a, &[]).is_empty() {
            return fail("ZS3 (a·1 = 1)", group.format(a));
        }
        if restrict(group, a, &[]) != *a {
            return fail("ZS5 (a|_1 = a)", group.format(a));
        }
        for u in &words {
            for v in &words {
                if u.len() + v.len() > depth {
                    continue;
                }
                let uv = u.concat(v);
                let (au, a_u) = act_restrict(group, a, u);
                if act(group, a, &uv) != au.concat(&act(group, &a_u, v)) {
                    return fail(
                        "ZS4 (a·(uv) = (a·u)(a|_u·v))",
                        format!("a = {}, u = {}, v = {}", group.format(a), fmt_w(u), fmt_w(v)),
                    );
                }
                if restrict(group, a, &uv) != restrict(group, &a_u, v) {
                    return fail(
                        "ZS6 (a|_uv = a|_u|_v)",
                        format!("a = {}, u = {}, v = {}", group.format(a), fmt_w(u), fmt_w(v)),
                    );
                }
            }
        }
        for b in elems {
            let ab = group.mul(a, b);
            for u in &words {
                let bu = act(group, b, u);
                if act(group, &ab, u) != act(group, a, &bu) {
                    return fail(
                        "ZS2 ((ab)·u = a·(b·u))",
                        format!("a = {}, b = {}, u = {}", group.format(a), group.format(b), fmt_w(u)),
                    );
                }
                let lhs = restrict(group, &ab, u);
                let rhs = group.mul(&restrict(group, a, &bu), &restrict(group, b, u));
                if lhs != rhs {
                    return fail(
                        "ZS8 (ab|_u = a|_{b·u} b|_u)",
                        format!("a = {}, b = {}, u = {}", group.format(a), group.format(b), fmt_w(u)),
                    );
                }
            }
        }
    }
    Ok(())
}

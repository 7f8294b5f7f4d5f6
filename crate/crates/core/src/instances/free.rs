//! Free monoids `X*` under concatenation.

use crate::error::{Error, Result};
use crate::semigroup::{RightLcmOutcome, RightLcmSemigroup};
use crate::word::{Alphabet, Word};

use super::groups::TrivialGroup;
use super::TreeSemigroup;

#[derive(Clone, Debug)]
pub struct FreeMonoid {
    group: TrivialGroup,
    alphabet: Alphabet,
}

impl FreeMonoid {
    pub fn new(alphabet: Alphabet) -> Self {
        FreeMonoid {
            group: TrivialGroup::new(alphabet.clone()),
            alphabet,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// A letter other than the first letter of `p`; its ideal misses `pP`.
    fn sibling(&self, p: &Word) -> Option<Word> {
        let first = *p.first()?;
        self.alphabet.letters().find(|&x| x != first).map(Word::letter)
    }
}

impl RightLcmSemigroup for FreeMonoid {
    type Elem = Word;

    fn describe(&self) -> String {
        format!("free monoid on {}", self.alphabet)
    }
    fn identity(&self) -> Word {
        Word::empty()
    }
    fn generators(&self) -> Vec<Word> {
        self.alphabet.letters().map(Word::letter).collect()
    }
    fn contains(&self, p: &Word) -> bool {
        self.alphabet.contains(p)
    }
    fn mul(&self, p: &Word, q: &Word) -> Word {
        p.concat(q)
    }
    fn right_lcm(&self, p: &Word, q: &Word) -> RightLcmOutcome<Word> {
        if p.is_prefix_of(q) {
            RightLcmOutcome::Meet {
                r: q.clone(),
                p_comp: q.suffix_from(p.len()),
                q_comp: Word::empty(),
            }
        } else if q.is_prefix_of(p) {
            RightLcmOutcome::Meet {
                r: p.clone(),
                p_comp: Word::empty(),
                q_comp: p.suffix_from(q.len()),
            }
        } else {
            RightLcmOutcome::Disjoint
        }
    }
    fn left_quotient(&self, p: &Word, r: &Word) -> Option<Word> {
        r.strip_prefix(p)
    }
    fn unit_between(&self, p: &Word, q: &Word) -> Option<Word> {
        (p == q).then(Word::empty)
    }
    fn is_unit(&self, p: &Word) -> bool {
        p.is_empty()
    }
    fn size(&self, p: &Word) -> usize {
        p.len()
    }
    fn enumerate(&self, max_size: usize) -> Vec<Word> {
        self.alphabet.words_up_to(max_size)
    }
    fn units(&self, _max_size: usize) -> Vec<Word> {
        vec![Word::empty()]
    }
    fn format(&self, p: &Word) -> String {
        self.alphabet.format_word(p)
    }
    fn parse(&self, s: &str) -> Result<Word> {
        self.alphabet.parse_word(s)
    }

    fn core_shortcut(&self, p: &Word) -> Option<Result<(), Word>> {
        Some(match self.sibling(p) {
            Some(q) => Err(q),
            None => Ok(()),
        })
    }

    fn foundation_shortcut(&self, f: &[Word]) -> Option<Result<(), Word>> {
        // Every word meets some member iff every word of the maximal member
        // length has a member as a prefix.
        let depth = f.iter().map(|w| w.len()).max().unwrap_or(0);
        let miss = self
            .alphabet
            .words_of_len(depth)
            .into_iter()
            .find(|w| !f.iter().any(|m| m.is_prefix_of(w)));
        Some(miss.map_or(Ok(()), Err))
    }

    fn right_cancellative_proof(&self) -> Option<String> {
        Some("right cancellativity".into())
    }

    fn lcm_total(&self) -> bool {
        self.alphabet.len() == 1
    }
}

impl TreeSemigroup for FreeMonoid {
    type Group = TrivialGroup;

    fn group(&self) -> &TrivialGroup {
        &self.group
    }
    fn split(&self, p: &Word) -> (Word, ()) {
        (p.clone(), ())
    }
    fn join(&self, word: Word, _: ()) -> Word {
        word
    }
}

/// Parse `free:X01` or `free:ab`: the symbols after `free:`, with an
/// optional leading `X`.
pub fn parse_free_name(name: &str) -> Option<Result<FreeMonoid>> {
    let rest = name.strip_prefix("free:")?;
    let symbols = match rest.strip_prefix('X') {
        Some(s) if !s.is_empty() => s,
        _ => rest,
    };
    Some(
        Alphabet::new(symbols.chars())
            .map(FreeMonoid::new)
            .map_err(|e| Error::usage(format!("bad free monoid {name:?}: {e}"))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{core_contains, is_foundation_set};

    fn x01() -> FreeMonoid {
        FreeMonoid::new(Alphabet::binary())
    }

    fn w(s: &str) -> Word {
        Alphabet::binary().parse_word(s).unwrap()
    }

    #[test]
    fn lcm_by_prefixes() {
        let m = x01();
        assert_eq!(
            m.right_lcm(&w("0"), &w("01")),
            RightLcmOutcome::Meet {
                r: w("01"),
                p_comp: w("1"),
                q_comp: w("")
            }
        );
        assert!(m.right_lcm(&w("0"), &w("1")).is_disjoint());
        assert_eq!(m.mul(&w("01"), &w("10")), w("0110"));
    }

    #[test]
    fn core_is_trivial() {
        let m = x01();
        assert!(core_contains(&m, &w(""), 3).is_exact());
        assert_eq!(core_contains(&m, &w("0"), 3).counterexample(), Some(&w("1")));
    }

    #[test]
    fn foundation_sets() {
        let m = x01();
        let fs = |v: &[&str]| v.iter().map(|s| w(s)).collect::<Vec<_>>();
        assert!(is_foundation_set(&m, &fs(&["0", "1"]), 4).unwrap().is_exact());
        assert_eq!(
            is_foundation_set(&m, &fs(&["0"]), 4).unwrap().counterexample(),
            Some(&w("1"))
        );
        assert!(is_foundation_set(&m, &fs(&["0", "10", "11"]), 4).unwrap().is_holds());
        assert!(is_foundation_set(&m, &[], 4).is_err());
    }

    #[test]
    fn names() {
        let m = parse_free_name("free:X01").unwrap().unwrap();
        assert_eq!(m.alphabet().len(), 2);
        let m = parse_free_name("free:ab").unwrap().unwrap();
        assert_eq!(m.format(&m.parse("ab").unwrap()), "ab");
        assert!(parse_free_name("odometer").is_none());
    }

    #[test]
    fn unary_ideals_are_a_chain() {
        let m = FreeMonoid::new(Alphabet::new(['a']).unwrap());
        let elems = m.enumerate(4);
        for p in &elems {
            for q in &elems {
                assert!(!m.right_lcm(p, q).is_disjoint());
            }
        }
    }
}

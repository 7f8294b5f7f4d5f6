//! The boundary of a tree-like instance: infinite words over the alphabet,
//! represented exactly when eventually periodic, with cylinders, basic open
//! sets, the partial action `θ` of the hull and fixed-point sets.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull::{idempotent, j_set, one, pair, Hull};
use crate::instances::self_similar::{act_restrict, SelfSimilarGroup};
use crate::instances::TreeSemigroup;
use crate::semigroup::{same_ideal, RightLcmOutcome, RightLcmSemigroup};
use crate::verdict::{Support, Verdict};
use crate::word::{Alphabet, Word};

/// Period blocks followed when looking for a cycle in the restriction
/// sequence before an image is reported as truncated.
const MAX_PERIOD_BLOCKS: usize = 4096;

/// The infinite word `u w w w ⋯`, in canonical form: `w` primitive and `u`
/// as short as possible. Equal words have equal canonical forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoundaryPoint {
    prefix: Word,
    period: Word,
}

impl BoundaryPoint {
    pub fn new(prefix: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::usage("the period of a boundary point must be nonempty"));
        }
        let n = period.len();
        let root = (1..=n)
            .find(|&d| n.is_multiple_of(d) && period.prefix(d).repeat(n / d) == period)
            .unwrap_or(n);
        let mut prefix = prefix.into_vec();
        let mut period = period.prefix(root).into_vec();
        while prefix.last().is_some() && prefix.last() == period.last() {
            prefix.pop();
            period.rotate_right(1);
        }
        Ok(BoundaryPoint {
            prefix: prefix.into(),
            period: period.into(),
        })
    }

    /// `w^∞`.
    pub fn periodic(period: Word) -> Result<Self> {
        Self::new(Word::empty(), period)
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn letter(&self, i: usize) -> u8 {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// The first `n` letters.
    pub fn take(&self, n: usize) -> Word {
        (0..n).map(|i| self.letter(i)).collect()
    }

    pub fn has_prefix(&self, w: &Word) -> bool {
        w.iter().enumerate().all(|(i, &x)| self.letter(i) == x)
    }

    /// The point with its first `n` letters removed.
    pub fn shift(&self, n: usize) -> BoundaryPoint {
        if n <= self.prefix.len() {
            return Self::new(self.prefix.suffix_from(n), self.period.clone()).expect("nonempty period");
        }
        let k = (n - self.prefix.len()) % self.period.len();
        let mut period = self.period.clone().into_vec();
        period.rotate_left(k);
        BoundaryPoint {
            prefix: Word::empty(),
            period: period.into(),
        }
    }

    /// `w·x`.
    pub fn prepend(&self, w: &Word) -> BoundaryPoint {
        Self::new(w.concat(&self.prefix), self.period.clone()).expect("nonempty period")
    }

    /// Parse `u(w)`, e.g. `0(1)` for `01111⋯` or `(01)` for `0101⋯`.
    pub fn parse(alphabet: &Alphabet, s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| Error::parse(1, 1, "expected u(w)"))?;
        let inner = s[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::parse(1, s.chars().count(), "expected ')' at the end"))?;
        let prefix = alphabet.parse_word(&s[..open])?;
        let period = alphabet.parse_word(inner)?;
        Self::new(prefix, period)
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        let u: String = self.prefix.iter().map(|&x| alphabet.symbol(x)).collect();
        let w: String = self.period.iter().map(|&x| alphabet.symbol(x)).collect();
        format!("{u}({w})")
    }
}

/// The cylinder of all boundary points starting with `stem`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cylinder {
    pub stem: Word,
}

impl Cylinder {
    pub fn new(stem: Word) -> Self {
        Cylinder { stem }
    }

    pub fn contains(&self, x: &BoundaryPoint) -> bool {
        x.has_prefix(&self.stem)
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        format!("{}…", alphabet.format_word(&self.stem))
    }
}

/// `x ∈ U(X, Y)`: inside every cylinder of `xs` and outside every cylinder
/// of `ys`.
pub fn in_basic_set(x: &BoundaryPoint, xs: &[Cylinder], ys: &[Cylinder]) -> bool {
    xs.iter().all(|c| c.contains(x)) && !ys.iter().any(|c| c.contains(x))
}

/// Image of a boundary point under a partial map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Image {
    /// The point is outside the domain.
    Undefined,
    Exact(BoundaryPoint),
    /// Only this prefix of the image was computed: no cycle in the
    /// restriction sequence could be certified.
    Truncated(Word),
}

impl Image {
    pub fn is_defined(&self) -> bool {
        !matches!(self, Image::Undefined)
    }

    pub fn exact(&self) -> Option<&BoundaryPoint> {
        match self {
            Image::Exact(p) => Some(p),
            _ => None,
        }
    }

    /// The first `n` letters, or as many as are known.
    pub fn take(&self, n: usize) -> Option<Word> {
        match self {
            Image::Undefined => None,
            Image::Exact(p) => Some(p.take(n)),
            Image::Truncated(w) => Some(w.prefix(n)),
        }
    }

    /// Whether the image is `x`, as far as it is known.
    pub fn equals_point(&self, x: &BoundaryPoint) -> bool {
        match self {
            Image::Undefined => false,
            Image::Exact(p) => p == x,
            Image::Truncated(w) => x.has_prefix(w),
        }
    }

    /// Whether two images agree on their first `n` letters (or on
    /// everything, when both are exact).
    pub fn agrees(&self, other: &Image, n: usize) -> bool {
        match (self, other) {
            (Image::Undefined, Image::Undefined) => true,
            (Image::Exact(a), Image::Exact(b)) => a == b,
            (a, b) => match (a.take(n), b.take(n)) {
                (Some(u), Some(v)) => {
                    let m = u.len().min(v.len());
                    u.prefix(m) == v.prefix(m)
                }
                _ => false,
            },
        }
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        match self {
            Image::Undefined => "undefined".into(),
            Image::Exact(p) => p.format(alphabet),
            Image::Truncated(w) => format!("{}… (truncated)", alphabet.format_word(w)),
        }
    }
}

/// `g·x` for an eventually periodic `x`, following the restrictions of `g`
/// along the period until they cycle.
pub fn act_on_point<G: SelfSimilarGroup + ?Sized>(
    group: &G,
    g: &G::Elem,
    x: &BoundaryPoint,
    display_depth: usize,
) -> Image {
    let (head, mut state) = act_restrict(group, g, x.prefix());
    let exact = group.equality_exact();
    let mut states: Vec<G::Elem> = Vec::new();
    let mut blocks: Vec<Word> = Vec::new();
    loop {
        if exact {
            if let Some(i) = states.iter().position(|s| *s == state) {
                let mut prefix = head.clone();
                for b in &blocks[..i] {
                    prefix.extend_from(b);
                }
                let period: Word = blocks[i..].iter().flat_map(|b| b.iter().copied()).collect();
                return Image::Exact(BoundaryPoint::new(prefix, period).expect("nonempty period"));
            }
        }
        let produced = head.len() + blocks.len() * x.period().len();
        if blocks.len() >= MAX_PERIOD_BLOCKS || (!exact && produced >= display_depth) {
            let mut w = head;
            for b in &blocks {
                w.extend_from(b);
            }
            return Image::Truncated(w.prefix(display_depth));
        }
        let (img, next) = act_restrict(group, &state, x.period());
        states.push(std::mem::replace(&mut state, next));
        blocks.push(img);
    }
}

/// `θ_s(x)` for `s = [(α, g), (β, h)]`: defined when `x = βv`, with image
/// `α((gh⁻¹)·v)`.
pub fn theta_apply<T: TreeSemigroup + ?Sized>(
    inst: &T,
    s: &Hull<T::Elem>,
    x: &BoundaryPoint,
    display_depth: usize,
) -> Image {
    let Some((p, q)) = s.parts() else {
        return Image::Undefined;
    };
    let group = inst.group();
    let (alpha, g) = inst.split(p);
    let (beta, h) = inst.split(q);
    if !x.has_prefix(&beta) {
        return Image::Undefined;
    }
    let k = group.mul(&g, &group.inverse(&h));
    match act_on_point(group, &k, &x.shift(beta.len()), display_depth) {
        Image::Exact(v) => Image::Exact(v.prepend(&alpha)),
        Image::Truncated(w) => Image::Truncated(alpha.concat(&w).prefix(display_depth.max(alpha.len()))),
        Image::Undefined => Image::Undefined,
    }
}

/// Whether every pair of principal right ideals up to `bound` is nested or
/// disjoint; fails with a pair whose intersection is a third ideal.
pub fn tree_probe<P: RightLcmSemigroup + ?Sized>(inst: &P, bound: usize) -> Verdict<(), (P::Elem, P::Elem)> {
    let elems = inst.enumerate(bound);
    for p in &elems {
        for q in &elems {
            if let RightLcmOutcome::Meet { r, .. } = inst.right_lcm(p, q) {
                if !same_ideal(inst, &r, p) && !same_ideal(inst, &r, q) {
                    return Verdict::fails((p.clone(), q.clone()));
                }
            }
        }
    }
    Verdict::holds((), Support::bounded(bound))
}

/// Fixed and trivially fixed regions of `θ_s`, as antichains of stems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSets {
    pub fixed: Vec<Cylinder>,
    pub trivially_fixed: Vec<Cylinder>,
}

fn display_depth_for(depth: usize) -> usize {
    4 * depth + 16
}

/// Sample points `γ w^∞` for periods `w` of length 1 and 2.
fn samples(alphabet: &Alphabet, stem: &Word) -> Vec<BoundaryPoint> {
    alphabet
        .words_of_len(1)
        .into_iter()
        .chain(alphabet.words_of_len(2))
        .map(|w| BoundaryPoint::new(stem.clone(), w).expect("nonempty period"))
        .collect()
}

/// Stems of length `depth` whose cylinder lies in the domain of `θ_s` and
/// all of whose sample points are fixed.
pub fn fixed_stems<T: TreeSemigroup + ?Sized>(inst: &T, s: &Hull<T::Elem>, depth: usize) -> Vec<Word> {
    let Some((_, q)) = s.parts() else {
        return Vec::new();
    };
    let (beta, _) = inst.split(q);
    let alphabet = inst.group().alphabet();
    let display = display_depth_for(depth);
    alphabet
        .words_of_len(depth)
        .into_iter()
        .filter(|stem| beta.is_prefix_of(stem))
        .filter(|stem| {
            samples(alphabet, stem)
                .iter()
                .all(|x| theta_apply(inst, s, x, display).equals_point(x))
        })
        .collect()
}

/// Minimal stems of the ideals in `J_s` up to `depth`: the cylinders on
/// which `s` agrees with an idempotent below it.
pub fn trivially_fixed_stems<T: TreeSemigroup + ?Sized>(
    inst: &T,
    s: &Hull<T::Elem>,
    depth: usize,
) -> Result<Vec<Word>> {
    let words: BTreeSet<Word> = j_set(inst, s, depth)?
        .iter()
        .map(|r| inst.split(r).0)
        .filter(|w| w.len() <= depth)
        .collect();
    Ok(words
        .iter()
        .filter(|w| !words.iter().any(|v| v != *w && v.is_prefix_of(w)))
        .cloned()
        .collect())
}

/// Replace complete sibling sets by their parent until none remain.
pub fn merge_siblings(alphabet: &Alphabet, stems: &[Word]) -> Vec<Word> {
    let mut set: BTreeSet<Word> = stems.iter().cloned().collect();
    loop {
        let parent = set.iter().find_map(|w| {
            let parent = w.prefix(w.len().checked_sub(1)?);
            alphabet
                .letters()
                .all(|x| set.contains(&parent.pushed(x)))
                .then_some(parent)
        });
        let Some(parent) = parent else { break };
        for x in alphabet.letters() {
            set.remove(&parent.pushed(x));
        }
        set.insert(parent);
    }
    set.into_iter().collect()
}

/// Whether the cylinder of `stem` is a union of cylinders from `cover`,
/// resolving down to length `depth`.
pub fn covered(alphabet: &Alphabet, stem: &Word, cover: &[Word], depth: usize) -> bool {
    if cover.iter().any(|c| c.is_prefix_of(stem)) {
        return true;
    }
    if stem.len() >= depth {
        return false;
    }
    alphabet
        .letters()
        .all(|x| covered(alphabet, &stem.pushed(x), cover, depth))
}

/// `F_s` approximated by fully fixed cylinders of length `depth`, and
/// `TF_s` from the idempotents below `s`. Checks `TF_s ⊆ F_s`.
pub fn fixed_sets<T: TreeSemigroup + ?Sized>(inst: &T, s: &Hull<T::Elem>, depth: usize) -> Result<FixedSets> {
    if s.is_zero() {
        return Err(Error::usage("fixed sets need a nonzero element"));
    }
    let alphabet = inst.group().alphabet();
    let raw = fixed_stems(inst, s, depth);
    let trivial = trivially_fixed_stems(inst, s, depth)?;
    if let Some(t) = trivial.iter().find(|t| !covered(alphabet, t, &raw, depth)) {
        return Err(Error::Invariant(format!(
            "trivially fixed cylinder {} is not fixed",
            alphabet.format_word(t)
        )));
    }
    let cyl = |ws: Vec<Word>| ws.into_iter().map(Cylinder::new).collect();
    Ok(FixedSets {
        fixed: cyl(merge_siblings(alphabet, &raw)),
        trivially_fixed: cyl(trivial),
    })
}

/// An `s = [r, 1]` moving `x` into `U(X, Y)`, with `r` extending the
/// smallest cylinder of `X` far enough to avoid every cylinder of `Y`.
pub fn minimality_probe<T: TreeSemigroup + ?Sized>(
    inst: &T,
    x: &BoundaryPoint,
    xs: &[Cylinder],
    ys: &[Cylinder],
) -> Result<Hull<T::Elem>> {
    if in_basic_set(x, xs, ys) {
        return Ok(one(inst));
    }
    let empty = || Error::usage("U(X, Y) is empty");
    let delta = xs
        .iter()
        .map(|c| &c.stem)
        .max_by_key(|w| w.len())
        .cloned()
        .unwrap_or_default();
    if !xs.iter().all(|c| c.stem.is_prefix_of(&delta)) {
        return Err(empty());
    }
    let alphabet = inst.group().alphabet();
    let len = ys.iter().map(|c| c.stem.len()).chain([delta.len()]).max().unwrap_or(0);
    let stem = alphabet
        .words_of_len(len - delta.len())
        .into_iter()
        .map(|ext| delta.concat(&ext))
        .find(|w| !ys.iter().any(|c| c.stem.is_prefix_of(w)))
        .ok_or_else(empty)?;
    let r = inst.join(stem, inst.group().identity());
    let s = pair(inst, &r, &inst.identity());
    let image = theta_apply(inst, &s, x, display_depth_for(len));
    let lands = match &image {
        Image::Exact(p) => in_basic_set(p, xs, ys),
        Image::Truncated(w) => {
            xs.iter().all(|c| c.stem.is_prefix_of(w)) && !ys.iter().any(|c| c.stem.is_prefix_of(w))
        }
        Image::Undefined => false,
    };
    if !lands {
        return Err(Error::Invariant("minimality recipe missed U(X, Y)".into()));
    }
    Ok(s)
}

/// Whether the boundary has two disjoint cylinders, certified by a pair of
/// letters.
pub fn two_disjoint_cylinders<T: TreeSemigroup + ?Sized>(inst: &T) -> Option<(Cylinder, Cylinder)> {
    let alphabet = inst.group().alphabet();
    (alphabet.len() >= 2).then(|| (Cylinder::new(Word::letter(0)), Cylinder::new(Word::letter(1))))
}

/// The idempotent of a cylinder.
pub fn cylinder_idempotent<T: TreeSemigroup + ?Sized>(inst: &T, c: &Cylinder) -> Hull<T::Elem> {
    idempotent(inst, &inst.join(c.stem.clone(), inst.group().identity()))
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |w: &Word| w.iter().map(|x| x.to_string()).collect::<String>();
        write!(f, "{}({})", show(&self.prefix), show(&self.period))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::parse_hull;
    use crate::instances::builtins::{modified_odometer, odometer};
    use crate::instances::free::FreeMonoid;

    fn pt(a: &Alphabet, s: &str) -> BoundaryPoint {
        BoundaryPoint::parse(a, s).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let a = Alphabet::binary();
        assert_eq!(pt(&a, "0(10)"), pt(&a, "(01)"));
        assert_eq!(pt(&a, "(0000)"), pt(&a, "(0)"));
        assert_eq!(pt(&a, "1(0)").format(&a), "1(0)");
        assert_eq!(pt(&a, "01(01)").format(&a), "(01)");
        assert_ne!(pt(&a, "1(0)"), pt(&a, "(0)"));
        assert_eq!(pt(&a, "10(01)").shift(1), pt(&a, "0(01)"));
        assert_eq!(pt(&a, "10(01)").shift(3), pt(&a, "(10)"));
    }

    #[test]
    fn basic_sets() {
        let a = Alphabet::binary();
        let c = |s: &str| Cylinder::new(a.parse_word(s).unwrap());
        assert!(in_basic_set(&pt(&a, "(0)"), &[c("0"), c("00")], &[c("1")]));
        assert!(!in_basic_set(&pt(&a, "(0)"), &[c("01")], &[]));
        assert!(in_basic_set(&pt(&a, "(01)"), &[c("0101")], &[c("00")]));
    }

    #[test]
    fn odometer_theta() {
        let o = odometer();
        let a = o.alphabet().clone();
        let s = parse_hull(&o, "(ε, z, ε)").unwrap();
        assert_eq!(theta_apply(&o, &s, &pt(&a, "(1)"), 32), Image::Exact(pt(&a, "(0)")));
        assert_eq!(theta_apply(&o, &s, &pt(&a, "(0)"), 32), Image::Exact(pt(&a, "1(0)")));
        let m = FreeMonoid::new(Alphabet::binary());
        let s = parse_hull(&m, "[1, ε]").unwrap();
        assert_eq!(theta_apply(&m, &s, &pt(&a, "(0)"), 32), Image::Exact(pt(&a, "1(0)")));
    }

    #[test]
    fn tree_shapes() {
        assert!(tree_probe(&odometer(), 2).is_holds());
        let n = crate::instances::nat::FreeAbelian::new(2).unwrap();
        let (p, q) = tree_probe(&n, 2).counterexample().cloned().unwrap();
        assert_eq!((n.format(&p), n.format(&q)), ("(1, 0)".into(), "(0, 1)".into()));
    }

    #[test]
    fn fixed_regions() {
        let o = odometer();
        let s = parse_hull(&o, "(ε, z, ε)").unwrap();
        let f = fixed_sets(&o, &s, 6).unwrap();
        assert!(f.fixed.is_empty() && f.trivially_fixed.is_empty());
        let mo = modified_odometer();
        let s = parse_hull(&mo, "(ε, z, ε)").unwrap();
        let f = fixed_sets(&mo, &s, 2).unwrap();
        let b = Cylinder::new(Word::letter(2));
        assert_eq!(f.fixed, vec![b.clone()]);
        assert_eq!(f.trivially_fixed, vec![b]);
        let m = FreeMonoid::new(Alphabet::binary());
        let e = parse_hull(&m, "[0, 0]").unwrap();
        let f = fixed_sets(&m, &e, 3).unwrap();
        assert_eq!(f.fixed, f.trivially_fixed);
    }

    #[test]
    fn minimality_recipe() {
        let m = FreeMonoid::new(Alphabet::binary());
        let a = Alphabet::binary();
        let c = |s: &str| Cylinder::new(a.parse_word(s).unwrap());
        let s = minimality_probe(&m, &pt(&a, "(0)"), &[c("1")], &[]).unwrap();
        assert_eq!(s, parse_hull(&m, "[1, ε]").unwrap());
        let s = minimality_probe(&m, &pt(&a, "(1)"), &[c("00")], &[c("01")]).unwrap();
        assert_eq!(s, parse_hull(&m, "[00, ε]").unwrap());
        assert_eq!(minimality_probe(&m, &pt(&a, "(0)"), &[c("0")], &[]).unwrap(), one(&m));
        assert!(minimality_probe(&m, &pt(&a, "(0)"), &[c("0")], &[c("0")]).is_err());
    }
}

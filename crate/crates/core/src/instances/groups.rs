//! Group oracles for self-similar actions: the trivial group, ℤ given by a
//! single generator, finite groups given by a multiplication table, and
//! finitely generated groups compared by their action to a fixed depth.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

use super::self_similar::{OracleKind, SelfSimilarGroup};

/// Parse a group word such as `a b^-1 a^2`, `zz`, `z⁻¹` or `e` into
/// `(name index, exponent)` factors, matching names greedily.
pub(crate) fn parse_group_word(s: &str, names: &[String]) -> Result<Vec<(usize, i64)>> {
    let mut by_len: Vec<(usize, &String)> = names.iter().enumerate().collect();
    by_len.sort_by_key(|(_, n)| std::cmp::Reverse(n.chars().count()));
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '·' || c == '*' {
            i += 1;
            continue;
        }
        let rest: String = chars[i..].iter().collect();
        let matched = by_len.iter().find(|(_, n)| rest.starts_with(n.as_str()));
        let (index, len) = match matched {
            Some((k, n)) => (Some(*k), n.chars().count()),
            None if c == 'e' || c == '1' => (None, 1),
            None => return Err(Error::parse(1, i + 1, format!("unknown group generator at {rest:?}"))),
        };
        i += len;
        let mut exp = 1i64;
        if chars.get(i) == Some(&'^') {
            let start = i + 1;
            let mut end = start;
            if chars.get(end) == Some(&'-') {
                end += 1;
            }
            while chars.get(end).is_some_and(|d| d.is_ascii_digit()) {
                end += 1;
            }
            let digits: String = chars[start..end].iter().collect();
            exp = digits
                .parse()
                .map_err(|_| Error::parse(1, i + 1, "expected an integer exponent after '^'"))?;
            i = end;
        } else if chars[i..].starts_with(&['⁻', '¹']) {
            exp = -1;
            i += 2;
        }
        if let Some(k) = index {
            out.push((k, exp));
        }
    }
    Ok(out)
}

/// The trivial group acting trivially; the self-similar structure of a
/// free monoid.
#[derive(Clone, Debug)]
pub struct TrivialGroup {
    alphabet: Alphabet,
}

impl TrivialGroup {
    pub fn new(alphabet: Alphabet) -> Self {
        TrivialGroup { alphabet }
    }
}

impl SelfSimilarGroup for TrivialGroup {
    type Elem = ();

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn oracle(&self) -> OracleKind {
        OracleKind::Trivial
    }
    fn identity(&self) {}
    fn generators(&self) -> Vec<()> {
        Vec::new()
    }
    fn mul(&self, _: &(), _: &()) {}
    fn inverse(&self, _: &()) {}
    fn act_letter(&self, _: &(), x: Letter) -> Letter {
        x
    }
    fn restrict_letter(&self, _: &(), _: Letter) {}
    fn size(&self, _: &()) -> usize {
        0
    }
    fn elements(&self, _: usize) -> Vec<()> {
        vec![()]
    }
    fn format(&self, _: &()) -> String {
        "e".into()
    }
    fn parse(&self, s: &str) -> Result<()> {
        match s.trim() {
            "" | "e" | "1" => Ok(()),
            other => Err(Error::parse(1, 1, format!("the trivial group has no element {other:?}"))),
        }
    }
    fn msf_finiteness_proof(&self) -> Option<String> {
        Some("trivial group".into())
    }
    fn pseudo_free_proof(&self) -> Option<String> {
        Some("trivial group".into())
    }
    fn faithful_proof(&self) -> Option<String> {
        Some("trivial group".into())
    }
}

/// `z^m`. Ordered by `|m|`, with `z^m` before `z^-m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Power(pub i64);

impl Ord for Power {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.unsigned_abs(), self.0 < 0).cmp(&(other.0.unsigned_abs(), other.0 < 0))
    }
}

impl PartialOrd for Power {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Two letters swapped with restrictions `1` and `z` (binary carry), every
/// other letter fixed with trivial restriction.
#[derive(Clone, Debug)]
struct OdometerShape {
    digits: [Letter; 2],
    bricks: Vec<Letter>,
}

/// ℤ = ⟨z⟩ acting through the rules for its generator; restrictions of
/// powers follow from the cocycle law along the cycles of `z`.
#[derive(Clone, Debug)]
pub struct IntegerPowerGroup {
    alphabet: Alphabet,
    name: String,
    rexp: Vec<i64>,
    place: Vec<(usize, usize)>,
    cycles: Vec<Vec<Letter>>,
    cycle_sums: Vec<i128>,
    odometer: Option<OdometerShape>,
}

impl IntegerPowerGroup {
    /// `rules[x] = (z·x, e)` where `z|_x = z^e`.
    pub fn new(alphabet: Alphabet, name: impl Into<String>, rules: &[(Letter, i64)]) -> Result<Self> {
        let name = name.into();
        if rules.len() != alphabet.len() {
            return Err(Error::construction(
                "complete rules",
                format!("{name} needs one rule per letter of {alphabet}"),
            ));
        }
        let perm: Vec<Letter> = rules.iter().map(|r| r.0).collect();
        let mut seen = vec![false; perm.len()];
        for &y in &perm {
            if usize::from(y) >= perm.len() || std::mem::replace(&mut seen[usize::from(y)], true) {
                return Err(Error::construction(
                    "letter bijection",
                    format!("x ↦ {name}·x is not a bijection on {alphabet}"),
                ));
            }
        }
        let rexp: Vec<i64> = rules.iter().map(|r| r.1).collect();
        let mut place = vec![(usize::MAX, 0); perm.len()];
        let mut cycles = Vec::new();
        for start in 0..perm.len() {
            if place[start].0 != usize::MAX {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start as Letter;
            loop {
                place[usize::from(x)] = (cycles.len(), cycle.len());
                cycle.push(x);
                x = perm[usize::from(x)];
                if usize::from(x) == start {
                    break;
                }
            }
            cycles.push(cycle);
        }
        let cycle_sums = cycles
            .iter()
            .map(|c| c.iter().map(|&x| i128::from(rexp[usize::from(x)])).sum())
            .collect();
        let odometer = detect_odometer(&perm, &rexp);
        Ok(IntegerPowerGroup {
            alphabet,
            name,
            rexp,
            place,
            cycles,
            cycle_sums,
            odometer,
        })
    }

    pub fn generator_name(&self) -> &str {
        &self.name
    }

    /// Whether the rules are those of the binary odometer, possibly with
    /// extra letters fixed with trivial restriction.
    pub fn is_odometer_family(&self) -> bool {
        self.odometer.is_some()
    }

    fn partial_sum(&self, cycle: usize, pos: usize, steps: i128, backwards: bool) -> i128 {
        let c = &self.cycles[cycle];
        let len = c.len() as i128;
        let q = steps / len;
        let r = (steps % len) as usize;
        let mut total = q * self.cycle_sums[cycle];
        for i in 0..r {
            let idx = if backwards {
                (pos + c.len() - 1 - i) % c.len()
            } else {
                (pos + i) % c.len()
            };
            total += i128::from(self.rexp[usize::from(c[idx])]);
        }
        total
    }
}

fn detect_odometer(perm: &[Letter], rexp: &[i64]) -> Option<OdometerShape> {
    let mut digits = Vec::new();
    let mut bricks = Vec::new();
    for (x, (&y, &e)) in perm.iter().zip(rexp).enumerate() {
        let x = x as Letter;
        if y == x {
            if e != 0 {
                return None;
            }
            bricks.push(x);
        } else {
            digits.push(x);
        }
    }
    let [a, b] = digits[..] else { return None };
    let ok = perm[usize::from(a)] == b && perm[usize::from(b)] == a;
    let (low, high) = match (rexp[usize::from(a)], rexp[usize::from(b)]) {
        (0, 1) => (a, b),
        (1, 0) => (b, a),
        _ => return None,
    };
    ok.then_some(OdometerShape {
        digits: [low, high],
        bricks,
    })
}

impl SelfSimilarGroup for IntegerPowerGroup {
    type Elem = Power;

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn oracle(&self) -> OracleKind {
        OracleKind::IntegerPower
    }
    fn identity(&self) -> Power {
        Power(0)
    }
    fn generators(&self) -> Vec<Power> {
        vec![Power(1)]
    }
    fn mul(&self, g: &Power, h: &Power) -> Power {
        Power(g.0.checked_add(h.0).expect("exponent overflows i64"))
    }
    fn inverse(&self, g: &Power) -> Power {
        Power(-g.0)
    }
    fn act_letter(&self, g: &Power, x: Letter) -> Letter {
        let (c, pos) = self.place[usize::from(x)];
        let cycle = &self.cycles[c];
        let shift = g.0.rem_euclid(cycle.len() as i64) as usize;
        cycle[(pos + shift) % cycle.len()]
    }
    fn restrict_letter(&self, g: &Power, x: Letter) -> Power {
        let (c, pos) = self.place[usize::from(x)];
        let m = i128::from(g.0);
        let e = if m >= 0 {
            self.partial_sum(c, pos, m, false)
        } else {
            -self.partial_sum(c, pos, -m, true)
        };
        Power(i64::try_from(e).expect("restriction exponent overflows i64"))
    }
    fn size(&self, g: &Power) -> usize {
        g.0.unsigned_abs() as usize
    }
    fn elements(&self, max_size: usize) -> Vec<Power> {
        let mut out = vec![Power(0)];
        for k in 1..=max_size as i64 {
            out.push(Power(k));
            out.push(Power(-k));
        }
        out
    }
    fn format(&self, g: &Power) -> String {
        match g.0 {
            0 => "e".into(),
            1 => self.name.clone(),
            m => format!("{}^{m}", self.name),
        }
    }
    fn parse(&self, s: &str) -> Result<Power> {
        let names = [self.name.clone()];
        let factors = parse_group_word(s, &names)?;
        Ok(Power(factors.iter().map(|f| f.1).sum()))
    }

    fn msf_closed_form(&self, g: &Power, max_len: usize) -> Option<Vec<Word>> {
        let shape = self.odometer.as_ref()?;
        if g.0 == 0 {
            return None;
        }
        // z^m fixes a digit word β iff 2^|β| divides m, and then restricts
        // to z^(m/2^|β|); a brick is strongly fixed by every power.
        let v = g.0.unsigned_abs().trailing_zeros() as usize;
        let mut out = Vec::new();
        let mut prefixes = vec![Word::empty()];
        for n in 0..=v {
            if n + 1 > max_len {
                break;
            }
            for beta in &prefixes {
                for &c in &shape.bricks {
                    out.push(beta.pushed(c));
                }
            }
            if shape.bricks.is_empty() {
                break;
            }
            prefixes = prefixes
                .iter()
                .flat_map(|b| shape.digits.iter().map(move |&d| b.pushed(d)))
                .collect();
        }
        out.sort();
        Some(out)
    }

    fn msf_finiteness_proof(&self) -> Option<String> {
        self.odometer.as_ref().map(|_| "2-power divisibility".into())
    }

    fn pseudo_free_proof(&self) -> Option<String> {
        self.odometer
            .as_ref()
            .filter(|s| s.bricks.is_empty())
            .map(|_| "binary odometer".into())
    }

    fn faithful_proof(&self) -> Option<String> {
        self.odometer.as_ref().map(|_| "binary odometer".into())
    }
}

/// A finite group given by its multiplication table. The action of each
/// element is derived from the generator rules along a breadth-first
/// spanning tree; the remaining products are checked by the axiom
/// verification when the instance is built.
#[derive(Clone, Debug)]
pub struct TableGroup {
    alphabet: Alphabet,
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    inv: Vec<usize>,
    act: Vec<Vec<Letter>>,
    restr: Vec<Vec<usize>>,
    sizes: Vec<usize>,
    generators: Vec<usize>,
}

/// Letter rules for one generator: `rules[x] = (g·x, g|_x)`.
pub type TableRules = Vec<(Letter, usize)>;

impl TableGroup {
    /// `names[0]` is the identity; `table[a][b]` is the index of `ab`.
    pub fn new(
        alphabet: Alphabet,
        names: Vec<String>,
        table: Vec<Vec<usize>>,
        rules: Vec<(usize, TableRules)>,
    ) -> Result<Self> {
        let n = names.len();
        let bad = |msg: String| Err(Error::construction("group table", msg));
        if n == 0 || table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&c| c >= n)) {
            return bad(format!("the table must be {n}×{n} over the listed elements"));
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return bad(format!("{} is not the identity", names[0]));
            }
            let mut row: Vec<usize> = table[a].clone();
            row.sort_unstable();
            row.dedup();
            if row.len() != n {
                return bad(format!("row of {} is not a permutation", names[a]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("({0}{1}){2} ≠ {0}({1}{2})", names[a], names[b], names[c]));
                    }
                }
            }
        }
        let inv: Vec<usize> = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == 0).expect("latin rows contain the identity"))
            .collect();

        for (g, r) in &rules {
            if r.len() != alphabet.len() {
                return Err(Error::construction(
                    "complete rules",
                    format!("{} needs one rule per letter of {alphabet}", names[*g]),
                ));
            }
        }
        let gens: Vec<usize> = rules.iter().map(|r| r.0).collect();
        let mut act: Vec<Option<Vec<Letter>>> = vec![None; n];
        let mut restr: Vec<Option<Vec<usize>>> = vec![None; n];
        let mut sizes = vec![usize::MAX; n];
        let mut order = vec![0];
        act[0] = Some(alphabet.letters().collect());
        restr[0] = Some(vec![0; alphabet.len()]);
        sizes[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(h) = queue.pop_front() {
            for (g, r) in &rules {
                let k = table[*g][h];
                if sizes[k] != usize::MAX {
                    continue;
                }
                let act_h = act[h].clone().expect("reached");
                let restr_h = restr[h].clone().expect("reached");
                act[k] = Some(act_h.iter().map(|&y| r[usize::from(y)].0).collect());
                restr[k] = Some(
                    alphabet
                        .letters()
                        .map(|x| {
                            let y = act_h[usize::from(x)];
                            table[r[usize::from(y)].1][restr_h[usize::from(x)]]
                        })
                        .collect(),
                );
                sizes[k] = sizes[h] + 1;
                order.push(k);
                queue.push_back(k);
            }
        }
        if let Some(k) = (0..n).find(|&k| sizes[k] == usize::MAX) {
            return Err(Error::construction(
                "generation",
                format!("{} is not a product of the generators", names[k]),
            ));
        }

        // Relabel so that index order is breadth-first order.
        let mut new_of = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            new_of[old] = new;
        }
        let names2 = order.iter().map(|&o| names[o].clone()).collect();
        let table2 = order
            .iter()
            .map(|&a| order.iter().map(|&b| new_of[table[a][b]]).collect())
            .collect();
        let inv2 = order.iter().map(|&a| new_of[inv[a]]).collect();
        let act2 = order.iter().map(|&a| act[a].clone().expect("reached")).collect();
        let restr2 = order
            .iter()
            .map(|&a| restr[a].as_ref().expect("reached").iter().map(|&r| new_of[r]).collect())
            .collect();
        let sizes2 = order.iter().map(|&a| sizes[a]).collect();
        let mut generators: Vec<usize> = gens.iter().map(|&g| new_of[g]).collect();
        generators.sort_unstable();
        Ok(TableGroup {
            alphabet,
            names: names2,
            table: table2,
            inv: inv2,
            act: act2,
            restr: restr2,
            sizes: sizes2,
            generators,
        })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }
}

impl SelfSimilarGroup for TableGroup {
    type Elem = usize;

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn oracle(&self) -> OracleKind {
        OracleKind::FiniteTable
    }
    fn identity(&self) -> usize {
        0
    }
    fn generators(&self) -> Vec<usize> {
        self.generators.clone()
    }
    fn mul(&self, g: &usize, h: &usize) -> usize {
        self.table[*g][*h]
    }
    fn inverse(&self, g: &usize) -> usize {
        self.inv[*g]
    }
    fn act_letter(&self, g: &usize, x: Letter) -> Letter {
        self.act[*g][usize::from(x)]
    }
    fn restrict_letter(&self, g: &usize, x: Letter) -> usize {
        self.restr[*g][usize::from(x)]
    }
    fn size(&self, g: &usize) -> usize {
        self.sizes[*g]
    }
    fn elements(&self, max_size: usize) -> Vec<usize> {
        (0..self.order()).filter(|&g| self.sizes[g] <= max_size).collect()
    }
    fn format(&self, g: &usize) -> String {
        self.names[*g].clone()
    }
    fn parse(&self, s: &str) -> Result<usize> {
        let mut acc = 0;
        for (k, exp) in parse_group_word(s, &self.names)? {
            let base = if exp < 0 { self.inv[k] } else { k };
            for _ in 0..exp.unsigned_abs() {
                acc = self.table[acc][base];
            }
        }
        Ok(acc)
    }
}

/// A generator or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym {
    pub generator: u8,
    pub inverse: bool,
}

impl Sym {
    fn inv(self) -> Sym {
        Sym {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// A freely reduced generator word together with the permutation it
/// induces on words of length `2·depth`. Equality, hashing and ordering
/// use only the permutation.
#[derive(Clone, Debug)]
pub struct PortraitElem {
    word: Arc<[Sym]>,
    key: Arc<[u32]>,
}

impl PortraitElem {
    pub fn word(&self) -> &[Sym] {
        &self.word
    }
}

impl PartialEq for PortraitElem {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for PortraitElem {}

impl Hash for PortraitElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl Ord for PortraitElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl PartialOrd for PortraitElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rules for one generator: `rules[x] = (g·x, g|_x as a generator word)`.
pub type PortraitRules = Vec<(Letter, Vec<Sym>)>;

/// A finitely generated self-similar group whose word problem is replaced
/// by comparing actions on words of length `2·depth`.
#[derive(Clone, Debug)]
pub struct PortraitGroup {
    alphabet: Alphabet,
    depth: usize,
    names: Vec<String>,
    perm: Vec<Vec<Letter>>,
    inv_perm: Vec<Vec<Letter>>,
    restr: Vec<Vec<Vec<Sym>>>,
    sym_keys: Vec<[Arc<[u32]>; 2]>,
    identity_key: Arc<[u32]>,
}

impl PortraitGroup {
    pub fn new(alphabet: Alphabet, depth: usize, names: Vec<String>, rules: Vec<PortraitRules>) -> Result<Self> {
        if depth == 0 {
            return Err(Error::usage("portrait depth must be at least 1"));
        }
        if names.len() != rules.len() || names.len() > usize::from(u8::MAX) {
            return Err(Error::usage("one rule block per generator is required"));
        }
        let mut perm = Vec::new();
        let mut inv_perm = Vec::new();
        let mut restr = Vec::new();
        for (name, r) in names.iter().zip(&rules) {
            if r.len() != alphabet.len() {
                return Err(Error::construction(
                    "complete rules",
                    format!("{name} needs one rule per letter of {alphabet}"),
                ));
            }
            let p: Vec<Letter> = r.iter().map(|x| x.0).collect();
            let mut ip = vec![Letter::MAX; p.len()];
            for (x, &y) in p.iter().enumerate() {
                if usize::from(y) >= p.len() || ip[usize::from(y)] != Letter::MAX {
                    return Err(Error::construction(
                        "letter bijection",
                        format!("x ↦ {name}·x is not a bijection on {alphabet}"),
                    ));
                }
                ip[usize::from(y)] = x as Letter;
            }
            perm.push(p);
            inv_perm.push(ip);
            restr.push(r.iter().map(|x| reduce(x.1.clone())).collect());
        }
        let len = 2 * depth;
        let count = alphabet
            .len()
            .checked_pow(len as u32)
            .filter(|&c| c <= 1 << 22)
            .ok_or_else(|| Error::usage("portrait depth too large for this alphabet"))?;
        let mut group = PortraitGroup {
            alphabet,
            depth,
            names,
            perm,
            inv_perm,
            restr,
            sym_keys: Vec::new(),
            identity_key: (0..count as u32).collect(),
        };
        let words = group.alphabet.words_of_len(len);
        let mut keys = Vec::new();
        for g in 0..group.names.len() {
            let mut pair = Vec::new();
            for inverse in [false, true] {
                let s = Sym {
                    generator: g as u8,
                    inverse,
                };
                let key: Arc<[u32]> = words
                    .iter()
                    .map(|w| group.word_index(&group.act_word(&[s], w)))
                    .collect();
                pair.push(key);
            }
            let [a, b]: [Arc<[u32]>; 2] = pair.try_into().expect("two keys");
            keys.push([a, b]);
        }
        group.sym_keys = keys;
        Ok(group)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    fn word_index(&self, w: &[Letter]) -> u32 {
        w.iter().fold(0u32, |acc, &x| acc * self.alphabet.len() as u32 + u32::from(x))
    }

    fn sym_act(&self, s: Sym, x: Letter) -> Letter {
        let g = usize::from(s.generator);
        if s.inverse {
            self.inv_perm[g][usize::from(x)]
        } else {
            self.perm[g][usize::from(x)]
        }
    }

    fn sym_restrict(&self, s: Sym, x: Letter) -> Vec<Sym> {
        let g = usize::from(s.generator);
        if s.inverse {
            let y = self.inv_perm[g][usize::from(x)];
            invert(&self.restr[g][usize::from(y)])
        } else {
            self.restr[g][usize::from(x)].clone()
        }
    }

    fn word_act_letter(&self, word: &[Sym], x: Letter) -> Letter {
        word.iter().rev().fold(x, |y, &s| self.sym_act(s, y))
    }

    fn word_restrict_letter(&self, word: &[Sym], x: Letter) -> Vec<Sym> {
        let mut pieces: Vec<Vec<Sym>> = Vec::with_capacity(word.len());
        let mut y = x;
        for &s in word.iter().rev() {
            pieces.push(self.sym_restrict(s, y));
            y = self.sym_act(s, y);
        }
        reduce(pieces.into_iter().rev().flatten().collect())
    }

    fn act_word(&self, word: &[Sym], alpha: &[Letter]) -> Vec<Letter> {
        let mut state = word.to_vec();
        let mut out = Vec::with_capacity(alpha.len());
        for &x in alpha {
            out.push(self.word_act_letter(&state, x));
            state = self.word_restrict_letter(&state, x);
        }
        out
    }

    fn key_of(&self, word: &[Sym]) -> Arc<[u32]> {
        let mut key: Vec<u32> = self.identity_key.to_vec();
        for s in word.iter().rev() {
            let k = &self.sym_keys[usize::from(s.generator)][usize::from(s.inverse)];
            for v in key.iter_mut() {
                *v = k[*v as usize];
            }
        }
        key.into()
    }

    fn element(&self, word: Vec<Sym>) -> PortraitElem {
        let word = reduce(word);
        let key = self.key_of(&word);
        PortraitElem {
            word: word.into(),
            key,
        }
    }

    fn format_sym(&self, s: Sym) -> String {
        let name = &self.names[usize::from(s.generator)];
        if s.inverse {
            format!("{name}^-1")
        } else {
            name.clone()
        }
    }
}

fn reduce(word: Vec<Sym>) -> Vec<Sym> {
    let mut out: Vec<Sym> = Vec::with_capacity(word.len());
    for s in word {
        if out.last() == Some(&s.inv()) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}

fn invert(word: &[Sym]) -> Vec<Sym> {
    word.iter().rev().map(|s| s.inv()).collect()
}

impl SelfSimilarGroup for PortraitGroup {
    type Elem = PortraitElem;

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn oracle(&self) -> OracleKind {
        OracleKind::BoundedPortrait { depth: self.depth }
    }
    fn identity(&self) -> PortraitElem {
        PortraitElem {
            word: Vec::new().into(),
            key: self.identity_key.clone(),
        }
    }
    fn generators(&self) -> Vec<PortraitElem> {
        (0..self.names.len())
            .map(|g| {
                self.element(vec![Sym {
                    generator: g as u8,
                    inverse: false,
                }])
            })
            .collect()
    }
    fn mul(&self, g: &PortraitElem, h: &PortraitElem) -> PortraitElem {
        let word = reduce(g.word.iter().chain(h.word.iter()).copied().collect());
        let key: Arc<[u32]> = h.key.iter().map(|&i| g.key[i as usize]).collect();
        PortraitElem {
            word: word.into(),
            key,
        }
    }
    fn inverse(&self, g: &PortraitElem) -> PortraitElem {
        let mut key = vec![0u32; g.key.len()];
        for (i, &v) in g.key.iter().enumerate() {
            key[v as usize] = i as u32;
        }
        PortraitElem {
            word: invert(&g.word).into(),
            key: key.into(),
        }
    }
    fn act_letter(&self, g: &PortraitElem, x: Letter) -> Letter {
        self.word_act_letter(&g.word, x)
    }
    fn restrict_letter(&self, g: &PortraitElem, x: Letter) -> PortraitElem {
        self.element(self.word_restrict_letter(&g.word, x))
    }
    fn size(&self, g: &PortraitElem) -> usize {
        g.word.len()
    }
    fn elements(&self, max_size: usize) -> Vec<PortraitElem> {
        let syms: Vec<Sym> = (0..self.names.len() as u8)
            .flat_map(|g| {
                [false, true].map(|inverse| Sym {
                    generator: g,
                    inverse,
                })
            })
            .collect();
        let mut seen: HashSet<Arc<[u32]>> = HashSet::new();
        let mut out = vec![self.identity()];
        seen.insert(self.identity_key.clone());
        let mut layer: Vec<Vec<Sym>> = vec![Vec::new()];
        for _ in 0..max_size {
            let mut next = Vec::new();
            for w in &layer {
                for &s in &syms {
                    if w.last() == Some(&s.inv()) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(s);
                    let e = self.element(v.clone());
                    if seen.insert(e.key.clone()) {
                        out.push(e);
                    }
                    next.push(v);
                }
            }
            layer = next;
        }
        out.sort();
        out
    }
    fn format(&self, g: &PortraitElem) -> String {
        if g.word.is_empty() {
            return "e".into();
        }
        let sep = if self.names.iter().all(|n| n.chars().count() == 1) { "" } else { " " };
        g.word.iter().map(|&s| self.format_sym(s)).collect::<Vec<_>>().join(sep)
    }
    fn parse(&self, s: &str) -> Result<PortraitElem> {
        let mut word = Vec::new();
        for (g, exp) in parse_group_word(s, &self.names)? {
            let sym = Sym {
                generator: g as u8,
                inverse: exp < 0,
            };
            word.extend(std::iter::repeat_n(sym, exp.unsigned_abs() as usize));
        }
        Ok(self.element(word))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::self_similar::{act, restrict};

    fn odometer() -> IntegerPowerGroup {
        IntegerPowerGroup::new(Alphabet::binary(), "z", &[(1, 0), (0, 1)]).unwrap()
    }

    #[test]
    fn odometer_adds_one() {
        let g = odometer();
        let a = Alphabet::binary();
        let w = |s: &str| a.parse_word(s).unwrap();
        assert_eq!(act(&g, &Power(1), &w("00")), w("10"));
        assert_eq!(act(&g, &Power(1), &w("11")), w("00"));
        assert_eq!(restrict(&g, &Power(1), &w("1")), Power(1));
        assert_eq!(restrict(&g, &Power(2), &w("0")), Power(1));
        assert_eq!(restrict(&g, &Power(-1), &w("0")), Power(-1));
        assert_eq!(restrict(&g, &Power(-1), &w("1")), Power(0));
    }

    #[test]
    fn power_order_and_format() {
        let g = odometer();
        let elems = g.elements(2);
        let shown: Vec<String> = elems.iter().map(|e| g.format(e)).collect();
        assert_eq!(shown, ["e", "z", "z^-1", "z^2", "z^-2"]);
        assert_eq!(g.parse("zz").unwrap(), Power(2));
        assert_eq!(g.parse("z^-3 z").unwrap(), Power(-2));
        assert_eq!(g.parse("z⁻¹").unwrap(), Power(-1));
        assert_eq!(g.parse("e").unwrap(), Power(0));
        assert!(g.parse("y").is_err());
    }

    #[test]
    fn rejects_non_bijective_rules() {
        let e = IntegerPowerGroup::new(Alphabet::binary(), "z", &[(0, 1), (0, 0)]).unwrap_err();
        assert!(matches!(e, Error::Construction { .. }));
    }

    #[test]
    fn table_group_derives_actions() {
        // ℤ/2 swapping the two letters.
        let g = TableGroup::new(
            Alphabet::binary(),
            vec!["e".into(), "a".into()],
            vec![vec![0, 1], vec![1, 0]],
            vec![(1, vec![(1, 0), (0, 0)])],
        )
        .unwrap();
        assert_eq!(g.act_letter(&1, 0), 1);
        assert_eq!(g.restrict_letter(&1, 0), 0);
        assert_eq!(g.parse("aa").unwrap(), 0);
        assert_eq!(g.elements(5), vec![0, 1]);
    }

    #[test]
    fn portrait_group_matches_power_group() {
        let a = Alphabet::binary();
        let z = Sym {
            generator: 0,
            inverse: false,
        };
        let p = PortraitGroup::new(a.clone(), 3, vec!["z".into()], vec![vec![(1, vec![]), (0, vec![z])]]).unwrap();
        let q = odometer();
        let z3 = p.parse("z^3").unwrap();
        for w in a.words_up_to(5) {
            assert_eq!(act(&p, &z3, &w), act(&q, &Power(3), &w));
        }
        assert_eq!(p.mul(&z3, &p.inverse(&z3)), p.identity());
        assert_eq!(p.format(&p.parse("z z^-1 z").unwrap()), "z");
        // z^64 agrees with the identity on words of length 6.
        assert_eq!(p.parse("z^64").unwrap(), p.identity());
    }
}

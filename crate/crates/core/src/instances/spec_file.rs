//! A line-oriented text format for self-similar groups.
//!
//! ```text
//! # comments start with '#'
//! name: modified-odometer
//! alphabet: 0 1 B
//! group: integer-power
//! z . 0 = 1 | e
//! z . 1 = 0 | z
//! z . B = B | e
//! ```
//!
//! `group:` is one of `integer-power`, `finite-table` or
//! `bounded-portrait(depth=N)`. A rule `g . x = y | w` states `g·x = y` and
//! `g|_x = w` for a group word `w`. Finite tables list their elements after
//! `elements:` (identity first, `e` by default) and every non-identity
//! product as `a * b = c`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter};

use super::groups::{parse_group_word, IntegerPowerGroup, PortraitGroup, PortraitRules, Sym, TableGroup, TableRules};
use super::zappa_szep::ZappaSzep;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    IntegerPower,
    FiniteTable,
    BoundedPortrait { depth: usize },
}

/// A self-similar instance read from a spec file.
#[derive(Clone, Debug)]
pub enum SpecInstance {
    Power(ZappaSzep<IntegerPowerGroup>),
    Table(ZappaSzep<TableGroup>),
    Portrait(ZappaSzep<PortraitGroup>),
}

/// A token with its 1-based line and column.
#[derive(Clone, Debug)]
struct Located<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Located<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.column, msg)
    }

    /// Re-anchor a parse error reported relative to this token.
    fn relocate(&self, e: Error) -> Error {
        match e {
            Error::Parse { column, message, .. } => Error::parse(self.line, self.column + column - 1, message),
            other => other,
        }
    }
}

struct Rule<'a> {
    generator: Located<'a>,
    letter: Letter,
    image: Letter,
    restriction: Located<'a>,
}

struct Product<'a> {
    factors: [Located<'a>; 2],
    result: Located<'a>,
}

#[derive(Default)]
struct Parsed<'a> {
    name: Option<String>,
    alphabet: Option<Alphabet>,
    kind: Option<GroupKind>,
    elements: Option<Vec<Located<'a>>>,
    rules: Vec<Rule<'a>>,
    products: Vec<Product<'a>>,
}

fn column_of(line: &str, part: &str) -> usize {
    let offset = part.as_ptr() as usize - line.as_ptr() as usize;
    line[..offset].chars().count() + 1
}

fn trimmed<'a>(line: &'a str, line_no: usize, part: &'a str) -> Located<'a> {
    let text = part.trim();
    let column = if text.is_empty() {
        column_of(line, part)
    } else {
        column_of(line, text)
    };
    Located {
        text,
        line: line_no,
        column,
    }
}

fn parse_alphabet(tok: &Located) -> Result<Alphabet> {
    let cleaned: String = tok.text.chars().map(|c| if "{},".contains(c) { ' ' } else { c }).collect();
    let parts: Vec<&str> = cleaned.split_whitespace().collect();
    let symbols: Vec<char> = match parts.as_slice() {
        [single] => single.chars().collect(),
        many => {
            if let Some(bad) = many.iter().find(|p| p.chars().count() != 1) {
                return Err(tok.error(format!("alphabet symbols must be single characters, got {bad:?}")));
            }
            many.iter().flat_map(|p| p.chars()).collect()
        }
    };
    Alphabet::new(symbols).map_err(|e| tok.error(e.to_string()))
}

fn parse_kind(tok: &Located) -> Result<GroupKind> {
    let t: String = tok.text.chars().filter(|c| !c.is_whitespace()).collect();
    match t.as_str() {
        "integer-power" => Ok(GroupKind::IntegerPower),
        "finite-table" => Ok(GroupKind::FiniteTable),
        _ => {
            let depth = t
                .strip_prefix("bounded-portrait(depth=")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| {
                    tok.error("expected integer-power, finite-table or bounded-portrait(depth=N)")
                })?;
            let depth = depth.parse().map_err(|_| tok.error("portrait depth must be a positive integer"))?;
            Ok(GroupKind::BoundedPortrait { depth })
        }
    }
}

fn parse_letter(alphabet: Option<&Alphabet>, tok: &Located) -> Result<Letter> {
    let alphabet = alphabet.ok_or_else(|| tok.error("rules must come after the alphabet line"))?;
    let mut chars = tok.text.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => alphabet
            .letter(c)
            .ok_or_else(|| tok.error(format!("{c:?} is not in the alphabet {alphabet}"))),
        _ => Err(tok.error(format!("expected a single letter, got {:?}", tok.text))),
    }
}

fn parse_lines(text: &str) -> Result<Parsed<'_>> {
    let mut parsed = Parsed::default();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if let Some((key, value)) = line.split_once(':') {
            let value_tok = trimmed(raw, line_no, value);
            match key.trim() {
                "name" => parsed.name = Some(value_tok.text.to_string()),
                "alphabet" => parsed.alphabet = Some(parse_alphabet(&value_tok)?),
                "group" => parsed.kind = Some(parse_kind(&value_tok)?),
                "elements" => {
                    parsed.elements = Some(
                        value
                            .split(|c: char| c.is_whitespace() || c == ',')
                            .filter(|s| !s.is_empty())
                            .map(|s| trimmed(raw, line_no, s))
                            .collect(),
                    )
                }
                other => {
                    return Err(trimmed(raw, line_no, key).error(format!("unknown section {other:?}")));
                }
            }
            continue;
        }
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| trimmed(raw, line_no, line).error("expected `g . x = y | w` or `a * b = c`"))?;
        if let Some((a, b)) = lhs.split_once('*') {
            parsed.products.push(Product {
                factors: [trimmed(raw, line_no, a), trimmed(raw, line_no, b)],
                result: trimmed(raw, line_no, rhs),
            });
            continue;
        }
        let (g, x) = lhs
            .split_once('.')
            .ok_or_else(|| trimmed(raw, line_no, lhs).error("expected `g . x` before '='"))?;
        let (y, w) = rhs
            .split_once('|')
            .ok_or_else(|| trimmed(raw, line_no, rhs).error("expected `y | w` after '='"))?;
        let generator = trimmed(raw, line_no, g);
        if generator.text.is_empty() {
            return Err(generator.error("missing generator name"));
        }
        let restriction = trimmed(raw, line_no, w);
        if restriction.text.is_empty() {
            return Err(restriction.error("missing restriction"));
        }
        parsed.rules.push(Rule {
            letter: parse_letter(parsed.alphabet.as_ref(), &trimmed(raw, line_no, x))?,
            image: parse_letter(parsed.alphabet.as_ref(), &trimmed(raw, line_no, y))?,
            generator,
            restriction,
        });
    }
    Ok(parsed)
}

fn end_of(text: &str) -> (usize, usize) {
    (text.lines().count().max(1), 1)
}

/// Generator names in order of first appearance, and each generator's rules
/// indexed by letter.
fn rule_table<'a, 'b>(
    parsed: &'b Parsed<'a>,
    alphabet: &Alphabet,
) -> Result<(Vec<String>, Vec<Vec<&'b Rule<'a>>>)> {
    let mut names: Vec<String> = Vec::new();
    let mut by_gen: BTreeMap<usize, Vec<Option<&Rule>>> = BTreeMap::new();
    for rule in &parsed.rules {
        let k = match names.iter().position(|n| n == rule.generator.text) {
            Some(k) => k,
            None => {
                names.push(rule.generator.text.to_string());
                names.len() - 1
            }
        };
        let slots = by_gen.entry(k).or_insert_with(|| vec![None; alphabet.len()]);
        let slot = &mut slots[usize::from(rule.letter)];
        if slot.is_some() {
            return Err(rule.generator.error(format!(
                "duplicate rule for {} . {}",
                rule.generator.text,
                alphabet.symbol(rule.letter)
            )));
        }
        *slot = Some(rule);
    }
    let mut out = Vec::new();
    for (k, slots) in by_gen {
        let mut rules = Vec::new();
        for (x, r) in slots.into_iter().enumerate() {
            match r {
                Some(r) => rules.push(r),
                None => {
                    return Err(Error::construction(
                        "complete rules",
                        format!("no rule for {} . {}", names[k], alphabet.symbol(x as Letter)),
                    ))
                }
            }
        }
        out.push(rules);
    }
    Ok((names, out))
}

fn header<'a>(text: &'a str, parsed: &Parsed<'a>) -> Result<(Alphabet, GroupKind)> {
    let (line, column) = end_of(text);
    let alphabet = parsed
        .alphabet
        .clone()
        .ok_or_else(|| Error::parse(line, column, "missing `alphabet:` line"))?;
    let kind = parsed
        .kind
        .clone()
        .ok_or_else(|| Error::parse(line, column, "missing `group:` line"))?;
    if parsed.rules.is_empty() {
        return Err(Error::parse(line, column, "no rules given"));
    }
    Ok((alphabet, kind))
}

fn build_power(parsed: &Parsed, alphabet: Alphabet, name: String) -> Result<ZappaSzep<IntegerPowerGroup>> {
    let (names, rules) = rule_table(parsed, &alphabet)?;
    if names.len() != 1 {
        let second = &parsed.rules.iter().find(|r| r.generator.text != names[0]).expect("two names").generator;
        return Err(second.error("integer-power groups have exactly one generator"));
    }
    let table = rules[0]
        .iter()
        .map(|r| {
            let factors = parse_group_word(r.restriction.text, &names).map_err(|e| r.restriction.relocate(e))?;
            Ok((r.image, factors.iter().map(|f| f.1).sum()))
        })
        .collect::<Result<Vec<(Letter, i64)>>>()?;
    let group = IntegerPowerGroup::new(alphabet, names[0].clone(), &table)?;
    ZappaSzep::new(name, group)
}

fn build_table(text: &str, parsed: &Parsed, alphabet: Alphabet, name: String) -> Result<ZappaSzep<TableGroup>> {
    let (line, column) = end_of(text);
    let listed = parsed
        .elements
        .as_ref()
        .ok_or_else(|| Error::parse(line, column, "finite-table groups need an `elements:` line"))?;
    let mut names: Vec<String> = listed.iter().map(|t| t.text.to_string()).collect();
    if names.first().map(String::as_str) != Some("e") && !names.iter().any(|n| n == "e") {
        names.insert(0, "e".into());
    }
    for (i, t) in listed.iter().enumerate() {
        if listed[..i].iter().any(|u| u.text == t.text) {
            return Err(t.error(format!("duplicate element {}", t.text)));
        }
    }
    let index = |t: &Located| -> Result<usize> {
        names
            .iter()
            .position(|n| n == t.text)
            .ok_or_else(|| t.error(format!("unknown element {:?}", t.text)))
    };
    let n = names.len();
    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    for a in 0..n {
        table[0][a] = Some(a);
        table[a][0] = Some(a);
    }
    for p in &parsed.products {
        let a = index(&p.factors[0])?;
        let b = index(&p.factors[1])?;
        let c = index(&p.result)?;
        if a != 0 && b != 0 && table[a][b].is_some() {
            return Err(p.factors[0].error(format!("duplicate product {} * {}", names[a], names[b])));
        }
        table[a][b] = Some(c);
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(a, row)| {
            row.into_iter()
                .enumerate()
                .map(|(b, c)| {
                    c.ok_or_else(|| Error::parse(line, column, format!("missing product {} * {}", names[a], names[b])))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let (gen_names, rules) = rule_table(parsed, &alphabet)?;
    let mut gens = Vec::new();
    for (g, rs) in gen_names.iter().zip(&rules) {
        let gi = index(&rs[0].generator).map_err(|_| rs[0].generator.error(format!("{g} is not a listed element")))?;
        let mut r: TableRules = Vec::new();
        for rule in rs {
            let mut acc = 0;
            for (k, exp) in parse_group_word(rule.restriction.text, &names).map_err(|e| rule.restriction.relocate(e))? {
                let step = if exp >= 0 { k } else { (0..n).find(|&b| table[k][b] == 0).unwrap_or(0) };
                for _ in 0..exp.unsigned_abs() {
                    acc = table[acc][step];
                }
            }
            r.push((rule.image, acc));
        }
        gens.push((gi, r));
    }
    let group = TableGroup::new(alphabet, names, table, gens)?;
    ZappaSzep::new(name, group)
}

fn build_portrait(
    parsed: &Parsed,
    alphabet: Alphabet,
    depth: usize,
    name: String,
) -> Result<ZappaSzep<PortraitGroup>> {
    let (names, rules) = rule_table(parsed, &alphabet)?;
    let mut portrait: Vec<PortraitRules> = Vec::new();
    for rs in &rules {
        let mut r: PortraitRules = Vec::new();
        for rule in rs {
            let mut word = Vec::new();
            for (k, exp) in parse_group_word(rule.restriction.text, &names).map_err(|e| rule.restriction.relocate(e))? {
                let sym = Sym {
                    generator: k as u8,
                    inverse: exp < 0,
                };
                word.extend(std::iter::repeat_n(sym, exp.unsigned_abs() as usize));
            }
            r.push((rule.image, word));
        }
        portrait.push(r);
    }
    let group = PortraitGroup::new(alphabet, depth, names, portrait)?;
    ZappaSzep::new(name, group)
}

/// Parse and validate a spec file. `default_name` is used when the file has
/// no `name:` line.
pub fn parse_spec(text: &str, default_name: &str) -> Result<SpecInstance> {
    let parsed = parse_lines(text)?;
    let (alphabet, kind) = header(text, &parsed)?;
    let name = parsed.name.clone().unwrap_or_else(|| default_name.to_string());
    Ok(match kind {
        GroupKind::IntegerPower => SpecInstance::Power(build_power(&parsed, alphabet, name)?),
        GroupKind::FiniteTable => SpecInstance::Table(build_table(text, &parsed, alphabet, name)?),
        GroupKind::BoundedPortrait { depth } => {
            SpecInstance::Portrait(build_portrait(&parsed, alphabet, depth, name)?)
        }
    })
}

/// Parse a spec file that must describe an integer-power group.
pub fn parse_power_spec(text: &str, default_name: &str) -> Result<ZappaSzep<IntegerPowerGroup>> {
    match parse_spec(text, default_name)? {
        SpecInstance::Power(z) => Ok(z),
        _ => Err(Error::usage("expected an integer-power spec")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::self_similar::{act, SelfSimilarGroup};
    use crate::instances::TreeSemigroup;
    use crate::semigroup::RightLcmSemigroup;

    #[test]
    fn negative_control_is_rejected() {
        let text = "alphabet: 0 1\ngroup: integer-power\nz . 0 = 0 | z\nz . 1 = 0 | e\n";
        match parse_spec(text, "bad") {
            Err(Error::Construction { axiom, .. }) => assert_eq!(axiom, "letter bijection"),
            other => panic!("expected a construction error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let text = "alphabet: 0 1\ngroup: integer-power\nz . 0 = 1 | e\nz . 2 = 0 | z\n";
        match parse_spec(text, "x") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (4, 5)),
            other => panic!("{other:?}"),
        }
        let text = "alphabet: 0 1\ngroup: integer-power\nz . 0 = 1 | e\nz . 1 = 0 | zq\n";
        match parse_spec(text, "x") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (4, 14)),
            other => panic!("{other:?}"),
        }
        let text = "alphabet: 0 1\ngroup: integer-power\nz . 0 = 1 | e\n";
        assert!(matches!(parse_spec(text, "x"), Err(Error::Construction { .. })));
        let text = "alphabet: 0 1\ngroup: lattice\n";
        assert!(matches!(parse_spec(text, "x"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn finite_table_spec() {
        let text = "\
alphabet: 0 1
group: finite-table
elements: e a
a * a = e
a . 0 = 1 | e
a . 1 = 0 | e
";
        let SpecInstance::Table(z) = parse_spec(text, "flip").unwrap() else {
            panic!("expected a table instance")
        };
        let g = z.group();
        assert_eq!(g.order(), 2);
        let a = g.generators()[0];
        assert_eq!(act(g, &a, &[0, 1]), vec![1, 1].into());
        assert!(!z.describe().is_empty());
    }

    #[test]
    fn portrait_spec_matches_power() {
        let text = "\
name: portrait-odometer
alphabet: 0 1
group: bounded-portrait(depth=3)
z . 0 = 1 | e
z . 1 = 0 | z
";
        let SpecInstance::Portrait(z) = parse_spec(text, "x").unwrap() else {
            panic!("expected a portrait instance")
        };
        let g = z.group();
        let zz = g.parse("z^2").unwrap();
        assert_eq!(act(g, &zz, &[0, 0, 0]), vec![0, 1, 0].into());
        assert_eq!(z.name(), "portrait-odometer");
    }
}

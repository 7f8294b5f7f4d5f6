use std::fmt::Write as _;
use std::path::Path;

use crate::boundary::{fixed_sets, BoundaryPoint};
use crate::error::{Error, Result};
use crate::germ::{germ, germ_eq, range, topological_freeness_probe, unit_germ};
use crate::hull::{format_hull, parse_hull};
use crate::instances::builtins::{modified_odometer, odometer};
use crate::instances::free::{parse_free_name, FreeMonoid};
use crate::instances::groups::{IntegerPowerGroup, PortraitGroup, TableGroup};
use crate::instances::nat::{parse_nat_name, FreeAbelian};
use crate::instances::self_similar::{msf_enumerate, SelfSimilarGroup};
use crate::instances::spec_file::{parse_spec, SpecInstance};
use crate::instances::zappa_szep::ZappaSzep;
use crate::instances::TreeSemigroup;
use crate::verdict::Verdict;

use super::{analyze, format_set, AnalyzeOptions, Report, Status};

/// Any instance the command line can name.
#[derive(Clone, Debug)]
pub enum AnyInstance {
    Free(String, FreeMonoid),
    Nat(String, FreeAbelian),
    Power(ZappaSzep<IntegerPowerGroup>),
    Table(ZappaSzep<TableGroup>),
    Portrait(ZappaSzep<PortraitGroup>),
}

macro_rules! with_tree {
    ($inst:expr, $x:ident => $body:expr, nat => $nat:expr) => {
        match $inst {
            AnyInstance::Free(_, $x) => $body,
            AnyInstance::Power($x) => $body,
            AnyInstance::Table($x) => $body,
            AnyInstance::Portrait($x) => $body,
            AnyInstance::Nat(..) => $nat,
        }
    };
}

/// Resolve a built-in name (`free:X01`, `nat:2`, `odometer`,
/// `modified-odometer`) or read a spec file.
pub fn load_instance(source: &str) -> Result<AnyInstance> {
    match source {
        "odometer" => return Ok(AnyInstance::Power(odometer())),
        "modified-odometer" => return Ok(AnyInstance::Power(modified_odometer())),
        _ => {}
    }
    if let Some(m) = parse_free_name(source) {
        return Ok(AnyInstance::Free(source.to_string(), m?));
    }
    if let Some(n) = parse_nat_name(source) {
        return Ok(AnyInstance::Nat(source.to_string(), n?));
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(Error::usage(format!(
            "{source:?} is neither a built-in instance nor a spec file"
        )));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{source}: {e}")))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(source);
    Ok(match parse_spec(&text, stem)? {
        SpecInstance::Power(z) => AnyInstance::Power(z),
        SpecInstance::Table(z) => AnyInstance::Table(z),
        SpecInstance::Portrait(z) => AnyInstance::Portrait(z),
    })
}

impl AnyInstance {
    pub fn name(&self) -> &str {
        match self {
            AnyInstance::Free(n, _) | AnyInstance::Nat(n, _) => n,
            AnyInstance::Power(z) => z.name(),
            AnyInstance::Table(z) => z.name(),
            AnyInstance::Portrait(z) => z.name(),
        }
    }

    pub fn analyze(&self, opts: &AnalyzeOptions) -> Report {
        let name = self.name();
        match self {
            AnyInstance::Free(_, m) => analyze(m, name, opts),
            AnyInstance::Nat(_, n) => analyze(n, name, opts),
            AnyInstance::Power(z) => analyze(z, name, opts),
            AnyInstance::Table(z) => analyze(z, name, opts),
            AnyInstance::Portrait(z) => analyze(z, name, opts),
        }
    }
}

fn msf_for<T: TreeSemigroup + ?Sized>(inst: &T, element: &str, max_len: usize) -> Result<String> {
    let group = inst.group();
    let alphabet = group.alphabet();
    let g = group.parse(element)?;
    let r = msf_enumerate(group, &g, max_len)?;
    let words: Vec<String> = r.words.iter().map(|w| alphabet.format_word(w)).collect();
    let mut out = String::new();
    let _ = writeln!(out, "MSF_{} (length ≤ {max_len}) = {}", group.format(&g), format_set(&words));
    let _ = writeln!(out, "finiteness: {}", Status::of(&r.finiteness).render());
    if let Verdict::Fails { counterexample: f } = &r.finiteness {
        let _ = writeln!(
            out,
            "  infinite family {}({})^k{}",
            alphabet.format_word(&f.prefix),
            alphabet.format_word(&f.pump),
            alphabet.format_word(&f.tail)
        );
    }
    Ok(out)
}

/// The `msf` command: minimal strongly fixed words of one group element.
pub fn msf_text(inst: &AnyInstance, element: &str, max_len: usize) -> Result<String> {
    with_tree!(inst, x => msf_for(x, element, max_len),
        nat => Err(Error::usage(format!("{} has no self-similar group", inst.name()))))
}

fn germ_for<T: TreeSemigroup + ?Sized>(inst: &T, s: &str, point: &str, depth: usize) -> Result<String> {
    let alphabet = inst.group().alphabet();
    let s = parse_hull(inst, s)?;
    let x = BoundaryPoint::parse(alphabet, point)?;
    let g = germ(inst, s.clone(), x.clone())?;
    let mut out = String::new();
    let _ = writeln!(out, "s = {}", format_hull(inst, &s));
    let _ = writeln!(out, "x = {}", x.format(alphabet));
    let _ = writeln!(out, "θ_s(x) = {}", range(inst, &g).format(alphabet));
    let v = germ_eq(inst, &g, &unit_germ(inst, x), depth);
    let extra = match &v {
        Verdict::Holds { witness, .. } => format!(": agrees with the unit on {}", format_hull(inst, witness)),
        Verdict::Fails { counterexample } => format!(": {counterexample}"),
        Verdict::Unknown { .. } => String::new(),
    };
    let _ = writeln!(out, "[s, x] is a unit germ: {}{extra}", Status::of(&v).render());
    let f = fixed_sets(inst, &s, depth)?;
    let show = |cs: &[crate::boundary::Cylinder]| {
        format_set(&cs.iter().map(|c| c.format(alphabet)).collect::<Vec<_>>())
    };
    let _ = writeln!(out, "fixed cylinders (depth {depth}): {}", show(&f.fixed));
    let _ = writeln!(out, "trivially fixed cylinders (depth {depth}): {}", show(&f.trivially_fixed));
    let t = topological_freeness_probe(inst, &s, depth)?;
    let extra = match &t {
        Verdict::Fails { counterexample } => format!(": {} is fixed but not trivially", counterexample.format(alphabet)),
        _ => String::new(),
    };
    let _ = writeln!(out, "topological freeness of s: {}{extra}", Status::of(&t).render());
    Ok(out)
}

/// The `germ` command: the germ of `s` at a boundary point.
pub fn germ_text(inst: &AnyInstance, s: &str, point: &str, depth: usize) -> Result<String> {
    with_tree!(inst, x => germ_for(x, s, point, depth),
        nat => Err(Error::NotTree(inst.name().to_string())))
}

use crate::boundary::{minimality_probe, tree_probe, BoundaryPoint, Cylinder};
use crate::germ::topological_freeness_probe;
use crate::hull::{condition_ep, e_star_unitary_probe, format_hull, hull_elements, j_cover_probe, locally_contracting_witness, Hull};
use crate::instances::free::FreeMonoid;
use crate::instances::nat::FreeAbelian;
use crate::instances::self_similar::{msf_enumerate, SelfSimilarGroup};
use crate::instances::zappa_szep::ZappaSzep;
use crate::instances::TreeSemigroup;
use crate::semigroup::{axioms_probe, condition_h, core_contains, right_cancellativity_probe, RightLcmSemigroup};
use crate::verdict::{all, and, Support, Verdict};
use crate::word::Word;

use super::{format_set, Check, CoreSummary, MsfRow, Report, Status, CSTAR_CAVEAT, SCHEMA_VERSION};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub depth: usize,
    pub ep_cap: usize,
    /// Random triples added to the exhaustive axiom check.
    pub samples: usize,
    pub msf_max_len: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            depth: 6,
            ep_cap: 4,
            samples: 1000,
            msf_max_len: 8,
        }
    }
}

/// Checks that need the boundary of a tree-like instance.
pub struct TreeChecks {
    pub minimality: Vec<String>,
    pub topological_freeness: Check,
}

/// Instance-specific parts of the analysis.
pub trait Analyzable: RightLcmSemigroup {
    fn tree_checks(&self, _core: &[Hull<Self::Elem>], _depth: usize) -> Option<TreeChecks> {
        None
    }

    fn msf_rows(&self, _max_len: usize) -> Vec<MsfRow> {
        Vec::new()
    }
}

impl Analyzable for FreeAbelian {}

impl Analyzable for FreeMonoid {
    fn tree_checks(&self, core: &[Hull<Self::Elem>], depth: usize) -> Option<TreeChecks> {
        Some(tree_checks_for(self, core, depth))
    }
}

impl<G: SelfSimilarGroup> Analyzable for ZappaSzep<G> {
    fn tree_checks(&self, core: &[Hull<Self::Elem>], depth: usize) -> Option<TreeChecks> {
        Some(tree_checks_for(self, core, depth))
    }

    fn msf_rows(&self, max_len: usize) -> Vec<MsfRow> {
        let group = self.group();
        let alphabet = group.alphabet();
        group
            .elements(2)
            .into_iter()
            .filter(|g| !group.is_identity(g))
            .filter_map(|g| {
                let r = msf_enumerate(group, &g, max_len).ok()?;
                let mut details = Vec::new();
                if let Verdict::Fails { counterexample: f } = &r.finiteness {
                    details.push(format!(
                        "infinite family {}({})^k{}",
                        alphabet.format_word(&f.prefix),
                        alphabet.format_word(&f.pump),
                        alphabet.format_word(&f.tail)
                    ));
                }
                Some(MsfRow {
                    element: group.format(&g),
                    max_len,
                    words: r.words.iter().map(|w| alphabet.format_word(w)).collect(),
                    finiteness: Status::of(&r.finiteness),
                    details,
                })
            })
            .collect()
    }
}

fn tree_checks_for<T: TreeSemigroup + ?Sized>(inst: &T, core: &[Hull<T::Elem>], depth: usize) -> TreeChecks {
    let alphabet = inst.group().alphabet();
    let mut minimality = Vec::new();
    let last = (alphabet.len() - 1) as u8;
    let x = BoundaryPoint::periodic(Word::letter(0)).expect("nonempty period");
    let target = [Cylinder::new(Word::letter(last))];
    if let Ok(s) = minimality_probe(inst, &x, &target, &[]) {
        minimality.push(format!(
            "sample: {} enters {} under {}",
            x.format(alphabet),
            target[0].format(alphabet),
            format_hull(inst, &s)
        ));
    }
    let mut statuses = Vec::new();
    let mut details = Vec::new();
    for s in core {
        let name = format_hull(inst, s);
        match topological_freeness_probe(inst, s, depth) {
            Ok(v) => {
                let line = match &v {
                    Verdict::Fails { counterexample: c } => format!(
                        "{name}: FAILS (fixed cylinder {} is not covered by idempotents below it)",
                        c.format(alphabet)
                    ),
                    other => format!("{name}: {}", Status::of(other).render()),
                };
                details.push(line);
                statuses.push(v.status());
            }
            Err(e) => {
                details.push(format!("{name}: UNKNOWN at bound {depth} ({e})"));
                statuses.push(Verdict::unknown(depth));
            }
        }
    }
    let v = aggregate(&statuses, "fixed-set comparison on core elements", depth);
    TreeChecks {
        minimality,
        topological_freeness: Check::new("topological_freeness", "topological freeness", Status::of(&v)).details(details),
    }
}

/// Conjunction over per-element results, with a single summary support.
fn aggregate(items: &[Verdict<(), ()>], via: &str, depth: usize) -> Verdict<(), ()> {
    match all(items, Support::exact(via)) {
        Verdict::Holds { support, .. } => {
            let support = if support.exact {
                Support::exact(via)
            } else {
                Support::bounded(support.bound.unwrap_or(depth)).via(via)
            };
            Verdict::holds((), support)
        }
        other => other,
    }
}

fn fmt_elems<P: RightLcmSemigroup + ?Sized>(inst: &P, elems: &[P::Elem]) -> String {
    format_set(&elems.iter().map(|e| inst.format(e)).collect::<Vec<_>>())
}

/// Run the full battery of checks on `inst`.
pub fn analyze<P: Analyzable + ?Sized>(inst: &P, name: &str, opts: &AnalyzeOptions) -> Report {
    let depth = opts.depth.max(1);
    let mut checks = Vec::new();

    // Right LCM axioms.
    let bound = depth.min(3);
    let v = axioms_probe(inst, opts.samples, bound);
    let mut check = Check::new("axioms", "right LCM axioms", Status::of(&v));
    if let Verdict::Fails { counterexample: c } = &v {
        check = check.detail(format!("{} fails for {}", c.law, fmt_elems(inst, &c.elements)));
    } else {
        check = check.detail(format!(
            "identity, associativity, left cancellativity, right LCMs, translation and unit invariance exhaustive to size {bound} plus {} sampled triples",
            opts.samples
        ));
    }
    checks.push(check);

    // Condition (H), with the hull-side cover check alongside.
    let h = condition_h(inst, depth);
    let mut check = Check::new("condition_h", "condition (H)", Status::of(&h));
    match &h {
        Verdict::Holds { witness, .. } => {
            for c in witness {
                let (p, q) = (inst.format(&c.p), inst.format(&c.q));
                check = check.detail(if c.cover.is_empty() {
                    format!("p = {p}, q = {q}: P_(p,q) is empty")
                } else {
                    format!("p = {p}, q = {q}: P_(p,q) is covered by {}", fmt_elems(inst, &c.cover))
                });
            }
        }
        Verdict::Fails { counterexample } => check = check.detail(counterexample.clone()),
        Verdict::Unknown { .. } => {}
    }
    let jb = depth.min(4);
    let j = j_cover_probe(inst, jb);
    check = check.detail(format!("finite covers of J_s (hull side): {}", Status::of(&j).render()));
    checks.push(check);

    // Core scan.
    let mut core = CoreSummary {
        bound: depth,
        shortcut: None,
        inside: Vec::new(),
        outside: 0,
        undecided: 0,
        example_outside: None,
    };
    for p in inst.enumerate(depth) {
        match core_contains(inst, &p, depth) {
            Verdict::Holds { support, .. } => {
                if core.shortcut.is_none() && support.exact {
                    core.shortcut = support.via.clone();
                }
                core.inside.push(inst.format(&p));
            }
            Verdict::Fails { counterexample: q } => {
                core.outside += 1;
                if core.example_outside.is_none() {
                    core.example_outside = Some((inst.format(&p), inst.format(&q)));
                }
            }
            Verdict::Unknown { .. } => core.undecided += 1,
        }
    }

    // E*-unitarity, cross-checked against right cancellativity.
    let e = e_star_unitary_probe(inst, depth);
    let mut check = Check::new("e_star_unitary", "E*-unitary", Status::of(&e));
    if let Verdict::Fails { counterexample: c } = &e {
        check = check.detail(format!(
            "{} ≤ {}, which is not idempotent",
            format_hull(inst, &c.e),
            format_hull(inst, &c.s)
        ));
    }
    let rc = right_cancellativity_probe(inst, depth);
    check = check.detail(format!("right cancellativity: {}", Status::of(&rc).render()));
    if let Verdict::Fails { counterexample: (p, q, b) } = &rc {
        check = check.detail(format!(
            "{}·{} = {}·{}",
            inst.format(p),
            inst.format(b),
            inst.format(q),
            inst.format(b)
        ));
    }
    checks.push(check);

    // Local contractivity from a disjoint pair.
    let small = inst.enumerate(depth.min(2));
    let disjoint = small.iter().find_map(|p| {
        small
            .iter()
            .find(|q| inst.right_lcm(p, q).is_disjoint())
            .map(|q| (p.clone(), q.clone()))
    });
    let lc = match &disjoint {
        Some((p, q)) => match locally_contracting_witness(inst, &inst.identity(), p, q) {
            Ok(w) if w.product_is_zero => Check::new(
                "locally_contracting",
                "locally contracting",
                Status::Holds {
                    support: Support::exact("disjoint ideals"),
                },
            )
            .detail(format!("{}P ∩ {}P = ∅, so P ≠ P₀", inst.format(p), inst.format(q)))
            .detail(format!(
                "f₀ = {}, f₁ = a = {}, [f₀, f₀][a, 1][f₁, f₁] = 0",
                inst.format(&w.f0),
                inst.format(&w.f1)
            )),
            Ok(_) => Check::new("locally_contracting", "locally contracting", Status::Unknown { bound: depth })
                .detail("the contraction witness did not verify"),
            Err(err) => Check::new("locally_contracting", "locally contracting", Status::Unknown { bound: depth })
                .detail(err.to_string()),
        },
        None if inst.lcm_total() => Check::new("locally_contracting", "locally contracting", Status::Fails)
            .detail("P = P₀: every two principal right ideals meet"),
        None => Check::new("locally_contracting", "locally contracting", Status::Unknown { bound: depth })
            .detail(format!("no disjoint pair of size ≤ {}", depth.min(2))),
    };
    checks.push(lc);

    // Core elements of the hull.
    let mut core_hull = Vec::new();
    let mut undecided_core = false;
    for s in hull_elements(inst, opts.ep_cap) {
        let Some((p, q)) = s.parts() else { continue };
        let (a, b) = (core_contains(inst, p, depth), core_contains(inst, q, depth));
        if a.is_holds() && b.is_holds() {
            core_hull.push(s);
        } else if !a.is_fails() && !b.is_fails() {
            undecided_core = true;
        }
    }
    let tree = inst.tree_checks(&core_hull, depth);

    // Minimality.
    let mut check = Check::new(
        "minimality",
        "minimality",
        Status::Holds {
            support: Support::exact("minimality of the tight groupoid"),
        },
    );
    if let Some(t) = &tree {
        check = check.details(t.minimality.clone());
    }
    checks.push(check);

    // Condition (EP) on the core.
    let mut statuses = Vec::new();
    let mut details = Vec::new();
    for s in &core_hull {
        let name = format_hull(inst, s);
        match condition_ep(inst, s, depth) {
            Ok(v) => {
                let line = match &v {
                    Verdict::Holds { witness, support } => {
                        let entries: Vec<String> = witness
                            .entries
                            .iter()
                            .map(|en| format!("{} ↦ {}", inst.format(&en.k), fmt_elems(inst, &en.foundation)))
                            .collect();
                        if entries.is_empty() {
                            format!("{name}: HOLDS ({support}); nothing weakly fixed")
                        } else {
                            format!("{name}: HOLDS ({support}); {}", entries.join(", "))
                        }
                    }
                    Verdict::Fails { counterexample: c } => {
                        format!("{name}: FAILS at k = {} ({})", inst.format(&c.k), c.reason)
                    }
                    Verdict::Unknown { bound } => format!("{name}: UNKNOWN at bound {bound}"),
                };
                details.push(line);
                statuses.push(v.status());
            }
            Err(err) => {
                details.push(format!("{name}: UNKNOWN at bound {depth} ({err})"));
                statuses.push(Verdict::unknown(depth));
            }
        }
    }
    if undecided_core {
        statuses.push(Verdict::unknown(depth));
        details.push("some hull elements could not be placed in or out of the core".into());
    }
    let ep = aggregate(&statuses, "per-element (EP) checks", depth);
    checks.push(Check::new("ep_on_core", "condition (EP) on core", Status::of(&ep)).details(details));

    // Topological freeness.
    match tree {
        Some(t) => checks.push(t.topological_freeness),
        None => {
            let mut check = Check::new(
                "topological_freeness",
                "topological freeness",
                Status::Unknown { bound: depth },
            )
            .detail("boundary operations need principal right ideals forming a tree");
            if let Verdict::Fails { counterexample: (p, q) } = tree_probe(inst, depth.min(2)) {
                check = check.detail(format!(
                    "{}P ∩ {}P is neither ideal",
                    inst.format(&p),
                    inst.format(&q)
                ));
            }
            checks.push(check);
        }
    }

    // Simplicity and pure infiniteness.
    let simple = and(&h.status(), &ep);
    let simplicity = match &simple {
        Verdict::Holds { support, .. } => Check::new(
            "simplicity",
            "simplicity",
            Status::HoldsModulo {
                support: support.clone(),
                caveat: CSTAR_CAVEAT.into(),
            },
        )
        .detail(format!(
            "condition (H) and condition (EP) on the core hold; assumes {CSTAR_CAVEAT}, which is not checked"
        )),
        Verdict::Fails { .. } => {
            let which = if h.is_fails() { "condition (H)" } else { "condition (EP) on the core" };
            Check::new("simplicity", "simplicity", Status::Fails).detail(format!("{which} fails"))
        }
        Verdict::Unknown { bound } => Check::new("simplicity", "simplicity", Status::Unknown { bound: *bound }),
    };
    let pure = match (&simplicity.status, &disjoint) {
        (Status::HoldsModulo { support, caveat }, Some((p, q))) => Check::new(
            "pure_infiniteness",
            "pure infiniteness",
            Status::HoldsModulo {
                support: support.meet(&Support::exact("two disjoint cylinders")),
                caveat: caveat.clone(),
            },
        )
        .detail(format!(
            "the boundary is not one point: {}P ∩ {}P = ∅ gives two distinct ultrafilters",
            inst.format(p),
            inst.format(q)
        )),
        (Status::HoldsModulo { .. }, None) => {
            Check::new("pure_infiniteness", "pure infiniteness", Status::Unknown { bound: depth })
                .detail("no two disjoint cylinders found")
        }
        (Status::Fails, _) => Check::new("pure_infiniteness", "pure infiniteness", Status::Unknown { bound: depth })
            .detail("simplicity fails, so the pure-infiniteness criterion does not apply"),
        (status, _) => Check::new("pure_infiniteness", "pure infiniteness", status.clone())
            .detail("simplicity is undecided"),
    };
    checks.push(simplicity);
    checks.push(pure);

    Report {
        schema_version: SCHEMA_VERSION,
        instance: name.to_string(),
        description: inst.describe(),
        depth,
        ep_cap: opts.ep_cap,
        core,
        checks,
        msf_tables: inst.msf_rows(opts.msf_max_len),
    }
}

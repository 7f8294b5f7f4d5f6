//! Three-valued results for questions that quantify over an infinite
//! semigroup and can only be settled exactly in special cases.

use std::fmt;

use serde::{Deserialize, Serialize};

/// How a `Holds` result was established.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Support {
    /// Search depth at which exhaustiveness was established, if any.
    pub bound: Option<usize>,
    /// True when the result is a proof rather than an absence of
    /// counterexamples.
    pub exact: bool,
    /// Name of the argument used (e.g. "right cancellativity").
    pub via: Option<String>,
}

impl Support {
    pub fn exact(via: impl Into<String>) -> Self {
        Support {
            bound: None,
            exact: true,
            via: Some(via.into()),
        }
    }

    pub fn bounded(bound: usize) -> Self {
        Support {
            bound: Some(bound),
            exact: false,
            via: None,
        }
    }

    pub fn at(mut self, bound: usize) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn via(mut self, via: impl Into<String>) -> Self {
        self.via = Some(via.into());
        self
    }

    /// Combine the support of two holding results: the weaker one wins.
    pub fn meet(&self, other: &Support) -> Support {
        let exact = self.exact && other.exact;
        let bound = match (self.bound, other.bound) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let via = match (&self.via, &other.via) {
            (Some(a), Some(b)) if a == b => Some(a.clone()),
            (Some(a), Some(b)) => Some(format!("{a}; {b}")),
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        Support { bound, exact, via }
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.bound, self.exact) {
            (Some(b), _) => write!(f, "bound={b}")?,
            (None, true) => write!(f, "exact")?,
            (None, false) => write!(f, "unbounded sample")?,
        }
        if let Some(via) = &self.via {
            write!(f, ", via {via}")?;
        }
        Ok(())
    }
}

/// `Holds` with evidence, `Fails` with a replayable counterexample, or
/// `Unknown` when the search ran out at `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W = (), C = W> {
    Holds { witness: W, support: Support },
    Fails { counterexample: C },
    Unknown { bound: usize },
}

impl<W, C> Verdict<W, C> {
    pub fn holds(witness: W, support: Support) -> Self {
        Verdict::Holds { witness, support }
    }

    pub fn fails(counterexample: C) -> Self {
        Verdict::Fails { counterexample }
    }

    pub fn unknown(bound: usize) -> Self {
        Verdict::Unknown { bound }
    }

    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }

    pub fn is_fails(&self) -> bool {
        matches!(self, Verdict::Fails { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }

    pub fn is_exact(&self) -> bool {
        match self {
            Verdict::Holds { support, .. } => support.exact,
            Verdict::Fails { .. } => true,
            Verdict::Unknown { .. } => false,
        }
    }

    pub fn support(&self) -> Option<&Support> {
        match self {
            Verdict::Holds { support, .. } => Some(support),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn counterexample(&self) -> Option<&C> {
        match self {
            Verdict::Fails { counterexample } => Some(counterexample),
            _ => None,
        }
    }

    pub fn map<W2, C2>(self, fw: impl FnOnce(W) -> W2, fc: impl FnOnce(C) -> C2) -> Verdict<W2, C2> {
        match self {
            Verdict::Holds { witness, support } => Verdict::Holds {
                witness: fw(witness),
                support,
            },
            Verdict::Fails { counterexample } => Verdict::Fails {
                counterexample: fc(counterexample),
            },
            Verdict::Unknown { bound } => Verdict::Unknown { bound },
        }
    }

    /// Forget the evidence, keeping only the status.
    pub fn status(&self) -> Verdict<(), ()> {
        match self {
            Verdict::Holds { support, .. } => Verdict::Holds {
                witness: (),
                support: support.clone(),
            },
            Verdict::Fails { .. } => Verdict::Fails { counterexample: () },
            Verdict::Unknown { bound } => Verdict::Unknown { bound: *bound },
        }
    }
}

/// Kleene conjunction of two statuses. A failure dominates, then an
/// unknown; two holds combine their support.
pub fn and(a: &Verdict<(), ()>, b: &Verdict<(), ()>) -> Verdict<(), ()> {
    match (a, b) {
        (Verdict::Fails { .. }, _) | (_, Verdict::Fails { .. }) => Verdict::fails(()),
        (Verdict::Unknown { bound }, Verdict::Unknown { bound: other }) => {
            Verdict::unknown((*bound).min(*other))
        }
        (Verdict::Unknown { bound }, _) | (_, Verdict::Unknown { bound }) => Verdict::unknown(*bound),
        (Verdict::Holds { support: s, .. }, Verdict::Holds { support: t, .. }) => {
            Verdict::holds((), s.meet(t))
        }
    }
}

/// Conjunction over a sequence; the empty conjunction holds exactly.
pub fn all<'a>(items: impl IntoIterator<Item = &'a Verdict<(), ()>>, empty: Support) -> Verdict<(), ()> {
    let mut acc: Option<Verdict<(), ()>> = None;
    for v in items {
        acc = Some(match acc {
            None => v.clone(),
            Some(a) => and(&a, v),
        });
    }
    acc.unwrap_or(Verdict::holds((), empty))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(bound: usize) -> Verdict<(), ()> {
        Verdict::holds((), Support::bounded(bound))
    }

    #[test]
    fn failure_dominates_unknown() {
        let f = Verdict::fails(());
        let u = Verdict::unknown(3);
        assert!(and(&f, &u).is_fails());
        assert!(and(&u, &f).is_fails());
        assert!(and(&u, &h(4)).is_unknown());
    }

    #[test]
    fn holds_keep_weakest_support() {
        let e = Verdict::holds((), Support::exact("proof"));
        let v = and(&e, &h(5));
        let s = v.support().unwrap();
        assert!(!s.exact);
        assert_eq!(s.bound, Some(5));
    }

    #[test]
    fn empty_conjunction_holds() {
        let v = all([], Support::exact("vacuous"));
        assert!(v.is_holds() && v.is_exact());
    }

    #[test]
    fn support_display() {
        assert_eq!(Support::exact("x").to_string(), "exact, via x");
        assert_eq!(Support::bounded(6).via("MSF finiteness").to_string(), "bound=6, via MSF finiteness");
    }
}

//! Free abelian monoids `ℕ^k` under addition.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::semigroup::{RightLcmOutcome, RightLcmSemigroup};

/// A vector in `ℕ^k`, ordered as the word `x₁^{a₁} ⋯ x_k^{a_k}`: by total
/// degree, then with more of the earlier generators first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NatElem(pub Vec<u32>);

impl NatElem {
    fn degree(&self) -> u64 {
        self.0.iter().map(|&a| u64::from(a)).sum()
    }
}

impl Ord for NatElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for NatElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `ℕ^k`; right LCMs are componentwise maxima, so every element is in the
/// core and the ideal semilattice is not a tree for `k ≥ 2`.
#[derive(Clone, Debug)]
pub struct FreeAbelian {
    rank: usize,
}

impl FreeAbelian {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::usage("ℕ^k needs k ≥ 1"));
        }
        Ok(FreeAbelian { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl RightLcmSemigroup for FreeAbelian {
    type Elem = NatElem;

    fn describe(&self) -> String {
        format!("free abelian monoid ℕ^{}", self.rank)
    }
    fn identity(&self) -> NatElem {
        NatElem(vec![0; self.rank])
    }
    fn generators(&self) -> Vec<NatElem> {
        (0..self.rank)
            .map(|i| NatElem((0..self.rank).map(|j| u32::from(i == j)).collect()))
            .collect()
    }
    fn contains(&self, p: &NatElem) -> bool {
        p.0.len() == self.rank
    }
    fn mul(&self, p: &NatElem, q: &NatElem) -> NatElem {
        NatElem(p.0.iter().zip(&q.0).map(|(a, b)| a + b).collect())
    }
    fn right_lcm(&self, p: &NatElem, q: &NatElem) -> RightLcmOutcome<NatElem> {
        let r: Vec<u32> = p.0.iter().zip(&q.0).map(|(a, b)| *a.max(b)).collect();
        RightLcmOutcome::Meet {
            p_comp: NatElem(r.iter().zip(&p.0).map(|(m, a)| m - a).collect()),
            q_comp: NatElem(r.iter().zip(&q.0).map(|(m, b)| m - b).collect()),
            r: NatElem(r),
        }
    }
    fn left_quotient(&self, p: &NatElem, r: &NatElem) -> Option<NatElem> {
        p.0.iter()
            .zip(&r.0)
            .map(|(a, m)| m.checked_sub(*a))
            .collect::<Option<Vec<u32>>>()
            .map(NatElem)
    }
    fn unit_between(&self, p: &NatElem, q: &NatElem) -> Option<NatElem> {
        (p == q).then(|| self.identity())
    }
    fn is_unit(&self, p: &NatElem) -> bool {
        p.0.iter().all(|&a| a == 0)
    }
    fn size(&self, p: &NatElem) -> usize {
        p.degree() as usize
    }
    fn enumerate(&self, max_size: usize) -> Vec<NatElem> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.rank {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u32>| {
                    let used: usize = v.iter().map(|&a| a as usize).sum();
                    (0..=(max_size - used) as u32).map(move |a| {
                        let mut w = v.clone();
                        w.push(a);
                        w
                    })
                })
                .collect();
        }
        let mut out: Vec<NatElem> = out.into_iter().map(NatElem).collect();
        out.sort();
        out
    }
    fn units(&self, _max_size: usize) -> Vec<NatElem> {
        vec![self.identity()]
    }
    fn format(&self, p: &NatElem) -> String {
        let parts: Vec<String> = p.0.iter().map(|a| a.to_string()).collect();
        format!("({})", parts.join(", "))
    }
    fn parse(&self, s: &str) -> Result<NatElem> {
        let t = s.trim();
        let inner = t.strip_prefix('(').and_then(|u| u.strip_suffix(')')).unwrap_or(t);
        let v = inner
            .split(',')
            .map(|a| {
                a.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse(1, 1, format!("{a:?} is not a natural number")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if v.len() != self.rank {
            return Err(Error::parse(1, 1, format!("expected {} coordinates", self.rank)));
        }
        Ok(NatElem(v))
    }

    fn core_shortcut(&self, _p: &NatElem) -> Option<Result<(), NatElem>> {
        Some(Ok(()))
    }

    fn right_cancellative_proof(&self) -> Option<String> {
        Some("right cancellativity".into())
    }

    fn lcm_total(&self) -> bool {
        true
    }
}

/// Parse `nat:k`.
pub fn parse_nat_name(name: &str) -> Option<Result<FreeAbelian>> {
    let rest = name.strip_prefix("nat:")?;
    Some(
        rest.parse::<usize>()
            .map_err(|_| Error::usage(format!("bad rank in {name:?}")))
            .and_then(FreeAbelian::new),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::core_contains;

    #[test]
    fn enumeration_order() {
        let n = FreeAbelian::new(2).unwrap();
        let shown: Vec<String> = n.enumerate(1).iter().map(|p| n.format(p)).collect();
        assert_eq!(shown, ["(0, 0)", "(1, 0)", "(0, 1)"]);
        assert_eq!(n.enumerate(4).len(), 15);
    }

    #[test]
    fn everything_in_core() {
        let n = FreeAbelian::new(2).unwrap();
        let p = n.parse("(3, 5)").unwrap();
        assert!(core_contains(&n, &p, 4).is_exact());
        match n.right_lcm(&n.parse("(1,0)").unwrap(), &n.parse("(0,1)").unwrap()) {
            RightLcmOutcome::Meet { r, .. } => assert_eq!(r, NatElem(vec![1, 1])),
            RightLcmOutcome::Disjoint => panic!("ℕ² ideals always meet"),
        }
    }
}

//! Two-stage majority: each vertex polls its closed neighborhood, then the
//! proposal passes if proponents are a strict majority of all vertices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Configuration;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VoteResult {
    pub proponents: Vec<usize>,
    pub p: usize,
    pub approving: bool,
}

/// Signed sum `f(N_v)` of opinions over the neighborhood of `v`, loop included.
pub fn neighborhood_sum(c: &Configuration, v: usize) -> Result<i64> {
    let n = c.order();
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    Ok(signed_sum(c.graph().row(v), &c.happy_mask()))
}

fn signed_sum(row: &[u64], happy: &[u64]) -> i64 {
    let (mut plus, mut total) = (0i64, 0i64);
    for (&r, &h) in row.iter().zip(happy) {
        plus += (r & h).count_ones() as i64;
        total += r.count_ones() as i64;
    }
    2 * plus - total
}

/// A vertex is a proponent iff its neighborhood sum is at least 1.
pub fn proponents(c: &Configuration) -> VoteResult {
    let mask = c.happy_mask();
    let proponents: Vec<usize> = (0..c.order())
        .filter(|&v| signed_sum(c.graph().row(v), &mask) >= 1)
        .collect();
    let p = proponents.len();
    VoteResult {
        approving: 2 * p > c.order(),
        proponents,
        p,
    }
}

pub fn is_approving(c: &Configuration) -> bool {
    proponents(c).approving
}

/// Flips every opinion; the graph is untouched.
pub fn negate(c: &Configuration) -> Configuration {
    c.map_opinions(|_, o| o.flipped())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{LoopGraph, Opinion};

    fn config(g: LoopGraph, signs: &[i8]) -> Configuration {
        let ops = signs
            .iter()
            .map(|&s| if s > 0 { Opinion::Happy } else { Opinion::Sad })
            .collect();
        Configuration::new(g, ops).unwrap()
    }

    #[test]
    fn sums_on_small_graphs() {
        let k3 = config(LoopGraph::complete(3), &[1, 1, -1]);
        for v in 0..3 {
            assert_eq!(neighborhood_sum(&k3, v).unwrap(), 1);
        }
        let single = config(LoopGraph::loops_only(1), &[1]);
        assert_eq!(neighborhood_sum(&single, 0).unwrap(), 1);
        let cyc = config(LoopGraph::circulant(5, 3).unwrap(), &[1, 1, 1, -1, -1]);
        assert_eq!(neighborhood_sum(&cyc, 0).unwrap(), 1);
        assert_eq!(neighborhood_sum(&cyc, 4).unwrap(), -1);
        assert!(matches!(
            neighborhood_sum(&cyc, 5),
            Err(Error::VertexOutOfRange { vertex: 5, n: 5 })
        ));
    }

    #[test]
    fn consensus_and_all_sad() {
        let k5 = Configuration::with_happy_prefix(LoopGraph::complete(5), 3).unwrap();
        let r = proponents(&k5);
        assert_eq!(r.p, 5);
        assert!(r.approving);

        let none = Configuration::with_happy_prefix(LoopGraph::complete(5), 0).unwrap();
        assert!(proponents(&none).proponents.is_empty());
        assert!(!is_approving(&none));
    }

    #[test]
    fn below_local_bound_has_no_proponents() {
        // h <= (d-1)/2 leaves every neighborhood with a sad majority
        let g = LoopGraph::circulant(11, 7).unwrap();
        let c = Configuration::with_happy_prefix(g, 3).unwrap();
        assert_eq!(proponents(&c).p, 0);
    }

    #[test]
    fn negation_complements_proponents() {
        let c = config(
            LoopGraph::circulant(7, 3).unwrap(),
            &[1, -1, 1, 1, -1, -1, 1],
        );
        let nc = negate(&c);
        assert_eq!(negate(&nc), c);
        let a = proponents(&c).proponents;
        let b = proponents(&nc).proponents;
        let mut all: Vec<_> = a.iter().chain(&b).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..7).collect::<Vec<_>>());
        assert_ne!(is_approving(&c), is_approving(&nc));
    }

    #[test]
    fn even_degree_evaluates_literally() {
        // ties give sum 0, which is not a proponent
        let c = config(LoopGraph::complete(2), &[1, -1]);
        assert_eq!(proponents(&c).p, 0);
    }
}

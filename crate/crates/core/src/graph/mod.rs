//! Graphs with a loop at every vertex, opinion labelings, and the
//! composition operators used to assemble witness configurations.
//!
//! Vertices are always `0..n`. Adjacency is a dense symmetric bit matrix whose
//! diagonal is permanently set, so `degree(v)` counts the loop exactly once.

mod export;
mod ops;
mod params;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use export::{to_dot, to_json, GraphJson};
pub use ops::{disjoint_union, double_join, hybrid_join, join, matching_2to1};
pub(crate) use params::check_order_degree;
pub use params::ClassParams;

const WORD_BITS: usize = 64;

/// Undirected graph without multi-edges in which every vertex carries one loop.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LoopGraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl LoopGraph {
    /// `n` isolated vertices, each with its loop.
    pub fn loops_only(n: usize) -> Self {
        let words = n.div_ceil(WORD_BITS);
        let mut g = LoopGraph {
            n,
            words,
            bits: vec![0; n * words],
        };
        for v in 0..n {
            g.set(v, v);
        }
        g
    }

    /// Complete graph with loops; every vertex has degree `n`.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::loops_only(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge(u, v);
            }
        }
        g
    }

    /// Builds a graph from an edge list. Loops in the list are accepted and
    /// ignored (they are always present); repeated edges collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::loops_only(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Circulant with consecutive offsets: `±1..=±⌊(degree-1)/2⌋`, plus the
    /// antipodal offset `n/2` when `degree` is even (then `n` is even).
    pub fn circulant(n: usize, degree: usize) -> Result<Self> {
        if degree == 0 || !regular_graph_feasible(n, degree) {
            return Err(Error::NoSuchRegularGraph { n, degree });
        }
        let mut g = Self::loops_only(n);
        let half = (degree - 1) / 2;
        for v in 0..n {
            for off in 1..=half {
                g.insert_edge(v, (v + off) % n);
            }
            if (degree - 1) % 2 == 1 {
                g.insert_edge(v, (v + n / 2) % n);
            }
        }
        debug_assert_eq!(g.regular_degree(), Some(degree));
        Ok(g)
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / WORD_BITS] |= 1 << (v % WORD_BITS);
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        self.set(u, v);
        self.set(v, u);
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.row(u)[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    /// Row `v` of the adjacency matrix as packed 64-bit words.
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    /// Size of the closed neighborhood `N_v` (the loop counts once).
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD_BITS + bit)
            })
        })
    }

    /// The common degree if the graph is regular. The empty graph has none.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Edges `(u, v)` with `u <= v`, loops included, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v >= u)
                .map(move |v| (u, v))
        })
    }

    /// Number of edges with each loop counted once.
    pub fn edge_count(&self) -> usize {
        let ends: usize = (0..self.n).map(|v| self.degree(v)).sum();
        (ends + self.n) / 2
    }
}

impl fmt::Debug for LoopGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LoopGraph")
            .field("n", &self.n)
            .field(
                "edges",
                &self.edges().filter(|(u, v)| u != v).collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// True iff a `d`-regular graph with loops on `n` vertices exists.
pub fn regular_graph_feasible(n: usize, d: usize) -> bool {
    d <= n && ((d + 1) * n) % 2 == 0
}

pub fn make_circulant(n: usize, degree: usize) -> Result<LoopGraph> {
    LoopGraph::circulant(n, degree)
}

/// A vertex's attitude toward the proposal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Opinion {
    Happy,
    Sad,
}

impl Opinion {
    pub fn sign(self) -> i64 {
        match self {
            Opinion::Happy => 1,
            Opinion::Sad => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Opinion::Happy => Opinion::Sad,
            Opinion::Sad => Opinion::Happy,
        }
    }
}

impl Serialize for Opinion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.sign() as i8)
    }
}

/// A graph with loops together with an opinion at every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    graph: LoopGraph,
    opinions: Vec<Opinion>,
}

impl Configuration {
    pub fn new(graph: LoopGraph, opinions: Vec<Opinion>) -> Result<Self> {
        if opinions.len() != graph.order() {
            return Err(Error::OpinionLength {
                expected: graph.order(),
                got: opinions.len(),
            });
        }
        Ok(Configuration { graph, opinions })
    }

    pub fn empty() -> Self {
        Self::uniform(LoopGraph::loops_only(0), Opinion::Sad)
    }

    /// Every vertex gets the same opinion (the `H_w` / `S_w` blocks).
    pub fn uniform(graph: LoopGraph, opinion: Opinion) -> Self {
        let opinions = vec![opinion; graph.order()];
        Configuration { graph, opinions }
    }

    pub fn happy_block(graph: LoopGraph) -> Self {
        Self::uniform(graph, Opinion::Happy)
    }

    pub fn sad_block(graph: LoopGraph) -> Self {
        Self::uniform(graph, Opinion::Sad)
    }

    /// Vertices `0..h` happy, the rest sad.
    pub fn with_happy_prefix(graph: LoopGraph, h: usize) -> Result<Self> {
        if h > graph.order() {
            return Err(Error::invalid(format!(
                "happy count {h} exceeds order {}",
                graph.order()
            )));
        }
        let opinions = (0..graph.order())
            .map(|v| if v < h { Opinion::Happy } else { Opinion::Sad })
            .collect();
        Ok(Configuration { graph, opinions })
    }

    pub fn graph(&self) -> &LoopGraph {
        &self.graph
    }

    pub fn opinions(&self) -> &[Opinion] {
        &self.opinions
    }

    pub fn opinion(&self, v: usize) -> Opinion {
        self.opinions[v]
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn is_happy(&self, v: usize) -> bool {
        self.opinions[v] == Opinion::Happy
    }

    pub fn happy_count(&self) -> usize {
        self.opinions
            .iter()
            .filter(|&&o| o == Opinion::Happy)
            .count()
    }

    pub fn sad_count(&self) -> usize {
        self.order() - self.happy_count()
    }

    pub fn happy_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(|&v| self.is_happy(v))
    }

    pub fn sad_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(|&v| !self.is_happy(v))
    }

    /// Same graph, opinions rewritten vertex by vertex.
    pub fn map_opinions(&self, mut f: impl FnMut(usize, Opinion) -> Opinion) -> Self {
        let opinions = self
            .opinions
            .iter()
            .enumerate()
            .map(|(v, &o)| f(v, o))
            .collect();
        Configuration {
            graph: self.graph.clone(),
            opinions,
        }
    }

    /// Happy set packed in the same word layout as adjacency rows.
    pub(crate) fn happy_mask(&self) -> Vec<u64> {
        let mut mask = vec![0u64; self.graph.words()];
        for v in self.happy_vertices() {
            mask[v / WORD_BITS] |= 1 << (v % WORD_BITS);
        }
        mask
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn feasibility_parity() {
        assert!(regular_graph_feasible(5, 3));
        assert!(!regular_graph_feasible(4, 5));
        assert!(regular_graph_feasible(6, 3));
        assert!(!regular_graph_feasible(5, 4));
        assert!(regular_graph_feasible(1, 1));
    }

    #[test]
    fn circulant_five_three_is_a_cycle() {
        let g = make_circulant(5, 3).unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        for v in 0..5 {
            assert!(g.has_edge(v, (v + 1) % 5));
            assert!(g.has_edge(v, v));
            assert!(!g.has_edge(v, (v + 2) % 5));
        }
    }

    #[test]
    fn circulant_single_vertex() {
        let g = make_circulant(1, 1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn circulant_even_degree_uses_antipode() {
        let g = make_circulant(6, 4).unwrap();
        for v in 0..6 {
            // direct count of the closed neighborhood
            let count = (0..6).filter(|&w| g.has_edge(v, w)).count();
            assert_eq!(count, 4);
            assert!(g.has_edge(v, (v + 3) % 6));
        }
    }

    #[test]
    fn circulant_rejects_infeasible() {
        assert_eq!(
            make_circulant(5, 4),
            Err(Error::NoSuchRegularGraph { n: 5, degree: 4 })
        );
        assert!(make_circulant(3, 5).is_err());
        assert!(make_circulant(3, 0).is_err());
    }

    #[test]
    fn wide_graph_spans_multiple_words() {
        let g = make_circulant(131, 9).unwrap();
        assert_eq!(g.regular_degree(), Some(9));
        assert!(g.has_edge(0, 130));
        assert!(g.has_edge(63, 64));
        let nbrs: Vec<_> = g.neighbors(127).collect();
        assert_eq!(nbrs, vec![0, 123, 124, 125, 126, 127, 128, 129, 130]);
    }

    #[test]
    fn from_edges_validates_range() {
        assert!(matches!(
            LoopGraph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        let g = LoopGraph::from_edges(3, [(0, 1), (1, 0), (2, 2)]).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.degree(2), 1);
    }

    #[test]
    fn configuration_length_checked() {
        let g = LoopGraph::loops_only(2);
        assert!(Configuration::new(g.clone(), vec![Opinion::Happy]).is_err());
        let c = Configuration::with_happy_prefix(g, 1).unwrap();
        assert_eq!(c.happy_count() + c.sad_count(), 2);
        assert!(c.is_happy(0) && !c.is_happy(1));
    }
}

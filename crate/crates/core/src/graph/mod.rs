//! Simple undirected graphs on dense vertex ids with bitset adjacency rows.

mod bits;
mod canon;
pub mod embed;
mod io;
pub mod named;

pub use bits::{for_each_bit, BitRow};
pub use canon::{canonical_form, enumerate_graphs, CanonicalForm, CANON_MAX_VERTICES};
pub use embed::{
    arc_orbits, automorphism_count, count_copies, count_embeddings, edge_orbits, embed_exists,
    SearchPlan, AUT_MAX_VERTICES,
};
pub use io::{emit_graph6, emit_json, parse_graph6, parse_json, EdgeListJson};

use std::collections::VecDeque;

use crate::error::GraphError;

/// An unordered vertex pair stored as `(min, max)`.
pub type Edge = (usize, usize);

/// Normalizes a pair so the smaller endpoint comes first.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    deg: Vec<u32>,
    m: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph { n, words, rows: vec![0; words * n], deg: vec![0; n], m: 0 }
    }

    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.deg[u] as usize
    }

    pub fn degrees(&self) -> &[u32] {
        &self.deg
    }

    pub fn min_degree(&self) -> usize {
        self.deg.iter().copied().min().unwrap_or(0) as usize
    }

    pub fn max_degree(&self) -> usize {
        self.deg.iter().copied().max().unwrap_or(0) as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && (self.rows[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    fn try_add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n: self.n });
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        Ok(self.add_edge(u, v))
    }

    /// Adds `uv`; returns false if it was already present. Panics on loops or bad ids.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u != v && u < self.n && v < self.n, "bad edge ({u},{v}) for n={}", self.n);
        if self.has_edge(u, v) {
            return false;
        }
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
        self.deg[u] += 1;
        self.deg[v] += 1;
        self.m += 1;
        true
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
        self.deg[u] -= 1;
        self.deg[v] -= 1;
        self.m -= 1;
        true
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.add_edge(u, v);
        g
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.remove_edge(u, v);
        g
    }

    /// Appends `extra` isolated vertices, keeping existing ids.
    pub fn grow(&self, extra: usize) -> Graph {
        let mut g = Graph::empty(self.n + extra);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        g
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        BitRow(self.row(u)).iter()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_vec(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    pub fn non_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| ((u + 1)..self.n).filter(move |&v| !self.has_edge(u, v)).map(move |v| (u, v)))
    }

    pub fn is_complete(&self) -> bool {
        self.m == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.non_edges() {
            g.add_edge(u, v);
        }
        g
    }

    /// Subgraph induced on `vs`; vertex `vs[i]` becomes `i`.
    pub fn induced(&self, vs: &[usize]) -> Graph {
        let mut g = Graph::empty(vs.len());
        for i in 0..vs.len() {
            for j in (i + 1)..vs.len() {
                if self.has_edge(vs[i], vs[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n <= other.n && self.edges().all(|(u, v)| other.has_edge(u, v))
    }

    /// Edge union; the result has `max(n)` vertices.
    pub fn union(&self, other: &Graph) -> Graph {
        let mut g = if self.n >= other.n { self.clone() } else { other.clone() };
        let small = if self.n >= other.n { other } else { self };
        for (u, v) in small.edges() {
            g.add_edge(u, v);
        }
        g
    }

    /// Disjoint union with `other`'s vertices shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = self.grow(other.n);
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g
    }

    /// BFS distances from a source set; `None` marks unreachable vertices.
    pub fn distances_from(&self, sources: &[usize], limit: Option<usize>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            if limit.is_some_and(|l| d >= l) {
                continue;
            }
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Component id per vertex, numbered in order of smallest member.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = next;
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |c| c + 1)
    }

    /// Connected in the usual sense; the empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Connectivity after deleting the vertices flagged in `removed`.
    pub fn is_connected_without(&self, removed: &[bool]) -> bool {
        let Some(start) = (0..self.n).find(|&v| !removed[v]) else {
            return true;
        };
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !removed[v] && !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == removed.iter().filter(|&&r| !r).count()
    }

    /// Diameter of a connected graph; `None` if disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.distances_from(&[s], None) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// 2-colouring by BFS with the smallest vertex of each component on side 0.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// True iff `side` is a proper 2-colouring of this graph.
    pub fn respects_sides(&self, side: &[u8]) -> bool {
        self.edges().all(|(u, v)| side[u] != side[v])
    }

    pub fn is_k_connected(&self, k: usize) -> bool {
        is_k_connected(self, k)
    }
}

/// `v(G) > k` and removing any `k − 1` or fewer vertices leaves `G` connected.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    if g.n() <= k {
        return false;
    }
    let mut removed = vec![false; g.n()];
    fn rec(g: &Graph, removed: &mut [bool], start: usize, left: usize) -> bool {
        if !g.is_connected_without(removed) {
            return false;
        }
        if left == 0 {
            return true;
        }
        for v in start..g.n() {
            removed[v] = true;
            let ok = rec(g, removed, v + 1, left - 1);
            removed[v] = false;
            if !ok {
                return false;
            }
        }
        true
    }
    rec(g, &mut removed, 0, k.saturating_sub(1))
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let g = petersen();
        assert_eq!(g.degrees().iter().map(|&d| d as usize).sum::<usize>(), 2 * g.edge_count());
        assert_eq!(g.edge_count(), 15);
    }

    #[test]
    fn rejects_loops_and_bad_ids() {
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn connectivity_examples() {
        assert!(complete(4).is_k_connected(3));
        assert!(cycle(5).is_k_connected(2));
        assert!(!cycle(5).is_k_connected(3));
        assert!(complete(5).without_edge(0, 1).is_k_connected(3));
        assert!(!complete(4).is_k_connected(4));
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let mut g = Graph::empty(130);
        g.add_edge(0, 129);
        g.add_edge(63, 64);
        assert!(g.has_edge(129, 0) && g.has_edge(64, 63));
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![129]);
        assert_eq!(g.edge_vec(), vec![(0, 129), (63, 64)]);
    }

    #[test]
    fn bipartition_and_diameter() {
        assert!(cube().is_bipartite());
        assert!(!cycle(5).is_bipartite());
        assert_eq!(cycle(7).diameter(), Some(3));
        assert_eq!(Graph::empty(2).diameter(), None);
    }
}

//! Canonical forms by exhaustive permutation search, and isomorphism-class enumeration.

use std::collections::BTreeMap;

use super::Graph;
use crate::error::GraphError;

pub const CANON_MAX_VERTICES: usize = 9;

/// The lexicographically largest upper-triangle adjacency string over all
/// vertex orders, read column by column (the graph6 bit order).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm {
    n: u8,
    code: u64,
}

impl CanonicalForm {
    pub fn bytes(&self) -> Vec<u8> {
        let mut out = vec![self.n];
        out.extend_from_slice(&self.code.to_be_bytes());
        out
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// The canonical representative graph.
    pub fn graph(&self) -> Graph {
        let n = self.n as usize;
        let total = n * n.saturating_sub(1) / 2;
        let mut g = Graph::empty(n);
        let mut bit = total;
        for j in 1..n {
            for i in 0..j {
                bit -= 1;
                if (self.code >> bit) & 1 == 1 {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, GraphError> {
    let n = g.n();
    if n > CANON_MAX_VERTICES {
        return Err(GraphError::TooLarge { what: "canonical form", n, max: CANON_MAX_VERTICES });
    }
    let total = n * n.saturating_sub(1) / 2;
    let mut best: Option<u64> = None;
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(g, &mut order, &mut used, 0, 0, total, &mut best);
    Ok(CanonicalForm { n: n as u8, code: best.unwrap_or(0) })
}

fn search(g: &Graph, order: &mut Vec<usize>, used: &mut [bool], code: u64, bits: usize, total: usize, best: &mut Option<u64>) {
    let n = g.n();
    if order.len() == n {
        if best.is_none_or(|b| code > b) {
            *best = Some(code);
        }
        return;
    }
    for v in 0..n {
        if used[v] {
            continue;
        }
        let mut c = code;
        for &u in order.iter() {
            c = (c << 1) | g.has_edge(u, v) as u64;
        }
        let nb = bits + order.len();
        if let Some(b) = *best {
            if c < b >> (total - nb) {
                continue;
            }
        }
        used[v] = true;
        order.push(v);
        search(g, order, used, c, nb, total, best);
        order.pop();
        used[v] = false;
    }
}

/// One canonical representative per isomorphism class on `n` vertices,
/// ordered by edge count and then by canonical code.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    if n > CANON_MAX_VERTICES {
        return Err(GraphError::TooLarge { what: "graph enumeration", n, max: CANON_MAX_VERTICES });
    }
    let mut level: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
    let empty = canonical_form(&Graph::empty(n))?;
    level.insert(empty.clone(), empty.graph());
    let mut out: Vec<Graph> = Vec::new();
    while !level.is_empty() {
        let mut next: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
        for g in level.values() {
            for (u, v) in g.non_edges() {
                let cf = canonical_form(&g.with_edge(u, v))?;
                next.entry(cf).or_insert_with_key(|cf| cf.graph());
            }
        }
        out.extend(level.into_values());
        level = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::named::*;
    use super::*;

    /// Burnside count of unlabeled graphs: average of 2^(pair orbits) over S_n.
    fn burnside_count(n: usize) -> u64 {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total: u128 = 0;
        let mut count: u128 = 0;
        loop {
            let mut seen = vec![vec![false; n]; n];
            let mut orbits = 0u32;
            for i in 0..n {
                for j in (i + 1)..n {
                    if seen[i][j] {
                        continue;
                    }
                    orbits += 1;
                    let (mut a, mut b) = (i, j);
                    while !seen[a.min(b)][a.max(b)] {
                        seen[a.min(b)][a.max(b)] = true;
                        a = perm[a];
                        b = perm[b];
                    }
                }
            }
            total += 1u128 << orbits;
            count += 1;
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        (total / count) as u64
    }

    #[test]
    fn relabeling_invariance() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, &[(2, 0), (0, 1)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert_ne!(canonical_form(&complete(3)).unwrap(), canonical_form(&path(3)).unwrap());
        let p = petersen().induced(&[0, 1, 2, 3, 4, 5, 6, 7, 8]);
        let q = p.relabel(&[4, 8, 0, 2, 6, 1, 3, 5, 7]);
        assert_eq!(canonical_form(&p).unwrap(), canonical_form(&q).unwrap());
    }

    #[test]
    fn representative_round_trips() {
        let g = wheel(5);
        let cf = canonical_form(&g).unwrap();
        assert_eq!(canonical_form(&cf.graph()).unwrap(), cf);
        assert_eq!(cf.graph().edge_count(), g.edge_count());
    }

    #[test]
    fn class_counts_match_burnside() {
        let expected = [1u64, 1, 2, 4, 11, 34, 156, 1044];
        for n in 0..=7 {
            assert_eq!(burnside_count(n), expected[n]);
            assert_eq!(enumerate_graphs(n).unwrap().len() as u64, expected[n], "n={n}");
        }
    }

    #[test]
    fn enumeration_agrees_with_labeled_dedup() {
        for n in 1..=5 {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let mut forms = std::collections::HashSet::new();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<_> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect();
                forms.insert(canonical_form(&Graph::from_edges(n, &edges).unwrap()).unwrap());
            }
            assert_eq!(forms.len(), enumerate_graphs(n).unwrap().len());
        }
    }

    #[test]
    fn bound_is_enforced() {
        assert!(canonical_form(&Graph::empty(10)).is_err());
        assert!(enumerate_graphs(10).is_err());
    }
}

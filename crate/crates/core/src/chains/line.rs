use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{default_ordering, simple_chain, Chain, ChainCollection, CollectionKind};
use crate::error::{ChainError, GraphError};
use crate::graph::Graph;

/// A uniform hypergraph on vertices `0..n`; each edge is stored in placement order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearHypergraph {
    pub n: usize,
    pub uniformity: usize,
    pub edges: Vec<Vec<usize>>,
}

impl LinearHypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self, ChainError> {
        let uniformity = edges.first().map_or(0, Vec::len);
        for e in &edges {
            let mut s = e.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != e.len() || e.len() != uniformity || s.last().is_some_and(|&v| v >= n) {
                return Err(ChainError::Parameters("edges must be distinct-vertex sets of one size within 0..n".into()));
            }
        }
        Ok(LinearHypergraph { n, uniformity, edges })
    }

    /// Every two edges share at most one vertex.
    pub fn is_linear(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        for e in &self.edges {
            for (i, &a) in e.iter().enumerate() {
                for &b in &e[i + 1..] {
                    if !seen.insert((a.min(b), a.max(b))) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Length of the shortest Berge cycle, `None` when there is none. Computed as
/// half the girth of the vertex-edge incidence graph.
pub fn berge_girth(hg: &LinearHypergraph) -> Option<usize> {
    let n = hg.n + hg.edges.len();
    let mut adj = vec![Vec::new(); n];
    for (i, e) in hg.edges.iter().enumerate() {
        for &v in e {
            adj[v].push(hg.n + i);
            adj[hg.n + i].push(v);
        }
    }
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for s in 0..n {
        if adj[s].is_empty() {
            continue;
        }
        let mut touched = vec![s];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    touched.push(v);
                    queue.push_back(v);
                } else if parent[u] != v {
                    best = best.min(dist[u] + dist[v] + 1);
                }
            }
        }
        for v in touched {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
    }
    (best != usize::MAX).then_some(best / 2)
}

/// Consecutive failed edge attempts after which the greedy builder stops.
pub const GREEDY_STALL_LIMIT: usize = 64;

/// Random `l`-uniform hypergraph on `n` vertices with Berge girth at least
/// `g`. Each edge grows one vertex at a time, and a vertex is allowed only if
/// every vertex already chosen is at Berge distance at least `g − 1` from it,
/// which is exactly the condition that the new edge closes no cycle shorter
/// than `g`. Stops after `max_edges` edges or a run of failed attempts.
pub fn greedy_girth_hypergraph(n: usize, l: usize, g: usize, max_edges: usize, seed: u64) -> LinearHypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
    let radius = g.saturating_sub(2);
    let mut stalls = 0;
    let mut blocked = vec![false; n];
    let mut depth = vec![usize::MAX; n];
    while edges.len() < max_edges && stalls < GREEDY_STALL_LIMIT && l >= 1 && l <= n {
        blocked.iter_mut().for_each(|b| *b = false);
        let mut chosen = Vec::with_capacity(l);
        let mut pool: Vec<usize> = (0..n).collect();
        pool.shuffle(&mut rng);
        for &v in &pool {
            if chosen.len() == l {
                break;
            }
            if blocked[v] {
                continue;
            }
            chosen.push(v);
            // Block the Berge ball of radius g − 2 around v.
            let mut queue = VecDeque::from([v]);
            depth[v] = 0;
            let mut touched = vec![v];
            while let Some(u) = queue.pop_front() {
                blocked[u] = true;
                if depth[u] == radius {
                    continue;
                }
                for &e in &at[u] {
                    for &w in &edges[e] {
                        if depth[w] == usize::MAX {
                            depth[w] = depth[u] + 1;
                            touched.push(w);
                            queue.push_back(w);
                        }
                    }
                }
            }
            for w in touched {
                depth[w] = usize::MAX;
            }
        }
        if chosen.len() < l {
            stalls += 1;
            continue;
        }
        stalls = 0;
        chosen.sort_unstable();
        for &v in &chosen {
            at[v].push(edges.len());
        }
        edges.push(chosen);
    }
    LinearHypergraph { n, uniformity: l, edges }
}

/// Tries this many random two-colourings in bipartite mode.
pub const BIPARTITION_RETRIES: usize = 1000;

/// One simple chain of length `⌊L / 4(k−2)⌋` laid on each line. In bipartite
/// mode a random two-colouring of the hypergraph vertices is drawn (retrying
/// until every line has enough vertices of both colours) and each chain's
/// sides are placed on the matching colours, so the union stays bipartite.
pub fn line_collection(
    h: &Graph,
    hg: &LinearHypergraph,
    ordering: Option<&[usize]>,
    bipartite: bool,
    seed: u64,
) -> Result<ChainCollection, ChainError> {
    let k = h.n();
    let l = hg.uniformity;
    if hg.edges.is_empty() {
        return Err(ChainError::Parameters("hypergraph has no edges".into()));
    }
    if k < 4 || l < 4 * (k - 2) + 2 {
        return Err(ChainError::Parameters(format!("lines need at least {} vertices", 4 * k.saturating_sub(2) + 2)));
    }
    let ordering = match ordering {
        Some(o) => o.to_vec(),
        None => default_ordering(h).ok_or_else(|| ChainError::Ordering("pattern has no two disjoint edges".into()))?,
    };
    let tau = l / (4 * (k - 2));
    let base = simple_chain(h, &ordering, tau)?;
    let positions = base.n();

    let placements: Vec<Vec<usize>> = if bipartite {
        let sides = base.host().bipartition().ok_or(GraphError::NotBipartite)?;
        let need = [sides.iter().filter(|&&s| s == 0).count(), sides.iter().filter(|&&s| s == 1).count()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut found = None;
        for _ in 0..BIPARTITION_RETRIES {
            let colour: Vec<u8> = (0..hg.n).map(|_| rng.random_range(0..2u8)).collect();
            let fits = hg.edges.iter().all(|e| (0..2).all(|c| e.iter().filter(|&&v| colour[v] == c).count() >= need[c as usize]));
            if fits {
                found = Some(colour);
                break;
            }
        }
        let colour = found.ok_or_else(|| ChainError::Precondition("no two-colouring gave every line enough vertices of each colour".into()))?;
        hg.edges
            .iter()
            .map(|e| {
                let (zero, one): (Vec<usize>, Vec<usize>) = e.iter().partition(|&&v| colour[v] == 0);
                let mut by_colour = [zero.into_iter(), one.into_iter()];
                sides.iter().map(|&s| by_colour[s as usize].next().unwrap()).collect()
            })
            .collect()
    } else {
        hg.edges.iter().map(|e| e[..positions].to_vec()).collect()
    };

    let chains = placements
        .iter()
        .map(|place| {
            let copies = base.copies().iter().map(|m| m.iter().map(|&t| place[t]).collect()).collect();
            let links = base.links().iter().map(|&(a, b)| (place[a], place[b])).collect();
            let (x, y) = base.origin();
            Chain::new(h.clone(), copies, links, (place[x], place[y]), hg.n).map(|c| c.with_ordering(ordering.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let names: Vec<String> = (0..hg.n).map(|v| format!("z{v}")).collect();
    let chains = chains.into_iter().map(|c| c.with_names(names.clone())).collect::<Result<Vec<_>, _>>()?;
    let index = (0..hg.edges.len() as u64).collect();
    ChainCollection::new(CollectionKind::Line { hypergraph: hg.clone(), bipartite }, index, chains, names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{verify_collection, Strength, DEFAULT_COPY_BUDGET};
    use crate::graph::named::{complete, complete_bipartite};

    fn fano() -> LinearHypergraph {
        let lines = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]];
        LinearHypergraph::new(7, lines.iter().map(|l| l.to_vec()).collect()).unwrap()
    }

    #[test]
    fn girth_examples() {
        assert_eq!(berge_girth(&fano()), Some(3));
        assert!(fano().is_linear());
        let double = LinearHypergraph::new(4, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        assert_eq!(berge_girth(&double), Some(2));
        assert!(!double.is_linear());
        let single = LinearHypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(berge_girth(&single), None);
        let triangle = LinearHypergraph::new(6, vec![vec![0, 1, 3], vec![1, 2, 4], vec![2, 0, 5]]).unwrap();
        assert_eq!(berge_girth(&triangle), Some(3));
    }

    #[test]
    fn greedy_respects_girth() {
        for (g, seed) in [(3, 1), (4, 2), (5, 3), (6, 4)] {
            let hg = greedy_girth_hypergraph(120, 6, g, 40, seed);
            assert!(!hg.edges.is_empty());
            assert!(hg.is_linear());
            assert!(berge_girth(&hg).is_none_or(|x| x >= g), "g={g}");
        }
    }

    #[test]
    fn line_chains_on_a_girth_six_hypergraph() {
        let hg = greedy_girth_hypergraph(150, 14, 6, 5, 7);
        assert!(hg.edges.len() >= 2);
        let coll = line_collection(&complete(5), &hg, None, false, 0).unwrap();
        assert_eq!(coll.chains()[0].len(), 1);
        assert!(verify_collection(&coll, Strength::Strong, DEFAULT_COPY_BUDGET).passed());
    }

    #[test]
    fn bipartite_placement() {
        let hg = greedy_girth_hypergraph(400, 40, 4, 4, 11);
        let coll = line_collection(&complete_bipartite(3, 3), &hg, None, true, 5).unwrap();
        assert!(coll.union_host().is_bipartite());
        let single = LinearHypergraph::new(hg.n, vec![hg.edges[0].clone()]).unwrap();
        assert_eq!(line_collection(&complete(5), &single, None, false, 0).unwrap().len(), 1);
    }
}

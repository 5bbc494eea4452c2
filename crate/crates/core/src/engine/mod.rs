//! The synchronous H-bootstrap process.

mod trace;

pub use trace::{ProcessTrace, TraceJson, TRACE_SCHEMA};

use rayon::prelude::*;

use crate::error::GraphError;
use crate::graph::{arc_orbits, edge, embed::Scratch, Edge, Graph, SearchPlan};

pub const SUPERGRAPH_MAX_VERTICES: usize = 7;
const PARALLEL_MIN_CANDIDATES: usize = 256;

/// The activation test for one pattern: a non-edge `uv` activates when some
/// copy of `H` in `G + uv` uses `uv`.
#[derive(Clone, Debug)]
pub struct Rule {
    pattern: Graph,
    plans: Vec<SearchPlan>,
    dirty_radius: Option<usize>,
}

impl Rule {
    pub fn new(h: &Graph) -> Self {
        let plans = arc_orbits(h)
            .into_iter()
            .map(|(a, b)| SearchPlan::new(h, &[a, b], Some((a, b))))
            .collect();
        Rule { pattern: h.clone(), plans, dirty_radius: dirty_radius(h) }
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    /// Largest diameter of `H − e` over edges `e`, when every `H − e` is connected.
    pub fn dirty_radius(&self) -> Option<usize> {
        self.dirty_radius
    }

    pub fn activates(&self, g: &Graph, u: usize, v: usize, scratch: &mut Scratch) -> bool {
        !g.has_edge(u, v) && self.plans.iter().any(|p| p.exists(g, &[u, v], scratch))
    }

    fn filter(&self, g: &Graph, candidates: Vec<Edge>) -> Vec<Edge> {
        if candidates.len() < PARALLEL_MIN_CANDIDATES {
            let mut scratch = Scratch::default();
            candidates.into_iter().filter(|&(u, v)| self.activates(g, u, v, &mut scratch)).collect()
        } else {
            candidates
                .into_par_iter()
                .map_init(Scratch::default, |s, (u, v)| ((u, v), self.activates(g, u, v, s)))
                .filter(|&(_, hit)| hit)
                .map(|(e, _)| e)
                .collect()
        }
    }

    /// All activating non-edges of `g`, sorted.
    pub fn step(&self, g: &Graph) -> Vec<Edge> {
        if self.pattern.n() > g.n() || self.plans.is_empty() {
            return Vec::new();
        }
        self.filter(g, g.non_edges().collect())
    }

    /// Non-edges that can activate in the round after `fresh` were added.
    fn dirty_candidates(&self, g: &Graph, fresh: &[Edge], radius: usize) -> Vec<Edge> {
        let sources: Vec<usize> = fresh.iter().flat_map(|&(u, v)| [u, v]).collect();
        let near = g.distances_from(&sources, Some(radius));
        let mut out = Vec::new();
        let mut stamp = vec![usize::MAX; g.n()];
        let mut frontier = Vec::new();
        let mut next = Vec::new();
        for u in (0..g.n()).filter(|&u| near[u].is_some()) {
            stamp[u] = u;
            frontier.clear();
            frontier.push(u);
            for _ in 0..radius {
                next.clear();
                for &x in &frontier {
                    for y in g.neighbors(x) {
                        if stamp[y] != u {
                            stamp[y] = u;
                            next.push(y);
                            if y > u && near[y].is_some() && !g.has_edge(u, y) {
                                out.push((u, y));
                            }
                        }
                    }
                }
                std::mem::swap(&mut frontier, &mut next);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn run(&self, g: &Graph, opts: &RunOptions) -> ProcessTrace {
        let n = g.n();
        let max_rounds = opts.max_rounds.unwrap_or(n * n.saturating_sub(1) / 2);
        let mut state = g.clone();
        let mut rounds: Vec<Vec<Edge>> = Vec::new();
        let mut truncated = false;
        loop {
            let added = match (rounds.last(), self.dirty_radius, opts.exact) {
                (Some(fresh), Some(r), false) => {
                    let cands = self.dirty_candidates(&state, fresh, r);
                    self.filter(&state, cands)
                }
                _ => self.step(&state),
            };
            if added.is_empty() {
                break;
            }
            if rounds.len() == max_rounds {
                truncated = true;
                break;
            }
            for &(u, v) in &added {
                state.add_edge(u, v);
            }
            rounds.push(added);
        }
        ProcessTrace::new(g.clone(), rounds, truncated, state)
    }
}

fn dirty_radius(h: &Graph) -> Option<usize> {
    if h.edge_count() == 0 || !h.is_connected() {
        return None;
    }
    let mut worst = 0;
    for (a, b) in h.edges() {
        worst = worst.max(h.without_edge(a, b).diameter()?);
    }
    Some(worst)
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Round cap; `None` means `C(n, 2)`.
    pub max_rounds: Option<usize>,
    /// Re-test every non-edge each round instead of the dirty region only.
    pub exact: bool,
}

impl RunOptions {
    pub fn exact() -> Self {
        RunOptions { max_rounds: None, exact: true }
    }

    pub fn capped(max_rounds: usize) -> Self {
        RunOptions { max_rounds: Some(max_rounds), exact: false }
    }
}

pub fn step(h: &Graph, g: &Graph) -> Vec<Edge> {
    Rule::new(h).step(g)
}

pub fn run(h: &Graph, g: &Graph, opts: &RunOptions) -> ProcessTrace {
    Rule::new(h).run(g, opts)
}

pub fn final_graph(h: &Graph, g: &Graph) -> Graph {
    run(h, g, &RunOptions::default()).final_graph
}

pub fn is_stable(h: &Graph, g: &Graph) -> bool {
    step(h, g).is_empty()
}

pub fn is_self_stable(h: &Graph) -> bool {
    is_stable(h, h)
}

/// Edge intersection of every `H`-stable supergraph of `g` on `V(g)`.
pub fn intersect_stable_supergraphs(h: &Graph, g: &Graph) -> Result<Graph, GraphError> {
    if g.n() > SUPERGRAPH_MAX_VERTICES {
        return Err(GraphError::TooLarge { what: "stable supergraph scan", n: g.n(), max: SUPERGRAPH_MAX_VERTICES });
    }
    let rule = Rule::new(h);
    let missing: Vec<Edge> = g.non_edges().collect();
    let mut meet: Option<Vec<bool>> = None;
    for mask in 0u64..(1u64 << missing.len()) {
        let mut s = g.clone();
        for (i, &(u, v)) in missing.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s.add_edge(u, v);
            }
        }
        if !rule.step(&s).is_empty() {
            continue;
        }
        let present: Vec<bool> = (0..missing.len()).map(|i| mask >> i & 1 == 1).collect();
        meet = Some(match meet {
            None => present,
            Some(m) => m.iter().zip(&present).map(|(a, b)| *a && *b).collect(),
        });
    }
    let meet = meet.expect("the complete graph is always stable");
    let mut out = g.clone();
    for (i, &(u, v)) in missing.iter().enumerate() {
        if meet[i] {
            out.add_edge(u, v);
        }
    }
    Ok(out)
}

/// `φ(G)` for a vertex map `φ` into a graph on `n` vertices.
pub fn push_forward(g: &Graph, map: &[usize], n: usize) -> Graph {
    let mut out = Graph::empty(n);
    for (u, v) in g.edges() {
        let (a, b) = edge(map[u], map[v]);
        out.add_edge(a, b);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn step_examples() {
        assert_eq!(step(&complete(3), &path(3)), vec![(0, 2)]);
        assert_eq!(step(&complete(3), &cycle(5)).len(), 5);
        assert!(step(&complete(3), &complete(5)).is_empty());
    }

    #[test]
    fn run_examples() {
        let t = run(&complete(3), &Graph::from_edges(3, &[(0, 1)]).unwrap(), &RunOptions::default());
        assert_eq!(t.tau, 0);
        let t = run(&complete(3), &path(3), &RunOptions::default());
        assert_eq!(t.tau, 1);
        assert!(t.final_graph.is_complete());
        assert!(final_graph(&complete(3), &cycle(5)).is_complete());
    }

    #[test]
    fn truncation_is_flagged() {
        let t = run(&complete(3), &path(6), &RunOptions::capped(1));
        assert!(t.truncated);
        assert_eq!(t.rounds.len(), 1);
        let t = run(&complete(3), &path(6), &RunOptions::default());
        assert!(!t.truncated);
        assert_eq!(t.tau, 3);
    }

    #[test]
    fn stability_examples() {
        assert!(is_self_stable(&wheel(7)));
        assert!(is_self_stable(&cube()));
        assert!(is_self_stable(&complete(4)));
        assert!(is_self_stable(&complete_bipartite(3, 3)));
        assert!(!is_self_stable(&path(4)));
        assert!(!is_stable(&complete(3), &cycle(5)));
    }

    #[test]
    fn supergraph_meet_examples() {
        let k3 = complete(3);
        assert_eq!(intersect_stable_supergraphs(&k3, &cycle(5)).unwrap(), final_graph(&k3, &cycle(5)));
        assert!(intersect_stable_supergraphs(&k3, &complete(6)).unwrap().is_complete());
        assert!(intersect_stable_supergraphs(&k3, &Graph::empty(8)).is_err());
    }

    #[test]
    fn dirty_radius_values() {
        assert_eq!(Rule::new(&complete(5)).dirty_radius(), Some(2));
        assert_eq!(Rule::new(&cycle(6)).dirty_radius(), Some(5));
        assert_eq!(Rule::new(&path(4)).dirty_radius(), None);
        assert_eq!(Rule::new(&complete(3).disjoint_union(&complete(2))).dirty_radius(), None);
    }

    #[test]
    fn dirty_mode_matches_exact_on_paths_and_cycles() {
        for n in 4..12 {
            for h in [complete(3), cycle(4), cycle(5), complete(4)] {
                let g = path(n).with_edge(0, 2);
                let a = run(&h, &g, &RunOptions::default());
                let b = run(&h, &g, &RunOptions::exact());
                assert_eq!(a.rounds, b.rounds);
            }
        }
    }
}

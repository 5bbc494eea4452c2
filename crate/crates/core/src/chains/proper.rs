use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use super::{Chain, ChainCollection};
use crate::engine::{final_graph, is_self_stable};
use crate::graph::{edge, edge_orbits, embed::Scratch, Edge, Graph, SearchPlan};

/// Cap on embeddings of `H − e` examined by one scan.
pub const DEFAULT_COPY_BUDGET: u64 = 200_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Link `e_link` already lies in the final graph of the earlier copy `copy` (both 1-based).
    EarlyLink { link: usize, copy: usize, edge: Edge },
    /// A copy of `H − missing` with the given vertex images; `homes` are the
    /// copies or chains whose final graphs contain it.
    Copy { missing: Edge, vertices: Vec<usize>, homes: Vec<usize>, detail: String },
    /// Link `link` of chain `chain` lies in the final graph of chain `other` (chain positions 0-based).
    ForeignLink { chain: usize, link: usize, other: usize, edge: Edge },
    SharedEdge { edge: Edge, chains: [usize; 2] },
    SharedVertex { vertex: usize, chains: [usize; 2] },
    Note { note: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Check {
    pub(crate) fn new(name: &str, witness: Option<Witness>) -> Self {
        Check { name: name.into(), holds: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProperReport {
    pub length: usize,
    pub origin: Edge,
    /// No link appears in the final graph of an earlier copy.
    pub links_not_early: Check,
    /// Every copy of `H − e` in the union of final graphs lies in exactly one
    /// copy's final graph and is not covered by the rest of the chain once the
    /// copy's two links are removed.
    pub copies_have_unique_home: Check,
    pub copies_examined: u64,
    /// Set when the budget ran out before the scan finished.
    pub partial: bool,
}

impl ProperReport {
    pub fn passed(&self) -> bool {
        !self.partial && self.links_not_early.holds && self.copies_have_unique_home.holds
    }
}

/// Index of which copies of a chain contain which vertices, with the final
/// graph of the pattern used for every copy.
pub(crate) struct ChainView<'a> {
    pub chain: &'a Chain,
    pub fin_h: &'a Graph,
    by_vertex: Vec<Vec<u32>>,
}

impl<'a> ChainView<'a> {
    pub fn new(chain: &'a Chain, fin_h: &'a Graph) -> Self {
        let mut by_vertex = vec![Vec::new(); chain.n()];
        for (i, map) in chain.copies().iter().enumerate() {
            for &v in map {
                by_vertex[v].push(i as u32);
            }
        }
        ChainView { chain, fin_h, by_vertex }
    }

    fn pos(&self, i: usize, x: usize) -> Option<usize> {
        self.chain.copies()[i].iter().position(|&v| v == x)
    }

    /// Edge of `⟨H_i⟩_H`, `i` 0-based.
    pub fn in_final(&self, i: usize, (x, y): Edge) -> bool {
        matches!((self.pos(i, x), self.pos(i, y)), (Some(a), Some(b)) if self.fin_h.has_edge(a, b))
    }

    pub fn in_copy(&self, i: usize, (x, y): Edge) -> bool {
        matches!((self.pos(i, x), self.pos(i, y)), (Some(a), Some(b)) if self.chain.pattern().has_edge(a, b))
    }

    pub fn copies_with(&self, vs: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = self.by_vertex[vs[0]].iter().map(|&i| i as usize).collect();
        for &v in &vs[1..] {
            out.retain(|i| self.by_vertex[v].contains(&(*i as u32)));
        }
        out
    }

    pub fn in_any_final_except(&self, skip: usize, (x, y): Edge) -> bool {
        self.by_vertex[x]
            .iter()
            .map(|&i| i as usize)
            .any(|i| i != skip && self.in_final(i, (x, y)))
    }

    pub fn union_of_finals(&self) -> Graph {
        let mut g = Graph::empty(self.chain.n());
        for map in self.chain.copies() {
            for (u, v) in self.fin_h.edges() {
                g.add_edge(map[u], map[v]);
            }
        }
        g
    }

    /// Copies of the chain whose final graphs contain every edge in `edges`.
    pub fn homes(&self, vertices: &[usize], edges: &[Edge]) -> Vec<usize> {
        self.copies_with(vertices).into_iter().filter(|&i| edges.iter().all(|&e| self.in_final(i, e))).collect()
    }
}

pub(crate) struct ScanOutcome<W> {
    pub found: Option<W>,
    pub examined: u64,
    pub partial: bool,
}

/// Runs `visit(e, images)` on embeddings of `H − e` into `host` for one
/// representative `e` of every edge orbit, stopping at the first witness.
/// The witness returned is the first in root-vertex order, so results do not
/// depend on scheduling unless the budget runs out.
pub(crate) fn scan_minus_edge_copies<W: Send>(
    h: &Graph,
    host: &Graph,
    budget: u64,
    visit: &(dyn Fn(Edge, &[usize]) -> Option<W> + Sync),
) -> ScanOutcome<W> {
    let examined = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    for e in edge_orbits(h) {
        let root = SearchPlan::new(h, &[], Some(e)).pattern_order()[0];
        let plan = SearchPlan::new(h, &[root], Some(e));
        let found = (0..host.n()).into_par_iter().map_init(Scratch::default, |scratch, v| {
            if host.degree(v) == 0 || exhausted.load(Ordering::Relaxed) {
                return None;
            }
            let mut hit = None;
            plan.search(host, &[v], scratch, &mut |img| {
                if examined.fetch_add(1, Ordering::Relaxed) >= budget {
                    exhausted.store(true, Ordering::Relaxed);
                    return false;
                }
                hit = visit(e, img);
                hit.is_none()
            });
            hit
        });
        if let Some(w) = found.find_map_first(|x| x) {
            return ScanOutcome { found: Some(w), examined: examined.into_inner(), partial: false };
        }
        if exhausted.load(Ordering::Relaxed) {
            break;
        }
    }
    ScanOutcome { found: None, examined: examined.into_inner(), partial: exhausted.into_inner() }
}

pub(crate) fn copy_edges(h: &Graph, missing: Edge, img: &[usize]) -> Vec<Edge> {
    h.edges().filter(|&f| f != missing).map(|(u, v)| edge(img[u], img[v])).collect()
}

fn sorted(img: &[usize]) -> Vec<usize> {
    let mut v = img.to_vec();
    v.sort_unstable();
    v
}

/// The "furthermore" clause: `F` must not fit inside the rest of the picture
/// once the two links of its home copy are removed. `elsewhere` reports edges
/// available outside copy `j`.
fn covered_without_links(view: &ChainView<'_>, j: usize, edges: &[Edge], elsewhere: &dyn Fn(Edge) -> bool) -> bool {
    let (prev, next) = (view.chain.link(j), view.chain.link(j + 1));
    edges
        .iter()
        .all(|&f| f != prev && f != next && (view.in_copy(j, f) || view.in_any_final_except(j, f) || elsewhere(f)))
}

pub fn verify_proper(c: &Chain, budget: u64) -> ProperReport {
    let h = c.pattern();
    let fin_h = final_graph(h, h);
    let view = ChainView::new(c, &fin_h);

    let mut early = None;
    'outer: for i in 1..c.len() {
        let e = c.link(i + 1);
        for j in view.copies_with(&[e.0, e.1]) {
            if j < i && view.in_final(j, e) {
                early = Some(Witness::EarlyLink { link: i + 1, copy: j + 1, edge: e });
                break 'outer;
            }
        }
    }

    let union = view.union_of_finals();
    let scan = scan_minus_edge_copies(h, &union, budget, &|missing, img| {
        let edges = copy_edges(h, missing, img);
        let vertices = sorted(img);
        let homes = view.homes(&vertices, &edges);
        let bad = |detail: &str| {
            Some(Witness::Copy {
                missing,
                vertices: vertices.clone(),
                homes: homes.iter().map(|i| i + 1).collect(),
                detail: detail.into(),
            })
        };
        match homes.as_slice() {
            [] => bad("not inside any single copy's final graph"),
            [j] if covered_without_links(&view, *j, &edges, &|_| false) => bad("covered by the rest of the chain"),
            [_] => None,
            _ => bad("inside several copies' final graphs"),
        }
    });

    ProperReport {
        length: c.len(),
        origin: c.link(0),
        links_not_early: Check::new("links_not_early", early),
        copies_have_unique_home: Check::new("copies_have_unique_home", scan.found),
        copies_examined: scan.examined,
        partial: scan.partial,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strength {
    Proper,
    Strong,
}

#[derive(Clone, Debug, Serialize)]
pub struct CollectionReport {
    pub strength: Strength,
    pub members: Vec<ProperReport>,
    /// No link or origin of one chain lies in another chain's final graph.
    pub links_outside_other_chains: Check,
    /// Every copy of `H − e` in the union lies in exactly one chain's final
    /// graph and is not covered by everything else once its home links are removed.
    pub copies_have_unique_chain: Check,
    /// Final graphs of distinct chains share no edge.
    pub finals_edge_disjoint: Option<Check>,
    /// Every copy of `H − e` in the union lies in some chain's final graph.
    pub copies_within_one_chain: Option<Check>,
    /// The pattern is its own final graph, so the covering clause is implied.
    pub self_stable_shortcut: bool,
    pub copies_examined: u64,
    pub partial: bool,
}

impl CollectionReport {
    pub fn members_proper(&self) -> bool {
        self.members.iter().all(ProperReport::passed)
    }

    pub fn proper(&self) -> bool {
        !self.partial && self.members_proper() && self.links_outside_other_chains.holds && self.copies_have_unique_chain.holds
    }

    /// `None` when only the weaker notion was requested.
    pub fn strongly_proper(&self) -> Option<bool> {
        let (a, b) = (self.finals_edge_disjoint.as_ref()?, self.copies_within_one_chain.as_ref()?);
        Some(!self.partial && self.members_proper() && a.holds && b.holds)
    }

    /// Strong properness must imply properness on every instance.
    pub fn implication_holds(&self) -> bool {
        self.strongly_proper() != Some(true) || self.proper()
    }

    pub fn passed(&self) -> bool {
        match self.strength {
            Strength::Proper => self.proper(),
            Strength::Strong => self.strongly_proper() == Some(true),
        }
    }
}

pub fn verify_collection(coll: &ChainCollection, strength: Strength, budget: u64) -> CollectionReport {
    let h = coll.pattern();
    let fin_h = final_graph(h, h);
    let shortcut = fin_h == *h;
    debug_assert_eq!(shortcut, is_self_stable(h));
    let chains = coll.chains();
    let members: Vec<ProperReport> = chains.par_iter().map(|c| verify_proper(c, budget)).collect();
    let finals = coll.final_graphs();
    let views: Vec<ChainView<'_>> = chains.iter().map(|c| ChainView::new(c, &fin_h)).collect();

    let mut owners: HashMap<Edge, Vec<usize>> = HashMap::new();
    let mut union = Graph::empty(coll.n());
    for (a, f) in finals.iter().enumerate() {
        for e in f.edges() {
            owners.entry(e).or_default().push(a);
            union.add_edge(e.0, e.1);
        }
    }
    let owners_of = |edges: &[Edge]| -> Vec<usize> {
        let mut out = owners[&edges[0]].clone();
        for e in &edges[1..] {
            let o = &owners[e];
            out.retain(|a| o.contains(a));
        }
        out
    };

    let mut foreign = None;
    'outer: for (a, c) in chains.iter().enumerate() {
        for i in 0..=c.len() {
            let e = c.link(i);
            if let Some(&b) = owners.get(&e).and_then(|o| o.iter().find(|&&b| b != a)) {
                foreign = Some(Witness::ForeignLink { chain: a, link: i, other: b, edge: e });
                break 'outer;
            }
        }
    }

    let mut examined = 0;
    let mut partial = false;
    let unique = scan_minus_edge_copies(h, &union, budget, &|missing, img| {
        let edges = copy_edges(h, missing, img);
        let vertices = sorted(img);
        let homes = owners_of(&edges);
        let bad = |homes: Vec<usize>, detail: &str| {
            Some(Witness::Copy { missing, vertices: vertices.clone(), homes, detail: detail.into() })
        };
        let &[b] = homes.as_slice() else {
            return bad(homes, "not inside exactly one chain's final graph");
        };
        if shortcut {
            return None;
        }
        let view = &views[b];
        let js = view.homes(&vertices, &edges);
        let &[j] = js.as_slice() else {
            return bad(vec![b], "home chain has no unique home copy");
        };
        let elsewhere = |f: Edge| owners.get(&f).is_some_and(|o| o.iter().any(|&a| a != b));
        if covered_without_links(view, j, &edges, &elsewhere) {
            return bad(vec![b], "covered by the other chains and the rest of its own chain");
        }
        None
    });
    examined += unique.examined;
    partial |= unique.partial;

    let (disjoint, within) = if strength == Strength::Strong {
        let shared = owners
            .iter()
            .filter(|(_, o)| o.len() > 1)
            .min_by_key(|(e, _)| **e)
            .map(|(&e, o)| Witness::SharedEdge { edge: e, chains: [o[0], o[1]] });
        let inside = scan_minus_edge_copies(h, &union, budget, &|missing, img| {
            let edges = copy_edges(h, missing, img);
            owners_of(&edges).is_empty().then(|| Witness::Copy {
                missing,
                vertices: sorted(img),
                homes: Vec::new(),
                detail: "spans several chains".into(),
            })
        });
        examined += inside.examined;
        partial |= inside.partial;
        (Some(Check::new("finals_edge_disjoint", shared)), Some(Check::new("copies_within_one_chain", inside.found)))
    } else {
        (None, None)
    };

    CollectionReport {
        strength,
        members,
        links_outside_other_chains: Check::new("links_outside_other_chains", foreign),
        copies_have_unique_chain: Check::new("copies_have_unique_chain", unique.found),
        finals_edge_disjoint: disjoint,
        copies_within_one_chain: within,
        self_stable_shortcut: shortcut,
        copies_examined: examined,
        partial,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{simple_chain, wheel_ordering};
    use crate::graph::named::{complete, wheel};

    #[test]
    fn simple_k4_chain_hosts_a_stray_copy() {
        let c = simple_chain(&complete(4), &[0, 1, 2, 3], 4).unwrap();
        let r = verify_proper(&c, DEFAULT_COPY_BUDGET);
        assert!(r.links_not_early.holds);
        assert!(!r.copies_have_unique_home.holds);
        match r.copies_have_unique_home.witness.unwrap() {
            Witness::Copy { vertices, homes, .. } => {
                // v1, v3, v4, v5 in 1-based names.
                assert_eq!(vertices, vec![0, 2, 3, 4]);
                assert!(homes.is_empty());
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn k5_and_wheel_chains_are_proper() {
        for tau in [1, 2, 5, 7] {
            let c = simple_chain(&complete(5), &[0, 1, 2, 3, 4], tau).unwrap();
            assert!(verify_proper(&c, DEFAULT_COPY_BUDGET).passed(), "K5 tau={tau}");
        }
        for hub in 3..=6 {
            let c = simple_chain(&wheel(7), &wheel_ordering(7, hub).unwrap(), 5).unwrap();
            assert!(verify_proper(&c, DEFAULT_COPY_BUDGET).passed(), "hub at {hub}");
        }
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let c = simple_chain(&complete(5), &[0, 1, 2, 3, 4], 4).unwrap();
        let r = verify_proper(&c, 10);
        assert!(r.partial);
        assert!(!r.passed());
    }
}

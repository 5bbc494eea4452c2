//! Chains of pattern copies glued along link edges, collections of chains on a
//! shared vertex universe, and the checks that make a chain force a long process.

mod collection;
mod dilation;
mod ladder;
mod line;
mod link;
mod proper;

pub use collection::{collection_edge_owners, ChainCollection, CollectionJson, CollectionKind, COLLECTION_SCHEMA};
pub use dilation::{
    bip_dilation_collection, bip_labels, dilation_collection, dilation_edge_equation_check, four_cycles,
    four_cycle_trichotomy_check, positive_slope_check, select_dilations, sparsify_bip_dilation, SparsifyReport,
};
pub use ladder::{ladder_collection, ladder_crossing_check, ladder_slice_check};
pub use line::{berge_girth, greedy_girth_hypergraph, line_collection, LinearHypergraph};
pub use link::{ends_disjoint_check, link_chains, LinkMode};
pub use proper::{
    verify_collection, verify_proper, Check, CollectionReport, ProperReport, Strength, Witness, DEFAULT_COPY_BUDGET,
};

use serde::{Deserialize, Serialize};

use crate::error::ChainError;
use crate::graph::{edge, Edge, EdgeListJson, Graph};

pub const CHAIN_SCHEMA: &str = "percolab.chain/1";

/// A sequence of copies `H_1, …, H_τ` of the pattern with link edges
/// `e_i ∈ E(H_i) ∩ E(H_{i+1})` and an origin `e_0 ∈ E(H_1)` other than `e_1`.
///
/// Copies are vertex maps from the pattern into the host universe. Link edges
/// keep the orientation they were built with, which linking relies on.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    pattern: Graph,
    ordering: Option<Vec<usize>>,
    copies: Vec<Vec<usize>>,
    links: Vec<(usize, usize)>,
    origin: (usize, usize),
    host: Graph,
    names: Vec<String>,
}

fn maps_edge(pattern: &Graph, map: &[usize], (x, y): (usize, usize)) -> bool {
    match (map.iter().position(|&v| v == x), map.iter().position(|&v| v == y)) {
        (Some(a), Some(b)) => pattern.has_edge(a, b),
        _ => false,
    }
}

impl Chain {
    /// Checks the chain axioms and builds the host on `n` vertices.
    pub fn new(
        pattern: Graph,
        copies: Vec<Vec<usize>>,
        links: Vec<(usize, usize)>,
        origin: (usize, usize),
        n: usize,
    ) -> Result<Self, ChainError> {
        let k = pattern.n();
        if copies.is_empty() {
            return Err(ChainError::Parameters("a chain needs at least one copy".into()));
        }
        if links.len() != copies.len() {
            return Err(ChainError::Parameters(format!("{} copies but {} link edges", copies.len(), links.len())));
        }
        let mut host = Graph::empty(n);
        for (i, map) in copies.iter().enumerate() {
            if map.len() != k {
                return Err(ChainError::Parameters(format!("copy {} maps {} of {k} vertices", i + 1, map.len())));
            }
            let mut seen = map.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != k || seen.last().is_some_and(|&v| v >= n) {
                return Err(ChainError::Parameters(format!("copy {} is not injective into {n} vertices", i + 1)));
            }
            for (u, v) in pattern.edges() {
                host.add_edge(map[u], map[v]);
            }
        }
        for (i, &e) in links.iter().enumerate() {
            if !maps_edge(&pattern, &copies[i], e) {
                return Err(ChainError::Parameters(format!("link {} is not an edge of copy {}", i + 1, i + 1)));
            }
            if i + 1 < copies.len() && !maps_edge(&pattern, &copies[i + 1], e) {
                return Err(ChainError::Parameters(format!("link {} is not an edge of copy {}", i + 1, i + 2)));
            }
        }
        if !maps_edge(&pattern, &copies[0], origin) {
            return Err(ChainError::Parameters("origin is not an edge of the first copy".into()));
        }
        if edge(origin.0, origin.1) == edge(links[0].0, links[0].1) {
            return Err(ChainError::Parameters("origin coincides with the first link".into()));
        }
        let names = (1..=n).map(|i| format!("v{i}")).collect();
        Ok(Chain { pattern, ordering: None, copies, links, origin, host, names })
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    /// Position order of the pattern vertices when the chain is simple.
    pub fn ordering(&self) -> Option<&[usize]> {
        self.ordering.as_deref()
    }

    pub fn is_simple(&self) -> bool {
        self.ordering.is_some()
    }

    pub fn copies(&self) -> &[Vec<usize>] {
        &self.copies
    }

    /// Oriented link edges `e_1, …, e_τ`.
    pub fn links(&self) -> &[(usize, usize)] {
        &self.links
    }

    /// `e_i` for `i ∈ 0..=τ` with `e_0` the origin, normalized.
    pub fn link(&self, i: usize) -> Edge {
        let (a, b) = if i == 0 { self.origin } else { self.links[i - 1] };
        edge(a, b)
    }

    pub fn origin(&self) -> (usize, usize) {
        self.origin
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    pub fn n(&self) -> usize {
        self.host.n()
    }

    /// Vertices covered by some copy, sorted.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.copies.iter().flatten().copied().collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, ChainError> {
        if names.len() != self.n() {
            return Err(ChainError::Parameters(format!("{} names for {} vertices", names.len(), self.n())));
        }
        self.names = names;
        Ok(self)
    }

    pub(crate) fn with_ordering(mut self, ordering: Vec<usize>) -> Self {
        self.ordering = Some(ordering);
        self
    }

    /// The copy `H_i` (1-based) as a graph on the host universe.
    pub fn copy_graph(&self, i: usize) -> Graph {
        crate::engine::push_forward(&self.pattern, &self.copies[i - 1], self.n())
    }

    pub fn to_json(&self) -> ChainJson {
        ChainJson {
            schema: CHAIN_SCHEMA.into(),
            pattern: EdgeListJson::from_graph(&self.pattern, None),
            ordering: self.ordering.clone(),
            n: self.n(),
            copies: self.copies.clone(),
            links: self.links.iter().map(|&(a, b)| [a, b]).collect(),
            origin: [self.origin.0, self.origin.1],
            names: self.names.clone(),
        }
    }

    pub fn from_json(doc: &ChainJson) -> Result<Self, ChainError> {
        let pattern = doc.pattern.to_graph().map_err(|e| ChainError::Parameters(e.to_string()))?;
        let links = doc.links.iter().map(|&[a, b]| (a, b)).collect();
        let mut c = Chain::new(pattern, doc.copies.clone(), links, (doc.origin[0], doc.origin[1]), doc.n)?;
        if let Some(ord) = &doc.ordering {
            c.ordering = Some(ord.clone());
        }
        if !doc.names.is_empty() {
            c = c.with_names(doc.names.clone())?;
        }
        Ok(c)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ChainJson {
    pub schema: String,
    pub pattern: EdgeListJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<usize>>,
    pub n: usize,
    pub copies: Vec<Vec<usize>>,
    pub links: Vec<[usize; 2]>,
    pub origin: [usize; 2],
    #[serde(default)]
    pub names: Vec<String>,
}

fn check_ordering(h: &Graph, ordering: &[usize]) -> Result<(), ChainError> {
    let k = h.n();
    if k < 4 {
        return Err(ChainError::Ordering(format!("pattern has {k} vertices, at least 4 are needed")));
    }
    let mut seen = ordering.to_vec();
    seen.sort_unstable();
    if seen != (0..k).collect::<Vec<_>>() {
        return Err(ChainError::Ordering("not a permutation of the pattern vertices".into()));
    }
    let (a, b) = (ordering[0], ordering[1]);
    let (c, d) = (ordering[k - 2], ordering[k - 1]);
    if !h.has_edge(a, b) {
        return Err(ChainError::Ordering(format!("first pair {{{a},{b}}} is not an edge")));
    }
    if !h.has_edge(c, d) {
        return Err(ChainError::Ordering(format!("last pair {{{c},{d}}} is not an edge")));
    }
    Ok(())
}

/// The simple chain: copy `i` sends position `j` to host vertex
/// `(i−1)(k−2) + j` (1-based), so consecutive copies share exactly the pair
/// formed by the last two positions of one and the first two of the next.
pub fn simple_chain(h: &Graph, ordering: &[usize], tau: usize) -> Result<Chain, ChainError> {
    check_ordering(h, ordering)?;
    if tau == 0 {
        return Err(ChainError::Parameters("chain length must be positive".into()));
    }
    let k = h.n();
    let n = tau * (k - 2) + 2;
    let mut copies = Vec::with_capacity(tau);
    let mut links = Vec::with_capacity(tau);
    for i in 0..tau {
        let mut map = vec![0; k];
        for (j, &u) in ordering.iter().enumerate() {
            map[u] = i * (k - 2) + j;
        }
        links.push((map[ordering[k - 2]], map[ordering[k - 1]]));
        copies.push(map);
    }
    let origin = (0, 1);
    Ok(Chain::new(h.clone(), copies, links, origin, n)?.with_ordering(ordering.to_vec()))
}

/// Some ordering with two disjoint edges at the ends. In the bipartite case
/// the first and the second-to-last positions share a side.
pub fn default_ordering(h: &Graph) -> Option<Vec<usize>> {
    let sides = h.bipartition();
    let edges = h.edge_vec();
    for &(a, b) in &edges {
        for &(c, d) in &edges {
            if [c, d].contains(&a) || [c, d].contains(&b) {
                continue;
            }
            let (c, d) = match &sides {
                Some(s) if s[c] != s[a] => (d, c),
                _ => (c, d),
            };
            let mut ord = vec![a, b];
            ord.extend((0..h.n()).filter(|v| ![a, b, c, d].contains(v)));
            ord.extend([c, d]);
            return Some(ord);
        }
    }
    None
}

/// Ordering for `named::wheel(k)` with the hub at 1-based position `hub`,
/// which must lie in `3..=k−1`; the rim follows its cyclic order.
pub fn wheel_ordering(k: usize, hub: usize) -> Result<Vec<usize>, ChainError> {
    if k < 4 || !(3..k).contains(&hub) {
        return Err(ChainError::Ordering(format!("hub position {hub} must lie in 3..={} for W{k}", k - 1)));
    }
    let mut ord: Vec<usize> = (1..=k).collect();
    ord.insert(hub - 1, 0);
    Ok(ord)
}

/// The start `G_0 = G − {e_1, …, e_τ}`; the origin stays.
pub fn starting_graph(c: &Chain) -> Graph {
    let mut g = c.host.clone();
    for &(a, b) in &c.links {
        g.remove_edge(a, b);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::{complete, cycle, wheel};

    #[test]
    fn simple_k4_chain_matches_the_counts() {
        let c = simple_chain(&complete(4), &[0, 1, 2, 3], 4).unwrap();
        assert_eq!(c.n(), 10);
        assert_eq!(c.len(), 4);
        assert_eq!(c.links(), &[(2, 3), (4, 5), (6, 7), (8, 9)]);
        assert_eq!(c.host().edge_count(), 4 * 6 - 3);
        // 4 copies of 6 edges, 3 shared links counted twice, 4 links removed.
        assert_eq!(starting_graph(&c).edge_count(), 4 * 6 - 3 - 4);
        assert!(starting_graph(&c).has_edge(0, 1));
    }

    #[test]
    fn vertex_count_formula() {
        for tau in 1..6 {
            let c = simple_chain(&complete(5), &[0, 1, 2, 3, 4], tau).unwrap();
            assert_eq!(c.n(), tau * 3 + 2);
            assert_eq!(c.vertices().len(), c.n());
        }
        let one = simple_chain(&complete(5), &[0, 1, 2, 3, 4], 1).unwrap();
        assert_eq!(one.host(), &complete(5));
        assert_eq!(starting_graph(&one).edge_count(), 9);
    }

    #[test]
    fn bad_orderings_are_rejected() {
        let c6 = cycle(6);
        assert!(matches!(simple_chain(&c6, &[0, 2, 1, 3, 4, 5], 2), Err(ChainError::Ordering(_))));
        assert!(simple_chain(&c6, &[0, 1, 2, 3, 4, 5], 2).is_ok());
        assert!(simple_chain(&complete(4), &[0, 1, 2], 2).is_err());
    }

    #[test]
    fn wheel_orderings() {
        let w = wheel(7);
        let ord = wheel_ordering(7, 3).unwrap();
        assert_eq!(ord, vec![1, 2, 0, 3, 4, 5, 6, 7]);
        assert!(simple_chain(&w, &ord, 3).is_ok());
        assert!(wheel_ordering(7, 1).is_err());
        assert!(wheel_ordering(7, 7).is_err());
    }

    #[test]
    fn default_ordering_respects_sides() {
        let h = crate::graph::named::complete_bipartite(3, 3);
        let ord = default_ordering(&h).unwrap();
        let s = h.bipartition().unwrap();
        assert_eq!(s[ord[0]], s[ord[4]]);
        assert!(simple_chain(&h, &ord, 3).unwrap().host().is_bipartite());
    }

    #[test]
    fn json_round_trip() {
        let c = simple_chain(&complete(4), &[0, 1, 2, 3], 3).unwrap();
        let doc = c.to_json();
        let text = serde_json::to_string(&doc).unwrap();
        let back = Chain::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, c);
    }
}

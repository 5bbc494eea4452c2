//! Ground truth at small scale: exhaustive maximum running times, direct
//! certification of chain lower bounds, and seeded property checks for the
//! fast-stabilisation and clique-growth lemmas.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chains::{starting_graph, Chain};
use crate::classify::is_l1_inseparable;
use crate::engine::{is_self_stable, run, RunOptions};
use crate::error::GraphError;
use crate::graph::named::{cycle, wheel};
use crate::graph::{edge, embed_exists, emit_graph6, enumerate_graphs, Edge, Graph};

/// Largest `n` for `max_running_time` without the extended flag.
pub const EXHAUSTIVE_MAX: usize = 7;
/// Largest `n` with the extended flag (12346 classes at `n = 8`).
pub const EXTENDED_MAX: usize = 8;

pub const MAXRUN_SCHEMA: &str = "percolab.maxrun/1";

/// `M_H(n)` with the full distribution of running times over isomorphism classes.
#[derive(Clone, Debug)]
pub struct MaxRunReport {
    pub pattern: Graph,
    pub n: usize,
    pub max: usize,
    /// Canonical representatives attaining `max`, in enumeration order.
    pub argmax: Vec<Graph>,
    /// Running time to number of classes.
    pub histogram: BTreeMap<usize, usize>,
}

impl MaxRunReport {
    pub fn classes(&self) -> usize {
        self.histogram.values().sum()
    }

    /// Every argmax graph re-runs (in exact mode) to `max`, and `max` is the top of the histogram.
    pub fn argmax_rerun_holds(&self) -> bool {
        let top = self.histogram.keys().next_back().copied().unwrap_or(0);
        top == self.max
            && self.histogram.get(&self.max) == Some(&self.argmax.len())
            && self.argmax.iter().all(|g| run(&self.pattern, g, &RunOptions::exact()).tau == self.max)
    }

    pub fn to_json(&self) -> MaxRunJson {
        MaxRunJson {
            schema: MAXRUN_SCHEMA.into(),
            pattern: emit_graph6(&self.pattern),
            n: self.n,
            max: self.max,
            classes: self.classes(),
            argmax: self.argmax.iter().map(emit_graph6).collect(),
            histogram: self.histogram.iter().map(|(&t, &c)| [t, c]).collect(),
        }
    }

    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("tau,classes\n");
        for (t, c) in &self.histogram {
            out.push_str(&format!("{t},{c}\n"));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxRunJson {
    pub schema: String,
    pub pattern: String,
    pub n: usize,
    pub max: usize,
    pub classes: usize,
    pub argmax: Vec<String>,
    pub histogram: Vec<[usize; 2]>,
}

/// Exact `M_H(n)`: one engine run per isomorphism class of `n`-vertex graphs.
pub fn max_running_time(h: &Graph, n: usize, extended: bool) -> Result<MaxRunReport, GraphError> {
    let max = if extended { EXTENDED_MAX } else { EXHAUSTIVE_MAX };
    if n > max {
        return Err(GraphError::TooLarge { what: "exhaustive running time", n, max });
    }
    let classes = enumerate_graphs(n)?;
    let taus: Vec<usize> = classes.par_iter().map(|g| run(h, g, &RunOptions::default()).tau).collect();
    let mut histogram = BTreeMap::new();
    for &t in &taus {
        *histogram.entry(t).or_insert(0) += 1;
    }
    let top = taus.iter().copied().max().unwrap_or(0);
    let argmax = classes.into_iter().zip(&taus).filter(|&(_, &t)| t == top).map(|(g, _)| g).collect();
    Ok(MaxRunReport { pattern: h.clone(), n, max: top, argmax, histogram })
}

/// `⌈log₂(n − 1)⌉`, the reference value for `M_{K3}(n)`.
pub fn triangle_reference(n: usize) -> usize {
    match n {
        0..=2 => 0,
        _ => (usize::BITS - (n - 2).leading_zeros()) as usize,
    }
}

/// What the engine does on a chain's starting graph.
#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundReport {
    pub length: usize,
    pub vertices: usize,
    pub tau: usize,
    pub truncated: bool,
    /// Links `e_i` (1-based) that did not enter in round `i`, with the round they did enter.
    pub late_links: Vec<(usize, Option<usize>)>,
    /// Edges other than links added during the first `length` rounds, with their round.
    pub extra_edges: Vec<(Edge, usize)>,
}

impl LowerBoundReport {
    pub fn links_on_time(&self) -> bool {
        self.late_links.is_empty()
    }

    /// `τ ≥ length` with every link on schedule.
    pub fn certified(&self) -> bool {
        !self.truncated && self.tau >= self.length && self.links_on_time()
    }
}

/// Runs the engine on the chain's starting graph (host minus the links).
pub fn certify_lower_bound(c: &Chain) -> LowerBoundReport {
    let trace = run(c.pattern(), &starting_graph(c), &RunOptions::default());
    let round = trace.round_of();
    let links: HashMap<Edge, usize> = (1..=c.len()).map(|i| (c.link(i), i)).collect();
    let late_links = (1..=c.len())
        .filter_map(|i| {
            let got = round.get(&c.link(i)).copied();
            (got != Some(i)).then_some((i, got))
        })
        .collect();
    let mut extra_edges: Vec<(Edge, usize)> = trace
        .rounds
        .iter()
        .take(c.len())
        .enumerate()
        .flat_map(|(r, es)| es.iter().map(move |&e| (e, r + 1)))
        .filter(|(e, _)| !links.contains_key(e))
        .collect();
    extra_edges.sort_unstable_by_key(|&(e, r)| (r, e));
    LowerBoundReport { length: c.len(), vertices: c.n(), tau: trace.tau, truncated: trace.truncated, late_links, extra_edges }
}

fn has_isolated_edge(h: &Graph) -> bool {
    h.edges().any(|(u, v)| h.degree(u) == 1 && h.degree(v) == 1)
}

/// `τ_H(G) ≤ 3` for a pattern with an isolated edge on at least `2 v(H)` vertices.
pub fn fast_stabilization_check(h: &Graph, g: &Graph) -> Result<bool, GraphError> {
    if !has_isolated_edge(h) {
        return Err(GraphError::Precondition("pattern has no isolated edge".into()));
    }
    if g.n() < 2 * h.n() {
        return Err(GraphError::Precondition(format!("host needs at least {} vertices", 2 * h.n())));
    }
    Ok(run(h, g, &RunOptions::capped(4)).tau <= 3)
}

/// `G(k, p)` with `p = p_num / p_den`, one ChaCha8 draw per pair in lexicographic order.
///
/// Panics if `p_den == 0` or `p_num > p_den`.
pub fn sample_gnp(k: usize, p_num: u32, p_den: u32, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(k);
    for u in 0..k {
        for v in u + 1..k {
            if rng.random_ratio(p_num, p_den) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// `⟨G⟩_{C_k}` is complete, for odd `k ≥ 5` and connected `G` on at least
/// `k + 1` vertices containing `C_k`.
pub fn cycle_clique_check(k: usize, g: &Graph) -> Result<bool, GraphError> {
    if k < 5 || k.is_multiple_of(2) {
        return Err(GraphError::Precondition(format!("cycle length {k} must be odd and at least 5")));
    }
    if g.n() < k + 1 || !g.is_connected() {
        return Err(GraphError::Precondition(format!("host must be connected with at least {} vertices", k + 1)));
    }
    let c = cycle(k);
    if !embed_exists(&c, g, &[]) {
        return Err(GraphError::Precondition(format!("host has no C{k}")));
    }
    Ok(run(&c, g, &RunOptions::default()).final_graph.is_complete())
}

/// After `k` rounds of the `W_k`-process, `Y ∪ V(F)` is a clique. `f` maps
/// the wheel's vertices (hub `0`, rim `1..=k`) into `g`.
pub fn wheel_clique_growth_check(k: usize, g: &Graph, y: &[usize], f: &[usize]) -> Result<bool, GraphError> {
    let pre = |m: String| Err(GraphError::Precondition(m));
    if k < 7 || k.is_multiple_of(2) {
        return pre(format!("wheel size {k} must be odd and at least 7"));
    }
    let w = wheel(k);
    let n = g.n();
    if f.len() != k + 1 || f.iter().any(|&v| v >= n) {
        return pre("F must map all wheel vertices into the host".into());
    }
    let mut in_f = vec![false; n];
    for &v in f {
        if std::mem::replace(&mut in_f[v], true) {
            return pre("F must be injective".into());
        }
    }
    if w.edges().any(|(a, b)| !g.has_edge(f[a], f[b])) {
        return pre("F is not a copy of the wheel".into());
    }
    let mut in_y = vec![false; n];
    for &v in y {
        if v >= n || std::mem::replace(&mut in_y[v], true) {
            return pre("Y must list distinct host vertices".into());
        }
    }
    if y.len() < k + 1 {
        return pre(format!("Y needs at least {} vertices", k + 1));
    }
    if y.iter().enumerate().any(|(i, &a)| y[i + 1..].iter().any(|&b| !g.has_edge(a, b))) {
        return pre("Y is not a clique".into());
    }
    let shared = f.iter().filter(|&&v| in_y[v]).count();
    if !(2..k + 1).contains(&shared) {
        return pre(format!("F meets Y in {shared} vertices, need 2..={k}"));
    }
    let state = run(&w, g, &RunOptions::capped(k)).state_after(k);
    let mut vs: Vec<usize> = y.to_vec();
    vs.extend(f.iter().filter(|&&v| !in_y[v]));
    Ok(vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| state.has_edge(a, b))))
}

/// A random connected graph on `n` vertices containing `C_k` on `0..k`: each
/// further vertex hangs off a uniformly chosen earlier one, then every
/// remaining pair is added with probability `extra`.
pub fn cycle_instance(k: usize, n: usize, extra: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = cycle(k).grow(n.saturating_sub(k));
    for v in k..n {
        let u = rng.random_range(0..v);
        g.add_edge(u, v);
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(extra) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Host, clique and wheel copy for `wheel_clique_growth_check`.
#[derive(Clone, Debug)]
pub struct WheelInstance {
    pub graph: Graph,
    pub clique: Vec<usize>,
    pub copy: Vec<usize>,
}

/// A clique of `k + 1..=k + 3` vertices, a wheel copy sharing `2..=k` of
/// them with its roles shuffled, two spare vertices, and sparse noise.
pub fn wheel_instance(k: usize, seed: u64) -> WheelInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let y_len = rng.random_range(k + 1..=k + 3);
    let shared = rng.random_range(2..=k);
    let n = y_len + (k + 1 - shared) + 2;
    let mut g = Graph::empty(n);
    for a in 0..y_len {
        for b in a + 1..y_len {
            g.add_edge(a, b);
        }
    }
    let mut inside: Vec<usize> = (0..y_len).collect();
    inside.shuffle(&mut rng);
    let mut copy: Vec<usize> = inside[..shared].iter().copied().chain(y_len..y_len + k + 1 - shared).collect();
    copy.shuffle(&mut rng);
    for (a, b) in wheel(k).edges() {
        g.add_edge(copy[a], copy[b]);
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(0.1) {
                g.add_edge(u, v);
            }
        }
    }
    WheelInstance { graph: g, clique: (0..y_len).collect(), copy }
}

/// How often sampled `G(k, p)` patterns fall into the regimes of the random-graph facts.
#[derive(Clone, Debug, Serialize)]
pub struct GkpFrequencies {
    pub k: usize,
    pub p: f64,
    pub samples: usize,
    /// Empty, or with an edge whose ends both have degree one.
    pub empty_or_isolated_edge: usize,
    /// Not separable by one edge and two vertices, and self-stable.
    pub inseparable_and_self_stable: usize,
}

impl GkpFrequencies {
    pub fn sparse_rate(&self) -> f64 {
        self.empty_or_isolated_edge as f64 / self.samples as f64
    }

    pub fn dense_rate(&self) -> f64 {
        self.inseparable_and_self_stable as f64 / self.samples as f64
    }
}

/// Samples `G(k, p_num/p_den)` for each seed in `seeds`. The dense test is
/// skipped for graphs that are already in the sparse regime.
pub fn gkp_frequencies(k: usize, p_num: u32, p_den: u32, seeds: std::ops::Range<u64>) -> GkpFrequencies {
    let flags: Vec<(bool, bool)> = seeds
        .clone()
        .into_par_iter()
        .map(|s| {
            let h = sample_gnp(k, p_num, p_den, s);
            let sparse = h.edge_count() == 0 || has_isolated_edge(&h);
            let dense = !sparse && is_l1_inseparable(&h, 2).value && is_self_stable(&h);
            (sparse, dense)
        })
        .collect();
    GkpFrequencies {
        k,
        p: p_num as f64 / p_den as f64,
        samples: flags.len(),
        empty_or_isolated_edge: flags.iter().filter(|f| f.0).count(),
        inseparable_and_self_stable: flags.iter().filter(|f| f.1).count(),
    }
}

/// Isolated-edge pattern `K3 ∪ K2` used by the fast-stabilisation checks.
pub fn triangle_plus_edge() -> Graph {
    Graph::from_edges(5, &[edge(0, 1), edge(1, 2), edge(0, 2), edge(3, 4)]).expect("fixed edges are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{simple_chain, verify_proper, DEFAULT_COPY_BUDGET};
    use crate::graph::named::complete;

    /// `M_H(n)` over all `2^C(n,2)` labelled graphs, no isomorphism reduction.
    fn labelled_max(h: &Graph, n: usize) -> usize {
        let pairs: Vec<Edge> = Graph::empty(n).non_edges().collect();
        (0u32..1 << pairs.len())
            .map(|mask| {
                let es: Vec<Edge> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
                run(h, &Graph::from_edges(n, &es).unwrap(), &RunOptions::exact()).tau
            })
            .max()
            .unwrap()
    }

    #[test]
    fn small_clique_values() {
        let k4 = complete(4);
        for (n, m) in [(4, 1), (5, 2), (6, 3)] {
            let r = max_running_time(&k4, n, false).unwrap();
            assert_eq!(r.max, m, "n={n}");
            assert!(r.argmax_rerun_holds());
        }
        assert_eq!(max_running_time(&complete(3), 5, false).unwrap().max, 2);
        let k5 = max_running_time(&complete(5), 4, false).unwrap();
        assert_eq!(k5.max, 0);
        assert_eq!(k5.histogram, BTreeMap::from([(0, 11)]));
    }

    #[test]
    fn classes_agree_with_labelled_scan() {
        for h in [complete(3), complete(4), cycle(4)] {
            assert_eq!(max_running_time(&h, 5, false).unwrap().max, labelled_max(&h, 5));
        }
    }

    #[test]
    fn bound_and_output_formats() {
        assert!(matches!(max_running_time(&complete(4), 8, false), Err(GraphError::TooLarge { .. })));
        let r = max_running_time(&complete(4), 5, false).unwrap();
        assert_eq!(r.classes(), 34);
        let csv = r.histogram_csv();
        assert!(csv.starts_with("tau,classes\n"));
        assert_eq!(csv.lines().count(), r.histogram.len() + 1);
        let j = r.to_json();
        assert_eq!(j.schema, MAXRUN_SCHEMA);
        assert_eq!(j.argmax.len(), r.argmax.len());
    }

    #[test]
    fn triangle_reference_values() {
        let got: Vec<usize> = (2..=9).map(triangle_reference).collect();
        assert_eq!(got, [0, 1, 2, 2, 3, 3, 3, 3]);
    }

    #[test]
    fn chain_lower_bounds() {
        let k5 = simple_chain(&complete(5), &[0, 1, 2, 3, 4], 5).unwrap();
        let r = certify_lower_bound(&k5);
        assert!(verify_proper(&k5, DEFAULT_COPY_BUDGET).passed());
        assert!(r.certified());
        assert_eq!(r.tau, 5);
        // Not proper, yet the links still arrive on schedule.
        let k4 = simple_chain(&complete(4), &[0, 1, 2, 3], 6).unwrap();
        assert!(!verify_proper(&k4, DEFAULT_COPY_BUDGET).passed());
        assert!(certify_lower_bound(&k4).links_on_time());
    }

    #[test]
    fn fast_stabilization_cases() {
        let h = triangle_plus_edge();
        assert!(fast_stabilization_check(&h, &Graph::empty(10)).unwrap());
        assert!(fast_stabilization_check(&h, &sample_gnp(12, 1, 2, 3)).unwrap());
        assert!(fast_stabilization_check(&complete(3), &Graph::empty(10)).is_err());
        assert!(fast_stabilization_check(&h, &Graph::empty(9)).is_err());
    }

    #[test]
    fn gnp_extremes_and_determinism() {
        assert_eq!(sample_gnp(9, 0, 1, 4).edge_count(), 0);
        assert!(sample_gnp(9, 1, 1, 4).is_complete());
        assert_eq!(sample_gnp(20, 1, 3, 77), sample_gnp(20, 1, 3, 77));
        assert_ne!(sample_gnp(20, 1, 3, 77), sample_gnp(20, 1, 3, 78));
    }

    #[test]
    fn cycle_clique_cases() {
        let mut pendant = cycle(5).grow(1);
        pendant.add_edge(0, 5);
        assert!(cycle_clique_check(5, &pendant).unwrap());
        assert!(cycle_clique_check(5, &complete(7)).unwrap());
        assert!(cycle_clique_check(4, &complete(7)).is_err());
        assert!(cycle_clique_check(5, &cycle(5)).is_err());
        // Even cycles can stop at a complete bipartite graph.
        let mut c4 = cycle(4).grow(1);
        c4.add_edge(0, 4);
        assert!(!run(&cycle(4), &c4, &RunOptions::default()).final_graph.is_complete());
    }

    #[test]
    fn wheel_growth_cases() {
        let k = 7;
        // F shares exactly the edge {0, 1} with an 8-clique.
        let mut g = complete(8).grow(6);
        let f: Vec<usize> = [0, 1].into_iter().chain(8..14).collect();
        for (a, b) in wheel(k).edges() {
            g.add_edge(f[a], f[b]);
        }
        let y: Vec<usize> = (0..8).collect();
        assert!(wheel_clique_growth_check(k, &g, &y, &f).unwrap());
        // V(F) inside Y is refused.
        assert!(wheel_clique_growth_check(k, &complete(9), &(0..9).collect::<Vec<_>>(), &(0..8).collect::<Vec<_>>()).is_err());
        for seed in 0..5 {
            let w = wheel_instance(k, seed);
            assert!(wheel_clique_growth_check(k, &w.graph, &w.clique, &w.copy).unwrap(), "seed {seed}");
        }
    }
}

//! Deciders for the pattern classes that drive the lower-bound constructions.

mod colouring;
mod random;

pub use colouring::{
    for_each_set_partition, is_behrendian, is_sidonian, minus_edge_class, simple_cycles, EdgeColouring, PatternClass,
    COLOURING_MAX_EDGES,
};
pub use random::{gkp_property_check, GkpReport};

use serde::Serialize;

use crate::error::GraphError;
use crate::graph::{Edge, EdgeListJson, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "condition", rename_all = "snake_case")]
pub enum Method {
    Exact,
    /// A named sufficient condition; a false value under it means "not certified".
    Sufficient(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Deleting `edge` and `vertices` disconnects the graph.
    Separation { edge: Edge, vertices: Vec<usize> },
    Colouring(Vec<usize>),
    Edge(Edge),
    Vertices(Vec<usize>),
    Note(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub value: bool,
    pub method: Method,
    pub witness: Option<Witness>,
}

impl Decision {
    fn exact(value: bool, witness: Option<Witness>) -> Self {
        Decision { value, method: Method::Exact, witness }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassFlag {
    pub name: String,
    #[serde(flatten)]
    pub decision: Decision,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub schema: &'static str,
    pub graph: EdgeListJson,
    pub flags: Vec<ClassFlag>,
}

impl ClassReport {
    pub fn new(g: &Graph) -> Self {
        ClassReport { schema: "percolab.classes/1", graph: EdgeListJson::from_graph(g, None), flags: Vec::new() }
    }

    pub fn push(&mut self, name: &str, decision: Decision) {
        self.flags.push(ClassFlag { name: name.to_string(), decision });
    }

    pub fn get(&self, name: &str) -> Option<&Decision> {
        self.flags.iter().find(|f| f.name == name).map(|f| &f.decision)
    }
}

/// Exhaustive check that no edge plus at most `l` vertices disconnects `h`.
/// Such graphs need at least one edge and more than `l + 1` vertices.
pub fn is_l1_inseparable(h: &Graph, l: usize) -> Decision {
    if h.edge_count() == 0 {
        return Decision::exact(false, Some(Witness::Note("no edges".into())));
    }
    if h.n() < l + 2 {
        return Decision::exact(false, Some(Witness::Note(format!("needs more than {} vertices", l + 1))));
    }
    match find_separation(h, &|set: &[usize]| set.len() <= l, l) {
        Some(w) => Decision::exact(false, Some(w)),
        None => Decision::exact(true, None),
    }
}

/// The bipartite variant: at most one deleted vertex on each side.
pub fn is_111_inseparable(h: &Graph) -> Result<Decision, GraphError> {
    let sides = h.bipartition().ok_or(GraphError::NotBipartite)?;
    if h.edge_count() == 0 {
        return Ok(Decision::exact(false, Some(Witness::Note("no edges".into()))));
    }
    let ok = |set: &[usize]| set.iter().filter(|&&v| sides[v] == 0).count() <= 1 && set.iter().filter(|&&v| sides[v] == 1).count() <= 1;
    Ok(match find_separation(h, &ok, 2) {
        Some(w) => Decision::exact(false, Some(w)),
        None => Decision::exact(true, None),
    })
}

fn find_separation(h: &Graph, allowed: &dyn Fn(&[usize]) -> bool, max_size: usize) -> Option<Witness> {
    let n = h.n();
    for (a, b) in h.edges() {
        let g = h.without_edge(a, b);
        let mut removed = vec![false; n];
        let mut set = Vec::new();
        if let Some(vs) = sep_rec(&g, allowed, &mut removed, &mut set, 0, max_size) {
            return Some(Witness::Separation { edge: (a, b), vertices: vs });
        }
    }
    None
}

fn sep_rec(g: &Graph, allowed: &dyn Fn(&[usize]) -> bool, removed: &mut [bool], set: &mut Vec<usize>, start: usize, left: usize) -> Option<Vec<usize>> {
    if !g.is_connected_without(removed) {
        return Some(set.clone());
    }
    if left == 0 {
        return None;
    }
    for v in start..g.n() {
        set.push(v);
        if allowed(set) {
            removed[v] = true;
            let found = sep_rec(g, allowed, removed, set, v + 1, left - 1);
            removed[v] = false;
            if found.is_some() {
                return found;
            }
        }
        set.pop();
    }
    None
}

/// Frequently used degree thresholds and edge-structure facts.
pub fn degree_sufficiency_report(h: &Graph) -> ClassReport {
    let k = h.n() as f64;
    let delta = h.min_degree() as f64;
    let mut report = ClassReport::new(h);
    report.push("min_degree_half_plus_one", Decision::exact(k >= 5.0 && delta >= k / 2.0 + 1.0, None));
    report.push("min_degree_above_three_quarters", Decision::exact(k >= 6.0 && delta > 3.0 * k / 4.0, None));
    report.push("min_degree_half_plus_two", Decision::exact(delta >= k / 2.0 + 2.0, None));

    let mut lonely = None;
    for (a, b) in h.edges() {
        if !h.edges().any(|(c, d)| c != a && c != b && d != a && d != b) {
            lonely = Some(Witness::Edge((a, b)));
            break;
        }
    }
    report.push("disjoint_edge_for_every_edge", Decision::exact(lonely.is_none() && h.edge_count() > 0, lonely));

    let inseparable = is_l1_inseparable(h, 2).value || is_111_inseparable(h).map(|d| d.value).unwrap_or(false);
    if inseparable && h.n() <= 10 {
        let mut failure = None;
        'outer: for (a, b) in h.edges() {
            let f = h.without_edge(a, b);
            let cycles = simple_cycles(&f);
            let edges = f.edge_vec();
            let index = |e: Edge| edges.binary_search(&e).unwrap();
            let m = edges.len();
            let mut together = vec![false; m * m];
            for c in &cycles {
                let ids: Vec<usize> = cycle_edges(c).into_iter().map(index).collect();
                for &i in &ids {
                    for &j in &ids {
                        together[i * m + j] = true;
                    }
                }
            }
            for i in 0..m {
                for j in (i + 1)..m {
                    if !together[i * m + j] {
                        failure = Some(Witness::Vertices(vec![edges[i].0, edges[i].1, edges[j].0, edges[j].1]));
                        break 'outer;
                    }
                }
            }
        }
        report.push("edge_pairs_share_a_cycle_after_deletion", Decision::exact(failure.is_none(), failure));
    } else {
        report.push(
            "edge_pairs_share_a_cycle_after_deletion",
            Decision {
                value: false,
                method: Method::Sufficient("not evaluated: pattern not inseparable or too large".into()),
                witness: None,
            },
        );
    }
    report
}

pub(crate) fn cycle_edges(cycle: &[usize]) -> Vec<Edge> {
    (0..cycle.len()).map(|i| crate::graph::edge(cycle[i], cycle[(i + 1) % cycle.len()])).collect()
}

/// Every class decision this module can make about `h`, for the CLI.
pub fn full_report(h: &Graph) -> ClassReport {
    let mut report = degree_sufficiency_report(h);
    for l in 0..=3usize.min(h.n()) {
        report.push(&format!("l{l}_inseparable"), is_l1_inseparable(h, l));
    }
    if let Ok(d) = is_111_inseparable(h) {
        report.push("bipartite_111_inseparable", d);
    }
    let exact_ok = h.edge_count() <= COLOURING_MAX_EDGES;
    if h.is_bipartite() {
        let mode = if exact_ok { colouring::Mode::Exact } else { colouring::Mode::Sufficient };
        if let Ok(d) = is_sidonian(h, mode) {
            report.push("sidonian", d);
        }
        if let Ok(v) = minus_edge_class(h, PatternClass::Sidonian) {
            report.push("sidonian_after_any_deletion", v);
        }
    } else {
        let mode = if exact_ok { colouring::Mode::Exact } else { colouring::Mode::Sufficient };
        if let Ok(d) = is_behrendian(h, mode) {
            report.push("behrendian", d);
        }
        if let Ok(v) = minus_edge_class(h, PatternClass::Behrendian) {
            report.push("behrendian_after_any_deletion", v);
        }
    }
    report.push("self_stable", Decision::exact(crate::engine::is_self_stable(h), None));
    report
}

pub use colouring::Mode;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn inseparability_examples() {
        let k4 = is_l1_inseparable(&complete(4), 2);
        assert!(!k4.value);
        assert!(matches!(k4.witness, Some(Witness::Separation { .. })));
        assert!(is_l1_inseparable(&complete(5), 2).value);
        assert!(!is_l1_inseparable(&wheel(7), 2).value);
        assert!(is_l1_inseparable(&complete(6), 3).value);
        assert!(is_111_inseparable(&cube()).unwrap().value);
        assert!(!is_111_inseparable(&cycle(4)).unwrap().value);
        assert!(is_111_inseparable(&complete_bipartite(3, 3)).unwrap().value);
        assert!(is_111_inseparable(&complete(3)).is_err());
    }

    #[test]
    fn degree_report_examples() {
        let r = degree_sufficiency_report(&complete(6));
        assert!(r.get("min_degree_above_three_quarters").unwrap().value);
        let r = degree_sufficiency_report(&complete(5));
        assert!(r.get("min_degree_half_plus_one").unwrap().value);
        assert!(!r.get("min_degree_above_three_quarters").unwrap().value);
        assert!(r.get("edge_pairs_share_a_cycle_after_deletion").unwrap().value);
        let r = degree_sufficiency_report(&cycle(5));
        assert!(r.get("disjoint_edge_for_every_edge").unwrap().value);
        assert!(!r.get("min_degree_half_plus_one").unwrap().value);
        assert!(!r.get("min_degree_half_plus_two").unwrap().value);
    }
}

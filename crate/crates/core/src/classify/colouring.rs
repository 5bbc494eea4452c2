use super::{cycle_edges, Decision, Method, Witness};
use crate::error::GraphError;
use crate::graph::{edge_orbits, Edge, Graph};

pub const COLOURING_MAX_EDGES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Sufficient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternClass {
    Behrendian,
    Sidonian,
}

/// A colour per edge, indexed in the order of `graph.edges()`.
#[derive(Clone, Debug)]
pub struct EdgeColouring {
    pub graph: Graph,
    pub colour: Vec<usize>,
}

impl EdgeColouring {
    pub fn new(graph: &Graph, colour: Vec<usize>) -> Self {
        assert_eq!(colour.len(), graph.edge_count(), "colouring must be total on the edges");
        EdgeColouring { graph: graph.clone(), colour }
    }

    pub fn of(&self, e: Edge) -> usize {
        let idx = self.graph.edges().position(|f| f == e).expect("edge of the coloured graph");
        self.colour[idx]
    }

    pub fn is_monochromatic(&self) -> bool {
        self.colour.windows(2).all(|w| w[0] == w[1])
    }
}

/// Calls `f` on every set partition of `0..m` as a restricted growth string;
/// stops when `f` returns false.
pub fn for_each_set_partition(m: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(labels: &mut Vec<usize>, m: usize, max: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if labels.len() == m {
            return f(labels);
        }
        let top = if labels.is_empty() { 0 } else { max + 1 };
        for c in 0..=top {
            labels.push(c);
            let go = rec(labels, m, max.max(c), f);
            labels.pop();
            if !go {
                return false;
            }
        }
        true
    }
    rec(&mut Vec::with_capacity(m), m, 0, f)
}

/// Every simple cycle once, as a vertex sequence starting at its smallest vertex.
pub fn simple_cycles(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, start: usize, path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        for v in g.neighbors(last) {
            if v == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            } else if v > start && !on[v] {
                on[v] = true;
                path.push(v);
                extend(g, start, path, on, out);
                path.pop();
                on[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; g.n()];
    for s in 0..g.n() {
        on[s] = true;
        extend(g, s, &mut vec![s], &mut on, &mut out);
        on[s] = false;
    }
    out
}

fn edge_index(g: &Graph) -> impl Fn(Edge) -> usize {
    let edges = g.edge_vec();
    move |e| edges.binary_search(&e).unwrap()
}

/// Number of maximal monochromatic arcs around a cycle given by edge ids.
fn arc_count(ids: &[usize], colour: &[usize]) -> usize {
    let m = ids.len();
    let changes = (0..m).filter(|&i| colour[ids[i]] != colour[ids[(i + 1) % m]]).count();
    changes.max(1)
}

pub fn is_behrendian(h: &Graph, mode: Mode) -> Result<Decision, GraphError> {
    if h.edge_count() == 0 || !h.is_connected() {
        return Ok(Decision::exact(false, Some(Witness::Note("not a connected graph with edges".into()))));
    }
    match mode {
        Mode::Exact => {
            let m = h.edge_count();
            if m > COLOURING_MAX_EDGES {
                return Err(GraphError::TooLarge { what: "exact colouring search (edges)", n: m, max: COLOURING_MAX_EDGES });
            }
            let index = edge_index(h);
            let cycles: Vec<Vec<usize>> =
                simple_cycles(h).iter().map(|c| cycle_edges(c).into_iter().map(&index).collect()).collect();
            let mut bad = None;
            for_each_set_partition(m, &mut |colour| {
                if colour.iter().all(|&c| c == 0) {
                    return true;
                }
                let good = cycles.iter().any(|ids| (2..=3).contains(&arc_count(ids, colour)));
                if !good {
                    bad = Some(colour.to_vec());
                }
                good
            });
            Ok(match bad {
                Some(c) => Decision::exact(false, Some(Witness::Colouring(c))),
                None => Decision::exact(true, None),
            })
        }
        Mode::Sufficient => {
            if let Some(order) = build_up_order(h) {
                return Ok(Decision {
                    value: true,
                    method: Method::Sufficient("build-up ordering".into()),
                    witness: Some(Witness::Vertices(order)),
                });
            }
            if triangularly_connected(h) {
                return Ok(Decision { value: true, method: Method::Sufficient("triangular connectivity".into()), witness: None });
            }
            Ok(Decision { value: false, method: Method::Sufficient("no sufficient condition applies".into()), witness: None })
        }
    }
}

/// An order starting with an edge where each later vertex has two earlier neighbours.
pub fn build_up_order(h: &Graph) -> Option<Vec<usize>> {
    for (a, b) in h.edges() {
        let mut order = vec![a, b];
        let mut inside = vec![false; h.n()];
        inside[a] = true;
        inside[b] = true;
        loop {
            let next = (0..h.n()).find(|&v| !inside[v] && h.neighbors(v).filter(|&u| inside[u]).count() >= 2);
            match next {
                Some(v) => {
                    inside[v] = true;
                    order.push(v);
                }
                None => break,
            }
        }
        if order.len() == h.n() {
            return Some(order);
        }
    }
    None
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
    fn classes(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Edges linked through shared triangles form a single class.
pub fn triangularly_connected(h: &Graph) -> bool {
    let index = edge_index(h);
    let mut uf = UnionFind::new(h.edge_count());
    for (a, b) in h.edges() {
        for c in h.neighbors(a).filter(|&c| c > b && h.has_edge(b, c)) {
            let e = index((a, b));
            uf.union(e, index((a, c)));
            uf.union(e, index((b, c)));
        }
    }
    uf.classes() <= 1
}

/// Edge ids of every 4-cycle.
fn four_cycles(h: &Graph) -> Vec<[usize; 4]> {
    let index = edge_index(h);
    simple_cycles_of_length(h, 4)
        .into_iter()
        .map(|c| {
            let e = cycle_edges(&c);
            [index(e[0]), index(e[1]), index(e[2]), index(e[3])]
        })
        .collect()
}

fn simple_cycles_of_length(h: &Graph, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 0..h.n() {
        for b in h.neighbors(a).filter(|&b| b > a) {
            for d in h.neighbors(a).filter(|&d| d > b) {
                if len == 4 {
                    for c in 0..h.n() {
                        if c > a && c != b && c != d && h.has_edge(b, c) && h.has_edge(c, d) {
                            out.push(vec![a, b, c, d]);
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn is_sidonian(h: &Graph, mode: Mode) -> Result<Decision, GraphError> {
    if !h.is_bipartite() {
        return Err(GraphError::NotBipartite);
    }
    let m = h.edge_count();
    let squares = four_cycles(h);
    match mode {
        Mode::Exact => {
            if m > COLOURING_MAX_EDGES {
                return Err(GraphError::TooLarge { what: "exact colouring search (edges)", n: m, max: COLOURING_MAX_EDGES });
            }
            let mut bad = None;
            for_each_set_partition(m, &mut |colour| {
                if colour.iter().all(|&c| c == 0) {
                    return true;
                }
                let good = squares.iter().any(|q| q.iter().any(|&e| colour[e] != colour[q[0]]));
                if !good {
                    bad = Some(colour.to_vec());
                }
                good
            });
            Ok(match bad {
                Some(c) => Decision::exact(false, Some(Witness::Colouring(c))),
                None => Decision::exact(true, None),
            })
        }
        Mode::Sufficient => {
            let mut uf = UnionFind::new(m);
            for q in &squares {
                for &e in &q[1..] {
                    uf.union(q[0], e);
                }
            }
            let value = uf.classes() <= 1;
            let method = if value { "4-cycle connectivity" } else { "no sufficient condition applies" };
            Ok(Decision { value, method: Method::Sufficient(method.into()), witness: None })
        }
    }
}

/// Whether `H − e` lies in the class for every edge `e`; exact where the
/// edge bound allows, sufficient conditions otherwise.
pub fn minus_edge_class(h: &Graph, class: PatternClass) -> Result<Decision, GraphError> {
    let mut methods = Vec::new();
    for (a, b) in edge_orbits(h) {
        let f = h.without_edge(a, b);
        let mode = if f.edge_count() <= COLOURING_MAX_EDGES { Mode::Exact } else { Mode::Sufficient };
        let d = match class {
            PatternClass::Behrendian => is_behrendian(&f, mode)?,
            PatternClass::Sidonian => is_sidonian(&f, mode)?,
        };
        if !d.value {
            return Ok(Decision { value: false, method: d.method, witness: Some(Witness::Edge((a, b))) });
        }
        methods.push(d.method);
    }
    let method = if methods.iter().all(|m| *m == Method::Exact) {
        Method::Exact
    } else {
        let names: Vec<String> = methods
            .iter()
            .map(|m| match m {
                Method::Exact => "exact".to_string(),
                Method::Sufficient(s) => s.clone(),
            })
            .collect();
        Method::Sufficient(names.join(", "))
    };
    Ok(Decision { value: true, method, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn bell_numbers() {
        for (m, bell) in [(0usize, 1u64), (1, 1), (3, 5), (5, 52), (7, 877)] {
            let mut c = 0;
            for_each_set_partition(m, &mut |_| {
                c += 1;
                true
            });
            assert_eq!(c, bell);
        }
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(simple_cycles(&complete(4)).len(), 7);
        assert_eq!(simple_cycles(&complete(5)).len(), 37);
        assert_eq!(simple_cycles(&cycle(6)).len(), 1);
        assert_eq!(simple_cycles_of_length(&cube(), 4).len(), 6);
        assert_eq!(simple_cycles_of_length(&complete_bipartite(3, 3), 4).len(), 9);
    }

    #[test]
    fn behrendian_examples() {
        assert!(is_behrendian(&complete(2), Mode::Exact).unwrap().value);
        assert!(!is_behrendian(&cycle(4), Mode::Exact).unwrap().value);
        assert!(is_behrendian(&complete(4), Mode::Exact).unwrap().value);
        assert!(is_behrendian(&complete(4), Mode::Sufficient).unwrap().value);
        assert!(is_behrendian(&cycle(3), Mode::Exact).unwrap().value);
        assert!(is_behrendian(&wheel(7), Mode::Exact).is_err());
    }

    #[test]
    fn sidonian_examples() {
        let k33 = complete_bipartite(3, 3).without_edge(0, 3);
        assert!(is_sidonian(&k33, Mode::Exact).unwrap().value);
        assert!(!is_sidonian(&cycle(6), Mode::Exact).unwrap().value);
        assert!(is_sidonian(&cube(), Mode::Sufficient).unwrap().value);
        assert!(is_sidonian(&complete(3), Mode::Exact).is_err());
    }

    #[test]
    fn minus_edge_examples() {
        assert!(minus_edge_class(&wheel(7), PatternClass::Behrendian).unwrap().value);
        assert!(minus_edge_class(&cycle_square(5), PatternClass::Behrendian).unwrap().value);
        assert!(!minus_edge_class(&cycle(4), PatternClass::Sidonian).unwrap().value);
        assert!(minus_edge_class(&complete_bipartite(3, 3), PatternClass::Sidonian).unwrap().value);
    }
}

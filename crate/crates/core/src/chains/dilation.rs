use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::proper::{copy_edges, scan_minus_edge_copies};
use super::{check_ordering, default_ordering, Chain, ChainCollection, Check, CollectionKind, Witness};
use super::{verify_collection, Strength};
use crate::additive::{greedy_solution_free_set, EquationFamily, ZpSet, DEFAULT_BUDGET};
use crate::error::ChainError;
use crate::graph::{edge, Edge, Graph};

fn params(msg: impl Into<String>) -> ChainError {
    ChainError::Parameters(msg.into())
}

/// `a·t mod p` as an index in `1..p`.
fn scaled(a: u64, t: u64, p: u64) -> u64 {
    ((a as u128 * t as u128) % p as u128) as u64
}

/// a-dilations of one simple chain over `Z_p`. Vertices `v_λ` get ids `λ − 1`
/// and `w_λ` get `p − 2 + λ`; the first and last `k` copies (and the outer
/// ends of the two copies next to them) live on the `w` side so chain ends
/// are kept apart from other chains.
pub fn dilation_collection(h: &Graph, ordering: Option<&[usize]>, dilations: &ZpSet) -> Result<ChainCollection, ChainError> {
    let k = h.n();
    let p = dilations.p();
    let ordering = match ordering {
        Some(o) => o.to_vec(),
        None => default_ordering(h).ok_or_else(|| ChainError::Ordering("pattern has no two disjoint edges".into()))?,
    };
    check_ordering(h, &ordering)?;
    if p < (k as u64).pow(3) {
        return Err(params(format!("p = {p} is below k^3 = {}", k.pow(3))));
    }
    if dilations.is_empty() {
        return Err(params("no dilations"));
    }
    let tau = ((p - 3) / (k as u64 - 2)) as usize;
    let v = |lambda: u64| (lambda - 1) as usize;
    let w = |lambda: u64| (p - 2 + lambda) as usize;
    let n = 2 * (p as usize - 1);
    let on_w = |i: usize, j: usize| {
        if i <= k || i >= tau - k {
            true
        } else if i == k + 1 {
            j <= 2
        } else if i == tau - k - 1 {
            j >= k - 1
        } else {
            false
        }
    };
    let mut chains = Vec::with_capacity(dilations.len());
    for &a in dilations.elems() {
        let place = |i: usize, j: usize| {
            let lambda = scaled(a, ((i - 1) * (k - 2) + j) as u64, p);
            if on_w(i, j) {
                w(lambda)
            } else {
                v(lambda)
            }
        };
        let mut copies = Vec::with_capacity(tau);
        let mut links = Vec::with_capacity(tau);
        for i in 1..=tau {
            let mut map = vec![0; k];
            for (j, &x) in ordering.iter().enumerate() {
                map[x] = place(i, j + 1);
            }
            links.push((map[ordering[k - 2]], map[ordering[k - 1]]));
            copies.push(map);
        }
        let origin = (copies[0][ordering[0]], copies[0][ordering[1]]);
        chains.push(Chain::new(h.clone(), copies, links, origin, n)?.with_ordering(ordering.clone()));
    }
    let mut names: Vec<String> = (1..p).map(|l| format!("v{l}")).collect();
    names.extend((1..p).map(|l| format!("w{l}")));
    let chains = chains.into_iter().map(|c| c.with_names(names.clone())).collect::<Result<Vec<_>, _>>()?;
    ChainCollection::new(CollectionKind::Dilation { p }, dilations.elems().to_vec(), chains, names)
}

/// Labels in `1..=2k` for a bipartite pattern: one side on odd labels, the
/// other on even labels, with disjoint edges `{1,2}` and `{2k−1,2k}`.
pub fn bip_labels(h: &Graph) -> Result<Vec<usize>, ChainError> {
    let k = h.n();
    let sides = h.bipartition().ok_or(crate::error::GraphError::NotBipartite)?;
    let ord = default_ordering(h).ok_or_else(|| ChainError::Ordering("pattern has no two disjoint edges".into()))?;
    let x_side = sides[ord[0]];
    let mut labels = vec![0; k];
    labels[ord[0]] = 1;
    labels[ord[1]] = 2;
    labels[ord[k - 2]] = 2 * k - 1;
    labels[ord[k - 1]] = 2 * k;
    let (mut odd, mut even) = (3, 4);
    for &x in &ord[2..k - 2] {
        if sides[x] == x_side {
            labels[x] = odd;
            odd += 2;
        } else {
            labels[x] = even;
            even += 2;
        }
    }
    Ok(labels)
}

fn check_labels(h: &Graph, labels: &[usize]) -> Result<(), ChainError> {
    let k = h.n();
    if labels.len() != k {
        return Err(params("one label per pattern vertex is needed"));
    }
    let mut seen = labels.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != k || labels.iter().any(|&l| l == 0 || l > 2 * k) {
        return Err(params(format!("labels must be distinct values in 1..={}", 2 * k)));
    }
    let find = |l: usize| labels.iter().position(|&x| x == l);
    let (Some(a), Some(b), Some(c), Some(d)) = (find(1), find(2), find(2 * k - 1), find(2 * k)) else {
        return Err(params(format!("labels 1, 2, {} and {} must all be used", 2 * k - 1, 2 * k)));
    };
    if !h.has_edge(a, b) || !h.has_edge(c, d) {
        return Err(params("label pairs {1,2} and {2k-1,2k} must be edges"));
    }
    if h.edges().any(|(u, v)| labels[u] % 2 == labels[v] % 2) {
        return Err(params("odd labels and even labels must form the two sides"));
    }
    Ok(())
}

/// Bipartite dilation chains: a vertex labelled `j` in copy `i` goes to
/// `x_{a((i−1)(2k−2)+j)}` for odd `j` and `y_{a(i(2k−2)+j+m)}` for even `j`.
/// Ids: `x_λ ↦ λ − 1`, `y_λ ↦ p − 2 + λ`.
pub fn bip_dilation_collection(h: &Graph, labels: &[usize], dilations: &ZpSet, m: u64) -> Result<ChainCollection, ChainError> {
    let k = h.n();
    let p = dilations.p();
    if k < 4 {
        return Err(params("pattern needs at least 4 vertices"));
    }
    check_labels(h, labels)?;
    let k64 = k as u64;
    if p < m + 2 * k64.pow(3) {
        return Err(params(format!("p = {p} is below m + 2k^3 = {}", m + 2 * k64.pow(3))));
    }
    if dilations.is_empty() {
        return Err(params("no dilations"));
    }
    let tau = ((p - 1 - 2 * k64 - m) / (2 * k64 - 2)) as usize;
    let n = 2 * (p as usize - 1);
    let step = 2 * k - 2;
    let mut ordering: Vec<usize> = (0..k).collect();
    ordering.sort_by_key(|&x| labels[x]);
    let by_label = |l: usize| labels.iter().position(|&x| x == l).unwrap();
    let (f0, f1) = (by_label(2 * k - 1), by_label(2 * k));
    let (e0, e1) = (by_label(1), by_label(2));

    let mut chains = Vec::with_capacity(dilations.len());
    for &a in dilations.elems() {
        let mut copies = Vec::with_capacity(tau);
        let mut links = Vec::with_capacity(tau);
        for i in 1..=tau {
            let map: Vec<usize> = labels
                .iter()
                .map(|&j| {
                    if j % 2 == 1 {
                        (scaled(a, ((i - 1) * step + j) as u64, p) - 1) as usize
                    } else {
                        (p - 2 + scaled(a, (i * step + j) as u64 + m, p)) as usize
                    }
                })
                .collect();
            links.push((map[f0], map[f1]));
            copies.push(map);
        }
        let origin = (copies[0][e0], copies[0][e1]);
        chains.push(Chain::new(h.clone(), copies, links, origin, n)?.with_ordering(ordering.clone()));
    }
    let mut names: Vec<String> = (1..p).map(|l| format!("x{l}")).collect();
    names.extend((1..p).map(|l| format!("y{l}")));
    let chains = chains.into_iter().map(|c| c.with_names(names.clone())).collect::<Result<Vec<_>, _>>()?;
    let kind = CollectionKind::BipDilation { p, m, labels: labels.to_vec() };
    ChainCollection::new(kind, dilations.elems().to_vec(), chains, names)
}

/// Residue of `d` modulo `p` in `0..p`.
fn residue(d: i64, p: u64) -> u64 {
    d.rem_euclid(p as i64) as u64
}

fn slope_witness(a: u64, e: Edge, detail: &str) -> Witness {
    Witness::Note { note: format!("edge {e:?} of the chain with dilation {a}: {detail}") }
}

/// Every edge of every chain's final graph joins indices differing by `αa`
/// with `0 < |α| ≤ k`.
pub fn dilation_edge_equation_check(coll: &ChainCollection) -> Result<Check, ChainError> {
    let CollectionKind::Dilation { p } = *coll.kind() else {
        return Err(params("not a dilation collection"));
    };
    let k = coll.pattern().n() as i64;
    let index = |x: usize| (x as u64 % (p - 1)) as i64 + 1;
    for (fin, &a) in coll.final_graphs().iter().zip(coll.index()) {
        for (x, y) in fin.edges() {
            let d = residue(index(y) - index(x), p);
            let ok = (1..=k).any(|al| residue(al * a as i64, p) == d || residue(-al * (a as i64), p) == d);
            if !ok {
                return Ok(Check::new("edge_equation", Some(slope_witness(a, (x, y), "no coefficient of size at most k"))));
            }
        }
    }
    Ok(Check::new("edge_equation", None))
}

/// Every final-graph edge `x_λ y_μ` has `μ − λ = αa` with `α` in
/// `{m+1, m+3, …, m+4k−3}`.
pub fn positive_slope_check(coll: &ChainCollection) -> Result<Check, ChainError> {
    let CollectionKind::BipDilation { p, m, .. } = *coll.kind() else {
        return Err(params("not a bipartite dilation collection"));
    };
    let k = coll.pattern().n() as u64;
    let half = (p - 1) as usize;
    for (fin, &a) in coll.final_graphs().iter().zip(coll.index()) {
        for (x, y) in fin.edges() {
            if (x < half) == (y < half) {
                return Ok(Check::new("positive_slope", Some(slope_witness(a, (x, y), "not between the two sides"))));
            }
            let (lambda, mu) = (x as i64 + 1, (y - half) as i64 + 1);
            let d = residue(mu - lambda, p);
            let ok = (0..2 * k - 1).map(|t| m + 1 + 2 * t).any(|al| scaled(a, al, p) == d);
            if !ok {
                return Ok(Check::new("positive_slope", Some(slope_witness(a, (x, y), "slope outside the odd band"))));
            }
        }
    }
    Ok(Check::new("positive_slope", None))
}

/// All 4-cycles as `[u, c1, w, c2]` with `u` the smallest vertex and `c1 < c2`,
/// so each cycle appears once; sorted.
pub fn four_cycles(g: &Graph) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    let mut via: HashMap<usize, Vec<usize>> = HashMap::new();
    for u in 0..g.n() {
        via.clear();
        for c in g.neighbors(u).filter(|&c| c > u) {
            for w in g.neighbors(c).filter(|&w| w > u) {
                via.entry(w).or_default().push(c);
            }
        }
        let mut ends: Vec<(&usize, &Vec<usize>)> = via.iter().collect();
        ends.sort_unstable();
        for (&w, common) in ends {
            for (i, &c1) in common.iter().enumerate() {
                for &c2 in &common[i + 1..] {
                    out.push([u, c1, w, c2]);
                }
            }
        }
    }
    out
}

/// Each 4-cycle in the union of final graphs is owned by one chain or has
/// four different owners.
pub fn four_cycle_trichotomy_check(coll: &ChainCollection) -> Check {
    let finals = coll.final_graphs();
    let mut owner: HashMap<Edge, usize> = HashMap::new();
    let mut union = Graph::empty(coll.n());
    for (a, f) in finals.iter().enumerate() {
        for e in f.edges() {
            if let Some(b) = owner.insert(e, a) {
                return Check::new("four_cycle_trichotomy", Some(Witness::SharedEdge { edge: e, chains: [b, a] }));
            }
            union.add_edge(e.0, e.1);
        }
    }
    for c in four_cycles(&union) {
        let colours: BTreeSet<usize> = (0..4).map(|i| owner[&edge(c[i], c[(i + 1) % 4])]).collect();
        if colours.len() != 1 && colours.len() != 4 {
            let detail = format!("4-cycle {c:?} uses {} chains", colours.len());
            return Check::new("four_cycle_trichotomy", Some(Witness::Note { note: detail }));
        }
    }
    Check::new("four_cycle_trichotomy", None)
}

#[derive(Clone, Debug, Serialize)]
pub struct SparsifyReport {
    pub seed: u64,
    pub attempts: u32,
    pub q: f64,
    pub sampled: Vec<u64>,
    pub deleted: Vec<u64>,
    pub kept: Vec<u64>,
    /// `¼ N (N / p^k)^{1/(r(s−1)−1)}` with `N` the size of the input set.
    pub bound: f64,
    pub meets_bound: bool,
    pub copies_examined: u64,
}

pub const SPARSIFY_RETRIES: u32 = 16;

/// Random sparsification of the dilations for a complete bipartite pattern
/// `K_{r,s}`: keep each dilation with probability `q`, then repeatedly drop
/// the largest dilation touching a copy of `K_{r,s}` minus an edge whose
/// edges meet at least `r(s−1)` chains. Seeds `seed, seed+1, …` are tried
/// until the kept set reaches the expectation bound.
pub fn sparsify_bip_dilation(
    h: &Graph,
    dilations: &ZpSet,
    q: f64,
    seed: u64,
    budget: u64,
) -> Result<(ChainCollection, SparsifyReport), ChainError> {
    let sides = h.bipartition().ok_or(crate::error::GraphError::NotBipartite)?;
    let x = sides.iter().filter(|&&s| s == 0).count();
    let (r, s) = (x.min(h.n() - x), x.max(h.n() - x));
    if h.edge_count() != r * s {
        return Err(params("sparsification is defined for complete bipartite patterns"));
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(params("q must lie in [0, 1]"));
    }
    let labels = bip_labels(h)?;
    let p = dilations.p();
    let big_n = dilations.len() as f64;
    let threshold = r * (s - 1);
    let bound = 0.25 * big_n * (big_n / (p as f64).powi(h.n() as i32)).powf(1.0 / (threshold as f64 - 1.0));

    let mut last = None;
    for attempt in 0..SPARSIFY_RETRIES {
        let seed_now = seed + attempt as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed_now);
        let sampled: Vec<u64> = dilations.elems().iter().copied().filter(|_| rng.random_bool(q)).collect();
        let mut kept = sampled.clone();
        let mut deleted = Vec::new();
        let mut examined = 0;
        let coll = loop {
            if kept.is_empty() {
                break None;
            }
            let set = ZpSet::new(p, kept.iter().copied()).map_err(|e| params(e.to_string()))?;
            let coll = bip_dilation_collection(h, &labels, &set, 0)?;
            let mut owner: HashMap<Edge, usize> = HashMap::new();
            let mut union = Graph::empty(coll.n());
            for (a, f) in coll.final_graphs().iter().enumerate() {
                for e in f.edges() {
                    owner.insert(e, a);
                    union.add_edge(e.0, e.1);
                }
            }
            let scan = scan_minus_edge_copies(h, &union, budget, &|missing, img| {
                let chains: BTreeSet<usize> = copy_edges(h, missing, img).iter().map(|e| owner[e]).collect();
                (chains.len() >= threshold).then_some(chains)
            });
            examined += scan.examined;
            if scan.partial {
                return Err(params("copy budget exhausted during sparsification"));
            }
            match scan.found {
                Some(bad) => {
                    let worst = coll.index()[*bad.last().unwrap()];
                    kept.retain(|&a| a != worst);
                    deleted.push(worst);
                }
                None => break Some(coll),
            }
        };
        let report = SparsifyReport {
            seed: seed_now,
            attempts: attempt + 1,
            q,
            sampled,
            deleted,
            kept: kept.clone(),
            bound,
            meets_bound: kept.len() as f64 >= bound,
            copies_examined: examined,
        };
        if let Some(coll) = coll {
            if report.meets_bound {
                return Ok((coll, report));
            }
            last = Some((coll, report));
        }
    }
    last.ok_or_else(|| params("every sampled set came out empty"))
}

/// Dilations chosen under the collection verifier: the candidates surviving a
/// greedy pass against `prefilter` are tried in order, and each is kept only
/// if `build` on the enlarged set still passes `verify_collection` at
/// `strength`. Stops once `want` dilations are kept.
pub fn select_dilations(
    p: u64,
    prefilter: &[EquationFamily],
    want: usize,
    strength: Strength,
    budget: u64,
    build: &dyn Fn(&ZpSet) -> Result<ChainCollection, ChainError>,
) -> Result<ZpSet, ChainError> {
    let additive = |e: crate::error::AdditiveError| params(e.to_string());
    let pool = greedy_solution_free_set(p, prefilter, 1..p, DEFAULT_BUDGET).map_err(additive)?;
    let mut kept: Vec<u64> = Vec::new();
    for &a in pool.elems() {
        if kept.len() == want {
            break;
        }
        kept.push(a);
        let trial = ZpSet::new(p, kept.iter().copied()).map_err(additive)?;
        if !verify_collection(&build(&trial)?, strength, budget).passed() {
            kept.pop();
        }
    }
    let mut set = ZpSet::new(p, kept).map_err(additive)?.with_origin("greedy under the collection verifier");
    for f in prefilter {
        set.require(f, DEFAULT_BUDGET).map_err(additive)?;
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{ends_disjoint_check, verify_proper, DEFAULT_COPY_BUDGET};
    use crate::graph::named::{complete, complete_bipartite, cycle};

    #[test]
    fn single_dilation_is_a_relabelled_simple_chain() {
        let set = ZpSet::new(127, [3]).unwrap();
        let coll = dilation_collection(&complete(5), Some(&[0, 1, 2, 3, 4]), &set).unwrap();
        let c = &coll.chains()[0];
        assert_eq!(c.len(), (127 - 3) / 3);
        assert_eq!(c.vertices().len(), c.len() * 3 + 2);
        let simple = super::super::simple_chain(&complete(5), &[0, 1, 2, 3, 4], c.len()).unwrap();
        assert_eq!(c.host().edge_count(), simple.host().edge_count());
        // Origin is w_a w_{2a}.
        assert_eq!(c.origin(), (125 + 3, 125 + 6));
        assert!(verify_proper(c, DEFAULT_COPY_BUDGET).passed());
        assert!(dilation_edge_equation_check(&coll).unwrap().holds);
    }

    #[test]
    fn middle_copies_sit_on_v() {
        let set = ZpSet::new(127, [1]).unwrap();
        let coll = dilation_collection(&complete(5), None, &set).unwrap();
        let c = &coll.chains()[0];
        let k = 5;
        assert!(c.copies()[k + 2].iter().all(|&x| x < 126));
        assert!(c.copies()[0].iter().all(|&x| x >= 126));
        assert!(c.copies()[c.len() - 1].iter().all(|&x| x >= 126));
    }

    #[test]
    fn dilation_parameter_errors() {
        let small = ZpSet::new(113, [1]).unwrap();
        assert!(dilation_collection(&complete(5), None, &small).is_err());
        let set = ZpSet::new(127, [1, 2]).unwrap();
        assert!(dilation_collection(&cycle(6), Some(&[0, 2, 1, 3, 4, 5]), &set).is_err());
    }

    #[test]
    fn far_apart_dilations_keep_ends_disjoint() {
        let set = ZpSet::new(127, [1, 64]).unwrap();
        let coll = dilation_collection(&complete(5), None, &set).unwrap();
        // 64 is the inverse of 2, so w_{2·64} = w_1 lies on both chains.
        assert!(!ends_disjoint_check(&coll).holds);
    }

    #[test]
    fn bip_labels_and_slopes() {
        let h = complete_bipartite(3, 3);
        let labels = bip_labels(&h).unwrap();
        assert!(check_labels(&h, &labels).is_ok());
        let set = ZpSet::new(433, [1]).unwrap();
        let coll = bip_dilation_collection(&h, &labels, &set, 0).unwrap();
        assert_eq!(coll.chains()[0].len(), (433 - 1 - 12) / 10);
        assert!(coll.union_host().is_bipartite());
        assert!(positive_slope_check(&coll).unwrap().holds);
        assert!(verify_proper(&coll.chains()[0], DEFAULT_COPY_BUDGET).passed());
        assert!(bip_dilation_collection(&h, &labels, &ZpSet::new(431, [1]).unwrap(), 0).is_err());
    }

    #[test]
    fn selected_dilations_pass_the_verifier() {
        let h = complete(5);
        let prefilter = [EquationFamily::Bounded { h: 2, k: 5 }];
        let build = |s: &ZpSet| dilation_collection(&h, None, s);
        let a = select_dilations(127, &prefilter, 3, Strength::Strong, DEFAULT_COPY_BUDGET, &build).unwrap();
        assert_eq!(a.elems(), &[1, 11, 13]);
        assert!(a.is_certified(&prefilter[0]));
    }

    #[test]
    fn four_cycle_enumeration() {
        assert_eq!(four_cycles(&cycle(4)).len(), 1);
        assert_eq!(four_cycles(&complete(4)).len(), 3);
        assert_eq!(four_cycles(&crate::graph::named::cube()).len(), 6);
        assert_eq!(four_cycles(&complete_bipartite(3, 3)).len(), 9);
    }
}

use super::{Chain, ChainCollection, Check, CollectionKind, Witness};
use crate::engine::{final_graph, push_forward};
use crate::error::ChainError;
use crate::graph::{edge, Edge, Graph};

/// Orients a crossing edge as `(U end, W end)`.
fn crossing(in_u: &[bool], (x, y): Edge) -> Option<Edge> {
    match (in_u[x], in_u[y]) {
        (true, false) => Some((x, y)),
        (false, true) => Some((y, x)),
        _ => None,
    }
}

struct Layout {
    k_u: usize,
    k_w: usize,
    left: usize,
    n: usize,
}

impl Layout {
    fn new(k: usize, u_len: usize, m: usize) -> Self {
        let (k_u, k_w) = (u_len - 1, k - u_len - 1);
        let left = 5 * m * k_u + 1;
        Layout { k_u, k_w, left, n: left + 5 * m * k_w + 1 }
    }

    fn l(&self, t: usize) -> usize {
        t
    }

    fn r(&self, t: usize) -> usize {
        self.left + t
    }

    fn left_slice(&self, j: usize) -> Vec<usize> {
        (j * self.k_u..=(j + 1) * self.k_u).map(|t| self.l(t)).collect()
    }

    fn right_slice(&self, j: usize) -> Vec<usize> {
        (j * self.k_w..=(j + 1) * self.k_w).map(|t| self.r(t)).collect()
    }
}

/// Ladder chains: the left side is a path of overlapping copies `L_j` of `U`,
/// the right side a path of overlapping copies `R_j` of `W`, and the chain of
/// slope `a` puts its `i`-th copy on `L_{i−1} ∪ R_{i+4a−1}`. Every chain has
/// `m = max slope` copies.
pub fn ladder_collection(h: &Graph, u: &[usize], e_prime: Edge, f_prime: Edge, slopes: &[u64]) -> Result<ChainCollection, ChainError> {
    let k = h.n();
    if k < 4 {
        return Err(ChainError::Parameters("pattern needs at least 4 vertices".into()));
    }
    let mut in_u = vec![false; k];
    for &x in u {
        if x >= k || in_u[x] {
            return Err(ChainError::Parameters("U must list distinct pattern vertices".into()));
        }
        in_u[x] = true;
    }
    if u.len() < 2 || u.len() > k - 2 {
        return Err(ChainError::Parameters("both sides need at least two vertices".into()));
    }
    if !h.has_edge(e_prime.0, e_prime.1) || !h.has_edge(f_prime.0, f_prime.1) {
        return Err(ChainError::Parameters("e' and f' must be pattern edges".into()));
    }
    let (Some(e), Some(f)) = (crossing(&in_u, e_prime), crossing(&in_u, f_prime)) else {
        return Err(ChainError::Parameters("e' and f' must cross between U and W".into()));
    };
    if e.0 == f.0 || e.1 == f.1 {
        return Err(ChainError::Parameters("e' and f' must be disjoint".into()));
    }
    if slopes.is_empty() || slopes.contains(&0) {
        return Err(ChainError::Parameters("slopes must be positive".into()));
    }
    let mut slopes = slopes.to_vec();
    slopes.sort_unstable();
    slopes.dedup();
    let m = *slopes.last().unwrap() as usize;

    // u_0 = e' ∩ U, u_{k_U} = f' ∩ U, and similarly on W.
    let side = |want: bool, first: usize, last: usize| -> Vec<usize> {
        let mut v = vec![first];
        v.extend((0..k).filter(|&x| in_u[x] == want && x != first && x != last));
        v.push(last);
        v
    };
    let us = side(true, e.0, f.0);
    let ws = side(false, e.1, f.1);
    let lay = Layout::new(k, us.len(), m);
    let mut ordering = vec![e.0, e.1];
    ordering.extend((0..k).filter(|x| ![e.0, e.1, f.0, f.1].contains(x)));
    ordering.extend([f.0, f.1]);

    let mut chains = Vec::with_capacity(slopes.len());
    for &a in &slopes {
        let a = a as usize;
        let mut copies = Vec::with_capacity(m);
        let mut links = Vec::with_capacity(m);
        for i in 1..=m {
            let mut map = vec![0; k];
            for (s, &x) in us.iter().enumerate() {
                map[x] = lay.l(s + (i - 1) * lay.k_u);
            }
            for (s, &x) in ws.iter().enumerate() {
                map[x] = lay.r(s + (i + 4 * a - 1) * lay.k_w);
            }
            links.push((map[f.0], map[f.1]));
            copies.push(map);
        }
        let origin = (copies[0][e.0], copies[0][e.1]);
        chains.push(Chain::new(h.clone(), copies, links, origin, lay.n)?.with_ordering(ordering.clone()));
    }
    let mut names: Vec<String> = (0..lay.left).map(|t| format!("l{t}")).collect();
    names.extend((0..lay.n - lay.left).map(|t| format!("r{t}")));
    let chains = chains.into_iter().map(|c| c.with_names(names.clone())).collect::<Result<Vec<_>, _>>()?;
    let kind = CollectionKind::Ladder { u: us, e_prime: e, f_prime: f, m };
    ChainCollection::new(kind, slopes, chains, names)
}

fn layout_of(coll: &ChainCollection) -> Result<(Layout, usize), ChainError> {
    match coll.kind() {
        CollectionKind::Ladder { u, m, .. } => Ok((Layout::new(coll.pattern().n(), u.len(), *m), *m)),
        _ => Err(ChainError::Parameters("not a ladder collection".into())),
    }
}

/// Union over all chains and copies of the copies' final graphs.
fn per_copy_union(coll: &ChainCollection) -> Graph {
    let h = coll.pattern();
    let fin_h = final_graph(h, h);
    let mut g = Graph::empty(coll.n());
    for c in coll.chains() {
        for map in c.copies() {
            g = g.union(&push_forward(&fin_h, map, coll.n()));
        }
    }
    g
}

/// Each left/right pair lies together in copies of at most one chain, so
/// every crossing edge of the union of final graphs has a single owner.
pub fn ladder_crossing_check(coll: &ChainCollection) -> Result<Check, ChainError> {
    let (lay, _) = layout_of(coll)?;
    let right = coll.n() - lay.left;
    let mut owner: Vec<Option<usize>> = vec![None; lay.left * right];
    for (a, c) in coll.chains().iter().enumerate() {
        for map in c.copies() {
            for &x in map.iter().filter(|&&x| x < lay.left) {
                for &y in map.iter().filter(|&&y| y >= lay.left) {
                    let slot = &mut owner[x * right + y - lay.left];
                    match *slot {
                        Some(b) if b != a => {
                            return Ok(Check::new(
                                "crossing_pairs_single_chain",
                                Some(Witness::SharedEdge { edge: (x, y), chains: [b, a] }),
                            ))
                        }
                        _ => *slot = Some(a),
                    }
                }
            }
        }
    }
    Ok(Check::new("crossing_pairs_single_chain", None))
}

/// For every pair of slices `L_j`, `R_{j'}`: when `j' = j + 4a` for a slope
/// `a` and copy `j + 1` exists, the union of copy final graphs induces exactly
/// that copy's final graph; otherwise every crossing edge touches one of the
/// four corner vertices `ℓ_{jk_U}, ℓ_{(j+1)k_U}, r_{j'k_W}, r_{(j'+1)k_W}` and
/// there are fewer than `k` crossing edges.
pub fn ladder_slice_check(coll: &ChainCollection) -> Result<Check, ChainError> {
    let (lay, m) = layout_of(coll)?;
    let h = coll.pattern();
    let k = h.n();
    let fin_h = final_graph(h, h);
    let union = &per_copy_union(coll);
    let slices = 5 * m;
    for j in 0..slices {
        let lj = lay.left_slice(j);
        for jp in 0..slices {
            let rj = lay.right_slice(jp);
            let slope = coll.index().iter().position(|&a| jp == j + 4 * a as usize);
            let note = |msg: String| Ok(Check::new("ladder_slices", Some(Witness::Note { note: msg })));
            match slope {
                Some(a) if j < m => {
                    let map = &coll.chains()[a].copies()[j];
                    let mut vs = lj.clone();
                    vs.extend(&rj);
                    let expect = push_forward(&fin_h, map, coll.n());
                    for (x_i, &x) in vs.iter().enumerate() {
                        for &y in &vs[x_i + 1..] {
                            if union.has_edge(x, y) != expect.has_edge(x, y) {
                                return note(format!("slice L{j} R{jp}: pair {:?} differs from copy {}", edge(x, y), j + 1));
                            }
                        }
                    }
                }
                _ => {
                    let crossing: Vec<Edge> =
                        lj.iter().flat_map(|&x| rj.iter().filter(move |&&y| union.has_edge(x, y)).map(move |&y| (x, y))).collect();
                    let corners = [lay.l(j * lay.k_u), lay.l((j + 1) * lay.k_u), lay.r(jp * lay.k_w), lay.r((jp + 1) * lay.k_w)];
                    let covered = crossing.iter().all(|&(x, y)| corners.contains(&x) || corners.contains(&y));
                    if !covered || crossing.len() >= k {
                        return note(format!("slice L{j} R{jp}: {} crossing edges survive", crossing.len()));
                    }
                }
            }
        }
    }
    Ok(Check::new("ladder_slices", None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{verify_collection, Strength, DEFAULT_COPY_BUDGET};
    use crate::graph::named::{complete, cube};

    #[test]
    fn k6_ladder_layout() {
        let h = complete(6);
        let coll = ladder_collection(&h, &[0, 1, 2], (0, 3), (2, 5), &[1, 2, 3]).unwrap();
        assert_eq!(coll.n(), 5 * 3 * 4 + 2);
        let c = &coll.chains()[0];
        assert_eq!(c.len(), 3);
        // Slope 1: first copy on L_0 ∪ R_4, origin l0 r8, first link l2 r10.
        assert_eq!(c.origin(), (0, 31 + 8));
        assert_eq!(c.links()[0], (2, 31 + 10));
        assert!(ladder_crossing_check(&coll).unwrap().holds);
        let s = ladder_slice_check(&coll).unwrap();
        assert!(s.holds, "{s:?}");
    }

    #[test]
    fn k6_ladder_is_proper() {
        let coll = ladder_collection(&complete(6), &[0, 1, 2], (0, 3), (2, 5), &[1, 2]).unwrap();
        let r = verify_collection(&coll, Strength::Proper, DEFAULT_COPY_BUDGET);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn rejects_bad_edges() {
        let h = complete(6);
        assert!(ladder_collection(&h, &[0, 1, 2], (0, 1), (2, 5), &[1]).is_err());
        assert!(ladder_collection(&h, &[0, 1, 2], (0, 3), (0, 5), &[1]).is_err());
        assert!(ladder_collection(&h, &[0, 1, 2], (0, 3), (2, 5), &[0]).is_err());
    }

    #[test]
    fn cube_ladder_is_bipartite() {
        // U and W both induce 4-cycles, u_i w_i matched.
        let h = cube();
        let u: Vec<usize> = (0..8).filter(|&v| v & 4 == 0).collect();
        let coll = ladder_collection(&h, &u, (0, 4), (3, 7), &[1, 2, 5]).unwrap();
        assert!(coll.union_host().is_bipartite());
        assert!(ladder_crossing_check(&coll).unwrap().holds);
    }
}

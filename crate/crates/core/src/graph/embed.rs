//! Anchored backtracking for injective homomorphisms (subgraph embeddings).

use super::{Edge, Graph};
use crate::error::GraphError;

pub const AUT_MAX_VERTICES: usize = 12;

/// A precomputed search order for one pattern, with an optional anchored prefix
/// and an optional pattern edge that the host need not contain.
#[derive(Clone, Debug)]
pub struct SearchPlan {
    k: usize,
    order: Vec<usize>,
    anchored: usize,
    back: Vec<Vec<usize>>,
    need_deg: Vec<usize>,
}

/// Reusable buffers for repeated searches against hosts of similar size.
#[derive(Default)]
pub struct Scratch {
    img: Vec<usize>,
    used: Vec<u64>,
    buf: Vec<u64>,
}

impl SearchPlan {
    pub fn new(pattern: &Graph, anchors: &[usize], ignore: Option<Edge>) -> Self {
        let k = pattern.n();
        let ignore = ignore.map(|(a, b)| super::edge(a, b));
        let adj = |u: usize, v: usize| pattern.has_edge(u, v) && Some(super::edge(u, v)) != ignore;
        let eff_deg: Vec<usize> = (0..k).map(|u| (0..k).filter(|&v| adj(u, v)).count()).collect();

        let mut placed = vec![false; k];
        let mut order: Vec<usize> = Vec::with_capacity(k);
        for &a in anchors {
            assert!(a < k && !placed[a], "anchor list must be distinct pattern vertices");
            placed[a] = true;
            order.push(a);
        }
        while order.len() < k {
            let next = (0..k)
                .filter(|&u| !placed[u])
                .max_by_key(|&u| {
                    let links = order.iter().filter(|&&w| adj(u, w)).count();
                    (links, eff_deg[u], std::cmp::Reverse(u))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let back = (0..k)
            .map(|pos| (0..pos).filter(|&j| adj(order[pos], order[j])).collect())
            .collect();
        let need_deg = order.iter().map(|&u| eff_deg[u]).collect();
        SearchPlan { k, order, anchored: anchors.len(), back, need_deg }
    }

    pub fn pattern_order(&self) -> &[usize] {
        &self.order
    }

    /// Enumerates embeddings extending `anchor_images` (given in anchor order).
    /// `f` receives the image of every pattern vertex and returns false to stop.
    /// Returns false iff stopped early.
    pub fn search(&self, host: &Graph, anchor_images: &[usize], scratch: &mut Scratch, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        assert_eq!(anchor_images.len(), self.anchored);
        if self.k > host.n() {
            return true;
        }
        let w = host.words();
        scratch.img.clear();
        scratch.img.resize(self.k, usize::MAX);
        scratch.used.clear();
        scratch.used.resize(w, 0);
        scratch.buf.clear();
        scratch.buf.resize(w * (self.k - self.anchored + 1), 0);
        for (pos, &v) in anchor_images.iter().enumerate() {
            if v >= host.n() || (scratch.used[v / 64] >> (v % 64)) & 1 == 1 {
                return true;
            }
            for &j in &self.back[pos] {
                if !host.has_edge(v, scratch.img[self.order[j]]) {
                    return true;
                }
            }
            scratch.img[self.order[pos]] = v;
            scratch.used[v / 64] |= 1 << (v % 64);
        }
        let Scratch { img, used, buf } = scratch;
        self.rec(host, self.anchored, img, used, buf, f)
    }

    fn rec(&self, host: &Graph, pos: usize, img: &mut [usize], used: &mut [u64], buf: &mut [u64], f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if pos == self.k {
            return f(img);
        }
        let w = host.words();
        let (cur, rest) = buf.split_at_mut(w);
        let back = &self.back[pos];
        if let Some((&first, others)) = back.split_first() {
            cur.copy_from_slice(host.row(img[self.order[first]]));
            for &j in others {
                for (c, r) in cur.iter_mut().zip(host.row(img[self.order[j]])) {
                    *c &= r;
                }
            }
        } else {
            cur.fill(u64::MAX);
            let tail = host.n() % 64;
            if tail != 0 {
                cur[w - 1] = (1u64 << tail) - 1;
            }
            if host.n() == 0 {
                cur.fill(0);
            }
        }
        let need = self.need_deg[pos];
        let pv = self.order[pos];
        for t in 0..w {
            let mut bits = cur[t] & !used[t];
            while bits != 0 {
                let v = t * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if host.degree(v) < need {
                    continue;
                }
                img[pv] = v;
                used[t] |= 1 << (v % 64);
                let go = self.rec(host, pos + 1, img, used, rest, f);
                used[t] &= !(1 << (v % 64));
                if !go {
                    img[pv] = usize::MAX;
                    return false;
                }
            }
        }
        img[pv] = usize::MAX;
        true
    }

    pub fn exists(&self, host: &Graph, anchor_images: &[usize], scratch: &mut Scratch) -> bool {
        !self.search(host, anchor_images, scratch, &mut |_| false)
    }

    pub fn count(&self, host: &Graph, anchor_images: &[usize]) -> u64 {
        let mut c = 0u64;
        self.search(host, anchor_images, &mut Scratch::default(), &mut |_| {
            c += 1;
            true
        });
        c
    }
}

/// Does some injective homomorphism `h → g` extend the partial map `anchor`?
pub fn embed_exists(h: &Graph, g: &Graph, anchor: &[(usize, usize)]) -> bool {
    let (from, to): (Vec<usize>, Vec<usize>) = anchor.iter().copied().unzip();
    let mut seen = from.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != from.len() || from.iter().any(|&a| a >= h.n()) {
        return false;
    }
    SearchPlan::new(h, &from, None).exists(g, &to, &mut Scratch::default())
}

pub fn count_embeddings(h: &Graph, g: &Graph) -> u64 {
    SearchPlan::new(h, &[], None).count(g, &[])
}

pub fn automorphism_count(h: &Graph) -> Result<u64, GraphError> {
    if h.n() > AUT_MAX_VERTICES {
        return Err(GraphError::TooLarge { what: "automorphism search", n: h.n(), max: AUT_MAX_VERTICES });
    }
    Ok(count_embeddings(h, h))
}

pub fn count_copies(h: &Graph, g: &Graph) -> Result<u64, GraphError> {
    Ok(count_embeddings(h, g) / automorphism_count(h)?)
}

/// One representative `(a, b)` per Aut(H)-orbit on ordered edge pairs.
/// Above the automorphism bound every ordered pair is returned.
pub fn arc_orbits(h: &Graph) -> Vec<Edge> {
    let arcs: Vec<Edge> = h.edges().flat_map(|(a, b)| [(a, b), (b, a)]).collect();
    if h.n() > AUT_MAX_VERTICES {
        return arcs;
    }
    let mut reps: Vec<Edge> = Vec::new();
    for (a, b) in arcs {
        let known = reps.iter().any(|&(c, d)| embed_exists(h, h, &[(c, a), (d, b)]));
        if !known {
            reps.push((a, b));
        }
    }
    reps
}

/// One representative per Aut(H)-orbit on unordered edges.
pub fn edge_orbits(h: &Graph) -> Vec<Edge> {
    if h.n() > AUT_MAX_VERTICES {
        return h.edge_vec();
    }
    let mut reps: Vec<Edge> = Vec::new();
    for (a, b) in h.edges() {
        let known = reps
            .iter()
            .any(|&(c, d)| embed_exists(h, h, &[(c, a), (d, b)]) || embed_exists(h, h, &[(c, b), (d, a)]));
        if !known {
            reps.push((a, b));
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::super::named::*;
    use super::*;

    fn brute_embeddings(h: &Graph, g: &Graph) -> u64 {
        fn rec(h: &Graph, g: &Graph, map: &mut Vec<usize>, count: &mut u64) {
            let i = map.len();
            if i == h.n() {
                *count += 1;
                return;
            }
            for v in 0..g.n() {
                if map.contains(&v) {
                    continue;
                }
                if (0..i).all(|j| !h.has_edge(i, j) || g.has_edge(v, map[j])) {
                    map.push(v);
                    rec(h, g, map, count);
                    map.pop();
                }
            }
        }
        let mut c = 0;
        rec(h, g, &mut Vec::new(), &mut c);
        c
    }

    #[test]
    fn existence_examples() {
        let p3_closed = path(3).with_edge(0, 2);
        assert!(embed_exists(&complete(3), &p3_closed, &[]));
        assert!(!embed_exists(&complete(4), &cycle(5), &[]));
        assert!(embed_exists(&cycle(4), &cube(), &[(0, 0), (1, 1)]));
        assert!(!embed_exists(&cycle(4), &cube(), &[(0, 0), (1, 7)]));
    }

    #[test]
    fn copy_counts() {
        assert_eq!(count_copies(&complete(3), &complete(4)).unwrap(), 4);
        assert_eq!(count_copies(&complete(2), &cycle(5)).unwrap(), 5);
        assert_eq!(count_copies(&cycle(4), &cube()).unwrap(), 6);
        assert_eq!(brute_embeddings(&cycle(4), &cube()), count_embeddings(&cycle(4), &cube()));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphism_count(&complete(4)).unwrap(), 24);
        assert_eq!(automorphism_count(&cycle(5)).unwrap(), 10);
        assert_eq!(automorphism_count(&cube()).unwrap(), 48);
        assert_eq!(automorphism_count(&petersen()).unwrap(), 120);
        assert!(automorphism_count(&Graph::empty(13)).is_err());
    }

    #[test]
    fn orbit_representatives() {
        assert_eq!(arc_orbits(&complete(5)).len(), 1);
        assert_eq!(edge_orbits(&wheel(7)).len(), 2);
        assert_eq!(edge_orbits(&path(4)).len(), 2);
        assert_eq!(arc_orbits(&path(3)).len(), 2);
    }

    #[test]
    fn matches_brute_force_on_small_hosts() {
        let hosts = [petersen(), cube(), wheel(6), complete_bipartite(3, 3), cycle(7)];
        let pats = [path(4), cycle(4), cycle(5), complete(3), star(3)];
        for g in &hosts {
            for h in &pats {
                assert_eq!(brute_embeddings(h, g), count_embeddings(h, g), "{h:?} in {g:?}");
            }
        }
    }
}

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::Graph;

const EXHAUSTIVE_MAX_VERTICES: usize = 20;
const SAMPLES: usize = 20_000;

#[derive(Clone, Debug, Serialize)]
pub struct PropertyCheck {
    pub holds: bool,
    /// False when only a random sample of the relevant sets was inspected.
    pub exhaustive: bool,
    pub detail: String,
}

/// The three typical properties of a dense random pattern, tested literally
/// against a declared edge density `p`.
#[derive(Clone, Debug, Serialize)]
pub struct GkpReport {
    pub k: usize,
    pub p: f64,
    pub eps: f64,
    pub degree_balance: PropertyCheck,
    pub no_sparse_pair: PropertyCheck,
    pub small_sets_sparse: PropertyCheck,
}

impl GkpReport {
    pub fn all_hold(&self) -> bool {
        self.degree_balance.holds && self.no_sparse_pair.holds && self.small_sets_sparse.holds
    }
}

fn binom(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn for_each_subset(n: usize, r: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == r {
            return f(cur);
        }
        for v in start..=(n - (r - cur.len())) {
            cur.push(v);
            let go = rec(n, r, v + 1, cur, f);
            cur.pop();
            if !go {
                return false;
            }
        }
        true
    }
    if r <= n {
        rec(n, r, 0, &mut Vec::with_capacity(r), f);
    }
}

/// Runs `f` on every `r`-subset when the graph is small, on a seeded sample otherwise.
/// Returns whether the scan was exhaustive.
fn scan_subsets(n: usize, r: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if n <= EXHAUSTIVE_MAX_VERTICES || binom(n, r) <= SAMPLES as u128 {
        for_each_subset(n, r, f);
        true
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6b70);
        for _ in 0..SAMPLES {
            let mut set = sample(&mut rng, n, r).into_vec();
            set.sort_unstable();
            if !f(&set) {
                break;
            }
        }
        false
    }
}

pub fn gkp_property_check(h: &Graph, u: &[usize], eps: f64, p: f64) -> GkpReport {
    let k = h.n();
    let kf = k as f64;
    let mut in_u = vec![false; k];
    for &x in u {
        in_u[x] = true;
    }

    let (lo, hi) = ((0.5 - eps) * kf * p, (0.5 + eps) * kf * p);
    let mut bad = None;
    for v in 0..k {
        let du = h.neighbors(v).filter(|&x| in_u[x]).count();
        let dw = h.degree(v) - du;
        if [du, dw].iter().any(|&d| (d as f64) < lo || (d as f64) > hi) {
            bad = Some(format!("vertex {v}: d(v,U)={du}, d(v,W)={dw}, window [{lo:.3}, {hi:.3}]"));
            break;
        }
    }
    let degree_balance = PropertyCheck {
        holds: bad.is_none(),
        exhaustive: true,
        detail: bad.unwrap_or_else(|| format!("all degrees inside [{lo:.3}, {hi:.3}]")),
    };

    // A sparse pair of size m contains one of any smaller size, so the least size suffices.
    let m0 = ((eps * kf).ceil() as usize).max(1);
    let mut hole = None;
    let exhaustive = if 2 * m0 > k {
        true
    } else {
        scan_subsets(k, m0, &mut |a| {
            let mut in_a = vec![false; k];
            for &x in a {
                in_a[x] = true;
            }
            let (mut zero, mut one) = (Vec::new(), Vec::new());
            for v in (0..k).filter(|&v| !in_a[v]) {
                match h.neighbors(v).filter(|&x| in_a[x]).count() {
                    0 => zero.push(v),
                    1 => one.push(v),
                    _ => {}
                }
            }
            let b: Option<Vec<usize>> = if zero.len() >= m0 {
                Some(zero[..m0].to_vec())
            } else if zero.len() + 1 >= m0 && !one.is_empty() {
                Some(zero.iter().copied().chain([one[0]]).collect())
            } else {
                None
            };
            match b {
                Some(b) => {
                    hole = Some(format!("A={a:?}, B={b:?}"));
                    false
                }
                None => true,
            }
        })
    };
    let no_sparse_pair = PropertyCheck {
        holds: hole.is_none(),
        exhaustive,
        detail: hole.unwrap_or_else(|| format!("no pair of size {m0} with at most one edge between")),
    };

    let ymax = (4.0 * eps * kf).floor() as usize;
    let mut dense = None;
    let mut all_exhaustive = true;
    for size in 2..=ymax.min(k) {
        let limit = size as f64 * kf * p / 10.0;
        let ex = scan_subsets(k, size, &mut |y| {
            let e = h.induced(y).edge_count();
            if e as f64 > limit {
                dense = Some(format!("Y={y:?} spans {e} edges > {limit:.3}"));
                false
            } else {
                true
            }
        });
        all_exhaustive &= ex;
        if dense.is_some() {
            break;
        }
    }
    let small_sets_sparse = PropertyCheck {
        holds: dense.is_none(),
        exhaustive: all_exhaustive,
        detail: dense.unwrap_or_else(|| format!("every Y with |Y| ≤ {ymax} is sparse enough")),
    };

    GkpReport { k, p, eps, degree_balance, no_sparse_pair, small_sets_sparse }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::complete;

    #[test]
    fn complete_graph_degrees_sit_just_outside_the_window() {
        let u: Vec<usize> = (0..10).collect();
        let r = gkp_property_check(&complete(20), &u, 0.006, 1.0);
        // Vertices of U see 9 others in U, below 10 - 0.12.
        assert!(!r.degree_balance.holds);
        // Singletons are sparse pairs whenever the least size rounds up to one.
        assert!(!r.no_sparse_pair.holds);
        assert!(r.small_sets_sparse.holds);
    }

    #[test]
    fn isolated_vertex_breaks_balance() {
        let g = complete(19).disjoint_union(&Graph::empty(1));
        let u: Vec<usize> = (0..10).collect();
        assert!(!gkp_property_check(&g, &u, 0.1, 0.9).degree_balance.holds);
    }

    #[test]
    fn dense_graph_has_no_sparse_pair_at_larger_eps() {
        let u: Vec<usize> = (0..10).collect();
        let r = gkp_property_check(&complete(20), &u, 0.1, 1.0);
        assert!(r.no_sparse_pair.holds);
        assert!(r.degree_balance.holds);
    }
}

//! Small named graphs used as patterns throughout the crate.

use super::Graph;

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 1..n {
        g.add_edge(u - 1, u);
    }
    g
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let mut g = path(n);
    g.add_edge(n - 1, 0);
    g
}

pub fn star(leaves: usize) -> Graph {
    let mut g = Graph::empty(leaves + 1);
    for v in 1..=leaves {
        g.add_edge(0, v);
    }
    g
}

/// Hub `0` joined to the cycle `1, 2, …, k`.
pub fn wheel(k: usize) -> Graph {
    assert!(k >= 3);
    let mut g = Graph::empty(k + 1);
    for v in 1..=k {
        g.add_edge(0, v);
        g.add_edge(v, if v == k { 1 } else { v + 1 });
    }
    g
}

/// Parts `0..r` and `r..r+s`.
pub fn complete_bipartite(r: usize, s: usize) -> Graph {
    let mut g = Graph::empty(r + s);
    for u in 0..r {
        for v in r..(r + s) {
            g.add_edge(u, v);
        }
    }
    g
}

/// The 3-cube on `{0,1}^3`, vertices encoded as 3-bit integers.
pub fn cube() -> Graph {
    let mut g = Graph::empty(8);
    for u in 0..8usize {
        for b in 0..3 {
            let v = u ^ (1 << b);
            if u < v {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn petersen() -> Graph {
    let mut g = Graph::empty(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    g
}

/// The square of the cycle `0, 1, …, n−1`.
pub fn cycle_square(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for i in 0..n {
        for d in 1..=2 {
            let j = (i + d) % n;
            if i != j {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Looks up a pattern by name: `k5`, `c7`, `p4`, `w7`, `k3,3`, `q3`, `petersen`, `k3+k2`.
pub fn by_name(name: &str) -> Option<Graph> {
    let name = name.trim().to_ascii_lowercase();
    if let Some((a, b)) = name.split_once('+') {
        return Some(by_name(a)?.disjoint_union(&by_name(b)?));
    }
    let num = |s: &str| s.parse::<usize>().ok();
    match name.as_str() {
        "q3" | "cube" => Some(cube()),
        "petersen" => Some(petersen()),
        _ => {
            if let Some(rest) = name.strip_prefix('k') {
                if let Some((r, s)) = rest.split_once(',') {
                    return Some(complete_bipartite(num(r)?, num(s)?));
                }
                return num(rest).map(complete);
            }
            if let Some(rest) = name.strip_prefix('c') {
                return num(rest).filter(|&n| n >= 3).map(cycle);
            }
            if let Some(rest) = name.strip_prefix('p') {
                return num(rest).map(path);
            }
            if let Some(rest) = name.strip_prefix('w') {
                return num(rest).filter(|&n| n >= 3).map(wheel);
            }
            if let Some(rest) = name.strip_prefix('s') {
                return num(rest).map(star);
            }
            None
        }
    }
}

use serde::Serialize;

use super::{default_ordering, Chain, ChainCollection, Check, Witness};
use crate::classify::{is_111_inseparable, is_l1_inseparable};
use crate::error::ChainError;

/// Which gluing theorem the caller is relying on; only the preconditions differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkMode {
    /// Needs a strongly proper collection and a pattern that no edge plus two
    /// vertices (one per side, when bipartite) can disconnect.
    Standard,
    /// Needs a proper collection of simple chains longer than `5k` whose end
    /// segments avoid every other chain.
    Plus,
    /// No precondition checks.
    Unchecked,
}

/// The first `k` and the last `k + 1` copies of each chain avoid the vertices of every other chain.
pub fn ends_disjoint_check(coll: &ChainCollection) -> Check {
    let k = coll.pattern().n();
    let n = coll.n();
    let mut owner: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, c) in coll.chains().iter().enumerate() {
        for v in c.vertices() {
            owner[v].push(a);
        }
    }
    for (a, c) in coll.chains().iter().enumerate() {
        let tau = c.len();
        let ends = (0..tau).filter(|&i| i < k || i + k + 1 >= tau);
        for i in ends {
            for &v in &c.copies()[i] {
                if let Some(&b) = owner[v].iter().find(|&&b| b != a) {
                    return Check::new("ends_disjoint", Some(Witness::SharedVertex { vertex: v, chains: [a, b] }));
                }
            }
        }
    }
    Check::new("ends_disjoint", None)
}

fn precondition(msg: impl Into<String>) -> ChainError {
    ChainError::Precondition(msg.into())
}

/// Glues the chains of a collection, in order, into one chain: between
/// consecutive chains a simple chain of `2k` fresh copies runs from the last
/// link of one to the origin of the next. The result has
/// `Σ τ_a + 2k(s − 1)` copies and keeps the first chain's origin.
pub fn link_chains(coll: &ChainCollection, mode: LinkMode) -> Result<Chain, ChainError> {
    let h = coll.pattern();
    let k = h.n();
    let chains = coll.chains();
    let union_sides = coll.union_host().bipartition();
    match mode {
        LinkMode::Standard => {
            let ok = if union_sides.is_some() { is_111_inseparable(h)?.value } else { is_l1_inseparable(h, 2).value };
            if !ok {
                return Err(precondition("pattern can be separated by an edge and two vertices"));
            }
        }
        LinkMode::Plus => {
            if let Some(a) = chains.iter().position(|c| !c.is_simple() || c.len() <= 5 * k) {
                return Err(precondition(format!("chain {a} must be simple and longer than {}", 5 * k)));
            }
            if let Some(w) = ends_disjoint_check(coll).witness {
                return Err(precondition(format!("chain ends overlap: {w:?}")));
            }
        }
        LinkMode::Unchecked => {}
    }
    if chains.len() == 1 {
        return Ok(chains[0].clone());
    }

    let side_ok = |ord: &[usize]| match (&union_sides, h.bipartition()) {
        (Some(_), Some(s)) => s[ord[0]] == s[ord[k - 2]],
        (Some(_), None) => false,
        _ => true,
    };
    let ordering = chains[0]
        .ordering()
        .filter(|o| side_ok(o))
        .map(<[usize]>::to_vec)
        .or_else(|| default_ordering(h))
        .ok_or_else(|| ChainError::Ordering("pattern has no two disjoint edges".into()))?;

    let fresh = 2 * k * (k - 2) - 2;
    let gaps = chains.len() - 1;
    let n = coll.n() + gaps * fresh;
    let mut names: Vec<String> = coll.names().to_vec();
    let mut copies = Vec::new();
    let mut links = Vec::new();
    for (a, c) in chains.iter().enumerate() {
        copies.extend(c.copies().iter().cloned());
        links.extend_from_slice(c.links());
        if a == gaps {
            break;
        }
        let from = *c.links().last().expect("chains are nonempty");
        let mut to = chains[a + 1].origin();
        if let Some(s) = &union_sides {
            if s[to.0] != s[from.0] {
                to = (to.1, to.0);
            }
        }
        let base = coll.n() + a * fresh;
        let last = 2 * k * (k - 2);
        // 1-based `u_j` of this gap.
        let u = |j: usize| match j {
            1 => from.0,
            2 => from.1,
            _ if j == last + 1 => to.0,
            _ if j == last + 2 => to.1,
            _ => base + j - 3,
        };
        names.extend((3..=last).map(|j| format!("u{}_{j}", a + 1)));
        for l in 1..=2 * k {
            let mut map = vec![0; k];
            for (j, &p) in ordering.iter().enumerate() {
                map[p] = u((l - 1) * (k - 2) + j + 1);
            }
            copies.push(map);
            links.push((u(l * (k - 2) + 1), u(l * (k - 2) + 2)));
        }
    }
    Chain::new(h.clone(), copies, links, chains[0].origin(), n)?.with_names(names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{simple_chain, verify_collection, verify_proper, CollectionKind, Strength, DEFAULT_COPY_BUDGET};
    use crate::graph::named::complete;
    use crate::graph::Graph;

    fn shifted(c: &Chain, by: usize, n: usize) -> Chain {
        let copies = c.copies().iter().map(|m| m.iter().map(|v| v + by).collect()).collect();
        let links = c.links().iter().map(|&(a, b)| (a + by, b + by)).collect();
        let (x, y) = c.origin();
        Chain::new(c.pattern().clone(), copies, links, (x + by, y + by), n).unwrap()
    }

    fn two_k5_chains() -> ChainCollection {
        let c = simple_chain(&complete(5), &[0, 1, 2, 3, 4], 3).unwrap();
        let n = 2 * c.n();
        let a = shifted(&c, 0, n);
        let b = shifted(&c, c.n(), n);
        let names = (0..n).map(|i| format!("x{i}")).collect();
        ChainCollection::new(CollectionKind::Custom, vec![1, 2], vec![a, b], names).unwrap()
    }

    #[test]
    fn single_chain_is_unchanged() {
        let coll = two_k5_chains().select(&[0]).unwrap();
        assert_eq!(link_chains(&coll, LinkMode::Standard).unwrap(), coll.chains()[0]);
    }

    #[test]
    fn linked_length_and_properness() {
        let coll = two_k5_chains();
        assert!(verify_collection(&coll, Strength::Strong, DEFAULT_COPY_BUDGET).passed());
        let c = link_chains(&coll, LinkMode::Standard).unwrap();
        assert_eq!(c.len(), 3 + 3 + 2 * 5);
        assert_eq!(c.n(), coll.n() + 2 * 5 * 3 - 2);
        assert_eq!(c.origin(), coll.chains()[0].origin());
        assert!(verify_proper(&c, DEFAULT_COPY_BUDGET).passed());
        let fin = crate::engine::run(c.pattern(), &crate::chains::starting_graph(&c), &crate::engine::RunOptions::exact());
        let round = fin.round_of();
        for i in 1..=c.len() {
            assert_eq!(round[&c.link(i)], i);
        }
    }

    #[test]
    fn plus_mode_needs_long_chains() {
        let coll = two_k5_chains();
        assert!(matches!(link_chains(&coll, LinkMode::Plus), Err(ChainError::Precondition(_))));
        assert!(ends_disjoint_check(&coll).holds);
    }

    #[test]
    fn separable_pattern_is_refused() {
        // Two triangles sharing a vertex, plus a pendant path: cut by one edge and a vertex.
        let h = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)]).unwrap();
        let c = simple_chain(&h, &[0, 1, 2, 3, 4, 5], 2).unwrap();
        let names = (0..c.n()).map(|i| i.to_string()).collect();
        let coll = ChainCollection::new(CollectionKind::Custom, vec![0], vec![c], names).unwrap();
        assert!(matches!(link_chains(&coll, LinkMode::Standard), Err(ChainError::Precondition(_))));
    }
}

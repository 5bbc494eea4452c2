use super::family::EquationFamily;
use super::verify::{find_violation, Domain};
use super::ZpSet;
use crate::error::AdditiveError;

const EXACT_MAX_P: u64 = 61;

fn free_of_all(p: u64, elems: &[u64], families: &[EquationFamily], budget: u128) -> Result<bool, AdditiveError> {
    for f in families {
        if find_violation(Domain::Mod(p), elems, f, budget)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scans `candidates` in order, keeping each one that leaves the set free of
/// every family; the result is maximal among the candidates and certified.
pub fn greedy_solution_free_set(
    p: u64,
    families: &[EquationFamily],
    candidates: impl IntoIterator<Item = u64>,
    budget: u128,
) -> Result<ZpSet, AdditiveError> {
    let mut elems: Vec<u64> = Vec::new();
    for c in candidates {
        let c = c % p;
        if c == 0 || elems.contains(&c) {
            continue;
        }
        elems.push(c);
        if !free_of_all(p, &elems, families, budget)? {
            elems.pop();
        }
    }
    let mut set = ZpSet::new(p, elems)?.with_origin("greedy under the verifier".to_string());
    for f in families {
        set.require(f, budget)?;
    }
    Ok(set)
}

/// Largest subset of `Z_p \ {0}` free of `family`, by branch and bound; tiny `p` only.
pub fn max_solution_free_size(p: u64, family: &EquationFamily, budget: u128) -> Result<(usize, Vec<u64>), AdditiveError> {
    if p > EXACT_MAX_P {
        return Err(AdditiveError::Infeasible(format!("exact maximum limited to p ≤ {EXACT_MAX_P}")));
    }
    fn rec(
        p: u64,
        next: u64,
        cur: &mut Vec<u64>,
        best: &mut Vec<u64>,
        family: &EquationFamily,
        budget: u128,
    ) -> Result<(), AdditiveError> {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        for x in next..p {
            if cur.len() + (p - x) as usize <= best.len() {
                break;
            }
            cur.push(x);
            if find_violation(Domain::Mod(p), cur, family, budget)?.is_none() {
                rec(p, x + 1, cur, best, family, budget)?;
            }
            cur.pop();
        }
        Ok(())
    }
    let mut best = Vec::new();
    rec(p, 1, &mut Vec::new(), &mut best, family, budget)?;
    Ok((best.len(), best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::additive::DEFAULT_BUDGET;

    #[test]
    fn greedy_three_ap_free_start() {
        let s = greedy_solution_free_set(101, &[EquationFamily::Mean { j: 2 }], 1..=20, DEFAULT_BUDGET).unwrap();
        // The greedy progression-free sequence starts 1, 2, 4, 5, 10, 11, 13, 14.
        assert_eq!(&s.elems()[..8], &[1, 2, 4, 5, 10, 11, 13, 14]);
    }

    #[test]
    fn exact_maximum_small() {
        // Largest 3-AP-free subset of Z_7 \ {0}.
        let (size, set) = max_solution_free_size(7, &EquationFamily::Mean { j: 2 }, DEFAULT_BUDGET).unwrap();
        assert!(find_violation(Domain::Mod(7), &set, &EquationFamily::Mean { j: 2 }, DEFAULT_BUDGET).unwrap().is_none());
        let brute = (1u32..64)
            .filter(|mask| {
                let e: Vec<u64> = (0..6).filter(|i| mask >> i & 1 == 1).map(|i| i as u64 + 1).collect();
                find_violation(Domain::Mod(7), &e, &EquationFamily::Mean { j: 2 }, DEFAULT_BUDGET).unwrap().is_none()
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap();
        assert_eq!(size, brute);
    }
}

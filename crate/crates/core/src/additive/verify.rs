use rayon::prelude::*;
use serde::Serialize;

use super::family::{is_trivial_solution, Equation, EquationFamily};
use crate::error::AdditiveError;

/// Default cap on verifier work, counted in candidate tuples.
pub const DEFAULT_BUDGET: u128 = 4_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Mod(u64),
    Integers,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub equation: Equation,
    pub tuple: Vec<u64>,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} at {:?}", self.equation, self.tuple)
    }
}

fn solve_index(eq: &Equation, domain: Domain) -> Option<usize> {
    let c = eq.coeffs();
    (0..c.len()).rev().find(|&i| match domain {
        Domain::Mod(p) => c[i].rem_euclid(p as i64) != 0,
        Domain::Integers => c[i] != 0,
    })
}

fn equation_cost(eq: &Equation, size: usize, domain: Domain) -> u128 {
    let free = if solve_index(eq, domain).is_some() { eq.arity() - 1 } else { eq.arity() };
    (size as u128).saturating_pow(free as u32)
}

/// Tuples the verifier would inspect for `family` on a set of `size` elements.
pub fn work_estimate(family: &EquationFamily, size: usize, domain: Domain) -> u128 {
    family.equations().iter().map(|e| equation_cost(e, size, domain)).fold(0u128, u128::saturating_add)
}

struct Membership {
    bits: Vec<bool>,
}

impl Membership {
    fn new(elems: &[u64]) -> Self {
        let top = elems.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut bits = vec![false; top];
        for &x in elems {
            bits[x as usize] = true;
        }
        Membership { bits }
    }

    fn contains(&self, x: i128) -> bool {
        x >= 0 && (x as usize) < self.bits.len() && self.bits[x as usize]
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i128) as u64
}

/// First non-trivial solution of `eq` with all values in `elems`, if any.
/// All but one variable are enumerated and the last is solved for.
fn scan(eq: &Equation, elems: &[u64], member: &Membership, domain: Domain) -> Option<Vec<u64>> {
    let h = eq.arity();
    let c = eq.coeffs();
    if elems.is_empty() {
        return None;
    }
    let solve = solve_index(eq, domain);
    let free: Vec<usize> = (0..h).filter(|&i| Some(i) != solve).collect();
    let mut idx = vec![0usize; free.len()];
    let mut tuple = vec![0u64; h];
    let inv = match (solve, domain) {
        (Some(s), Domain::Mod(p)) => mod_inverse(c[s].rem_euclid(p as i64) as u64, p),
        _ => 0,
    };
    loop {
        let mut partial: i128 = 0;
        for (slot, &i) in free.iter().enumerate() {
            tuple[i] = elems[idx[slot]];
            partial += c[i] as i128 * tuple[i] as i128;
        }
        let hit = match (solve, domain) {
            (None, Domain::Mod(p)) => partial.rem_euclid(p as i128) == 0,
            (None, Domain::Integers) => partial == 0,
            (Some(s), Domain::Mod(p)) => {
                let p = p as i128;
                let x = ((-partial).rem_euclid(p) * inv as i128).rem_euclid(p);
                tuple[s] = x as u64;
                member.contains(x)
            }
            (Some(s), Domain::Integers) => {
                let a = c[s] as i128;
                if (-partial) % a == 0 {
                    let x = -partial / a;
                    if member.contains(x) {
                        tuple[s] = x as u64;
                        true
                    } else {
                        false
                    }
                } else {
                    false
                }
            }
        };
        if hit && !is_trivial_solution(eq, &tuple) {
            return Some(tuple.clone());
        }
        let mut slot = 0;
        loop {
            if slot == idx.len() {
                return None;
            }
            idx[slot] += 1;
            if idx[slot] < elems.len() {
                break;
            }
            idx[slot] = 0;
            slot += 1;
        }
    }
}

/// Exhaustive search for a non-trivial solution to any member of `family`
/// with every variable in `elems`. Fails rather than samples when the work
/// exceeds `budget`.
pub fn find_violation(
    domain: Domain,
    elems: &[u64],
    family: &EquationFamily,
    budget: u128,
) -> Result<Option<Violation>, AdditiveError> {
    let equations = family.equations();
    let needed = equations.iter().map(|e| equation_cost(e, elems.len(), domain)).fold(0u128, u128::saturating_add);
    if needed > budget {
        return Err(AdditiveError::Budget { needed, budget });
    }
    let member = Membership::new(elems);
    Ok(equations
        .par_iter()
        .find_map_first(|eq| scan(eq, elems, &member, domain).map(|tuple| Violation { equation: eq.clone(), tuple })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ap_free(elems: &[u64], p: u64) -> bool {
        find_violation(Domain::Mod(p), elems, &EquationFamily::Mean { j: 2 }, DEFAULT_BUDGET).unwrap().is_none()
    }

    #[test]
    fn three_ap_examples() {
        assert!(ap_free(&[1, 2, 4], 13));
        let v = find_violation(Domain::Mod(13), &[1, 2, 3], &EquationFamily::Mean { j: 2 }, DEFAULT_BUDGET)
            .unwrap()
            .unwrap();
        let mut t = v.tuple.clone();
        t.sort();
        assert_eq!(t, vec![1, 2, 3]);
        assert!(!ap_free(&[1, 7, 13], 31));
    }

    #[test]
    fn brute_force_agreement() {
        // Compare against a direct scan of all h-tuples.
        let family = EquationFamily::Bounded { h: 3, k: 2 };
        let p = 17u64;
        for mask in 1u32..(1 << 8) {
            let elems: Vec<u64> = (0..8).filter(|i| mask >> i & 1 == 1).map(|i| i as u64 + 1).collect();
            let fast = find_violation(Domain::Mod(p), &elems, &family, DEFAULT_BUDGET).unwrap().is_some();
            let mut slow = false;
            for eq in family.equations() {
                let h = eq.arity();
                let total = elems.len().pow(h as u32);
                for code in 0..total {
                    let mut c = code;
                    let xs: Vec<u64> = (0..h)
                        .map(|_| {
                            let x = elems[c % elems.len()];
                            c /= elems.len();
                            x
                        })
                        .collect();
                    let v: i64 = eq.coeffs().iter().zip(&xs).map(|(&a, &x)| a * x as i64).sum();
                    if v.rem_euclid(p as i64) == 0 && !is_trivial_solution(&eq, &xs) {
                        slow = true;
                    }
                }
            }
            assert_eq!(fast, slow, "{elems:?}");
        }
    }

    #[test]
    fn singletons_are_free_and_budget_is_enforced() {
        let family = EquationFamily::Bounded { h: 4, k: 3 };
        assert!(find_violation(Domain::Mod(101), &[5], &family, DEFAULT_BUDGET).unwrap().is_none());
        let big: Vec<u64> = (1..100).collect();
        assert!(matches!(find_violation(Domain::Mod(101), &big, &family, 1000), Err(AdditiveError::Budget { .. })));
    }

    #[test]
    fn integer_mode_ignores_wraparound() {
        let family = EquationFamily::Mean { j: 2 };
        assert!(find_violation(Domain::Integers, &[1, 7, 14], &family, DEFAULT_BUDGET).unwrap().is_none());
        assert!(find_violation(Domain::Mod(19), &[1, 7, 14], &family, DEFAULT_BUDGET).unwrap().is_some());
    }
}

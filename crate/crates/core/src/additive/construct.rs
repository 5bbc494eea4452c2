use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::family::EquationFamily;
use super::search::greedy_solution_free_set;
use super::verify::DEFAULT_BUDGET;
use super::ZpSet;
use crate::error::AdditiveError;

pub const TRANSLATE_RETRIES: usize = 64;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime in `[lo, hi]`.
pub fn prime_in_range(lo: u64, hi: u64) -> Result<u64, AdditiveError> {
    (lo..=hi).find(|&x| is_prime(x)).ok_or(AdditiveError::NoPrime { lo, hi })
}

/// Residues `b ≤ ⌊(p−1)/hK⌋` with `b ≡ 1 (mod hK+1)`: every equation with
/// bounded coefficients and nonzero coefficient sum stays nonzero on them.
pub fn modular_construction(p: u64, h: usize, k: i64) -> Result<ZpSet, AdditiveError> {
    let hk = h as u64 * k as u64;
    let n = (p - 1) / hk.max(1);
    if n < 1 {
        return Err(AdditiveError::Infeasible(format!("p={p} too small: (p-1)/hK < 1")));
    }
    let mut set = ZpSet::new(p, (1..=n).filter(|b| b % (hk + 1) == 1))?.with_origin(format!("modular h={h} K={k}"));
    set.attest(&EquationFamily::NonZeroSum { h, k }, DEFAULT_BUDGET)?;
    Ok(set)
}

/// Parameters of a sphere construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BehrendChoice {
    pub d: u32,
    pub q: u64,
    pub r: u64,
    pub size: usize,
    /// `q^(d−2)/d`, which the size at the best radius must meet.
    pub averaging_bound: f64,
}

/// Numbers with `d` digits in `[0, q−1]`, base `k·q − 1`, whose digit squares sum to `r`.
pub fn behrend_sphere(d: u32, q: u64, k: u64, r: u64) -> Vec<u64> {
    let base = k * q - 1;
    let mut out = Vec::new();
    let mut digits = vec![0u64; d as usize];
    loop {
        if digits.iter().map(|a| a * a).sum::<u64>() == r {
            out.push(digits.iter().rev().fold(0u64, |acc, &a| acc * base + a));
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                out.sort_unstable();
                return out;
            }
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// A subset of `[n]` free of non-trivial solutions to `x_1 + … + x_k = k·y`.
/// Uses `d = ⌊√ln n⌋` (at least 2) and `q = ⌊n^(1/d)/k⌋`, with the most
/// populous positive radius; falls back to `{1}` when `n` is too small for
/// two digits.
pub fn behrend_set(n: u64, k: u64) -> (Vec<u64>, Option<BehrendChoice>) {
    if n < 1 {
        return (Vec::new(), None);
    }
    let d = ((n as f64).ln().sqrt().floor() as u32).max(2);
    let mut q = ((n as f64).powf(1.0 / d as f64) / k as f64).floor() as u64;
    while q >= 2 && (k * q - 1).checked_pow(d).is_none_or(|top| top > n + 1) {
        q -= 1;
    }
    if q < 2 {
        return (vec![1], None);
    }
    let mut best: Option<(usize, u64)> = None;
    for r in 1..=(d as u64 * (q - 1) * (q - 1)) {
        let size = behrend_sphere(d, q, k, r).len();
        if best.is_none_or(|(s, _)| size > s) {
            best = Some((size, r));
        }
    }
    let (size, r) = best.expect("at least one radius");
    let elems = behrend_sphere(d, q, k, r);
    let averaging_bound = (q as f64).powi(d as i32 - 2) / d as f64;
    (elems, Some(BehrendChoice { d, q, r, size, averaging_bound }))
}

/// A sphere set lifted into `Z_p` from `[⌊(p−1)/j(j+1)⌋]`, certified against `x_1+…+x_j = j·y`.
pub fn mean_free_set(p: u64, j: usize) -> Result<ZpSet, AdditiveError> {
    let n = (p - 1) / (j as u64 * (j as u64 + 1));
    let (elems, choice) = behrend_set(n, j as u64);
    if elems.is_empty() {
        return Err(AdditiveError::Infeasible(format!("p={p} leaves no room for j={j}")));
    }
    let origin = match choice {
        Some(c) => format!("sphere d={} q={} r={} j={j}", c.d, c.q, c.r),
        None => format!("singleton j={j}"),
    };
    let mut set = ZpSet::new(p, elems)?.with_origin(origin);
    set.attest(&EquationFamily::Mean { j }, DEFAULT_BUDGET)?;
    Ok(set)
}

fn verified_families(set: &ZpSet) -> Vec<EquationFamily> {
    set.certificates().iter().filter(|c| c.verified).map(|c| c.family.clone()).collect()
}

/// `(∩ (A_i + t_i)) ∩ B` for explicit shifts, re-certified for every family
/// the inputs were certified for.
pub fn translate_intersect_with(sets: &[ZpSet], shifts: &[u64], b: &ZpSet) -> Result<ZpSet, AdditiveError> {
    let p = b.p();
    if sets.iter().any(|s| s.p() != p) || shifts.len() != sets.len() {
        return Err(AdditiveError::ModulusMismatch);
    }
    let mut families: Vec<EquationFamily> = Vec::new();
    for s in sets {
        for f in verified_families(s) {
            if !f.is_zero_sum() {
                return Err(AdditiveError::Infeasible(format!("translated sets must avoid zero-sum families only; {f} is not")));
            }
            families.push(f);
        }
    }
    families.extend(verified_families(b));
    let kept = b.elems().iter().copied().filter(|&x| sets.iter().zip(shifts).all(|(s, &t)| s.contains(x + p - t % p)));
    let mut out = ZpSet::new(p, kept)?.with_origin(format!("translates {shifts:?} intersected with {}", b.origin));
    for f in &families {
        if !out.is_certified(f) {
            out.require(f, DEFAULT_BUDGET)?;
        }
    }
    Ok(out)
}

/// Random translates of zero-sum-avoiding sets intersected with `b`, retried
/// until the intersection is nonempty and at least `∏ (|A_i|/p) · |B|`.
pub fn translate_intersect(sets: &[ZpSet], b: &ZpSet, seed: u64) -> Result<ZpSet, AdditiveError> {
    let p = b.p();
    if sets.iter().any(|s| s.p() != p) {
        return Err(AdditiveError::ModulusMismatch);
    }
    let bound = sets.iter().map(|s| s.len() as f64 / p as f64).product::<f64>() * b.len() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..TRANSLATE_RETRIES {
        let shifts: Vec<u64> = sets.iter().map(|_| rng.random_range(0..p)).collect();
        let hits = b
            .elems()
            .iter()
            .filter(|&&x| sets.iter().zip(&shifts).all(|(s, &t)| s.contains(x + p - t)))
            .count();
        best = best.max(hits);
        if hits > 0 && hits as f64 >= bound {
            return translate_intersect_with(sets, &shifts, b);
        }
    }
    Err(AdditiveError::Retries { attempts: TRANSLATE_RETRIES, best, bound })
}

fn singleton(p: u64, x: u64, families: &[EquationFamily], why: &str) -> Result<ZpSet, AdditiveError> {
    let mut s = ZpSet::new(p, [x])?.with_origin(format!("singleton fallback: {why}"));
    for f in families {
        s.require(f, DEFAULT_BUDGET)?;
    }
    Ok(s)
}

/// A `(K,3)`-fold solution-free set: sphere sets for each `α_1 x_1 + α_2 x_2 = j·y`
/// with `2 ≤ j ≤ K`, translated and intersected with the modular set. Falls back
/// to a singleton when translation retries run out; a verification failure of
/// the assembled set is an error.
pub fn kfold3_set(p: u64, k: i64) -> Result<ZpSet, AdditiveError> {
    let target = EquationFamily::Bounded { h: 3, k };
    let base = modular_construction(p, 3, k)?;
    let mut parts = Vec::new();
    for j in 2..=k {
        let mut s = match mean_free_set(p, j as usize) {
            Ok(s) => s,
            Err(AdditiveError::Infeasible(why)) => return singleton(p, base.elems()[0], &[target], &why),
            Err(e) => return Err(e),
        };
        s.require(&EquationFamily::Balanced { ranges: vec![(0, k); 2], total: Some(j) }, DEFAULT_BUDGET)?;
        parts.push(s);
    }
    let mut out = match translate_intersect(&parts, &base, p) {
        Ok(s) => s,
        Err(AdditiveError::Retries { best, bound, .. }) => {
            let why = format!("best translate kept {best} < bound {bound:.3}");
            return singleton(p, base.elems()[0], &[target], &why);
        }
        Err(e) => return Err(e),
    };
    out.require(&target, DEFAULT_BUDGET)?;
    out.origin = format!("({k},3)-fold from {} sphere sets and the modular set", parts.len());
    Ok(out)
}

fn ceil_div_f(x: f64) -> u64 {
    x.ceil().max(0.0) as u64
}

/// Sets avoiding `a x_1 + b x_2 − a x_3 − b x_4` for `a, b ≤ k1`: a base set
/// `B ⊂ Z_q` free of `β_1 x_1 + β_2 x_2 = (β_1+β_2) y` lifted by `b ↦ b + (2k1+1)q·(b² mod q)`.
pub fn ruzsa_equal_pair_set(p: u64, k1: i64) -> Result<ZpSet, AdditiveError> {
    let n = (p - 1) / (8 * k1 as u64);
    let root = (n as f64).sqrt();
    let lo = ceil_div_f(root / (8 * k1) as f64).max(2);
    let hi = (root / (4 * k1) as f64).floor() as u64;
    let q = prime_in_range(lo, hi)?;
    let base = greedy_solution_free_set(
        q,
        &[EquationFamily::Balanced { ranges: vec![(0, 2 * k1); 2], total: None }],
        1..q,
        DEFAULT_BUDGET,
    )?;
    let lift = (2 * k1 as u64 + 1) * q;
    let elems: Vec<u64> = base.elems().iter().map(|&b| b + lift * (b * b % q)).collect();
    if elems.iter().any(|&a| a > n) {
        return Err(AdditiveError::Infeasible(format!("lifted elements exceed n={n}")));
    }
    let mut set = ZpSet::new(p, elems)?.with_origin(format!("equal-pair lift q={q} |B|={}", base.len()));
    set.require(&EquationFamily::EqualPairs { k: k1 }, DEFAULT_BUDGET)?;
    Ok(set)
}

/// Sets avoiding the unequal-pair equations in the odd band above `m`, by
/// base-`d` digit sets over a base set in `Z_q` for each least coefficient `d−1`.
pub fn ruzsa_unequal_set(p: u64, k2: i64, m: i64) -> Result<ZpSet, AdditiveError> {
    if k2 <= 0 || k2 % 2 != 0 {
        return Err(AdditiveError::Infeasible(format!("k2={k2} must be positive and even")));
    }
    let full = EquationFamily::UnequalPairs { m, k: k2, least: None };
    let all: Vec<u64> = (1..p).collect();
    let n = (p - 1) / (4 * (m + k2) as u64);
    let mut parts = Vec::new();
    for d in ((m + 2)..=(m + k2)).step_by(2) {
        let family = EquationFamily::UnequalPairs { m, k: k2, least: Some(d - 1) };
        if family.equations().is_empty() {
            continue;
        }
        let lo = ceil_div_f(d as f64 / (8 * k2) as f64).max(2);
        let hi = (d as f64 / (4 * k2) as f64).floor() as u64;
        let q = prime_in_range(lo, hi)?;
        let du = d as u64;
        let digits = n.checked_ilog(du).unwrap_or(0) as i64 - 2;
        if digits < 0 {
            return Err(AdditiveError::Infeasible(format!("n={n} < d^2 for d={d}")));
        }
        let base = greedy_solution_free_set(
            q,
            &[EquationFamily::Balanced { ranges: vec![(1, k2), (1, k2), (1, 1)], total: None }],
            1..q,
            DEFAULT_BUDGET,
        )?;
        let mut elems = vec![0u64];
        for j in 0..=digits as u32 {
            let place = du.pow(j);
            elems = elems.iter().flat_map(|&e| base.elems().iter().map(move |&b| e + b * place)).collect();
        }
        let mut set = ZpSet::new(p, elems)?.with_origin(format!("digits base {d} over q={q}"));
        set.require(&family, DEFAULT_BUDGET)?;
        parts.push(set);
    }
    let mut out = if parts.is_empty() {
        ZpSet::new(p, all)?.with_origin("no unequal-pair equations in the band".to_string())
    } else {
        let everything = ZpSet::new(p, all)?;
        translate_intersect(&parts, &everything, p ^ 0x5eed)?
    };
    out.attest(&full, DEFAULT_BUDGET)?;
    Ok(out)
}

/// The composed set certified `(2(m+2K),3)`-fold solution-free and free of the
/// four-variable odd-band equations. Any sub-construction failure propagates.
pub fn sidon_extended_set(p: u64, k: i64, m: i64) -> Result<ZpSet, AdditiveError> {
    if k <= 0 || k % 2 != 0 {
        return Err(AdditiveError::Infeasible(format!("K={k} must be positive and even")));
    }
    let k0 = 2 * (m + 2 * k);
    let base = modular_construction(p, 4, k0)?;
    let mut parts = Vec::new();
    for j in 2..=(3 * k0) {
        let mut s = mean_free_set(p, j as usize)?;
        s.require(&EquationFamily::Balanced { ranges: vec![(0, k0); 3], total: Some(j) }, DEFAULT_BUDGET)?;
        parts.push(s);
    }
    parts.push(ruzsa_equal_pair_set(p, 2 * (m + k))?);
    parts.push(ruzsa_unequal_set(p, k, m)?);
    let mut out = translate_intersect(&parts, &base, p)?;
    out.require(&EquationFamily::Bounded { h: 3, k: k0 }, DEFAULT_BUDGET)?;
    out.attest(&EquationFamily::OddBand { m, k }, DEFAULT_BUDGET)?;
    out.origin = format!("odd-band m={m} K={k} composition");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(prime_in_range(10, 20).unwrap(), 11);
        assert_eq!(prime_in_range(90, 100).unwrap(), 97);
        assert_eq!(prime_in_range(25, 28), Err(AdditiveError::NoPrime { lo: 25, hi: 28 }));
    }

    #[test]
    fn modular_examples() {
        let s = modular_construction(211, 3, 2).unwrap();
        assert_eq!(s.elems(), &[1, 8, 15, 22, 29]);
        assert!(s.len() as f64 >= 35.0 / 24.0);
        assert!(s.is_certified(&EquationFamily::NonZeroSum { h: 3, k: 2 }));
        assert_eq!(modular_construction(43, 3, 2).unwrap().elems(), &[1]);
    }

    #[test]
    fn sphere_examples() {
        assert_eq!(behrend_sphere(2, 3, 2, 1), vec![1, 5]);
        let (s, choice) = behrend_set(100, 2);
        let c = choice.unwrap();
        assert!(c.size as f64 >= c.averaging_bound);
        assert!(s.iter().all(|&x| (1..=100).contains(&x)));
        let set = ZpSet::new(101, s.iter().copied()).unwrap();
        assert!(super::super::find_violation(
            super::super::Domain::Integers,
            set.elems(),
            &EquationFamily::Mean { j: 2 },
            DEFAULT_BUDGET
        )
        .unwrap()
        .is_none());
    }

    #[test]
    fn identity_translate_is_plain_intersection() {
        let a = ZpSet::new(31, [1, 2, 4, 8, 9]).unwrap();
        let b = ZpSet::new(31, [2, 3, 4, 5]).unwrap();
        let out = translate_intersect_with(&[a], &[0], &b).unwrap();
        assert_eq!(out.elems(), &[2, 4]);
    }

    #[test]
    fn kfold3_small_cases() {
        let s = kfold3_set(101, 2).unwrap();
        assert!(!s.is_empty());
        assert!(s.is_certified(&EquationFamily::Bounded { h: 3, k: 2 }));
        assert!(s.recheck(DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn kfold3_not_above_exact_optimum() {
        let family = EquationFamily::Bounded { h: 3, k: 1 };
        let (best, witness) = super::super::max_solution_free_size(31, &family, DEFAULT_BUDGET).unwrap();
        let built = kfold3_set(31, 1).unwrap();
        assert!(built.len() <= best);
        assert!(ZpSet::new(31, witness).unwrap().certify(&family, DEFAULT_BUDGET).unwrap().is_none());
    }

    #[test]
    fn ruzsa_constructions_report_infeasibility() {
        assert!(matches!(ruzsa_equal_pair_set(149, 1), Err(AdditiveError::NoPrime { .. })));
        assert!(ruzsa_unequal_set(149, 3, 1).is_err());
        // A band of two values has no unequal pairs, so everything is allowed.
        assert_eq!(ruzsa_unequal_set(149, 4, 1).unwrap().len(), 148);
        let s = ruzsa_equal_pair_set(2053, 1).unwrap();
        assert!(s.is_certified(&EquationFamily::EqualPairs { k: 1 }));
        assert!(s.elems().iter().all(|&a| a <= 2052 / 8));
    }
}

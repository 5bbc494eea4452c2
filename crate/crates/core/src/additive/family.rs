use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// `Σ α_i x_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Equation {
    coeffs: Vec<i64>,
}

impl Equation {
    pub fn new(coeffs: Vec<i64>) -> Self {
        assert!(!coeffs.is_empty(), "an equation needs at least one variable");
        Equation { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficient_sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn max_abs_coefficient(&self) -> i64 {
        self.coeffs.iter().map(|a| a.abs()).max().unwrap_or(0)
    }

    pub fn eval(&self, xs: &[i64]) -> i128 {
        self.coeffs.iter().zip(xs).map(|(&a, &x)| a as i128 * x as i128).sum()
    }

    /// Zero coefficients dropped, the rest sorted, global sign fixed.
    /// Solution-freeness over a set is invariant under all three moves.
    /// `None` for the zero equation, which has only trivial solutions.
    pub fn canonical(&self) -> Option<Equation> {
        let mut pos: Vec<i64> = self.coeffs.iter().copied().filter(|&a| a != 0).collect();
        if pos.is_empty() {
            return None;
        }
        pos.sort_unstable();
        let mut neg: Vec<i64> = pos.iter().map(|a| -a).collect();
        neg.sort_unstable();
        Some(Equation { coeffs: pos.max(neg) })
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let sign = if a < 0 { "-" } else if first { "" } else { "+" };
            let mag = a.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}x{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}x{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " = 0")
    }
}

/// A solution is trivial when the indices split into blocks of equal values
/// whose coefficients cancel. Grouping by value is the finest choice, so it
/// suffices to check each value class.
pub fn is_trivial_solution(eq: &Equation, xs: &[u64]) -> bool {
    assert_eq!(xs.len(), eq.arity(), "one value per variable");
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by_key(|&i| xs[i]);
    let mut i = 0;
    while i < order.len() {
        let mut sum = 0i64;
        let mut j = i;
        while j < order.len() && xs[order[j]] == xs[order[i]] {
            sum += eq.coeffs[order[j]];
            j += 1;
        }
        if sum != 0 {
            return false;
        }
        i = j;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EquationFamily {
    /// Every equation in `h` variables with coefficients in `[-k, k]`.
    Bounded { h: usize, k: i64 },
    /// The members of `Bounded` whose coefficients sum to zero.
    ZeroSum { h: usize, k: i64 },
    /// The members of `Bounded` whose coefficients do not sum to zero.
    NonZeroSum { h: usize, k: i64 },
    /// `Σ β_i x_i − (Σ β_i) y` with each `β_i` in its inclusive range,
    /// optionally only those with `Σ β_i = total`.
    Balanced { ranges: Vec<(i64, i64)>, total: Option<i64> },
    /// `x_1 + … + x_j − j·y`.
    Mean { j: usize },
    /// `a x_1 + b x_2 − a x_3 − b x_4` with `a, b ∈ 1..=k`.
    EqualPairs { k: i64 },
    /// `a x_1 + b x_2 − c x_3 − d x_4` with all coefficients in the odd band
    /// `{m+1, m+3, …, m+k−1}`, `a + b = c + d` and `{a, b} ≠ {c, d}`;
    /// optionally only those whose least coefficient is `least`.
    UnequalPairs { m: i64, k: i64, least: Option<i64> },
    /// Four variables, every `|α_i|` in the odd band, any signs.
    OddBand { m: i64, k: i64 },
}

fn odd_band(m: i64, k: i64) -> Vec<i64> {
    (1..k).step_by(2).map(|o| m + o).collect()
}

fn cartesian(ranges: &[Vec<i64>], out: &mut Vec<Vec<i64>>) {
    let mut cur = Vec::with_capacity(ranges.len());
    fn rec(ranges: &[Vec<i64>], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == ranges.len() {
            out.push(cur.clone());
            return;
        }
        for &a in &ranges[cur.len()] {
            cur.push(a);
            rec(ranges, cur, out);
            cur.pop();
        }
    }
    rec(ranges, &mut cur, out);
}

impl EquationFamily {
    /// The member equations, canonical and deduplicated, in a fixed order.
    pub fn equations(&self) -> Vec<Equation> {
        let mut raw: Vec<Vec<i64>> = Vec::new();
        match *self {
            EquationFamily::Bounded { h, k } | EquationFamily::ZeroSum { h, k } | EquationFamily::NonZeroSum { h, k } => {
                let all: Vec<Vec<i64>> = vec![(-k..=k).collect(); h];
                cartesian(&all, &mut raw);
                match self {
                    EquationFamily::ZeroSum { .. } => raw.retain(|c| c.iter().sum::<i64>() == 0),
                    EquationFamily::NonZeroSum { .. } => raw.retain(|c| c.iter().sum::<i64>() != 0),
                    _ => {}
                }
            }
            EquationFamily::Balanced { ref ranges, total } => {
                let lists: Vec<Vec<i64>> = ranges.iter().map(|&(lo, hi)| (lo..=hi).collect()).collect();
                let mut free = Vec::new();
                cartesian(&lists, &mut free);
                for mut c in free {
                    let s: i64 = c.iter().sum();
                    if total.is_none_or(|t| t == s) {
                        c.push(-s);
                        raw.push(c);
                    }
                }
            }
            EquationFamily::Mean { j } => {
                let mut c = vec![1i64; j];
                c.push(-(j as i64));
                raw.push(c);
            }
            EquationFamily::EqualPairs { k } => {
                for a in 1..=k {
                    for b in 1..=k {
                        raw.push(vec![a, b, -a, -b]);
                    }
                }
            }
            EquationFamily::UnequalPairs { m, k, least } => {
                let band = odd_band(m, k);
                let mut quads = Vec::new();
                cartesian(&vec![band; 4], &mut quads);
                for q in quads {
                    let (a, b, c, d) = (q[0], q[1], q[2], q[3]);
                    let same = (a == c && b == d) || (a == d && b == c);
                    let lowest = *q.iter().min().unwrap();
                    if a + b == c + d && !same && least.is_none_or(|l| l == lowest) {
                        raw.push(vec![a, b, -c, -d]);
                    }
                }
            }
            EquationFamily::OddBand { m, k } => {
                let band = odd_band(m, k);
                let signed: Vec<i64> = band.iter().flat_map(|&a| [a, -a]).collect();
                cartesian(&vec![signed; 4], &mut raw);
            }
        }
        let set: BTreeSet<Equation> = raw.into_iter().filter_map(|c| Equation::new(c).canonical()).collect();
        set.into_iter().collect()
    }

    /// Whether every member has zero coefficient sum, so avoidance survives translation.
    pub fn is_zero_sum(&self) -> bool {
        !matches!(
            self,
            EquationFamily::Bounded { .. } | EquationFamily::NonZeroSum { .. } | EquationFamily::OddBand { .. }
        )
    }

    pub fn max_arity(&self) -> usize {
        self.equations().iter().map(Equation::arity).max().unwrap_or(0)
    }

    pub fn max_abs_coefficient(&self) -> i64 {
        self.equations().iter().map(Equation::max_abs_coefficient).max().unwrap_or(0)
    }
}

impl fmt::Display for EquationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquationFamily::Bounded { h, k } => write!(f, "({k},{h})-fold"),
            EquationFamily::ZeroSum { h, k } => write!(f, "zero-sum h={h} K={k}"),
            EquationFamily::NonZeroSum { h, k } => write!(f, "nonzero-sum h={h} K={k}"),
            EquationFamily::Balanced { ranges, total } => {
                write!(f, "balanced {ranges:?}")?;
                if let Some(t) = total {
                    write!(f, " total={t}")?;
                }
                Ok(())
            }
            EquationFamily::Mean { j } => write!(f, "mean j={j}"),
            EquationFamily::EqualPairs { k } => write!(f, "equal pairs k={k}"),
            EquationFamily::UnequalPairs { m, k, least } => {
                write!(f, "unequal pairs m={m} k={k}")?;
                if let Some(l) = least {
                    write!(f, " least={l}")?;
                }
                Ok(())
            }
            EquationFamily::OddBand { m, k } => write!(f, "odd band m={m} k={k}"),
        }
    }
}

/// Which of the four pieces used to assemble the odd-band family a
/// four-variable equation belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OddBandPiece {
    NonZeroSum,
    /// Three coefficients of one sign.
    Balanced,
    EqualPairs,
    UnequalPairs,
}

pub fn odd_band_piece(eq: &Equation) -> OddBandPiece {
    let c = eq.coeffs();
    if eq.coefficient_sum() != 0 {
        return OddBandPiece::NonZeroSum;
    }
    let positive = c.iter().filter(|&&a| a > 0).count();
    if positive != 2 {
        return OddBandPiece::Balanced;
    }
    let mut pos: Vec<i64> = c.iter().copied().filter(|&a| a > 0).collect();
    let mut neg: Vec<i64> = c.iter().filter(|&&a| a < 0).map(|a| -a).collect();
    pos.sort_unstable();
    neg.sort_unstable();
    if pos == neg {
        OddBandPiece::EqualPairs
    } else {
        OddBandPiece::UnequalPairs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_solution_examples() {
        let sidon = Equation::new(vec![1, 1, -1, -1]);
        assert!(is_trivial_solution(&sidon, &[3, 5, 3, 5]));
        assert!(is_trivial_solution(&sidon, &[3, 5, 5, 3]));
        assert!(!is_trivial_solution(&sidon, &[1, 4, 2, 3]));
        let ap = Equation::new(vec![1, 1, -2]);
        assert!(is_trivial_solution(&ap, &[7, 7, 7]));
        assert!(!is_trivial_solution(&ap, &[1, 3, 2]));
    }

    #[test]
    fn canonical_form_merges_signs_and_orders() {
        let a = Equation::new(vec![1, 1, -2]).canonical().unwrap();
        let b = Equation::new(vec![2, -1, 0, -1]).canonical().unwrap();
        assert_eq!(a, b);
        assert!(Equation::new(vec![0, 0]).canonical().is_none());
    }

    #[test]
    fn family_sizes() {
        // Up to sign and order: x1 [a=1], x1±x2, x1+x2±x3, x1-x2-x3 ...
        let b = EquationFamily::Bounded { h: 2, k: 1 }.equations();
        assert_eq!(b.len(), 3);
        assert_eq!(EquationFamily::Mean { j: 2 }.equations(), vec![Equation::new(vec![-1, -1, 2])]);
        assert!(EquationFamily::UnequalPairs { m: 5, k: 2, least: None }.equations().is_empty());
        assert!(EquationFamily::UnequalPairs { m: 5, k: 4, least: None }.equations().is_empty());
        assert!(!EquationFamily::UnequalPairs { m: 5, k: 6, least: None }.equations().is_empty());
    }

    #[test]
    fn odd_band_splits_into_exactly_one_piece() {
        for (m, k) in [(1, 4), (1, 6), (3, 6)] {
            let k0 = 2 * (m + 2 * k);
            let plus = EquationFamily::Balanced { ranges: vec![(0, k0); 3], total: None }.equations();
            let equal = EquationFamily::EqualPairs { k: 2 * (m + k) }.equations();
            let unequal = EquationFamily::UnequalPairs { m, k, least: None }.equations();
            let pieces: Vec<BTreeSet<Equation>> =
                [plus, equal, unequal].into_iter().map(|v| v.into_iter().collect()).collect();
            let band = EquationFamily::OddBand { m, k }.equations();
            for eq in band {
                let mut hits: Vec<OddBandPiece> = Vec::new();
                if eq.coefficient_sum() != 0 && eq.max_abs_coefficient() <= k0 {
                    hits.push(OddBandPiece::NonZeroSum);
                }
                let names = [OddBandPiece::Balanced, OddBandPiece::EqualPairs, OddBandPiece::UnequalPairs];
                hits.extend((0..3).filter(|&i| pieces[i].contains(&eq)).map(|i| names[i]));
                assert_eq!(hits, vec![odd_band_piece(&eq)], "{eq}");
            }
        }
    }
}

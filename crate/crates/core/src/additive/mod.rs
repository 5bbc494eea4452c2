//! Subsets of `Z_p` free of non-trivial solutions to families of linear
//! equations. Constructions propose sets; only the exhaustive verifier
//! grants certificates.

mod construct;
mod family;
mod search;
mod verify;

pub use construct::{
    behrend_set, behrend_sphere, is_prime, kfold3_set, mean_free_set, modular_construction, prime_in_range,
    ruzsa_equal_pair_set, ruzsa_unequal_set, sidon_extended_set, translate_intersect, BehrendChoice,
    TRANSLATE_RETRIES,
};
pub use family::{is_trivial_solution, odd_band_piece, Equation, EquationFamily, OddBandPiece};
pub use search::{greedy_solution_free_set, max_solution_free_size};
pub use verify::{find_violation, work_estimate, Domain, Violation, DEFAULT_BUDGET};

use serde::Serialize;

use crate::error::AdditiveError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub family: EquationFamily,
    pub verified: bool,
    pub method: String,
}

/// A set of nonzero residues modulo a prime, with the families it is known to avoid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZpSet {
    p: u64,
    elems: Vec<u64>,
    certs: Vec<Certificate>,
    /// How the elements were chosen.
    pub origin: String,
}

impl ZpSet {
    pub fn new(p: u64, elems: impl IntoIterator<Item = u64>) -> Result<Self, AdditiveError> {
        if !is_prime(p) {
            return Err(AdditiveError::NotPrime(p));
        }
        let mut elems: Vec<u64> = elems.into_iter().map(|x| x % p).collect();
        elems.sort_unstable();
        elems.dedup();
        if elems.first() == Some(&0) {
            return Err(AdditiveError::Infeasible("zero is not allowed in a solution-free set".into()));
        }
        Ok(ZpSet { p, elems, certs: Vec::new(), origin: String::new() })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elems(&self) -> &[u64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elems.binary_search(&(x % self.p)).is_ok()
    }

    pub fn certificates(&self) -> &[Certificate] {
        &self.certs
    }

    pub fn is_certified(&self, family: &EquationFamily) -> bool {
        self.certs.iter().any(|c| c.verified && &c.family == family)
    }

    /// Runs the exhaustive verifier and records the outcome.
    pub fn certify(&mut self, family: &EquationFamily, budget: u128) -> Result<Option<Violation>, AdditiveError> {
        let found = find_violation(Domain::Mod(self.p), &self.elems, family, budget)?;
        self.certs.retain(|c| &c.family != family);
        self.certs.push(Certificate { family: family.clone(), verified: found.is_none(), method: "exhaustive".into() });
        Ok(found)
    }

    /// Certifies and turns a violation into an error; for constructions whose
    /// output must be clean.
    pub fn require(&mut self, family: &EquationFamily, budget: u128) -> Result<(), AdditiveError> {
        match self.certify(family, budget)? {
            None => Ok(()),
            Some(v) => Err(AdditiveError::Verification { family: family.to_string(), detail: v.to_string() }),
        }
    }

    /// Records a certificate the verifier could not afford; it is marked unverified.
    pub fn attest(&mut self, family: &EquationFamily, budget: u128) -> Result<(), AdditiveError> {
        match self.require(family, budget) {
            Err(AdditiveError::Budget { .. }) => {
                self.certs.retain(|c| &c.family != family);
                self.certs.push(Certificate { family: family.clone(), verified: false, method: "over budget".into() });
                Ok(())
            }
            other => other,
        }
    }

    pub fn with_origin(mut self, origin: impl Into<String>) -> Self {
        self.origin = origin.into();
        self
    }

    /// Re-runs the verifier on every exhaustive certificate; true when all still agree.
    pub fn recheck(&self, budget: u128) -> Result<bool, AdditiveError> {
        for c in self.certs.iter().filter(|c| c.method == "exhaustive") {
            let clean = find_violation(Domain::Mod(self.p), &self.elems, &c.family, budget)?.is_none();
            if clean != c.verified {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `{a + t}` with certificates dropped; zero-sum avoidance can be re-established by the caller.
    pub fn translate(&self, t: u64) -> Vec<u64> {
        self.elems.iter().map(|&a| (a + t) % self.p).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_and_composites() {
        assert!(matches!(ZpSet::new(12, [1]), Err(AdditiveError::NotPrime(12))));
        assert!(ZpSet::new(13, [13]).is_err());
        let s = ZpSet::new(13, [4, 2, 1, 15]).unwrap();
        assert_eq!(s.elems(), &[1, 2, 4]);
    }

    #[test]
    fn certification_records_outcome() {
        let mut s = ZpSet::new(13, [1, 2, 3]).unwrap();
        let ap = EquationFamily::Mean { j: 2 };
        assert!(s.certify(&ap, DEFAULT_BUDGET).unwrap().is_some());
        assert!(!s.is_certified(&ap));
        let mut s = ZpSet::new(13, [1, 2, 4]).unwrap();
        s.require(&ap, DEFAULT_BUDGET).unwrap();
        assert!(s.is_certified(&ap));
        assert!(s.recheck(DEFAULT_BUDGET).unwrap());
        let json = s.to_json();
        assert_eq!(json["p"], 13);
        assert_eq!(json["certs"][0]["verified"], true);
    }
}

use serde::{Deserialize, Serialize};

use super::json;
use crate::error::{invalid, Error, Result};
use crate::fppoly::{binomial_mod, fq_enumerate_units, is_irreducible, FpPoly};
use crate::reduction::{CheckResult, Checks};

/// Largest field size expanded during verification.
pub const IDEMPOTENT_MAX_Q: u64 = 1 << 12;

/// `X = sum_{u in F_q^x} u (1 - (X - u)^(q-1))` in `F_q[X]`, where
/// `F_q = F_p[Z]/(modulus)`. Units are stored as residues in `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "IdempotentData", try_from = "IdempotentData")]
pub struct IdempotentDecomposition {
    pub p: u64,
    pub modulus: FpPoly,
    pub units: Vec<FpPoly>,
}

#[derive(Serialize, Deserialize)]
struct IdempotentData {
    p: u64,
    q: u64,
    modulus: Vec<u64>,
    units: Vec<Vec<u64>>,
}

impl From<IdempotentDecomposition> for IdempotentData {
    fn from(c: IdempotentDecomposition) -> Self {
        IdempotentData { p: c.p, q: c.q(), modulus: c.modulus.coeffs().to_vec(), units: json::coeffs(&c.units) }
    }
}

impl TryFrom<IdempotentData> for IdempotentDecomposition {
    type Error = String;

    fn try_from(d: IdempotentData) -> std::result::Result<Self, String> {
        let c = IdempotentDecomposition { p: d.p, modulus: json::poly(d.p, &d.modulus)?, units: json::polys(d.p, &d.units)? };
        if c.q() != d.q {
            return Err(format!("q = {} does not match the modulus", d.q));
        }
        Ok(c)
    }
}

/// `modulus` defaults to `Z` (the prime field itself).
pub fn idempotent_certificate(p: u64, modulus: Option<&FpPoly>) -> Result<IdempotentDecomposition> {
    let modulus = modulus.cloned().unwrap_or_else(|| FpPoly::t(p));
    let e = modulus.degree().unwrap_or(0) as u32;
    if e == 0 {
        return invalid("modulus must have positive degree");
    }
    match p.checked_pow(e) {
        Some(q) if q <= IDEMPOTENT_MAX_Q => {}
        _ => return Err(Error::BudgetExceeded(format!("F_{p}^{e} exceeds q <= {IDEMPOTENT_MAX_Q}"))),
    }
    let units = fq_enumerate_units(p, &modulus)?.into_iter().map(|u| u.value().clone()).collect();
    Ok(IdempotentDecomposition { p, modulus, units })
}

impl IdempotentDecomposition {
    pub fn q(&self) -> u64 {
        self.p.saturating_pow(self.modulus.degree().unwrap_or(0) as u32)
    }

    /// Coefficients `-u`: for `q > 2`, `X = sum (-u) (X - u)^(q-1)`.
    pub fn power_form(&self) -> Vec<FpPoly> {
        self.units.iter().map(|u| -u).collect()
    }

    /// `sum_u u (1 - (X - u)^(q-1))` as coefficients in `F_q`, lowest first.
    pub fn expand(&self) -> Vec<FpPoly> {
        let p = self.p;
        let q = self.q();
        let m = &self.modulus;
        let red = |f: FpPoly| f.rem(m).expect("nonzero modulus");
        let mut out = vec![FpPoly::zero(p); q as usize];
        for u in &self.units {
            let neg_u = -u;
            // (X - u)^(q-1) = sum_i C(q-1, i) X^i (-u)^(q-1-i)
            let mut pows = vec![FpPoly::one(p)];
            for _ in 1..q {
                let next = red(pows.last().unwrap() * &neg_u);
                pows.push(next);
            }
            for i in 0..q {
                let b = binomial_mod(q - 1, i, p);
                if b != 0 {
                    let term = red(u * &pows[(q - 1 - i) as usize].scale(b));
                    out[i as usize] = &out[i as usize] - &term;
                }
            }
            out[0] = &out[0] + u;
        }
        out.into_iter().map(red).collect()
    }

    pub fn verify(&self) -> CheckResult {
        let mut c = Checks::new();
        let p = self.p;
        c.require("p is prime", crate::arith::is_prime(p))?;
        let e = self.modulus.degree().unwrap_or(0);
        c.require("modulus is monic of positive degree", e >= 1 && self.modulus.is_monic())?;
        let q = self.q();
        c.require("q within the expansion budget", q <= IDEMPOTENT_MAX_Q)?;
        c.require("modulus is irreducible", is_irreducible(&self.modulus).unwrap_or(false))?;
        let reduced = self.units.iter().all(|u| !u.is_zero() && u.degree().unwrap() < e);
        c.require("units are nonzero reduced residues", reduced)?;
        let mut sorted = self.units.clone();
        sorted.sort();
        sorted.dedup();
        c.require("units are the q - 1 distinct nonzero elements", sorted.len() == self.units.len() && sorted.len() as u64 == q - 1)?;
        let coeffs = self.expand();
        let is_x = coeffs.iter().enumerate().all(|(i, a)| if i == 1 { *a == FpPoly::one(p) } else { a.is_zero() });
        c.require("sum of u (1 - (X - u)^(q-1)) expands to X", is_x)?;
        c.done()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_unit_coefficients() {
        let c = idempotent_certificate(5, None).unwrap();
        let coeffs: Vec<u64> = c.power_form().iter().map(|f| f.coeff(0)).collect();
        assert_eq!(coeffs, [4, 3, 2, 1]);
        assert!(c.verify().is_ok());
    }

    #[test]
    fn small_fields() {
        assert!(idempotent_certificate(2, None).unwrap().verify().is_ok());
        let m = FpPoly::parse(2, "Z^2+Z+1").unwrap();
        assert!(idempotent_certificate(2, Some(&m)).unwrap().verify().is_ok());
        assert!(idempotent_certificate(2, Some(&FpPoly::parse(2, "Z^2+1").unwrap())).is_err());
    }

    #[test]
    fn dropping_a_unit_breaks_the_identity() {
        let mut c = idempotent_certificate(7, None).unwrap();
        c.units.pop();
        assert!(c.verify().is_err());
        let mut c = idempotent_certificate(7, None).unwrap();
        c.units[0] = FpPoly::constant(7, 6);
        assert!(c.verify().is_err());
    }
}

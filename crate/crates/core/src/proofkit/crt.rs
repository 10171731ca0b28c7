use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::json::dec_vec;
use crate::arith::{is_prime, xgcd};
use crate::error::{invalid, Result};
use crate::reduction::{CheckResult, Checks};

/// From `xy - yx = p_i u_i` for each listed prime, `xy - yx = (prod p_i) w`
/// with `w = sum c_i u_i`. Valid because `sum c_i (P / p_i) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrtGlue {
    pub primes: Vec<u64>,
    #[serde(with = "dec_vec")]
    pub coefficients: Vec<BigInt>,
}

/// Folds the primes in from the left, one Bezout step per prime.
pub fn crt_glue_certificate(primes: &[u64]) -> Result<CrtGlue> {
    if primes.is_empty() {
        return invalid("need at least one prime");
    }
    for (i, &p) in primes.iter().enumerate() {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        if primes[..i].contains(&p) {
            return invalid(format!("prime {p} is repeated"));
        }
    }
    let mut acc = BigInt::from(primes[0]);
    let mut coefficients = vec![BigInt::one()];
    for &p in &primes[1..] {
        let pb = BigInt::from(p);
        // a * acc + b * p = 1; x = acc v = p u gives x = acc p (a u + b v)
        let (_, a, b) = xgcd(&acc, &pb);
        for c in coefficients.iter_mut() {
            *c *= &b;
        }
        coefficients.push(a);
        acc *= pb;
    }
    Ok(CrtGlue { primes: primes.to_vec(), coefficients })
}

impl CrtGlue {
    pub fn product(&self) -> BigInt {
        self.primes.iter().map(|&p| BigInt::from(p)).product()
    }

    pub fn verify(&self) -> CheckResult {
        let mut c = Checks::new();
        c.require("at least one prime", !self.primes.is_empty())?;
        c.require("every entry is prime", self.primes.iter().all(|&p| is_prime(p)))?;
        let mut sorted = self.primes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        c.require("primes are pairwise distinct", sorted.len() == self.primes.len())?;
        c.require("one coefficient per prime", self.coefficients.len() == self.primes.len())?;
        let prod = self.product();
        let sum: BigInt = self.primes.iter().zip(&self.coefficients).map(|(&p, cf)| cf * (&prod / p)).sum();
        c.require("sum of c_i * P / p_i equals 1", sum.is_one())?;
        c.require("product is nonzero", !prod.is_zero())?;
        c.done()
    }
}

//! Characteristic certificates over Z and prime-power reduction
//! certificates over F_p[T].

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, next_prime, power_minus_self, xgcd_multi};
use crate::error::{invalid, Error, Result};
use crate::fppoly::{monic_irreducibles_dividing, poly_xgcd_multi, FpPoly};
use crate::numberlab::{classify_n, get_exponent};
use crate::proofkit::json::{self, dec, dec_vec};

/// Names of the checks that passed, or the first violated invariant.
pub type CheckResult = std::result::Result<Vec<String>, String>;

pub(crate) struct Checks(Vec<String>);

impl Checks {
    pub(crate) fn new() -> Self {
        Checks(Vec::new())
    }

    pub(crate) fn require(&mut self, name: impl Into<String>, ok: bool) -> std::result::Result<(), String> {
        let name = name.into();
        if ok {
            self.0.push(name);
            Ok(())
        } else {
            Err(name)
        }
    }

    pub(crate) fn done(self) -> CheckResult {
        Ok(self.0)
    }
}

/// Largest `n` whose powers `z^n` are expanded during verification.
pub const CHARACTERISTIC_MAX_N: u64 = 1 << 20;

/// `sum_j c_j (z_j^n - z_j) = p_1 ... p_s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacteristicCertificate {
    pub n: u64,
    pub primes: Vec<u64>,
    #[serde(with = "dec")]
    pub product: BigInt,
    pub witnesses: Vec<u64>,
    #[serde(with = "dec_vec")]
    pub coefficients: Vec<BigInt>,
}

pub fn characteristic_certificate(n: u64) -> Result<CharacteristicCertificate> {
    let primes = classify_n(n)?.n_primes;
    let product: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
    let mut witnesses = Vec::new();
    let mut values = Vec::new();
    let mut g = BigInt::zero();
    let mut z = 1u64;
    while g != product {
        z = next_prime(z);
        let v = power_minus_self(z, n);
        g = num_integer::Integer::gcd(&g, &v);
        witnesses.push(z);
        values.push(v);
    }
    let w = xgcd_multi(&values)?;
    Ok(CharacteristicCertificate { n, primes, product, witnesses, coefficients: w.coefficients })
}

impl CharacteristicCertificate {
    pub fn verify(&self) -> CheckResult {
        let mut c = Checks::new();
        c.require("n > 1", self.n > 1)?;
        c.require("n within the expansion budget", self.n <= CHARACTERISTIC_MAX_N)?;
        c.require("every listed p is prime", self.primes.iter().all(|&p| is_prime(p)))?;
        c.require("p - 1 divides n - 1 for every listed p", self.primes.iter().all(|&p| (self.n - 1) % (p - 1) == 0))?;
        let expected = classify_n(self.n).map_err(|e| e.to_string())?.n_primes;
        c.require("primes are exactly those with p - 1 | n - 1", self.primes == expected)?;
        let prod: BigInt = self.primes.iter().map(|&p| BigInt::from(p)).product();
        c.require("product equals the product of the primes", prod == self.product)?;
        c.require("one coefficient per witness", self.witnesses.len() == self.coefficients.len() && !self.witnesses.is_empty())?;
        let sum: BigInt = self
            .witnesses
            .iter()
            .zip(&self.coefficients)
            .map(|(&z, cf)| cf * power_minus_self(z, self.n))
            .sum();
        c.require("sum of c_j (z_j^n - z_j) equals the product", sum == self.product)?;
        c.done()
    }
}

/// `g = sum_i u_i (f_i^n - f_i)` in F_p[T] with `g * h = T^(p^k) - T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ReductionData", try_from = "ReductionData")]
pub struct ReductionCertificate {
    pub n: u64,
    pub p: u64,
    pub k: u64,
    pub witnesses: Vec<FpPoly>,
    pub coefficients: Vec<FpPoly>,
    pub g: FpPoly,
    pub cofactor: FpPoly,
}

#[derive(Serialize, Deserialize)]
struct ReductionData {
    n: u64,
    p: u64,
    k: u64,
    witnesses: Vec<Vec<u64>>,
    coefficients: Vec<Vec<u64>>,
    g: Vec<u64>,
    cofactor: Vec<u64>,
}

impl From<ReductionCertificate> for ReductionData {
    fn from(c: ReductionCertificate) -> Self {
        ReductionData {
            n: c.n,
            p: c.p,
            k: c.k,
            witnesses: json::coeffs(&c.witnesses),
            coefficients: json::coeffs(&c.coefficients),
            g: c.g.coeffs().to_vec(),
            cofactor: c.cofactor.coeffs().to_vec(),
        }
    }
}

impl TryFrom<ReductionData> for ReductionCertificate {
    type Error = String;

    fn try_from(d: ReductionData) -> std::result::Result<Self, String> {
        Ok(ReductionCertificate {
            n: d.n,
            p: d.p,
            k: d.k,
            witnesses: json::polys(d.p, &d.witnesses)?,
            coefficients: json::polys(d.p, &d.coefficients)?,
            g: json::poly(d.p, &d.g)?,
            cofactor: json::poly(d.p, &d.cofactor)?,
        })
    }
}

fn target(p: u64, k: u64) -> Result<FpPoly> {
    let q = (p as u128).checked_pow(k as u32).filter(|&q| q <= 1 << 24);
    match q {
        Some(q) => Ok(FpPoly::frobenius_target(p, q as usize)),
        None => Err(Error::BudgetExceeded(format!("T^({p}^{k}) - T is too large"))),
    }
}

pub fn reduction_certificate(n: u64, p: u64) -> Result<ReductionCertificate> {
    if !is_prime(p) || n <= 1 || (n - 1) % (p - 1) != 0 {
        return invalid(format!("Invalid arguments: need p prime with p - 1 | n - 1 (n = {n}, p = {p})"));
    }
    let k = get_exponent(p, n)?;
    let tgt = target(p, k)?;
    let mut witnesses: Vec<FpPoly> = Vec::new();
    let mut values: Vec<FpPoly> = Vec::new();
    let mut g = FpPoly::zero(p);
    'search: for d in 1..n as usize {
        for f in FpPoly::monics_of_degree(p, d) {
            let v = f.power_minus_self(n);
            if !g.is_zero() && g.divides(&v) {
                continue;
            }
            g = g.gcd(&v);
            witnesses.push(f);
            values.push(v);
            // a lone T^n - T properly dividing the target only restates x^n = x
            let restates_hypothesis = witnesses.len() == 1 && g != tgt;
            if !restates_hypothesis && g.divides(&tgt) {
                break 'search;
            }
        }
    }
    if g.is_zero() || !g.divides(&tgt) {
        return Err(Error::Internal(format!("no reduction found for n = {n}, p = {p}")));
    }
    let (g2, coefficients) = poly_xgcd_multi(&values)?;
    if g2 != g {
        return Err(Error::Internal("extended gcd disagrees with the partial gcd chain".into()));
    }
    let (cofactor, r) = tgt.divrem(&g)?;
    debug_assert!(r.is_zero());
    Ok(ReductionCertificate { n, p, k, witnesses, coefficients, g, cofactor })
}

impl ReductionCertificate {
    pub fn target(&self) -> Result<FpPoly> {
        target(self.p, self.k)
    }

    pub fn verify(&self) -> CheckResult {
        let mut c = Checks::new();
        c.require("p is prime", is_prime(self.p))?;
        c.require("p - 1 divides n - 1", self.n > 1 && (self.n - 1) % (self.p - 1) == 0)?;
        let k = get_exponent(self.p, self.n).map_err(|e| e.to_string())?;
        c.require("k is the exponent of n at p", k == self.k)?;
        let all_p = [&self.g, &self.cofactor]
            .into_iter()
            .chain(&self.witnesses)
            .chain(&self.coefficients)
            .all(|f| f.p() == self.p);
        c.require("all polynomials live over F_p", all_p)?;
        c.require("one coefficient per witness", self.witnesses.len() == self.coefficients.len() && !self.witnesses.is_empty())?;
        c.require("g is monic", self.g.is_monic())?;
        let mut sum = FpPoly::zero(self.p);
        for (f, u) in self.witnesses.iter().zip(&self.coefficients) {
            sum = &sum + &(u * &f.power_minus_self(self.n));
        }
        c.require("sum of u_i (f_i^n - f_i) equals g", sum == self.g)?;
        let tgt = self.target().map_err(|e| e.to_string())?;
        c.require("g * h equals T^(p^k) - T", &self.g * &self.cofactor == tgt)?;
        c.done()
    }
}

/// Product of the monic irreducibles of degree `d` with `p^d - 1 | n - 1`.
pub fn gform_product(p: u64, n: u64) -> Result<FpPoly> {
    let k = get_exponent(p, n)?;
    let mut prod = FpPoly::one(p);
    for g in monic_irreducibles_dividing(p, k as usize)? {
        let d = g.degree().unwrap() as u32;
        if (n - 1) % (p.pow(d) - 1) == 0 {
            prod = &prod * &g;
        }
    }
    Ok(prod)
}

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::json;
use crate::error::{invalid, Error, Result};
use crate::fppoly::{bivariate_reduce, is_irreducible, BivariatePoly, FpPoly};
use crate::freering::FreePoly;
use crate::reduction::{CheckResult, Checks};

/// Which recurrence and enumeration produced the record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BnMode {
    /// `T, T^p, T^(p^2), ...` with `b_{n+1} = b_n a - f_n(a) b_n`.
    Monomial,
    /// `T, T+1, ..., T+p-1` with the same recurrence.
    Affine,
    /// Caller-supplied list starting with `T`, same recurrence.
    Custom,
    /// All polynomials of degree below `deg g` in index order, with
    /// `b_{n+1} = a b_n - b_n a - f_n(a) b_n`.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enumeration {
    Monomial,
    Affine,
    Custom(Vec<FpPoly>),
    Exhaustive,
}

/// `B_0 = 1`, `B_{n+1} = L_n B_n` reduced mod `(g(X), g(Y))`, where `X`
/// stands for left and `Y` for right multiplication by `a` on `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "BnData", try_from = "BnData")]
pub struct BnRecord {
    pub p: u64,
    pub k: u64,
    pub g: FpPoly,
    pub mode: BnMode,
    /// `f_0, ..., f_{m-1}`.
    pub enumeration: Vec<FpPoly>,
    /// `B_0, ..., B_m`.
    pub b: Vec<BivariatePoly>,
    pub m: usize,
    /// `f` with `W_{p,k,f}` needed to descend from `b_m = 0` to `ab = ba`.
    pub obligations: Vec<FpPoly>,
}

#[derive(Serialize, Deserialize)]
struct BnData {
    p: u64,
    k: u64,
    g: Vec<u64>,
    mode: BnMode,
    enumeration: Vec<Vec<u64>>,
    b: Vec<Vec<[u64; 3]>>,
    m: usize,
    obligations: Vec<Vec<u64>>,
}

impl From<BnRecord> for BnData {
    fn from(r: BnRecord) -> Self {
        BnData {
            p: r.p,
            k: r.k,
            g: r.g.coeffs().to_vec(),
            mode: r.mode,
            enumeration: json::coeffs(&r.enumeration),
            b: r.b.iter().map(json::bivariate_terms).collect(),
            m: r.m,
            obligations: json::coeffs(&r.obligations),
        }
    }
}

impl TryFrom<BnData> for BnRecord {
    type Error = String;

    fn try_from(d: BnData) -> std::result::Result<Self, String> {
        let p = d.p;
        Ok(BnRecord {
            p,
            k: d.k,
            g: json::poly(p, &d.g)?,
            mode: d.mode,
            enumeration: json::polys(p, &d.enumeration)?,
            b: d.b.iter().map(|t| json::bivariate(p, t)).collect::<std::result::Result<_, _>>()?,
            m: d.m,
            obligations: json::polys(p, &d.obligations)?,
        })
    }
}

/// Upper bound on the enumeration length.
pub const BN_MAX_STEPS: usize = 1 << 12;

fn step_factor(mode: BnMode, f: &FpPoly) -> BivariatePoly {
    let p = f.p();
    let x = BivariatePoly::from_terms(p, [((1, 0), 1)]);
    let y = BivariatePoly::from_terms(p, [((0, 1), 1)]);
    match mode {
        BnMode::Exhaustive => x.sub(&y).sub(&BivariatePoly::in_x(f)),
        _ => y.sub(&BivariatePoly::in_x(f)),
    }
}

fn obligation(mode: BnMode, f: &FpPoly) -> FpPoly {
    match mode {
        BnMode::Exhaustive => &FpPoly::t(f.p()) - f,
        _ => f.clone(),
    }
}

fn enumerate(p: u64, k: u64, g: &FpPoly, e: &Enumeration) -> Result<(BnMode, Vec<FpPoly>)> {
    let d = g.degree().unwrap_or(0) as u32;
    Ok(match e {
        Enumeration::Monomial => {
            let mut out = vec![FpPoly::t(p)];
            let mut cur = FpPoly::t(p);
            for _ in 1..k.max(1) {
                cur = cur.pow(p);
                out.push(cur.clone());
            }
            (BnMode::Monomial, out)
        }
        Enumeration::Affine => (BnMode::Affine, (0..p).map(|u| FpPoly::new(p, vec![u, 1])).collect()),
        Enumeration::Custom(fs) => {
            if fs.first() != Some(&FpPoly::t(p)) || fs.iter().any(|f| f.p() != p) {
                return invalid("custom enumeration must start with T and live over F_p");
            }
            (BnMode::Custom, fs.clone())
        }
        Enumeration::Exhaustive => {
            let count = p.checked_pow(d).filter(|&c| c as usize <= BN_MAX_STEPS);
            let Some(count) = count else {
                return Err(Error::BudgetExceeded(format!("{p}^{d} enumeration steps")));
            };
            (BnMode::Exhaustive, (0..count).map(|i| FpPoly::from_index(p, i)).collect())
        }
    })
}

fn check_relation(p: u64, k: u64, g: &FpPoly) -> std::result::Result<(), String> {
    let d = g.degree().unwrap_or(0);
    if g.p() != p || !g.is_monic() || d < 2 {
        return Err(format!("g = {g} must be monic over F_{p} of degree >= 2"));
    }
    if k == 0 || k % d as u64 != 0 {
        return Err(format!("deg g = {d} must divide k = {k}"));
    }
    if !is_irreducible(g).unwrap_or(false) {
        return Err(format!("g = {g} is reducible"));
    }
    Ok(())
}

pub fn bn_certificate(p: u64, k: u64, g: &FpPoly, enumeration: &Enumeration) -> Result<BnRecord> {
    FpPoly::checked(p, vec![])?;
    check_relation(p, k, g).or_else(|m| invalid(m))?;
    let (mode, fs) = enumerate(p, k, g, enumeration)?;
    let mut b = vec![BivariatePoly::one(p)];
    for f in &fs {
        let next = bivariate_reduce(&step_factor(mode, f).mul(b.last().unwrap()), g, g)?;
        let zero = next.is_zero();
        b.push(next);
        if zero {
            let m = b.len() - 1;
            let obligations = fs[1.min(m)..m].iter().map(|f| obligation(mode, f)).collect();
            let record = BnRecord { p, k, g: g.clone(), mode, enumeration: fs[..m].to_vec(), b, m, obligations };
            if let Err(e) = record.cross_check() {
                return Err(Error::Internal(format!("noncommutative cross-check failed: {e}")));
            }
            return Ok(record);
        }
    }
    Err(Error::NoTermination { steps: fs.len() })
}

/// `sum c a^i b a^j` keyed by `(i, j)`.
fn nc_to_pairs(f: &FreePoly) -> std::result::Result<BTreeMap<(u32, u32), u64>, String> {
    let mut out = BTreeMap::new();
    for (w, c) in f.terms() {
        let Some(pos) = w.iter().position(|&l| l == "b") else {
            return Err("term without b".into());
        };
        if w.iter().filter(|&&l| l == "b").count() != 1 || w.iter().any(|&l| l != "a" && l != "b") {
            return Err(format!("unexpected word {w:?}"));
        }
        let key = (pos as u32, (w.len() - pos - 1) as u32);
        out.insert(key, c.to_u64().ok_or("coefficient out of range")?);
    }
    Ok(out)
}

fn in_a(f: &FpPoly) -> FreePoly {
    let p = f.p();
    let mut out = FreePoly::zero(p);
    for (i, &c) in f.coeffs().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let term = if i == 0 { FreePoly::constant(p, c) } else { FreePoly::word(p, &vec!["a"; i], c) };
        out = &out + &term;
    }
    out
}

impl BnRecord {
    /// Recomputes `b_n` in the free ring over `F_p` on `a, b`, rewriting runs
    /// of `a` with `g(a) = 0`, and compares with `B_n` under `a^i b a^j <-> X^i Y^j`.
    pub fn cross_check(&self) -> std::result::Result<(), String> {
        let p = self.p;
        let g = &self.g;
        let t = FpPoly::t(p);
        let rule = |len: usize| -> Option<Vec<(usize, BigInt)>> {
            let r = t.pow(len as u64).rem(g).ok()?;
            Some(r.coeffs().iter().enumerate().filter(|(_, &c)| c != 0).map(|(e, &c)| (e, BigInt::from(c))).collect())
        };
        let a = FreePoly::var(p, "a");
        let mut cur = FreePoly::var(p, "b");
        for n in 0..=self.m {
            let pairs = nc_to_pairs(&cur)?;
            let expected: BTreeMap<(u32, u32), u64> = self.b[n].terms().collect();
            if pairs != expected {
                return Err(format!("b_{n} disagrees with B_{n}"));
            }
            if n == self.m {
                break;
            }
            let f = in_a(&self.enumeration[n]);
            let right = &cur * &a;
            let fb = &f * &cur;
            let next = match self.mode {
                BnMode::Exhaustive => &(&(&a * &cur) - &right) - &fb,
                _ => &right - &fb,
            };
            cur = next.rewrite_runs("a", rule);
        }
        Ok(())
    }

    pub fn verify(&self) -> CheckResult {
        let mut c = Checks::new();
        let p = self.p;
        c.require("p is prime", p < (1 << 32) && crate::arith::is_prime(p))?;
        c.require("g is monic irreducible with 2 <= deg g | k", check_relation(p, self.k, &self.g).is_ok())?;
        c.require("enumeration has m entries", self.enumeration.len() == self.m && self.b.len() == self.m + 1)?;
        c.require("m within budget", self.m <= BN_MAX_STEPS)?;
        c.require("all data lives over F_p", self.b.iter().all(|b| b.p() == p) && self.enumeration.iter().all(|f| f.p() == p))?;
        let start_ok = match self.mode {
            BnMode::Exhaustive => self.enumeration.first().is_some_and(|f| f.is_zero()),
            _ => self.enumeration.first() == Some(&FpPoly::t(p)),
        };
        c.require("enumeration starts correctly", start_ok)?;
        let fits_mode = self.enumeration.iter().enumerate().all(|(i, f)| match self.mode {
            BnMode::Monomial => *f == FpPoly::t(p).pow(p.pow(i as u32)),
            BnMode::Affine => *f == FpPoly::new(p, vec![i as u64, 1]),
            BnMode::Exhaustive => *f == FpPoly::from_index(p, i as u64),
            BnMode::Custom => true,
        });
        c.require("enumeration matches its mode", fits_mode)?;
        c.require("B_0 = 1", self.b[0] == BivariatePoly::one(p))?;
        for n in 0..self.m {
            let next = bivariate_reduce(&step_factor(self.mode, &self.enumeration[n]).mul(&self.b[n]), &self.g, &self.g)
                .map_err(|e| e.to_string())?;
            c.require(format!("B_{} follows from B_{n}", n + 1), next == self.b[n + 1])?;
        }
        c.require("B_m = 0", self.b[self.m].is_zero())?;
        c.require("m is least", self.b[..self.m].iter().all(|b| !b.is_zero()))?;
        let expected: Vec<FpPoly> = self.enumeration.iter().skip(1).map(|f| obligation(self.mode, f)).collect();
        c.require("obligations are W_f for f_1, ..., f_{m-1}", self.obligations == expected)?;
        c.require("noncommutative b_n agree with B_n", self.cross_check().is_ok())?;
        c.done()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, s: &str) -> FpPoly {
        FpPoly::parse(p, s).unwrap()
    }

    #[test]
    fn terminating_indices() {
        let cases = [
            (2, 3, "T^3+T+1", Enumeration::Monomial, 3),
            (3, 3, "T^3+2T+1", Enumeration::Affine, 3),
            (3, 3, "T^3+T^2+2", Enumeration::Monomial, 3),
            (2, 4, "T^4+T+1", Enumeration::Monomial, 4),
            (2, 2, "T^2+T+1", Enumeration::Monomial, 2),
        ];
        for (p, k, g, e, m) in cases {
            let r = bn_certificate(p, k, &f(p, g), &e).unwrap();
            assert_eq!(r.m, m, "{g}");
            assert!(r.verify().is_ok(), "{g}");
        }
    }

    #[test]
    fn eight_case_product() {
        let r = bn_certificate(2, 3, &f(2, "T^3+T+1"), &Enumeration::Monomial).unwrap();
        let expected = ["T", "T^2", "T^4"].map(|s| f(2, s));
        assert_eq!(r.enumeration, expected);
        assert_eq!(r.obligations, expected[1..]);
    }

    #[test]
    fn exhaustive_mode_terminates() {
        let r = bn_certificate(2, 2, &f(2, "T^2+T+1"), &Enumeration::Exhaustive).unwrap();
        assert!(r.verify().is_ok());
        assert!(r.m <= 4);
    }

    #[test]
    fn rejects_bad_relations() {
        assert!(bn_certificate(2, 2, &f(2, "T^2+1"), &Enumeration::Monomial).is_err());
        assert!(bn_certificate(2, 3, &f(2, "T^2+T+1"), &Enumeration::Monomial).is_err());
        let short = Enumeration::Custom(vec![f(2, "T")]);
        assert!(matches!(bn_certificate(2, 3, &f(2, "T^3+T+1"), &short), Err(Error::NoTermination { steps: 1 })));
    }

    #[test]
    fn tampered_sequence_fails() {
        let mut r = bn_certificate(2, 3, &f(2, "T^3+T+1"), &Enumeration::Monomial).unwrap();
        r.b[1] = BivariatePoly::from_terms(2, [((0, 1), 1)]);
        assert!(r.verify().is_err());
    }
}

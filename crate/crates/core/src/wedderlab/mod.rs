//! The composition monoid `F_p[T]/(T^q - T)`, periods, the Wedderburn
//! status classifier and group-algebra saturation.

mod algebra;
mod saturate;

pub use algebra::{group_algebra, FiniteAlgebra};
pub use saturate::{saturate_universal_quotient, verify_trace, SaturationOutcome, SaturationStats, SaturationTrace, Strategy};

use std::collections::HashMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{invalid, Error, Result};
use crate::fppoly::FpPoly;
use crate::reduction::{CheckResult, Checks};

/// Iterations allowed before cycle detection gives up.
pub const PERIOD_MAX_STEPS: usize = 1 << 16;

/// Largest `q = p^k` handled by the composition monoid.
pub const MONOID_MAX_Q: u64 = 1 << 12;

fn field_size(p: u64, k: u32) -> Result<u64> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if k == 0 {
        return invalid("k must be positive");
    }
    match p.checked_pow(k) {
        Some(q) if q <= MONOID_MAX_Q => Ok(q),
        _ => Err(Error::BudgetExceeded(format!("{p}^{k} exceeds {MONOID_MAX_Q}"))),
    }
}

/// An element of `(F_p[T]/(T^q - T), ∘, T)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoidElement {
    p: u64,
    k: u32,
    rep: FpPoly,
}

impl MonoidElement {
    pub fn new(p: u64, k: u32, f: &FpPoly) -> Result<Self> {
        let q = field_size(p, k)?;
        if f.p() != p {
            return Err(Error::CharacteristicMismatch(f.p(), p));
        }
        Ok(MonoidElement { p, k, rep: f.reduce_frobenius(q as usize) })
    }

    pub fn identity(p: u64, k: u32) -> Result<Self> {
        Self::new(p, k, &FpPoly::t(p))
    }

    pub fn q(&self) -> usize {
        self.p.pow(self.k) as usize
    }

    pub fn rep(&self) -> &FpPoly {
        &self.rep
    }

    /// `self ∘ inner`, reduced after every Horner step.
    pub fn compose(&self, inner: &Self) -> Self {
        let q = self.q();
        let p = self.p;
        if inner.rep.as_monomial().is_some() {
            let rep = self.rep.compose(&inner.rep).reduce_frobenius(q);
            return MonoidElement { p, k: self.k, rep };
        }
        let mut acc = FpPoly::zero(p);
        for &a in self.rep.coeffs().iter().rev() {
            acc = (&(&acc * &inner.rep) + &FpPoly::constant(p, a)).reduce_frobenius(q);
        }
        MonoidElement { p, k: self.k, rep: acc }
    }

    /// `self^{∘ e}`.
    pub fn iterate(&self, e: u64) -> Self {
        let mut acc = MonoidElement { p: self.p, k: self.k, rep: FpPoly::t(self.p) };
        for _ in 0..e {
            acc = self.compose(&acc);
        }
        acc
    }
}

/// Minimal `(index, period)` with `f^{∘(i+π)} = f^{∘i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodIndex {
    pub period: u64,
    pub index: u64,
}

pub fn period_index(p: u64, k: u32, f: &FpPoly) -> Result<PeriodIndex> {
    let f = MonoidElement::new(p, k, f)?;
    let mut seen: HashMap<FpPoly, u64> = HashMap::new();
    let mut cur = MonoidElement::identity(p, k)?;
    for j in 0..=PERIOD_MAX_STEPS as u64 {
        if let Some(&i) = seen.get(&cur.rep) {
            return Ok(PeriodIndex { period: j - i, index: i });
        }
        seen.insert(cur.rep.clone(), j);
        cur = f.compose(&cur);
    }
    Err(Error::BudgetExceeded(format!("no cycle within {PERIOD_MAX_STEPS} compositions")))
}

/// Period of `T^(p^m)`: the additive order of `m` in `Z/k`.
pub fn monomial_period(k: u64, m: u64) -> u64 {
    k / m.gcd(&k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum WVerdict {
    ProvenConstant,
    /// `f = T + u`.
    ProvenLinear { u: u64 },
    ProvenPeriodGcd { period: u64, index: u64, d: u64 },
    ProvenSemantically { period: u64, index: u64, d: u64, trace: Box<SaturationTrace> },
    /// `f^{∘d}(a) = a` is all that is known.
    Open { period: u64, index: u64, d: u64, note: String },
}

/// Status of `W_{p,k,f}`: `ba = f(a) b` implies `ab = ba` in `p^k`-rings with `p = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedderburnStatus {
    pub p: u64,
    pub k: u32,
    /// Reduced mod `T^q - T`, ascending coefficients in JSON.
    #[serde(with = "poly_coeffs")]
    pub f: FpPoly,
    #[serde(flatten)]
    pub verdict: WVerdict,
}

mod poly_coeffs {
    use crate::fppoly::FpPoly;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        p: u64,
        coeffs: Vec<u64>,
    }

    pub fn serialize<S: Serializer>(f: &FpPoly, s: S) -> Result<S::Ok, S::Error> {
        Repr { p: f.p(), coeffs: f.coeffs().to_vec() }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<FpPoly, D::Error> {
        let r = Repr::deserialize(d)?;
        crate::proofkit::json::poly(r.p, &r.coeffs).map_err(serde::de::Error::custom)
    }
}

impl WedderburnStatus {
    pub fn is_proven(&self) -> bool {
        !matches!(self.verdict, WVerdict::Open { .. })
    }

    pub fn label(&self) -> &'static str {
        match self.verdict {
            WVerdict::ProvenConstant => "ProvenConstant",
            WVerdict::ProvenLinear { .. } => "ProvenLinear",
            WVerdict::ProvenPeriodGcd { .. } => "ProvenPeriodGcd",
            WVerdict::ProvenSemantically { .. } => "ProvenSemantically",
            WVerdict::Open { .. } => "Open",
        }
    }

    /// Re-derives the evidence behind the verdict.
    pub fn recheck(&self) -> CheckResult {
        let mut c = Checks::new();
        let (p, k) = (self.p, self.k);
        let q = field_size(p, k).map_err(|e| e.to_string())?;
        c.require("f is reduced mod T^q - T", self.f.p() == p && self.f.reduce_frobenius(q as usize) == self.f)?;
        let recheck_period = |period: u64, index: u64, d: u64, c: &mut Checks| -> std::result::Result<(), String> {
            let pi = period_index(p, k, &self.f).map_err(|e| e.to_string())?;
            c.require("period and index are minimal", pi == PeriodIndex { period, index })?;
            let f = MonoidElement::new(p, k, &self.f).map_err(|e| e.to_string())?;
            c.require("f^(i+π) = f^i", f.iterate(index + period) == f.iterate(index))?;
            c.require("d = gcd(π, q - 1)", d == period.gcd(&(q - 1)))
        };
        match &self.verdict {
            WVerdict::ProvenConstant => c.require("f is constant", self.f.is_constant())?,
            WVerdict::ProvenLinear { u } => {
                c.require("f = T + u", self.f == FpPoly::new(p, vec![*u, 1]))?;
            }
            WVerdict::ProvenPeriodGcd { period, index, d } => {
                recheck_period(*period, *index, *d, &mut c)?;
                c.require("d = 1", *d == 1)?;
            }
            WVerdict::ProvenSemantically { period, index, d, trace } => {
                recheck_period(*period, *index, *d, &mut c)?;
                let m = self.f.as_monomial().filter(|&(a, _)| a == 1).map(|(_, e)| e as u64);
                c.require("f is a monic monomial", m.is_some())?;
                let m = m.unwrap();
                c.require("trace is for q", trace.q == q)?;
                let a = group_algebra(p, k, m, &Budget { max_dim: Some(trace.algebra.dim()), ..Budget::default() })
                    .map_err(|e| e.to_string())?;
                c.require("trace algebra is the group algebra for T^m", a == trace.algebra)?;
                for name in verify_trace(trace)? {
                    c.require(name, true)?;
                }
            }
            WVerdict::Open { period, index, d, .. } => {
                recheck_period(*period, *index, *d, &mut c)?;
                c.require("d > 1", *d > 1)?;
            }
        }
        c.done()
    }
}

/// Limits for group-algebra construction and saturation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Overrides the per-characteristic dimension limit.
    pub max_dim: Option<usize>,
    /// Relations `r^q - r` tried before giving up.
    pub max_relations: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_dim: None, max_relations: 512, seed: 0x5eed }
    }
}

impl Budget {
    pub fn dim_limit(&self, p: u64) -> usize {
        self.max_dim.unwrap_or(match p {
            2 => 64,
            3 => 32,
            _ => 16,
        })
    }

    /// `dim=N,relations=N,seed=N`, any subset; a bare number sets `dim`.
    pub fn parse(s: &str) -> Result<Budget> {
        let mut b = Budget::default();
        let num = |v: &str| v.trim().parse::<u64>().map_err(|_| Error::Parse(format!("budget value `{v}`")));
        for part in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            match part.split_once('=') {
                None => b.max_dim = Some(num(part)? as usize),
                Some(("dim", v)) => b.max_dim = Some(num(v)? as usize),
                Some(("relations", v)) => b.max_relations = num(v)? as usize,
                Some(("seed", v)) => b.seed = num(v)?,
                Some((key, _)) => return Err(Error::Parse(format!("unknown budget key `{key}`"))),
            }
        }
        Ok(b)
    }

    /// Reads `RINGLOCK_BUDGET`, falling back to the defaults when unset.
    pub fn from_env() -> Result<Budget> {
        match std::env::var("RINGLOCK_BUDGET") {
            Ok(s) => Budget::parse(&s),
            Err(_) => Ok(Budget::default()),
        }
    }
}

/// Classifies `W_{p,k,f}`; saturation runs only when a budget is given.
pub fn wedderburn_status(p: u64, k: u32, f: &FpPoly, saturation: Option<&Budget>) -> Result<WedderburnStatus> {
    let q = field_size(p, k)?;
    if f.p() != p {
        return Err(Error::CharacteristicMismatch(f.p(), p));
    }
    let f = f.reduce_frobenius(q as usize);
    let status = |verdict| Ok(WedderburnStatus { p, k, f: f.clone(), verdict });
    if f.is_constant() {
        return status(WVerdict::ProvenConstant);
    }
    if f.degree() == Some(1) && f.leading() == 1 {
        return status(WVerdict::ProvenLinear { u: f.coeff(0) });
    }
    let PeriodIndex { period, index } = period_index(p, k, &f)?;
    let d = period.gcd(&(q - 1));
    if d == 1 {
        return status(WVerdict::ProvenPeriodGcd { period, index, d });
    }
    let monomial = f.as_monomial().filter(|&(a, _)| a == 1).map(|(_, e)| e as u64);
    let note = match (monomial, saturation) {
        (None, _) => "not a monomial".to_string(),
        (Some(_), None) => "saturation not requested".to_string(),
        (Some(m), Some(budget)) => match group_algebra(p, k, m, budget) {
            Err(Error::BudgetExceeded(msg)) => msg,
            Err(e) => return Err(e),
            Ok(a) => match saturate_universal_quotient(&a, q, Strategy::default(), budget) {
                SaturationOutcome::CommutativeQuotient(trace) => {
                    return status(WVerdict::ProvenSemantically { period, index, d, trace: Box::new(trace) });
                }
                SaturationOutcome::Inconclusive(s) => {
                    format!("saturation inconclusive after {} relations (rank {} of {})", s.relations_tried, s.ideal_rank, s.dimension)
                }
            },
        },
    };
    status(WVerdict::Open { period, index, d, note })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, s: &str) -> FpPoly {
        FpPoly::parse(p, s).unwrap()
    }

    #[test]
    fn worked_periods() {
        assert_eq!(period_index(2, 3, &poly(2, "T^2+T")).unwrap(), PeriodIndex { period: 3, index: 1 });
        assert_eq!(period_index(2, 4, &poly(2, "T^2+1")).unwrap(), PeriodIndex { period: 4, index: 0 });
        for p in [2, 3, 5] {
            for c in 0..p {
                assert_eq!(period_index(p, 2, &FpPoly::constant(p, c)).unwrap(), PeriodIndex { period: 1, index: 1 });
            }
        }
    }

    #[test]
    fn negation_has_period_two() {
        assert_eq!(period_index(3, 2, &poly(3, "-T")).unwrap(), PeriodIndex { period: 2, index: 0 });
        assert_eq!(period_index(2, 2, &poly(2, "-T")).unwrap(), PeriodIndex { period: 1, index: 0 });
    }

    #[test]
    fn monomial_periods_agree_with_cycle_detection() {
        assert_eq!(monomial_period(6, 2), 3);
        assert_eq!(monomial_period(5, 0), 1);
        for p in [2u64, 3, 5] {
            for k in 1..=6u32 {
                if p.pow(k) > MONOID_MAX_Q {
                    continue;
                }
                for m in 0..k {
                    let f = FpPoly::monomial(p, 1, p.pow(m) as usize);
                    let pi = period_index(p, k, &f).unwrap();
                    assert_eq!(pi.period, monomial_period(k as u64, m as u64), "p={p} k={k} m={m}");
                    assert_eq!(pi.index, 0);
                }
            }
        }
    }

    #[test]
    fn classification_order() {
        let s = wedderburn_status(2, 3, &FpPoly::one(2), None).unwrap();
        assert_eq!(s.verdict, WVerdict::ProvenConstant);
        let s = wedderburn_status(3, 2, &poly(3, "T+2"), None).unwrap();
        assert_eq!(s.verdict, WVerdict::ProvenLinear { u: 2 });
        let s = wedderburn_status(2, 3, &poly(2, "T^2"), None).unwrap();
        assert_eq!(s.verdict, WVerdict::ProvenPeriodGcd { period: 3, index: 0, d: 1 });
        let s = wedderburn_status(2, 6, &poly(2, "T^2"), None).unwrap();
        assert!(matches!(s.verdict, WVerdict::Open { period: 6, d: 3, .. }), "{s:?}");
        for s in [s, wedderburn_status(2, 3, &poly(2, "T^2"), None).unwrap()] {
            assert!(s.recheck().is_ok(), "{:?}", s.recheck());
        }
    }

    #[test]
    fn saturation_proves_a_monomial_case() {
        let b = Budget { max_dim: Some(18), ..Budget::default() };
        let s = wedderburn_status(7, 1, &poly(7, "T^2"), Some(&b)).unwrap();
        assert_eq!(s.label(), "ProvenSemantically", "{s:?}");
        assert!(s.recheck().is_ok(), "{:?}", s.recheck());
        let tight = Budget { max_dim: Some(8), ..Budget::default() };
        let s = wedderburn_status(7, 1, &poly(7, "T^2"), Some(&tight)).unwrap();
        assert!(matches!(s.verdict, WVerdict::Open { d: 2, .. }), "{s:?}");
    }

    #[test]
    fn tampered_verdicts_fail_recheck() {
        let mut s = wedderburn_status(2, 3, &poly(2, "T^2"), None).unwrap();
        s.verdict = WVerdict::ProvenPeriodGcd { period: 2, index: 0, d: 1 };
        assert!(s.recheck().is_err());
        s.verdict = WVerdict::ProvenConstant;
        assert!(s.recheck().is_err());
    }

    #[test]
    fn budget_strings() {
        assert_eq!(Budget::parse("48").unwrap().max_dim, Some(48));
        let b = Budget::parse("dim=10, relations=7, seed=3").unwrap();
        assert_eq!((b.max_dim, b.max_relations, b.seed), (Some(10), 7, 3));
        assert!(Budget::parse("depth=3").is_err());
        assert_eq!(Budget::default().dim_limit(2), 64);
        assert_eq!(Budget::default().dim_limit(3), 32);
    }

    #[test]
    fn status_json_round_trip() {
        let s = wedderburn_status(2, 6, &poly(2, "T^2"), None).unwrap();
        let back: WedderburnStatus = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }
}

use serde::{Deserialize, Serialize};

use super::json;
use crate::error::{Error, Result};
use crate::fppoly::{is_irreducible, monic_irreducibles_dividing, FpPoly};
use crate::reduction::{CheckResult, Checks};

/// Largest `p^k` for which e_g systems are built and checked.
pub const EG_MAX_Q: u64 = 1 << 12;

/// `u g + v prod_{g' != g} g' = 1` and `e = v prod_{g' != g} g'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgMember {
    pub g: FpPoly,
    pub e: FpPoly,
    pub u: FpPoly,
    pub v: FpPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "EgData", try_from = "EgData")]
pub struct EgSystem {
    pub p: u64,
    pub k: u64,
    pub members: Vec<EgMember>,
}

#[derive(Serialize, Deserialize)]
struct EgMemberData {
    g: Vec<u64>,
    e: Vec<u64>,
    u: Vec<u64>,
    v: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct EgData {
    p: u64,
    k: u64,
    members: Vec<EgMemberData>,
}

impl From<EgSystem> for EgData {
    fn from(s: EgSystem) -> Self {
        let members = s
            .members
            .iter()
            .map(|m| EgMemberData {
                g: m.g.coeffs().to_vec(),
                e: m.e.coeffs().to_vec(),
                u: m.u.coeffs().to_vec(),
                v: m.v.coeffs().to_vec(),
            })
            .collect();
        EgData { p: s.p, k: s.k, members }
    }
}

impl TryFrom<EgData> for EgSystem {
    type Error = String;

    fn try_from(d: EgData) -> std::result::Result<Self, String> {
        let p = d.p;
        let members = d
            .members
            .iter()
            .map(|m| {
                Ok(EgMember { g: json::poly(p, &m.g)?, e: json::poly(p, &m.e)?, u: json::poly(p, &m.u)?, v: json::poly(p, &m.v)? })
            })
            .collect::<std::result::Result<_, String>>()?;
        Ok(EgSystem { p, k: d.k, members })
    }
}

fn field_size(p: u64, k: u64) -> Option<u64> {
    u32::try_from(k).ok().and_then(|k| p.checked_pow(k)).filter(|&q| q <= EG_MAX_Q)
}

fn product_except(s: &[FpPoly], skip: usize, p: u64) -> FpPoly {
    s.iter().enumerate().filter(|&(i, _)| i != skip).fold(FpPoly::one(p), |acc, (_, g)| &acc * g)
}

pub fn eg_system(p: u64, k: u64) -> Result<EgSystem> {
    if field_size(p, k).is_none() {
        return Err(Error::BudgetExceeded(format!("{p}^{k} exceeds {EG_MAX_Q}")));
    }
    let s = monic_irreducibles_dividing(p, k as usize)?;
    let members = (0..s.len())
        .map(|i| {
            let rest = product_except(&s, i, p);
            let (d, u, v) = s[i].xgcd(&rest);
            debug_assert_eq!(d, FpPoly::one(p));
            EgMember { g: s[i].clone(), e: &v * &rest, u, v }
        })
        .collect();
    Ok(EgSystem { p, k, members })
}

impl EgSystem {
    pub fn idempotent_of(&self, g: &FpPoly) -> Option<&FpPoly> {
        self.members.iter().find(|m| &m.g == g).map(|m| &m.e)
    }

    pub fn verify(&self) -> CheckResult {
        let mut c = Checks::new();
        let p = self.p;
        c.require("p is prime", crate::arith::is_prime(p))?;
        let q = field_size(p, self.k);
        c.require("p^k within budget", q.is_some())?;
        let q = q.unwrap() as usize;
        let all_p = self.members.iter().all(|m| [&m.g, &m.e, &m.u, &m.v].iter().all(|f| f.p() == p));
        c.require("all polynomials live over F_p", all_p)?;
        let gs: Vec<FpPoly> = self.members.iter().map(|m| m.g.clone()).collect();
        let shape = gs.iter().all(|g| g.is_monic() && g.degree().is_some_and(|d| d >= 1 && self.k as usize % d == 0));
        c.require("every g is monic with degree dividing k", shape)?;
        c.require("every g is irreducible", gs.iter().all(|g| is_irreducible(g).unwrap_or(false)))?;
        let mut sorted = gs.clone();
        sorted.sort();
        sorted.dedup();
        c.require("the g are pairwise distinct", sorted.len() == gs.len())?;
        let target = FpPoly::frobenius_target(p, q);
        let prod = gs.iter().fold(FpPoly::one(p), |acc, g| &acc * g);
        c.require("product of all g equals T^(p^k) - T", prod == target)?;
        for (i, m) in self.members.iter().enumerate() {
            let rest = product_except(&gs, i, p);
            c.require(format!("u g + v prod(others) = 1 for g = {}", m.g), &(&m.u * &m.g) + &(&m.v * &rest) == FpPoly::one(p))?;
            c.require(format!("e = v prod(others) for g = {}", m.g), m.e == &m.v * &rest)?;
            c.require(format!("e = 1 mod g for g = {}", m.g), (&m.e - &FpPoly::one(p)).rem(&m.g).unwrap().is_zero())?;
            let vanish = gs.iter().enumerate().all(|(j, h)| j == i || m.e.rem(h).unwrap().is_zero());
            c.require(format!("e = 0 mod g' != g for g = {}", m.g), vanish)?;
        }
        let red = |f: &FpPoly| f.reduce_frobenius(q);
        let sum = self.members.iter().fold(FpPoly::zero(p), |acc, m| &acc + &m.e);
        c.require("sum of e_g = 1 mod T^(p^k) - T", red(&sum) == FpPoly::one(p))?;
        for (i, a) in self.members.iter().enumerate() {
            c.require(format!("e^2 = e for g = {}", a.g), red(&(&a.e * &a.e)) == red(&a.e))?;
            for b in &self.members[i + 1..] {
                c.require(format!("e e' = 0 for g = {}, g' = {}", a.g, b.g), red(&(&a.e * &b.e)).is_zero())?;
            }
        }
        c.done()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> FpPoly {
        FpPoly::parse(2, s).unwrap()
    }

    #[test]
    fn four_case_idempotents() {
        let s = eg_system(2, 2).unwrap();
        assert_eq!(s.idempotent_of(&f("T")), Some(&f("T^3+1")));
        assert_eq!(s.idempotent_of(&f("T+1")), Some(&f("T^3+T^2+T")));
        assert_eq!(s.idempotent_of(&f("T^2+T+1")), Some(&f("T^2+T")));
        assert!(s.verify().is_ok());
    }

    #[test]
    fn complementary_pair() {
        let s = eg_system(2, 1).unwrap();
        assert_eq!(s.idempotent_of(&f("T")), Some(&f("T+1")));
        assert_eq!(s.idempotent_of(&f("T+1")), Some(&f("T")));
    }

    #[test]
    fn larger_systems_verify() {
        let s = eg_system(3, 3).unwrap();
        assert_eq!(s.members.len(), 11);
        assert!(s.verify().is_ok());
        assert!(eg_system(2, 4).unwrap().verify().is_ok());
        let mut bad = eg_system(2, 3).unwrap();
        bad.members.pop();
        assert!(bad.verify().is_err());
    }
}

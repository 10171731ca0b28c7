use std::collections::BTreeMap;
use std::fmt;

use super::FpPoly;
use crate::error::{invalid, Error, Result};

/// Commutative polynomial in `X`, `Y` over F_p; keys are `(i, j)` for `X^i Y^j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BivariatePoly {
    p: u64,
    terms: BTreeMap<(u32, u32), u64>,
}

impl BivariatePoly {
    pub fn zero(p: u64) -> Self {
        BivariatePoly { p, terms: BTreeMap::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::from_terms(p, [((0, 0), 1)])
    }

    pub fn from_terms(p: u64, terms: impl IntoIterator<Item = ((u32, u32), u64)>) -> Self {
        let mut out = Self::zero(p);
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    /// `f(X)`.
    pub fn in_x(f: &FpPoly) -> Self {
        Self::from_terms(f.p(), f.coeffs().iter().enumerate().map(|(i, &c)| ((i as u32, 0), c)))
    }

    /// `f(Y)`.
    pub fn in_y(f: &FpPoly) -> Self {
        Self::from_terms(f.p(), f.coeffs().iter().enumerate().map(|(j, &c)| ((0, j as u32), c)))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, k: (u32, u32), c: u64) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(k).or_insert(0);
        *slot = (*slot + c) % self.p;
        if *slot == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.p, o.p, "characteristic mismatch");
        let mut out = self.clone();
        for (k, c) in o.terms() {
            out.add_term(k, c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.p, o.p, "characteristic mismatch");
        let mut out = self.clone();
        for (k, c) in o.terms() {
            out.add_term(k, self.p - c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.p, o.p, "characteristic mismatch");
        let mut out = Self::zero(self.p);
        for ((i, j), a) in self.terms() {
            for ((k, l), b) in o.terms() {
                out.add_term((i + k, j + l), a * b % self.p);
            }
        }
        out
    }
}

fn power_residues(g: &FpPoly, max: u32) -> Vec<FpPoly> {
    let p = g.p();
    let t = FpPoly::t(p);
    let mut out = Vec::with_capacity(max as usize + 1);
    let mut cur = FpPoly::one(p).rem(g).expect("nonzero modulus");
    for _ in 0..=max {
        out.push(cur.clone());
        cur = (&cur * &t).rem(g).expect("nonzero modulus");
    }
    out
}

/// Canonical representative of `b` modulo `(g_x(X), g_y(Y))`.
pub fn bivariate_reduce(b: &BivariatePoly, g_x: &FpPoly, g_y: &FpPoly) -> Result<BivariatePoly> {
    if g_x.is_zero() || g_y.is_zero() {
        return invalid("bivariate_reduce needs nonzero moduli");
    }
    if g_x.p() != b.p || g_y.p() != b.p {
        return Err(Error::CharacteristicMismatch(b.p, if g_x.p() != b.p { g_x.p() } else { g_y.p() }));
    }
    let max_i = b.terms.keys().map(|k| k.0).max().unwrap_or(0);
    let max_j = b.terms.keys().map(|k| k.1).max().unwrap_or(0);
    let rx = power_residues(g_x, max_i);
    let ry = power_residues(g_y, max_j);
    let mut out = BivariatePoly::zero(b.p);
    for ((i, j), c) in b.terms() {
        for (a, &ca) in rx[i as usize].coeffs().iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (bj, &cb) in ry[j as usize].coeffs().iter().enumerate() {
                if cb != 0 {
                    out.add_term((a as u32, bj as u32), c * ca % b.p * cb % b.p);
                }
            }
        }
    }
    Ok(out)
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (&(i, j), &c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            if c != 1 || (i == 0 && j == 0) {
                factors.push(c.to_string());
            }
            for (name, e) in [("X", i), ("Y", j)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            parts.push(factors.join("*"));
        }
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self, self.p)
    }
}

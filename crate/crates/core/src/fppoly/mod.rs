//! Dense univariate polynomials over a prime field.

mod bivariate;
mod fq;
mod gf2;
mod irreducible;
mod parse;

pub use bivariate::{bivariate_reduce, BivariatePoly};
pub use fq::{fq_enumerate_units, FqElement};
pub use irreducible::{is_irreducible, monic_irreducibles_dividing, reduce_by_symmetry, reduce_by_symmetry_with, Symmetry};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{is_prime, pow_mod};
use crate::error::{invalid, Error, Result};

/// Polynomial over F_p with ascending coefficients and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    c: Vec<u64>,
}

/// Kind selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivRem,
}

/// Checked arithmetic entry point. Returns `(result, remainder)`; the
/// remainder is only meaningful for [`PolyOp::DivRem`].
pub fn poly_arith(lhs: &FpPoly, rhs: &FpPoly, op: PolyOp) -> Result<(FpPoly, FpPoly)> {
    if lhs.p != rhs.p {
        return Err(Error::CharacteristicMismatch(lhs.p, rhs.p));
    }
    let zero = FpPoly::zero(lhs.p);
    Ok(match op {
        PolyOp::Add => (lhs + rhs, zero),
        PolyOp::Sub => (lhs - rhs, zero),
        PolyOp::Mul => (lhs * rhs, zero),
        PolyOp::DivRem => lhs.divrem(rhs)?,
    })
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

impl FpPoly {
    /// Builds a polynomial, reducing coefficients mod `p`.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        debug_assert!(p >= 2);
        let mut c = coeffs;
        for x in c.iter_mut() {
            *x %= p;
        }
        let mut f = FpPoly { p, c };
        f.trim();
        f
    }

    /// Like [`FpPoly::new`] but checks that `p` is a prime below 2^32.
    pub fn checked(p: u64, coeffs: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        Ok(Self::new(p, coeffs))
    }

    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        let pi = p as i64;
        Self::new(p, coeffs.iter().map(|&x| x.rem_euclid(pi) as u64).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    /// The indeterminate `T`.
    pub fn t(p: u64) -> Self {
        Self::monomial(p, 1, 1)
    }

    pub fn monomial(p: u64, coeff: u64, exp: usize) -> Self {
        let mut c = vec![0; exp + 1];
        c[exp] = coeff;
        Self::new(p, c)
    }

    /// `T^q - T`.
    pub fn frobenius_target(p: u64, q: usize) -> Self {
        let mut c = vec![0; q + 1];
        c[q] = 1;
        c[1] = (c[1] + p - 1) % p;
        Self::new(p, c)
    }

    /// The polynomial whose coefficients are the base-`p` digits of `index`.
    /// Indices enumerate F_p[T] in (degree, lexicographic) order.
    pub fn from_index(p: u64, mut index: u64) -> Self {
        let mut c = Vec::new();
        while index > 0 {
            c.push(index % p);
            index /= p;
        }
        Self::new(p, c)
    }

    /// Monic polynomials of degree `d` in enumeration order.
    pub fn monics_of_degree(p: u64, d: usize) -> impl Iterator<Item = FpPoly> {
        let count = p.checked_pow(d as u32).expect("enumeration size fits u64");
        (0..count).map(move |v| {
            let mut f = Self::from_index(p, v);
            f.c.resize(d + 1, 0);
            f.c[d] = 1;
            f
        })
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.c.last() == Some(&1)
    }

    pub fn leading(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    /// `Some((coeff, exp))` when the polynomial has exactly one term.
    pub fn as_monomial(&self) -> Option<(u64, usize)> {
        let d = self.degree()?;
        self.c[..d].iter().all(|&x| x == 0).then(|| (self.c[d], d))
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(self.p, other.p, "characteristic mismatch");
    }

    pub fn scale(&self, k: u64) -> Self {
        let k = k % self.p;
        Self::new(self.p, self.c.iter().map(|&x| x * k % self.p).collect())
    }

    /// Scales to leading coefficient 1. The zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    /// Multiplies by `T^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        FpPoly { p: self.p, c }
    }

    pub fn eval(&self, x: u64) -> u64 {
        let x = x % self.p;
        self.c.iter().rev().fold(0, |acc, &a| (acc * x + a) % self.p)
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.c.iter().enumerate().skip(1).map(|(i, &a)| (i as u64 % p) * a % p).collect(),
        )
    }

    /// Quotient and remainder with `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        if self.p != d.p {
            return Err(Error::CharacteristicMismatch(self.p, d.p));
        }
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let p = self.p;
        if self.c.len() <= dd {
            return Ok((Self::zero(p), self.clone()));
        }
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        let inv = inv_mod(d.leading(), p);
        for i in (dd..r.len()).rev() {
            let coef = if p == 2 { r[i] } else { r[i] * inv % p };
            if coef == 0 {
                continue;
            }
            q[i - dd] = coef;
            let base = i - dd;
            if p == 2 {
                for (j, &b) in d.c.iter().enumerate() {
                    r[base + j] ^= b;
                }
            } else {
                for (j, &b) in d.c.iter().enumerate() {
                    let sub = coef * b % p;
                    let slot = &mut r[base + j];
                    *slot = (*slot + p - sub) % p;
                }
            }
        }
        r.truncate(dd);
        Ok((Self::new(p, q), Self::new(p, r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        if self.c.len() <= d.c.len().saturating_sub(1) && self.p == d.p && !d.is_zero() {
            return Ok(self.clone());
        }
        Ok(self.divrem(d)?.1)
    }

    /// True when `self` divides `other`. Zero divides only zero.
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        self.same_field(other);
        if self.p == 2 {
            return Self::new(2, gf2::gcd(&self.c, &other.c));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Extended Euclid: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        self.same_field(other);
        let p = self.p;
        let (mut old_r, mut r) = (self.clone(), other.clone());
        let (mut old_s, mut s) = (Self::one(p), Self::zero(p));
        let (mut old_t, mut t) = (Self::zero(p), Self::one(p));
        while !r.is_zero() {
            let (q, rem) = old_r.divrem(&r).expect("nonzero divisor");
            old_r = std::mem::replace(&mut r, rem);
            let ns = &old_s - &(&q * &s);
            old_s = std::mem::replace(&mut s, ns);
            let nt = &old_t - &(&q * &t);
            old_t = std::mem::replace(&mut t, nt);
        }
        if old_r.is_zero() {
            return (old_r, old_s, old_t);
        }
        let inv = inv_mod(old_r.leading(), p);
        (old_r.scale(inv), old_s.scale(inv), old_t.scale(inv))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Result<Self> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one(self.p).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// `f^n - f`.
    pub fn power_minus_self(&self, n: u64) -> Self {
        &self.pow(n) - self
    }

    /// `(T + u)^n`, coefficientwise via Lucas' theorem.
    pub fn linear_power(p: u64, u: u64, n: u64) -> Self {
        let u = u % p;
        let len = n as usize + 1;
        let mut c = vec![0u64; len];
        if p == 2 {
            for (i, slot) in c.iter_mut().enumerate() {
                let i = i as u64;
                if i & !n == 0 && (u == 1 || i == n) {
                    *slot = 1;
                }
            }
            return Self::new(p, c);
        }
        let mut upow = vec![1u64; len];
        for i in 1..len {
            upow[i] = upow[i - 1] * u % p;
        }
        for (i, slot) in c.iter_mut().enumerate() {
            let b = binomial_mod(n, i as u64, p);
            if b != 0 {
                *slot = b * upow[n as usize - i] % p;
            }
        }
        Self::new(p, c)
    }

    /// `outer(inner(T))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.same_field(inner);
        let p = self.p;
        if let Some((k, e)) = inner.as_monomial() {
            let mut c = vec![0u64; self.c.len().saturating_sub(1) * e + 1];
            let mut kp = 1u64;
            for (i, &a) in self.c.iter().enumerate() {
                c[i * e] = (c[i * e] + a * kp) % p;
                kp = kp * k % p;
            }
            return Self::new(p, c);
        }
        let mut acc = Self::zero(p);
        for &a in self.c.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(p, a);
        }
        acc
    }

    /// Reduction mod `T^q - T` by folding exponents: `T^e = T^((e-1) mod (q-1) + 1)`.
    pub fn reduce_frobenius(&self, q: usize) -> Self {
        if self.c.len() <= q {
            return self.clone();
        }
        let p = self.p;
        let mut c = vec![0u64; q];
        for (e, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let e2 = if e < q { e } else { (e - 1) % (q - 1) + 1 };
            c[e2] = (c[e2] + a) % p;
        }
        Self::new(p, c)
    }

    /// Coefficientwise reversal `T^d f(1/T)` for `d = deg f`.
    pub fn reciprocal(&self) -> Self {
        let mut c = self.c.clone();
        c.reverse();
        Self::new(self.p, c)
    }

    /// Human syntax in the variable `var`, highest degree first.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(match (a, i) {
                (_, 0) => a.to_string(),
                (1, _) => mono,
                _ => format!("{a}*{mono}"),
            });
        }
        parts.join(" + ")
    }

    pub fn parse(p: u64, s: &str) -> Result<Self> {
        parse::parse_poly(p, s)
    }
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if p >= (1 << 32) || !is_prime(p) {
        return invalid(format!("{p} is not a supported prime"));
    }
    Ok(())
}

/// `C(n, k) mod p` via Lucas' theorem.
pub fn binomial_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        acc = acc * small_binomial(ni, ki, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn small_binomial(n: u64, k: u64, p: u64) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * inv_mod(den, p) % p
}

/// Multi-argument extended gcd over F_p[T] by first/rest folding.
pub fn poly_xgcd_multi(polys: &[FpPoly]) -> Result<(FpPoly, Vec<FpPoly>)> {
    let Some(first) = polys.first() else {
        return invalid("poly_xgcd_multi needs at least one polynomial");
    };
    if polys.iter().any(|f| f.p != first.p) {
        let other = polys.iter().find(|f| f.p != first.p).unwrap();
        return Err(Error::CharacteristicMismatch(first.p, other.p));
    }
    if polys.iter().all(FpPoly::is_zero) {
        return invalid("all inputs are zero");
    }
    Ok(fold_xgcd(polys))
}

fn fold_xgcd(polys: &[FpPoly]) -> (FpPoly, Vec<FpPoly>) {
    let p = polys[0].p;
    match polys {
        [f] => {
            if f.is_zero() {
                (f.clone(), vec![FpPoly::one(p)])
            } else {
                let inv = inv_mod(f.leading(), p);
                (f.scale(inv), vec![FpPoly::constant(p, inv)])
            }
        }
        [a, b] => {
            let (g, s, t) = a.xgcd(b);
            (g, vec![s, t])
        }
        [first, rest @ ..] => {
            let (rg, v) = fold_xgcd(rest);
            let (g, u0, u1) = first.xgcd(&rg);
            let mut w = vec![u0];
            w.extend(v.iter().map(|x| &u1 * x));
            (g, w)
        }
        [] => unreachable!(),
    }
}

impl Ord for FpPoly {
    /// Characteristic, then degree, then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.p
            .cmp(&other.p)
            .then(self.c.len().cmp(&other.c.len()))
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a FpPoly> for &'a FpPoly {
    type Output = FpPoly;
    fn add(self, rhs: &FpPoly) -> FpPoly {
        self.same_field(rhs);
        let p = self.p;
        let (long, short) = if self.c.len() >= rhs.c.len() { (self, rhs) } else { (rhs, self) };
        let mut c = long.c.clone();
        for (x, &y) in c.iter_mut().zip(&short.c) {
            *x = (*x + y) % p;
        }
        FpPoly::new(p, c)
    }
}

impl<'a> Sub<&'a FpPoly> for &'a FpPoly {
    type Output = FpPoly;
    fn sub(self, rhs: &FpPoly) -> FpPoly {
        self.same_field(rhs);
        let p = self.p;
        let mut c = self.c.clone();
        if c.len() < rhs.c.len() {
            c.resize(rhs.c.len(), 0);
        }
        for (x, &y) in c.iter_mut().zip(&rhs.c) {
            *x = (*x + p - y) % p;
        }
        FpPoly::new(p, c)
    }
}

impl<'a> Neg for &'a FpPoly {
    type Output = FpPoly;
    fn neg(self) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.c.iter().map(|&x| (p - x) % p).collect())
    }
}

impl<'a> Mul<&'a FpPoly> for &'a FpPoly {
    type Output = FpPoly;
    fn mul(self, rhs: &FpPoly) -> FpPoly {
        self.same_field(rhs);
        let p = self.p;
        if self.is_zero() || rhs.is_zero() {
            return FpPoly::zero(p);
        }
        let mut c = vec![0u64; self.c.len() + rhs.c.len() - 1];
        if p == 2 {
            for (i, &a) in self.c.iter().enumerate() {
                if a == 1 {
                    for (slot, &b) in c[i..].iter_mut().zip(&rhs.c) {
                        *slot ^= b;
                    }
                }
            }
            return FpPoly::new(p, c);
        }
        let shorter = self.c.len().min(rhs.c.len()) as u128;
        let lazy = (p as u128 - 1) * (p as u128 - 1) * shorter < u64::MAX as u128;
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let row = &mut c[i..];
            if lazy {
                for (slot, &b) in row.iter_mut().zip(&rhs.c) {
                    *slot += a * b;
                }
            } else {
                for (slot, &b) in row.iter_mut().zip(&rhs.c) {
                    *slot = (*slot + a * b % p) % p;
                }
            }
        }
        FpPoly::new(p, c)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("T"))
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, s: &str) -> FpPoly {
        FpPoly::parse(p, s).unwrap()
    }

    #[test]
    fn basic_arithmetic() {
        assert_eq!(&f(2, "T+1") * &f(2, "T^2+T+1"), f(2, "T^3+1"));
        let g = f(5, "3T^4+2");
        assert_eq!(&g + &FpPoly::zero(5), g);
        let a = f(3, "T^4-T");
        let d = f(3, "T^2-T");
        let (q, r) = a.divrem(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.degree().map_or(true, |x| x < 2));
        assert_eq!(a.divrem(&FpPoly::zero(3)), Err(Error::DivisionByZero));
        assert!(poly_arith(&a, &f(5, "T"), PolyOp::Add).is_err());
    }

    #[test]
    fn xgcd_examples() {
        let t = FpPoly::t(2);
        let t1 = f(2, "T+1");
        let (g, u) = poly_xgcd_multi(&[t.power_minus_self(3), t1.power_minus_self(3)]).unwrap();
        assert_eq!(g, f(2, "T^2+T"));
        assert_eq!(u, vec![FpPoly::one(2), FpPoly::one(2)]);

        let t = FpPoly::t(3);
        let t1 = f(3, "T+1");
        let (g, u) = poly_xgcd_multi(&[t.power_minus_self(5), t1.power_minus_self(5)]).unwrap();
        assert_eq!(g, f(3, "T^3-T"));
        assert_eq!(u, vec![f(3, "T"), f(3, "-T-1")]);

        let (g, u) = poly_xgcd_multi(&[f(5, "2T+4")]).unwrap();
        assert_eq!(g, f(5, "T+2"));
        assert_eq!(u, vec![FpPoly::constant(5, 3)]);
        assert!(poly_xgcd_multi(&[FpPoly::zero(5)]).is_err());
    }

    #[test]
    fn composition() {
        let g = f(2, "T^2+T");
        assert_eq!(g.compose(&g), f(2, "T^4+T"));
        let h = f(2, "T^2+1");
        assert_eq!(h.compose(&h), f(2, "T^4"));
        assert_eq!(g.compose(&FpPoly::t(2)), g);
        let k = f(3, "T^2+2T+1");
        let m = f(3, "2T^3+T");
        let mut acc = FpPoly::zero(3);
        for (i, &a) in k.coeffs().iter().enumerate() {
            acc = &acc + &m.pow(i as u64).scale(a);
        }
        assert_eq!(k.compose(&m), acc);
    }

    #[test]
    fn linear_power_matches_repeated_multiplication() {
        for p in [2u64, 3, 5, 7] {
            for u in 0..p {
                for n in [1u64, 2, 5, 13, 30] {
                    let base = FpPoly::new(p, vec![u, 1]);
                    assert_eq!(FpPoly::linear_power(p, u, n), base.pow(n), "p={p} u={u} n={n}");
                }
            }
        }
    }

    #[test]
    fn frobenius_fold_matches_division() {
        let m = FpPoly::frobenius_target(3, 9);
        let g = f(3, "2T^30+T^17+T^9+2T^8+1");
        assert_eq!(g.reduce_frobenius(9), g.rem(&m).unwrap());
    }

    #[test]
    fn enumeration_order() {
        let quad: Vec<String> = FpPoly::monics_of_degree(2, 2).map(|g| g.to_string()).collect();
        assert_eq!(quad, ["T^2", "T^2 + 1", "T^2 + T", "T^2 + T + 1"]);
        let first: Vec<String> = (0..4).map(|i| FpPoly::from_index(2, i).to_string()).collect();
        assert_eq!(first, ["0", "1", "T", "T + 1"]);
    }

    #[test]
    fn gf2_gcd_agrees_with_generic_euclid() {
        for n in [10u64, 74, 301] {
            let a = FpPoly::t(2).power_minus_self(n);
            let b = FpPoly::linear_power(2, 1, n);
            let b = &b - &f(2, "T+1");
            let (g, _, _) = a.xgcd(&b);
            assert_eq!(a.gcd(&b), g);
        }
    }
}

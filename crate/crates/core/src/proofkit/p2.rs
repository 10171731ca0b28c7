use serde::{Deserialize, Serialize};

use super::json;
use crate::arith::is_prime;
use crate::error::{invalid, Error, Result};
use crate::fppoly::{binomial_mod, FpPoly};
use crate::freering::{bracket, FreePoly, TermJson};
use crate::reduction::{CheckResult, Checks};

/// Largest prime for which the trace is generated and checked.
pub const P2_MAX_P: u64 = 13;

/// The identities consumed by the argument for `p^2`-rings with `p = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "P2Data", try_from = "P2Data")]
pub struct P2Trace {
    pub p: u64,
    /// `e(X) = X + X^p`.
    pub e: FpPoly,
    /// `h` with `e^p - e = h (X^(p^2) - X)`.
    pub cofactor: FpPoly,
    /// `sum_{0<i<p} [x^i y^(p-i)]` over `Z/p`.
    pub bracket_sum: FreePoly,
    /// Inverse of `V[i][l] = l^i` over `F_p`, `0 <= i, l < p`.
    pub vandermonde_inverse: Vec<Vec<u64>>,
    /// Pairs `(i, j)`: the `i`-th word of `y [x y^(p-1)]` equals the `j`-th
    /// word of `[x y^(p-1)] y`.
    pub telescoping: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct P2Data {
    p: u64,
    e: Vec<u64>,
    cofactor: Vec<u64>,
    bracket_sum: Vec<TermJson>,
    vandermonde_inverse: Vec<Vec<u64>>,
    telescoping: Vec<(usize, usize)>,
}

impl From<P2Trace> for P2Data {
    fn from(t: P2Trace) -> Self {
        P2Data {
            p: t.p,
            e: t.e.coeffs().to_vec(),
            cofactor: t.cofactor.coeffs().to_vec(),
            bracket_sum: t.bracket_sum.to_json_terms(),
            vandermonde_inverse: t.vandermonde_inverse,
            telescoping: t.telescoping,
        }
    }
}

impl TryFrom<P2Data> for P2Trace {
    type Error = String;

    fn try_from(d: P2Data) -> std::result::Result<Self, String> {
        Ok(P2Trace {
            p: d.p,
            e: json::poly(d.p, &d.e)?,
            cofactor: json::poly(d.p, &d.cofactor)?,
            bracket_sum: json::free(d.p, &d.bracket_sum)?,
            vandermonde_inverse: d.vandermonde_inverse,
            telescoping: d.telescoping,
        })
    }
}

pub(crate) fn vandermonde(p: u64) -> Vec<Vec<u64>> {
    (0..p).map(|i| (0..p).map(|l| crate::arith::pow_mod(l, i, p)).collect()).collect()
}

fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).fold(0, |acc, k| (acc + a[i][k] * b[k][j]) % p)).collect()).collect()
}

/// Gauss-Jordan inverse over `F_p`.
fn invert(m: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().copied().chain((0..n).map(|j| u64::from(i == j))).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = crate::arith::pow_mod(a[col][col], p - 2, p);
        for x in a[col].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                for j in 0..2 * n {
                    a[r][j] = (a[r][j] + p * p - f * a[col][j] % p) % p;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Words of `y [x y^(p-1)]` (left) and `[x y^(p-1)] y` (right), in summation order.
fn telescoping_words(p: usize) -> (Vec<String>, Vec<String>) {
    let w = |a: usize, b: usize| format!("{}x{}", "y".repeat(a), "y".repeat(b));
    let left = (0..p).map(|i| w(i + 1, p - 1 - i)).collect();
    let right = (0..p).map(|i| w(i, p - i)).collect();
    (left, right)
}

fn bracket_sum(p: u64) -> FreePoly {
    let mut s = FreePoly::zero(0);
    for i in 1..p as usize {
        s = &s + &bracket(i, p as usize - i, ("x", "y"));
    }
    s.with_modulus(p).expect("positive modulus")
}

pub fn p2_trace(p: u64) -> Result<P2Trace> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if p > P2_MAX_P {
        return Err(Error::BudgetExceeded(format!("p2 trace needs p <= {P2_MAX_P}")));
    }
    let e = &FpPoly::t(p) + &FpPoly::monomial(p, 1, p as usize);
    let q = (p * p) as usize;
    let (h, r) = e.power_minus_self(p).divrem(&FpPoly::frobenius_target(p, q))?;
    if !r.is_zero() {
        return Err(Error::Internal("e^p - e is not divisible by X^(p^2) - X".into()));
    }
    let inv = invert(&vandermonde(p), p).ok_or_else(|| Error::Internal("singular Vandermonde matrix".into()))?;
    let telescoping = (0..p as usize - 1).map(|i| (i, i + 1)).collect();
    Ok(P2Trace { p, e, cofactor: h, bracket_sum: bracket_sum(p), vandermonde_inverse: inv, telescoping })
}

impl P2Trace {
    pub fn verify(&self) -> CheckResult {
        let mut c = Checks::new();
        let p = self.p;
        c.require("p is prime", is_prime(p))?;
        c.require("p within budget", p <= P2_MAX_P)?;
        let x = FpPoly::t(p);
        c.require("e = X + X^p", self.e == &x + &FpPoly::monomial(p, 1, p as usize))?;
        let lhs = self.e.power_minus_self(p);
        let rhs = &self.cofactor * &FpPoly::frobenius_target(p, (p * p) as usize);
        c.require("e^p - e = h (X^(p^2) - X)", lhs == rhs)?;

        let fx = FreePoly::var(p, "x");
        let fy = FreePoly::var(p, "y");
        let sum = &fx + &fy;
        let binom = &(&sum.pow(p as u32) - &fx.pow(p as u32)) - &fy.pow(p as u32);
        c.require("bracket sum is over Z/p", self.bracket_sum.modulus() == p)?;
        c.require("(x+y)^p - x^p - y^p = sum of brackets", binom == self.bracket_sum)?;
        c.require("stored brackets match the definition", self.bracket_sum == bracket_sum(p))?;
        let groups_vanish = (1..p).all(|i| binomial_mod(p, i, p) == 0);
        c.require("binomial coefficients C(p, i) vanish mod p", groups_vanish)?;

        let n = p as usize;
        let shape = self.vandermonde_inverse.len() == n && self.vandermonde_inverse.iter().all(|r| r.len() == n && r.iter().all(|&v| v < p));
        c.require("Vandermonde inverse is p x p over F_p", shape)?;
        let id: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        c.require("V * V^-1 = I", mat_mul(&vandermonde(p), &self.vandermonde_inverse, p) == id)?;
        c.require("V^-1 * V = I", mat_mul(&self.vandermonde_inverse, &vandermonde(p), p) == id)?;

        let (left, right) = telescoping_words(n);
        let pairs_ok = self.telescoping.len() == n - 1
            && self.telescoping.iter().all(|&(i, j)| i < n && j < n && left[i] == right[j])
            && {
                let mut li: Vec<usize> = self.telescoping.iter().map(|t| t.0).collect();
                let mut rj: Vec<usize> = self.telescoping.iter().map(|t| t.1).collect();
                li.sort_unstable();
                li.dedup();
                rj.sort_unstable();
                rj.dedup();
                li.len() == n - 1 && rj.len() == n - 1
            };
        c.require("telescoping pairs match words bijectively", pairs_ok)?;
        let matched_l: Vec<usize> = self.telescoping.iter().map(|t| t.0).collect();
        let matched_r: Vec<usize> = self.telescoping.iter().map(|t| t.1).collect();
        let rest_l: Vec<&String> = (0..n).filter(|i| !matched_l.contains(i)).map(|i| &left[i]).collect();
        let rest_r: Vec<&String> = (0..n).filter(|j| !matched_r.contains(j)).map(|j| &right[j]).collect();
        let yp_x = format!("{}x", "y".repeat(n));
        let x_yp = format!("x{}", "y".repeat(n));
        c.require("unmatched words are y^p x and x y^p", rest_l == [&yp_x] && rest_r == [&x_yp])?;
        let br = bracket(1, n - 1, ("x", "y"));
        let y = FreePoly::var(0, "y");
        let diff = &(&y * &br) - &(&br * &y);
        let expected = &FreePoly::word(0, &[vec!["y"; n], vec!["x"]].concat(), 1) - &FreePoly::word(0, &[vec!["x"], vec!["y"; n]].concat(), 1);
        c.require("y [x y^(p-1)] - [x y^(p-1)] y = y^p x - x y^p", diff == expected)?;
        c.done()
    }
}

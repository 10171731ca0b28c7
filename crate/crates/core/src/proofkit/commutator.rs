use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::json;
use crate::freering::{FreePoly, TermJson};
use crate::reduction::{CheckResult, Checks};

/// `coeff * left * (inner^n - inner) * right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub coeff: BigInt,
    pub left: FreePoly,
    pub inner: FreePoly,
    pub right: FreePoly,
}

/// `XY - YX = sum_i c_i g_i (f_i^n - f_i) h_i` in `Z/m<X,Y>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CommutatorData", try_from = "CommutatorData")]
pub struct CommutatorCertificate {
    pub modulus: u64,
    pub n: u32,
    pub summands: Vec<Summand>,
}

#[derive(Serialize, Deserialize)]
struct SummandData {
    coeff: String,
    left: Vec<TermJson>,
    inner: Vec<TermJson>,
    right: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct CommutatorData {
    modulus: u64,
    n: u32,
    summands: Vec<SummandData>,
}

impl From<CommutatorCertificate> for CommutatorData {
    fn from(c: CommutatorCertificate) -> Self {
        let summands = c
            .summands
            .iter()
            .map(|s| SummandData {
                coeff: s.coeff.to_string(),
                left: s.left.to_json_terms(),
                inner: s.inner.to_json_terms(),
                right: s.right.to_json_terms(),
            })
            .collect();
        CommutatorData { modulus: c.modulus, n: c.n, summands }
    }
}

impl TryFrom<CommutatorData> for CommutatorCertificate {
    type Error = String;

    fn try_from(d: CommutatorData) -> std::result::Result<Self, String> {
        let m = d.modulus;
        let summands = d
            .summands
            .iter()
            .map(|s| {
                Ok(Summand {
                    coeff: s.coeff.parse().map_err(|_| format!("bad integer `{}`", s.coeff))?,
                    left: json::free(m, &s.left)?,
                    inner: json::free(m, &s.inner)?,
                    right: json::free(m, &s.right)?,
                })
            })
            .collect::<std::result::Result<_, String>>()?;
        Ok(CommutatorCertificate { modulus: m, n: d.n, summands })
    }
}

fn z(s: &str) -> FreePoly {
    FreePoly::parse(0, s).expect("well-formed literal")
}

fn term(coeff: i64, left: &str, inner: &str, right: &str) -> Summand {
    Summand { coeff: coeff.into(), left: z(left), inner: z(inner), right: z(right) }
}

/// Largest exponent accepted by the verifier.
pub const COMMUTATOR_MAX_N: u32 = 64;

impl CommutatorCertificate {
    /// The five-term identity for `n = 2`.
    pub fn two_ring() -> Self {
        let summands = vec![
            term(1, "1", "X + Y", "1"),
            term(-1, "1", "X", "1"),
            term(-1, "1", "Y", "1"),
            term(1, "1", "Y*X", "1"),
            term(-1, "1", "-Y*X", "1"),
        ];
        CommutatorCertificate { modulus: 0, n: 2, summands }
    }

    /// The unwound identity for `n = 3`.
    pub fn three_ring() -> Self {
        let a = "(X + X^2)";
        let pp = "(4 + 4*X + 3*X^2 + X^3)";
        let u = "(X^2*Y*X^2 - Y*X^2)";
        let v = "(X^2*Y*X^2 - X^2*Y)";
        let ua = format!("({a}^2*Y*{a}^2 - Y*{a}^2)");
        let va = format!("({a}^2*Y*{a}^2 - {a}^2*Y)");
        let s = |c: i64, l: &str, i: &str, r: &str| term(c, l, i, r);
        let summands = vec![
            s(1, "1", a, "Y"),
            s(-1, "1", "X", &format!("{pp}*Y")),
            s(-1, "Y", a, "1"),
            s(1, "Y", "X", pp),
            s(3, "1", u, "1"),
            s(-3, "1", v, "1"),
            s(3, &format!("{v}*X^2*Y*X"), "X", "Y*(X^2 - 1)"),
            s(-3, &format!("{u}*(X^2 - 1)*Y*X"), "X", "Y*X^2"),
            s(1, "1", &ua, "1"),
            s(-1, "1", &va, "1"),
            s(1, &format!("{va}*{a}^2*Y*{a}"), a, &format!("Y*({a}^2 - 1)")),
            s(-1, &format!("{ua}*({a}^2 - 1)*Y*{a}"), a, &format!("Y*{a}^2")),
            s(2, "1", v, "1"),
            s(-2, "1", u, "1"),
            s(2, &format!("{u}*(X^2 - 1)*Y*X"), "X", "Y*X^2"),
            s(-2, &format!("{v}*X^2*Y*X"), "X", "Y*(X^2 - 1)"),
            s(1, "2 + X", "X", "Y"),
            s(-1, "Y*(2 + X)", "X", "1"),
        ];
        CommutatorCertificate { modulus: 0, n: 3, summands }
    }

    /// `sum c_i g_i (f_i^n - f_i) h_i`, fully expanded.
    pub fn expand(&self) -> crate::Result<FreePoly> {
        let mut acc = FreePoly::zero(self.modulus);
        for s in &self.summands {
            let t = s.left.try_mul(&s.inner.power_minus_self(self.n))?.try_mul(&s.right)?.scale(&s.coeff);
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    pub fn target(&self) -> FreePoly {
        FreePoly::parse(self.modulus, "X*Y - Y*X").expect("literal")
    }

    pub fn verify(&self) -> CheckResult {
        let mut c = Checks::new();
        c.require("n > 1 within budget", self.n > 1 && self.n <= COMMUTATOR_MAX_N)?;
        c.require("at least one summand", !self.summands.is_empty())?;
        let moduli = self.summands.iter().all(|s| [&s.left, &s.inner, &s.right].iter().all(|f| f.modulus() == self.modulus));
        c.require("every factor lives in Z/m", moduli)?;
        let vars = self
            .summands
            .iter()
            .all(|s| [&s.left, &s.inner, &s.right].iter().all(|f| f.alphabet().iter().all(|a| a == "X" || a == "Y")));
        c.require("only the variables X, Y occur", vars)?;
        let sum = self.expand().map_err(|e| e.to_string())?;
        c.require("expansion equals XY - YX", sum == self.target())?;
        c.done()
    }
}

//! Wire helpers: decimal-string integers and coefficient-array polynomials.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serializer};

use crate::fppoly::{BivariatePoly, FpPoly};
use crate::freering::{FreePoly, TermJson};

pub(crate) mod dec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| serde::de::Error::custom(format!("bad integer `{s}`")))
    }
}

pub(crate) mod dec_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| s.parse().map_err(|_| serde::de::Error::custom(format!("bad integer `{s}`"))))
            .collect()
    }
}

/// Rejects out-of-range coefficients and trailing zeros.
pub(crate) fn poly(p: u64, c: &[u64]) -> Result<FpPoly, String> {
    if p < 2 {
        return Err(format!("bad characteristic {p}"));
    }
    if c.iter().any(|&x| x >= p) {
        return Err(format!("coefficient out of range in {c:?} (p = {p})"));
    }
    if c.last() == Some(&0) {
        return Err(format!("non-canonical coefficient list {c:?}"));
    }
    Ok(FpPoly::new(p, c.to_vec()))
}

pub(crate) fn polys(p: u64, cs: &[Vec<u64>]) -> Result<Vec<FpPoly>, String> {
    cs.iter().map(|c| poly(p, c)).collect()
}

pub(crate) fn coeffs(fs: &[FpPoly]) -> Vec<Vec<u64>> {
    fs.iter().map(|f| f.coeffs().to_vec()).collect()
}

/// `[i, j, c]` triples for `c X^i Y^j`.
pub(crate) fn bivariate_terms(b: &BivariatePoly) -> Vec<[u64; 3]> {
    b.terms().map(|((i, j), c)| [i as u64, j as u64, c]).collect()
}

pub(crate) fn bivariate(p: u64, terms: &[[u64; 3]]) -> Result<BivariatePoly, String> {
    let mut seen = std::collections::BTreeSet::new();
    for &[i, j, c] in terms {
        if c == 0 || c >= p || i > u32::MAX as u64 || j > u32::MAX as u64 || !seen.insert((i, j)) {
            return Err(format!("non-canonical bivariate term [{i}, {j}, {c}]"));
        }
    }
    Ok(BivariatePoly::from_terms(p, terms.iter().map(|&[i, j, c]| ((i as u32, j as u32), c))))
}

pub(crate) fn free(modulus: u64, terms: &[TermJson]) -> Result<FreePoly, String> {
    FreePoly::from_json_terms(modulus, terms).map_err(|e| e.to_string())
}

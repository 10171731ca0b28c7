use std::collections::HashMap;

use super::{check_prime, FpPoly};
use crate::error::{invalid, Error, Result};

/// Largest enumeration `p^d` the exhaustive searches accept.
const SEARCH_BUDGET: u64 = 1 << 22;

/// Exhaustive search for a monic divisor of degree `1..=deg/2`.
pub fn is_irreducible(f: &FpPoly) -> Result<bool> {
    let Some(n) = f.degree().filter(|&d| d >= 1) else {
        return invalid("irreducibility of a constant is undefined");
    };
    let p = f.p();
    let half = n / 2;
    match p.checked_pow(half as u32) {
        Some(v) if v <= SEARCH_BUDGET => {}
        _ => return Err(Error::BudgetExceeded(format!("divisor search over F_{p} up to degree {half}"))),
    }
    for d in 1..=half {
        if FpPoly::monics_of_degree(p, d).any(|g| g.divides(f)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All monic irreducibles whose degree divides `k`, in (degree, lex) order.
pub fn monic_irreducibles_dividing(p: u64, k: usize) -> Result<Vec<FpPoly>> {
    check_prime(p)?;
    if k == 0 {
        return invalid("k must be positive");
    }
    match p.checked_pow(k as u32) {
        Some(v) if v <= SEARCH_BUDGET => {}
        _ => return Err(Error::BudgetExceeded(format!("irreducibles over F_{p} of degree {k}"))),
    }
    let mut by_degree: Vec<Vec<FpPoly>> = vec![Vec::new(); k + 1];
    for d in 1..=k {
        if k % d != 0 && d > k / 2 {
            continue;
        }
        let small: Vec<&FpPoly> = by_degree[1..=d / 2].iter().flatten().collect();
        by_degree[d] = FpPoly::monics_of_degree(p, d)
            .filter(|f| !small.iter().any(|g| g.divides(f)))
            .collect();
    }
    Ok((1..=k).filter(|d| k % d == 0).flat_map(|d| by_degree[d].clone()).collect())
}

/// Which substitutions identify two irreducibles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Symmetry {
    /// `g -> w * g(uT + v)` only.
    Affine,
    /// Affine substitutions together with `g -> unit * T^m g(1/T)`.
    #[default]
    AffineAndReciprocal,
}

/// One representative (the first in input order) per class of nonlinear
/// members of `s` under affine substitution and reciprocal.
pub fn reduce_by_symmetry(s: &[FpPoly]) -> Vec<FpPoly> {
    reduce_by_symmetry_with(s, Symmetry::default())
}

pub fn reduce_by_symmetry_with(s: &[FpPoly], mode: Symmetry) -> Vec<FpPoly> {
    let nonlinear: Vec<&FpPoly> = s.iter().filter(|g| g.degree().is_some_and(|d| d >= 2)).collect();
    let index: HashMap<&FpPoly, usize> = nonlinear.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let mut parent: Vec<usize> = (0..nonlinear.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, g) in nonlinear.iter().enumerate() {
        let p = g.p();
        let mut images = Vec::new();
        for u in 1..p {
            for v in 0..p {
                images.push(g.compose(&FpPoly::new(p, vec![v, u])).monic());
            }
        }
        if mode == Symmetry::AffineAndReciprocal && g.coeff(0) != 0 {
            images.push(g.reciprocal().monic());
        }
        for h in images {
            if let Some(&j) = index.get(&h) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    (0..nonlinear.len())
        .filter(|&i| find(&mut parent, i) == i)
        .map(|i| nonlinear[i].clone())
        .collect()
}

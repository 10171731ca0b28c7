use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::Budget;
use crate::arith::{is_prime, pow_mod};
use crate::error::{invalid, Error, Result};

/// A finite-dimensional `F_p`-algebra given by structure constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAlgebra {
    pub p: u64,
    pub labels: Vec<String>,
    /// `table[i][j]`: sparse expansion `(index, coefficient)` of `e_i e_j`.
    pub table: Vec<Vec<Vec<(usize, u64)>>>,
    pub unit: Vec<u64>,
}

impl FiniteAlgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn basis(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0u64; self.dim()];
        for (i, &x) in a.iter().enumerate().filter(|t| *t.1 != 0) {
            for (j, &y) in b.iter().enumerate().filter(|t| *t.1 != 0) {
                let xy = x * y % p;
                for &(k, c) in &self.table[i][j] {
                    out[k] = (out[k] + xy * c) % p;
                }
            }
        }
        out
    }

    /// `e_i * v`.
    pub fn mul_basis_left(&self, i: usize, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.dim()];
        for (j, &y) in v.iter().enumerate().filter(|t| *t.1 != 0) {
            for &(k, c) in &self.table[i][j] {
                out[k] = (out[k] + y * c) % self.p;
            }
        }
        out
    }

    /// `v * e_j`.
    pub fn mul_basis_right(&self, v: &[u64], j: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.dim()];
        for (i, &x) in v.iter().enumerate().filter(|t| *t.1 != 0) {
            for &(k, c) in &self.table[i][j] {
                out[k] = (out[k] + x * c) % self.p;
            }
        }
        out
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.unit.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn dense(&self, i: usize, j: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.dim()];
        for &(k, c) in &self.table[i][j] {
            out[k] = (out[k] + c) % self.p;
        }
        out
    }

    /// `e_i e_j - e_j e_i`.
    pub fn commutator(&self, i: usize, j: usize) -> Vec<u64> {
        let (a, b) = (self.dense(i, j), self.dense(j, i));
        a.iter().zip(&b).map(|(x, y)| (x + self.p - y) % self.p).collect()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|i| (i + 1..self.dim()).all(|j| self.dense(i, j) == self.dense(j, i)))
    }

    /// Shape, unit laws and associativity on all basis triples.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let n = self.dim();
        if !is_prime(self.p) {
            return Err("p is not prime".into());
        }
        let shape = self.unit.len() == n
            && self.unit.iter().all(|&c| c < self.p)
            && self.table.len() == n
            && self.table.iter().all(|row| {
                row.len() == n && row.iter().all(|e| e.iter().all(|&(k, c)| k < n && c < self.p))
            });
        if !shape {
            return Err("structure constants have the wrong shape".into());
        }
        for i in 0..n {
            let e = self.basis(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(format!("unit law fails at {}", self.labels[i]));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.dense(i, j);
                for k in 0..n {
                    if self.mul_basis_right(&ij, k) != self.mul_basis_left(i, &self.dense(j, k)) {
                        return Err(format!(
                            "associativity fails at ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `d = gcd(m^(q-1) - 1, q - 1)` for `q = p^k`.
pub(crate) fn cyclic_order(q: u64, m: u64) -> u64 {
    let n = q - 1;
    (pow_mod(m, n, n) + n - 1).checked_rem(n).unwrap_or(0).gcd(&n)
}

/// `F_p[C_d ⋊_m C_(q-1)]` with basis `X^i Y^j` and `YX = X^m Y`.
pub fn group_algebra(p: u64, k: u32, m: u64, budget: &Budget) -> Result<FiniteAlgebra> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if k == 0 || m == 0 {
        return invalid("k and m must be positive");
    }
    let q = p.checked_pow(k).ok_or_else(|| Error::BudgetExceeded(format!("{p}^{k} overflows")))?;
    let n = q - 1;
    let d = cyclic_order(q, m);
    let dim = d.checked_mul(n).filter(|&x| x as usize <= budget.dim_limit(p));
    let Some(dim) = dim else {
        return Err(Error::BudgetExceeded(format!(
            "group algebra of dimension {d}·{n} exceeds {} over F_{p}",
            budget.dim_limit(p)
        )));
    };
    let (d, n) = (d as usize, n as usize);
    let m = (m % d as u64) as usize;
    // m^j mod d for j < n.
    let mut mpow = vec![1 % d; n];
    for j in 1..n {
        mpow[j] = mpow[j - 1] * m % d;
    }
    let idx = |i: usize, j: usize| i * n + j;
    let mut labels = Vec::with_capacity(dim as usize);
    for i in 0..d {
        for j in 0..n {
            labels.push(format!("X^{i}Y^{j}"));
        }
    }
    let mut table = vec![vec![Vec::new(); dim as usize]; dim as usize];
    for i in 0..d {
        for j in 0..n {
            for i2 in 0..d {
                for j2 in 0..n {
                    let prod = idx((i + i2 * mpow[j]) % d, (j + j2) % n);
                    table[idx(i, j)][idx(i2, j2)] = vec![(prod, 1)];
                }
            }
        }
    }
    let mut unit = vec![0; dim as usize];
    unit[0] = 1;
    let a = FiniteAlgebra { p, labels, table, unit };
    a.check_axioms().map_err(Error::Internal)?;
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ga(p: u64, k: u32, m: u64) -> FiniteAlgebra {
        group_algebra(p, k, m, &Budget::default()).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(cyclic_order(4, 2), 1);
        assert_eq!(ga(2, 2, 2).dim(), 3);
        assert_eq!(cyclic_order(16, 4), 3);
        assert_eq!(ga(2, 4, 4).dim(), 45);
        assert_eq!(cyclic_order(8, 1), 7);
        assert!(ga(2, 3, 1).is_commutative());
        assert!(matches!(group_algebra(2, 6, 2, &Budget::default()), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn generator_orders_and_relation() {
        // d = gcd(2^15 - 1, 15) = 1 for m = 2, so use m = 4 over F_2 with k = 4 (d = 3).
        let a = ga(2, 4, 4);
        let n = 15;
        let x = a.basis(n);
        let y = a.basis(1);
        assert_eq!(a.pow(&x, 3), a.unit);
        assert_ne!(a.pow(&x, 1), a.unit);
        assert_eq!(a.pow(&y, 15), a.unit);
        assert!((1..15).all(|e| a.pow(&y, e) != a.unit));
        assert_eq!(a.mul(&y, &x), a.mul(&a.pow(&x, 4), &y));
    }

    #[test]
    fn noncommutative_example() {
        // q = 7, m = 2: d = gcd(2^6 - 1, 6) = 3 and 2 acts nontrivially on C_3.
        let a = group_algebra(7, 1, 2, &Budget { max_dim: Some(18), ..Budget::default() }).unwrap();
        assert_eq!(a.dim(), 18);
        assert!(!a.is_commutative());
    }

    #[test]
    fn broken_associativity_is_detected() {
        let mut a = ga(2, 2, 2);
        a.table[1][2] = vec![(1, 1)];
        assert!(a.check_axioms().is_err());
    }
}

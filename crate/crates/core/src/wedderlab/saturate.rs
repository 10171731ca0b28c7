use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Budget, FiniteAlgebra};
use crate::arith::pow_mod;
use crate::reduction::{CheckResult, Checks};

/// Row-echelon span over `F_p`; each row is zero at earlier pivots.
struct Span {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Span {
    fn new(p: u64) -> Self {
        Span { p, rows: Vec::new() }
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v = v.to_vec();
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + p - c * r % p) % p;
                }
            }
        }
        v
    }

    fn insert(&mut self, v: &[u64]) -> bool {
        let mut v = self.reduce(v);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = pow_mod(v[piv], self.p - 2, self.p);
        for x in v.iter_mut() {
            *x = *x * inv % self.p;
        }
        self.rows.push((piv, v));
        true
    }

    fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Order in which candidate elements `r` are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Basis elements, then pairwise sums, then seeded random elements.
    #[default]
    Standard,
    /// Seeded random elements only.
    RandomOnly,
}

/// Exported evidence: the quotient by the ideal generated by
/// `{r^q - r : r in relations}` is commutative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationTrace {
    pub q: u64,
    pub algebra: FiniteAlgebra,
    pub relations: Vec<Vec<u64>>,
    pub ideal_basis: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationStats {
    pub dimension: usize,
    pub relations_tried: usize,
    pub relations_used: usize,
    pub ideal_rank: usize,
    pub open_commutators: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SaturationOutcome {
    CommutativeQuotient(SaturationTrace),
    /// Budget exhausted; says nothing about non-commutativity.
    Inconclusive(SaturationStats),
}

fn candidates(a: &FiniteAlgebra, strategy: Strategy, seed: u64) -> impl Iterator<Item = Vec<u64>> + '_ {
    let n = a.dim();
    let structured: Box<dyn Iterator<Item = Vec<u64>>> = match strategy {
        Strategy::Standard => Box::new(
            (0..n)
                .map(|i| a.basis(i))
                .chain((0..n).flat_map(move |i| (i + 1..n).map(move |j| {
                    let mut v = a.basis(i);
                    v[j] = 1;
                    v
                }))),
        ),
        Strategy::RandomOnly => Box::new(std::iter::empty()),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = std::iter::repeat_with(move || (0..n).map(|_| rng.gen_range(0..a.p)).collect());
    structured.chain(random)
}

fn sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| (x + p - y) % p).collect()
}

/// Adds relations `r^q - r` and closes to a two-sided ideal until every
/// basis commutator lies in the ideal.
pub fn saturate_universal_quotient(a: &FiniteAlgebra, q: u64, strategy: Strategy, budget: &Budget) -> SaturationOutcome {
    let n = a.dim();
    let trace = |relations, span: &Span| SaturationTrace {
        q,
        algebra: a.clone(),
        relations,
        ideal_basis: span.rows.iter().map(|r| r.1.clone()).collect(),
    };
    let mut open: Vec<Vec<u64>> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| a.commutator(i, j))
        .filter(|c| c.iter().any(|&x| x != 0))
        .collect();
    let mut span = Span::new(a.p);
    let mut relations = Vec::new();
    if open.is_empty() {
        return SaturationOutcome::CommutativeQuotient(trace(relations, &span));
    }
    let mut tried = 0;
    for r in candidates(a, strategy, budget.seed).take(budget.max_relations) {
        tried += 1;
        let s = sub(a.p, &a.pow(&r, q), &r);
        if span.contains(&s) {
            continue;
        }
        relations.push(r);
        let mut queue = vec![s];
        while let Some(v) = queue.pop() {
            if span.insert(&v) {
                for i in 0..n {
                    queue.push(a.mul_basis_left(i, &v));
                    queue.push(a.mul_basis_right(&v, i));
                }
            }
        }
        open = open.iter().map(|c| span.reduce(c)).filter(|c| c.iter().any(|&x| x != 0)).collect();
        if open.is_empty() {
            return SaturationOutcome::CommutativeQuotient(trace(relations, &span));
        }
    }
    SaturationOutcome::Inconclusive(SaturationStats {
        dimension: n,
        relations_tried: tried,
        relations_used: relations.len(),
        ideal_rank: span.rank(),
        open_commutators: open.len(),
    })
}

/// Independent check of a trace: the ideal basis lies in the span of
/// `e_i (r^q - r) e_j` and every basis commutator lies in its span.
pub fn verify_trace(t: &SaturationTrace) -> CheckResult {
    let mut c = Checks::new();
    let a = &t.algebra;
    let n = a.dim();
    c.require("algebra satisfies unit and associativity laws", a.check_axioms().is_ok())?;
    let p = a.p;
    let mut q_ok = t.q >= 2;
    let mut x = t.q;
    while x > 1 && q_ok {
        q_ok = x % p == 0;
        x /= p;
    }
    c.require("q is a power of p", q_ok)?;
    let well_formed = |vs: &[Vec<u64>]| vs.iter().all(|v| v.len() == n && v.iter().all(|&x| x < p));
    c.require("relation and ideal vectors are over F_p with the right length", well_formed(&t.relations) && well_formed(&t.ideal_basis))?;

    let mut generated = Span::new(p);
    for r in &t.relations {
        let s = sub(p, &a.pow(r, t.q), r);
        for i in 0..n {
            let left = a.mul_basis_left(i, &s);
            for j in 0..n {
                generated.insert(&a.mul_basis_right(&left, j));
            }
        }
    }
    c.require("ideal basis lies in the ideal generated by the relations", t.ideal_basis.iter().all(|v| generated.contains(v)))?;
    let mut ideal = Span::new(p);
    for v in &t.ideal_basis {
        ideal.insert(v);
    }
    let commute = (0..n).all(|i| (i + 1..n).all(|j| ideal.contains(&a.commutator(i, j))));
    c.require("all basis commutators vanish in the quotient", commute)?;
    c.done()
}

#[cfg(test)]
mod tests {
    use super::super::group_algebra;
    use super::*;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn abelian_group_succeeds_without_relations() {
        let a = group_algebra(2, 2, 2, &budget()).unwrap();
        match saturate_universal_quotient(&a, 4, Strategy::default(), &budget()) {
            SaturationOutcome::CommutativeQuotient(t) => {
                assert!(t.relations.is_empty() && t.ideal_basis.is_empty());
                assert!(verify_trace(&t).is_ok());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nonabelian_quotient_becomes_commutative() {
        // F_7[C_3 ⋊ C_6] with 7-ring relations.
        let b = Budget { max_dim: Some(18), ..budget() };
        let a = group_algebra(7, 1, 2, &b).unwrap();
        assert!(!a.is_commutative());
        match saturate_universal_quotient(&a, 7, Strategy::default(), &b) {
            SaturationOutcome::CommutativeQuotient(t) => {
                assert!(!t.relations.is_empty());
                assert!(verify_trace(&t).is_ok(), "{:?}", verify_trace(&t));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn forged_ideal_basis_is_rejected() {
        let b = Budget { max_dim: Some(18), ..budget() };
        let a = group_algebra(7, 1, 2, &b).unwrap();
        let mut forged = SaturationTrace { q: 7, algebra: a.clone(), relations: vec![], ideal_basis: vec![] };
        forged.ideal_basis = (0..a.dim()).map(|i| a.basis(i)).collect();
        assert!(verify_trace(&forged).is_err());
    }

    #[test]
    fn zero_budget_is_inconclusive() {
        let b = Budget { max_dim: Some(18), max_relations: 0, ..budget() };
        let a = group_algebra(7, 1, 2, &b).unwrap();
        assert!(matches!(saturate_universal_quotient(&a, 7, Strategy::default(), &b), SaturationOutcome::Inconclusive(_)));
    }
}

//! Noncommutative polynomials over Z/m (m = 0 meaning Z).

mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A word over the alphabet, as indices into the sorted variable list.
/// Ordered by length, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<u16>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// JSON form of one term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub word: Vec<String>,
}

#[derive(Clone)]
pub struct FreePoly {
    modulus: u64,
    alphabet: Vec<String>,
    terms: BTreeMap<Word, BigInt>,
}

/// Equal as polynomials: the alphabet is bookkeeping only.
impl PartialEq for FreePoly {
    fn eq(&self, other: &Self) -> bool {
        match self.align(other) {
            Ok((a, b)) => a.terms == b.terms,
            Err(_) => false,
        }
    }
}

impl Eq for FreePoly {}

impl FreePoly {
    pub fn zero(modulus: u64) -> Self {
        FreePoly { modulus, alphabet: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn constant(modulus: u64, c: impl Into<BigInt>) -> Self {
        let mut f = Self::zero(modulus);
        f.push(Word::default(), c.into());
        f
    }

    pub fn one(modulus: u64) -> Self {
        Self::constant(modulus, 1)
    }

    pub fn var(modulus: u64, name: &str) -> Self {
        Self::word(modulus, &[name], 1)
    }

    /// `coeff * w_1 w_2 ... w_k`.
    pub fn word(modulus: u64, letters: &[&str], coeff: impl Into<BigInt>) -> Self {
        let alphabet: Vec<String> = letters.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>().into_iter().collect();
        let w = Word(letters.iter().map(|l| alphabet.iter().position(|a| a == l).unwrap() as u16).collect());
        let mut f = FreePoly { modulus, alphabet, terms: BTreeMap::new() };
        f.push(w, coeff.into());
        f
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order as (letters, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (Vec<&str>, &BigInt)> + '_ {
        self.terms
            .iter()
            .map(|(w, c)| (w.0.iter().map(|&i| self.alphabet[i as usize].as_str()).collect(), c))
    }

    pub fn coefficient(&self, letters: &[&str]) -> BigInt {
        let mut idx = Vec::with_capacity(letters.len());
        for l in letters {
            match self.alphabet.iter().position(|a| a == l) {
                Some(i) => idx.push(i as u16),
                None => return BigInt::zero(),
            }
        }
        self.terms.get(&Word(idx)).cloned().unwrap_or_default()
    }

    fn normalize(&self, c: BigInt) -> BigInt {
        if self.modulus == 0 {
            c
        } else {
            c.mod_floor(&BigInt::from(self.modulus))
        }
    }

    fn push(&mut self, w: Word, c: BigInt) {
        let c = self.normalize(c);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = if self.modulus == 0 {
                    e.get() + c
                } else {
                    (e.get() + c).mod_floor(&BigInt::from(self.modulus))
                };
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Re-expresses the terms over a larger sorted alphabet.
    fn remap(&self, alphabet: &[String]) -> FreePoly {
        if alphabet == self.alphabet.as_slice() {
            return self.clone();
        }
        let table: Vec<u16> = self
            .alphabet
            .iter()
            .map(|a| alphabet.iter().position(|b| b == a).expect("alphabet superset") as u16)
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (Word(w.0.iter().map(|&i| table[i as usize]).collect()), c.clone()))
            .collect();
        FreePoly { modulus: self.modulus, alphabet: alphabet.to_vec(), terms }
    }

    fn align(&self, other: &FreePoly) -> Result<(FreePoly, FreePoly)> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.alphabet == other.alphabet {
            return Ok((self.clone(), other.clone()));
        }
        let union: Vec<String> =
            self.alphabet.iter().chain(&other.alphabet).cloned().collect::<BTreeSet<_>>().into_iter().collect();
        Ok((self.remap(&union), other.remap(&union)))
    }

    pub fn try_add(&self, other: &FreePoly) -> Result<FreePoly> {
        let (mut a, b) = self.align(other)?;
        for (w, c) in b.terms {
            a.push(w, c);
        }
        Ok(a)
    }

    pub fn try_sub(&self, other: &FreePoly) -> Result<FreePoly> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &FreePoly) -> Result<FreePoly> {
        let (a, b) = self.align(other)?;
        let mut acc: HashMap<Word, BigInt> = HashMap::new();
        for (w1, c1) in &a.terms {
            for (w2, c2) in &b.terms {
                let mut w = Vec::with_capacity(w1.0.len() + w2.0.len());
                w.extend_from_slice(&w1.0);
                w.extend_from_slice(&w2.0);
                *acc.entry(Word(w)).or_default() += c1 * c2;
            }
        }
        let mut out = FreePoly { modulus: a.modulus, alphabet: a.alphabet, terms: BTreeMap::new() };
        for (w, c) in acc {
            out.push(w, c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> FreePoly {
        let mut out = FreePoly { modulus: self.modulus, alphabet: self.alphabet.clone(), terms: BTreeMap::new() };
        for (w, c) in &self.terms {
            out.push(w.clone(), c * k);
        }
        out
    }

    pub fn pow(&self, e: u32) -> FreePoly {
        let mut acc = FreePoly::one(self.modulus).remap_from_empty(&self.alphabet);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn remap_from_empty(mut self, alphabet: &[String]) -> FreePoly {
        if self.alphabet.is_empty() {
            self.alphabet = alphabet.to_vec();
        }
        self
    }

    /// Reduces integer coefficients modulo `m` (only from Z).
    pub fn with_modulus(&self, m: u64) -> Result<FreePoly> {
        if self.modulus != 0 && self.modulus != m {
            return Err(Error::ModulusMismatch(self.modulus, m));
        }
        let mut out = FreePoly { modulus: m, alphabet: self.alphabet.clone(), terms: BTreeMap::new() };
        for (w, c) in &self.terms {
            out.push(w.clone(), c.clone());
        }
        Ok(out)
    }

    /// `f^n - f`.
    pub fn power_minus_self(&self, n: u32) -> FreePoly {
        &self.pow(n) - self
    }

    /// Simultaneous substitution of every variable.
    pub fn substitute(&self, bindings: &HashMap<String, FreePoly>) -> Result<FreePoly> {
        for a in &self.alphabet {
            if !bindings.contains_key(a) {
                return Err(Error::UnboundVariable(a.clone()));
            }
        }
        let images: Vec<&FreePoly> = self.alphabet.iter().map(|a| &bindings[a]).collect();
        let mut out = FreePoly::zero(self.modulus);
        for (w, c) in &self.terms {
            let mut term = FreePoly::constant(self.modulus, c.clone());
            for &i in &w.0 {
                term = term.try_mul(images[i as usize])?;
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    /// Replaces each maximal run `x^k` with `k >= n` by `x^k'`, where
    /// `k' = k mod (n-1)` taken in `1..=n-1`.
    pub fn reduce_exponents_mod(&self, n: u64) -> Result<FreePoly> {
        if n <= 1 {
            return invalid(format!("exponent reduction needs n > 1, got {n}"));
        }
        let n = n as usize;
        let mut out = FreePoly { modulus: self.modulus, alphabet: self.alphabet.clone(), terms: BTreeMap::new() };
        for (w, c) in &self.terms {
            let mut reduced = Vec::with_capacity(w.0.len());
            for run in runs(&w.0) {
                let k = if run.1 >= n { (run.1 - 1) % (n - 1) + 1 } else { run.1 };
                reduced.extend(std::iter::repeat(run.0).take(k));
            }
            out.push(Word(reduced), c.clone());
        }
        Ok(out)
    }

    /// Rewrites each maximal run of `var` of length `k` by the linear
    /// combination `rule(k)` of powers `var^e`, when `rule` returns `Some`.
    pub fn rewrite_runs(&self, var: &str, rule: impl Fn(usize) -> Option<Vec<(usize, BigInt)>>) -> FreePoly {
        let Some(vi) = self.alphabet.iter().position(|a| a == var) else {
            return self.clone();
        };
        let vi = vi as u16;
        let mut out = FreePoly { modulus: self.modulus, alphabet: self.alphabet.clone(), terms: BTreeMap::new() };
        for (w, c) in &self.terms {
            let mut partial: Vec<(Vec<u16>, BigInt)> = vec![(Vec::new(), c.clone())];
            for (letter, len) in runs(&w.0) {
                let replacement = if letter == vi { rule(len) } else { None };
                let options = replacement.unwrap_or_else(|| vec![(len, BigInt::one())]);
                let mut next = Vec::with_capacity(partial.len() * options.len());
                for (prefix, pc) in &partial {
                    for (e, oc) in &options {
                        let mut w2 = prefix.clone();
                        w2.extend(std::iter::repeat(letter).take(*e));
                        next.push((w2, pc * oc));
                    }
                }
                partial = next;
            }
            for (w2, c2) in partial {
                out.push(Word(w2), c2);
            }
        }
        out
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms()
            .map(|(w, c)| TermJson { coeff: c.to_string(), word: w.into_iter().map(String::from).collect() })
            .collect()
    }

    pub fn from_json_terms(modulus: u64, terms: &[TermJson]) -> Result<FreePoly> {
        let mut out = FreePoly::zero(modulus);
        for t in terms {
            let c: BigInt = t.coeff.parse().map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.coeff)))?;
            let letters: Vec<&str> = t.word.iter().map(String::as_str).collect();
            if letters.iter().any(|l| !parse::is_identifier(l)) {
                return Err(Error::Parse(format!("bad letter in word {:?}", t.word)));
            }
            let term = if letters.is_empty() { FreePoly::constant(modulus, c) } else { FreePoly::word(modulus, &letters, c) };
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    pub fn parse(modulus: u64, s: &str) -> Result<FreePoly> {
        parse::parse(modulus, s)
    }
}

fn runs(w: &[u16]) -> Vec<(u16, usize)> {
    let mut out: Vec<(u16, usize)> = Vec::new();
    for &l in w {
        match out.last_mut() {
            Some((x, n)) if *x == l => *n += 1,
            _ => out.push((l, 1)),
        }
    }
    out
}

/// Sum of all words with `i` copies of `x` and `j` copies of `y`, over Z.
pub fn bracket(i: usize, j: usize, vars: (&str, &str)) -> FreePoly {
    let mut out = FreePoly::zero(0);
    let mut word = Vec::with_capacity(i + j);
    fn go(i: usize, j: usize, vars: (&str, &str), word: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if i == 0 && j == 0 {
            out.push(word.clone());
            return;
        }
        if i > 0 {
            word.push(true);
            go(i - 1, j, vars, word, out);
            word.pop();
        }
        if j > 0 {
            word.push(false);
            go(i, j - 1, vars, word, out);
            word.pop();
        }
    }
    let mut words = Vec::new();
    go(i, j, vars, &mut word, &mut words);
    for w in words {
        let letters: Vec<&str> = w.iter().map(|&b| if b { vars.0 } else { vars.1 }).collect();
        let term = if letters.is_empty() { FreePoly::one(0) } else { FreePoly::word(0, &letters, 1) };
        out = &out + &term;
    }
    out
}

impl<'a> Add<&'a FreePoly> for &'a FreePoly {
    type Output = FreePoly;
    fn add(self, rhs: &FreePoly) -> FreePoly {
        self.try_add(rhs).expect("modulus mismatch")
    }
}

impl<'a> Sub<&'a FreePoly> for &'a FreePoly {
    type Output = FreePoly;
    fn sub(self, rhs: &FreePoly) -> FreePoly {
        self.try_sub(rhs).expect("modulus mismatch")
    }
}

impl<'a> Mul<&'a FreePoly> for &'a FreePoly {
    type Output = FreePoly;
    fn mul(self, rhs: &FreePoly) -> FreePoly {
        self.try_mul(rhs).expect("modulus mismatch")
    }
}

impl<'a> Neg for &'a FreePoly {
    type Output = FreePoly;
    fn neg(self) -> FreePoly {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || w.0.is_empty() {
                factors.push(mag.to_string());
            }
            for (l, k) in runs(&w.0) {
                let name = &self.alphabet[l as usize];
                factors.push(if k == 1 { name.clone() } else { format!("{name}^{k}") });
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self, self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str) -> FreePoly {
        FreePoly::parse(0, s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let s = z("X + Y");
        assert_eq!(&s * &s, z("X^2 + X*Y + Y*X + Y^2"));
        assert_eq!(&s * &FreePoly::one(0), s);
        let a = FreePoly::parse(2, "X*Y*X").unwrap();
        let b = FreePoly::parse(2, "X^2*Y").unwrap();
        assert_ne!(a, b);
        assert_eq!(&FreePoly::parse(2, "X*Y").unwrap() * &FreePoly::var(2, "X"), a);
        assert!(z("X").try_add(&FreePoly::var(3, "X")).is_err());
    }

    #[test]
    fn substitution() {
        let template = z("f^2 - f");
        let mut b = HashMap::new();
        b.insert("f".to_string(), z("Y*X"));
        assert_eq!(template.substitute(&b).unwrap(), z("Y*X*Y*X - Y*X"));

        let g = z("X^3 - X + 2*X*Y");
        let ident: HashMap<_, _> = ["X", "Y"].iter().map(|v| (v.to_string(), FreePoly::var(0, v))).collect();
        assert_eq!(g.substitute(&ident).unwrap(), g);
        assert!(z("X*Z").substitute(&ident).is_err());

        let mut b = HashMap::new();
        b.insert("X".to_string(), z("X + X^2"));
        let got = z("X^3 - X").substitute(&b).unwrap();
        // single-variable oracle: (t + t^2)^3 - (t + t^2) by integer convolution
        let conv = |a: &[i64], b: &[i64]| {
            let mut c = vec![0i64; a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    c[i + j] += x * y;
                }
            }
            c
        };
        let base = [0i64, 1, 1];
        let mut cube = conv(&conv(&base, &base), &base);
        cube[1] -= 1;
        cube[2] -= 1;
        for (e, &c) in cube.iter().enumerate() {
            let letters = vec!["X"; e];
            assert_eq!(got.coefficient(&letters), BigInt::from(c), "degree {e}");
        }
    }

    #[test]
    fn exponent_reduction() {
        assert_eq!(z("X^21").reduce_exponents_mod(7).unwrap(), z("X^3"));
        assert_eq!(z("X^5").reduce_exponents_mod(7).unwrap(), z("X^5"));
        assert_eq!(z("X^8*Y*X^9").reduce_exponents_mod(4).unwrap(), z("X^2*Y*X^3"));
        assert!(z("X").reduce_exponents_mod(1).is_err());
    }

    #[test]
    fn brackets() {
        assert_eq!(bracket(1, 2, ("x", "y")), z("x*y^2 + y*x*y + y^2*x"));
        assert_eq!(bracket(3, 0, ("x", "y")), z("x^3"));
        assert_eq!(bracket(0, 0, ("x", "y")), FreePoly::one(0));
        let mut sum = FreePoly::zero(0);
        for i in 0..=4 {
            sum = &sum + &bracket(i, 4 - i, ("x", "y"));
        }
        assert_eq!(sum, z("(x + y)^4"));
    }

    #[test]
    fn json_round_trip() {
        let f = FreePoly::parse(5, "3*X*Y - Y*X + 2").unwrap();
        let back = FreePoly::from_json_terms(5, &f.to_json_terms()).unwrap();
        assert_eq!(back, f);
    }
}

//! Integer utilities: primality, prime powers, multiplicative orders and
//! extended gcd over any signed integer type.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Exact classification of an integer `n >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntegerClass {
    Prime,
    PrimePower { base: u64, exp: u32 },
    Composite,
}

/// A gcd together with one Bezout coefficient per input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutWitness<I = BigInt> {
    pub gcd: I,
    pub coefficients: Vec<I>,
}

impl<I: Integer + Clone> BezoutWitness<I> {
    /// Checks `sum c_i a_i == gcd` and `gcd | a_i` against the given inputs.
    pub fn holds_for(&self, values: &[I]) -> bool {
        if values.len() != self.coefficients.len() {
            return false;
        }
        let mut acc = I::zero();
        for (c, a) in self.coefficients.iter().zip(values) {
            acc = acc + c.clone() * a.clone();
        }
        if acc != self.gcd {
            return false;
        }
        values.iter().all(|a| {
            if self.gcd.is_zero() {
                a.is_zero()
            } else {
                a.is_multiple_of(&self.gcd)
            }
        })
    }
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn xgcd<I: Integer + Signed + Clone>(a: &I, b: &I) -> (I, I, I) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (I::one(), I::zero());
    let (mut old_t, mut t) = (I::zero(), I::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = old_r - q.clone() * r.clone();
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = old_s - q.clone() * s.clone();
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = old_t - q * t.clone();
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Multi-argument extended gcd by first/rest folding.
pub fn xgcd_multi<I: Integer + Signed + Clone>(values: &[I]) -> Result<BezoutWitness<I>> {
    match values {
        [] => invalid("xgcd_multi needs at least one value"),
        [a] => {
            let c = if a.is_negative() { -I::one() } else { I::one() };
            Ok(BezoutWitness { gcd: a.abs(), coefficients: vec![c] })
        }
        [a, b] => {
            let (g, s, t) = xgcd(a, b);
            Ok(BezoutWitness { gcd: g, coefficients: vec![s, t] })
        }
        [first, rest @ ..] => {
            let inner = xgcd_multi(rest)?;
            let (g, u0, u1) = xgcd(first, &inner.gcd);
            let mut coefficients = Vec::with_capacity(values.len());
            coefficients.push(u0);
            coefficients.extend(inner.coefficients.into_iter().map(|v| u1.clone() * v));
            Ok(BezoutWitness { gcd: g, coefficients })
        }
    }
}

/// `base^exp mod m` without overflow for any `u64` operands.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base as u128) % m128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `z`.
pub fn next_prime(z: u64) -> u64 {
    let mut c = z + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

fn iroot(n: u64, k: u32) -> u64 {
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    while r > 0 && r.checked_pow(k).map_or(true, |v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// Classifies a machine-sized integer `n >= 2`.
pub fn classify_u64(n: u64) -> Result<IntegerClass> {
    if n < 2 {
        return invalid(format!("cannot classify {n} (< 2)"));
    }
    if is_prime(n) {
        return Ok(IntegerClass::Prime);
    }
    for e in (2..=63u32).rev() {
        let r = iroot(n, e);
        if r >= 2 && r.pow(e) == n {
            return Ok(if is_prime(r) {
                IntegerClass::PrimePower { base: r, exp: e }
            } else {
                IntegerClass::Composite
            });
        }
    }
    Ok(IntegerClass::Composite)
}

/// Classifies `n >= 2` exactly. Values beyond 64 bits are out of budget.
pub fn classify_integer(n: &BigInt) -> Result<IntegerClass> {
    if *n < BigInt::from(2) {
        return invalid(format!("cannot classify {n} (< 2)"));
    }
    match n.to_u64() {
        Some(v) => classify_u64(v),
        None => Err(Error::BudgetExceeded(format!("classification of {n} needs more than 64 bits"))),
    }
}

/// `Some((p, e))` when `q = p^e` with `e >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match classify_u64(q).ok()? {
        IntegerClass::Prime => Some((q, 1)),
        IntegerClass::PrimePower { base, exp } => Some((base, exp)),
        IntegerClass::Composite => None,
    }
}

/// Prime factorization by trial division, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n >= 1`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// Least `d >= 1` with `p^d = 1 mod q`.
pub fn multiplicative_order(p: &BigInt, q: u64) -> Result<u64> {
    if !is_prime(q) {
        return invalid(format!("{q} is not prime"));
    }
    let r = p.mod_floor(&BigInt::from(q)).to_u64().expect("residue fits");
    if r == 0 {
        return invalid(format!("{q} divides {p}"));
    }
    for d in divisors(q - 1) {
        if pow_mod(r, d, q) == 1 {
            return Ok(d);
        }
    }
    Err(Error::Internal("order not found among divisors of q-1".into()))
}

/// Exact `z^n - z`.
pub fn power_minus_self(z: u64, n: u64) -> BigInt {
    let zb = BigInt::from(z);
    num_traits::pow::pow(zb.clone(), n as usize) - zb
}

pub fn lcm_all(values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(1, |a, b| a.lcm(&b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn xgcd_of_seven_powers() {
        let w = xgcd_multi(&[big(126), big(2184)]).unwrap();
        assert_eq!(w.gcd, big(42));
        assert_eq!(w.coefficients, vec![big(-17), big(1)]);
    }

    #[test]
    fn xgcd_single_and_triple() {
        let w = xgcd_multi(&[big(-9)]).unwrap();
        assert_eq!(w.gcd, big(9));
        assert_eq!(w.coefficients, vec![big(-1)]);
        let vals = [big(6), big(10), big(15)];
        let w = xgcd_multi(&vals).unwrap();
        assert_eq!(w.gcd, big(1));
        assert!(w.holds_for(&vals));
        assert!(xgcd_multi::<BigInt>(&[]).is_err());
    }

    #[test]
    fn xgcd_is_generic_over_machine_integers() {
        let w = xgcd_multi(&[12i64, 18, 27]).unwrap();
        assert_eq!(w.gcd, 3);
        assert!(w.holds_for(&[12, 18, 27]));
    }

    #[test]
    fn classification() {
        assert_eq!(classify_integer(&big(7)).unwrap(), IntegerClass::Prime);
        assert_eq!(
            classify_integer(&big(64)).unwrap(),
            IntegerClass::PrimePower { base: 2, exp: 6 }
        );
        assert_eq!(classify_integer(&big(22)).unwrap(), IntegerClass::Composite);
        assert_eq!(classify_u64(36).unwrap(), IntegerClass::Composite);
        assert!(classify_integer(&big(1)).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(&big(2), 7).unwrap(), 3);
        assert_eq!(multiplicative_order(&big(2), 5).unwrap(), 4);
        assert_eq!(multiplicative_order(&big(1), 13).unwrap(), 1);
        assert!(multiplicative_order(&big(14), 7).is_err());
    }

    #[test]
    fn classify_matches_trial_division() {
        fn oracle(n: u64) -> IntegerClass {
            let mut m = n;
            let mut p = 2;
            while m % p != 0 {
                p += 1;
            }
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            match (m, e) {
                (1, 1) => IntegerClass::Prime,
                (1, e) => IntegerClass::PrimePower { base: p, exp: e },
                _ => IntegerClass::Composite,
            }
        }
        for n in (2..20_000).chain(999_000..1_000_001) {
            assert_eq!(classify_u64(n).unwrap(), oracle(n), "n = {n}");
        }
    }
}

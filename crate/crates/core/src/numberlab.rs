//! Number-theoretic classifications: n-fields, exponents, simple and
//! unpleasant numbers, good and bad exponents.

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, is_prime, lcm_all, multiplicative_order, pow_mod, prime_power};
use crate::error::{invalid, Result};
use crate::fppoly::FpPoly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NClassification {
    pub n: u64,
    /// Primes `p` with `p - 1 | n - 1`.
    pub n_primes: Vec<u64>,
    /// Prime powers `q` with `q - 1 | n - 1`.
    pub n_powers: Vec<u64>,
    pub is_simple: bool,
}

fn check_n(n: u64) -> Result<()> {
    if n <= 1 {
        return invalid(format!("n must exceed 1, got {n}"));
    }
    Ok(())
}

pub fn classify_n(n: u64) -> Result<NClassification> {
    check_n(n)?;
    let n_powers: Vec<u64> = divisors(n - 1).into_iter().map(|d| d + 1).filter(|&q| prime_power(q).is_some()).collect();
    let n_primes: Vec<u64> = n_powers.iter().copied().filter(|&q| is_prime(q)).collect();
    let is_simple = n_primes.len() == n_powers.len();
    Ok(NClassification { n, n_primes, n_powers, is_simple })
}

/// `lcm { d >= 1 : p^d - 1 | n - 1 }`.
pub fn get_exponent(p: u64, n: u64) -> Result<u64> {
    check_n(n)?;
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if (n - 1) % (p - 1) != 0 {
        return invalid(format!("{} does not divide {}", p - 1, n - 1));
    }
    let mut ds = Vec::new();
    let mut pd: u128 = p as u128;
    let mut d = 1;
    while pd <= n as u128 {
        if (n as u128 - 1) % (pd - 1) == 0 {
            ds.push(d);
        }
        pd *= p as u128;
        d += 1;
    }
    Ok(lcm_all(ds))
}

pub fn is_simple_at(n: u64, p: u64) -> bool {
    n > 1 && is_prime(p) && (n - 1) % (p - 1) == 0 && get_exponent(p, n).ok() == Some(1)
}

/// `is_simple[n]` for `0 <= n <= limit`.
fn simple_sieve(limit: u64) -> Vec<bool> {
    let len = limit as usize + 1;
    let mut simple = vec![true; len];
    for v in simple.iter_mut().take(2) {
        *v = false;
    }
    let mut p = 2u64;
    while p * p <= limit {
        if is_prime(p) {
            let mut q = p * p;
            while q <= limit {
                let step = (q - 1) as usize;
                let mut n = q as usize;
                while n < len {
                    simple[n] = false;
                    n += step;
                }
                match q.checked_mul(p) {
                    Some(next) => q = next,
                    None => break,
                }
            }
        }
        p += 1;
    }
    simple
}

pub fn simple_numbers(limit: u64) -> Vec<u64> {
    simple_sieve(limit).iter().enumerate().filter(|(_, &s)| s).map(|(n, _)| n as u64).collect()
}

/// `#{ simple n <= N } / N`.
pub fn simple_density(big_n: u64) -> Result<Ratio<u64>> {
    if big_n < 2 {
        return invalid("density needs N >= 2");
    }
    let count = simple_sieve(big_n).iter().filter(|&&s| s).count() as u64;
    Ok(Ratio::new(count, big_n))
}

/// `gcd((T+u)^n - (T+u) : u in F_p)`.
pub fn linear_gcd(p: u64, n: u64) -> FpPoly {
    let mut g = FpPoly::zero(p);
    for u in 0..p {
        let lin = FpPoly::new(p, vec![u, 1]);
        let f = &FpPoly::linear_power(p, u, n) - &lin;
        g = g.gcd(&f);
    }
    g
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnpleasantSurvey {
    pub p: u64,
    pub start: u64,
    pub end: u64,
    pub simple_at_p: u64,
    pub unpleasant: Vec<u64>,
}

/// Among `n` in `[start, end]` simple at `p`, those where linear witnesses
/// fail to reach `T^p - T`. Runs on the current rayon pool.
pub fn unpleasant_survey(p: u64, start: u64, end: u64) -> Result<UnpleasantSurvey> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if start < 2 {
        return invalid("range must start at 2 or later");
    }
    let candidates: Vec<u64> = (start..=end).filter(|&n| is_simple_at(n, p)).collect();
    let target = FpPoly::frobenius_target(p, p as usize);
    let mut unpleasant: Vec<u64> =
        candidates.par_iter().copied().filter(|&n| linear_gcd(p, n) != target).collect();
    unpleasant.sort_unstable();
    Ok(UnpleasantSurvey { p, start, end, simple_at_p: candidates.len() as u64, unpleasant })
}

/// `gcd(k, p^k - 1) == 1`.
pub fn is_good(p: u64, k: u64) -> bool {
    if k == 1 {
        return true;
    }
    let r = (pow_mod(p, k, k) + k - 1) % k;
    k.gcd(&r) == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodBad {
    pub p: u64,
    pub kmax: u64,
    /// Bad `k <= kmax` by the direct gcd test.
    pub bad: Vec<u64>,
    /// Union of `q * ord_q(p) * N+` over primes `q != p`, truncated at `kmax`.
    pub bad_by_orders: Vec<u64>,
}

impl GoodBad {
    pub fn agree(&self) -> bool {
        self.bad == self.bad_by_orders
    }
}

pub fn good_bad(p: u64, kmax: u64) -> Result<GoodBad> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if kmax < 1 {
        return invalid("kmax must be positive");
    }
    let bad: Vec<u64> = (1..=kmax).filter(|&k| !is_good(p, k)).collect();
    let mut marked = vec![false; kmax as usize + 1];
    let pb = num_bigint::BigInt::from(p);
    for q in (2..=kmax).filter(|&q| q != p && is_prime(q)) {
        let step = q * multiplicative_order(&pb, q)?;
        let mut m = step;
        while m <= kmax {
            marked[m as usize] = true;
            m += step;
        }
    }
    let bad_by_orders = (1..=kmax).filter(|&k| marked[k as usize]).collect();
    Ok(GoodBad { p, kmax, bad, bad_by_orders })
}

/// Whether `n` and `m` have the same prime powers `q` with `q - 1 | . - 1`.
pub fn coincide(n: u64, m: u64) -> Result<bool> {
    Ok(classify_n(n)?.n_powers == classify_n(m)?.n_powers)
}

/// Least `m < n` with `coincide(n, m)`.
pub fn least_coinciding(n: u64) -> Result<Option<u64>> {
    let own = classify_n(n)?.n_powers;
    for m in 2..n {
        if classify_n(m)?.n_powers == own {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_examples() {
        let c7 = classify_n(7).unwrap();
        assert_eq!(c7.n_powers, [2, 3, 4, 7]);
        assert_eq!(c7.n_primes, [2, 3, 7]);
        assert!(!c7.is_simple);
        assert!(classify_n(2).unwrap().is_simple);
        assert_eq!(classify_n(22).unwrap().n_powers, [2, 4, 8]);
        assert!(classify_n(1).is_err());
    }

    #[test]
    fn exponents() {
        assert_eq!(get_exponent(2, 22).unwrap(), 6);
        assert_eq!(get_exponent(2, 7).unwrap(), 2);
        assert_eq!(get_exponent(2, 2).unwrap(), 1);
        assert_eq!(get_exponent(2, 94).unwrap(), 10);
        assert!(get_exponent(3, 6).is_err());
        assert!(get_exponent(4, 7).is_err());
    }

    #[test]
    fn simple_lists() {
        let expected = [
            2, 3, 5, 6, 11, 12, 14, 18, 20, 21, 23, 24, 26, 30, 35, 38, 39, 42, 44, 45, 47, 48, 51, 54, 56, 59, 60,
            62, 66, 68, 69, 72, 74, 75, 77, 80, 83, 84, 86, 87, 90, 93, 95, 96, 98,
        ];
        assert_eq!(simple_numbers(100), expected);
        assert_eq!(simple_numbers(2), [2]);
        assert_eq!(simple_density(100).unwrap(), Ratio::new(45, 100));
        assert_eq!(simple_density(2).unwrap(), Ratio::new(1, 2));
        for n in 2..3000 {
            assert_eq!(simple_sieve(3000)[n as usize], classify_n(n).unwrap().is_simple, "{n}");
        }
    }

    #[test]
    fn small_unpleasant_ranges() {
        let s = unpleasant_survey(2, 2, 73).unwrap();
        assert!(s.unpleasant.is_empty());
        let s = unpleasant_survey(2, 2, 80).unwrap();
        assert_eq!(s.unpleasant.first(), Some(&74));
        assert!(unpleasant_survey(3, 2, 1000).unwrap().unpleasant.is_empty());
    }

    #[test]
    fn bad_exponents() {
        let gb = good_bad(2, 100).unwrap();
        assert_eq!(
            gb.bad,
            [6, 12, 18, 20, 21, 24, 30, 36, 40, 42, 48, 54, 60, 63, 66, 72, 78, 80, 84, 90, 96, 100]
        );
        assert!(gb.agree());
        let odd = |p| good_bad(p, 100).unwrap().bad.into_iter().filter(|k| k % 2 == 1).collect::<Vec<_>>();
        assert_eq!(odd(3), [39, 55]);
        assert_eq!(odd(5), [55, 93]);
        assert!(is_good(2, 3));
        for p in [2, 3, 5, 7] {
            assert!(good_bad(p, 200).unwrap().agree(), "{p}");
        }
    }

    #[test]
    fn coincidences() {
        assert!(coincide(10, 4).unwrap());
        assert!(coincide(14, 2).unwrap());
        assert_eq!(least_coinciding(22).unwrap(), None);
        assert_eq!(least_coinciding(10).unwrap(), Some(4));
    }
}

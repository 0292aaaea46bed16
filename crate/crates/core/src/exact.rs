//! Exact integer and rational arithmetic.
//!
//! All quantities in the toolkit (group orders, subgroup indices,
//! reciprocal sums) fit comfortably in 64 bits; intermediate products are
//! computed in 128 bits and narrowing is checked, so overflow is a loud
//! panic rather than silent wraparound.

use crate::{Error, Result};
use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Sub};

/// Greatest common divisor. `gcd(0, n) = n`.
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Least common multiple; panics on 64-bit overflow.
pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b)).checked_mul(b).expect("lcm overflow")
}

/// An exact fraction, always stored reduced with a positive denominator.
///
/// Equality and ordering are therefore plain field comparisons.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Reduced fraction `num/den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "rational with zero denominator");
        reduce(num as i128, den as i128)
    }

    pub fn from_integer(n: i64) -> Rational {
        Rational { num: n, den: 1 }
    }

    /// `1/n` for a positive integer.
    pub fn reciprocal(n: u64) -> Rational {
        assert!(n > 0, "reciprocal of zero");
        Rational::new(1, i64::try_from(n).expect("reciprocal overflow"))
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_one(&self) -> bool {
        self.num == 1 && self.den == 1
    }
}

fn reduce(num: i128, den: i128) -> Rational {
    debug_assert!(den != 0);
    let sign = if (num < 0) != (den < 0) && num != 0 { -1 } else { 1 };
    let (n, d) = (num.unsigned_abs(), den.unsigned_abs());
    let g = {
        let (mut a, mut b) = (n, d);
        while b != 0 {
            let r = a % b;
            a = b;
            b = r;
        }
        if a == 0 {
            1
        } else {
            a
        }
    };
    let num = i64::try_from(sign * (n / g) as i128).expect("rational overflow");
    let den = i64::try_from((d / g) as i128).expect("rational overflow");
    Rational { num, den }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        reduce(
            self.num as i128 * rhs.den as i128 + rhs.num as i128 * self.den as i128,
            self.den as i128 * rhs.den as i128,
        )
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        reduce(
            self.num as i128 * rhs.den as i128 - rhs.num as i128 * self.den as i128,
            self.den as i128 * rhs.den as i128,
        )
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        reduce(
            self.num as i128 * rhs.num as i128,
            self.den as i128 * rhs.den as i128,
        )
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, Add::add)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Rational) -> Ordering {
        // denominators are positive, so cross multiplication keeps order
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Prime factorization as a strictly increasing list of `(prime, exponent)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The factored integer, reconstructed.
    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * p.pow(e))
    }

    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Factorize by trial division. `1` yields the empty factorization.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Domain("cannot factorize 0".into()));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0u32;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut rest);
    let mut p = 3u64;
    while p * p <= rest {
        push(p, &mut rest);
        p += 2;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { factors })
}

/// All divisors of `n`, strictly increasing.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let mut divs = vec![1u64];
    for &(p, e) in f.factors() {
        let prev = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(prev.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Exact value of `Σ 1/v` over the given values; the empty sum is 0.
pub fn sum_reciprocals(values: &[u64]) -> Result<Rational> {
    let mut acc = Rational::ZERO;
    for &v in values {
        if v == 0 {
            return Err(Error::Domain("reciprocal of a non-positive value".into()));
        }
        acc = acc + Rational::reciprocal(v);
    }
    Ok(acc)
}

/// Sum of `1/d` over the divisors of `z` that have at least two distinct
/// prime factors. Prime powers and 1 have no such divisors, giving 0.
///
/// Computed from the factorization as `σ(z)/z − 1 − Σ_{p^k ∥ z} Σ_j 1/p^j`,
/// which is a different route than filtering the divisor list.
pub fn d_composite(z: u64) -> Result<Rational> {
    let f = factorize(z)?;
    // σ(z)/z = Σ_{d | z} 1/d
    let mut sigma: u128 = 1;
    for &(p, e) in f.factors() {
        let pe1 = (p as u128).pow(e + 1);
        sigma *= (pe1 - 1) / (p as u128 - 1);
    }
    let sigma = i64::try_from(sigma).map_err(|_| Error::Domain("divisor sum overflow".into()))?;
    let mut acc = Rational::new(sigma, z as i64) - Rational::ONE;
    for &(p, e) in f.factors() {
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            acc = acc - Rational::reciprocal(pk);
        }
    }
    Ok(acc)
}

/// Exact product of `(1 + 1/(p−1))` over a set of distinct primes; the
/// empty product is 1.
pub fn reciprocal_bound(primes: &[u64]) -> Result<Rational> {
    let mut seen = std::collections::BTreeSet::new();
    let mut acc = Rational::ONE;
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if !seen.insert(p) {
            return Err(Error::Domain(format!("duplicate prime {p}")));
        }
        acc = acc * (Rational::ONE + Rational::reciprocal(p - 1));
    }
    Ok(acc)
}

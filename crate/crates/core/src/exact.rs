//! Exact rationals, memoized Bernoulli numbers and factorials, and the
//! `PiValue` type that every closed-form evaluator returns.
//!
//! Bernoulli numbers are generated from the tangent numbers with the
//! in-place integer recurrence of Brent and Harvey, which only ever
//! multiplies big integers by machine words. That keeps a table up to
//! B_8192 within a few seconds; the textbook convolution recurrence is
//! kept as a test oracle.

use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// An exact value `coeff * pi^pi_power`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiValue {
    coeff: Rational,
    pi_power: u32,
}

impl PiValue {
    pub fn new(coeff: Rational, pi_power: u32) -> Self {
        PiValue { coeff, pi_power }
    }

    pub fn zero(pi_power: u32) -> Self {
        PiValue::new(Rational::zero(), pi_power)
    }

    pub fn one() -> Self {
        PiValue::new(Rational::one(), 0)
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn pi_power(&self) -> u32 {
        self.pi_power
    }

    pub fn into_coeff(self) -> Rational {
        self.coeff
    }

    pub fn is_positive(&self) -> bool {
        self.coeff.is_positive()
    }

    /// Sum of two values of equal weight; mixing powers of pi is an error.
    pub fn checked_add(&self, other: &PiValue) -> Result<PiValue> {
        self.same_power(other)?;
        Ok(PiValue::new(&self.coeff + &other.coeff, self.pi_power))
    }

    pub fn checked_sub(&self, other: &PiValue) -> Result<PiValue> {
        self.same_power(other)?;
        Ok(PiValue::new(&self.coeff - &other.coeff, self.pi_power))
    }

    pub fn mul(&self, other: &PiValue) -> PiValue {
        PiValue::new(&self.coeff * &other.coeff, self.pi_power + other.pi_power)
    }

    pub fn scale(&self, factor: &Rational) -> PiValue {
        PiValue::new(&self.coeff * factor, self.pi_power)
    }

    pub fn neg(&self) -> PiValue {
        PiValue::new(-&self.coeff, self.pi_power)
    }

    pub fn pow(&self, exp: u32) -> PiValue {
        PiValue::new(
            num_traits::pow(self.coeff.clone(), exp as usize),
            self.pi_power * exp,
        )
    }

    fn same_power(&self, other: &PiValue) -> Result<()> {
        if self.pi_power == other.pi_power {
            Ok(())
        } else {
            Err(Error::PiPowerMismatch {
                left: self.pi_power,
                right: other.pi_power,
            })
        }
    }
}

impl fmt::Display for PiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_power {
            0 => write!(f, "{}", self.coeff),
            1 => write!(f, "{} * pi", self.coeff),
            p => write!(f, "{} * pi^{}", self.coeff, p),
        }
    }
}

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// 2^e as a big integer.
pub fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// (-1)^e
pub fn sign(e: usize) -> i32 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

// ---------------------------------------------------------------------------
// Bernoulli numbers

type Table<T> = RwLock<Arc<Vec<T>>>;

fn even_bernoulli_table() -> &'static Table<Rational> {
    static TABLE: OnceLock<Table<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(Arc::new(vec![Rational::one()])))
}

/// Snapshot of the even Bernoulli numbers: entry `j` is `B_{2j}`, and the
/// slice holds at least `max_j + 1` entries.
///
/// The snapshot is immutable; growth swaps in a fresh, fully computed table.
pub fn even_bernoulli(max_j: usize) -> Arc<Vec<Rational>> {
    let table = even_bernoulli_table();
    {
        let current = table.read().expect("bernoulli table poisoned");
        if current.len() > max_j {
            return Arc::clone(&current);
        }
    }
    let mut current = table.write().expect("bernoulli table poisoned");
    if current.len() > max_j {
        return Arc::clone(&current);
    }
    let target = max_j.max(2 * (current.len() - 1)).max(32);
    *current = Arc::new(compute_even_bernoulli(target));
    Arc::clone(&current)
}

/// Precomputes `B_0 ..= B_max_index`.
pub fn precompute_bernoulli(max_index: usize) {
    even_bernoulli(max_index / 2);
}

/// B_k with the convention B_1 = -1/2.
pub fn bernoulli(k: usize) -> Rational {
    match k {
        1 => rational(-1, 2),
        k if k % 2 == 1 => Rational::zero(),
        k => even_bernoulli(k / 2)[k / 2].clone(),
    }
}

/// Tangent numbers T_1..T_n (Brent-Harvey), then
/// B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1)).
///
/// The reduced denominator is taken to be the von Staudt-Clausen product D;
/// the division 2k T_k D / (4^k (4^k - 1)) must be exact and the quotient
/// coprime to D, which certifies lowest terms without a full-size gcd.
fn compute_even_bernoulli(n: usize) -> Vec<Rational> {
    let tangent = tangent_numbers(n);
    let mut out = Vec::with_capacity(n + 1);
    out.push(Rational::one());
    for (k, t) in tangent.into_iter().enumerate().skip(1) {
        let four_k = BigUint::one() << (2 * k);
        let full_denom = &four_k * (&four_k - BigUint::one());
        let d = von_staudt_clausen_denominator(k);
        let (numer, rem) = (t * (2 * k) as u64 * &d).div_rem(&full_denom);
        assert!(rem.is_zero(), "B_{} denominator does not divide", 2 * k);
        assert!((&numer % &d).gcd(&d).is_one(), "B_{} not in lowest terms", 2 * k);
        let numer = BigInt::from(numer) * sign(k - 1);
        out.push(Rational::new_raw(numer, BigInt::from(d)));
    }
    out
}

/// Returns a vector with index 0 unused and `T_k` at index `k`.
///
/// Row k of the recurrence updates T_j <- (j-k) T_{j-1} + (j-k+2) T_j for
/// j >= k. Rows are applied in tiles so that one sweep over the table
/// applies `TILE` rows; `lanes[r]` carries T_{j-1} as it stood after row
/// k0 + r.
pub(crate) fn tangent_numbers(n: usize) -> Vec<BigUint> {
    const TILE: usize = 48;
    if n == 0 {
        return vec![BigUint::zero()];
    }
    let mut t: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    t[1] = vec![1];
    for k in 2..=n {
        let mut next = t[k - 1].clone();
        scale_add(&mut next, (k - 1) as u64, &[], 0);
        t[k] = next;
    }
    let mut k0 = 2;
    while k0 <= n {
        let k1 = (k0 + TILE).min(n + 1);
        let mut lanes: Vec<Vec<u64>> = vec![Vec::new(); k1 - k0];
        for (j, tj) in t.iter_mut().enumerate().skip(k0) {
            let rows = (j + 1).min(k1) - k0;
            for r in 0..rows {
                let k = k0 + r;
                let (done, todo) = lanes.split_at_mut(r);
                let cur: &[u64] = if r == 0 { tj } else { &done[r - 1] };
                scale_add(&mut todo[0], (j - k) as u64, cur, (j - k + 2) as u64);
            }
            tj.clone_from(&lanes[rows - 1]);
        }
        k0 = k1;
    }
    t.into_iter()
        .map(|limbs| {
            let digits: Vec<u32> = limbs
                .iter()
                .flat_map(|&w| [w as u32, (w >> 32) as u32])
                .collect();
            BigUint::new(digits)
        })
        .collect()
}

/// a <- a * x + b * y for little-endian u64 limb vectors.
fn scale_add(a: &mut Vec<u64>, x: u64, b: &[u64], y: u64) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    let (x, y) = (x as u128, y as u128);
    let mut carry: u128 = 0;
    let (low, high) = a.split_at_mut(b.len());
    for (limb, &bi) in low.iter_mut().zip(b) {
        let acc = (*limb as u128) * x + (bi as u128) * y + carry;
        *limb = acc as u64;
        carry = acc >> 64;
    }
    for limb in high.iter_mut() {
        let acc = (*limb as u128) * x + carry;
        *limb = acc as u64;
        carry = acc >> 64;
    }
    while carry != 0 {
        a.push(carry as u64);
        carry >>= 64;
    }
    while a.last() == Some(&0) {
        a.pop();
    }
}

// ---------------------------------------------------------------------------
// Factorials and binomials

const FACTORIAL_MEMO_LIMIT: usize = 2048;

fn factorial_table() -> &'static Table<BigUint> {
    static TABLE: OnceLock<Table<BigUint>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(Arc::new(vec![BigUint::one()])))
}

/// n! exactly. Values up to 2048! are memoized.
pub fn factorial(n: usize) -> BigUint {
    let memo_n = n.min(FACTORIAL_MEMO_LIMIT);
    let table = factorial_table();
    let snapshot = {
        let current = table.read().expect("factorial table poisoned");
        if current.len() > memo_n {
            Arc::clone(&current)
        } else {
            drop(current);
            let mut current = table.write().expect("factorial table poisoned");
            if current.len() <= memo_n {
                let mut grown: Vec<BigUint> = current.as_ref().clone();
                while grown.len() <= memo_n {
                    let next = grown.last().unwrap() * grown.len() as u64;
                    grown.push(next);
                }
                *current = Arc::new(grown);
            }
            Arc::clone(&current)
        }
    };
    let mut acc = snapshot[memo_n].clone();
    for i in memo_n + 1..=n {
        acc *= i as u64;
    }
    acc
}

/// C(n, k), zero when k > n.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    if n <= FACTORIAL_MEMO_LIMIT {
        return factorial(n) / (factorial(k) * factorial(n - k));
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= (n - i) as u64;
        acc /= (i + 1) as u64;
    }
    acc
}

/// C(n, k) for signed arguments, zero outside 0 <= k <= n.
pub fn binomial_i(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        BigInt::zero()
    } else {
        BigInt::from(binomial(n as usize, k as usize))
    }
}

pub fn factorial_rational(n: usize) -> Rational {
    integer(BigInt::from(factorial(n)))
}

/// B_{2j} / (2j)!
pub fn bernoulli_over_factorial(j: usize) -> Rational {
    let b = even_bernoulli(j)[j].clone();
    b / factorial_rational(2 * j)
}

// ---------------------------------------------------------------------------
// Even zeta values

/// zeta(2k) = (-1)^{k+1} B_{2k} (2 pi)^{2k} / (2 (2k)!), with zeta(0) = -1/2.
pub fn zeta_even(k: usize) -> PiValue {
    let coeff = bernoulli_over_factorial(k) * integer(pow2(2 * k)) * integer(sign(k + 1))
        / integer(2);
    PiValue::new(coeff, 2 * k as u32)
}

/// beta_r = (2^{2r} - 2) (-1)^{r-1} B_{2r} / (2r)!, evaluated literally
/// (so beta_0 = 1).
pub fn beta_coeff(r: usize) -> Rational {
    let factor = pow2(2 * r) - BigInt::from(2);
    // (-1)^{r-1} == (-1)^{r+1}
    integer(factor) * integer(sign(r + 1)) * bernoulli_over_factorial(r)
}

/// Product of all primes p with (p - 1) | 2k: the denominator of B_{2k}.
pub fn von_staudt_clausen_denominator(k: usize) -> BigUint {
    let n = 2 * k;
    let mut acc = BigUint::one();
    for d in 1..=n {
        if n.is_multiple_of(d) && is_prime(d + 1) {
            acc *= (d + 1) as u64;
        }
    }
    acc
}

pub(crate) fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// The denominator as a positive integer.
pub fn denominator_of(r: &Rational) -> BigUint {
    r.denom().magnitude().clone()
}

// ---------------------------------------------------------------------------
// Sums over small-prime denominators

/// Exact accumulator for sums whose terms have smooth denominators (products
/// of primes below `prime_bound`), such as products of Bernoulli numbers.
///
/// Terms are added over a running common denominator with no intermediate
/// reduction; `finish` divides by an extra smooth factor (typically a
/// factorial) and reduces by trial division over the primes, avoiding a
/// full-size gcd.
pub(crate) struct SmoothSum {
    numer: BigInt,
    denom: BigUint,
}

impl SmoothSum {
    pub(crate) fn new() -> Self {
        SmoothSum {
            numer: BigInt::zero(),
            denom: BigUint::one(),
        }
    }

    /// Adds `numer / denom` where `denom` is small.
    pub(crate) fn add(&mut self, numer: BigInt, denom: &BigUint) {
        if denom == &self.denom {
            self.numer += numer;
            return;
        }
        let g = (&self.denom % denom).gcd(denom);
        let scale_self = denom / &g;
        let scale_term = &self.denom / &g;
        if !scale_self.is_one() {
            self.numer *= BigInt::from(scale_self.clone());
            self.denom *= &scale_self;
        }
        self.numer += numer * BigInt::from(scale_term);
    }

    /// Returns `sum / extra` in lowest terms. Every prime factor of `extra`
    /// and of the accumulated denominators must be at most `prime_bound`.
    pub(crate) fn finish(self, extra: &BigUint, prime_bound: usize) -> Rational {
        reduce_smooth(self.numer, self.denom * extra, prime_bound)
    }
}

/// `numer / denom` in lowest terms, for `denom` with no prime factor above
/// `prime_bound`. Trial division stays linear in the size of `numer`.
pub(crate) fn reduce_smooth(numer: BigInt, denom: BigUint, prime_bound: usize) -> Rational {
    if numer.is_zero() {
        return Rational::zero();
    }
    let (numer_sign, mut numer) = (numer.sign(), numer.magnitude().clone());
    let mut denom = denom;
    for p in primes_up_to(prime_bound) {
        let p = p as u64;
        while (&denom % p).is_zero() && (&numer % p).is_zero() {
            denom /= p;
            numer /= p;
        }
    }
    Rational::new_raw(BigInt::from_biguint(numer_sign, numer), BigInt::from(denom))
}

pub(crate) fn primes_up_to(n: usize) -> Vec<usize> {
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..=n).filter(|&i| sieve[i]).collect()
}

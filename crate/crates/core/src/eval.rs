//! Closed-form evaluators for zeta and zeta-star values on {3,1}-type indices.
//!
//! The production path for `zeta*({3,1}^d)` is the linear tanh*cot sum;
//! the double sum of Muneta is kept as an independent route, and Yamamoto's
//! five-fold sum backs the sum formula in the same way.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    beta_coeff, binomial, binomial_i, even_bernoulli, factorial, factorial_rational, integer,
    pow2, primes_up_to, reduce_smooth, sign, PiValue, Rational, SmoothSum,
};

/// zeta({2}^d) = pi^{2d} / (2d+1)!
pub fn zeta_2_pow(d: usize) -> PiValue {
    PiValue::new(
        Rational::one() / factorial_rational(2 * d + 1),
        2 * d as u32,
    )
}

/// zeta*({2}^d) = (-1)^{d+1} (2^{2d} - 2) B_{2d} / (2d)! * pi^{2d}
pub fn zeta_star_2_pow(d: usize) -> PiValue {
    PiValue::new(beta_coeff(d), 2 * d as u32)
}

/// zeta({3,1}^d) = 2 pi^{4d} / (4d+2)!
pub fn zeta_31_pow(d: usize) -> PiValue {
    PiValue::new(integer(2) / factorial_rational(4 * d + 2), 4 * d as u32)
}

/// zeta*({3,1}^d), linear in d once the Bernoulli numbers are tabulated.
pub fn zeta_star_31_pow(d: usize) -> PiValue {
    PiValue::new(
        tanh_cot_sum(2 * d, |_| BigInt::one()),
        4 * d as u32,
    )
}

/// zeta*({3,1}^d, 2)
pub fn zeta_star_31_pow_2(d: usize) -> PiValue {
    PiValue::new(
        tanh_cot_sum(2 * d + 1, |_| BigInt::one()),
        4 * d as u32 + 2,
    )
}

/// 4 * sum_{k=0}^{N} (-1)^k (4^{k+1} - 1) w(k) B_{2k+2}/(2k+2)! B_{2N-2k}/(2N-2k)!
///
/// Evaluated over the common denominator (2N+2)!, where the factorial
/// quotient becomes the binomial C(2N+2, 2k+2).
fn tanh_cot_sum(big_n: usize, weight: impl Fn(usize) -> BigInt) -> Rational {
    let top = 2 * big_n + 2;
    let bern = even_bernoulli(big_n + 1);
    let mut binom = binomial(top, 2);
    let mut acc = SmoothSum::new();
    for k in 0..=big_n {
        let w = weight(k);
        if !w.is_zero() {
            let (left, right) = (&bern[k + 1], &bern[big_n - k]);
            let small = (pow2(2 * k + 2) - BigInt::one()) * w * BigInt::from(binom.clone())
                * (4 * sign(k));
            let numer = small * left.numer() * right.numer();
            let denom = left.denom().magnitude() * right.denom().magnitude();
            acc.add(numer, &denom);
        }
        if k < big_n {
            // C(top, 2k+4) from C(top, 2k+2)
            binom *= ((top - 2 * k - 2) * (top - 2 * k - 3)) as u64;
            binom /= ((2 * k + 3) * (2 * k + 4)) as u64;
        }
    }
    acc.finish(&factorial(top), top + 1)
}

/// Muneta's evaluation of zeta*({3,1}^d): quadratic in d.
///
/// pi^{4d} sum_j 2/(4j+2)! sum_{n0+n1=2(d-j)} (-1)^{n1} c_{n0} c_{n1},
/// c_n = (2^{2n} - 2) B_{2n} / (2n)!. Each c_n is scaled to an integer by the
/// common Bernoulli denominator and the factorials are folded into (4d+2)!.
pub fn muneta_zeta_star_31(d: usize) -> PiValue {
    let top = 4 * d + 2;
    let bern = even_bernoulli(2 * d);
    let common: BigUint = primes_up_to(4 * d + 1)
        .into_iter()
        .map(|p| BigUint::from(p as u64))
        .product();
    let scaled: Vec<BigInt> = bern
        .iter()
        .take(2 * d + 1)
        .enumerate()
        .map(|(n, b)| {
            let lift = BigInt::from(&common / b.denom().magnitude());
            (pow2(2 * n) - BigInt::from(2)) * b.numer() * lift
        })
        .collect();
    let mut outer = binomial(top, 2); // C(top, 4j+2)
    let mut total = BigInt::zero();
    for j in 0..=d {
        let n = 2 * (d - j);
        let mut inner = BigUint::one(); // C(2n, 2 n0)
        let mut pairs = BigInt::zero();
        // n is even, so the summand is symmetric under n0 <-> n1
        for n0 in 0..=n / 2 {
            let mut term = &scaled[n0] * BigInt::from(inner.clone()) * &scaled[n - n0];
            if 2 * n0 < n {
                term <<= 1;
            }
            if n0 % 2 == 0 {
                pairs += term;
            } else {
                pairs -= term;
            }
            if 2 * n0 < n {
                inner *= ((2 * n - 2 * n0) * (2 * n - 2 * n0 - 1)) as u64;
                inner /= ((2 * n0 + 1) * (2 * n0 + 2)) as u64;
            }
        }
        total += pairs * BigInt::from(outer.clone());
        if j < d {
            // C(top, 4j+6) from C(top, 4j+2)
            for step in 0..4 {
                outer *= (top - 4 * j - 2 - step) as u64;
                outer /= (4 * j + 3 + step) as u64;
            }
        }
    }
    let denom = &common * &common * factorial(top);
    PiValue::new(reduce_smooth(total << 1, denom, top + 1), 4 * d as u32)
}

/// Bowman-Bradley: Z(d, n) = C(n+2d, n) pi^{2n+4d} / ((2d+1) (2n+4d+1)!)
pub fn bowman_bradley_z(d: usize, n: usize) -> PiValue {
    let coeff = integer(BigInt::from(binomial(n + 2 * d, n)))
        / (integer(2 * d as u64 + 1) * factorial_rational(2 * n + 4 * d + 1));
    PiValue::new(coeff, (2 * n + 4 * d) as u32)
}

/// Yamamoto's evaluation of Z*(d, n) as a constrained sum over
/// 2m + k + u = 2d and j + l + v = n.
pub fn yamamoto_zstar(d: usize, n: usize) -> PiValue {
    let beta: Vec<Rational> = (0..=n + 2 * d).map(beta_coeff).collect();
    let c = |a: usize, b: usize| integer(BigInt::from(binomial(a, b)));
    let mut total = Rational::zero();
    for m in 0..=d {
        let weight_m = Rational::one() / integer(2 * m as u64 + 1);
        for k in 0..=2 * d - 2 * m {
            let u = 2 * d - 2 * m - k;
            for j in 0..=n {
                let zm = c(2 * m + j, j) / factorial_rational(4 * m + 2 * j + 1) * &weight_m;
                for l in 0..=n - j {
                    let v = n - j - l;
                    let term = c(k + l, k) * c(u + v, u) * &zm * &beta[k + l] * &beta[u + v];
                    if (j + k) % 2 == 0 {
                        total += term;
                    } else {
                        total -= term;
                    }
                }
            }
        }
    }
    PiValue::new(total, (4 * d + 2 * n) as u32)
}

fn require_positive_depth(d: usize) -> Result<()> {
    if d == 0 {
        Err(Error::InvalidArgument(
            "the sum formulas need d >= 1; Z*(0, n) is zeta*({2}^n)".into(),
        ))
    } else {
        Ok(())
    }
}

fn alternating_binomial_sum(
    n: usize,
    upper: usize,
    sign_offset: usize,
    f: impl Fn(usize) -> BigInt,
) -> BigInt {
    (0..=upper).fold(BigInt::zero(), |acc, r| {
        acc + f(r) * sign(n + r + sign_offset)
    })
}

/// Z*_0(d, n): sums with no trailing block of twos.
pub fn zstar0(d: usize, n: usize) -> Result<PiValue> {
    require_positive_depth(d)?;
    let big_n = n + 2 * d;
    let coeff = tanh_cot_sum(big_n, |k| {
        alternating_binomial_sum(n, n, 0, |r| {
            binomial_i(k as i64, r as i64) * binomial_i((big_n - k) as i64, (n - r) as i64)
        })
    });
    Ok(PiValue::new(coeff, 2 * big_n as u32))
}

/// Z*_1(d, n): sums ending in a nonempty block of twos; zero when n = 0.
pub fn zstar1(d: usize, n: usize) -> Result<PiValue> {
    require_positive_depth(d)?;
    let big_n = n + 2 * d;
    if n == 0 {
        return Ok(PiValue::zero(2 * big_n as u32));
    }
    let coeff = tanh_cot_sum(big_n, |k| {
        alternating_binomial_sum(n, n - 1, 1, |r| {
            binomial_i(k as i64, r as i64)
                * binomial_i((big_n - k) as i64, (n - 1 - r) as i64)
        })
    });
    Ok(PiValue::new(coeff, 2 * big_n as u32))
}

/// Z*(d, n), the full sum over insertions of n twos into {3,1}^d.
pub fn zstar(d: usize, n: usize) -> Result<PiValue> {
    require_positive_depth(d)?;
    let big_n = n + 2 * d;
    let coeff = tanh_cot_sum(big_n, |k| {
        alternating_binomial_sum(n, n, 0, |r| {
            binomial_i(k as i64 + 1, r as i64) * binomial_i((big_n - k) as i64, (n - r) as i64)
        })
    });
    Ok(PiValue::new(coeff, 2 * big_n as u32))
}

/// The split Z* = Z*_0 + Z*_1 for one (d, n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumFormulaResult {
    pub d: usize,
    pub n: usize,
    pub z_star: PiValue,
    pub z_star_0: PiValue,
    pub z_star_1: PiValue,
}

impl SumFormulaResult {
    pub fn evaluate(d: usize, n: usize) -> Result<Self> {
        Ok(SumFormulaResult {
            d,
            n,
            z_star: zstar(d, n)?,
            z_star_0: zstar0(d, n)?,
            z_star_1: zstar1(d, n)?,
        })
    }

    /// Whether z_star equals z_star_0 + z_star_1 exactly.
    pub fn is_consistent(&self) -> bool {
        self.z_star_0
            .checked_add(&self.z_star_1)
            .map(|sum| sum == self.z_star)
            .unwrap_or(false)
    }
}

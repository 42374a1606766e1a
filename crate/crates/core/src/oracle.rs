//! Brute-force numerics for nested zeta sums.
//!
//! Values are binary fixed point over big integers. Each sum is cut off at
//! `k_1 <= K` and reported with a heuristic tail estimate; nothing here is
//! certified.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{PiValue, Rational};
use crate::index::{render_index, Index};

const GUARD_BITS: u32 = 32;

/// `mantissa / 2^bits`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixed {
    mantissa: BigInt,
    bits: u32,
}

impl Fixed {
    pub fn zero(bits: u32) -> Self {
        Fixed {
            mantissa: BigInt::zero(),
            bits,
        }
    }

    pub fn from_int(n: impl Into<BigInt>, bits: u32) -> Self {
        Fixed {
            mantissa: n.into() << bits,
            bits,
        }
    }

    /// Nearest representable value below `q`.
    pub fn from_rational(q: &Rational, bits: u32) -> Self {
        Fixed {
            mantissa: (q.numer() << bits).div_floor(q.denom()),
            bits,
        }
    }

    /// `1 / n^s`, truncated.
    pub fn recip_pow(n: u64, s: u32, bits: u32) -> Self {
        let denom = BigInt::from(n).pow(s);
        Fixed {
            mantissa: (BigInt::one() << bits) / denom,
            bits,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn add(&self, other: &Fixed) -> Fixed {
        debug_assert_eq!(self.bits, other.bits);
        Fixed {
            mantissa: &self.mantissa + &other.mantissa,
            bits: self.bits,
        }
    }

    pub fn sub(&self, other: &Fixed) -> Fixed {
        debug_assert_eq!(self.bits, other.bits);
        Fixed {
            mantissa: &self.mantissa - &other.mantissa,
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> Fixed {
        Fixed {
            mantissa: -&self.mantissa,
            bits: self.bits,
        }
    }

    pub fn abs(&self) -> Fixed {
        Fixed {
            mantissa: self.mantissa.abs(),
            bits: self.bits,
        }
    }

    pub fn mul(&self, other: &Fixed) -> Fixed {
        debug_assert_eq!(self.bits, other.bits);
        Fixed {
            mantissa: (&self.mantissa * &other.mantissa) >> self.bits,
            bits: self.bits,
        }
    }

    pub fn mul_int(&self, n: impl Into<BigInt>) -> Fixed {
        Fixed {
            mantissa: &self.mantissa * n.into(),
            bits: self.bits,
        }
    }

    pub fn div_int(&self, n: impl Into<BigInt>) -> Fixed {
        Fixed {
            mantissa: &self.mantissa / n.into(),
            bits: self.bits,
        }
    }

    pub fn pow(&self, e: u32) -> Fixed {
        (0..e).fold(Fixed::from_int(1, self.bits), |acc, _| acc.mul(self))
    }

    /// Same value at another precision.
    pub fn with_bits(&self, bits: u32) -> Fixed {
        let mantissa = if bits >= self.bits {
            &self.mantissa << (bits - self.bits)
        } else {
            &self.mantissa >> (self.bits - bits)
        };
        Fixed { mantissa, bits }
    }

    pub fn to_f64(&self) -> f64 {
        let (sign, mag) = (self.mantissa.sign(), self.mantissa.magnitude());
        let shift = mag.bits().saturating_sub(60);
        let top = (mag >> shift).to_string().parse::<f64>().unwrap_or(0.0);
        let value = top * 2f64.powi(shift as i32 - self.bits as i32);
        if sign == Sign::Minus {
            -value
        } else {
            value
        }
    }

    /// Decimal expansion with `digits` places after the point, rounded to nearest.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10).pow(digits as u32);
        let half = BigInt::one() << self.bits.saturating_sub(1);
        let scaled = &self.mantissa.abs() * &scale;
        let rounded = if self.bits == 0 {
            scaled
        } else {
            (scaled + half) >> self.bits
        };
        let (whole, frac) = rounded.div_rem(&scale);
        let sign = if self.mantissa.is_negative() && !rounded.is_zero() {
            "-"
        } else {
            ""
        };
        if digits == 0 {
            format!("{sign}{whole}")
        } else {
            format!("{sign}{whole}.{:0>width$}", frac.to_string(), width = digits)
        }
    }

    /// Decimal digits the precision supports.
    pub fn significant_digits(&self) -> usize {
        (self.bits as f64 * std::f64::consts::LOG10_2).floor() as usize
    }
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fixed {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.bits.cmp(&other.bits) {
            Ordering::Equal => self.mantissa.cmp(&other.mantissa),
            _ => {
                let bits = self.bits.max(other.bits);
                self.with_bits(bits).mantissa.cmp(&other.with_bits(bits).mantissa)
            }
        }
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(self.significant_digits());
        f.write_str(&self.to_decimal(digits))
    }
}

/// Working precision and outer cutoff of a numeric evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NumericConfig {
    pub precision_bits: u32,
    pub truncation_k: u64,
}

impl NumericConfig {
    pub const DEFAULT_PRECISION: u32 = 192;

    pub fn new(precision_bits: u32, truncation_k: u64) -> Result<Self> {
        let cfg = NumericConfig {
            precision_bits,
            truncation_k,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision_bits < 64 {
            return Err(Error::Numeric(format!(
                "precision {} bits is below the minimum of 64",
                self.precision_bits
            )));
        }
        if self.truncation_k < 10 {
            return Err(Error::Numeric(format!(
                "cutoff K = {} is below the minimum of 10",
                self.truncation_k
            )));
        }
        Ok(())
    }

    fn working_bits(&self) -> u32 {
        self.precision_bits + GUARD_BITS
    }
}

/// A truncated sum and its heuristic truncation error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericResult {
    pub value: Fixed,
    pub tail_estimate: Fixed,
}

impl NumericResult {
    /// Whether `other` lies within the tail estimate of this value.
    pub fn contains(&self, other: &Fixed) -> bool {
        self.value.sub(&other.with_bits(self.value.bits())).abs() <= self.tail_estimate
    }
}

/// pi by Machin's formula, 16 atan(1/5) - 4 atan(1/239).
pub fn pi_num(bits: u32) -> Fixed {
    let work = bits + GUARD_BITS;
    let atan_recip = |x: u64| -> Fixed {
        // sum_j (-1)^j / ((2j+1) x^{2j+1})
        let x2 = BigInt::from(x * x);
        let mut power = (BigInt::one() << work) / x;
        let mut sum = BigInt::zero();
        let mut j = 0u64;
        while !power.is_zero() {
            let term = &power / (2 * j + 1);
            if j.is_multiple_of(2) {
                sum += term;
            } else {
                sum -= term;
            }
            power /= &x2;
            j += 1;
        }
        Fixed {
            mantissa: sum,
            bits: work,
        }
    };
    atan_recip(5)
        .mul_int(16)
        .sub(&atan_recip(239).mul_int(4))
        .with_bits(bits)
}

/// `coeff * pi^p` to `bits` of precision, for any size of `p`.
pub fn pi_value_num(v: &PiValue, bits: u32) -> Fixed {
    let p = v.pi_power();
    let work = bits + GUARD_BITS + 32 - p.leading_zeros();
    let mut power = Fixed::from_int(1, work);
    let mut base = pi_num(work);
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            power = power.mul(&base);
        }
        base = base.mul(&base);
        e >>= 1;
    }
    let q = v.coeff();
    Fixed {
        mantissa: (power.mantissa * q.numer()).div_floor(q.denom()),
        bits: work,
    }
    .with_bits(bits)
}

/// Signed term `eps^k / k^s` for one index entry.
fn entry_term(entry: i64, k: u64, bits: u32) -> Fixed {
    let t = Fixed::recip_pow(k, entry.unsigned_abs() as u32, bits);
    if entry < 0 && k % 2 == 1 {
        t.neg()
    } else {
        t
    }
}

/// Nested sum over k_1 >= ... >= k_r (star) or k_1 > ... > k_r, k_1 <= K.
///
/// The inner partial sums are carried from the last entry outwards, one
/// pass over k per entry. The tail estimate is |f(K)| K / (s_1 - 1) for a
/// non-alternating first entry of size s_1 and |f(K)| when it alternates,
/// where f(K) is the last outer summand.
pub fn mzsv_num(index: &Index, star: bool, cfg: &NumericConfig) -> Result<NumericResult> {
    cfg.validate()?;
    if !index.is_convergent() {
        return Err(Error::Divergent(render_index(index)));
    }
    let bits = cfg.working_bits();
    let kmax = cfg.truncation_k as usize;
    if index.is_empty() {
        return Ok(NumericResult {
            value: Fixed::from_int(1, cfg.precision_bits),
            tail_estimate: Fixed::zero(cfg.precision_bits),
        });
    }
    // cumulative[k] = sum of the inner nested sum with its outermost index <= k
    let mut cumulative: Vec<Fixed> = vec![Fixed::from_int(1, bits); kmax + 1];
    let mut last_term = Fixed::zero(bits);
    for (depth, &entry) in index.entries().iter().enumerate().rev() {
        let innermost = depth + 1 == index.len();
        let mut next = vec![Fixed::zero(bits); kmax + 1];
        for k in 1..=kmax {
            let inner = if innermost {
                Fixed::from_int(1, bits)
            } else if star {
                cumulative[k].clone()
            } else {
                cumulative[k - 1].clone()
            };
            let term = if inner.is_zero() {
                inner
            } else {
                entry_term(entry, k as u64, bits).mul(&inner)
            };
            if k == kmax {
                last_term = term.clone();
            }
            next[k] = next[k - 1].add(&term);
        }
        cumulative = next;
    }
    let tail = tail_from_last(index.entries()[0], &last_term, cfg.truncation_k);
    Ok(NumericResult {
        value: cumulative[kmax].with_bits(cfg.precision_bits),
        tail_estimate: tail.with_bits(cfg.precision_bits),
    })
}

fn tail_from_last(first: i64, last_term: &Fixed, k: u64) -> Fixed {
    if first < 0 {
        last_term.abs()
    } else {
        last_term.abs().mul_int(k).div_int(first - 1)
    }
}

/// A(m, n, r): the sum of zeta(m s_1, ..., m s_r) with signs (-1)^{s_j} over
/// all compositions s_1 + ... + s_r = n.
///
/// Compositions sharing a suffix share inner sums: level j keeps one
/// cumulative array per partial weight t.
pub fn a_num(m: u32, n: u32, r: u32, cfg: &NumericConfig) -> Result<NumericResult> {
    cfg.validate()?;
    if m < 2 || r < 1 || n < r {
        return Err(Error::InvalidArgument(format!(
            "A(m, n, r) needs m >= 2 and n >= r >= 1, got ({m}, {n}, {r})"
        )));
    }
    let bits = cfg.working_bits();
    let kmax = cfg.truncation_k as usize;
    let (n, r) = (n as usize, r as usize);
    let entry = |s: usize| -> i64 {
        let e = (m as usize * s) as i64;
        if s % 2 == 1 {
            -e
        } else {
            e
        }
    };
    // cumulative[t][k]: nested sums over the entries after this level whose
    // parts add to t, with outermost index <= k
    let mut cumulative: Vec<Vec<Fixed>> = Vec::new();
    let mut tail = Fixed::zero(bits);
    for level in (0..r).rev() {
        let parts_after = r - 1 - level;
        let mut next = vec![vec![Fixed::zero(bits); kmax + 1]; n + 1];
        let min_t = parts_after + 1;
        let max_t = n - level;
        for t in min_t..=max_t {
            for k in 1..=kmax {
                let mut term = Fixed::zero(bits);
                for s in 1..=t - parts_after {
                    let inner = if parts_after == 0 {
                        if s != t {
                            continue;
                        }
                        Fixed::from_int(1, bits)
                    } else {
                        cumulative[t - s][k - 1].clone()
                    };
                    if inner.is_zero() {
                        continue;
                    }
                    let piece = entry_term(entry(s), k as u64, bits).mul(&inner);
                    if level == 0 && t == n && k == kmax {
                        tail = tail.add(&tail_from_last(entry(s), &piece, cfg.truncation_k));
                    }
                    term = term.add(&piece);
                }
                next[t][k] = next[t][k - 1].add(&term);
            }
        }
        cumulative = next;
    }
    Ok(NumericResult {
        value: cumulative[n][kmax].with_bits(cfg.precision_bits),
        tail_estimate: tail.with_bits(cfg.precision_bits),
    })
}

/// sum_{r=1}^{n} 2^r A(m, n, r), with the tail estimates added up.
pub fn weighted_a_sum(m: u32, n: u32, cfg: &NumericConfig) -> Result<NumericResult> {
    let bits = cfg.precision_bits;
    let mut value = Fixed::zero(bits);
    let mut tail = Fixed::zero(bits);
    for r in 1..=n {
        let a = a_num(m, n, r, cfg)?;
        value = value.add(&a.value.mul_int(BigInt::one() << r));
        tail = tail.add(&a.tail_estimate.mul_int(BigInt::one() << r));
    }
    Ok(NumericResult {
        value,
        tail_estimate: tail,
    })
}

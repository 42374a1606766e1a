//! Modified Bell polynomials and the partition-sum evaluation of
//! zeta*({{2}^{m-1},3,{2}^{m-1},1}^d) and its {2}^m-tailed variant.
//!
//! With x_k = 2 zetabar(2mk) for odd k and x_k = 0 for even k,
//! `exp(sum_k x_k z^{2mk} / k) = sum_n P_n z^{2mn}` is
//! `sum_d zeta*(plain_d) z^{4md} - sum_d zeta*(tail_d) z^{2m(2d+1)}`,
//! so the plain values are P_{2d} and the tailed ones are -P_{2d+1}.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    bernoulli, factorial_rational, integer, pow2, sign, zeta_even, PiValue, Rational,
};
use crate::series::GradedSeries;

/// Multiplicities `k_j` of the parts `parts[j]` in one partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTerm {
    pub multiplicities: Vec<usize>,
}

impl PartitionTerm {
    pub fn total(&self, parts: &[usize]) -> usize {
        self.multiplicities.iter().zip(parts).map(|(k, p)| k * p).sum()
    }
}

/// All ways to write `n` as a sum of `parts` (distinct, ascending), by
/// descent on the largest part; multiplicity vectors come out in
/// lexicographic order.
pub fn partitions(n: usize, parts: &[usize]) -> Vec<PartitionTerm> {
    fn descend(rest: usize, parts: &[usize], upto: usize, k: &mut Vec<usize>, out: &mut Vec<PartitionTerm>) {
        if upto == 0 {
            if rest == 0 {
                out.push(PartitionTerm {
                    multiplicities: k.clone(),
                });
            }
            return;
        }
        let part = parts[upto - 1];
        for count in 0..=rest / part {
            k[upto - 1] = count;
            descend(rest - count * part, parts, upto - 1, k, out);
        }
        k[upto - 1] = 0;
    }
    let mut out = Vec::new();
    let mut k = vec![0; parts.len()];
    descend(n, parts, parts.len(), &mut k, &mut out);
    out
}

/// Odd parts 1, 3, ..., 2j-1.
pub fn odd_parts(j: usize) -> Vec<usize> {
    (1..=j).map(|i| 2 * i - 1).collect()
}

/// Scalars that modified Bell polynomials can be evaluated over.
pub trait BellScalar: Clone {
    fn unit() -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, factor: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Result<Self>;
}

impl BellScalar for Rational {
    fn unit() -> Self {
        Rational::one()
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, factor: &Rational) -> Self {
        self * factor
    }
    fn plus(&self, other: &Self) -> Result<Self> {
        Ok(self + other)
    }
}

impl BellScalar for PiValue {
    fn unit() -> Self {
        PiValue::one()
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn scaled(&self, factor: &Rational) -> Self {
        self.scale(factor)
    }
    fn plus(&self, other: &Self) -> Result<Self> {
        self.checked_add(other)
    }
}

fn power<T: BellScalar>(x: &T, k: usize) -> T {
    (0..k).fold(T::unit(), |acc, _| acc.times(x))
}

/// P_n(x_1, ..., x_n) = sum over k_1 + 2k_2 + ... + n k_n = n of
/// prod_j (x_j / j)^{k_j} / k_j!
pub fn modified_bell<T: BellScalar>(n: usize, xs: &[T]) -> Result<T> {
    if n == 0 {
        return Ok(T::unit());
    }
    if xs.len() < n {
        return Err(Error::InvalidArgument(format!(
            "P_{n} needs {n} arguments, got {}",
            xs.len()
        )));
    }
    let parts: Vec<usize> = (1..=n).collect();
    let mut acc: Option<T> = None;
    for term in partitions(n, &parts) {
        let mut value = T::unit();
        let mut weight = Rational::one();
        for (j, &k) in term.multiplicities.iter().enumerate().filter(|(_, &k)| k > 0) {
            value = value.times(&power(&xs[j], k));
            weight /= integer((j + 1) as u64).pow(k as i32) * factorial_rational(k);
        }
        let value = value.scaled(&weight);
        acc = Some(match acc {
            None => value,
            Some(a) => a.plus(&value)?,
        });
    }
    Ok(acc.expect("n >= 1 has at least one partition"))
}

/// zetabar(s) = sum_k (-1)^k / k^s = (2^{1-s} - 1) zeta(s), for even s >= 2.
pub fn zeta_bar_even(s: usize) -> Result<PiValue> {
    if s < 2 || s % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "alternating zeta closed form needs an even weight >= 2, got {s}"
        )));
    }
    let factor = Rational::new(1.into(), pow2(s - 1)) - Rational::one();
    Ok(zeta_even(s / 2).scale(&factor))
}

/// x_1, ..., x_n with x_k = 2 zetabar(2mk) for odd k and 0 for even k.
pub fn bell_arguments(n: usize, m: usize) -> Result<Vec<PiValue>> {
    (1..=n)
        .map(|k| {
            if k % 2 == 0 {
                Ok(PiValue::zero((2 * m * k) as u32))
            } else {
                Ok(zeta_bar_even(2 * m * k)?.scale(&integer(2)))
            }
        })
        .collect()
}

fn require_block(m: usize) -> Result<()> {
    if m == 0 {
        Err(Error::InvalidArgument(
            "the Bell evaluation needs m >= 1 (blocks {2}^{m-1})".into(),
        ))
    } else {
        Ok(())
    }
}

/// (2 - 2^s) B_s / ((2j-1) s!) with s = 2m(2j-1)
fn odd_weight(m: usize, j: usize) -> Rational {
    let s = 2 * m * (2 * j - 1);
    integer(2 - pow2(s)) * bernoulli(s) / (integer((2 * j - 1) as u64) * factorial_rational(s))
}

fn odd_partition_sum(n: usize, m: usize) -> Rational {
    let max_j = n.div_ceil(2);
    let weights: Vec<Rational> = (1..=max_j).map(|j| odd_weight(m, j)).collect();
    partitions(n, &odd_parts(max_j))
        .iter()
        .map(|term| {
            term.multiplicities
                .iter()
                .zip(&weights)
                .filter(|(&k, _)| k > 0)
                .fold(Rational::one(), |acc, (&k, w)| {
                    acc * w.pow(k as i32) / factorial_rational(k)
                })
        })
        .sum()
}

/// zeta*({{2}^{m-1},3,{2}^{m-1},1}^d)
pub fn bell_plain(d: usize, m: usize) -> Result<PiValue> {
    require_block(m)?;
    Ok(PiValue::new(odd_partition_sum(2 * d, m), (4 * m * d) as u32))
}

/// zeta*({{2}^{m-1},3,{2}^{m-1},1}^d, {2}^m)
///
/// The odd-part sum over 2d+1 carries the factor (-1)^{m+1} of
/// x_{2j-1} / (2j-1) relative to its weights, and the value is -P_{2d+1}.
pub fn bell_tail(d: usize, m: usize) -> Result<PiValue> {
    require_block(m)?;
    let sum = odd_partition_sum(2 * d + 1, m) * integer(sign(m));
    Ok(PiValue::new(sum, (2 * m * (2 * d + 1)) as u32))
}

/// P_0, ..., P_n at x_k = 2 zetabar(2mk), read off exp of the logarithmic series.
pub fn bell_by_series(n: usize, m: usize) -> Result<Vec<PiValue>> {
    require_block(m)?;
    let step = 2 * m;
    let xs = bell_arguments(n, m)?;
    let log = GradedSeries::from_fn(step * n, |e| {
        if e == 0 || e % step != 0 {
            return Rational::zero();
        }
        let k = e / step;
        xs[k - 1].coeff() / integer(k as u64)
    });
    let exp = log.exp()?;
    (0..=n).map(|k| exp.term(step * k)).collect()
}

/// Closed form for d = 1: 2 pi^{4m} ((1 - 2^{2m-1}) B_{2m} / (2m)!)^2
pub fn corollary_d1(m: usize) -> Result<PiValue> {
    require_block(m)?;
    let inner = integer(1 - pow2(2 * m - 1)) * bernoulli(2 * m) / factorial_rational(2 * m);
    Ok(PiValue::new(integer(2) * &inner * &inner, (4 * m) as u32))
}

/// Closed form for d = 1:
/// (-1)^{m+1} pi^{6m}/3 ((2^{2m}-2)^3 B_{2m}^3 / (2 (2m)!^3) + (2^{6m}-2) B_{6m} / (6m)!)
pub fn corollary_d1_tail(m: usize) -> Result<PiValue> {
    require_block(m)?;
    let b2m = bernoulli(2 * m);
    let first = integer(pow2(2 * m) - BigInt::from(2)).pow(3) * &b2m * &b2m * &b2m
        / (integer(2) * factorial_rational(2 * m).pow(3));
    let second = integer(pow2(6 * m) - 2) * bernoulli(6 * m) / factorial_rational(6 * m);
    let printed = (first + second) / integer(3);
    Ok(PiValue::new(printed * integer(sign(m + 1)), (6 * m) as u32))
}

/// Closed form for d = 2:
/// (2-2^{2m}) B_{2m} pi^{8m} / (3 (2m)!) ((1-2^{2m-1})^3 B_{2m}^3/(2m)!^3 + (2-2^{6m}) B_{6m}/(6m)!)
pub fn corollary_d2(m: usize) -> Result<PiValue> {
    require_block(m)?;
    let b2m = bernoulli(2 * m);
    let f2m = factorial_rational(2 * m);
    let outer = integer(2 - pow2(2 * m)) * &b2m / (integer(3) * &f2m);
    let cube = integer(BigInt::one() - pow2(2 * m - 1)).pow(3) * &b2m * &b2m * &b2m / f2m.pow(3);
    let second = integer(2 - pow2(6 * m)) * bernoulli(6 * m) / factorial_rational(6 * m);
    Ok(PiValue::new(outer * (cube + second), (8 * m) as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{zeta_star_2_pow, zeta_star_31_pow, zeta_star_31_pow_2};
    use crate::exact::rational;

    fn pv(n: i64, d: i64, p: u32) -> PiValue {
        PiValue::new(rational(n, d), p)
    }

    #[test]
    fn bell_polynomials_low_order() {
        let xs = [rational(3, 1), rational(5, 7), rational(-2, 3)];
        assert_eq!(modified_bell::<Rational>(0, &[]).unwrap(), Rational::one());
        assert_eq!(modified_bell(1, &xs).unwrap(), rational(3, 1));
        // x1^2 / 2 + x2 / 2
        assert_eq!(modified_bell(2, &xs).unwrap(), rational(9, 2) + rational(5, 14));
        // x1^3/6 + x1 x2/2 + x3/3
        assert_eq!(
            modified_bell(3, &xs).unwrap(),
            rational(27, 6) + rational(15, 14) + rational(-2, 9)
        );
        assert!(modified_bell(3, &xs[..2]).is_err());
    }

    #[test]
    fn partition_counts() {
        // number of partitions of n into odd parts, n = 0..=16
        let expected = [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10, 12, 15, 18, 22, 27, 32];
        for (n, &count) in expected.iter().enumerate() {
            let terms = partitions(n, &odd_parts(n.div_ceil(2)));
            assert_eq!(terms.len(), count, "n = {n}");
            assert!(terms.iter().all(|t| t.total(&odd_parts(n.div_ceil(2))) == n));
        }
        let all: Vec<usize> = (1..=10).collect();
        assert_eq!(partitions(10, &all).len(), 42);
    }

    #[test]
    fn alternating_zeta() {
        assert_eq!(zeta_bar_even(2).unwrap(), pv(-1, 12, 2));
        assert_eq!(zeta_bar_even(4).unwrap(), pv(-7, 720, 4));
        assert!(zeta_bar_even(3).is_err());
        assert!(zeta_bar_even(0).is_err());
    }

    #[test]
    fn single_block_values() {
        assert_eq!(bell_plain(1, 1).unwrap(), pv(1, 72, 4));
        assert_eq!(bell_tail(1, 1).unwrap(), pv(11, 7560, 6));
        assert_eq!(corollary_d1(1).unwrap(), pv(1, 72, 4));
        assert_eq!(corollary_d1(2).unwrap(), pv(2 * 49, 720 * 720, 8));
        for d in 0..6 {
            assert_eq!(bell_plain(d, 1).unwrap(), zeta_star_31_pow(d));
            assert_eq!(bell_tail(d, 1).unwrap(), zeta_star_31_pow_2(d));
        }
        for m in 1..5 {
            assert_eq!(bell_plain(0, m).unwrap(), PiValue::one());
            assert_eq!(bell_tail(0, m).unwrap(), zeta_star_2_pow(m));
        }
        assert!(bell_plain(1, 0).is_err());
    }

    #[test]
    fn corollary_matches_partition_sums() {
        for m in 1..=4 {
            assert_eq!(corollary_d1(m).unwrap(), bell_plain(1, m).unwrap());
            assert_eq!(corollary_d1_tail(m).unwrap(), bell_tail(1, m).unwrap());
            assert_eq!(corollary_d2(m).unwrap(), bell_plain(2, m).unwrap());
        }
    }

    #[test]
    fn two_paths_agree() {
        for m in 1..=4 {
            for d in 0..=5 {
                let xs = bell_arguments(2 * d + 1, m).unwrap();
                let via_series = bell_by_series(2 * d + 1, m).unwrap();
                let plain = bell_plain(d, m).unwrap();
                let tail = bell_tail(d, m).unwrap();
                assert_eq!(plain, modified_bell(2 * d, &xs).unwrap());
                assert_eq!(plain, via_series[2 * d]);
                assert_eq!(tail, modified_bell(2 * d + 1, &xs).unwrap().neg());
                assert_eq!(tail, via_series[2 * d + 1].neg());
                assert!(plain.is_positive() && tail.is_positive(), "m={m} d={d}");
            }
        }
    }
}

//! Truncated power series in `z` whose `z^n` coefficient carries an
//! implicit factor `pi^n`.
//!
//! Only the rational parts `q_n` are stored. Because `pi^i * pi^j = pi^(i+j)`,
//! the Cauchy product, reciprocal, exp and log act on the `q_n` exactly as on
//! ordinary rational series.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial_rational, integer, pow2, sign, zeta_even, PiValue, Rational};

/// A power series known through `z^T`, with `q_n` standing for `q_n * pi^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    coeffs: Vec<Rational>,
}

impl GradedSeries {
    /// Series with the given coefficients; truncation order is `len - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least q_0");
        GradedSeries { coeffs }
    }

    pub fn from_fn(truncation: usize, f: impl FnMut(usize) -> Rational) -> Self {
        GradedSeries::new((0..=truncation).map(f).collect())
    }

    pub fn zero(truncation: usize) -> Self {
        GradedSeries::from_fn(truncation, |_| Rational::zero())
    }

    pub fn one(truncation: usize) -> Self {
        GradedSeries::from_fn(truncation, |n| {
            if n == 0 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Highest power of `z` whose coefficient is known.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&Rational> {
        self.coeffs.get(n).ok_or(Error::Truncation {
            requested: n,
            available: self.truncation(),
        })
    }

    /// The `z^n` term as `q_n * pi^n`.
    pub fn term(&self, n: usize) -> Result<PiValue> {
        Ok(PiValue::new(self.coeff(n)?.clone(), n as u32))
    }

    /// Drops coefficients above `z^t`; never extends.
    pub fn truncate(&self, t: usize) -> Result<GradedSeries> {
        self.coeff(t)?;
        Ok(GradedSeries::new(self.coeffs[..=t].to_vec()))
    }

    fn common_truncation(&self, other: &GradedSeries) -> usize {
        self.truncation().min(other.truncation())
    }

    pub fn add(&self, other: &GradedSeries) -> GradedSeries {
        GradedSeries::from_fn(self.common_truncation(other), |n| {
            &self.coeffs[n] + &other.coeffs[n]
        })
    }

    pub fn sub(&self, other: &GradedSeries) -> GradedSeries {
        GradedSeries::from_fn(self.common_truncation(other), |n| {
            &self.coeffs[n] - &other.coeffs[n]
        })
    }

    pub fn scale(&self, factor: &Rational) -> GradedSeries {
        GradedSeries::new(self.coeffs.iter().map(|q| q * factor).collect())
    }

    pub fn neg(&self) -> GradedSeries {
        GradedSeries::new(self.coeffs.iter().map(|q| -q).collect())
    }

    /// Cauchy product, truncated to the smaller of the two orders.
    pub fn mul(&self, other: &GradedSeries) -> GradedSeries {
        GradedSeries::from_fn(self.common_truncation(other), |n| {
            (0..=n)
                .filter(|&i| !self.coeffs[i].is_zero() && !other.coeffs[n - i].is_zero())
                .fold(Rational::zero(), |acc, i| {
                    acc + &self.coeffs[i] * &other.coeffs[n - i]
                })
        })
    }

    pub fn reciprocal(&self) -> Result<GradedSeries> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = a0.recip();
        let mut out: Vec<Rational> = vec![inv0.clone()];
        for n in 1..=self.truncation() {
            let s = (1..=n)
                .filter(|&i| !self.coeffs[i].is_zero())
                .fold(Rational::zero(), |acc, i| acc + &self.coeffs[i] * &out[n - i]);
            out.push(-s * &inv0);
        }
        Ok(GradedSeries::new(out))
    }

    /// `exp(a)` for `a` with zero constant term.
    pub fn exp(&self) -> Result<GradedSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm { expected: "0" });
        }
        // n e_n = sum_{k=1}^{n} k a_k e_{n-k}
        let mut out = vec![Rational::one()];
        for n in 1..=self.truncation() {
            let s = (1..=n)
                .filter(|&k| !self.coeffs[k].is_zero())
                .fold(Rational::zero(), |acc, k| {
                    acc + &self.coeffs[k] * &out[n - k] * integer(k as u64)
                });
            out.push(s / integer(n as u64));
        }
        Ok(GradedSeries::new(out))
    }

    /// `log(f)` for `f` with constant term 1.
    pub fn log(&self) -> Result<GradedSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm { expected: "1" });
        }
        // n l_n = n f_n - sum_{k=1}^{n-1} k l_k f_{n-k}
        let mut out = vec![Rational::zero()];
        for n in 1..=self.truncation() {
            let s = (1..n).fold(Rational::zero(), |acc, k| {
                acc + &out[k] * &self.coeffs[n - k] * integer(k as u64)
            });
            out.push(&self.coeffs[n] - s / integer(n as u64));
        }
        Ok(GradedSeries::new(out))
    }
}

/// `c / (pi z) + regular(z)`: a simple pole at the origin plus a graded series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleSeries {
    pub pole: Rational,
    pub regular: GradedSeries,
}

impl PoleSeries {
    /// Product with a series vanishing at the origin, which cancels the pole.
    /// Known through `z^min(T_reg, T_a - 1)`.
    pub fn mul_vanishing(&self, a: &GradedSeries) -> Result<GradedSeries> {
        if !a.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm { expected: "0" });
        }
        if a.truncation() == 0 {
            return Err(Error::Truncation {
                requested: 1,
                available: 0,
            });
        }
        let t = self.regular.truncation().min(a.truncation() - 1);
        let regular = self.regular.truncate(t)?.mul(&a.truncate(t)?);
        Ok(GradedSeries::from_fn(t, |n| {
            &regular.coeffs[n] + &self.pole * &a.coeffs[n + 1]
        }))
    }
}

fn zeta_coeff(n: usize) -> Rational {
    zeta_even(n).into_coeff()
}

/// tanh(pi z / 2) through `z^t`.
pub fn tanh_half(t: usize) -> GradedSeries {
    GradedSeries::from_fn(t, |k| {
        if k % 2 == 0 {
            return Rational::zero();
        }
        let n = k.div_ceil(2);
        let four_n = pow2(2 * n);
        integer((four_n.clone() - 1) * 4 * sign(n + 1)) * zeta_coeff(n) / integer(four_n)
    })
}

/// cot(pi z / 2) as `2 / (pi z)` plus its regular part through `z^t`.
pub fn cot_half(t: usize) -> PoleSeries {
    let regular = GradedSeries::from_fn(t, |k| {
        if k % 2 == 0 {
            return Rational::zero();
        }
        let n = k.div_ceil(2);
        integer(-4) * zeta_coeff(n) / integer(pow2(2 * n))
    });
    PoleSeries {
        pole: integer(-4) * zeta_coeff(0),
        regular,
    }
}

/// tanh(pi z / 2) * cot(pi z / 2) through `z^t`.
pub fn tanh_cot(t: usize) -> GradedSeries {
    cot_half(t)
        .mul_vanishing(&tanh_half(t + 1))
        .expect("tanh vanishes at the origin")
}

/// sin(pi z) / (pi z)
pub fn sin_norm(t: usize) -> GradedSeries {
    GradedSeries::from_fn(t, |k| {
        if k % 2 == 1 {
            Rational::zero()
        } else {
            integer(sign(k / 2)) / factorial_rational(k + 1)
        }
    })
}

/// sinh(pi z) / (pi z)
pub fn sinh_norm(t: usize) -> GradedSeries {
    GradedSeries::from_fn(t, |k| {
        if k % 2 == 1 {
            Rational::zero()
        } else {
            Rational::one() / factorial_rational(k + 1)
        }
    })
}

/// pi z / sin(pi z), the generating series of zeta*({2}^d).
pub fn zeta_star_2_series(t: usize) -> GradedSeries {
    sin_norm(t).reciprocal().expect("unit constant term")
}

/// zeta*({4}^d) read off 1 / (sin_norm * sinh_norm) computed through `z^t`.
pub fn zeta_star_4_series(d: usize, t: usize) -> Result<PiValue> {
    if 4 * d > t {
        return Err(Error::Truncation {
            requested: 4 * d,
            available: t,
        });
    }
    sin_norm(t).mul(&sinh_norm(t)).reciprocal()?.term(4 * d)
}

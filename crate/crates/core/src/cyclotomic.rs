//! Arithmetic in the cyclotomic field Q(zeta_N), and the root-of-unity
//! evaluation of zeta*({{2}^m,3,{2}^m,1}^d) and its {2}^{m+1}-tailed variant.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{bernoulli_over_factorial, integer, pow2, sign, PiValue, Rational};

fn poly_cache() -> &'static RwLock<HashMap<usize, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients of the N-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_poly(n: usize) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic polynomials are indexed from 1");
    if let Some(p) = poly_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = BigInt::from(-1);
    num[n] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = divide_monic(&num, &cyclotomic_poly(d));
    }
    let p = Arc::new(num);
    poly_cache().write().unwrap().insert(n, p.clone());
    p
}

fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let (dn, dd) = (num.len() - 1, den.len() - 1);
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = rem[i + dd].clone();
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Element of Q(zeta_N) as a polynomial in zeta_N of degree < deg Phi_N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloElement {
    order: usize,
    coeffs: Vec<Rational>,
}

impl CycloElement {
    pub fn zero(order: usize) -> Self {
        let degree = cyclotomic_poly(order).len() - 1;
        CycloElement {
            order,
            coeffs: vec![Rational::zero(); degree],
        }
    }

    pub fn from_rational(order: usize, q: Rational) -> Self {
        let mut e = CycloElement::zero(order);
        e.coeffs[0] = q;
        e
    }

    pub fn one(order: usize) -> Self {
        CycloElement::from_rational(order, Rational::one())
    }

    /// Reduces an arbitrary polynomial in zeta_N modulo Phi_N.
    pub fn from_poly(order: usize, mut poly: Vec<Rational>) -> Self {
        let phi = cyclotomic_poly(order);
        let degree = phi.len() - 1;
        for top in (degree..poly.len()).rev() {
            let c = std::mem::take(&mut poly[top]);
            if c.is_zero() {
                continue;
            }
            for (j, pj) in phi.iter().enumerate().take(degree) {
                if !pj.is_zero() {
                    poly[top - degree + j] -= &c * integer(pj.clone());
                }
            }
        }
        poly.resize(degree, Rational::zero());
        CycloElement {
            order,
            coeffs: poly,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn check_order(&self, other: &CycloElement) {
        assert_eq!(self.order, other.order, "elements of different fields");
    }

    pub fn add(&self, other: &CycloElement) -> CycloElement {
        self.check_order(other);
        CycloElement {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &CycloElement) -> CycloElement {
        self.check_order(other);
        CycloElement {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> CycloElement {
        CycloElement {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn mul(&self, other: &CycloElement) -> CycloElement {
        self.check_order(other);
        let n = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                prod[i + j] += a * b;
            }
        }
        CycloElement::from_poly(self.order, prod)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    /// The rational value, or the first offending coefficient.
    pub fn to_rational(&self) -> Result<Rational> {
        match self.coeffs.iter().enumerate().skip(1).find(|(_, c)| !c.is_zero()) {
            Some((degree, c)) => Err(Error::RationalityViolation {
                degree,
                value: c.to_string(),
            }),
            None => Ok(self.coeffs[0].clone()),
        }
    }
}

/// zeta_N^e, with `e` taken modulo N.
pub fn cyclo_root_pow(order: usize, e: i64) -> CycloElement {
    let e = e.rem_euclid(order as i64) as usize;
    let mut poly = vec![Rational::zero(); e + 1];
    poly[e] = Rational::one();
    CycloElement::from_poly(order, poly)
}

/// sum_{l=0}^{n} (4^{l+1} - 1) b_{l+1} b_{n-l} zeta^l, with b_j = B_{2j}/(2j)!
fn inner_factor(order: usize, n: usize) -> CycloElement {
    let poly: Vec<Rational> = (0..=n)
        .map(|l| {
            integer(pow2(2 * l + 2) - 1)
                * bernoulli_over_factorial(l + 1)
                * bernoulli_over_factorial(n - l)
        })
        .collect();
    CycloElement::from_poly(order, poly)
}

/// Sum over compositions n_0 + ... + n_m = total of
/// prod_k zeta^{2 k n_k} F(n_k), by dynamic programming on partial sums.
fn composition_sum(m: usize, total: usize) -> CycloElement {
    let order = 2 * (m + 1);
    let factors: Vec<CycloElement> = (0..=total).map(|n| inner_factor(order, n)).collect();
    let mut partial = vec![CycloElement::zero(order); total + 1];
    partial[0] = CycloElement::one(order);
    for k in 0..=m {
        let mut next = vec![CycloElement::zero(order); total + 1];
        for (s, acc) in partial.iter().enumerate() {
            if acc.coeffs.iter().all(Zero::is_zero) {
                continue;
            }
            // the last part must land exactly on `total`
            let range = if k == m { total - s..=total - s } else { 0..=total - s };
            for n in range {
                let twist = cyclo_root_pow(order, (2 * k * n) as i64);
                let term = acc.mul(&factors[n]).mul(&twist);
                next[s + n] = next[s + n].add(&term);
            }
        }
        partial = next;
    }
    partial.swap_remove(total)
}

/// zeta*({{2}^m,3,{2}^m,1}^d)
pub fn t7_plain(d: usize, m: usize) -> Result<PiValue> {
    let power = (4 * d * (m + 1)) as u32;
    if d == 0 {
        return Ok(PiValue::one());
    }
    let sum = composition_sum(m, 2 * (m + 1) * d).to_rational()?;
    Ok(PiValue::new(sum * integer(pow2(2 * m + 2)), power))
}

/// zeta*({{2}^m,3,{2}^m,1}^d, {2}^{m+1}); at d = 0 this is zeta*({2}^{m+1}).
pub fn t7_tail(d: usize, m: usize) -> Result<PiValue> {
    let power = ((4 * d + 2) * (m + 1)) as u32;
    let sum = composition_sum(m, (m + 1) * (2 * d + 1)).to_rational()?;
    let scale = integer(pow2(2 * m + 2) * sign(m));
    Ok(PiValue::new(sum * scale, power))
}

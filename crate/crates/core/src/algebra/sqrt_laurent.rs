//! Laurent polynomials in a formal square root of `ξ` with coefficients in
//! `ℚ[a, b]`.
//!
//! Exponents are stored as integers in units of `ξ^{1/2}`, so `ξ` itself has
//! exponent 2 and `ξ^{-1/2}` has exponent -1. Specialization never extracts a
//! square root of a non-square rational.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::BivariatePolynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SqrtLaurent {
    terms: BTreeMap<i64, BivariatePolynomial>,
}

impl SqrtLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(0, BivariatePolynomial::constant(c))
    }

    /// `coeff * ξ^{half_exp / 2}`.
    pub fn term(half_exp: i64, coeff: BivariatePolynomial) -> Self {
        let mut s = Self::zero();
        s.add_term(half_exp, coeff);
        s
    }

    /// `ξ^{half_exp / 2}` with coefficient 1.
    pub fn xi_half_power(half_exp: i64) -> Self {
        Self::term(half_exp, BivariatePolynomial::one())
    }

    /// The symbol `a`.
    pub fn a() -> Self {
        Self::term(0, BivariatePolynomial::x())
    }

    /// The symbol `b`.
    pub fn b() -> Self {
        Self::term(0, BivariatePolynomial::y())
    }

    fn add_term(&mut self, half_exp: i64, coeff: BivariatePolynomial) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(half_exp).or_default();
        *entry = &*entry + &coeff;
        if entry.is_zero() {
            self.terms.remove(&half_exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `ξ^{half_exp / 2}` as a polynomial in `(a, b)`.
    pub fn coeff(&self, half_exp: i64) -> BivariatePolynomial {
        self.terms.get(&half_exp).cloned().unwrap_or_default()
    }

    pub fn half_exponents(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    /// True when every surviving exponent is an integer power of `ξ`.
    pub fn is_xi_integral(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for (&e, c) in &self.terms {
            out.add_term(e, c.scale(s));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact value at `(a, b, ξ) = (a0, b0, xi0)`.
    ///
    /// Odd half-powers are allowed only when `xi0` is the square of a
    /// rational, or when their combined contribution vanishes at `(a0, b0)`.
    pub fn specialize(&self, a0: &Rational, b0: &Rational, xi0: &Rational) -> Result<Rational> {
        assert!(!xi0.is_zero(), "cannot specialize at xi = 0");
        let mut even = Rational::zero();
        let mut odd: Vec<(i64, Rational)> = Vec::new();
        for (&e, c) in &self.terms {
            let v = c.evaluate(a0, b0);
            if v.is_zero() {
                continue;
            }
            if e % 2 == 0 {
                even += v * xi0.pow((e / 2) as i32);
            } else {
                odd.push((e, v));
            }
        }
        if odd.is_empty() {
            return Ok(even);
        }
        if let Some(root) = xi0.sqrt_exact() {
            let odd_sum: Rational = odd.iter().map(|(e, v)| v * root.pow(*e as i32)).sum();
            return Ok(even + odd_sum);
        }
        // sqrt(xi0) is irrational: the odd part is sqrt(xi0) * r for a rational r.
        let r: Rational = odd.iter().map(|(e, v)| v * xi0.pow(((e - 1) / 2) as i32)).sum();
        if r.is_zero() {
            Ok(even)
        } else {
            Err(Error::OddHalfPower { xi: xi0.clone() })
        }
    }
}

/// Exact value of `g` at `(a0, b0, xi0)`.
pub fn sqrt_laurent_specialize(
    g: &SqrtLaurent,
    a0: &Rational,
    b0: &Rational,
    xi0: &Rational,
) -> Result<Rational> {
    g.specialize(a0, b0, xi0)
}

impl Add for &SqrtLaurent {
    type Output = SqrtLaurent;
    fn add(self, rhs: &SqrtLaurent) -> SqrtLaurent {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Add for SqrtLaurent {
    type Output = SqrtLaurent;
    fn add(self, rhs: SqrtLaurent) -> SqrtLaurent {
        &self + &rhs
    }
}

impl Sub for &SqrtLaurent {
    type Output = SqrtLaurent;
    fn sub(self, rhs: &SqrtLaurent) -> SqrtLaurent {
        self + &(-rhs.clone())
    }
}

impl Sub for SqrtLaurent {
    type Output = SqrtLaurent;
    fn sub(self, rhs: SqrtLaurent) -> SqrtLaurent {
        &self - &rhs
    }
}

impl Mul for &SqrtLaurent {
    type Output = SqrtLaurent;
    fn mul(self, rhs: &SqrtLaurent) -> SqrtLaurent {
        let mut out = SqrtLaurent::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for SqrtLaurent {
    type Output = SqrtLaurent;
    fn mul(self, rhs: SqrtLaurent) -> SqrtLaurent {
        &self * &rhs
    }
}

impl Neg for SqrtLaurent {
    type Output = SqrtLaurent;
    fn neg(self) -> SqrtLaurent {
        self.scale(&Rational::from(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    fn xi() -> SqrtLaurent {
        SqrtLaurent::xi_half_power(2)
    }

    #[test]
    fn specialization_examples() {
        let z = Rational::zero();
        assert_eq!(xi().specialize(&z, &z, &q(3, 1)).unwrap(), q(3, 1));
        let g = (SqrtLaurent::xi_half_power(1) - SqrtLaurent::xi_half_power(-1)).pow(2);
        assert!(g.is_xi_integral());
        assert_eq!(g.specialize(&z, &z, &q(4, 1)).unwrap(), q(9, 4));
        let bare = SqrtLaurent::xi_half_power(1);
        assert!(matches!(
            bare.specialize(&z, &z, &q(3, 1)),
            Err(Error::OddHalfPower { .. })
        ));
        // a rational square makes odd powers harmless
        assert_eq!(bare.specialize(&z, &z, &q(9, 4)).unwrap(), q(3, 2));
    }

    #[test]
    fn odd_part_vanishing_at_the_point_is_fine() {
        // (a - 1) * xi^{1/2} + b at a = 1
        let g = &(&SqrtLaurent::a() - &SqrtLaurent::one()) * &SqrtLaurent::xi_half_power(1)
            + SqrtLaurent::b();
        assert_eq!(g.specialize(&q(1, 1), &q(5, 1), &q(2, 1)).unwrap(), q(5, 1));
        assert!(g.specialize(&q(2, 1), &q(5, 1), &q(2, 1)).is_err());
    }

    #[test]
    fn exponents_add_under_multiplication() {
        let p = SqrtLaurent::xi_half_power(3) * SqrtLaurent::xi_half_power(-5);
        assert_eq!(p.half_exponents().collect::<Vec<_>>(), vec![-2]);
        assert_eq!(
            p.specialize(&Rational::zero(), &Rational::zero(), &q(5, 1)).unwrap(),
            q(1, 5)
        );
    }
}

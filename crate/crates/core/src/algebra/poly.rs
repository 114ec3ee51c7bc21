//! Exact polynomials in two commuting variables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rational::Rational;

/// A polynomial `sum c_{ij} x^i y^j` with rational coefficients.
///
/// The same type carries the Zhu bimodule classes in `(x, y)` and the
/// `(a, b)` coefficients of [`SqrtLaurent`](super::SqrtLaurent).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    /// Builds `sum c x^i y^j` from `(i, j, c)` triples; repeated exponents add.
    pub fn from_terms<I: IntoIterator<Item = (u32, u32, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// The part of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|&(i, j, _)| i + j == d)
                .map(|(i, j, c)| (i, j, c.clone())),
        )
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms().map(|(i, j, c)| (i, j, c * s)))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn evaluate(&self, x0: &Rational, y0: &Rational) -> Rational {
        let mut total = Rational::zero();
        for (i, j, c) in self.terms() {
            total += c * &x0.pow(i as i32) * y0.pow(j as i32);
        }
        total
    }

    /// Renders with the given variable names, highest total degree first.
    pub fn display_with(&self, xv: &str, yv: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut items: Vec<(u32, u32, &Rational)> = self.terms().collect();
        items.sort_by_key(|a| std::cmp::Reverse((a.0 + a.1, a.0)));
        let mut out = String::new();
        for (k, (i, j, c)) in items.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            for (var, e) in [(xv, i), (yv, j)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    e => factors.push(format!("{var}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Shorthand for `x`.
pub fn x() -> BivariatePolynomial {
    BivariatePolynomial::x()
}

/// Shorthand for `y`.
pub fn y() -> BivariatePolynomial {
    BivariatePolynomial::y()
}

/// Exact value of `f` at `(x0, y0)`.
pub fn bivariate_evaluate(f: &BivariatePolynomial, x0: &Rational, y0: &Rational) -> Rational {
    f.evaluate(x0, y0)
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x", "y"))
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (i, j, c) in rhs.terms() {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Add for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        &self + &rhs
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (i, j, c) in rhs.terms() {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Sub for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        &self - &rhs
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (i1, j1, c1) in self.terms() {
            for (i2, j2, c2) in rhs.terms() {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        &self * &rhs
    }
}

impl Neg for BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        self.scale(&Rational::from(-1))
    }
}

impl From<Rational> for BivariatePolynomial {
    fn from(c: Rational) -> Self {
        BivariatePolynomial::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    fn c(v: Rational) -> BivariatePolynomial {
        BivariatePolynomial::constant(v)
    }

    #[test]
    fn evaluation_examples() {
        let f = x() - y();
        assert_eq!(f.evaluate(&q(1, 2), &q(1, 2)), q(0, 1));
        assert_eq!(f.pow(2).evaluate(&q(1, 1), &q(0, 1)), q(1, 1));
        // 2y - x + h with h = -1/8 at (0, -1/8)
        let g = y().scale(&q(2, 1)) - x() + c(q(-1, 8));
        assert_eq!(bivariate_evaluate(&g, &q(0, 1), &q(-1, 8)), q(-3, 8));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let f = x() + y();
        let g = &f - &f;
        assert!(g.is_zero());
        assert_eq!(g.total_degree(), None);
        assert_eq!(g.terms().count(), 0);
    }

    #[test]
    fn degree_and_homogeneous_part() {
        let f = (x() - y()).pow(3) + x().scale(&q(5, 1)) + c(q(2, 1));
        assert_eq!(f.total_degree(), Some(3));
        assert_eq!(f.homogeneous_part(3), (x() - y()).pow(3));
        assert_eq!(f.coeff(2, 1), q(-3, 1));
    }

    #[test]
    fn display_is_exact() {
        let f = x() - y() + c(q(-7, 8));
        assert_eq!(f.to_string(), "x - y - 7/8");
        assert_eq!(BivariatePolynomial::zero().to_string(), "0");
    }
}

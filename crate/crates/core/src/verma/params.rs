//! Central charges, highest weights and module labels.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Central charge and highest weight of a Verma module `M(c, h)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HighestWeightParams {
    pub c: Rational,
    pub h: Rational,
}

impl HighestWeightParams {
    pub fn new(c: Rational, h: Rational) -> Self {
        HighestWeightParams { c, h }
    }
}

/// Nonzero rational parameter of the `c(t)` family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TParam(Rational);

impl TParam {
    pub fn new(t: Rational) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::InvalidInput("t must be nonzero".into()));
        }
        Ok(TParam(t))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

/// `c_{p,q} = 13 - 6(q/p + p/q)`.
pub fn central_charge_pq(p: u32, q: u32) -> Rational {
    assert!(p >= 1 && q >= 1, "p and q must be positive");
    let p = Rational::from(p);
    let q = Rational::from(q);
    Rational::from(13) - Rational::from(6) * (&q / &p + &p / &q)
}

/// `c(t) = 13 - 6t - 6/t`.
pub fn central_charge_t(t: &TParam) -> Rational {
    let t = t.value();
    Rational::from(13) - Rational::from(6) * t - Rational::from(6) * t.recip()
}

/// `h_{p,q;r,s} = ((sp - rq)^2 - (p - q)^2) / 4pq`; indices outside the Kac
/// box are evaluated as written.
pub fn kac_weight_pq(p: u32, q: u32, r: i64, s: i64) -> Rational {
    assert!(p >= 1 && q >= 1, "p and q must be positive");
    let (p, q) = (p as i64, q as i64);
    let a = s * p - r * q;
    let b = p - q;
    Rational::new(a * a - b * b, 4 * p * q)
}

/// `h_{i,s} = ((iq - s)^2 - (q - 1)^2) / 4q`, the weights at `c_{1,q}`.
///
/// Accepts any integers `i`, `s` so that out-of-box indices can be evaluated.
pub fn weight_c1q(q: u32, i: i64, s: i64) -> Rational {
    assert!(q >= 1, "q must be positive");
    let q = q as i64;
    let a = i * q - s;
    let b = q - 1;
    Rational::new(a * a - b * b, 4 * q)
}

/// `h_{α,β}(t) = (α²-1)t/4 - (αβ-1)/2 + (β²-1)/(4t)`.
pub fn weight_alpha_beta_t(alpha: u32, beta: u32, t: &TParam) -> Rational {
    let (a, b) = (alpha as i64, beta as i64);
    let t = t.value();
    Rational::new(a * a - 1, 4) * t - Rational::new(a * b - 1, 2)
        + Rational::new(b * b - 1, 4) * t.recip()
}

/// Whether `M(c_{1,q}, h)` is irreducible, i.e. `4qh + (q-1)^2` is not the
/// square of an integer `iq - s` with `i > 0`, `0 < s <= q`.
///
/// Every non-negative integer has the form `iq - s`, so the test reduces to
/// "is `4qh + (q-1)^2` a perfect square of an integer".
pub fn is_irreducible_verma_c1q(q: u32, h: &Rational) -> bool {
    assert!(q >= 1, "q must be positive");
    let qq = Rational::from(q);
    let disc = Rational::from(4) * &qq * h + Rational::from((q as i64 - 1).pow(2));
    match disc.sqrt_exact() {
        Some(root) => !root.is_integer(),
        None => true,
    }
}

/// Canonical `(i', s')` with `i' > 0`, `0 < s' <= q` and `|i'q - s'| = |iq - s|`.
pub fn canonicalize_label_c1q(q: u32, i: i64, s: i64) -> Option<(u32, u32)> {
    if q == 0 {
        return None;
    }
    let q = q as i64;
    let m = (i * q - s).abs();
    let (quot, _) = m.div_rem(&q);
    let i2 = quot + 1;
    let s2 = i2 * q - m;
    debug_assert!(s2 > 0 && s2 <= q);
    Some((i2 as u32, s2 as u32))
}

/// A module for the Virasoro vertex operator algebra, described by its
/// parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ModuleLabel {
    /// `L(c_{p,q}, h_{p,q;r,s})` with `(p,q) = 1`, `p,q > 1`, `0<r<p`, `0<s<q`.
    MinimalIrreducible { p: u32, q: u32, r: u32, s: u32 },
    /// `L(c_{1,q}, h_{i,s})` with `q >= 1`, `i > 0`, `0 < s <= q`.
    C1qIrreducible { q: u32, i: u32, s: u32 },
    /// `M(c, h)`.
    GenericVerma { c: Rational, h: Rational },
}

impl ModuleLabel {
    pub fn minimal(p: u32, q: u32, r: u32, s: u32) -> Result<Self> {
        if p < 2 || q < 2 || p.gcd(&q) != 1 {
            return Err(Error::InvalidLabel(format!(
                "minimal model needs coprime p, q > 1, got ({p},{q})"
            )));
        }
        if r == 0 || r >= p || s == 0 || s >= q {
            return Err(Error::InvalidLabel(format!(
                "({r},{s}) is outside the Kac box 0<r<{p}, 0<s<{q}"
            )));
        }
        Ok(ModuleLabel::MinimalIrreducible { p, q, r, s })
    }

    pub fn c1q(q: u32, i: u32, s: u32) -> Result<Self> {
        if q == 0 || i == 0 || s == 0 || s > q {
            return Err(Error::InvalidLabel(format!(
                "c_(1,q) label needs q >= 1, i > 0, 0 < s <= q, got q={q}, ({i},{s})"
            )));
        }
        Ok(ModuleLabel::C1qIrreducible { q, i, s })
    }

    pub fn verma(c: Rational, h: Rational) -> Self {
        ModuleLabel::GenericVerma { c, h }
    }

    pub fn central_charge(&self) -> Rational {
        match self {
            ModuleLabel::MinimalIrreducible { p, q, .. } => central_charge_pq(*p, *q),
            ModuleLabel::C1qIrreducible { q, .. } => central_charge_pq(1, *q),
            ModuleLabel::GenericVerma { c, .. } => c.clone(),
        }
    }

    pub fn weight(&self) -> Rational {
        match self {
            ModuleLabel::MinimalIrreducible { p, q, r, s } => {
                kac_weight_pq(*p, *q, *r as i64, *s as i64)
            }
            ModuleLabel::C1qIrreducible { q, i, s } => weight_c1q(*q, *i as i64, *s as i64),
            ModuleLabel::GenericVerma { h, .. } => h.clone(),
        }
    }

    pub fn params(&self) -> HighestWeightParams {
        HighestWeightParams::new(self.central_charge(), self.weight())
    }

    /// Grades of the singular vectors generating the maximal submodule;
    /// empty for a generic Verma module.
    pub fn singular_grades(&self) -> Vec<u32> {
        match self {
            ModuleLabel::MinimalIrreducible { p, q, r, s } => vec![r * s, (p - r) * (q - s)],
            ModuleLabel::C1qIrreducible { i, s, .. } => vec![i * s],
            ModuleLabel::GenericVerma { .. } => Vec::new(),
        }
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleLabel::MinimalIrreducible { p, q, r, s } => {
                write!(f, "L(c_({p},{q}), h_({r},{s}))")
            }
            ModuleLabel::C1qIrreducible { q, i, s } => write!(f, "L(c_(1,{q}), h_({i},{s}))"),
            ModuleLabel::GenericVerma { c, h } => write!(f, "M({c}, {h})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn t(v: Rational) -> TParam {
        TParam::new(v).unwrap()
    }

    #[test]
    fn central_charges() {
        assert_eq!(central_charge_pq(2, 3), q(0, 1));
        assert_eq!(central_charge_pq(4, 3), q(1, 2));
        assert_eq!(central_charge_pq(1, 2), q(-2, 1));
        assert_eq!(central_charge_pq(1, 3), q(-7, 1));
        assert_eq!(central_charge_t(&t(q(1, 1))), q(1, 1));
        assert_eq!(central_charge_t(&t(q(3, 2))), q(0, 1));
        assert_eq!(central_charge_t(&t(q(2, 1))), q(-2, 1));
        assert!(TParam::new(q(0, 1)).is_err());
    }

    #[test]
    fn weights() {
        assert_eq!(kac_weight_pq(5, 7, 1, 1), q(0, 1));
        assert_eq!(kac_weight_pq(4, 3, 2, 2), q(1, 16));
        assert_eq!(kac_weight_pq(4, 3, 3, 1), q(1, 2));
        assert_eq!(weight_c1q(2, 1, 2), q(-1, 8));
        assert_eq!(weight_c1q(2, 2, 1), q(1, 1));
        assert_eq!(weight_c1q(3, 1, 3), q(-1, 3));
        assert_eq!(weight_alpha_beta_t(1, 1, &t(q(7, 3))), q(0, 1));
        assert_eq!(weight_alpha_beta_t(1, 2, &t(q(2, 1))), q(-1, 8));
        // t = 3/2 is (p, q) = (2, 3)
        assert_eq!(weight_alpha_beta_t(2, 2, &t(q(3, 2))), q(1, 8));
        assert_eq!(weight_alpha_beta_t(2, 2, &t(q(3, 2))), kac_weight_pq(2, 3, 2, 2));
    }

    #[test]
    fn parametrization_coherence() {
        for p in 1..=8u32 {
            for qq in 1..=8u32 {
                let tp = t(q(qq as i64, p as i64));
                assert_eq!(central_charge_t(&tp), central_charge_pq(p, qq));
                for a in 1..=5u32 {
                    for b in 1..=5u32 {
                        assert_eq!(
                            weight_alpha_beta_t(a, b, &tp),
                            kac_weight_pq(p, qq, a as i64, b as i64)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn irreducibility() {
        assert!(!is_irreducible_verma_c1q(2, &q(0, 1)));
        assert!(is_irreducible_verma_c1q(2, &q(-3, 32)));
        assert!(!is_irreducible_verma_c1q(2, &q(3, 1)));
        assert!(is_irreducible_verma_c1q(2, &q(1, 8)));
        // every canonical weight is reducible
        for qq in 1..=5u32 {
            for i in 1..=6i64 {
                for s in 1..=qq as i64 {
                    assert!(!is_irreducible_verma_c1q(qq, &weight_c1q(qq, i, s)));
                }
            }
        }
    }

    #[test]
    fn canonical_labels() {
        assert_eq!(canonicalize_label_c1q(2, 1, 3), Some((1, 1)));
        assert_eq!(canonicalize_label_c1q(2, 1, 1), Some((1, 1)));
        assert_eq!(canonicalize_label_c1q(3, 2, 5), Some((1, 2)));
        assert_eq!(canonicalize_label_c1q(0, 2, 5), None);
        for qq in 1..=5u32 {
            for i in -6..=6i64 {
                for s in -6..=8i64 {
                    let (i2, s2) = canonicalize_label_c1q(qq, i, s).unwrap();
                    assert!(i2 > 0 && s2 > 0 && s2 <= qq);
                    assert_eq!(weight_c1q(qq, i2 as i64, s2 as i64), weight_c1q(qq, i, s));
                }
            }
        }
    }

    #[test]
    fn label_validation() {
        assert!(ModuleLabel::minimal(4, 3, 2, 2).is_ok());
        assert!(ModuleLabel::minimal(4, 2, 1, 1).is_err());
        assert!(ModuleLabel::minimal(4, 3, 4, 1).is_err());
        assert!(ModuleLabel::c1q(2, 1, 2).is_ok());
        assert!(ModuleLabel::c1q(2, 1, 3).is_err());
        assert!(ModuleLabel::c1q(2, 0, 1).is_err());
        assert_eq!(ModuleLabel::minimal(4, 3, 2, 2).unwrap().singular_grades(), vec![4, 2]);
        assert_eq!(ModuleLabel::c1q(3, 2, 3).unwrap().singular_grades(), vec![6]);
    }
}

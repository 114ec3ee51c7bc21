//! Closed-form fusion rules and the cross-route validation harness.

use std::collections::BTreeSet;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::three_point::null_decoupling;
use crate::verma::{canonicalize_label_c1q, is_irreducible_verma_c1q, weight_c1q, ModuleLabel};
use crate::zhu::fz_upper_bound;

/// `A_{m,n} = {m+n-1, m+n-3, ..., |m-n|+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ASet {
    pub m: u32,
    pub n: u32,
    /// Descending.
    pub elements: Vec<u32>,
}

impl ASet {
    pub fn contains(&self, k: u32) -> bool {
        self.elements.contains(&k)
    }

    /// Elements in ascending order.
    pub fn ascending(&self) -> impl Iterator<Item = u32> + '_ {
        self.elements.iter().rev().copied()
    }
}

pub fn a_set(m: u32, n: u32) -> ASet {
    assert!(m >= 1 && n >= 1, "A-set indices must be positive");
    let lo = m.abs_diff(n) + 1;
    let hi = m + n - 1;
    ASet {
        m,
        n,
        elements: (lo..=hi).rev().step_by(2).collect(),
    }
}

/// A fusion rule value with an optional certificate `(i, s)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionAnswer {
    #[serde(rename = "N")]
    pub value: u8,
    pub witness: Option<(u32, u32)>,
}

impl FusionAnswer {
    fn from_witness(witness: Option<(u32, u32)>) -> Self {
        FusionAnswer {
            value: witness.is_some() as u8,
            witness,
        }
    }
}

fn check_c1q(q: u32, (i, s): (u32, u32)) -> Result<()> {
    ModuleLabel::c1q(q, i, s).map(|_| ())
}

/// `N^{(i3,s3)}_{(i1,s1),(i2,s2)}` for `L(c_{1,q}, 0)`.
///
/// The value is 1 iff `h_{i3,s3} = h_{i,s}` for some `i ∈ A_{i1,i2}`,
/// `s ∈ A_{s1,s2}`; weights are compared, not labels, since `s` may exceed
/// `q`. The witness is the first hit in ascending `(i, s)` order.
pub fn fusion_c1q(q: u32, w1: (u32, u32), w2: (u32, u32), w3: (u32, u32)) -> Result<FusionAnswer> {
    for w in [w1, w2, w3] {
        check_c1q(q, w)?;
    }
    let target = weight_c1q(q, w3.0 as i64, w3.1 as i64);
    let ai = a_set(w1.0, w2.0);
    let a_s = a_set(w1.1, w2.1);
    let witness = ai.ascending().find_map(|i| {
        a_s.ascending()
            .find(|&s| weight_c1q(q, i as i64, s as i64) == target)
            .map(|s| (i, s))
    });
    Ok(FusionAnswer::from_witness(witness))
}

/// Canonical labels of `L(c_{1,q}, h_{i1,s1}) ⊠ L(c_{1,q}, h_{i2,s2})`.
///
/// Distinct `(i, s)` pairs with equal weight collapse, since every fusion
/// rule is at most 1.
pub fn fusion_product_c1q(q: u32, w1: (u32, u32), w2: (u32, u32)) -> Result<BTreeSet<(u32, u32)>> {
    check_c1q(q, w1)?;
    check_c1q(q, w2)?;
    let ai = a_set(w1.0, w2.0);
    let a_s = a_set(w1.1, w2.1);
    Ok(ai
        .ascending()
        .flat_map(|i| a_s.ascending().map(move |s| (i, s)))
        .filter_map(|(i, s)| canonicalize_label_c1q(q, i as i64, s as i64))
        .collect())
}

fn truncated_su2(a: u32, b: u32, c: u32, level_bound: u32) -> bool {
    a_set(a, b).contains(c) && a + b + c < 2 * level_bound
}

/// Fusion rule of the minimal model `L(c_{p,q}, 0)` in Kac labels.
///
/// `(r3, s3)` is allowed iff `r3 ∈ A_{r1,r2}` with `r3 <= 2p-1-r1-r2` and
/// `s3 ∈ A_{s1,s2}` with `s3 <= 2q-1-s1-s2`, for either representative of
/// `(r3, s3) ~ (p-r3, q-s3)`. Slots 1 and 2 are first put in canonical form.
pub fn fusion_minimal(p: u32, q: u32, w1: (u32, u32), w2: (u32, u32), w3: (u32, u32)) -> Result<u8> {
    for &(r, s) in &[w1, w2, w3] {
        ModuleLabel::minimal(p, q, r, s)?;
    }
    let canon = |(r, s): (u32, u32)| std::cmp::min((r, s), (p - r, q - s));
    let (r1, s1) = canon(w1);
    let (r2, s2) = canon(w2);
    let allowed = [w3, (p - w3.0, q - w3.1)].into_iter().any(|(r3, s3)| {
        truncated_su2(r1, r2, r3, p) && truncated_su2(s1, s2, s3, q)
    });
    Ok(allowed as u8)
}

/// `s'` roots for `h = (s'^2 - (q-1)^2) / 4q`.
enum SPrime {
    Rational(Rational),
    Irrational,
}

fn s_prime(q: u32, h: &Rational) -> SPrime {
    let sq = Rational::from(4 * q as i64) * h + Rational::from((q as i64 - 1).pow(2));
    match sq.sqrt_exact() {
        Some(r) => SPrime::Rational(r),
        None => SPrime::Irrational,
    }
}

fn symmetric_range(n: u32) -> impl Iterator<Item = i64> {
    let n = n as i64;
    (0..n).map(move |k| -n + 1 + 2 * k)
}

fn require_irreducible(q: u32, h: &Rational) -> Result<()> {
    if is_irreducible_verma_c1q(q, h) {
        Ok(())
    } else {
        Err(Error::NotIrreducibleVerma { q, h: h.clone() })
    }
}

/// Mixed fusion rule `N^{M(c_{1,q},h')}_{L(c_{1,q},h_{i,s}), M(c_{1,q},h)}`
/// for irreducible Verma modules, evaluated with a chosen sign of `s'`.
///
/// `t` runs over `{-s+1, -s+3, ..., s-1}`. With `m = jq - t` the condition
/// `4qh' + (q-1)^2 = (m - s')^2` becomes `4q(h' - h) - m^2 = -2 m s'`. When
/// `s'` is irrational this forces `m = 0` and `h' = h`.
pub fn fusion_verma_mixed_with_sign(
    q: u32,
    label: (u32, u32),
    h: &Rational,
    h_prime: &Rational,
    negate_s_prime: bool,
) -> Result<u8> {
    check_c1q(q, label)?;
    require_irreducible(q, h)?;
    require_irreducible(q, h_prime)?;
    let (i, s) = label;
    let lhs = Rational::from(4 * q as i64) * (h_prime - h);
    let root = s_prime(q, h);
    let hit = symmetric_range(i).any(|j| {
        symmetric_range(s).any(|t| {
            let m = j * q as i64 - t;
            match &root {
                SPrime::Rational(r) => {
                    let r = if negate_s_prime { -r } else { r.clone() };
                    &lhs - Rational::from(m * m) == Rational::from(-2 * m) * r
                }
                SPrime::Irrational => m == 0 && lhs.is_zero(),
            }
        })
    });
    Ok(hit as u8)
}

/// [`fusion_verma_mixed_with_sign`] with the non-negative root `s'`.
pub fn fusion_verma_mixed(q: u32, label: (u32, u32), h: &Rational, h_prime: &Rational) -> Result<u8> {
    fusion_verma_mixed_with_sign(q, label, h, h_prime, false)
}

/// `N^{M(c_{1,q},h)}_{L(c_{1,q},h_{i1,s1}), L(c_{1,q},h_{i2,s2})}`, which
/// is always 0 once the inputs are valid.
pub fn fusion_verma_target_zero(q: u32, w1: (u32, u32), w2: (u32, u32), h: &Rational) -> Result<u8> {
    check_c1q(q, w1)?;
    check_c1q(q, w2)?;
    require_irreducible(q, h)?;
    Ok(0)
}

/// One `c_{1,q}` triple where the three routes were compared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleCheck {
    pub q: u32,
    pub w1: (u32, u32),
    pub w2: (u32, u32),
    pub w3: (u32, u32),
    pub closed_form: u8,
    pub fz_bound: u8,
    pub decoupling: u8,
}

impl TripleCheck {
    pub fn agrees(&self) -> bool {
        self.closed_form == self.fz_bound && self.fz_bound == self.decoupling
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidationReport {
    pub q_max: u32,
    pub i_max: u32,
    pub triples_checked: usize,
    pub allowed: usize,
    pub disagreements: Vec<TripleCheck>,
}

/// Canonical `c_{1,q}` labels with `i <= i_max`.
pub fn c1q_labels(q: u32, i_max: u32) -> Vec<(u32, u32)> {
    (1..=i_max)
        .flat_map(|i| (1..=q).map(move |s| (i, s)))
        .collect()
}

/// Compares [`fusion_c1q`], [`fz_upper_bound`] and [`null_decoupling`] on
/// every triple with `q <= q_max` and `i <= i_max`.
pub fn cross_validate(q_max: u32, i_max: u32) -> Result<CrossValidationReport> {
    let mut triples = Vec::new();
    for q in 1..=q_max {
        let labels = c1q_labels(q, i_max);
        for &w1 in &labels {
            for &w2 in &labels {
                for &w3 in &labels {
                    triples.push((q, w1, w2, w3));
                }
            }
        }
    }
    let checks: Result<Vec<TripleCheck>> = triples
        .par_iter()
        .map(|&(q, w1, w2, w3)| {
            let l = |w: (u32, u32)| ModuleLabel::c1q(q, w.0, w.1);
            Ok(TripleCheck {
                q,
                w1,
                w2,
                w3,
                closed_form: fusion_c1q(q, w1, w2, w3)?.value,
                fz_bound: fz_upper_bound(&l(w1)?, &l(w2)?, &l(w3)?)?,
                decoupling: null_decoupling(q, w1, w2, w3)? as u8,
            })
        })
        .collect();
    let checks = checks?;
    Ok(CrossValidationReport {
        q_max,
        i_max,
        triples_checked: checks.len(),
        allowed: checks.iter().filter(|c| c.closed_form == 1).count(),
        disagreements: checks.into_iter().filter(|c| !c.agrees()).collect(),
    })
}

/// Whether `(p, q)` is a valid minimal-model pair.
pub fn is_minimal_pair(p: u32, q: u32) -> bool {
    p > 1 && q > 1 && p.gcd(&q) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn a_sets() {
        assert_eq!(a_set(1, 1).elements, vec![1]);
        assert_eq!(a_set(2, 2).elements, vec![3, 1]);
        assert_eq!(a_set(2, 3).elements, vec![4, 2]);
        for m in 1..8 {
            for n in 1..8 {
                let a = a_set(m, n);
                assert_eq!(a.elements.len() as u32, m.min(n));
                assert!(a.elements.iter().all(|&e| e > 0 && e % 2 == (m + n - 1) % 2));
            }
        }
    }

    #[test]
    fn c1q_examples() {
        assert_eq!(
            fusion_c1q(2, (1, 2), (1, 2), (1, 1)).unwrap(),
            FusionAnswer { value: 1, witness: Some((1, 1)) }
        );
        assert_eq!(fusion_c1q(2, (1, 2), (1, 2), (2, 1)).unwrap().value, 0);
        assert_eq!(
            fusion_c1q(3, (1, 2), (2, 2), (2, 1)).unwrap(),
            FusionAnswer { value: 1, witness: Some((2, 1)) }
        );
        assert!(matches!(
            fusion_c1q(2, (1, 3), (1, 2), (1, 1)),
            Err(Error::InvalidLabel(_))
        ));
    }

    #[test]
    fn products() {
        let p = fusion_product_c1q(3, (1, 2), (2, 2)).unwrap();
        assert_eq!(p.into_iter().collect::<Vec<_>>(), vec![(2, 1), (2, 3)]);
        assert_eq!(weight_c1q(3, 2, 1), q(7, 4));
        assert_eq!(weight_c1q(3, 2, 3), q(5, 12));
        let p = fusion_product_c1q(2, (1, 2), (1, 2)).unwrap();
        assert_eq!(p.into_iter().collect::<Vec<_>>(), vec![(1, 1)]);
        for qq in 1..=4 {
            for w in c1q_labels(qq, 3) {
                let p = fusion_product_c1q(qq, (1, 1), w).unwrap();
                assert_eq!(p.into_iter().collect::<Vec<_>>(), vec![w]);
            }
        }
    }

    #[test]
    fn ising_rules() {
        assert_eq!(fusion_minimal(4, 3, (2, 2), (2, 2), (1, 1)).unwrap(), 1);
        assert_eq!(fusion_minimal(4, 3, (2, 2), (2, 2), (3, 1)).unwrap(), 1);
        assert_eq!(fusion_minimal(4, 3, (2, 2), (2, 2), (2, 2)).unwrap(), 0);
        assert!(fusion_minimal(4, 3, (4, 1), (2, 2), (2, 2)).is_err());
        assert!(fusion_minimal(4, 2, (1, 1), (1, 1), (1, 1)).is_err());
    }

    #[test]
    fn verma_mixed_examples() {
        let h = q(-3, 32);
        assert_eq!(fusion_verma_mixed(2, (1, 2), &h, &q(5, 32)).unwrap(), 1);
        assert_eq!(fusion_verma_mixed(2, (1, 2), &h, &q(-3, 32)).unwrap(), 1);
        assert_eq!(fusion_verma_mixed(2, (1, 2), &h, &q(1, 7)).unwrap(), 0);
        // s'^2 = 2 is irrational; j = 0 forces t = 0, not in {-1, 1}
        let h_irr = q(1, 8);
        assert_eq!(fusion_verma_mixed(2, (1, 2), &h_irr, &h_irr).unwrap(), 0);
        assert_eq!(fusion_verma_mixed(2, (1, 2), &h_irr, &q(1, 2)).unwrap(), 0);
        // (1,1) is the vacuum: only h' = h
        assert_eq!(fusion_verma_mixed(2, (1, 1), &h_irr, &h_irr).unwrap(), 1);
        assert!(matches!(
            fusion_verma_mixed(2, (1, 2), &q(0, 1), &h),
            Err(Error::NotIrreducibleVerma { .. })
        ));
    }

    #[test]
    fn verma_target_zero() {
        assert_eq!(fusion_verma_target_zero(2, (1, 2), (1, 2), &q(-3, 32)).unwrap(), 0);
        assert_eq!(fusion_verma_target_zero(3, (2, 2), (1, 1), &q(1, 5)).unwrap(), 0);
        assert!(matches!(
            fusion_verma_target_zero(2, (1, 1), (1, 1), &q(0, 1)),
            Err(Error::NotIrreducibleVerma { .. })
        ));
    }

    #[test]
    fn small_cross_validation() {
        let r = cross_validate(2, 2).unwrap();
        assert_eq!(r.triples_checked, 8 + 64);
        // Weight matches reached only through s > q are killed by the
        // target's own null vector, which the bimodule bound never sees.
        let split: Vec<_> = r.disagreements.iter().map(|d| (d.w1, d.w2, d.w3)).collect();
        assert_eq!(
            split,
            vec![((1, 2), (2, 2), (1, 1)), ((2, 2), (1, 2), (1, 1)), ((2, 2), (2, 2), (2, 1))]
        );
        for d in &r.disagreements {
            assert_eq!((d.closed_form, d.fz_bound, d.decoupling), (1, 1, 0));
            assert!(!(a_set(d.w1.0, d.w2.0).contains(d.w3.0) && a_set(d.w1.1, d.w2.1).contains(d.w3.1)));
        }
    }
}

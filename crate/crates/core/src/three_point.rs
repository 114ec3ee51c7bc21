//! Three-point matrix elements `<v'_3, Y(u_1, x) u_2>` of an intertwining
//! operator between Verma modules, with descendants in the slots.
//!
//! The primary element is normalized to `x^{h3-h1-h2}`. Every other element
//! is a monomial `C x^{h3-h1-h2-shift}` with `shift = g1 + g2 - g3`, where
//! `g_i` are the grades of the slot vectors. The coefficient is computed by
//! the following reductions, tried in order:
//!
//! 1. a mode `L_{-j}` on the dual vector moves across the pairing as `L_j`,
//!    then `[L_j, Y(u,x)] = Σ_i C(j+1,i) x^{j+1-i} Y(L_{i-1}u, x)`;
//! 2. a mode `L_{-m}` on slot 2 moves left through `Y` by the same
//!    commutator, and `<v', L_{-m} ...> = 0`;
//! 3. on slot 1, `L_{-1}` is `d/dx` and `L_{-n}` (`n >= 2`) is expanded by
//!    the iterate formula for `Y(ω_{(1-n)} u, x)`:
//!    `Y(L_{-n}u, x) = Σ_i C(1-n,i) [(-x)^i L_{-n-i} Y(u,x) - (-x)^{1-n-i} Y(u,x) L_{i-1}]`.
//!
//! Each rule lowers `(g3, g1 + g2, g2)` lexicographically.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Partition, Rational};
use crate::error::{Error, Result};
use crate::verma::{
    central_charge_pq, singular_vector, weight_c1q, HighestWeightParams, ModuleLabel, Straightener,
    VermaVector,
};

/// Central charge and the three lowest weights of a matrix element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThreePointDatum {
    pub c: Rational,
    pub h1: Rational,
    pub h2: Rational,
    pub h3: Rational,
}

impl ThreePointDatum {
    pub fn new(c: Rational, h1: Rational, h2: Rational, h3: Rational) -> Self {
        ThreePointDatum { c, h1, h2, h3 }
    }

    /// `h3 - h1 - h2`, the exponent of the primary element.
    pub fn base_exponent(&self) -> Rational {
        &self.h3 - &self.h1 - &self.h2
    }

    pub fn slot_params(&self, slot: Slot) -> HighestWeightParams {
        let h = match slot {
            Slot::One => &self.h1,
            Slot::Two => &self.h2,
            Slot::Three => &self.h3,
        };
        HighestWeightParams::new(self.c.clone(), h.clone())
    }
}

/// `coeff · x^{h3-h1-h2-shift}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePointCoefficient {
    pub coeff: Rational,
    pub shift: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Slot {
    One,
    Two,
    Three,
}

impl Slot {
    pub fn from_index(i: u32) -> Option<Slot> {
        match i {
            1 => Some(Slot::One),
            2 => Some(Slot::Two),
            3 => Some(Slot::Three),
            _ => None,
        }
    }

    pub fn index(self) -> u32 {
        match self {
            Slot::One => 1,
            Slot::Two => 2,
            Slot::Three => 3,
        }
    }
}

/// Generalized binomial coefficient `C(n, k)` for any integer `n`.
fn binomial(n: i64, k: u32) -> Rational {
    let mut num = Rational::one();
    for t in 0..k as i64 {
        num *= Rational::new(n - t, t + 1);
    }
    num
}

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        Rational::from(-1)
    }
}

type Key = (Partition, Partition, Partition);

/// Memoizing evaluator for one [`ThreePointDatum`].
pub struct ThreePointEvaluator {
    datum: ThreePointDatum,
    slot1: Straightener,
    slot2: Straightener,
    memo: HashMap<Key, Rational>,
}

impl ThreePointEvaluator {
    pub fn new(datum: ThreePointDatum) -> Self {
        ThreePointEvaluator {
            slot1: Straightener::new(datum.slot_params(Slot::One)),
            slot2: Straightener::new(datum.slot_params(Slot::Two)),
            datum,
            memo: HashMap::new(),
        }
    }

    pub fn datum(&self) -> &ThreePointDatum {
        &self.datum
    }

    /// Coefficient of `<e_{dual} v', Y(e_{u1} w1, x) e_{u2} w2>`.
    pub fn monomial_coefficient(&mut self, dual: &Partition, u1: &Partition, u2: &Partition) -> Rational {
        let key = (dual.clone(), u1.clone(), u2.clone());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let value = self.reduce(dual, u1, u2);
        self.memo.insert(key, value.clone());
        value
    }

    fn reduce(&mut self, dual: &Partition, u1: &Partition, u2: &Partition) -> Rational {
        let empty = Partition::empty();
        if let Some((j, dual_tail)) = dual.split_first() {
            let j = j as i64;
            let mut total = Rational::zero();
            // <d', Y(u1,x) L_j u2>
            let moved = self.slot2.apply_monomial(j, u2);
            for (p, c) in moved.terms() {
                total += c * self.monomial_coefficient(&dual_tail, u1, p);
            }
            // [L_j, Y(u1,x)] u2
            for i in 0..=(u1.size() + 1) {
                let b = binomial(j + 1, i);
                if b.is_zero() {
                    continue;
                }
                let lowered = self.slot1.apply_monomial(i as i64 - 1, u1);
                for (p, c) in lowered.terms() {
                    total += &b * c * self.monomial_coefficient(&dual_tail, p, u2);
                }
            }
            return total;
        }

        if let Some((m, u2_tail)) = u2.split_first() {
            let m = m as i64;
            let mut total = Rational::zero();
            for i in 0..=(u1.size() + 1) {
                let b = binomial(1 - m, i);
                if b.is_zero() {
                    continue;
                }
                let lowered = self.slot1.apply_monomial(i as i64 - 1, u1);
                for (p, c) in lowered.terms() {
                    total -= &b * c * self.monomial_coefficient(&empty, p, &u2_tail);
                }
            }
            return total;
        }

        let Some((n, u1_tail)) = u1.split_first() else {
            return Rational::one();
        };
        if n == 1 {
            let exponent = self.datum.base_exponent() - Rational::from(u1_tail.size());
            return exponent * self.monomial_coefficient(&empty, &u1_tail, &empty);
        }
        let n = n as i64;
        let mut total = Rational::zero();
        // only L_{-1} w2 and L_0 w2 survive on a primary slot 2
        for i in 0..=1u32 {
            let b = binomial(1 - n, i);
            let raised = self.slot2.apply_monomial(i as i64 - 1, &empty);
            for (p, c) in raised.terms() {
                total -= &b * sign(1 - n - i as i64) * c * self.monomial_coefficient(&empty, &u1_tail, p);
            }
        }
        total
    }

    /// The matrix element with the homogeneous vector `v` inserted in `slot`
    /// and primaries elsewhere.
    pub fn evaluate(&mut self, slot: Slot, v: &VermaVector) -> Result<ThreePointCoefficient> {
        let expected = self.datum.slot_params(slot);
        if v.params != expected {
            return Err(Error::InvalidInput(format!(
                "slot {} vector lives in M({}, {}), expected M({}, {})",
                slot.index(),
                v.params.c,
                v.params.h,
                expected.c,
                expected.h
            )));
        }
        let grades = v.grades();
        if grades.len() > 1 {
            return Err(Error::InhomogeneousInsertion(grades));
        }
        let g = grades.first().copied().unwrap_or(0) as i64;
        let empty = Partition::empty();
        let mut coeff = Rational::zero();
        for (p, c) in v.terms() {
            let value = match slot {
                Slot::One => self.monomial_coefficient(&empty, p, &empty),
                Slot::Two => self.monomial_coefficient(&empty, &empty, p),
                Slot::Three => self.monomial_coefficient(p, &empty, &empty),
            };
            coeff += c * value;
        }
        let shift = if slot == Slot::Three { -g } else { g };
        Ok(ThreePointCoefficient { coeff, shift })
    }
}

/// Value of the matrix element with `v` inserted in `slot`.
pub fn evaluate_descendant(
    datum: &ThreePointDatum,
    slot: Slot,
    v: &VermaVector,
) -> Result<ThreePointCoefficient> {
    ThreePointEvaluator::new(datum.clone()).evaluate(slot, v)
}

/// Decoupling coefficient of one singular generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecouplingEntry {
    pub slot: u32,
    pub grade: u32,
    pub coeff: Rational,
    pub shift: i64,
}

fn labels_datum(w1: &ModuleLabel, w2: &ModuleLabel, w3: &ModuleLabel) -> Result<ThreePointDatum> {
    let c = w1.central_charge();
    if w2.central_charge() != c || w3.central_charge() != c {
        return Err(Error::InvalidLabel(format!(
            "labels {w1}, {w2}, {w3} do not share a central charge"
        )));
    }
    Ok(ThreePointDatum::new(c, w1.weight(), w2.weight(), w3.weight()))
}

/// Coefficients of every singular generator of the three slots inserted
/// into the primary matrix element of `(w1, w2; w3)`.
pub fn decoupling_coefficients(
    w1: &ModuleLabel,
    w2: &ModuleLabel,
    w3: &ModuleLabel,
) -> Result<Vec<DecouplingEntry>> {
    let datum = labels_datum(w1, w2, w3)?;
    let mut eval = ThreePointEvaluator::new(datum.clone());
    let mut out = Vec::new();
    for (slot, label) in [(Slot::One, w1), (Slot::Two, w2), (Slot::Three, w3)] {
        let params = datum.slot_params(slot);
        for grade in label.singular_grades() {
            let v = singular_vector(&params, grade)?.ok_or_else(|| Error::SolverFailure {
                c: params.c.clone(),
                h: params.h.clone(),
                grade,
            })?;
            let r = eval.evaluate(slot, &v)?;
            out.push(DecouplingEntry {
                slot: slot.index(),
                grade,
                coeff: r.coeff,
                shift: r.shift,
            });
        }
    }
    Ok(out)
}

/// True iff the singular generators of all three slots decouple from the
/// primary matrix element of `(w1, w2; w3)` at `c_{1,q}`.
pub fn null_decoupling(q: u32, w1: (u32, u32), w2: (u32, u32), w3: (u32, u32)) -> Result<bool> {
    let l1 = ModuleLabel::c1q(q, w1.0, w1.1)?;
    let l2 = ModuleLabel::c1q(q, w2.0, w2.1)?;
    let l3 = ModuleLabel::c1q(q, w3.0, w3.1)?;
    null_decoupling_labels(&l1, &l2, &l3)
}

/// [`null_decoupling`] for arbitrary irreducible labels of one central charge.
pub fn null_decoupling_labels(w1: &ModuleLabel, w2: &ModuleLabel, w3: &ModuleLabel) -> Result<bool> {
    Ok(decoupling_coefficients(w1, w2, w3)?
        .iter()
        .all(|e| e.coeff.is_zero()))
}

/// The primary datum of a `c_{1,q}` triple.
pub fn c1q_datum(q: u32, w1: (u32, u32), w2: (u32, u32), w3: (u32, u32)) -> ThreePointDatum {
    ThreePointDatum::new(
        central_charge_pq(1, q),
        weight_c1q(q, w1.0 as i64, w1.1 as i64),
        weight_c1q(q, w2.0 as i64, w2.1 as i64),
        weight_c1q(q, w3.0 as i64, w3.1 as i64),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn generic() -> ThreePointDatum {
        ThreePointDatum::new(q(3, 7), q(2, 5), q(-1, 3), q(5, 4))
    }

    fn mono(d: &ThreePointDatum, slot: Slot, parts: &[u32]) -> VermaVector {
        VermaVector::monomial(d.slot_params(slot), Partition::from_parts(parts.to_vec()))
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), q(10, 1));
        assert_eq!(binomial(-1, 3), q(-1, 1));
        assert_eq!(binomial(-2, 2), q(3, 1));
        assert_eq!(binomial(2, 3), q(0, 1));
        assert_eq!(binomial(0, 0), q(1, 1));
    }

    #[test]
    fn slot_one_examples() {
        let d = generic();
        let (h1, h2, h3) = (d.h1.clone(), d.h2.clone(), d.h3.clone());
        let r = evaluate_descendant(&d, Slot::One, &mono(&d, Slot::One, &[])).unwrap();
        assert_eq!(r, ThreePointCoefficient { coeff: q(1, 1), shift: 0 });
        let r = evaluate_descendant(&d, Slot::One, &mono(&d, Slot::One, &[1])).unwrap();
        assert_eq!(r.coeff, &h3 - &h1 - &h2);
        assert_eq!(r.shift, 1);
        let r = evaluate_descendant(&d, Slot::One, &mono(&d, Slot::One, &[2])).unwrap();
        assert_eq!(r.coeff, &h1 + q(2, 1) * &h2 - &h3);
        assert_eq!(r.shift, 2);
    }

    #[test]
    fn slot_three_first_mode() {
        // <L_{-1} v', Y(w1,x) w2> = <v', L_1 Y w2> = (x d/dx + 2 h1) x^Δ
        let d = generic();
        let r = evaluate_descendant(&d, Slot::Three, &mono(&d, Slot::Three, &[1])).unwrap();
        assert_eq!(r.coeff, d.base_exponent() + q(2, 1) * &d.h1);
        assert_eq!(r.shift, -1);
    }

    #[test]
    fn rejects_wrong_module_and_inhomogeneous() {
        let d = generic();
        assert!(evaluate_descendant(&d, Slot::Two, &mono(&d, Slot::One, &[1])).is_err());
        let v = mono(&d, Slot::One, &[1]).add(&mono(&d, Slot::One, &[2]));
        assert!(matches!(
            evaluate_descendant(&d, Slot::One, &v),
            Err(Error::InhomogeneousInsertion(_))
        ));
    }

    #[test]
    fn decoupling_examples() {
        assert!(null_decoupling(2, (1, 2), (1, 2), (1, 1)).unwrap());
        assert!(!null_decoupling(2, (1, 2), (1, 2), (2, 1)).unwrap());
        assert!(null_decoupling(3, (1, 2), (2, 2), (2, 1)).unwrap());
        let coeffs = decoupling_coefficients(
            &ModuleLabel::c1q(2, 1, 2).unwrap(),
            &ModuleLabel::c1q(2, 1, 2).unwrap(),
            &ModuleLabel::c1q(2, 2, 1).unwrap(),
        )
        .unwrap();
        assert_eq!(coeffs[0].coeff, q(1, 1));
        assert_eq!(coeffs[0].shift, 2);
    }
}

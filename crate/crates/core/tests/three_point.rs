mod common;

use proptest::prelude::*;
use virasoro_fusion::algebra::{q, Partition, Rational};
use virasoro_fusion::fusion::c1q_labels;
use virasoro_fusion::three_point::{
    c1q_datum, evaluate_descendant, null_decoupling, Slot, ThreePointDatum,
};
use virasoro_fusion::verma::{singular_vector, ModuleLabel, VermaVector};
use virasoro_fusion::zhu::singular_image;

use common::{partition, rational};

fn datum() -> impl Strategy<Value = ThreePointDatum> {
    (rational(), rational(), rational(), rational())
        .prop_map(|(c, h1, h2, h3)| ThreePointDatum::new(c, h1, h2, h3))
}

fn sign(n: u32) -> Rational {
    Rational::from(if n.is_multiple_of(2) { 1 } else { -1 })
}

/// Coefficient of a PBW monomial inserted in one slot, from the conformal
/// Ward identities on `x^e`.
fn ward_oracle(d: &ThreePointDatum, slot: Slot, p: &Partition) -> Rational {
    let mut e = d.base_exponent();
    let mut coef = Rational::one();
    match slot {
        Slot::One => {
            for &n in p.parts().iter().rev() {
                coef *= sign(n) * (Rational::from(n - 1) * &d.h2 - &e);
                e -= Rational::from(n);
            }
        }
        Slot::Two => {
            for &n in p.parts().iter().rev() {
                coef *= Rational::from(n - 1) * &d.h1 - &e;
                e -= Rational::from(n);
            }
        }
        Slot::Three => {
            // <L_{-a} L_{-b} v', Y v2> = <v', L_b L_a Y v2>, and each L_j acts
            // on Y(v1,x)v2 as a differential operator D_j, so this is
            // D_a D_b applied to x^e: the rightmost part still acts first.
            for &j in p.parts().iter().rev() {
                coef *= &e + Rational::from(j + 1) * &d.h1;
                e += Rational::from(j);
            }
        }
    }
    coef
}

fn slot() -> impl Strategy<Value = Slot> {
    prop_oneof![Just(Slot::One), Just(Slot::Two), Just(Slot::Three)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monomials_follow_the_ward_identities(d in datum(), s in slot(), p in partition(5)) {
        let v = VermaVector::monomial(d.slot_params(s), p.clone());
        let got = evaluate_descendant(&d, s, &v).unwrap();
        let g = p.size() as i64;
        prop_assert_eq!(got.shift, if s == Slot::Three { -g } else { g });
        prop_assert_eq!(got.coeff, ward_oracle(&d, s, &p));
    }

    #[test]
    fn vacuum_insertion(c in rational(), h2 in rational()) {
        let d = ThreePointDatum::new(c, Rational::zero(), h2.clone(), h2.clone());
        let v = VermaVector::monomial(d.slot_params(Slot::One), Partition::from_parts(vec![2]));
        let got = evaluate_descendant(&d, Slot::One, &v).unwrap();
        prop_assert_eq!(got.shift, 2);
        prop_assert_eq!(got.coeff, h2);
    }

    #[test]
    fn derivatives(d in datum(), m in 1u32..=4) {
        let v = VermaVector::monomial(d.slot_params(Slot::One), Partition::ones(m));
        let got = evaluate_descendant(&d, Slot::One, &v).unwrap();
        let mu = d.base_exponent();
        let expected: Rational = (0..m).map(|j| &mu - Rational::from(j)).product();
        prop_assert_eq!(got.shift, m as i64);
        prop_assert_eq!(got.coeff, expected);
    }
}

#[test]
fn mismatched_or_inhomogeneous_insertions_are_rejected() {
    let d = ThreePointDatum::new(q(1, 2), q(1, 16), q(1, 16), q(1, 2));
    let wrong = VermaVector::highest_weight(d.slot_params(Slot::Two).clone());
    let other = ThreePointDatum::new(q(1, 2), q(1, 2), q(1, 16), q(1, 2));
    assert!(evaluate_descendant(&other, Slot::One, &wrong).is_err());
    let mixed = VermaVector::from_terms(
        d.slot_params(Slot::One),
        [(Partition::ones(1), q(1, 1)), (Partition::ones(2), q(1, 1))],
    );
    assert!(evaluate_descendant(&d, Slot::One, &mixed).is_err());
}

#[test]
fn decoupling_examples() {
    assert!(null_decoupling(2, (1, 2), (1, 2), (1, 1)).unwrap());
    assert!(!null_decoupling(2, (1, 2), (1, 2), (2, 1)).unwrap());
    assert!(null_decoupling(3, (1, 2), (2, 2), (2, 1)).unwrap());
    let d = c1q_datum(2, (1, 2), (1, 2), (2, 1));
    let v = singular_vector(&d.slot_params(Slot::One), 2).unwrap().unwrap();
    let r = evaluate_descendant(&d, Slot::One, &v).unwrap();
    assert_eq!((r.coeff, r.shift), (q(1, 1), 2));
}

type Triple = (u32, (u32, u32), (u32, u32), (u32, u32));

fn grid() -> Vec<Triple> {
    let mut out = Vec::new();
    for qq in 1..=3 {
        let ls = c1q_labels(qq, 3);
        for &a in &ls {
            for &b in &ls {
                for &c in &ls {
                    out.push((qq, a, b, c));
                }
            }
        }
    }
    out
}

#[test]
fn decoupling_is_symmetric_in_the_inputs() {
    for (qq, a, b, c) in grid() {
        assert_eq!(
            null_decoupling(qq, a, b, c).unwrap(),
            null_decoupling(qq, b, a, c).unwrap(),
            "q={qq} {a:?} {b:?} {c:?}"
        );
    }
}

#[test]
fn slot_one_coefficient_is_the_bimodule_image() {
    for (qq, a, b, c) in grid() {
        let d = c1q_datum(qq, a, b, c);
        let label = ModuleLabel::c1q(qq, a.0, a.1).unwrap();
        let image = &singular_image(&label).unwrap()[0];
        let v = singular_vector(&d.slot_params(Slot::One), a.0 * a.1).unwrap().unwrap();
        let coeff = evaluate_descendant(&d, Slot::One, &v).unwrap().coeff;
        assert_eq!(coeff, image.poly.evaluate(&d.h3, &d.h2), "q={qq} {a:?} {b:?} {c:?}");
    }
}

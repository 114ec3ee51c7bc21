#![allow(dead_code)]

use proptest::prelude::*;
use virasoro_fusion::algebra::{Partition, Rational};
use virasoro_fusion::verma::{HighestWeightParams, VermaVector};

pub fn rational() -> impl Strategy<Value = Rational> {
    (-24i64..=24, 1i64..=9).prop_map(|(n, d)| Rational::new(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

pub fn params() -> impl Strategy<Value = HighestWeightParams> {
    (rational(), rational()).prop_map(|(c, h)| HighestWeightParams::new(c, h))
}

/// A partition of size at most `max`.
pub fn partition(max: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=max.max(1), 0..=max as usize).prop_map(move |mut parts| {
        let mut total = 0;
        parts.retain(|&p| {
            total += p;
            total <= max
        });
        Partition::from_parts(parts)
    })
}

pub fn vector(params: HighestWeightParams, max_grade: u32) -> impl Strategy<Value = VermaVector> {
    prop::collection::vec((partition(max_grade), rational()), 1..5)
        .prop_map(move |terms| VermaVector::from_terms(params.clone(), terms))
}

pub fn params_and_vector(max_grade: u32) -> impl Strategy<Value = VermaVector> {
    params().prop_flat_map(move |p| vector(p, max_grade))
}

/// A homogeneous vector of grade exactly `n`.
pub fn homogeneous(params: HighestWeightParams, n: u32) -> impl Strategy<Value = VermaVector> {
    let basis = virasoro_fusion::algebra::enumerate_partitions(n);
    let len = basis.len();
    prop::collection::vec(rational(), len).prop_map(move |cs| {
        VermaVector::from_terms(params.clone(), basis.iter().cloned().zip(cs))
    })
}

//! Approaching `c_{1,q}` through the minimal models `c_{k, kq-1}`.
//!
//! Every quantity is exact; "convergence" means the exact gaps to the
//! `c_{1,q}` values shrink along the sampled `k`, and agree with their
//! closed forms as rational functions of `k`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::fusion::{fusion_c1q, fusion_minimal};
use crate::three_point::{c1q_datum, evaluate_descendant, Slot, ThreePointDatum};
use crate::verma::{central_charge_pq, kac_weight_pq, singular_vector, weight_c1q, ModuleLabel};

pub type Labels = [(u32, u32); 3];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitRow {
    pub k: u32,
    pub c_k: Rational,
    pub h1k: Rational,
    pub h2k: Rational,
    pub h3k: Rational,
    pub fusion_allowed: bool,
    pub slot1_null_coeff: Rational,
}

impl LimitRow {
    pub fn weights(&self) -> [&Rational; 3] {
        [&self.h1k, &self.h2k, &self.h3k]
    }
}

fn check_box(k: u32, q: u32, labels: &Labels) -> Result<()> {
    let qk = k * q - 1;
    for &(i, s) in labels {
        if i >= k || s >= qk {
            return Err(Error::LabelOutOfBox { p: k, q: qk, i, s });
        }
    }
    Ok(())
}

fn slot1_null(datum: &ThreePointDatum, (i1, s1): (u32, u32)) -> Result<Rational> {
    let params = datum.slot_params(Slot::One);
    let grade = i1 * s1;
    let v = singular_vector(&params, grade)?.ok_or_else(|| Error::SolverFailure {
        c: params.c.clone(),
        h: params.h.clone(),
        grade,
    })?;
    Ok(evaluate_descendant(datum, Slot::One, &v)?.coeff)
}

/// One row of the table for `L(c_{k, kq-1}, 0)`, reading the `c_{1,q}`
/// labels as Kac labels `(r, s)`.
pub fn limit_row(q: u32, labels: &Labels, k: u32) -> Result<LimitRow> {
    check_box(k, q, labels)?;
    let qk = k * q - 1;
    let w = |n: usize| kac_weight_pq(k, qk, labels[n].0 as i64, labels[n].1 as i64);
    let datum = ThreePointDatum::new(central_charge_pq(k, qk), w(0), w(1), w(2));
    Ok(LimitRow {
        k,
        fusion_allowed: fusion_minimal(k, qk, labels[0], labels[1], labels[2])? == 1,
        slot1_null_coeff: slot1_null(&datum, labels[0])?,
        c_k: datum.c,
        h1k: datum.h1,
        h2k: datum.h2,
        h3k: datum.h3,
    })
}

/// Rows for `k = k_min..=k_max`, computed concurrently.
pub fn limit_sequence(q: u32, labels: &Labels, k_min: u32, k_max: u32) -> Result<Vec<LimitRow>> {
    if q == 0 || k_min > k_max {
        return Err(Error::InvalidInput(format!(
            "need q >= 1 and k_min <= k_max, got q = {q}, k in {k_min}..={k_max}"
        )));
    }
    for &(i, s) in labels {
        ModuleLabel::c1q(q, i, s)?;
    }
    check_box(k_min, q, labels)?;
    (k_min..=k_max)
        .into_par_iter()
        .map(|k| limit_row(q, labels, k))
        .collect()
}

/// `c_{k,kq-1} - c_{1,q} = 6/k - 6/(q(kq-1))`.
pub fn central_charge_gap(q: u32, k: u32) -> Rational {
    let (q, k) = (q as i64, k as i64);
    Rational::new(6, k) - Rational::new(6, q * (k * q - 1))
}

/// `h^k_{i,s} - h_{i,s} = -(i^2-1)/(4k) + (s^2-1)/(4q(kq-1))`.
pub fn weight_gap(q: u32, k: u32, (i, s): (u32, u32)) -> Rational {
    let (q, k, i, s) = (q as i64, k as i64, i as i64, s as i64);
    Rational::new(1 - i * i, 4 * k) + Rational::new(s * s - 1, 4 * q * (k * q - 1))
}

/// Slot-1 null coefficient of the primary triple at `c_{1,q}` itself.
pub fn limit_target(q: u32, labels: &Labels) -> Result<Rational> {
    slot1_null(&c1q_datum(q, labels[0], labels[1], labels[2]), labels[0])
}

fn strictly_decreasing(v: &[Rational]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn non_increasing(v: &[Rational]) -> bool {
    v.windows(2).all(|w| w[1] <= w[0])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitReport {
    pub q: u32,
    pub labels: Labels,
    pub c_limit: Rational,
    pub h_limits: [Rational; 3],
    /// `c_k - c_{1,q}` per row.
    pub c_gaps: Vec<Rational>,
    /// `h^k_n - h_n` per row.
    pub h_gaps: Vec<[Rational; 3]>,
    pub gaps_match_closed_form: bool,
    pub c_gap_strictly_decreasing: bool,
    pub h_gap_strictly_decreasing: [bool; 3],
    pub eventual_fusion: bool,
    pub oracle_fusion: u8,
    pub fusion_matches_oracle: bool,
    pub null_target: Rational,
    /// `|slot1_null_coeff - null_target|` per row.
    pub null_diffs: Vec<Rational>,
    pub null_diffs_non_increasing: bool,
}

/// Checks `rows` (in increasing `k`) against the `c_{1,q}` values.
pub fn limit_check(rows: &[LimitRow], q: u32, labels: &Labels) -> Result<LimitReport> {
    if rows.is_empty() {
        return Err(Error::InvalidInput("limit_check needs at least one row".into()));
    }
    if rows.windows(2).any(|w| w[1].k <= w[0].k) {
        return Err(Error::InvalidInput("rows must be sorted by strictly increasing k".into()));
    }
    let top = &rows[rows.len() / 2..];
    if let Some(w) = top.windows(2).find(|w| w[0].fusion_allowed != w[1].fusion_allowed) {
        return Err(Error::NotStabilized { k: w[1].k });
    }
    let eventual_fusion = rows.last().unwrap().fusion_allowed;
    let oracle_fusion = fusion_c1q(q, labels[0], labels[1], labels[2])?.value;

    let c_limit = central_charge_pq(1, q);
    let h_limits = labels.map(|(i, s)| weight_c1q(q, i as i64, s as i64));
    let c_gaps: Vec<Rational> = rows.iter().map(|r| &r.c_k - &c_limit).collect();
    let h_gaps: Vec<[Rational; 3]> = rows
        .iter()
        .map(|r| {
            let w = r.weights();
            [0, 1, 2].map(|n| w[n] - &h_limits[n])
        })
        .collect();
    let gaps_match_closed_form = rows.iter().zip(&c_gaps).zip(&h_gaps).all(|((r, c), h)| {
        *c == central_charge_gap(q, r.k)
            && (0..3).all(|n| h[n] == weight_gap(q, r.k, labels[n]))
    });
    let abs_h = |n: usize| h_gaps.iter().map(|h| h[n].abs()).collect::<Vec<_>>();

    let null_target = limit_target(q, labels)?;
    let null_diffs: Vec<Rational> = rows
        .iter()
        .map(|r| (&r.slot1_null_coeff - &null_target).abs())
        .collect();

    Ok(LimitReport {
        q,
        labels: *labels,
        c_gap_strictly_decreasing: strictly_decreasing(
            &c_gaps.iter().map(Rational::abs).collect::<Vec<_>>(),
        ),
        h_gap_strictly_decreasing: [0, 1, 2].map(|n| strictly_decreasing(&abs_h(n))),
        c_limit,
        h_limits,
        c_gaps,
        h_gaps,
        gaps_match_closed_form,
        eventual_fusion,
        oracle_fusion,
        fusion_matches_oracle: eventual_fusion == (oracle_fusion == 1),
        null_diffs_non_increasing: non_increasing(&null_diffs),
        null_target,
        null_diffs,
    })
}

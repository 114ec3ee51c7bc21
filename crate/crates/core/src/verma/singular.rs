//! Singular vectors of Verma modules.
//!
//! A grade-`n` vector is singular iff it is killed by `L_1` and `L_2`, since
//! these generate the positive part of the Virasoro algebra. The solver fixes
//! the coefficient of `L_{-1}^n` to 1 and solves the resulting affine system
//! over the `p(n)`-dimensional weight space exactly.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Mutex, OnceLock};

use super::params::{HighestWeightParams, ModuleLabel};
use super::vector::{Straightener, VermaVector};
use crate::algebra::{enumerate_partitions, solve, LinearSolution, Partition, Rational};
use crate::error::{Error, Result};

type MemoKey = (Rational, Rational, u32);

struct Memo {
    table: Mutex<HashMap<MemoKey, Option<VermaVector>>>,
    solves: AtomicU64,
    hits: AtomicU64,
}

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Memo {
        table: Mutex::new(HashMap::new()),
        solves: AtomicU64::new(0),
        hits: AtomicU64::new(0),
    })
}

/// Counters of the process-wide singular-vector memo table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MemoStats {
    /// Linear systems actually solved.
    pub solves: u64,
    /// Lookups answered from the table.
    pub hits: u64,
    pub entries: usize,
}

pub fn memo_stats() -> MemoStats {
    let m = memo();
    MemoStats {
        solves: m.solves.load(Ordering::Relaxed),
        hits: m.hits.load(Ordering::Relaxed),
        entries: m.table.lock().unwrap().len(),
    }
}

/// Inserts a known result. Inserting over an existing entry is a no-op.
pub fn memo_seed(params: &HighestWeightParams, grade: u32, value: Option<VermaVector>) {
    let key = (params.c.clone(), params.h.clone(), grade);
    memo().table.lock().unwrap().entry(key).or_insert(value);
}

/// Every memoized singular vector that exists, sorted by `(c, h, grade)`.
pub fn memo_snapshot() -> Vec<(HighestWeightParams, u32, VermaVector)> {
    let table = memo().table.lock().unwrap();
    let mut out: Vec<_> = table
        .iter()
        .filter_map(|((c, h, n), v)| {
            v.as_ref()
                .map(|v| (HighestWeightParams::new(c.clone(), h.clone()), *n, v.clone()))
        })
        .collect();
    out.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
    out
}

/// Solves for the grade-`n` singular vector with `L_{-1}^n` coefficient 1,
/// bypassing the memo table.
pub fn solve_singular_vector(params: &HighestWeightParams, n: u32) -> Result<Option<VermaVector>> {
    assert!(n >= 1, "grade must be positive");
    memo().solves.fetch_add(1, Ordering::Relaxed);
    let mut st = Straightener::new(params.clone());
    let basis = enumerate_partitions(n);
    let leading = Partition::ones(n);
    let unknowns: Vec<&Partition> = basis.iter().filter(|p| **p != leading).collect();

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for k in [1i64, 2] {
        if (n as i64) < k {
            continue;
        }
        let images: Vec<VermaVector> = basis.iter().map(|p| st.apply_monomial(k, p)).collect();
        let lead_image = &images[basis.len() - 1];
        for target in enumerate_partitions(n - k as u32) {
            let row: Vec<Rational> = images[..basis.len() - 1]
                .iter()
                .map(|img| img.coeff(&target))
                .collect();
            rows.push(row);
            rhs.push(-lead_image.coeff(&target));
        }
    }

    match solve(&rows, &rhs, unknowns.len()) {
        LinearSolution::Inconsistent => Ok(None),
        LinearSolution::Underdetermined(free) => Err(Error::NonUniqueSolution {
            c: params.c.clone(),
            h: params.h.clone(),
            grade: n,
            free,
        }),
        LinearSolution::Unique(values) => {
            let terms = unknowns
                .into_iter()
                .cloned()
                .zip(values)
                .chain(std::iter::once((leading, Rational::one())));
            Ok(Some(VermaVector::from_terms(params.clone(), terms)))
        }
    }
}

/// The grade-`n` singular vector normalized by `f_{(1^n)} = 1`, or `None`
/// if no such vector exists. Results are memoized per `(c, h, n)`.
pub fn singular_vector(params: &HighestWeightParams, n: u32) -> Result<Option<VermaVector>> {
    let key = (params.c.clone(), params.h.clone(), n);
    if let Some(hit) = memo().table.lock().unwrap().get(&key) {
        memo().hits.fetch_add(1, Ordering::Relaxed);
        return Ok(hit.clone());
    }
    let value = solve_singular_vector(params, n)?;
    memo()
        .table
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| value.clone());
    Ok(value)
}

/// Singular vectors generating the maximal proper submodule of the Verma
/// module behind an irreducible label, as `(grade, vector)` pairs.
pub fn maximal_submodule_generators(label: &ModuleLabel) -> Result<Vec<(u32, VermaVector)>> {
    if let ModuleLabel::GenericVerma { .. } = label {
        return Err(Error::InvalidLabel(
            "maximal submodule generators need an irreducible label".into(),
        ));
    }
    let params = label.params();
    label
        .singular_grades()
        .into_iter()
        .map(|grade| {
            singular_vector(&params, grade)?
                .map(|v| (grade, v))
                .ok_or_else(|| Error::SolverFailure {
                    c: params.c.clone(),
                    h: params.h.clone(),
                    grade,
                })
        })
        .collect()
}

//! Exact Gaussian elimination over the rationals.

use super::rational::Rational;

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Rational>),
    Inconsistent,
    /// Consistent, with the given number of free variables.
    Underdetermined(usize),
}

/// Solves the dense system `rows * x = rhs` by reduction to row echelon form.
///
/// `rows` may have any number of rows; every row must have `n_vars` entries.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational], n_vars: usize) -> LinearSolution {
    assert_eq!(rows.len(), rhs.len());
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            assert_eq!(r.len(), n_vars);
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n_vars {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].recip();
        for v in m[rank].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }

    if m[rank..].iter().any(|row| !row[n_vars].is_zero()) {
        return LinearSolution::Inconsistent;
    }
    if rank < n_vars {
        return LinearSolution::Underdetermined(n_vars - rank);
    }
    let mut x = vec![Rational::zero(); n_vars];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = m[r][n_vars].clone();
    }
    LinearSolution::Unique(x)
}

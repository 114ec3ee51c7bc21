use thiserror::Error;

use crate::algebra::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a bare odd power of xi^(1/2) survives at xi = {xi}, which is not a rational square")]
    OddHalfPower { xi: Rational },

    #[error("singular vector at c = {c}, h = {h}, grade {grade} is not unique ({free} free parameters)")]
    NonUniqueSolution {
        c: Rational,
        h: Rational,
        grade: u32,
        free: usize,
    },

    #[error("no singular vector with leading coefficient 1 at c = {c}, h = {h}, grade {grade}")]
    SolverFailure { c: Rational, h: Rational, grade: u32 },

    #[error("invalid module label: {0}")]
    InvalidLabel(String),

    #[error("M(c_(1,{q}), {h}) is not an irreducible Verma module")]
    NotIrreducibleVerma { q: u32, h: Rational },

    #[error("label ({i},{s}) lies outside the Kac box of ({p},{q})")]
    LabelOutOfBox { p: u32, q: u32, i: u32, s: u32 },

    #[error("fusion_allowed alternates in the top half of the k-range (k = {k})")]
    NotStabilized { k: u32 },

    #[error("three-point insertion must be homogeneous, found grades {0:?}")]
    InhomogeneousInsertion(Vec<u32>),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

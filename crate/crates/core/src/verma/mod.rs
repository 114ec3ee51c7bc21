//! The Virasoro algebra acting on Verma modules: parametrizations, the
//! straightening engine and singular vectors.

pub mod params;
pub mod singular;
pub mod vector;

pub use params::{
    canonicalize_label_c1q, central_charge_pq, central_charge_t, is_irreducible_verma_c1q,
    kac_weight_pq, weight_alpha_beta_t, weight_c1q, HighestWeightParams, ModuleLabel, TParam,
};
pub use singular::{
    maximal_submodule_generators, memo_seed, memo_snapshot, memo_stats, singular_vector,
    solve_singular_vector, MemoStats,
};
pub use vector::{apply_mode, Straightener, VermaVector};

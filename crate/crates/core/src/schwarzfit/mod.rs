pub mod corpus;
mod fit;
mod verify;

pub use fit::{
    fit_qvalue, fit_reciprocal, fit_series, fit_system, functional_residual, hauptmodul_reciprocal,
    shift_constant, FitOptions, FitReport, FitStrategy, DEFAULT_SERIES_ORDER, GUARD_BAND,
};
pub use verify::{verify_corpus, VerifyRow, VerifyStatus};

//! Independent ground truth: Monte Carlo over unitary and Gaussian ensembles, exact
//! Wick pairings, and quadrature of moment measures.

mod mc;
mod quad;
mod wick;

pub use mc::{
    mc_schur_ginibre_identity, mc_schur_unitary_identity, mc_suite, sample_ginibre, sample_haar_unitary,
    CMat, Ensemble, McCheck, McConfig, McEstimate, McSuite, RngStream,
};
pub use quad::{
    mu_annihilation_check, mu_moment_check, MomentCase, MomentMeasure, QuadReport,
};
pub use wick::{quartic_wick, wick_gaussian_moment, wick_pairing_count};

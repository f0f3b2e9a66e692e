use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TauError {
    #[error("invalid partition {0}")]
    InvalidPartition(String),
    #[error("inner partition {inner} is not contained in {outer}")]
    NotContained { outer: String, inner: String },
    #[error("r has a pole at k = {k}{}", cell_note(.cell))]
    Pole { k: i64, cell: Option<(usize, usize)> },
    #[error("r vanishes at k = {k}, which this operation divides by")]
    ZeroOfR { k: i64 },
    #[error("q-power q^{exponent} is not rational for q = {q}")]
    NonIntegerQPower { q: String, exponent: String },
    #[error("eigenvalues {0} and {1} coincide")]
    CoincidentEigenvalues(usize, usize),
    #[error("h_{0}(u) vanishes, the normal-matrix map is undefined")]
    VanishingMoment(usize),
    #[error("polynomial is not divisible: {0}")]
    NotDivisible(String),
    #[error("state needs site {site}, outside window [{lo}, {hi}]")]
    WindowOverflow { site: i64, lo: i64, hi: i64 },
    #[error("invalid Lemma 1 index pattern: {0}")]
    InvalidIndexPattern(String),
    #[error("odd total degree {0} has no Gaussian pairing")]
    OddTotal(usize),
    #[error("pairing enumeration too large: total degree {0} > 12")]
    TooLarge(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

fn cell_note(cell: &Option<(usize, usize)>) -> String {
    match cell {
        Some((i, j)) => format!(" (cell ({i},{j}))"),
        None => String::new(),
    }
}

//! Tau functions of hypergeometric type in exact arithmetic.

pub mod error;
pub mod fock;
pub mod models;
pub mod oracle;
pub mod partitions;
pub mod symfun;
pub mod tau;
pub mod weights;

pub use error::TauError;
pub use partitions::{enumerate, Partition, SkewShape};
pub use symfun::{PolySeries, Rational, TimesVector, VarSpace};
pub use tau::{tau_series, Side, TauSeries, TauSpec};
pub use weights::ContentFunction;

//! Argument grammar. Every `ValueEnum`/`Subcommand` here is routed in `commands`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use taukit_core::symfun::{parse_rational, Rational};
use taukit_core::{ContentFunction, Partition, Side};

#[derive(Parser, Debug)]
#[command(name = "taukit", version, about = "Exact tau functions of hypergeometric type")]
pub struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, env = "TAUKIT_THREADS")]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write a run manifest (config, version, wall time, output digest) here.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Partition data: conjugate, Frobenius coordinates, contents, hooks, enumeration.
    Partition(PartitionCmd),
    /// Schur, skew Schur and complete symmetric functions at a point.
    Schur(SchurArgs),
    /// Content products, hook products, Pochhammer symbols and c_n for one r.
    Weights(WeightsArgs),
    /// Truncated tau function sum r_l(n) s_l(t) s_l(t*).
    Tau(TauArgs),
    /// Baker-Akhiezer coefficients.
    Ba(BaArgs),
    /// Hypergeometric tau functions.
    #[command(subcommand)]
    Hyper(HyperCmd),
    /// Matrix-model series.
    #[command(subcommand)]
    Model(ModelCmd),
    /// Fermionic Fock-space computations.
    #[command(subcommand)]
    Fock(FockCmd),
    /// Independent oracles: Monte Carlo, Wick pairings, quadrature.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Identity checks and the acceptance suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Args, Debug)]
pub struct PartitionCmd {
    #[command(subcommand)]
    pub action: PartitionAction,
}

#[derive(Subcommand, Debug)]
pub enum PartitionAction {
    Show {
        #[arg(long, value_parser = partition)]
        lambda: Partition,
    },
    List {
        #[arg(long)]
        weight: usize,
        #[arg(long)]
        length: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
    },
}

#[derive(Args, Debug)]
pub struct SchurArgs {
    #[arg(long, value_parser = partition)]
    pub lambda: Partition,
    /// Inner shape for a skew function.
    #[arg(long, value_parser = partition)]
    pub mu: Option<Partition>,
    /// Times `t_1,t_2,...`.
    #[arg(long, value_parser = list, conflicts_with = "x")]
    pub t: Option<std::vec::Vec<Rational>>,
    /// Eigenvalues; times are their Miwa transform.
    #[arg(long, value_parser = list)]
    pub x: Option<std::vec::Vec<Rational>>,
}

#[derive(Args, Debug)]
pub struct WeightsArgs {
    #[arg(long, value_parser = content, default_value = "one")]
    pub r: ContentFunction,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub n: i64,
    #[arg(long, value_parser = partition)]
    pub lambda: Partition,
    #[arg(long, value_parser = partition)]
    pub mu: Option<Partition>,
    /// Parameter of `(a)_lambda`.
    #[arg(long, value_parser = rational)]
    pub a: Option<Rational>,
    #[arg(long, value_parser = rational)]
    pub q: Option<Rational>,
}

#[derive(Args, Debug)]
pub struct TauArgs {
    #[arg(long, value_parser = content, default_value = "one")]
    pub r: ContentFunction,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub n: i64,
    /// `t:K`, `x:N`, `times:...`, `eigs:...`, `ta:a`, `inf`, `qgeom:q`.
    #[arg(long, value_parser = side)]
    pub t: Side,
    #[arg(long, value_parser = side)]
    pub tstar: Side,
    #[arg(long)]
    pub deg: usize,
    /// Restrict to `l(lambda) <= cap`.
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Args, Debug)]
pub struct BaArgs {
    #[arg(long, value_parser = content, default_value = "one")]
    pub r: ContentFunction,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub n: i64,
    #[arg(long, value_parser = list)]
    pub tstar: std::vec::Vec<Rational>,
    #[arg(long)]
    pub deg: usize,
    #[arg(long)]
    pub dual: bool,
}

#[derive(Args, Debug)]
pub struct HyperParams {
    #[arg(long, value_parser = list, default_value = "")]
    pub a: std::vec::Vec<Rational>,
    #[arg(long, value_parser = list, default_value = "")]
    pub b: std::vec::Vec<Rational>,
    /// Charge `M`.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub m: i64,
    #[arg(long)]
    pub deg: usize,
}

#[derive(Subcommand, Debug)]
pub enum HyperCmd {
    /// `pFs(a; b; x)`; `--x` is an eigenvalue list or a specialization.
    Pfs {
        #[command(flatten)]
        p: HyperParams,
        #[arg(long, value_parser = arg_side)]
        x: Side,
    },
    /// Two-argument `pFs(a; b; x, y)`.
    Two {
        #[command(flatten)]
        p: HyperParams,
        #[arg(long, value_parser = arg_side)]
        x: Side,
        #[arg(long, value_parser = arg_side)]
        y: Side,
    },
    /// Basic hypergeometric `pPhis` with integer exponents `q^a`.
    Qphi {
        #[command(flatten)]
        p: HyperParams,
        #[arg(long, value_parser = rational)]
        q: Rational,
        #[arg(long, value_parser = arg_side)]
        x: Side,
        #[arg(long, value_parser = arg_side)]
        y: Option<Side>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ModelCmd {
    /// Quartic Hermitian model: orders in g4/g^2, Wick cross-check, printed-value report.
    Quartic {
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// Evaluate the truncated series at `N`, `g`, `g4`.
        #[arg(long)]
        at_n: Option<i64>,
        #[arg(long, value_parser = rational, default_value = "1")]
        g: Rational,
        #[arg(long, value_parser = rational, default_value = "0")]
        g4: Rational,
        /// Compare every order with the Wick pairing oracle.
        #[arg(long)]
        check_oracle: bool,
    },
    /// Two-matrix model, with the Gauss closed form for `n = 1`.
    Two {
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, value_parser = side, default_value = "t:2")]
        t: Side,
        #[arg(long, value_parser = side, default_value = "t:2")]
        tstar: Side,
        #[arg(long)]
        deg: usize,
    },
    /// HCIZ series and its determinant form.
    Hciz {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        deg: usize,
    },
    /// Normal-matrix model: r on the negative axis from the potential `u`.
    Nmm {
        #[arg(long, value_parser = list)]
        u: std::vec::Vec<Rational>,
        #[arg(long, value_parser = content)]
        r: Option<ContentFunction>,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, value_parser = side, default_value = "t:3")]
        t: Side,
        #[arg(long, value_parser = side, default_value = "t:3")]
        tstar: Side,
        #[arg(long)]
        deg: usize,
    },
    /// Gross-Witten type unitary integral with external `JJ+` eigenvalues.
    Gw {
        #[arg(long)]
        n: i64,
        #[arg(long, value_parser = list)]
        jj: std::vec::Vec<Rational>,
        #[arg(long)]
        deg: usize,
    },
    /// Unitary two-matrix model (length cut `n`).
    Unitary {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = side, default_value = "t:3")]
        t: Side,
        #[arg(long, value_parser = side, default_value = "t:3")]
        tstar: Side,
        #[arg(long)]
        deg: usize,
    },
    /// Generalized angle integrals over U(n), complex matrices, or the GW type.
    Gen43 {
        #[arg(long, value_enum)]
        kind: AngleArg,
        #[arg(long, value_parser = content)]
        r: ContentFunction,
        /// Second content function for `--kind gw`.
        #[arg(long, value_parser = content)]
        rt: Option<ContentFunction>,
        #[arg(long)]
        n: i64,
        /// `ta:a` or `delta`.
        #[arg(long, default_value = "delta")]
        star: String,
        #[arg(long)]
        swapped: bool,
        #[arg(long, value_parser = arg_side)]
        x: Side,
        #[arg(long, value_parser = arg_side)]
        y: Side,
        #[arg(long)]
        deg: usize,
    },
    /// Loop scalar products and compositions of several weight tables.
    Loop {
        /// Repeat for each factor.
        #[arg(long = "r", value_parser = content)]
        rs: Vec<ContentFunction>,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        n: i64,
        #[arg(long)]
        deg: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AngleArg {
    Unitary,
    Complex,
    Gw,
}

#[derive(Subcommand, Debug)]
pub enum FockCmd {
    /// `<n| e^H(t) e^-A(t*) |n>` on the Fock space against the Schur series.
    Vacuum {
        #[arg(long, value_parser = content, default_value = "one")]
        r: ContentFunction,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        n: i64,
        #[arg(long)]
        deg: usize,
    },
    /// Fermion monomials against signed Schur functions.
    Lemma1 {
        /// Decreasing indices `i_1 > ... >= 0`; omit to enumerate.
        #[arg(long, value_parser = int_list)]
        i: Option<std::vec::Vec<i64>>,
        #[arg(long, value_parser = int_list, default_value = "")]
        j: std::vec::Vec<i64>,
        #[arg(long, default_value_t = 5)]
        deg: usize,
        #[arg(long, default_value_t = 9)]
        imax: i64,
        #[arg(long, default_value_t = 5)]
        jmax: i64,
        #[arg(long, default_value_t = 5)]
        modes: usize,
    },
    /// Graded trace of `e^H0` against the weight sum.
    Trace {
        #[arg(long, value_parser = content)]
        r: ContentFunction,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        n: i64,
        #[arg(long)]
        deg: usize,
    },
    /// Operator identities: Heisenberg, commutation, realizations, matrix elements.
    Suite {
        #[arg(long, value_parser = content)]
        r: ContentFunction,
        #[arg(long, value_parser = content)]
        rt: ContentFunction,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, default_value_t = 4)]
        deg: usize,
    },
    /// Run one named check family and report pass/fail with counterexamples.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, value_parser = content, default_value = "one")]
        r: ContentFunction,
        /// Second weight for commutation and matrix-element checks.
        #[arg(long, value_parser = content, default_value = "linear")]
        rt: ContentFunction,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, default_value_t = 4)]
        deg: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Heisenberg,
    Lemma1,
    Prop2,
    Prop3,
    Trace,
    Vacuum,
    Schur,
    Commutation,
    Matrix,
}

#[derive(Args, Debug)]
pub struct McArgs {
    /// Diagonal of A.
    #[arg(long, value_parser = list)]
    pub a: std::vec::Vec<Rational>,
    /// Diagonal of B.
    #[arg(long, value_parser = list)]
    pub b: std::vec::Vec<Rational>,
    /// Single identity; omit to run all shapes up to `--dmax`.
    #[arg(long, value_parser = partition)]
    pub lambda: Option<Partition>,
    #[arg(long, value_parser = partition)]
    pub mu: Option<Partition>,
    #[arg(long, default_value_t = 3)]
    pub dmax: usize,
    #[arg(long, default_value_t = 20240601)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 64)]
    pub chunks: usize,
    #[arg(long, default_value_t = 3.0)]
    pub sigma: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MuCase {
    /// `e^{-xy}` on R x iR.
    Ri,
    /// `(xy)^{-1} e^{1/(xy)}` on two circles.
    Circles,
    /// `1F1(a; b; -x)` on the half line.
    HalfLine,
    /// `(1-x)^{-a}` on [0, 1].
    Interval,
    /// Recurrence residual of the moment sequence of r.
    Annihilation,
}

#[derive(Subcommand, Debug)]
pub enum OracleCmd {
    /// Haar-unitary Monte Carlo of the Schur averaging identities.
    Haar(McArgs),
    /// Complex Ginibre Monte Carlo of the Schur averaging identities.
    Ginibre(McArgs),
    /// Exact Gaussian trace moments by pairing enumeration.
    Wick {
        #[arg(long, value_parser = usize_list)]
        ks: std::vec::Vec<usize>,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long, value_parser = rational, default_value = "1")]
        g: Rational,
    },
    /// Moment-measure quadrature and annihilation checks.
    Mu {
        #[arg(long, value_enum)]
        case: MuCase,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, value_parser = rational)]
        a: Option<Rational>,
        #[arg(long, value_parser = rational)]
        b: Option<Rational>,
        #[arg(long, value_parser = content)]
        r: Option<ContentFunction>,
        #[arg(long, default_value_t = 12)]
        deg: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DetKind {
    One,
    Two,
    Deriv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    Fast,
    Full,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Cauchy identity through bidegree `deg`.
    Cauchy {
        #[arg(long, default_value_t = 10)]
        deg: usize,
    },
    /// Hirota bilinear residual.
    Hirota {
        #[arg(long, value_parser = content, default_value = "one")]
        r: ContentFunction,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, default_value_t = 5)]
        deg: usize,
    },
    /// Hypergeometric ODE residual of one-variable `pFs`.
    Ode {
        #[arg(long, value_parser = list, default_value = "")]
        a: std::vec::Vec<Rational>,
        #[arg(long, value_parser = list, default_value = "")]
        b: std::vec::Vec<Rational>,
        #[arg(long, default_value_t = 30)]
        deg: usize,
    },
    /// q-difference residual of one-variable `pPhis`.
    Qdiff {
        #[arg(long, value_parser = list, default_value = "")]
        a: std::vec::Vec<Rational>,
        #[arg(long, value_parser = list, default_value = "")]
        b: std::vec::Vec<Rational>,
        #[arg(long, value_parser = rational)]
        q: Rational,
        #[arg(long, default_value_t = 30)]
        deg: usize,
    },
    /// Determinant representations against the series.
    Det {
        #[arg(long, value_enum)]
        kind: DetKind,
        #[arg(long, value_parser = content)]
        r: ContentFunction,
        /// Charge; defaults to the size.
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i64>,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = side, default_value = "inf")]
        tstar: Side,
        #[arg(long)]
        deg: usize,
    },
    /// Swap, reflection and scaling symmetries.
    Symmetry {
        #[arg(long, value_parser = content)]
        r: ContentFunction,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, default_value_t = 6)]
        deg: usize,
        #[arg(long, value_parser = rational, default_value = "2")]
        a: Rational,
    },
    /// One acceptance criterion, by number or name.
    Criterion {
        name: String,
        #[arg(long)]
        timings: bool,
        #[arg(long, default_value_t = 20240601)]
        seed: u64,
    },
    /// The whole acceptance suite.
    All {
        #[arg(long, value_enum, default_value_t = ProfileArg::Fast)]
        profile: ProfileArg,
        /// Inject a fault into the named check.
        #[arg(long)]
        poison: Vec<String>,
        #[arg(long)]
        timings: bool,
        #[arg(long, default_value_t = 20240601)]
        seed: u64,
    },
}

fn msg(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(msg)
}

pub fn list(s: &str) -> Result<Vec<Rational>, String> {
    let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(rational).collect()
}

fn int_list(s: &str) -> Result<Vec<i64>, String> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(msg)).collect()
}

fn usize_list(s: &str) -> Result<Vec<usize>, String> {
    int_list(s)?
        .into_iter()
        .map(|x| usize::try_from(x).map_err(|_| format!("negative entry {x}")))
        .collect()
}

pub fn partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(msg)
}

pub fn content(s: &str) -> Result<ContentFunction, String> {
    s.parse().map_err(msg)
}

pub fn side(s: &str) -> Result<Side, String> {
    s.parse().map_err(msg)
}

/// A bare list is a numeric eigenvalue list.
fn arg_side(s: &str) -> Result<Side, String> {
    if s.contains(':') || s.trim() == "inf" {
        side(s)
    } else {
        Ok(Side::Eigen(list(s)?))
    }
}

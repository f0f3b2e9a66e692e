//! One test per acceptance criterion, each at its stated tolerance and time limit.
//! Run with `--nocapture` to see the `[PASS]`/`[FAIL]` line and its detail.

use taukit_cli::criteria::{id_of, run_criterion, Poison};
use taukit_core::oracle::McConfig;

fn check(name: &str) {
    let id = id_of(name).unwrap();
    let o = run_criterion(id, &Poison::default(), McConfig::default());
    println!("{}", o.line());
    if let Some(c) = &o.counterexample {
        println!("      counterexample: {c}");
    }
    assert!(o.passed, "{}", o.line());
}

macro_rules! criteria {
    ($($test:ident => $name:literal),* $(,)?) => {
        $(
            #[test]
            fn $test() {
                check($name);
            }
        )*
    };
}

criteria! {
    c01_cauchy => "cauchy",
    c02_fock_equivalence => "fock-equivalence",
    c03_lemma1 => "lemma1",
    c04_determinants => "determinants",
    c05_residuals => "residuals",
    c06_quartic => "quartic",
    c07_gauss_closed_form => "gauss-closed-form",
    c08_monte_carlo => "monte-carlo",
    c09_moment_measures => "moment-measures",
    c10_rational_r_lemmas => "rational-r-lemmas",
    c11_trace => "trace",
}

#[test]
fn poisoned_hirota_is_caught() {
    let poison = Poison::parse(&["hirota".to_string()]).unwrap();
    let o = run_criterion(id_of("residuals").unwrap(), &poison, McConfig::default());
    println!("{}", o.line());
    assert!(!o.passed);
    assert!(o.counterexample.is_some());
}

// Randomized axiom checks for a few measures, including one that must fail.
// $ cargo run --release --example axiom_suite

use sandwich_coherence::axioms::{run_suite, MeasureFn, ScalarFn};
use sandwich_coherence::{Alpha, RngSeed, Solver};

fn main() -> sandwich_coherence::Result<()> {
    let s1 = MeasureFn::c_s1(Alpha::s1(0.75)?, Solver::default())?;
    let measures = [
        s1.clone(),
        MeasureFn::c_s(Alpha::s(2.0)?, Solver::default())?,
        MeasureFn::broken(),
        s1.compose(&ScalarFn::square()),
    ];
    for m in &measures {
        let suite = run_suite(m, 3, 100, RngSeed(1));
        println!(
            "{} ({})",
            m.name(),
            if suite.passed() { "pass" } else { "fail" }
        );
        for r in &suite.reports {
            println!(
                "  {:<4} trials {:<4} max excess {:>10.3e} seed {}",
                r.axiom.to_string(),
                r.trials,
                r.max_violation,
                r.worst_case_seed.0
            );
        }
    }
    Ok(())
}

// f(C) on qubits. sqrt of the l1 norm meets the pointwise conditions
// on f but fails convexity.
// $ cargo run --example qubit_functions

use sandwich_coherence::axioms::{
    qubit_function_measure, qubit_necessity_search, MeasureFn, NecessitySearch, ScalarFn,
};
use sandwich_coherence::RngSeed;

fn main() -> sandwich_coherence::Result<()> {
    let l1 = MeasureFn::l1_qubit();
    for f in [ScalarFn::identity(), ScalarFn::square(), ScalarFn::sqrt()] {
        let suite = qubit_function_measure(&f, &l1, 200, RngSeed(9))?;
        print!("{:<8}", f.name());
        for r in &suite.reports {
            print!(" {} {:>9.2e}", r.axiom, r.max_violation);
        }
        println!();
    }

    let bump = ScalarFn::new("bump", |x| x * (1.0 - x).abs())?;
    println!(
        "bump conditions: {:?}",
        bump.check_qubit_conditions().err().map(|e| e.to_string())
    );
    match qubit_necessity_search(&bump, &l1, 200, RngSeed(9)) {
        NecessitySearch::ViolationFound(s) => println!(
            "bump: violation found in {} axioms",
            s.reports.iter().filter(|r| !r.passed).count()
        ),
        NecessitySearch::NoViolationFound(_) => println!("bump: no violation found"),
    }
    Ok(())
}

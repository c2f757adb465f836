// f(C) for a nonlinear f breaks block additivity.
// $ cargo run --example linearization

use sandwich_coherence::axioms::{linearization_counterexample, MeasureFn, ScalarFn};
use sandwich_coherence::{Alpha, Solver};

fn main() -> sandwich_coherence::Result<()> {
    let m = MeasureFn::c_s1(Alpha::half(), Solver::default())?;
    for f in [ScalarFn::identity(), ScalarFn::square(), ScalarFn::sqrt()] {
        let w = linearization_counterexample(&f, &m, 3)?;
        println!(
            "{}: violation {:.6} at p2 = {}",
            f.name(),
            w.violation,
            w.p2
        );
        for (p2, v) in &w.per_weight {
            println!("  p2 {p2:.1}  {v:.6}");
        }
    }
    Ok(())
}

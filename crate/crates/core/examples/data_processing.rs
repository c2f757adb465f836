// Data processing for the sandwiched quantity under random CPTP maps.
// $ cargo run --example data_processing

use sandwich_coherence::axioms::check_data_processing;
use sandwich_coherence::channels::{apply_channel, random_cptp_channel};
use sandwich_coherence::{random_density, sandwiched_renyi, Alpha, RngSeed};

fn main() -> sandwich_coherence::Result<()> {
    let sigma = random_density(3, 3, RngSeed(1))?;
    let rho = random_density(3, 3, RngSeed(2))?;
    let phi = random_cptp_channel(3, 2, RngSeed(3))?;
    let alpha = Alpha::entropy(0.75)?;
    let before = sandwiched_renyi(&sigma, &rho, alpha)?;
    let after = sandwiched_renyi(
        &apply_channel(&phi, &sigma)?,
        &apply_channel(&phi, &rho)?,
        alpha,
    )?;
    println!("before {before:.10}  after {after:.10}");

    for a in [0.5, 0.75, 0.9] {
        let r = check_data_processing(Alpha::entropy(a)?, 3, 200, RngSeed(4));
        println!(
            "alpha {a}: {} trials, max excess {:.3e}, {}",
            r.trials,
            r.max_violation,
            if r.passed { "pass" } else { "fail" }
        );
    }
    Ok(())
}

// Both families across alpha for one mixed qutrit state.
// $ cargo run --example alpha_sweep

use sandwich_coherence::{c_s, c_s1, random_density, Alpha, RngSeed};

fn main() -> sandwich_coherence::Result<()> {
    let rho = random_density(3, 3, RngSeed(11))?;
    println!("alpha,measure,value,converged");
    for k in 0..10 {
        let a = 0.5 + 0.05 * k as f64;
        let r = c_s1(&rho, Alpha::s1(a)?)?;
        println!("{a:.2},s1,{:.10},{}", r.value, r.report.converged);
    }
    for a in [0.5, 0.75, 0.9, 1.1, 1.5, 2.0, 3.0, 5.0] {
        let r = c_s(&rho, Alpha::s(a)?)?;
        println!("{a:.2},s,{:.10},{}", r.value, r.report.converged);
    }
    Ok(())
}

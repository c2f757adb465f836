// c_s1 at alpha = 1/2 is the geometric coherence 1 - max F(rho, sigma)^2.
// c_s at alpha = 1/2 comes out at twice that.
// $ cargo run --example geometric_coherence

use sandwich_coherence::{
    c_s, c_s1, fidelity, geometric_coherence, random_density, Alpha, DensityMatrix, RngSeed,
};

fn main() -> sandwich_coherence::Result<()> {
    let rho = random_density(3, 2, RngSeed(7))?;
    let g = geometric_coherence(&rho)?;
    let sigma = DensityMatrix::from_diag(&g.optimal_sigma);

    println!("geometric coherence  {:.10}", g.value);
    println!(
        "1 - F(rho, sigma*)^2 {:.10}",
        1.0 - fidelity(&rho, &sigma)?.powi(2)
    );
    println!("closest sigma        {:?}", g.optimal_sigma.as_slice());
    println!(
        "c_s1 at 1/2          {:.10}",
        c_s1(&rho, Alpha::half())?.value
    );
    println!(
        "c_s at 1/2           {:.10}",
        c_s(&rho, Alpha::s(0.5)?)?.value
    );
    Ok(())
}

// Closed forms for pure states next to the optimizer.
// $ cargo run --example pure_states

use num_complex::Complex64;
use sandwich_coherence::{c_s, c_s1, c_s1_pure, c_s_pure, Alpha, PureState};

fn main() -> sandwich_coherence::Result<()> {
    let psi = PureState::new(vec![
        Complex64::new(0.8f64.sqrt(), 0.0),
        Complex64::new(0.0, 0.2f64.sqrt()),
    ])?;
    let rho = psi.to_density();

    println!("alpha  c_s1 closed   c_s1 optimized");
    for a in [0.5, 0.6, 0.75, 0.9] {
        let alpha = Alpha::s1(a)?;
        println!(
            "{a:<6} {:<13.10} {:.10}",
            c_s1_pure(&psi, alpha)?,
            c_s1(&rho, alpha)?.value
        );
    }

    println!("alpha  c_s closed    c_s optimized");
    for a in [0.5, 0.75, 1.5, 2.0, 3.0] {
        let alpha = Alpha::s(a)?;
        println!(
            "{a:<6} {:<13.10} {:.10}",
            c_s_pure(&psi, alpha)?,
            c_s(&rho, alpha)?.value
        );
    }
    Ok(())
}

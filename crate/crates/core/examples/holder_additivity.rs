// Holder's inequality and the two-block optimum used for block additivity.
// $ cargo run --example holder_additivity

use sandwich_coherence::simplexopt::{holder_check, holder_two_block};
use sandwich_coherence::Alpha;

fn main() -> sandwich_coherence::Result<()> {
    let a = [2.0, 0.1, 0.7];
    let b = [0.3, 1.5, 0.2];
    for alpha in [0.5, 0.75, 2.0] {
        let h = holder_check(&a, &b, alpha)?;
        println!(
            "alpha {alpha}: lhs {:.6} rhs {:.6} holds {} equality {}",
            h.lhs, h.rhs, h.regime_satisfied, h.equality
        );
    }
    let h = holder_check(&[1.0, 2.0], &[1.0, 2.0], 0.5)?;
    println!(
        "proportional: lhs {:.6} rhs {:.6} equality {}",
        h.lhs, h.rhs, h.equality
    );

    let alpha = Alpha::s1(0.5)?;
    for (t1, t2) in [(1.0, 1.0), (0.9f64.sqrt(), 1.0), (0.3, 0.8)] {
        println!(
            "two blocks t1 {t1:.4} t2 {t2:.4}: {:.10}",
            holder_two_block(t1, t2, 0.5, 0.5, alpha)?
        );
    }
    Ok(())
}

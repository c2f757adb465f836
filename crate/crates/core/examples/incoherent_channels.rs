// Random incoherent operations and their selective outcomes.
// $ cargo run --example incoherent_channels

use sandwich_coherence::channels::{
    apply_channel, is_incoherent_kraus, random_incoherent_channel, selective_outcomes,
    STRUCTURAL_ZERO,
};
use sandwich_coherence::states::random_incoherent;
use sandwich_coherence::{c_s1, random_density, Alpha, RngSeed};

fn main() -> sandwich_coherence::Result<()> {
    let k = random_incoherent_channel(3, 3, RngSeed(5))?;
    println!("kraus operators {}", k.operators().len());
    println!("completeness residual {:.2e}", k.completeness_residual());
    println!("incoherent {}", is_incoherent_kraus(&k, STRUCTURAL_ZERO));

    let delta = random_incoherent(3, RngSeed(6))?;
    println!(
        "incoherent input stays diagonal: {}",
        apply_channel(&k, &delta)?.is_diagonal(1e-12)
    );

    let alpha = Alpha::s1(0.75)?;
    let rho = random_density(3, 2, RngSeed(7))?;
    let before = c_s1(&rho, alpha)?.value;
    let after = c_s1(&apply_channel(&k, &rho)?, alpha)?.value;
    let mut average = 0.0;
    for (p, out) in selective_outcomes(&k, &rho)? {
        average += p * c_s1(&out, alpha)?.value;
    }
    println!("c_s1 before {before:.8}  after {after:.8}  outcome average {average:.8}");
    Ok(())
}

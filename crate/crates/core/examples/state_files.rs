// Writing and reading the JSON state and channel formats.
// $ cargo run --example state_files

use sandwich_coherence::channels::random_incoherent_channel;
use sandwich_coherence::format::{read_channel, read_state, write_channel, write_state, StateFile};
use sandwich_coherence::{c_s, maximally_coherent, random_density, Alpha, RngSeed};

fn main() -> sandwich_coherence::Result<()> {
    let dir = std::env::temp_dir().join("sandwich-coherence-example");
    std::fs::create_dir_all(&dir)?;

    let mixed = StateFile::Mixed(random_density(2, 2, RngSeed(3))?);
    let pure = StateFile::Pure(maximally_coherent(3)?);
    write_state(&dir.join("mixed.json"), &mixed)?;
    write_state(&dir.join("pure.json"), &pure)?;
    println!("{}", std::fs::read_to_string(dir.join("pure.json"))?.trim());

    for name in ["mixed.json", "pure.json"] {
        let s = read_state(&dir.join(name))?;
        let v = c_s(&s.to_density(), Alpha::s(2.0)?)?.value;
        println!("{name}: dim {} c_s(2) {v:.10}", s.dim());
    }

    let k = random_incoherent_channel(2, 2, RngSeed(4))?;
    write_channel(&dir.join("channel.json"), &k)?;
    println!(
        "channel round trip exact: {}",
        read_channel(&dir.join("channel.json"))? == k
    );
    Ok(())
}

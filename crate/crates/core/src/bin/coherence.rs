fn main() {
    env_logger::init();
    std::process::exit(sandwich_coherence::cli::run(std::env::args_os()));
}

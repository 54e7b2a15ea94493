fn main() {
    std::process::exit(xxz_phase::cli::run(std::env::args_os()));
}

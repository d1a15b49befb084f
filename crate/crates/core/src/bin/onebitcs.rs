fn main() {
    std::process::exit(onebitcs::harness::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(nearness::cli::main_with_args(std::env::args().collect()));
}

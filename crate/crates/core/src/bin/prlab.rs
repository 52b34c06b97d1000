fn main() {
    std::process::exit(prlab::cli::main_with_args(std::env::args()));
}

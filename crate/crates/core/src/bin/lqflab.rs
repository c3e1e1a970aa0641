fn main() {
    std::process::exit(lqflab::cli::main());
}

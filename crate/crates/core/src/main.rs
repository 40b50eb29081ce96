fn main() {
    std::process::exit(arrangements::cli::main());
}

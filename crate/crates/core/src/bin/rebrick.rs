fn main() {
    std::process::exit(rebrick::cli::main());
}

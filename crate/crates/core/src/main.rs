fn main() {
    std::process::exit(passage::cli::main());
}

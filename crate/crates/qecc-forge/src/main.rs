fn main() {
    std::process::exit(qecc_forge::cli::run());
}

fn main() {
    std::process::exit(fes::cli::run());
}

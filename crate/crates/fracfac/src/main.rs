fn main() {
    std::process::exit(fracfac::cli::run());
}

fn main() {
    std::process::exit(gripstat::cli::run());
}

fn main() {
    std::process::exit(equihom::cli::run());
}

fn main() {
    std::process::exit(quadforge::cli::run(std::env::args().collect()));
}

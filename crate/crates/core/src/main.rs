fn main() {
    std::process::exit(spinqaa::cli::run(std::env::args().collect()));
}

fn main() {
    std::process::exit(tropical_markets::cli::run(std::env::args_os()));
}

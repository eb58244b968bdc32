fn main() {
    std::process::exit(minpoly::cli::cli_main(std::env::args()));
}

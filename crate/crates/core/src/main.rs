fn main() {
    std::process::exit(xi_criteria::cli::run(std::env::args_os()));
}

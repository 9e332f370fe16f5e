fn main() {
    std::process::exit(signotope::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(altspace::cli::run(std::env::args_os()));
}

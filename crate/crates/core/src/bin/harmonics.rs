fn main() {
    std::process::exit(harmonics::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(tomo_core::cli::run(std::env::args_os()));
}

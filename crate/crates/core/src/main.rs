fn main() {
    std::process::exit(starhess_core::cli::run(std::env::args_os()));
}

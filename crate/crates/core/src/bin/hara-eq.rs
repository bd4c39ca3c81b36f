fn main() {
    std::process::exit(hara_eq::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(rzeta::cli::main_from_args(std::env::args_os()));
}

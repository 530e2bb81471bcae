fn main() {
    std::process::exit(sphlap2::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(pocoh::cli::main_with_args(std::env::args_os()));
}

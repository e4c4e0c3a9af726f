fn main() {
    std::process::exit(genturan::cli::main_with_args(std::env::args_os()));
}

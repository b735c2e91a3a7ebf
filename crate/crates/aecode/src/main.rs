fn main() {
    std::process::exit(aecode::cli::main_with_args(std::env::args_os()));
}

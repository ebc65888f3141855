fn main() {
    std::process::exit(reclab::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(possing::cli::main_with_args(std::env::args_os()));
}

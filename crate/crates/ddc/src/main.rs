fn main() {
    std::process::exit(ddc::cli::main_with_args(std::env::args_os()));
}

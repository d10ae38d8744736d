fn main() {
    std::process::exit(fsg_cli::main_with_args(std::env::args_os()));
}

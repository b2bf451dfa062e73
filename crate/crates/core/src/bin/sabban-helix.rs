fn main() {
    std::process::exit(sabban_helix::cli::main_with_args(std::env::args_os()));
}

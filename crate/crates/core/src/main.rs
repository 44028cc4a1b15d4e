fn main() {
    std::process::exit(orbitkit::cli::main_with_args(std::env::args_os()));
}

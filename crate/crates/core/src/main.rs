fn main() {
    std::process::exit(quiver_cones::cli::main_with_args(std::env::args_os()));
}

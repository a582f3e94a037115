fn main() {
    std::process::exit(periodic_jacobi::cli::main_with_args(std::env::args_os()));
}

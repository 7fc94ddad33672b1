fn main() {
    std::process::exit(affine_coxeter::cli::run(std::env::args_os()));
}

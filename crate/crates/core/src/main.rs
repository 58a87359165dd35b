fn main() {
    std::process::exit(majdyn::cli::main_with_args(std::env::args_os()));
}

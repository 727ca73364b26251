fn main() {
    std::process::exit(fprmt::cli::main_with_args(std::env::args_os()));
}

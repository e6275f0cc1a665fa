fn main() {
    std::process::exit(noisyhull::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(qcapelli::cli::main_with_args(std::env::args_os()));
}

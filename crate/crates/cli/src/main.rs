fn main() {
    std::process::exit(tribo_eis_cli::main_with_args(std::env::args_os()));
}

fn main() {
    let code = factorlab_cli::run(std::env::args_os());
    std::process::exit(code);
}

fn main() {
    std::process::exit(counsel_cli::run(std::env::args_os()));
}

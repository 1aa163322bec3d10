fn main() {
    std::process::exit(cnoidal_cli::run(std::env::args_os()));
}

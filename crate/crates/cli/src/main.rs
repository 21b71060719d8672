fn main() {
    std::process::exit(sato_cli::run(std::env::args_os()));
}

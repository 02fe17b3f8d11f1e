fn main() {
    std::process::exit(tbmoc_cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(polycert::cli::run(std::env::args_os()));
}

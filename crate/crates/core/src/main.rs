fn main() {
    std::process::exit(dualis::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(dwm::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(agfiber::cli::run(std::env::args_os()));
}

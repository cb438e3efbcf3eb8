fn main() {
    std::process::exit(hyperlag::cli::run(std::env::args_os()));
}

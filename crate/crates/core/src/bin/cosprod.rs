fn main() {
    std::process::exit(cosprod::cli::run(std::env::args_os()));
}

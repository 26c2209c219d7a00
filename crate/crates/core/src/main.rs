fn main() {
    std::process::exit(wysiwim::cli::run(std::env::args_os()));
}

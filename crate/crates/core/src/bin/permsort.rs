fn main() {
    std::process::exit(permsort::cli::run(std::env::args_os()));
}

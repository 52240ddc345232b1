fn main() {
    std::process::exit(cubefactor::cli::run(std::env::args_os()));
}

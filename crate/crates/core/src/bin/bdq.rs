fn main() {
    std::process::exit(bdq::cli::run(std::env::args_os()));
}

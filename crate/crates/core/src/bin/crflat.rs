fn main() {
    std::process::exit(crflat::cli::run(std::env::args_os()));
}

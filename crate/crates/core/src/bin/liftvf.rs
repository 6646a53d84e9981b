fn main() {
    std::process::exit(liftvf::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(chern_core::cli::run(std::env::args_os()));
}

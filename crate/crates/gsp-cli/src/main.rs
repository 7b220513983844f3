fn main() {
    std::process::exit(gsp_cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(nlip_cli::run(std::env::args_os()));
}

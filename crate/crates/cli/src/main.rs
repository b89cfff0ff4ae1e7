fn main() {
    std::process::exit(bisphere_cli::run(std::env::args_os()));
}

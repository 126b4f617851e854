fn main() {
    std::process::exit(jcc::run_cli(std::env::args_os()));
}

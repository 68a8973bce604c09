fn main() {
    std::process::exit(relcyl::cli::main_with(std::env::args_os()));
}

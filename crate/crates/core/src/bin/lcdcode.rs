fn main() {
    std::process::exit(lcdcode::cli::run(std::env::args_os()));
}

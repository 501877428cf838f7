fn main() {
    std::process::exit(conjugate_sharp::cli::run(std::env::args_os()));
}

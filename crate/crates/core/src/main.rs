fn main() {
    std::process::exit(hadamard_sojourn::cli::run(std::env::args_os()));
}

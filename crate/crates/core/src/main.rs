fn main() {
    std::process::exit(trisect::cli::main_from_env());
}

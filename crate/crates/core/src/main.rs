fn main() {
    std::process::exit(geodesy::cli::run());
}

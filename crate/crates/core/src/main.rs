fn main() {
    std::process::exit(atiyah_lab::cli::run());
}

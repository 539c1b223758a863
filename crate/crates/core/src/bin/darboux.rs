fn main() {
    std::process::exit(darboux::cli::run());
}

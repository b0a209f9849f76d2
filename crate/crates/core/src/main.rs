fn main() {
    std::process::exit(bochner_bounds::cli::run());
}

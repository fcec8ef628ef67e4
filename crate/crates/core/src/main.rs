fn main() {
    std::process::exit(wanglab::cli::run());
}

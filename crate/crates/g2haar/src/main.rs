fn main() {
    std::process::exit(g2haar::cli::run());
}

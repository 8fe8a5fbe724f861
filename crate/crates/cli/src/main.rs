fn main() {
    std::process::exit(robust_scan_cli::main_with_env());
}

fn main() {
    std::process::exit(hgcong_cli::run(std::env::args_os()));
}

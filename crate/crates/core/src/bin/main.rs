fn main() {
    std::process::exit(sqg_disk::cli::run(std::env::args_os()));
}

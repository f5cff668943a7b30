fn main() {
    std::process::exit(fieldmaps::cli::run(std::env::args_os()));
}

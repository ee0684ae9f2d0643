fn main() {
    std::process::exit(kpaths::run(std::env::args_os()));
}

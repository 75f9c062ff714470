fn main() {
    std::process::exit(rmtgaps::run(std::env::args_os()));
}

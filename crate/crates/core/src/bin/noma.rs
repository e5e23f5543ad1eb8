fn main() {
    env_logger::init();
    std::process::exit(noma::cli::main());
}

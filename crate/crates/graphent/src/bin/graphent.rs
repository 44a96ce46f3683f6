fn main() {
    std::process::exit(graphent::cli::run(std::env::args()));
}

fn main() {
    std::process::exit(floorsum::cli::main());
}

fn main() {
    std::process::exit(poset_tiling::cli::main());
}

fn main() {
    std::process::exit(bmhull::cli::main_with_std());
}

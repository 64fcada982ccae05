fn main() {
    std::process::exit(quiver_da::cli::main_entry());
}

fn main() {
    std::process::exit(wordsym::cli::main());
}

fn main() {
    std::process::exit(impurity_negativity::cli::run(std::env::args_os()));
}

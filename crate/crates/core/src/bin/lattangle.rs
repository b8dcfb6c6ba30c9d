fn main() {
    std::process::exit(lattangle::cli::main_with_args(std::env::args_os()));
}

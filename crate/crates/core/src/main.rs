fn main() {
    std::process::exit(sl2_bernstein::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(rips_kunneth::execute(std::env::args_os()));
}

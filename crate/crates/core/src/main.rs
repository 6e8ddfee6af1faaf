fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(rect_motion::cli::run(&argv));
}

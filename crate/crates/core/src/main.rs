fn main() {
    let (code, out) = gd2::cli::run(std::env::args_os());
    println!("{out}");
    std::process::exit(code);
}

fn main() {
    let (code, out) = cck_cli::run(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}

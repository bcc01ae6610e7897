fn main() {
    let code = omega_cofrob::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}

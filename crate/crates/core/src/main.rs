fn main() {
    let caps = std::env::var(tokengraph::cli::CAPS_ENV).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = tokengraph::cli::run(std::env::args_os(), caps.as_deref(), &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}

use std::io::Write;

fn main() {
    if let Some(n) = std::env::var("WEIGHTLAB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        weightlab::par::configure_threads(n);
    }
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = weightlab::cli::run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}

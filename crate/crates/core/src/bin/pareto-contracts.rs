use std::io::Write;

use pareto_contracts::cli;

fn main() {
    match cli::thread_limit() {
        Ok(Some(n)) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                eprintln!("error: cannot start {n} worker threads: {e}");
                std::process::exit(2);
            }
        }
        Ok(None) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = cli::run(std::env::args_os(), &mut out, &mut std::io::stderr());
    let _ = out.flush();
    std::process::exit(code);
}

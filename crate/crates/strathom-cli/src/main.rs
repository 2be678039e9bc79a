use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let result = strathom_cli::run(&args);
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(result.stdout.as_bytes()).ok();
    stdout.flush().ok();
    std::process::exit(result.exit_code);
}

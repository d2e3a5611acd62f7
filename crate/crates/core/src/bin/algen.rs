use std::io::Write;

fn main() {
    let (code, out) = algen::cli::dispatch(std::env::args_os());
    let _ = std::io::stdout().write_all(out.as_bytes());
    std::process::exit(code);
}

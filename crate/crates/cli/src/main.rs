use std::ffi::OsString;

fn main() {
    let argv: Vec<OsString> = std::env::args_os().collect();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = casimir_scatter::run(&argv, &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}

use std::ffi::OsString;
use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<OsString> = std::env::args_os().collect();
    let inv = qharm_cli::run(argv.clone());
    eprint!("{}", inv.stderr);
    if !inv.output.is_empty() {
        let written = match qharm_cli::output_path(&argv) {
            Some(path) => std::fs::write(&path, &inv.output)
                .map_err(|e| format!("cannot write {}: {e}", path.display())),
            None => std::io::stdout()
                .write_all(inv.output.as_bytes())
                .map_err(|e| e.to_string()),
        };
        if let Err(e) = written {
            eprintln!("error: {e}");
            return ExitCode::from(qharm_cli::EXIT_ERROR as u8);
        }
    }
    ExitCode::from(inv.code as u8)
}

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use fermigauss_cli::config::Cli;
use fermigauss_cli::error::CliError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let result = fermigauss_cli::run(cli).and_then(|o| {
        match &o.out {
            Some(p) => std::fs::write(p, &o.text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?,
            None => {
                let _ = std::io::stdout().write_all(o.text.as_bytes());
            }
        }
        Ok(o.status)
    });
    match result {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

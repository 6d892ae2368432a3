use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use lambdakit_cli::{exit_code, resolve_config, run, Cli, EXIT_INVARIANT, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let result = resolve_config(&cli).and_then(|cfg| {
        if let Some(n) = cfg.threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| lambdakit::Error::Invalid(e.to_string()))?;
        }
        run(&cli, &cfg).map(|out| (cfg, out))
    });
    match result {
        Ok((cfg, out)) => {
            let written = match &cfg.output {
                Some(path) => std::fs::write(path, &out.text).map_err(|e| format!("{}: {e}", path.display())),
                None => std::io::stdout().write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE as u8);
            }
            match out.failure {
                Some(witness) => {
                    eprintln!("invariant failure: {witness}");
                    ExitCode::from(EXIT_INVARIANT as u8)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}

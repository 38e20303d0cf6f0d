use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use qgraph_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("qgraph: {e}");
            return ExitCode::from(2);
        }
    }
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = match run(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("qgraph: {e}");
            e.exit_code()
        }
    };
    if out.flush().is_err() {
        return ExitCode::from(3);
    }
    ExitCode::from(code as u8)
}

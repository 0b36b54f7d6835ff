use std::process::ExitCode;

use clap::Parser;

use conspec_cli::{run, CliError, Command};

#[derive(Parser)]
#[command(name = "conspec", version, about = "Constructible sheaves on finite spectral spaces")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli.command) {
        Ok(report) => {
            print!("{}", report.render(cli.json));
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::SelfTestFailed(_, report) = &e {
                print!("{}", report.render(cli.json));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use chernlab_lab::instances::INSTANCE_NAMES;
use chernlab_lab::session::{Status, DEFAULT_SEED};
use chernlab_lab::{parse, run_demo, run_session, FieldChoice, RunOptions, SessionOutcome};

#[derive(Parser)]
#[command(name = "chernlab", version, about = "Hilbert–Samuel coefficients and bound checks")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a session script.
    Run {
        script: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run a built-in lab instance and check its expected values.
    Demo {
        /// One of the built-in instance names.
        instance: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Write the JSON bundle here instead of standard output.
    #[arg(long, value_name = "FILE")]
    json: Option<PathBuf>,
    /// Write Hilbert–Samuel tables into this directory.
    #[arg(long, value_name = "DIR")]
    tsv: Option<PathBuf>,
    /// fp32003 (or another fpN) or qq; overrides the script.
    #[arg(long, value_parser = parse_field)]
    field: Option<FieldChoice>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Degree guard for Gröbner computations.
    #[arg(long, env = "CHERNLAB_MAXDEG")]
    maxdeg: Option<u32>,
    /// Allow instances marked expensive.
    #[arg(long)]
    include_expensive: bool,
}

fn parse_field(s: &str) -> Result<FieldChoice, String> {
    FieldChoice::from_flag(s).ok_or_else(|| format!("unknown field '{s}' (use fp32003 or qq)"))
}

impl Common {
    fn options(&self) -> RunOptions {
        RunOptions {
            seed: self.seed,
            maxdeg: self.maxdeg,
            field: self.field,
            include_expensive: self.include_expensive,
            ..RunOptions::default()
        }
    }

    fn emit(&self, out: &SessionOutcome) -> Result<(), String> {
        let json = out.bundle.to_json_string();
        match &self.json {
            Some(path) => fs::write(path, json).map_err(|e| format!("{}: {e}", path.display()))?,
            None => print!("{json}"),
        }
        if let Some(dir) = &self.tsv {
            fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            for t in &out.tables {
                let path = dir.join(&t.file_name);
                fs::write(&path, &t.contents).map_err(|e| format!("{}: {e}", path.display()))?;
            }
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, outcome) = match &cli.command {
        Cmd::Run { script, common } => {
            let text = match fs::read_to_string(script) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("{}: {e}", script.display());
                    return ExitCode::from(Status::Precondition.code() as u8);
                }
            };
            match parse(&text) {
                Ok(s) => (common, run_session(&s, &common.options())),
                Err(e) => {
                    eprintln!("{}:{e}", script.display());
                    return ExitCode::from(Status::Parse.code() as u8);
                }
            }
        }
        Cmd::Demo { instance, common } => match run_demo(instance, &common.options()) {
            Ok(out) => (common, out),
            Err(e) => {
                eprintln!("{e}");
                if !INSTANCE_NAMES.contains(&instance.as_str()) {
                    eprintln!("instances: {}", INSTANCE_NAMES.join(", "));
                }
                return ExitCode::from(Status::of_error(&e).code() as u8);
            }
        },
    };
    if let Err(e) = common.emit(&outcome) {
        eprintln!("{e}");
        return ExitCode::from(Status::Internal.code() as u8);
    }
    ExitCode::from(outcome.exit_code() as u8)
}

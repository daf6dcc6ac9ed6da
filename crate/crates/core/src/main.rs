use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use spinhol::appendix::Grid;
use spinhol::lie::LieLabel;
use spinhol::report::{self, Claim, Config, FormSource, Scenario, Task};
use spinhol::ReportError;

#[derive(Parser, Debug)]
#[command(name = "spinhol", version, about = "Exact fix and holonomy algebras of Clifford elements")]
struct Cli {
    /// Scenario document (JSON) to run before any subcommand.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Report file, one JSON record per line.
    #[arg(long, global = true, default_value = "report.jsonl")]
    out: PathBuf,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Largest power index for the spectrum identities.
    #[arg(long, global = true)]
    kmax: Option<usize>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug, Clone)]
struct SpecArgs {
    /// Eigenvalues with multiplicities, e.g. `1:1,-1:1`.
    #[arg(long)]
    spec: Option<String>,
    #[arg(long)]
    zero_dim: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the fix algebra of a form.
    Classify {
        /// `volume:N`, `unipotent-pair`, `su4`, `spinor-square:N:c1,...`, `file:PATH`
        #[arg(long)]
        form: Option<String>,
        #[command(flatten)]
        spectrum: SpecArgs,
        /// Expected label, e.g. `so(8,1)`; the record fails on mismatch.
        #[arg(long)]
        expect: Option<LieLabel>,
    },
    /// Check a stated classification on a concrete form.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        form: Option<String>,
        #[command(flatten)]
        spectrum: SpecArgs,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run acceptance suites.
    Suite {
        #[arg(long, conflicts_with = "criteria")]
        all: bool,
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u32>,
    },
    /// Exhaustive search for spectra satisfying the power identities.
    Spectra {
        #[arg(long, default_value_t = 4)]
        max_num: i64,
        #[arg(long, default_value_t = 1)]
        max_den: i64,
    },
    /// Build (or load from cache) and check a spinor representation.
    RepCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        no_cache: bool,
    },
}

fn form_source(form: Option<&str>, spectrum: &SpecArgs) -> Result<Option<FormSource>, ReportError> {
    match (form, &spectrum.spec) {
        (Some(_), Some(_)) => Err(ReportError::config("form", "give either --form or --spec")),
        (Some(f), None) => report::parse_form(f).map(Some),
        (None, Some(s)) => {
            let zero_dim = spectrum.zero_dim.ok_or_else(|| ReportError::config("zero_dim", "--spec needs --zero-dim"))?;
            Ok(Some(FormSource::Spectrum { spec: report::parse_spec(s)?, zero_dim }))
        }
        (None, None) => Ok(None),
    }
}

fn command_scenario(cmd: &Command) -> Result<Scenario, ReportError> {
    let (id, task) = match cmd {
        Command::Classify { form, spectrum, expect } => {
            let form =
                form_source(form.as_deref(), spectrum)?.ok_or_else(|| ReportError::config("form", "--form or --spec is required"))?;
            ("classify", Task::Classify { form, expect: expect.clone() })
        }
        Command::Verify { theorem, form, spectrum, n } => {
            let theorem: Claim = theorem.parse()?;
            let form = match form {
                Some(f) => Some(report::parse_form(f)?),
                None => None,
            };
            let spec = spectrum.spec.as_deref().map(report::parse_spec).transpose()?;
            ("verify", Task::Verify { theorem, form, spec, zero_dim: spectrum.zero_dim, n: *n })
        }
        Command::Suite { all, criteria } => {
            if !all && criteria.is_empty() {
                return Err(ReportError::config("suite", "pass --all or --criteria"));
            }
            ("suite", Task::Suite { criteria: if *all { Vec::new() } else { criteria.clone() } })
        }
        Command::Spectra { max_num, max_den } => {
            if *max_num < 1 || *max_den < 1 {
                return Err(ReportError::config("grid", "bounds must be positive"));
            }
            ("spectra", Task::SpectraSearch { grid: Grid { max_num: *max_num, max_den: *max_den }, k_max: None })
        }
        Command::RepCheck { n, no_cache } => ("rep-check", Task::RepCheck { n: *n, use_cache: !no_cache }),
    };
    Ok(Scenario { id: id.to_string(), seed: None, task })
}

fn build_config(cli: &Cli) -> Result<Config, ReportError> {
    let mut config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if cli.seed.is_some() {
        config.seed = cli.seed;
    }
    if let Some(k) = cli.kmax {
        config.options.k_max = k;
    }
    if let Some(cmd) = &cli.command {
        config.scenarios.push(command_scenario(cmd)?);
    } else if cli.config.is_none() {
        return Err(ReportError::config("command", "give a subcommand or --config"));
    }
    config.validate()?;
    Ok(config)
}

fn run(cli: &Cli) -> Result<i32, ReportError> {
    let config = build_config(cli)?;
    let records = report::run_all(&config, cli.jobs)?;
    report::write_report(&cli.out, &records)?;
    print!("{}", report::summary_table(&records));
    Ok(report::exit_status(&records))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

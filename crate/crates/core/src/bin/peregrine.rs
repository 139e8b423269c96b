use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use peregrine::scenario::{self, CompareWindow, Scenario, ScenarioId};
use peregrine::spectrum::{absolute_spectrum_scan, Region, SpectrumScan};
use peregrine::{Error, Result};

/// Spectral solvers for perturbed Peregrine breathers.
#[derive(Parser)]
#[command(name = "peregrine", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the scenario catalog.
    List,
    /// Run a scenario given by id or by a configuration file.
    Run {
        /// Scenario id or path to a key = value configuration file.
        config: String,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Extra `key=value` settings applied last.
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Max pointwise deviation between two run directories.
    Compare {
        dir_a: PathBuf,
        dir_b: PathBuf,
        #[arg(long, value_parser = parse_range, default_value = "-20,20", allow_hyphen_values = true)]
        x: (f64, f64),
        #[arg(long, value_parser = parse_range, default_value = "0,1", allow_hyphen_values = true)]
        t: (f64, f64),
    },
    /// Scan a rectangle of the spectral plane and write spectrum.csv.
    Spectrum {
        /// `re_min,re_max,im_min,im_max`.
        #[arg(long, default_value = "-3,3,-3,3", allow_hyphen_values = true)]
        region: String,
        #[arg(long, default_value_t = 121)]
        resolution: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let v: Vec<f64> = s.split(',').map(|p| p.trim().parse::<f64>()).collect::<std::result::Result<_, _>>().map_err(|e| e.to_string())?;
    match v.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(format!("expected a,b got '{s}'")),
    }
}

fn scenario_from_args(config: &str, preset: Option<String>, out: Option<PathBuf>, overrides: &[String]) -> Result<Scenario> {
    let mut pairs = if config.parse::<ScenarioId>().is_ok() {
        vec![("scenario".to_string(), config.to_string())]
    } else {
        let text = fs::read_to_string(config)
            .map_err(|e| Error::Config(format!("'{config}' is neither a scenario id nor a readable file: {e}")))?;
        let pairs = scenario::parse_pairs(&text)?;
        scenario::parse_config(&text)?;
        pairs
    };
    if let Some(p) = preset {
        pairs.push(("preset".into(), p));
    }
    if let Some(o) = out {
        pairs.push(("out".into(), o.display().to_string()));
    }
    for o in overrides {
        pairs.extend(scenario::parse_pairs(o)?);
    }
    Scenario::from_pairs(&pairs)
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::List => print!("{}", scenario::catalog_text()),
        Command::Run { config, preset, out, overrides } => {
            let s = scenario_from_args(&config, preset, out, &overrides)?;
            eprintln!("running {} ({:?}, {} steps) into {}", s.id, s.preset, s.steps, s.out.display());
            let m = scenario::run(&s)?;
            for w in &m.warnings {
                eprintln!("warning: {w}");
            }
            println!("{}", serde_json::to_string_pretty(&m.summary).map_err(|e| Error::Parse(e.to_string()))?);
        }
        Command::Compare { dir_a, dir_b, x, t } => {
            let c = scenario::compare_runs(&dir_a, &dir_b, CompareWindow { x, t })?;
            println!("max deviation {:e} over {} snapshot times", c.max_deviation, c.times.len());
        }
        Command::Spectrum { region, resolution, out } => {
            let r: Vec<f64> = region
                .split(',')
                .map(|p| p.trim().parse::<f64>().map_err(|_| Error::Config(format!("bad region '{region}'"))))
                .collect::<Result<_>>()?;
            let [a, b, c, d] = r[..] else {
                return Err(Error::Config(format!("region needs four numbers, got '{region}'")));
            };
            let scan = absolute_spectrum_scan(&SpectrumScan::new(Region::new(a, b, c, d)?, resolution)?)?;
            fs::create_dir_all(&out)?;
            let path = out.join("spectrum.csv");
            scan.write_csv(BufWriter::new(File::create(&path)?))?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

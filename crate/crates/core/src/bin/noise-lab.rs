use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use noise_lab::chaos;
use noise_lab::harness::{
    emit_spectrum_report, load_model_config, run_verification_suite, Backend, Experiment, Selection,
    SuiteOptions,
};
use noise_lab::scalar::format_rational;
use noise_lab::Error;

const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "noise-lab", version, about = "Finite noise models: projections, chaos, spectra and geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite on a configuration.
    Verify {
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Selection::All)]
        only: Selection,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        backend: Option<Backend>,
        #[arg(long)]
        depth: Option<u32>,
        /// Exit with status 3 when a check was skipped for size reasons.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Print the wall-clock time to stderr.
        #[arg(long)]
        timings: bool,
    },
    /// Print the spectral measure of a named vector.
    Spectrum {
        config: PathBuf,
        #[arg(long)]
        vector: String,
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// First chaos, classification and atomless defects.
    Chaos {
        config: PathBuf,
        #[arg(long)]
        subalgebra: Option<String>,
        #[arg(long)]
        vector: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("noise-lab: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn load(path: &Path) -> noise_lab::Result<(noise_lab::harness::ModelConfig, Experiment)> {
    let cfg = load_model_config(path).map_err(|e| match e {
        Error::Io(io) => Error::Config {
            path: path.display().to_string(),
            message: io.to_string(),
        },
        other => other,
    })?;
    let exp = cfg.build()?;
    Ok((cfg, exp))
}

fn unknown(kind: &str, name: &str, known: Vec<&str>) -> Error {
    Error::Config {
        path: format!("{kind}s"),
        message: format!("no {kind} named {name:?} (known: {})", known.join(", ")),
    }
}

fn run(command: Command) -> noise_lab::Result<u8> {
    match command {
        Command::Verify {
            config,
            only,
            seed,
            backend,
            depth,
            strict,
            format,
            timings,
        } => {
            let start = Instant::now();
            let (cfg, _) = load(&config)?;
            let opts = SuiteOptions {
                selection: only,
                seed,
                backend,
                depth,
            };
            let report = run_verification_suite(&cfg, &config.display().to_string(), &opts)?;
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => print!("{}", report.to_json()),
            }
            if timings {
                eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
            }
            Ok(report.exit_code(strict) as u8)
        }
        Command::Spectrum { config, vector, csv } => {
            let (_, exp) = load(&config)?;
            let psi = exp
                .vector(&vector)
                .ok_or_else(|| unknown("vector", &vector, exp.vectors.iter().map(|(n, _)| n.as_str()).collect()))?;
            let table = emit_spectrum_report(&exp.model, &vector, psi);
            print!("{}", table.to_text());
            if let Some(path) = csv {
                std::fs::write(&path, table.to_csv()?)?;
            }
            Ok(0)
        }
        Command::Chaos {
            config,
            subalgebra,
            vector,
        } => {
            let (_, exp) = load(&config)?;
            let model = &exp.model;
            let first = chaos::first_chaos_basis(model);
            let class = chaos::classify(model);
            println!("first chaos dimension: {}", first.dimension());
            println!(
                "classification: {:?}{}",
                class.class,
                if class.degenerate { " (degenerate)" } else { "" }
            );
            let subs: Vec<_> = match &subalgebra {
                Some(name) => vec![(
                    name.as_str(),
                    exp.subalgebra(name).ok_or_else(|| {
                        unknown("subalgebra", name, exp.subalgebras.iter().map(|(n, _)| n.as_str()).collect())
                    })?,
                )],
                None => exp.subalgebras.iter().map(|(n, b)| (n.as_str(), b)).collect(),
            };
            let vecs: Vec<_> = match &vector {
                Some(name) => vec![(
                    name.as_str(),
                    exp.vector(name).ok_or_else(|| {
                        unknown("vector", name, exp.vectors.iter().map(|(n, _)| n.as_str()).collect())
                    })?,
                )],
                None => exp.vectors.iter().map(|(n, v)| (n.as_str(), v)).collect(),
            };
            let mut failed = false;
            for (sname, b) in &subs {
                for (vname, psi) in &vecs {
                    match chaos::atomless_defect(model, psi, b) {
                        Err(_) => println!("{vname} on {sname}: not additive"),
                        Ok(cert) => {
                            let bad = cert.witnesses.iter().filter(|w| !w.passed).count();
                            failed |= bad > 0;
                            println!(
                                "{vname} on {sname}: δ² = {}, δ = {:.12}, defect bound {} on {} splits",
                                format_rational(&cert.delta_sq),
                                cert.delta,
                                if bad == 0 { "holds" } else { "FAILS" },
                                cert.witnesses.len()
                            );
                        }
                    }
                }
            }
            Ok(u8::from(failed))
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use xxchain::chain::ChainSpec;
use xxchain::disorder::DisorderSpec;
use xxchain::ensemble::{run_realization, run_sweep, run_sweep_with_workers};
use xxchain::io::{self, RunRecord};
use xxchain::oracle::{check_configuration, random_configuration};
use xxchain::scan::{clean_trace, default_time_window, scan_jm, scan_time};
use xxchain::{Error, Result};

#[derive(Parser)]
#[command(name = "xxchain", version, about = "Entanglement transport through disordered XX chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// Built-in experiment (see `xxchain presets`).
    #[arg(long)]
    preset: Option<String>,
    /// JSON config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a config key, e.g. `--set realizations=100`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Output directory (default: $XXCHAIN_OUT_DIR or ./results).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Disorder-strength sweep of the mean readout EoF.
    Sweep {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        workers: Option<usize>,
        /// Also write the clean/standard baseline overlay.
        #[arg(long)]
        overlay: bool,
        /// Backbone coupling of the standard-chain baseline.
        #[arg(long, default_value_t = 2.32)]
        standard_jm: f64,
    },
    /// Clean-system optimum over (J_m, t).
    Scan {
        #[command(flatten)]
        source: Source,
    },
    /// Clean EoF as a function of time.
    Trace {
        #[command(flatten)]
        source: Source,
    },
    /// Cross-check the single-excitation solver against the full Hilbert space.
    Validate {
        #[arg(long, default_value_t = 50)]
        configs: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Backbone length (sites = N + 2).
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// List built-in presets.
    Presets,
}

fn load(source: &Source) -> Result<(Value, Vec<(String, Value)>)> {
    let doc = match (&source.preset, &source.config) {
        (Some(_), Some(_)) => {
            return Err(Error::Usage {
                key: "--preset".into(),
                message: "cannot be combined with --config".into(),
            })
        }
        (Some(name), None) => io::preset(name).ok_or_else(|| Error::Usage {
            key: "--preset".into(),
            message: format!("unknown preset `{name}`"),
        })?,
        (None, Some(path)) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        (None, None) => Value::Object(Default::default()),
    };
    let flags = source
        .set
        .iter()
        .map(|s| io::parse_assignment(s))
        .collect::<Result<Vec<_>>>()?;
    Ok((doc, flags))
}

fn out_dir(source: &Source) -> PathBuf {
    source.out.clone().unwrap_or_else(io::default_out_dir)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sweep {
            source,
            workers,
            overlay,
            standard_jm,
        } => {
            let (doc, flags) = load(&source)?;
            let resolved = io::parse_sweep_config(doc, &flags)?;
            let config = &resolved.config;
            eprintln!("{}", serde_json::to_string_pretty(config)?);
            let started = io::now_rfc3339();
            let result = match workers {
                Some(w) => run_sweep_with_workers(config, w)?,
                None => run_sweep(config)?,
            };
            let baselines = if overlay {
                let clean = run_realization(&config.chain, &DisorderSpec::clean(config.total_time()), 0)?;
                let mut standard = ChainSpec::standard(config.chain.n_middle, standard_jm);
                standard.coupling_end = config.chain.coupling_end;
                let window = default_time_window(&standard);
                let best = scan_time(&standard, standard_jm, window, 0.01)?;
                Some((clean, best.eof_star))
            } else {
                None
            };
            let record = RunRecord::for_sweep(config, resolved.overrides, &result, started)?;
            for path in io::emit_sweep(&out_dir(&source), &result, &record, baselines)? {
                println!("{}", path.display());
            }
            if let Some(t) = &result.truncated {
                eprintln!("sweep truncated at p = {}: {}", t.p, t.message);
            }
        }
        Command::Scan { source } => {
            let (doc, flags) = load(&source)?;
            let resolved = io::parse_scan_config(doc, &flags)?;
            let c = &resolved.config;
            let started = io::now_rfc3339();
            let timer = std::time::Instant::now();
            let scan = scan_jm(&c.chain, c.jm_range, c.jm_resolution, c.t_window, c.t_resolution)?;
            eprintln!(
                "best: J_m = {:.4}, t* = {:.4}, EoF* = {:.6}",
                scan.best.jm, scan.best.t_star, scan.best.eof_star
            );
            let record = RunRecord {
                schema_revision: io::SCHEMA_REVISION.into(),
                command: "scan".into(),
                config: serde_json::to_value(c)?,
                master_seed: None,
                config_hash: io::config_hash(c)?,
                overrides: resolved.overrides,
                results: serde_json::to_value(&scan)?,
                truncated: None,
                started_at: started,
                finished_at: io::now_rfc3339(),
                wall_time_secs: timer.elapsed().as_secs_f64(),
            };
            for path in io::emit_table(&out_dir(&source), &record, &io::scan_csv(&scan.curve))? {
                println!("{}", path.display());
            }
        }
        Command::Trace { source } => {
            let (doc, flags) = load(&source)?;
            let resolved = io::parse_trace_config(doc, &flags)?;
            let c = &resolved.config;
            let started = io::now_rfc3339();
            let timer = std::time::Instant::now();
            let rows = clean_trace(&c.chain, c.t_end, c.dt)?;
            let record = RunRecord {
                schema_revision: io::SCHEMA_REVISION.into(),
                command: "trace".into(),
                config: serde_json::to_value(c)?,
                master_seed: None,
                config_hash: io::config_hash(c)?,
                overrides: resolved.overrides,
                results: Value::Null,
                truncated: None,
                started_at: started,
                finished_at: io::now_rfc3339(),
                wall_time_secs: timer.elapsed().as_secs_f64(),
            };
            for path in io::emit_table(&out_dir(&source), &record, &io::trace_csv(&rows))? {
                println!("{}", path.display());
            }
        }
        Command::Validate { configs, seed, n } => {
            let spec = ChainSpec::proposed(n, 1.0);
            let mut worst = [0.0f64; 5];
            for k in 0..configs {
                let (couplings, noise) = random_configuration(&spec, seed.wrapping_add(k as u64))?;
                let r = check_configuration(&spec, &couplings, &noise, 1.7)?;
                for (w, v) in worst.iter_mut().zip([
                    r.amplitude_diff,
                    r.generator_diff,
                    r.commutator,
                    r.leaked_weight,
                    r.pair_density_diff,
                ]) {
                    *w = w.max(v);
                }
            }
            let checks = [
                ("amplitudes vs full space", worst[0], 1e-8),
                ("generator vs H block / 2", worst[1], 1e-12),
                ("[H, Z]", worst[2], 1e-12),
                ("leaked weight", worst[3], 1e-12),
                ("pair density vs partial trace", worst[4], 1e-12),
            ];
            let mut ok = true;
            for (name, value, tol) in checks {
                let pass = value <= tol;
                ok &= pass;
                println!(
                    "{} {name}: max {value:.3e} (tol {tol:.0e})",
                    if pass { "PASS" } else { "FAIL" }
                );
            }
            if !ok {
                return Err(Error::Config("oracle validation failed".into()));
            }
        }
        Command::Presets => {
            for name in io::PRESETS {
                println!("{name}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::Usage { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

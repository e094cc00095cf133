//! Configuration parsing, presets, and result files.
//!
//! Configs are flat JSON documents. Command-line `key=value` overrides are
//! applied on top of the document before it is deserialized, and each
//! override is recorded in the run record. Every output file name carries
//! the first 12 hex digits of the resolved config hash.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::chain::{ChainSpec, Topology};
use crate::disorder::{Channels, DisorderKind, DisorderSpec, SeedPolicy, MAX_STRENGTH};
use crate::ensemble::{default_p_grid, PointStats, SweepConfig, SweepResult, Truncation};
use crate::error::{Error, Result};
use crate::scan::ScanPoint;

/// Revision tag written into every run record.
pub const SCHEMA_REVISION: &str = "xxchain-run/1";

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "XXCHAIN_OUT_DIR";

pub const DEFAULT_MASTER_SEED: u64 = 0x5e_ed0f_c4a1_u64;

pub const SWEEP_HEADER: &str = "p,mean_eof,stddev,stderr,realizations";
pub const SCAN_HEADER: &str = "jm,t_star,eof_star";
pub const OVERLAY_HEADER: &str = "p,mean_eof,clean_eof,standard_eof";

/// Content hash of a serializable value, computed over a git-style blob
/// header and the compact JSON encoding, rendered as hex SHA-256.
pub fn config_hash<T: Serialize>(value: &T) -> Result<String> {
    let body = serde_json::to_string(value)?;
    let mut hasher = Sha256::new();
    hasher.update(format!("blob {}\0", body.len()).as_bytes());
    hasher.update(body.as_bytes());
    Ok(hex::encode(hasher.finalize()))
}

pub fn default_out_dir() -> PathBuf {
    std::env::var_os(OUT_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("results"))
}

/// A flag that replaced (or added) a config key.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Override {
    pub key: String,
    pub value: Value,
    pub previous: Option<Value>,
    pub source: String,
}

/// A config after defaults and overrides, with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct Resolved<T> {
    pub config: T,
    pub overrides: Vec<Override>,
}

/// Parses `key=value`; the value is read as JSON when possible, else as a string.
pub fn parse_assignment(text: &str) -> Result<(String, Value)> {
    let (key, raw) = text
        .split_once('=')
        .ok_or_else(|| Error::usage(text, "expected key=value"))?;
    let key = key.trim();
    if key.is_empty() {
        return Err(Error::usage(text, "empty key"));
    }
    let value = serde_json::from_str(raw.trim()).unwrap_or_else(|_| Value::String(raw.trim().into()));
    Ok((key.to_string(), value))
}

fn apply_overrides(doc: &mut Map<String, Value>, flags: &[(String, Value)]) -> Vec<Override> {
    flags
        .iter()
        .map(|(key, value)| {
            let previous = doc.insert(key.clone(), value.clone());
            Override {
                key: key.clone(),
                value: value.clone(),
                previous,
                source: "flag".into(),
            }
        })
        .collect()
}

fn into_object(doc: Value) -> Result<Map<String, Value>> {
    match doc {
        Value::Object(m) => Ok(m),
        _ => Err(Error::usage("<root>", "config must be a JSON object")),
    }
}

/// Maps a serde failure onto the key it names, when it names one.
fn decode<T: for<'de> Deserialize<'de>>(doc: Map<String, Value>) -> Result<T> {
    serde_json::from_value(Value::Object(doc)).map_err(|e| {
        let msg = e.to_string();
        let key = msg
            .split('`')
            .nth(1)
            .map(str::to_string)
            .unwrap_or_else(|| "<config>".into());
        Error::usage(key, msg)
    })
}

fn one() -> f64 {
    1.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelName {
    Coupling,
    Field,
    Zz,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PGridSpec {
    Named(String),
    Values(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
}

/// On-disk sweep configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    pub topology: Topology,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "J", default = "one")]
    pub j: f64,
    #[serde(rename = "Jm")]
    pub jm: f64,
    #[serde(rename = "Tmax")]
    pub t_max: f64,
    pub disorder: DisorderKind,
    #[serde(default)]
    pub p_grid: Option<PGridSpec>,
    #[serde(default)]
    pub channels: Option<Vec<ChannelName>>,
    #[serde(default)]
    pub n_steps: Option<usize>,
    /// Period as a fraction of `Tmax`; alternative to `n_steps`.
    #[serde(default)]
    pub tau_fraction: Option<f64>,
    #[serde(default)]
    pub realizations: Option<usize>,
    #[serde(default)]
    pub master_seed: Option<u64>,
    #[serde(default)]
    pub fresh_draws: Option<bool>,
}

fn chain_from(topology: Topology, n: usize, j: f64, jm: f64) -> Result<ChainSpec> {
    if n < 4 {
        return Err(Error::usage("N", format!("must be at least 4, got {n}")));
    }
    if !(j > 0.0 && j.is_finite()) {
        return Err(Error::usage("J", format!("must be positive, got {j}")));
    }
    if !(jm > 0.0 && jm.is_finite()) {
        return Err(Error::usage("Jm", format!("must be positive, got {jm}")));
    }
    Ok(ChainSpec {
        topology,
        n_middle: n,
        coupling_end: j,
        coupling_middle: jm,
    })
}

fn resolve_grid(spec: &Option<PGridSpec>) -> Result<Vec<f64>> {
    let grid = match spec {
        None => default_p_grid(),
        Some(PGridSpec::Named(name)) if name == "default" => default_p_grid(),
        Some(PGridSpec::Named(name)) => {
            return Err(Error::usage("p_grid", format!("unknown grid name `{name}`")))
        }
        Some(PGridSpec::Values(v)) => v.clone(),
        Some(PGridSpec::Range { start, stop, step }) => {
            if !(*step > 0.0) || stop < start {
                return Err(Error::usage("p_grid", "range needs start <= stop and step > 0"));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize;
            (0..=count).map(|k| start + k as f64 * step).collect()
        }
    };
    if grid.is_empty() {
        return Err(Error::usage("p_grid", "empty grid"));
    }
    if let Some(p) = grid.iter().find(|p| !(0.0..=MAX_STRENGTH).contains(*p)) {
        return Err(Error::usage(
            "p_grid",
            format!("p = {p} outside [0, {MAX_STRENGTH}]"),
        ));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::usage("p_grid", "must be strictly increasing"));
    }
    Ok(grid)
}

impl SweepFile {
    pub fn resolve(&self) -> Result<SweepConfig> {
        let chain = chain_from(self.topology, self.n, self.j, self.jm)?;
        if !(self.t_max >= 0.0 && self.t_max.is_finite()) {
            return Err(Error::usage("Tmax", format!("must be non-negative, got {}", self.t_max)));
        }

        let n_steps = match (self.disorder, self.n_steps, self.tau_fraction) {
            (_, Some(_), Some(_)) => {
                return Err(Error::usage("n_steps", "conflicts with tau_fraction; give one"))
            }
            (DisorderKind::Static | DisorderKind::None, Some(n), None) if n != 1 => {
                return Err(Error::usage(
                    "n_steps",
                    format!("{:?} disorder has a single period, got n_steps = {n}", self.disorder),
                ))
            }
            (_, Some(0), None) => return Err(Error::usage("n_steps", "must be at least 1")),
            (_, Some(n), None) => n,
            (_, None, Some(f)) => {
                if !(f > 0.0 && f <= 1.0) {
                    return Err(Error::usage("tau_fraction", format!("must lie in (0, 1], got {f}")));
                }
                let n = (1.0 / f).round() as usize;
                if matches!(self.disorder, DisorderKind::Static | DisorderKind::None) && n != 1 {
                    return Err(Error::usage("tau_fraction", "static disorder has a single period"));
                }
                n
            }
            (DisorderKind::Dynamic | DisorderKind::Fluctuating, None, None) => 10,
            (_, None, None) => 1,
        };

        let channels = match &self.channels {
            None => Channels::COUPLING,
            Some(list) => {
                let mut ch = Channels::NONE;
                for c in list {
                    match c {
                        ChannelName::Coupling => ch.coupling = true,
                        ChannelName::Field => ch.field = true,
                        ChannelName::Zz => ch.zz = true,
                    }
                }
                ch
            }
        };

        let realizations = self
            .realizations
            .unwrap_or(if self.n >= 1000 { 100 } else { 1000 });
        if realizations == 0 {
            return Err(Error::usage("realizations", "must be at least 1"));
        }

        let config = SweepConfig {
            chain,
            disorder: DisorderSpec {
                kind: self.disorder,
                strength: 0.0,
                channels,
                n_steps,
                total_time: self.t_max,
                fresh_draws: self.fresh_draws.unwrap_or(false),
            },
            p_grid: resolve_grid(&self.p_grid)?,
            realizations,
            seed: SeedPolicy {
                master_seed: self.master_seed.unwrap_or(DEFAULT_MASTER_SEED),
            },
        };
        config.validate()?;
        Ok(config)
    }
}

/// Resolves a sweep config from a JSON document plus flag overrides.
pub fn parse_sweep_config(doc: Value, flags: &[(String, Value)]) -> Result<Resolved<SweepConfig>> {
    let mut doc = into_object(doc)?;
    let overrides = apply_overrides(&mut doc, flags);
    let file: SweepFile = decode(doc)?;
    Ok(Resolved {
        config: file.resolve()?,
        overrides,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanFile {
    pub topology: Topology,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "J", default = "one")]
    pub j: f64,
    #[serde(rename = "Jm_range")]
    pub jm_range: (f64, f64),
    #[serde(rename = "Jm_resolution", default)]
    pub jm_resolution: Option<f64>,
    #[serde(default)]
    pub t_window: Option<f64>,
    #[serde(default)]
    pub t_resolution: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub chain: ChainSpec,
    pub jm_range: (f64, f64),
    pub jm_resolution: f64,
    pub t_window: Option<f64>,
    pub t_resolution: f64,
}

pub fn parse_scan_config(doc: Value, flags: &[(String, Value)]) -> Result<Resolved<ScanConfig>> {
    let mut doc = into_object(doc)?;
    let overrides = apply_overrides(&mut doc, flags);
    let f: ScanFile = decode(doc)?;
    let (lo, hi) = f.jm_range;
    if !(lo > 0.0) || hi < lo {
        return Err(Error::usage("Jm_range", format!("need 0 < lo <= hi, got [{lo}, {hi}]")));
    }
    let config = ScanConfig {
        chain: chain_from(f.topology, f.n, f.j, lo)?,
        jm_range: (lo, hi),
        jm_resolution: positive("Jm_resolution", f.jm_resolution.unwrap_or(0.01))?,
        t_window: f.t_window.map(|w| positive("t_window", w)).transpose()?,
        t_resolution: positive("t_resolution", f.t_resolution.unwrap_or(0.01))?,
    };
    Ok(Resolved { config, overrides })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceFile {
    pub topology: Topology,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "J", default = "one")]
    pub j: f64,
    #[serde(rename = "Jm")]
    pub jm: f64,
    #[serde(default)]
    pub t_end: Option<f64>,
    #[serde(default)]
    pub dt: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceConfig {
    pub chain: ChainSpec,
    pub t_end: f64,
    pub dt: f64,
}

pub fn parse_trace_config(doc: Value, flags: &[(String, Value)]) -> Result<Resolved<TraceConfig>> {
    let mut doc = into_object(doc)?;
    let overrides = apply_overrides(&mut doc, flags);
    let f: TraceFile = decode(doc)?;
    let chain = chain_from(f.topology, f.n, f.j, f.jm)?;
    let t_end = f
        .t_end
        .unwrap_or_else(|| crate::scan::default_time_window(&chain));
    let config = TraceConfig {
        chain,
        t_end: positive("t_end", t_end)?,
        dt: positive("dt", f.dt.unwrap_or(0.01))?,
    };
    Ok(Resolved { config, overrides })
}

fn positive(key: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::usage(key, format!("must be positive, got {v}")))
    }
}

/// Optimal clean readout time for `N = 1000`, `J_m = 4.25` found by `scan_time`.
pub const N1000_SMALL_JM_TSTAR: f64 = 60.08;

fn sweep_preset(
    n: usize,
    jm: f64,
    t_max: f64,
    kind: &str,
    channels: &[&str],
    tau_fraction: Option<f64>,
) -> Value {
    let mut doc = serde_json::json!({
        "topology": "proposed",
        "N": n,
        "Jm": jm,
        "Tmax": t_max,
        "disorder": kind,
        "p_grid": "default",
        "channels": channels,
    });
    if let Some(f) = tau_fraction {
        doc["tau_fraction"] = f.into();
    }
    doc
}

/// Names accepted by [`preset`].
pub const PRESETS: &[&str] = &[
    "fig2-static-small-jm",
    "fig2-static-large-jm",
    "fig2-dynamic-small-jm",
    "fig2-dynamic-large-jm",
    "fig4-fluctuating-small-jm",
    "fig4-fluctuating-large-jm",
    "fig5-tau-10",
    "fig5-tau-1",
    "fig5-tau-0.1",
    "fig6-static-small-jm",
    "fig6-dynamic-small-jm",
    "fig6-fluctuating-small-jm",
    "fig6-static-large-jm",
    "fig6-dynamic-large-jm",
    "fig6-fluctuating-large-jm",
    "fig7-n1000",
    "fig8-n1000",
    "scan-standard-n100",
    "scan-proposed-n100-small",
    "scan-proposed-n100-large",
    "scan-proposed-n1000-small",
    "scan-proposed-n1000-large",
];

/// Built-in experiment documents.
///
/// `fig2-*` and `fig4-*` sweeps use coupling-only disorder, the rest all
/// three channels; pick others with `channels=[...]`.
pub fn preset(name: &str) -> Option<Value> {
    const SMALL: (f64, f64) = (2.86, 9.54);
    const LARGE: (f64, f64) = (49.98, 20.53);
    const ALL: &[&str] = &["coupling", "field", "zz"];
    const COUPLING: &[&str] = &["coupling"];
    let scan = |topology: &str, n: usize, hi: f64| {
        serde_json::json!({"topology": topology, "N": n, "Jm_range": [0.1, hi]})
    };
    let doc = match name {
        "fig2-static-small-jm" => sweep_preset(100, SMALL.0, SMALL.1, "static", COUPLING, None),
        "fig2-static-large-jm" => sweep_preset(100, LARGE.0, LARGE.1, "static", COUPLING, None),
        "fig2-dynamic-small-jm" => sweep_preset(100, SMALL.0, SMALL.1, "dynamic", COUPLING, Some(0.1)),
        "fig2-dynamic-large-jm" => sweep_preset(100, LARGE.0, LARGE.1, "dynamic", COUPLING, Some(0.1)),
        "fig4-fluctuating-small-jm" => {
            sweep_preset(100, SMALL.0, SMALL.1, "fluctuating", COUPLING, Some(0.1))
        }
        "fig4-fluctuating-large-jm" => {
            sweep_preset(100, LARGE.0, LARGE.1, "fluctuating", COUPLING, Some(0.1))
        }
        "fig5-tau-10" => sweep_preset(100, LARGE.0, LARGE.1, "fluctuating", ALL, Some(0.1)),
        "fig5-tau-1" => sweep_preset(100, LARGE.0, LARGE.1, "fluctuating", ALL, Some(0.01)),
        "fig5-tau-0.1" => sweep_preset(100, LARGE.0, LARGE.1, "fluctuating", ALL, Some(0.001)),
        "fig6-static-small-jm" => sweep_preset(100, SMALL.0, SMALL.1, "static", ALL, None),
        "fig6-dynamic-small-jm" => sweep_preset(100, SMALL.0, SMALL.1, "dynamic", ALL, Some(0.1)),
        "fig6-fluctuating-small-jm" => {
            sweep_preset(100, SMALL.0, SMALL.1, "fluctuating", ALL, Some(0.1))
        }
        "fig6-static-large-jm" => sweep_preset(100, LARGE.0, LARGE.1, "static", ALL, None),
        "fig6-dynamic-large-jm" => sweep_preset(100, LARGE.0, LARGE.1, "dynamic", ALL, Some(0.1)),
        "fig6-fluctuating-large-jm" => {
            sweep_preset(100, LARGE.0, LARGE.1, "fluctuating", ALL, Some(0.1))
        }
        "fig7-n1000" => sweep_preset(1000, 4.25, N1000_SMALL_JM_TSTAR, "fluctuating", ALL, Some(0.1)),
        "fig8-n1000" => sweep_preset(1000, 298.27, 118.55, "fluctuating", ALL, Some(0.1)),
        "scan-standard-n100" => scan("standard", 100, 5.0),
        "scan-proposed-n100-small" => scan("proposed", 100, 5.0),
        "scan-proposed-n100-large" => scan("proposed", 100, 50.0),
        "scan-proposed-n1000-small" => scan("proposed", 1000, 5.0),
        "scan-proposed-n1000-large" => scan("proposed", 1000, 300.0),
        _ => return None,
    };
    Some(doc)
}

/// Decimal rendering with `digits` significant digits.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{:.*}", digits.saturating_sub(1), v);
    }
    let exponent = v.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - exponent).max(0) as usize;
    let s = format!("{v:.decimals$}");
    // rounding can carry into a new leading digit (9.99.. -> 10.0..)
    let carried = s.trim_start_matches('-').split('.').next().map_or(0, str::len) as i64;
    if decimals > 0 && carried > exponent.max(0) + 1 {
        format!("{v:.*}", decimals - 1)
    } else {
        s
    }
}

const SIG_DIGITS: usize = 12;

pub fn sweep_csv(points: &[PointStats]) -> String {
    let mut out = String::with_capacity(64 * (points.len() + 1));
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for pt in points {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            format_sig(pt.p, SIG_DIGITS),
            format_sig(pt.mean, SIG_DIGITS),
            format_sig(pt.stddev, SIG_DIGITS),
            format_sig(pt.stderr, SIG_DIGITS),
            pt.realizations
        );
    }
    out
}

pub fn scan_csv(curve: &[ScanPoint]) -> String {
    let mut out = String::from(SCAN_HEADER);
    out.push('\n');
    for pt in curve {
        let _ = writeln!(
            out,
            "{},{},{}",
            format_sig(pt.jm, SIG_DIGITS),
            format_sig(pt.t_star, SIG_DIGITS),
            format_sig(pt.eof_star, SIG_DIGITS)
        );
    }
    out
}

/// Sweep means next to constant clean-optimum and standard-model columns.
pub fn overlay_csv(points: &[PointStats], clean_eof: f64, standard_eof: f64) -> String {
    let mut out = String::from(OVERLAY_HEADER);
    out.push('\n');
    for pt in points {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_sig(pt.p, SIG_DIGITS),
            format_sig(pt.mean, SIG_DIGITS),
            format_sig(clean_eof, SIG_DIGITS),
            format_sig(standard_eof, SIG_DIGITS)
        );
    }
    out
}

pub fn trace_csv(rows: &[(f64, f64, f64)]) -> String {
    let mut out = String::from("t,concurrence,eof\n");
    for (t, c, e) in rows {
        let _ = writeln!(
            out,
            "{},{},{}",
            format_sig(*t, SIG_DIGITS),
            format_sig(*c, SIG_DIGITS),
            format_sig(*e, SIG_DIGITS)
        );
    }
    out
}

/// Parses a file produced by [`sweep_csv`].
pub fn read_sweep_csv(text: &str) -> Result<Vec<PointStats>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(SWEEP_HEADER) => {}
        other => {
            return Err(Error::usage(
                "csv",
                format!("unexpected header {other:?}"),
            ))
        }
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 5 {
                return Err(Error::usage("csv", format!("bad row `{line}`")));
            }
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| Error::usage("csv", format!("`{s}`: {e}")))
            };
            Ok(PointStats {
                p: num(f[0])?,
                mean: num(f[1])?,
                stddev: num(f[2])?,
                stderr: num(f[3])?,
                realizations: f[4]
                    .parse()
                    .map_err(|e| Error::usage("csv", format!("`{}`: {e}", f[4])))?,
            })
        })
        .collect()
}

/// Provenance record written next to every result CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema_revision: String,
    pub command: String,
    pub config: Value,
    pub master_seed: Option<u64>,
    pub config_hash: String,
    pub overrides: Vec<Override>,
    pub results: Value,
    pub truncated: Option<Truncation>,
    pub started_at: String,
    pub finished_at: String,
    pub wall_time_secs: f64,
}

impl RunRecord {
    pub fn for_sweep(
        config: &SweepConfig,
        overrides: Vec<Override>,
        result: &SweepResult,
        started_at: String,
    ) -> Result<Self> {
        Ok(RunRecord {
            schema_revision: SCHEMA_REVISION.into(),
            command: "sweep".into(),
            config: serde_json::to_value(config)?,
            master_seed: Some(config.seed.master_seed),
            config_hash: result.config_hash.clone(),
            overrides,
            results: serde_json::to_value(&result.points)?,
            truncated: result.truncated.clone(),
            started_at,
            finished_at: now_rfc3339(),
            wall_time_secs: result.wall_time_secs,
        })
    }

    /// Embedded sweep config, for re-running.
    pub fn sweep_config(&self) -> Result<SweepConfig> {
        Ok(serde_json::from_value(self.config.clone())?)
    }

    pub fn sweep_points(&self) -> Result<Vec<PointStats>> {
        Ok(serde_json::from_value(self.results.clone())?)
    }
}

pub fn now_rfc3339() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

/// Short hash used in file names.
pub fn file_stem(command: &str, hash: &str) -> String {
    format!("{command}-{}", &hash[..12.min(hash.len())])
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

/// Writes `<stem>.csv`, `<stem>.json` and optionally `<stem>.overlay.csv`.
pub fn emit_sweep(
    dir: &Path,
    result: &SweepResult,
    record: &RunRecord,
    baselines: Option<(f64, f64)>,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let stem = file_stem("sweep", &result.config_hash);
    let mut written = Vec::new();

    let csv = dir.join(format!("{stem}.csv"));
    write_file(&csv, &sweep_csv(&result.points))?;
    written.push(csv);

    if let Some((clean, standard)) = baselines {
        let overlay = dir.join(format!("{stem}.overlay.csv"));
        write_file(&overlay, &overlay_csv(&result.points, clean, standard))?;
        written.push(overlay);
    }

    let json = dir.join(format!("{stem}.json"));
    write_file(&json, &(serde_json::to_string_pretty(record)? + "\n"))?;
    written.push(json);
    Ok(written)
}

/// Writes `<stem>.csv` and `<stem>.json` for a scan or trace.
pub fn emit_table(dir: &Path, record: &RunRecord, csv: &str) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let stem = file_stem(&record.command, &record.config_hash);
    let csv_path = dir.join(format!("{stem}.csv"));
    write_file(&csv_path, csv)?;
    let json_path = dir.join(format!("{stem}.json"));
    write_file(&json_path, &(serde_json::to_string_pretty(record)? + "\n"))?;
    Ok(vec![csv_path, json_path])
}

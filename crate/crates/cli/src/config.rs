//! Suite configuration: defaults, JSON config file, `PMM_*` environment
//! variables, and command-line flags, in increasing order of precedence.

use std::path::PathBuf;

use serde::Deserialize;

use pmm_core::Interval;

pub const DEFAULT_Q: usize = 3;
pub const DEFAULT_K: usize = 2;
pub const DEFAULT_N: usize = 2;
pub const DEFAULT_TRIALS: usize = 200;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_SPECTRUM: (f64, f64) = (1.0, 2.0);

/// Tensor-map output cap: `q^k` may not exceed this.
pub const TENSOR_OUTPUT_CAP: usize = 4096;

/// Fully resolved suite configuration.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Check families to run; `None` means all, an empty list means none.
    pub checks: Option<Vec<String>>,
    pub q: usize,
    pub k: usize,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub spectrum: Interval,
    pub out: Option<PathBuf>,
    pub witness_dir: Option<PathBuf>,
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            checks: None,
            q: DEFAULT_Q,
            k: DEFAULT_K,
            n: DEFAULT_N,
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            tol: DEFAULT_TOL,
            spectrum: Interval::new(DEFAULT_SPECTRUM.0, DEFAULT_SPECTRUM.1).expect("static"),
            out: None,
            witness_dir: None,
            jobs: 0,
        }
    }
}

/// A partially specified configuration layer (file, env, or flags).
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    pub checks: Option<Vec<String>>,
    pub q: Option<usize>,
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    /// `[m, M]`
    pub spectrum: Option<(f64, f64)>,
    pub out: Option<PathBuf>,
    pub witness_dir: Option<PathBuf>,
    pub jobs: Option<usize>,
}

/// A usage-level configuration error (exit code 2).
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

pub fn parse_spectrum(s: &str) -> Result<(f64, f64), UsageError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return usage(format!("--spectrum expects \"m,M\", got {s:?}"));
    }
    let m: f64 = parts[0]
        .parse()
        .map_err(|e| UsageError(format!("bad spectrum lower bound {:?}: {e}", parts[0])))?;
    let mx: f64 = parts[1]
        .parse()
        .map_err(|e| UsageError(format!("bad spectrum upper bound {:?}: {e}", parts[1])))?;
    Ok((m, mx))
}

pub fn parse_checks(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(str::to_string)
        .collect()
}

/// Reads the `PMM_*` environment variables as a configuration layer.
pub fn layer_from_env() -> Result<ConfigLayer, UsageError> {
    let var = |name: &str| std::env::var(format!("PMM_{name}")).ok();
    let parse_num = |name: &str, v: String| -> Result<u64, UsageError> {
        v.parse()
            .map_err(|e| UsageError(format!("bad PMM_{name}={v:?}: {e}")))
    };
    let mut layer = ConfigLayer::default();
    if let Some(v) = var("CHECKS") {
        layer.checks = Some(parse_checks(&v));
    }
    if let Some(v) = var("Q") {
        layer.q = Some(parse_num("Q", v)? as usize);
    }
    if let Some(v) = var("K") {
        layer.k = Some(parse_num("K", v)? as usize);
    }
    if let Some(v) = var("N") {
        layer.n = Some(parse_num("N", v)? as usize);
    }
    if let Some(v) = var("TRIALS") {
        layer.trials = Some(parse_num("TRIALS", v)? as usize);
    }
    if let Some(v) = var("SEED") {
        layer.seed = Some(parse_num("SEED", v)?);
    }
    if let Some(v) = var("TOL") {
        layer.tol = Some(
            v.parse()
                .map_err(|e| UsageError(format!("bad PMM_TOL={v:?}: {e}")))?,
        );
    }
    if let Some(v) = var("SPECTRUM") {
        layer.spectrum = Some(parse_spectrum(&v)?);
    }
    if let Some(v) = var("OUT") {
        layer.out = Some(PathBuf::from(v));
    }
    if let Some(v) = var("WITNESS_DIR") {
        layer.witness_dir = Some(PathBuf::from(v));
    }
    if let Some(v) = var("JOBS") {
        layer.jobs = Some(parse_num("JOBS", v)? as usize);
    }
    Ok(layer)
}

/// Reads a JSON config file as a configuration layer.
pub fn layer_from_file(path: &std::path::Path) -> Result<ConfigLayer, UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| UsageError(format!("malformed config {}: {e}", path.display())))
}

/// Resolves layers in precedence order (later layers win) and validates.
pub fn resolve(layers: &[ConfigLayer]) -> Result<SuiteConfig, UsageError> {
    let mut cfg = SuiteConfig::default();
    let mut spectrum = DEFAULT_SPECTRUM;
    for layer in layers {
        if let Some(v) = &layer.checks {
            cfg.checks = Some(v.clone());
        }
        if let Some(v) = layer.q {
            cfg.q = v;
        }
        if let Some(v) = layer.k {
            cfg.k = v;
        }
        if let Some(v) = layer.n {
            cfg.n = v;
        }
        if let Some(v) = layer.trials {
            cfg.trials = v;
        }
        if let Some(v) = layer.seed {
            cfg.seed = v;
        }
        if let Some(v) = layer.tol {
            cfg.tol = v;
        }
        if let Some(v) = layer.spectrum {
            spectrum = v;
        }
        if let Some(v) = &layer.out {
            cfg.out = Some(v.clone());
        }
        if let Some(v) = &layer.witness_dir {
            cfg.witness_dir = Some(v.clone());
        }
        if let Some(v) = layer.jobs {
            cfg.jobs = v;
        }
    }

    if cfg.q < 1 {
        return usage("q must be >= 1");
    }
    if cfg.k < 1 {
        return usage("k must be >= 1");
    }
    if cfg.n < 1 {
        return usage("n must be >= 1");
    }
    if cfg.trials < 1 {
        return usage("trials must be >= 1");
    }
    if !(cfg.tol >= 0.0) {
        return usage("tol must be >= 0");
    }
    let cap_ok = cfg
        .q
        .checked_pow(cfg.k as u32)
        .map(|p| p <= TENSOR_OUTPUT_CAP)
        .unwrap_or(false);
    if !cap_ok {
        return usage(format!(
            "q^k must stay at or below {TENSOR_OUTPUT_CAP} (tensor-map output cap)"
        ));
    }
    let (m, mx) = spectrum;
    cfg.spectrum = Interval::new(m, mx)
        .map_err(|e| UsageError(format!("invalid spectrum [{m}, {mx}]: {e}")))?;
    Ok(cfg)
}

//! Run configuration: a flat, line-oriented `key = value` format with dotted
//! sections. Parsing is total (no panics on any input) and reports every
//! validation problem at once, each tagged with its key path.

use std::fmt;
use std::path::Path;

use wavegrow_core::field::GridSpec;

#[derive(Clone, Debug, PartialEq)]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InitialPreset {
    GaussianBump,
    SingleMode,
    FromFile,
}

/// Fully-typed run configuration with defaults for every key.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub seed: u64,

    pub grid_dim: usize,
    pub grid_n: usize,
    pub grid_half_width: f64,

    pub potential_enabled: bool,
    pub potential_amplitude: f64,
    pub potential_radius: f64,
    pub potential_omega: f64,

    /// None = "auto": derived from the grid spacing and the step rule.
    pub integrator_dt: Option<f64>,
    pub integrator_cubic: bool,

    pub step_rule_c: f64,
    pub step_rule_gamma: f64,

    pub initial_preset: InitialPreset,
    pub initial_amplitude: f64,
    pub initial_width: f64,
    pub initial_mode: usize,
    pub initial_path: Option<String>,

    pub experiment_horizon: f64,
    pub experiment_sample_every: usize,
    pub experiment_k_list: Vec<u32>,
    pub experiment_checkpoint_every: usize,
    pub experiment_identities: bool,
    /// When set, record the L^r norm column with r derived from this ε.
    pub experiment_strichartz_epsilon: Option<f64>,

    pub output_dir: String,

    pub dichotomy_amplitudes: Vec<f64>,
    pub dichotomy_omegas: Vec<f64>,
    pub dichotomy_fit_t0: f64,

    pub stability_deltas: Vec<f64>,
    pub stability_width: f64,
    pub stability_horizon: f64,

    pub fit_input: Option<String>,
    pub fit_column: String,
    pub fit_t0: f64,
    pub fit_t1: Option<f64>,

    pub pipeline_gamma: f64,
    pub pipeline_y: f64,

    pub identity_window: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            grid_dim: 1,
            grid_n: 256,
            grid_half_width: 6.0,
            potential_enabled: false,
            potential_amplitude: 1.0,
            potential_radius: 1.5,
            potential_omega: 2.0,
            integrator_dt: None,
            integrator_cubic: true,
            step_rule_c: 0.2,
            step_rule_gamma: 2.0,
            initial_preset: InitialPreset::GaussianBump,
            initial_amplitude: 1.0,
            initial_width: 0.8,
            initial_mode: 1,
            initial_path: None,
            experiment_horizon: 10.0,
            experiment_sample_every: 100,
            experiment_k_list: vec![1, 2],
            experiment_checkpoint_every: 50,
            experiment_identities: true,
            experiment_strichartz_epsilon: None,
            output_dir: "run".into(),
            dichotomy_amplitudes: vec![0.0, 0.5, 1.0, 2.0, 4.0],
            dichotomy_omegas: vec![0.5, 1.0, 2.0, 3.0, 4.0],
            dichotomy_fit_t0: 1.0,
            stability_deltas: vec![1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4],
            stability_width: 0.4,
            stability_horizon: 0.5,
            fit_input: None,
            fit_column: "H1".into(),
            fit_t0: 1.0,
            fit_t1: None,
            pipeline_gamma: 0.125,
            pipeline_y: 12.0,
            identity_window: 0.1,
        }
    }
}

fn fmt_float(x: f64) -> String {
    // shortest round-trip decimal; re-parses to the identical f64
    format!("{x}")
}

fn fmt_list_f64(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| fmt_float(*x))
        .collect::<Vec<_>>()
        .join(",")
}

fn fmt_list_u32(xs: &[u32]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl RunConfig {
    /// Canonical textual form; `parse` of the result reproduces `self`.
    pub fn emit(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            s.push_str(k);
            s.push_str(" = ");
            s.push_str(&v);
            s.push('\n');
        };
        kv("seed", self.seed.to_string());
        kv("grid.dim", self.grid_dim.to_string());
        kv("grid.n", self.grid_n.to_string());
        kv("grid.half_width", fmt_float(self.grid_half_width));
        kv("potential.enabled", self.potential_enabled.to_string());
        kv("potential.amplitude", fmt_float(self.potential_amplitude));
        kv("potential.radius", fmt_float(self.potential_radius));
        kv("potential.omega", fmt_float(self.potential_omega));
        kv(
            "integrator.dt",
            self.integrator_dt.map_or("auto".into(), fmt_float),
        );
        kv("integrator.cubic", self.integrator_cubic.to_string());
        kv("step_rule.c", fmt_float(self.step_rule_c));
        kv("step_rule.gamma", fmt_float(self.step_rule_gamma));
        kv(
            "initial.preset",
            match self.initial_preset {
                InitialPreset::GaussianBump => "gaussian-bump".into(),
                InitialPreset::SingleMode => "single-mode".into(),
                InitialPreset::FromFile => "from-file".into(),
            },
        );
        kv("initial.amplitude", fmt_float(self.initial_amplitude));
        kv("initial.width", fmt_float(self.initial_width));
        kv("initial.mode", self.initial_mode.to_string());
        if let Some(p) = &self.initial_path {
            kv("initial.path", p.clone());
        }
        kv("experiment.horizon", fmt_float(self.experiment_horizon));
        kv(
            "experiment.sample_every",
            self.experiment_sample_every.to_string(),
        );
        kv("experiment.k_list", fmt_list_u32(&self.experiment_k_list));
        kv(
            "experiment.checkpoint_every",
            self.experiment_checkpoint_every.to_string(),
        );
        kv(
            "experiment.identities",
            self.experiment_identities.to_string(),
        );
        if let Some(eps) = self.experiment_strichartz_epsilon {
            kv("experiment.strichartz_epsilon", fmt_float(eps));
        }
        kv("output.dir", self.output_dir.clone());
        kv(
            "dichotomy.amplitudes",
            fmt_list_f64(&self.dichotomy_amplitudes),
        );
        kv("dichotomy.omegas", fmt_list_f64(&self.dichotomy_omegas));
        kv("dichotomy.fit_t0", fmt_float(self.dichotomy_fit_t0));
        kv("stability.deltas", fmt_list_f64(&self.stability_deltas));
        kv("stability.width", fmt_float(self.stability_width));
        kv("stability.horizon", fmt_float(self.stability_horizon));
        if let Some(p) = &self.fit_input {
            kv("fit.input", p.clone());
        }
        kv("fit.column", self.fit_column.clone());
        kv("fit.t0", fmt_float(self.fit_t0));
        if let Some(t1) = self.fit_t1 {
            kv("fit.t1", fmt_float(t1));
        }
        kv("pipeline.gamma", fmt_float(self.pipeline_gamma));
        kv("pipeline.y", fmt_float(self.pipeline_y));
        kv("identity.window", fmt_float(self.identity_window));
        s
    }
}

struct Parser {
    cfg: RunConfig,
    errors: Vec<ConfigError>,
    seen: Vec<String>,
}

impl Parser {
    fn err(&mut self, path: &str, message: impl Into<String>) {
        self.errors.push(ConfigError {
            path: path.to_string(),
            message: message.into(),
        });
    }

    fn set(&mut self, key: &str, value: &str) {
        if self.seen.iter().any(|k| k == key) {
            self.err(key, "duplicate key");
            return;
        }
        self.seen.push(key.to_string());

        macro_rules! num {
            ($ty:ty, $field:expr) => {
                match value.parse::<$ty>() {
                    Ok(v) => $field = v,
                    Err(_) => self.err(key, format!("expected {}, got `{value}`", stringify!($ty))),
                }
            };
        }

        match key {
            "seed" => num!(u64, self.cfg.seed),
            "grid.dim" => num!(usize, self.cfg.grid_dim),
            "grid.n" => num!(usize, self.cfg.grid_n),
            "grid.half_width" => num!(f64, self.cfg.grid_half_width),
            "potential.enabled" => num!(bool, self.cfg.potential_enabled),
            "potential.amplitude" => num!(f64, self.cfg.potential_amplitude),
            "potential.radius" => num!(f64, self.cfg.potential_radius),
            "potential.omega" => num!(f64, self.cfg.potential_omega),
            "integrator.dt" => {
                if value == "auto" {
                    self.cfg.integrator_dt = None;
                } else {
                    match value.parse::<f64>() {
                        Ok(v) => self.cfg.integrator_dt = Some(v),
                        Err(_) => {
                            self.err(key, format!("expected `auto` or a float, got `{value}`"))
                        }
                    }
                }
            }
            "integrator.cubic" => num!(bool, self.cfg.integrator_cubic),
            "step_rule.c" => num!(f64, self.cfg.step_rule_c),
            "step_rule.gamma" => num!(f64, self.cfg.step_rule_gamma),
            "initial.preset" => match value {
                "gaussian-bump" => self.cfg.initial_preset = InitialPreset::GaussianBump,
                "single-mode" => self.cfg.initial_preset = InitialPreset::SingleMode,
                "from-file" => self.cfg.initial_preset = InitialPreset::FromFile,
                _ => self.err(
                    key,
                    format!("unknown preset `{value}` (gaussian-bump | single-mode | from-file)"),
                ),
            },
            "initial.amplitude" => num!(f64, self.cfg.initial_amplitude),
            "initial.width" => num!(f64, self.cfg.initial_width),
            "initial.mode" => num!(usize, self.cfg.initial_mode),
            "initial.path" => self.cfg.initial_path = Some(value.to_string()),
            "experiment.horizon" => num!(f64, self.cfg.experiment_horizon),
            "experiment.sample_every" => num!(usize, self.cfg.experiment_sample_every),
            "experiment.k_list" => match parse_list::<u32>(value) {
                Ok(v) => self.cfg.experiment_k_list = v,
                Err(e) => self.err(key, e),
            },
            "experiment.checkpoint_every" => num!(usize, self.cfg.experiment_checkpoint_every),
            "experiment.identities" => num!(bool, self.cfg.experiment_identities),
            "experiment.strichartz_epsilon" => match value.parse::<f64>() {
                Ok(v) => self.cfg.experiment_strichartz_epsilon = Some(v),
                Err(_) => self.err(key, format!("expected f64, got `{value}`")),
            },
            "output.dir" => self.cfg.output_dir = value.to_string(),
            "dichotomy.amplitudes" => match parse_list::<f64>(value) {
                Ok(v) => self.cfg.dichotomy_amplitudes = v,
                Err(e) => self.err(key, e),
            },
            "dichotomy.omegas" => match parse_list::<f64>(value) {
                Ok(v) => self.cfg.dichotomy_omegas = v,
                Err(e) => self.err(key, e),
            },
            "dichotomy.fit_t0" => num!(f64, self.cfg.dichotomy_fit_t0),
            "stability.deltas" => match parse_list::<f64>(value) {
                Ok(v) => self.cfg.stability_deltas = v,
                Err(e) => self.err(key, e),
            },
            "stability.width" => num!(f64, self.cfg.stability_width),
            "stability.horizon" => num!(f64, self.cfg.stability_horizon),
            "fit.input" => self.cfg.fit_input = Some(value.to_string()),
            "fit.column" => self.cfg.fit_column = value.to_string(),
            "fit.t0" => num!(f64, self.cfg.fit_t0),
            "fit.t1" => match value.parse::<f64>() {
                Ok(v) => self.cfg.fit_t1 = Some(v),
                Err(_) => self.err(key, format!("expected f64, got `{value}`")),
            },
            "pipeline.gamma" => num!(f64, self.cfg.pipeline_gamma),
            "pipeline.y" => num!(f64, self.cfg.pipeline_y),
            "identity.window" => num!(f64, self.cfg.identity_window),
            _ => self.err(key, "unknown key"),
        }
    }
}

fn parse_list<T: std::str::FromStr>(value: &str) -> Result<Vec<T>, String> {
    let mut out = Vec::new();
    for part in value.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err("empty list entry".into());
        }
        match part.parse::<T>() {
            Ok(v) => out.push(v),
            Err(_) => return Err(format!("bad list entry `{part}`")),
        }
    }
    Ok(out)
}

/// Parse and fully validate; returns every problem found, not just the first.
pub fn parse_config(text: &str) -> Result<RunConfig, Vec<ConfigError>> {
    let mut p = Parser {
        cfg: RunConfig::default(),
        errors: Vec::new(),
        seen: Vec::new(),
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match line.split_once('=') {
            Some((k, v)) => p.set(k.trim(), v.trim()),
            None => p.err(
                &format!("line {}", lineno + 1),
                format!("expected `key = value`, got `{line}`"),
            ),
        }
    }

    validate(&p.cfg, &mut p.errors);
    if p.errors.is_empty() {
        Ok(p.cfg)
    } else {
        Err(p.errors)
    }
}

fn validate(cfg: &RunConfig, errors: &mut Vec<ConfigError>) {
    let mut err = |path: &str, message: String| {
        errors.push(ConfigError {
            path: path.into(),
            message,
        });
    };

    match GridSpec::new(cfg.grid_dim, cfg.grid_n, cfg.grid_half_width) {
        Ok(grid) => {
            if cfg.potential_enabled && cfg.potential_radius >= cfg.grid_half_width {
                err(
                    "potential.radius",
                    format!(
                        "support radius {} must be smaller than grid.half_width {}",
                        cfg.potential_radius, cfg.grid_half_width
                    ),
                );
            }
            if let Some(dt) = cfg.integrator_dt {
                if !(dt > 0.0) || !dt.is_finite() {
                    err("integrator.dt", "must be positive and finite".into());
                } else if dt > 0.5 * grid.spacing() {
                    err(
                        "integrator.dt",
                        format!(
                            "must not exceed half the grid spacing ({})",
                            0.5 * grid.spacing()
                        ),
                    );
                }
            }
        }
        Err(e) => err("grid.n", format!("{e}")),
    }

    if !(cfg.potential_amplitude >= 0.0) || !cfg.potential_amplitude.is_finite() {
        err(
            "potential.amplitude",
            "must be nonnegative and finite".into(),
        );
    }
    if !(cfg.potential_radius > 0.0) || !cfg.potential_radius.is_finite() {
        err("potential.radius", "must be positive and finite".into());
    }
    if !(cfg.potential_omega >= 0.0) || !cfg.potential_omega.is_finite() {
        err("potential.omega", "must be nonnegative and finite".into());
    }
    if !(cfg.step_rule_c > 0.0 && cfg.step_rule_c <= 1.0) {
        err("step_rule.c", "must lie in (0, 1]".into());
    }
    if !(cfg.step_rule_gamma > 0.0) || !cfg.step_rule_gamma.is_finite() {
        err("step_rule.gamma", "must be positive and finite".into());
    }
    if cfg.experiment_k_list.is_empty() {
        err("experiment.k_list", "must not be empty".into());
    }
    if cfg.experiment_k_list.iter().any(|&k| k < 1) {
        err("experiment.k_list", "every k must be at least 1".into());
    }
    if cfg.experiment_sample_every == 0 {
        err("experiment.sample_every", "must be at least 1".into());
    }
    if cfg.experiment_checkpoint_every == 0 {
        err("experiment.checkpoint_every", "must be at least 1".into());
    }
    if !(cfg.experiment_horizon > 0.0) || !cfg.experiment_horizon.is_finite() {
        err("experiment.horizon", "must be positive and finite".into());
    }
    if let Some(eps) = cfg.experiment_strichartz_epsilon {
        if !(eps > 0.0 && eps <= 1.0) {
            err("experiment.strichartz_epsilon", "must lie in (0, 1]".into());
        }
    }
    if !(cfg.initial_amplitude.is_finite()) {
        err("initial.amplitude", "must be finite".into());
    }
    if !(cfg.initial_width > 0.0) || !cfg.initial_width.is_finite() {
        err("initial.width", "must be positive and finite".into());
    }
    if cfg.initial_preset == InitialPreset::FromFile {
        match &cfg.initial_path {
            None => err(
                "initial.path",
                "required when initial.preset = from-file".into(),
            ),
            Some(p) => {
                if !Path::new(p).exists() {
                    err("initial.path", format!("file `{p}` not found"));
                }
            }
        }
    }
    if cfg.dichotomy_amplitudes.is_empty() {
        err("dichotomy.amplitudes", "must not be empty".into());
    }
    if cfg
        .dichotomy_amplitudes
        .iter()
        .any(|&a| !(a >= 0.0) || !a.is_finite())
    {
        err(
            "dichotomy.amplitudes",
            "entries must be nonnegative and finite".into(),
        );
    }
    if cfg.dichotomy_omegas.is_empty() {
        err("dichotomy.omegas", "must not be empty".into());
    }
    if cfg
        .dichotomy_omegas
        .iter()
        .any(|&w| !(w >= 0.0) || !w.is_finite())
    {
        err(
            "dichotomy.omegas",
            "entries must be nonnegative and finite".into(),
        );
    }
    if cfg.stability_deltas.is_empty() {
        err("stability.deltas", "must not be empty".into());
    }
    if cfg
        .stability_deltas
        .iter()
        .any(|&d| !(d >= 0.0) || !d.is_finite())
    {
        err(
            "stability.deltas",
            "entries must be nonnegative and finite".into(),
        );
    }
    if cfg.stability_deltas.windows(2).any(|w| w[1] >= w[0]) {
        err("stability.deltas", "must be strictly decreasing".into());
    }
    if !(cfg.stability_width > 0.0) || !cfg.stability_width.is_finite() {
        err("stability.width", "must be positive and finite".into());
    }
    if !(cfg.stability_horizon > 0.0) || !cfg.stability_horizon.is_finite() {
        err("stability.horizon", "must be positive and finite".into());
    }
    if !(cfg.pipeline_gamma > 0.0 && cfg.pipeline_gamma < 1.0) {
        err("pipeline.gamma", "must lie in (0, 1)".into());
    }
    if !(cfg.pipeline_y >= 0.0) || !cfg.pipeline_y.is_finite() {
        err("pipeline.y", "must be nonnegative and finite".into());
    }
    if !(cfg.identity_window > 0.0) || !cfg.identity_window.is_finite() {
        err("identity.window", "must be positive and finite".into());
    }
    if !(cfg.dichotomy_fit_t0 >= 0.0) || !cfg.dichotomy_fit_t0.is_finite() {
        err("dichotomy.fit_t0", "must be nonnegative and finite".into());
    }
    if !(cfg.fit_t0 >= 0.0) || !cfg.fit_t0.is_finite() {
        err("fit.t0", "must be nonnegative and finite".into());
    }
    if let Some(t1) = cfg.fit_t1 {
        if !(t1 > cfg.fit_t0) || !t1.is_finite() {
            err("fit.t1", "must be finite and exceed fit.t0".into());
        }
    }
}

/// Load and parse a config file. IO problems are reported separately from
/// content problems so the caller can map them to different exit codes.
pub fn load_config(path: &Path) -> Result<Result<RunConfig, Vec<ConfigError>>, std::io::Error> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_config(&text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_gives_defaults() {
        let cfg = parse_config("").unwrap();
        assert_eq!(cfg, RunConfig::default());
    }

    #[test]
    fn minimal_config_fills_defaults() {
        let cfg = parse_config("grid.n = 512\nseed = 7\n").unwrap();
        assert_eq!(cfg.grid_n, 512);
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.experiment_k_list, vec![1, 2]);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let cfg = parse_config("# a comment\n\nseed = 3 # trailing\n").unwrap();
        assert_eq!(cfg.seed, 3);
    }

    #[test]
    fn radius_vs_half_width_names_both_keys() {
        let text = "potential.enabled = true\npotential.radius = 7.0\ngrid.half_width = 6.0\n";
        let errs = parse_config(text).unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].path, "potential.radius");
        assert!(errs[0].message.contains("grid.half_width"));
    }

    #[test]
    fn all_errors_reported_not_first_failure() {
        let text = "grid.n = 100\nseed = banana\nexperiment.k_list = 0\nunknown.key = 1\n";
        let errs = parse_config(text).unwrap_err();
        assert!(errs.len() >= 4, "{errs:?}");
        let paths: Vec<&str> = errs.iter().map(|e| e.path.as_str()).collect();
        assert!(paths.contains(&"grid.n"));
        assert!(paths.contains(&"seed"));
        assert!(paths.contains(&"experiment.k_list"));
        assert!(paths.contains(&"unknown.key"));
    }

    #[test]
    fn duplicate_key_rejected() {
        let errs = parse_config("seed = 1\nseed = 2\n").unwrap_err();
        assert!(errs.iter().any(|e| e.message.contains("duplicate")));
    }

    #[test]
    fn emit_parse_round_trip() {
        let cfg = RunConfig {
            seed: 123456789,
            grid_n: 512,
            grid_half_width: 6.25e-1 * 10.0,
            integrator_dt: Some(1.25e-3),
            potential_enabled: true,
            potential_omega: core::f64::consts::PI,
            experiment_k_list: vec![1, 2, 3],
            experiment_strichartz_epsilon: Some(0.1),
            fit_t1: Some(99.5),
            initial_path: None,
            ..RunConfig::default()
        };
        let text = cfg.emit();
        let back = parse_config(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn n48_is_rejected() {
        let errs = parse_config("grid.n = 48\n").unwrap_err();
        assert!(errs[0].message.contains("power of two"));
    }
}

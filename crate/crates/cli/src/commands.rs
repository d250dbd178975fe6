//! Subcommand implementations. Every command reads one config, writes one
//! run directory (config copy, outputs, manifest), and maps failures onto
//! the documented exit codes: 2 config, 3 numerical, 4 IO.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use wavegrow_core::error::Error as CoreError;
use wavegrow_core::experiments::{
    assemble_point, continuous_dependence_probe, dichotomy_branch, noise_floor_of,
    run_recurrence_pipeline, DichotomyConfig, DichotomyPoint, PipelineConfig, StabilityConfig,
};
use wavegrow_core::field::{GridSpec, MultiIndex, State};
use wavegrow_core::fit::{fit_growth, GrowthFit, GrowthModel};
use wavegrow_core::functionals::{verify_identity_43, verify_identity_51};
use wavegrow_core::integrator::{
    column_names, default_dt, evolve_observed, strang_step, IntegratorConfig, SampleSpec,
};
use wavegrow_core::potential::PotentialSpec;
use wavegrow_core::presets;
use wavegrow_core::propagator::{step_size, StepRule};
use wavegrow_core::recurrence::{extremal_sequence, min_envelope, RecurrenceParams};

use crate::checkpoint::{load_initial, save_state};
use crate::config::{ConfigError, InitialPreset, RunConfig};
use crate::csvio::{fmt_float, read_csv, CsvWriter};
use crate::jsonout::Json;
use crate::rundir::RunDir;

#[derive(Debug)]
pub enum CmdError {
    Config(Vec<ConfigError>),
    Numerical(String),
    Io(String),
}

impl CmdError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CmdError::Config(_) => 2,
            CmdError::Numerical(_) => 3,
            CmdError::Io(_) => 4,
        }
    }

    pub fn print(&self) {
        match self {
            CmdError::Config(errors) => {
                eprintln!("configuration errors:");
                for e in errors {
                    eprintln!("  {e}");
                }
            }
            CmdError::Numerical(msg) => eprintln!("numerical failure: {msg}"),
            CmdError::Io(msg) => eprintln!("io error: {msg}"),
        }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Io(e.to_string())
    }
}

impl From<CoreError> for CmdError {
    fn from(e: CoreError) -> Self {
        match &e {
            CoreError::GridSize { .. }
            | CoreError::GridDim { .. }
            | CoreError::BadParameter { .. }
            | CoreError::SupportExceedsBox { .. } => CmdError::Config(vec![ConfigError {
                path: "(derived)".into(),
                message: e.to_string(),
            }]),
            _ => CmdError::Numerical(e.to_string()),
        }
    }
}

impl From<crate::checkpoint::CheckpointError> for CmdError {
    fn from(e: crate::checkpoint::CheckpointError) -> Self {
        CmdError::Io(e.to_string())
    }
}

/// Worker cap: WAVEGROW_THREADS, else the machine's parallelism.
pub fn thread_cap() -> usize {
    if let Ok(v) = std::env::var("WAVEGROW_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            return n.max(1);
        }
    }
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

pub fn grid_of(cfg: &RunConfig) -> Result<GridSpec, CmdError> {
    Ok(GridSpec::new(
        cfg.grid_dim,
        cfg.grid_n,
        cfg.grid_half_width,
    )?)
}

pub fn potential_of(cfg: &RunConfig) -> Result<PotentialSpec, CmdError> {
    if cfg.potential_enabled {
        Ok(PotentialSpec::new(
            cfg.potential_amplitude,
            cfg.potential_radius,
            cfg.potential_omega,
            true,
        )?)
    } else {
        Ok(PotentialSpec::disabled())
    }
}

pub fn initial_of(cfg: &RunConfig, grid: GridSpec) -> Result<State, CmdError> {
    match cfg.initial_preset {
        InitialPreset::GaussianBump => Ok(presets::gaussian_bump(
            grid,
            cfg.initial_amplitude,
            cfg.initial_width,
        )),
        InitialPreset::SingleMode => Ok(presets::single_mode(
            grid,
            cfg.initial_mode,
            cfg.initial_amplitude,
        )),
        InitialPreset::FromFile => {
            let path = cfg.initial_path.as_ref().ok_or_else(|| {
                CmdError::Config(vec![ConfigError {
                    path: "initial.path".into(),
                    message: "required for from-file".into(),
                }])
            })?;
            let state = load_initial(Path::new(path))?;
            if state.grid() != grid {
                return Err(CmdError::Config(vec![ConfigError {
                    path: "initial.path".into(),
                    message: "grid in file does not match grid.* keys".into(),
                }]));
            }
            Ok(state)
        }
    }
}

pub fn step_rule_of(cfg: &RunConfig) -> Result<StepRule, CmdError> {
    Ok(StepRule::new(cfg.step_rule_c, cfg.step_rule_gamma)?)
}

/// Explicit dt, or the default min(Δx/4, τ/20) from the step rule.
pub fn resolve_dt(cfg: &RunConfig, grid: &GridSpec, data: &State) -> Result<f64, CmdError> {
    if let Some(dt) = cfg.integrator_dt {
        return Ok(dt);
    }
    let rule = step_rule_of(cfg)?;
    Ok(default_dt(grid, step_size(data, &rule)))
}

fn sample_spec_of(cfg: &RunConfig) -> Result<SampleSpec, CmdError> {
    let lr_exponent = match cfg.experiment_strichartz_epsilon {
        Some(eps) => Some(wavegrow_core::functionals::StrichartzParams::from_epsilon(eps)?.r),
        None => None,
    };
    Ok(SampleSpec {
        k_list: cfg.experiment_k_list.clone(),
        identities: cfg.experiment_identities,
        alphas: vec![MultiIndex::axis(0, 1), MultiIndex::axis(0, 2)],
        lr_exponent,
    })
}

/// `simulate`: march, stream the series CSV, checkpoint periodically. When
/// the directory holds a checkpoint and series but no manifest, the run
/// resumes from the checkpoint and appends only the missing rows.
/// `abort_after_rows` stops mid-run without a manifest (crash injection for
/// the resume tests).
pub fn cmd_simulate(
    cfg: &RunConfig,
    out_dir: &Path,
    abort_after_rows: Option<usize>,
) -> Result<(), CmdError> {
    let grid = grid_of(cfg)?;
    let spec = potential_of(cfg)?;
    let fresh_data = initial_of(cfg, grid)?;
    let dt = resolve_dt(cfg, &grid, &fresh_data)?;
    let int_cfg = IntegratorConfig::new(dt, cfg.integrator_cubic)?;
    let sample = sample_spec_of(cfg)?;

    let ck_path = out_dir.join("state_latest.bin");
    let csv_path = out_dir.join("series.csv");
    let resuming = ck_path.exists() && csv_path.exists() && !out_dir.join("manifest.json").exists();

    let (data, resume_after_t) = if resuming {
        // resuming under a different configuration would append rows from a
        // different trajectory; require the config to be unchanged
        let prior = std::fs::read_to_string(out_dir.join("config.txt")).unwrap_or_default();
        if prior != cfg.emit() {
            return Err(CmdError::Config(vec![ConfigError {
                path: "(resume)".into(),
                message: format!(
                    "directory `{}` holds an interrupted run with a different configuration",
                    out_dir.display()
                ),
            }]));
        }
        let state = crate::checkpoint::load_state(&ck_path)?;
        let existing = read_csv(&csv_path)?;
        let last_t = existing.times.last().copied().unwrap_or(f64::NEG_INFINITY);
        (state, Some(last_t))
    } else {
        (fresh_data, None)
    };

    let mut dir = RunDir::open(out_dir, &cfg.emit())?;
    let mut writer = if resuming {
        CsvWriter::open_append(&csv_path)?
    } else {
        CsvWriter::create(&csv_path, &column_names(&sample, grid.dim()))?
    };
    dir.track("series.csv");
    dir.track("state_latest.bin");

    let sample_dt = cfg.experiment_sample_every as f64 * dt;
    let skip_below = resume_after_t.map(|t| t + 0.5 * sample_dt);
    let mut rows_written = 0usize;
    let mut samples_seen = 0usize;
    let mut io_failure: Option<std::io::Error> = None;
    let mut aborted = false;
    let mut last_state: Option<State> = None;

    let result = evolve_observed(
        &data,
        &spec,
        &int_cfg,
        cfg.experiment_horizon,
        cfg.experiment_sample_every,
        &sample,
        |st, t, row| {
            samples_seen += 1;
            last_state = Some(st.clone());
            if skip_below.map(|cut| t <= cut).unwrap_or(false) {
                return true;
            }
            if let Err(e) = writer.row(t, row) {
                io_failure = Some(e);
                return false;
            }
            rows_written += 1;
            if samples_seen.is_multiple_of(cfg.experiment_checkpoint_every) {
                if let Err(e) = save_state(st, &ck_path) {
                    io_failure = Some(e);
                    return false;
                }
            }
            if let Some(max) = abort_after_rows {
                if rows_written >= max {
                    aborted = true;
                    return false;
                }
            }
            true
        },
    );

    if let Some(e) = io_failure {
        let _ = dir.finish(Err(&format!("io: {e}")));
        return Err(e.into());
    }
    if aborted {
        // crash injection: release the lock but write no manifest
        drop(dir);
        return Ok(());
    }
    match result {
        Ok(_) => {
            // the checkpoint must hold the endpoint regardless of cadence
            if let Some(st) = &last_state {
                save_state(st, &ck_path)?;
            }
            dir.finish(Ok(()))?;
            Ok(())
        }
        Err(e) => {
            let msg = e.to_string();
            let _ = dir.finish(Err(&msg));
            Err(e.into())
        }
    }
}

fn model_name(m: GrowthModel) -> &'static str {
    match m {
        GrowthModel::Polynomial => "polynomial",
        GrowthModel::Exponential => "exponential",
        GrowthModel::Indeterminate => "indeterminate",
    }
}

fn fit_json(fit: &GrowthFit) -> Json {
    Json::obj(vec![
        ("model", Json::Str(model_name(fit.model).into())),
        ("poly_exponent", Json::Num(fit.poly_exponent)),
        ("poly_r2", Json::Num(fit.poly_r2)),
        ("exp_rate", Json::Num(fit.exp_rate)),
        ("exp_r2", Json::Num(fit.exp_r2)),
        (
            "window",
            Json::Arr(vec![Json::Num(fit.window.0), Json::Num(fit.window.1)]),
        ),
    ])
}

pub fn dichotomy_config_of(cfg: &RunConfig) -> DichotomyConfig {
    DichotomyConfig {
        amplitudes: cfg.dichotomy_amplitudes.clone(),
        omegas: cfg.dichotomy_omegas.clone(),
        radius: cfg.potential_radius,
        horizon: cfg.experiment_horizon,
        dt: cfg.integrator_dt.unwrap_or(0.01),
        sample_every: cfg.experiment_sample_every,
        fit_window: (cfg.dichotomy_fit_t0, cfg.experiment_horizon),
    }
}

/// `dichotomy`: (A, ω) sweep with both branches per point, run on a worker
/// pool capped by WAVEGROW_THREADS; assembly order is deterministic.
pub fn cmd_dichotomy(cfg: &RunConfig, out_dir: &Path) -> Result<(), CmdError> {
    if cfg.dichotomy_fit_t0 >= cfg.experiment_horizon {
        return Err(CmdError::Config(vec![ConfigError {
            path: "dichotomy.fit_t0".into(),
            message: "must be smaller than experiment.horizon".into(),
        }]));
    }
    let grid = grid_of(cfg)?;
    let data = initial_of(cfg, grid)?;
    let dcfg = dichotomy_config_of(cfg);

    // work items: the two A = 0 control branches, then both branches per point
    let mut items: Vec<(f64, f64, bool)> = vec![(0.0, 0.0, false), (0.0, 0.0, true)];
    for &a in &dcfg.amplitudes {
        for &w in &dcfg.omegas {
            items.push((a, w, false));
            items.push((a, w, true));
        }
    }

    let results: Vec<Option<Result<GrowthFit, CoreError>>> = run_pool(&items, |&(a, w, cubic)| {
        dichotomy_branch(&data, &dcfg, a, w, cubic)
    });

    let mut fits = Vec::with_capacity(items.len());
    for r in results {
        {
            let fit = r.expect("worker finished")?;
            fits.push(fit)
        }
    }

    let noise_floor = noise_floor_of(&fits[0], &fits[1]);
    let mut points: Vec<DichotomyPoint> = Vec::new();
    let mut idx = 2;
    for &a in &dcfg.amplitudes {
        for &w in &dcfg.omegas {
            let linear = fits[idx];
            let nonlinear = fits[idx + 1];
            idx += 2;
            points.push(assemble_point(a, w, linear, nonlinear, noise_floor));
        }
    }

    let mut dir = RunDir::open(out_dir, &cfg.emit())?;
    let mut csv = String::from(
        "amplitude,omega,linear_model,linear_poly_exponent,linear_poly_r2,linear_exp_rate,linear_exp_r2,nonlinear_model,nonlinear_poly_exponent,nonlinear_poly_r2,nonlinear_exp_rate,nonlinear_exp_r2,flagged\n",
    );
    for p in &points {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            fmt_float(p.amplitude),
            fmt_float(p.omega),
            model_name(p.linear.model),
            fmt_float(p.linear.poly_exponent),
            fmt_float(p.linear.poly_r2),
            fmt_float(p.linear.exp_rate),
            fmt_float(p.linear.exp_r2),
            model_name(p.nonlinear.model),
            fmt_float(p.nonlinear.poly_exponent),
            fmt_float(p.nonlinear.poly_r2),
            fmt_float(p.nonlinear.exp_rate),
            fmt_float(p.nonlinear.exp_r2),
            p.flagged,
        ));
    }
    dir.write_text("dichotomy.csv", &csv)?;

    let flagged: Vec<Json> = points
        .iter()
        .filter(|p| p.flagged)
        .map(|p| {
            Json::obj(vec![
                ("amplitude", Json::Num(p.amplitude)),
                ("omega", Json::Num(p.omega)),
                ("exp_rate", Json::Num(p.nonlinear.exp_rate)),
            ])
        })
        .collect();
    let json = Json::obj(vec![
        ("noise_floor", Json::Num(noise_floor)),
        ("n_points", Json::Int(points.len() as i64)),
        ("n_flagged", Json::Int(flagged.len() as i64)),
        ("flagged", Json::Arr(flagged)),
    ]);
    dir.write_json("dichotomy.json", &json)?;
    dir.finish(Ok(()))?;
    Ok(())
}

/// Fixed-size worker pool over a work list; results keep item order.
pub fn run_pool<T: Sync, R: Send>(items: &[T], job: impl Fn(&T) -> R + Sync) -> Vec<Option<R>> {
    let workers = thread_cap().min(items.len()).max(1);
    let next = AtomicUsize::new(0);
    let results: Vec<Mutex<Option<R>>> = items.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = job(&items[i]);
                *results[i].lock().unwrap() = Some(r);
            });
        }
    });
    results
        .into_iter()
        .map(|m| m.into_inner().unwrap())
        .collect()
}

/// `pipeline`: X₂ at the window boundaries nτ(a), envelope fit and check.
pub fn cmd_pipeline(cfg: &RunConfig, out_dir: &Path) -> Result<(), CmdError> {
    let grid = grid_of(cfg)?;
    let spec = potential_of(cfg)?;
    let data = initial_of(cfg, grid)?;
    let dt_hint = resolve_dt(cfg, &grid, &data)?;
    let pcfg = PipelineConfig {
        rule: step_rule_of(cfg)?,
        horizon: cfg.experiment_horizon,
        dt_hint,
        rec_gamma: cfg.pipeline_gamma,
        rec_y: cfg.pipeline_y,
    };
    let report = run_recurrence_pipeline(&data, &spec, &pcfg)?;

    let mut dir = RunDir::open(out_dir, &cfg.emit())?;
    {
        let mut w = CsvWriter::create(&dir.file("pipeline.csv"), &["X2".to_string()])?;
        for (t, x2) in report.times.iter().zip(&report.x2) {
            w.row(*t, &[*x2])?;
        }
        dir.track("pipeline.csv");
    }
    if let Some(last) = report.boundary_states.last() {
        save_state(last, &dir.file("state_final.bin"))?;
        dir.track("state_final.bin");
    }
    let json = Json::obj(vec![
        ("tau", Json::Num(report.tau)),
        ("n_windows", Json::Int(report.n_windows as i64)),
        ("fitted_c", Json::Num(report.check.fitted_c)),
        ("Ctilde", Json::Num(report.check.envelope.ctilde)),
        ("exponent", Json::Num(report.check.envelope.exponent)),
        ("worst_ratio", Json::Num(report.check.worst_ratio)),
        ("certified", Json::Bool(report.check.passes)),
    ]);
    dir.write_json("pipeline.json", &json)?;
    dir.finish(Ok(()))?;
    Ok(())
}

/// `stability`: continuous dependence under shrinking perturbations.
pub fn cmd_stability(cfg: &RunConfig, out_dir: &Path) -> Result<(), CmdError> {
    let grid = grid_of(cfg)?;
    let spec = potential_of(cfg)?;
    let data = initial_of(cfg, grid)?;
    let dt = resolve_dt(cfg, &grid, &data)?;
    let direction = presets::gaussian_bump(grid, 1.0, cfg.stability_width).u;
    let scfg = StabilityConfig {
        deltas: cfg.stability_deltas.clone(),
        horizon: cfg.stability_horizon,
        dt,
        sample_every: cfg.experiment_sample_every.min(10),
        k_list: cfg.experiment_k_list.clone(),
    };
    let report = continuous_dependence_probe(&data, &direction, &spec, &scfg)?;

    let mut dir = RunDir::open(out_dir, &cfg.emit())?;
    let mut csv = String::from("delta");
    for k in &scfg.k_list {
        csv.push_str(&format!(",dist_k{k}"));
    }
    csv.push('\n');
    for (j, &d) in report.deltas.iter().enumerate() {
        csv.push_str(&fmt_float(d));
        for row in &report.distances {
            csv.push(',');
            csv.push_str(&fmt_float(row[j]));
        }
        csv.push('\n');
    }
    dir.write_text("stability.csv", &csv)?;

    let json = Json::obj(vec![
        (
            "deltas",
            Json::Arr(report.deltas.iter().map(|&d| Json::Num(d)).collect()),
        ),
        (
            "ratios",
            Json::Arr(
                report
                    .ratios
                    .iter()
                    .map(|row| Json::Arr(row.iter().map(|&r| Json::Num(r)).collect()))
                    .collect(),
            ),
        ),
    ]);
    dir.write_json("stability.json", &json)?;
    dir.finish(Ok(()))?;
    Ok(())
}

/// `fit`: growth-model fit of one column of an existing series CSV.
pub fn cmd_fit(cfg: &RunConfig, out_dir: &Path) -> Result<(), CmdError> {
    let input = cfg.fit_input.as_ref().ok_or_else(|| {
        CmdError::Config(vec![ConfigError {
            path: "fit.input".into(),
            message: "required for the fit subcommand".into(),
        }])
    })?;
    let data = read_csv(Path::new(input))?;
    let column = data.column(&cfg.fit_column).ok_or_else(|| {
        CmdError::Config(vec![ConfigError {
            path: "fit.column".into(),
            message: format!("column `{}` not in {input}", cfg.fit_column),
        }])
    })?;
    let t1 = cfg
        .fit_t1
        .unwrap_or_else(|| data.times.last().copied().unwrap_or(cfg.fit_t0));
    let fit = fit_growth(&data.times, column, (cfg.fit_t0, t1))?;

    let mut dir = RunDir::open(out_dir, &cfg.emit())?;
    let json = fit_json(&fit);
    println!("{json}");
    dir.write_json("fit.json", &json)?;
    dir.finish(Ok(()))?;
    Ok(())
}

pub struct LemmaArgs {
    pub gamma: f64,
    pub c: f64,
    pub y: f64,
    pub alpha0: f64,
    pub n_max: usize,
}

/// `lemma-check`: certified envelope for flag-supplied parameters, printed
/// as JSON on stdout.
pub fn cmd_lemma_check(args: &LemmaArgs) -> Result<(), CmdError> {
    let params = RecurrenceParams::new(args.gamma, args.c, args.y, args.alpha0)?;
    let env = min_envelope(&params)?;
    // worst ratio over the extremal sequence (log-space), prefix on overflow
    let seq = match extremal_sequence(&params, args.n_max) {
        Ok(s) => s,
        Err(CoreError::Overflow { index }) => {
            extremal_sequence(&params, index - 1).unwrap_or_default()
        }
        Err(e) => return Err(e.into()),
    };
    let mut worst: f64 = 0.0;
    for (n, &v) in seq.iter().enumerate() {
        if v > 0.0 {
            worst = worst.max(libm::exp(libm::log(v) - env.log_value(n)));
        }
    }
    let certified = env.dominates(&seq);
    let json = Json::obj(vec![
        ("Ctilde", Json::Num(env.ctilde)),
        ("exponent", Json::Num(env.exponent)),
        ("certified", Json::Bool(certified)),
        ("worst_ratio", Json::Num(worst)),
    ]);
    println!("{json}");
    Ok(())
}

/// `verify-identity`: residuals of both balance identities on a short run at
/// dt and dt/2, with their convergence ratios.
pub fn cmd_verify_identity(cfg: &RunConfig, out_dir: &Path) -> Result<(), CmdError> {
    let grid = grid_of(cfg)?;
    let spec = potential_of(cfg)?;
    let data = initial_of(cfg, grid)?;
    let dt = resolve_dt(cfg, &grid, &data)?;
    let window = cfg.identity_window;

    let collect = |dt: f64| -> Result<Vec<State>, CmdError> {
        let int_cfg = IntegratorConfig::new(dt, cfg.integrator_cubic)?;
        let steps = (window / dt).round() as usize;
        let every = (steps / 10).max(1);
        let mut out = vec![data.clone()];
        let mut s = data.clone();
        for i in 1..=steps {
            s = strang_step(&s, &spec, &int_cfg)?;
            if i % every == 0 {
                out.push(s.clone());
            }
        }
        Ok(out)
    };

    let coarse = collect(dt)?;
    let fine = collect(dt / 2.0)?;

    let res43 = verify_identity_43(&coarse, &spec)?;
    let res43_fine = verify_identity_43(&fine, &spec)?;
    let mut pairs = vec![
        ("res43".to_string(), res43),
        ("res43_half_dt".to_string(), res43_fine),
        ("ratio43".to_string(), res43 / res43_fine),
    ];
    for alpha in [MultiIndex::axis(0, 1), MultiIndex::axis(0, 2)] {
        let label = alpha.label(grid.dim());
        let r = verify_identity_51(&coarse, &spec, &alpha)?;
        let rf = verify_identity_51(&fine, &spec, &alpha)?;
        pairs.push((format!("res51_{label}"), r));
        pairs.push((format!("res51_{label}_half_dt"), rf));
        pairs.push((format!("ratio51_{label}"), r / rf));
    }

    let json = Json::Obj(pairs.into_iter().map(|(k, v)| (k, Json::Num(v))).collect());
    println!("{json}");
    let mut dir = RunDir::open(out_dir, &cfg.emit())?;
    dir.write_json("identity.json", &json)?;
    dir.finish(Ok(()))?;
    Ok(())
}

/// Resolve the output directory: --out flag beats the config key.
pub fn resolve_out_dir(cfg: &RunConfig, out_flag: Option<&str>) -> PathBuf {
    PathBuf::from(out_flag.unwrap_or(&cfg.output_dir))
}

/// JSON export of a Picard window report (the documented interchange shape:
/// iterate count, successive-difference array, convergence flag, window
/// timestamps).
pub fn picard_report_json(
    report: &wavegrow_core::propagator::PicardReport,
    window_start: f64,
    window_end: f64,
) -> Json {
    Json::obj(vec![
        ("iterates_used", Json::Int(report.iterates_used as i64)),
        (
            "diffs",
            Json::Arr(
                report
                    .successive_diffs
                    .iter()
                    .map(|&d| Json::Num(d))
                    .collect(),
            ),
        ),
        ("converged", Json::Bool(report.converged)),
        (
            "window",
            Json::Arr(vec![Json::Num(window_start), Json::Num(window_end)]),
        ),
    ])
}

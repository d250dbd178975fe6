//! Scenario drivers: the linear/nonlinear growth dichotomy, the end-to-end
//! recurrence pipeline on measured X₂ sequences, and the continuous-
//! dependence probe.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, State};
use crate::fit::{fit_growth, GrowthFit, GrowthModel};
use crate::integrator::{evolve, evolve_observed, IntegratorConfig, SampleSpec};
use crate::norms::pair_norm;
use crate::potential::PotentialSpec;
use crate::propagator::{step_size, StepRule};
use crate::recurrence::{check_series, SeriesCheck};

#[derive(Clone, Debug)]
pub struct DichotomyConfig {
    pub amplitudes: Vec<f64>,
    pub omegas: Vec<f64>,
    pub radius: f64,
    pub horizon: f64,
    pub dt: f64,
    pub sample_every: usize,
    pub fit_window: (f64, f64),
}

#[derive(Clone, Debug)]
pub struct DichotomyPoint {
    pub amplitude: f64,
    pub omega: f64,
    pub linear: GrowthFit,
    pub nonlinear: GrowthFit,
    /// Nonlinear branch won an exponential fit above the noise floor.
    pub flagged: bool,
}

#[derive(Clone, Debug)]
pub struct DichotomyReport {
    pub points: Vec<DichotomyPoint>,
    /// Largest spurious exponential rate the fit produces on the A = 0
    /// control (both branches).
    pub noise_floor: f64,
}

/// One branch of one sweep point: evolve with the cubic term on or off and
/// fit the H¹ column. Public so sweep points can run on separate threads.
pub fn dichotomy_branch(
    data: &State,
    cfg: &DichotomyConfig,
    amplitude: f64,
    omega: f64,
    cubic: bool,
) -> Result<GrowthFit> {
    let spec = if amplitude > 0.0 {
        PotentialSpec::new(amplitude, cfg.radius, omega, true)?
    } else {
        PotentialSpec::disabled()
    };
    let int_cfg = IntegratorConfig::new(cfg.dt, cubic)?;
    let sample = SampleSpec::norms_only(alloc::vec![1]);
    let series = evolve(
        data,
        &spec,
        &int_cfg,
        cfg.horizon,
        cfg.sample_every,
        &sample,
    )?;
    let h1 = series.require_column("H1")?;
    fit_growth(series.times(), h1, cfg.fit_window)
}

/// Run the (A, ω) sweep serially: linear and nonlinear branch per point plus
/// the A = 0 control that pins the fit noise floor.
pub fn run_dichotomy(data: &State, cfg: &DichotomyConfig) -> Result<DichotomyReport> {
    let control_lin = dichotomy_branch(data, cfg, 0.0, 0.0, false)?;
    let control_non = dichotomy_branch(data, cfg, 0.0, 0.0, true)?;
    let noise_floor = noise_floor_of(&control_lin, &control_non);

    let mut points = Vec::new();
    for &a in &cfg.amplitudes {
        for &w in &cfg.omegas {
            let linear = dichotomy_branch(data, cfg, a, w, false)?;
            let nonlinear = dichotomy_branch(data, cfg, a, w, true)?;
            points.push(assemble_point(a, w, linear, nonlinear, noise_floor));
        }
    }
    Ok(DichotomyReport {
        points,
        noise_floor,
    })
}

/// Noise floor: magnitude of the exponential-model rate on the control runs.
pub fn noise_floor_of(control_linear: &GrowthFit, control_nonlinear: &GrowthFit) -> f64 {
    control_linear
        .exp_rate
        .abs()
        .max(control_nonlinear.exp_rate.abs())
        .max(1e-12)
}

pub fn assemble_point(
    amplitude: f64,
    omega: f64,
    linear: GrowthFit,
    nonlinear: GrowthFit,
    noise_floor: f64,
) -> DichotomyPoint {
    let flagged =
        nonlinear.model == GrowthModel::Exponential && nonlinear.exp_rate > 3.0 * noise_floor;
    DichotomyPoint {
        amplitude,
        omega,
        linear,
        nonlinear,
        flagged,
    }
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub rule: StepRule,
    /// Horizon a > 1; the run covers [0, N τ(a)] with N = ⌊a/τ⌋.
    pub horizon: f64,
    /// The integrator step is τ/m with m = ⌈τ/dt_hint⌉, so window
    /// boundaries land exactly on step boundaries.
    pub dt_hint: f64,
    /// Recurrence exponents used for the envelope fit on X₂(nτ).
    pub rec_gamma: f64,
    pub rec_y: f64,
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub tau: f64,
    pub n_windows: usize,
    pub times: Vec<f64>,
    pub x2: Vec<f64>,
    /// Solver states at the window boundaries nτ.
    pub boundary_states: Vec<State>,
    pub check: SeriesCheck,
}

/// Evolve to the horizon, sample X₂ at the fixed window boundaries nτ(a)
/// (τ evaluated once from the initial data), and check the measured sequence
/// against its fitted recurrence envelope.
pub fn run_recurrence_pipeline(
    data: &State,
    spec: &PotentialSpec,
    cfg: &PipelineConfig,
) -> Result<PipelineReport> {
    let tau = step_size(data, &cfg.rule);
    if !(cfg.horizon > tau) {
        return Err(Error::BadParameter {
            what: "pipeline horizon must exceed one window",
        });
    }
    let n_windows = libm::floor(cfg.horizon / tau) as usize;
    let m = libm::ceil(tau / cfg.dt_hint) as usize;
    let m = m.max(1);
    let dt = tau / m as f64;

    let int_cfg = IntegratorConfig::new(dt, true)?;
    let sample = SampleSpec {
        k_list: alloc::vec![1, 2],
        identities: true,
        alphas: Vec::new(),
        lr_exponent: None,
    };

    let mut boundary_states = Vec::with_capacity(n_windows + 1);
    let series = evolve_observed(
        data,
        spec,
        &int_cfg,
        n_windows as f64 * tau,
        m,
        &sample,
        |st, _, _| {
            boundary_states.push(st.clone());
            true
        },
    )?;

    let x2 = series.require_column("X2")?.to_vec();
    let times = series.times().to_vec();
    let check = check_series(&times, &x2, cfg.rec_gamma, cfg.rec_y)?;

    Ok(PipelineReport {
        tau,
        n_windows,
        times,
        x2,
        boundary_states,
        check,
    })
}

#[derive(Clone, Debug)]
pub struct StabilityConfig {
    /// Perturbation sizes, decreasing (dyadic halving in the experiments).
    pub deltas: Vec<f64>,
    pub horizon: f64,
    pub dt: f64,
    pub sample_every: usize,
    pub k_list: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub deltas: Vec<f64>,
    /// `distances[i][j]`: sup-in-time H^k × H^{k-1} distance for
    /// `k = k_list[i]` and perturbation `deltas[j]`.
    pub distances: Vec<Vec<f64>>,
    /// `ratios[i][j] = distances[i][j+1] / distances[i][j]`.
    pub ratios: Vec<Vec<f64>>,
}

/// March the base data and each perturbation f + δg in lockstep, recording
/// the sup over sampled times of the pair norm of the difference.
pub fn continuous_dependence_probe(
    data: &State,
    direction: &Field,
    spec: &PotentialSpec,
    cfg: &StabilityConfig,
) -> Result<StabilityReport> {
    use crate::integrator::strang_step;

    let int_cfg = IntegratorConfig::new(cfg.dt, true)?;
    int_cfg.validate_for(&data.grid())?;
    let n_steps = libm::round(cfg.horizon / cfg.dt) as usize;
    let sample_every = cfg.sample_every.max(1);

    let mut distances = alloc::vec![Vec::new(); cfg.k_list.len()];
    for &delta in &cfg.deltas {
        let mut perturbed_u = data.u.clone();
        perturbed_u.axpy(delta, direction);
        let mut a = data.clone();
        let mut b = State::new(perturbed_u, data.ut.clone(), data.t);

        let mut sup = alloc::vec![0.0f64; cfg.k_list.len()];
        let measure = |a: &State, b: &State, sup: &mut [f64]| {
            let diff = a.sub(b);
            for (i, &k) in cfg.k_list.iter().enumerate() {
                sup[i] = sup[i].max(pair_norm(&diff, k as f64));
            }
        };
        measure(&a, &b, &mut sup);
        for step in 1..=n_steps {
            a = strang_step(&a, spec, &int_cfg)?;
            b = strang_step(&b, spec, &int_cfg)?;
            if step % sample_every == 0 || step == n_steps {
                measure(&a, &b, &mut sup);
            }
        }
        for (i, &s) in sup.iter().enumerate() {
            distances[i].push(s);
        }
    }

    let ratios = distances
        .iter()
        .map(|row| row.windows(2).map(|w| w[1] / w[0]).collect())
        .collect();

    Ok(StabilityReport {
        deltas: cfg.deltas.clone(),
        distances,
        ratios,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GridSpec;
    use crate::presets;

    fn small_cfg() -> DichotomyConfig {
        DichotomyConfig {
            amplitudes: alloc::vec![0.0, 1.0],
            omegas: alloc::vec![1.0],
            radius: 1.0,
            horizon: 12.0,
            dt: 0.01,
            sample_every: 20,
            fit_window: (1.0, 12.0),
        }
    }

    #[test]
    fn dichotomy_control_is_quiet() {
        let g = GridSpec::new(1, 64, 4.0).unwrap();
        let data = presets::gaussian_bump(g, 0.5, 0.6);
        let cfg = small_cfg();
        let report = run_dichotomy(&data, &cfg).unwrap();
        assert_eq!(report.points.len(), 2);
        // the A = 0 point: both branches identical free/cubic dynamics; the
        // poly exponent hovers near zero and nothing is flagged
        let p0 = &report.points[0];
        assert!(p0.nonlinear.poly_exponent.abs() < 0.5);
        assert!(!p0.flagged);
    }

    #[test]
    fn pipeline_zero_data_trivially_enveloped() {
        let g = GridSpec::new(1, 32, 2.0).unwrap();
        let data = State::zero(g);
        let cfg = PipelineConfig {
            rule: StepRule::new(0.5, 2.0).unwrap(),
            horizon: 2.0,
            dt_hint: 0.02,
            rec_gamma: 0.125,
            rec_y: 12.0,
        };
        let report = run_recurrence_pipeline(&data, &PotentialSpec::disabled(), &cfg).unwrap();
        assert!(report.x2.iter().all(|&v| v == 0.0));
        assert!(report.check.passes);
        assert_eq!(report.check.fitted_c, 0.0);
        assert_eq!(report.boundary_states.len(), report.x2.len());
    }

    #[test]
    fn pipeline_no_potential_near_flat_sequence() {
        // q = 0 nonlinear run: X1 is conserved, X2 stays bounded, and the
        // fitted recurrence constant is tiny
        let g = GridSpec::new(1, 64, 4.0).unwrap();
        let data = presets::gaussian_bump(g, 0.6, 0.6);
        let cfg = PipelineConfig {
            rule: StepRule::new(0.3, 2.0).unwrap(),
            horizon: 4.0,
            dt_hint: 0.005,
            rec_gamma: 0.125,
            rec_y: 12.0,
        };
        let report = run_recurrence_pipeline(&data, &PotentialSpec::disabled(), &cfg).unwrap();
        assert!(report.check.passes);
        let max_x2 = report.x2.iter().cloned().fold(0.0f64, f64::max);
        let min_x2 = report.x2.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(
            max_x2 < 10.0 * min_x2.max(1e-9),
            "X2 not bounded: {min_x2}..{max_x2}"
        );
        assert!(report.check.fitted_c < 1.0);
    }

    #[test]
    fn pipeline_samples_land_on_window_boundaries() {
        let g = GridSpec::new(1, 64, 4.0).unwrap();
        let data = presets::gaussian_bump(g, 0.4, 0.6);
        let cfg = PipelineConfig {
            rule: StepRule::new(0.5, 2.0).unwrap(),
            horizon: 3.0,
            dt_hint: 0.01,
            rec_gamma: 0.125,
            rec_y: 12.0,
        };
        let spec = PotentialSpec::new(0.5, 1.0, 2.0, true).unwrap();
        let report = run_recurrence_pipeline(&data, &spec, &cfg).unwrap();
        for (n, &t) in report.times.iter().enumerate() {
            assert!((t - n as f64 * report.tau).abs() < 1e-9);
        }
        assert_eq!(report.times.len(), report.n_windows + 1);
    }

    #[test]
    fn stability_zero_delta_zero_distance() {
        let g = GridSpec::new(1, 32, 2.0).unwrap();
        let data = presets::gaussian_bump(g, 0.3, 0.5);
        let direction = presets::gaussian_bump(g, 1.0, 0.4).u;
        let cfg = StabilityConfig {
            deltas: alloc::vec![0.0],
            horizon: 0.05,
            dt: 0.005,
            sample_every: 2,
            k_list: alloc::vec![1, 2],
        };
        let report =
            continuous_dependence_probe(&data, &direction, &PotentialSpec::disabled(), &cfg)
                .unwrap();
        assert_eq!(report.distances[0][0], 0.0);
        assert_eq!(report.distances[1][0], 0.0);
    }

    #[test]
    fn stability_k1_below_k2() {
        let g = GridSpec::new(1, 64, 3.0).unwrap();
        let data = presets::gaussian_bump(g, 0.5, 0.5);
        let direction = presets::gaussian_bump(g, 1.0, 0.35).u;
        let spec = PotentialSpec::new(0.5, 1.0, 1.0, true).unwrap();
        let cfg = StabilityConfig {
            deltas: alloc::vec![1e-2, 5e-3],
            horizon: 0.1,
            dt: 0.005,
            sample_every: 2,
            k_list: alloc::vec![1, 2],
        };
        let report = continuous_dependence_probe(&data, &direction, &spec, &cfg).unwrap();
        for j in 0..2 {
            assert!(report.distances[0][j] <= report.distances[1][j] + 1e-15);
        }
        // halving delta roughly halves the distance in the Lipschitz regime
        let r = report.ratios[0][0];
        assert!((0.3..0.7).contains(&r), "ratio {r}");
    }
}

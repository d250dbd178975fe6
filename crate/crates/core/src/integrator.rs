//! Strang-splitting reference integrator: exact free flow in Fourier space
//! composed symmetrically with a pointwise potential/nonlinearity kick.
//!
//! The free half-steps are exact (per-mode rotations), the kick integrates
//! `∂_t u_t = -q u - u³` with `u` frozen (exact for that subsystem), and the
//! potential is evaluated at the step midpoint, giving global order 2.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fft::{fft_nd, Direction};
use crate::field::{Field, GridSpec, MultiIndex, State};
use crate::functionals::{
    self, e51, energy_x1, energy_x2, energy_yk, identity_terms_43, identity_terms_51,
};
use crate::norms::{lp_norm_samples, sobolev_norm};
use crate::num::Complex;
use crate::potential::PotentialSpec;
use crate::series::NormSeries;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub cubic_enabled: bool,
}

impl IntegratorConfig {
    pub fn new(dt: f64, cubic_enabled: bool) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::BadParameter {
                what: "time step must be positive and finite",
            });
        }
        Ok(IntegratorConfig { dt, cubic_enabled })
    }

    /// The free flow is exact, so the step bound is a splitting-accuracy
    /// safety margin, not a stability limit.
    pub fn validate_for(&self, grid: &GridSpec) -> Result<()> {
        if self.dt > 0.5 * grid.spacing() {
            return Err(Error::BadParameter {
                what: "time step exceeds half the grid spacing",
            });
        }
        Ok(())
    }
}

/// Default step: min(0.25·Δx, τ/20) for a window hint τ.
pub fn default_dt(grid: &GridSpec, tau_hint: f64) -> f64 {
    let a = 0.25 * grid.spacing();
    let b = tau_hint / 20.0;
    a.min(b)
}

/// Cached per-run tables: half-step rotation coefficients and the potential's
/// spatial profile (its temporal factor is applied per step).
struct Workspace {
    grid: GridSpec,
    dims: Vec<usize>,
    /// (cos, sin/ξ, -ξ·sin) at angle (dt/2)·|ξ| per mode.
    half_rot: Vec<(f64, f64, f64)>,
    /// A · bump(|x|/ρ) per grid point (zero when the potential is off).
    profile: Vec<f64>,
    has_potential: bool,
}

impl Workspace {
    fn new(grid: GridSpec, spec: &PotentialSpec, dt: f64) -> Result<Self> {
        let freqs = grid.freq_table();
        let half = 0.5 * dt;
        let half_rot = (0..grid.points())
            .map(|idx| {
                let xi = libm::sqrt(grid.freq_norm_sqr(idx, &freqs));
                if xi == 0.0 {
                    (1.0, half, 0.0)
                } else {
                    let c = libm::cos(half * xi);
                    let s = libm::sin(half * xi);
                    (c, s / xi, -xi * s)
                }
            })
            .collect();
        let (profile, has_potential) = if spec.is_zero() {
            (vec![0.0; grid.points()], false)
        } else {
            let mut p = spec.spatial_profile(&grid)?;
            for v in p.iter_mut() {
                *v *= spec.amplitude;
            }
            (p, true)
        };
        Ok(Workspace {
            grid,
            dims: grid.dims(),
            half_rot,
            profile,
            has_potential,
        })
    }

    fn free_half(&self, u: &mut [Complex], ut: &mut [Complex]) {
        for ((zu, zt), &(c, s_over_xi, neg_xi_s)) in
            u.iter_mut().zip(ut.iter_mut()).zip(&self.half_rot)
        {
            let a = zu.scale(c) + zt.scale(s_over_xi);
            let b = zu.scale(neg_xi_s) + zt.scale(c);
            *zu = a;
            *zt = b;
        }
    }

    /// û_t ← û_t - dt (q(t_mid)·u + u³)^ with the cubic dealiased.
    fn kick(
        &self,
        u: &[Complex],
        ut: &mut [Complex],
        t_mid: f64,
        dt: f64,
        spec: &PotentialSpec,
        cubic: bool,
    ) {
        let npts = self.grid.points();
        let mut force = vec![Complex::ZERO; npts];

        if cubic {
            let field = Field::from_coeffs(self.grid, u.to_vec());
            let cube = field.cube_dealiased();
            force.copy_from_slice(cube.coeffs());
        }

        if self.has_potential {
            let g = spec.temporal(t_mid);
            let mut buf = Field::from_coeffs(self.grid, u.to_vec()).to_physical();
            for (v, &p) in buf.iter_mut().zip(&self.profile) {
                *v *= p * g;
            }
            let mut qu: Vec<Complex> = buf.iter().map(|&v| Complex::from(v)).collect();
            fft_nd(&mut qu, &self.dims, Direction::Forward);
            for (f, z) in force.iter_mut().zip(&qu) {
                *f += *z;
            }
        }

        for (zt, f) in ut.iter_mut().zip(&force) {
            *zt -= f.scale(dt);
        }
    }

    fn step(
        &self,
        u: &mut [Complex],
        ut: &mut [Complex],
        t: f64,
        dt: f64,
        spec: &PotentialSpec,
        cubic: bool,
    ) {
        self.free_half(u, ut);
        self.kick(u, ut, t + 0.5 * dt, dt, spec, cubic);
        self.free_half(u, ut);
    }
}

/// One Strang step. Convenience wrapper building the cached tables; the
/// marching loop in `evolve` reuses them across steps.
pub fn strang_step(state: &State, spec: &PotentialSpec, cfg: &IntegratorConfig) -> Result<State> {
    cfg.validate_for(&state.grid())?;
    let ws = Workspace::new(state.grid(), spec, cfg.dt)?;
    let mut u = state.u.coeffs().to_vec();
    let mut ut = state.ut.coeffs().to_vec();
    ws.step(&mut u, &mut ut, state.t, cfg.dt, spec, cfg.cubic_enabled);
    Ok(State::new(
        Field::from_coeffs(state.grid(), u),
        Field::from_coeffs(state.grid(), ut),
        state.t + cfg.dt,
    ))
}

/// Which quantities to record at sample instants.
#[derive(Clone, Debug)]
pub struct SampleSpec {
    pub k_list: Vec<u32>,
    /// Record X₂, the identity terms, and the rolling residual columns.
    pub identities: bool,
    /// Multi-indices for the order-α balance columns.
    pub alphas: Vec<MultiIndex>,
    /// Record ‖u‖_{L^r} for Strichartz windows.
    pub lr_exponent: Option<f64>,
}

impl SampleSpec {
    pub fn norms_only(k_list: Vec<u32>) -> Self {
        SampleSpec {
            k_list,
            identities: false,
            alphas: Vec::new(),
            lr_exponent: None,
        }
    }
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            k_list: vec![1, 2],
            identities: true,
            alphas: vec![MultiIndex::axis(0, 1), MultiIndex::axis(0, 2)],
            lr_exponent: None,
        }
    }
}

/// Column names of the series produced by `evolve` (time is separate).
pub fn column_names(sample: &SampleSpec, dim: usize) -> Vec<String> {
    use alloc::format;
    let mut names = Vec::new();
    for k in &sample.k_list {
        names.push(format!("H{k}"));
    }
    names.push("X1".into());
    for k in &sample.k_list {
        names.push(format!("Y{k}"));
    }
    if sample.identities {
        names.push("X2".into());
        names.push("I1".into());
        names.push("J1".into());
        names.push("J2".into());
        names.push("res43".into());
        for alpha in &sample.alphas {
            let l = alpha.label(dim);
            names.push(format!("K1_{l}"));
            names.push(format!("K2_{l}"));
            names.push(format!("E51_{l}"));
            names.push(format!("res51_{l}"));
        }
    }
    if sample.lr_exponent.is_some() {
        names.push("Lr".into());
    }
    names
}

/// March to `t_end`, recording a row every `sample_every` steps (and at both
/// endpoints). Returns the recorded series.
pub fn evolve(
    state: &State,
    spec: &PotentialSpec,
    cfg: &IntegratorConfig,
    t_end: f64,
    sample_every: usize,
    sample: &SampleSpec,
) -> Result<NormSeries> {
    evolve_observed(state, spec, cfg, t_end, sample_every, sample, |_, _, _| {
        true
    })
}

/// As `evolve`, also handing every sampled state and row to the observer
/// (streaming CSV writers and checkpointers hook in here). The observer
/// returns `false` to stop the march early; the series so far is returned.
pub fn evolve_observed(
    state: &State,
    spec: &PotentialSpec,
    cfg: &IntegratorConfig,
    t_end: f64,
    sample_every: usize,
    sample: &SampleSpec,
    mut observer: impl FnMut(&State, f64, &[f64]) -> bool,
) -> Result<NormSeries> {
    if !(t_end > state.t) {
        return Err(Error::BadParameter {
            what: "evolve horizon must exceed the state time",
        });
    }
    cfg.validate_for(&state.grid())?;
    let sample_every = sample_every.max(1);
    let grid = state.grid();
    let ws = Workspace::new(grid, spec, cfg.dt)?;

    let n_steps = libm::round((t_end - state.t) / cfg.dt) as usize;
    let n_steps = n_steps.max(1);
    let t0 = state.t;

    let mut series = NormSeries::new(column_names(sample, grid.dim()));
    let mut recorder = Recorder::new(sample, spec, sample_every as f64 * cfg.dt);

    let mut u = state.u.coeffs().to_vec();
    let mut ut = state.ut.coeffs().to_vec();

    let record = |step: usize,
                  u: &[Complex],
                  ut: &[Complex],
                  series: &mut NormSeries,
                  recorder: &mut Recorder,
                  observer: &mut dyn FnMut(&State, f64, &[f64]) -> bool|
     -> Result<bool> {
        let t = t0 + step as f64 * cfg.dt;
        let st = State::new(
            Field::from_coeffs(grid, u.to_vec()),
            Field::from_coeffs(grid, ut.to_vec()),
            t,
        );
        if !st.is_finite() {
            return Err(Error::BlowUp {
                t: t0 + step.saturating_sub(1) as f64 * cfg.dt,
            });
        }
        let row = recorder.row(&st)?;
        series.push_row(t, &row);
        Ok(observer(&st, t, &row))
    };

    if !record(0, &u, &ut, &mut series, &mut recorder, &mut observer)? {
        return Ok(series);
    }
    for step in 1..=n_steps {
        let t = t0 + (step - 1) as f64 * cfg.dt;
        ws.step(&mut u, &mut ut, t, cfg.dt, spec, cfg.cubic_enabled);
        if (step % sample_every == 0 || step == n_steps)
            && !record(step, &u, &ut, &mut series, &mut recorder, &mut observer)?
        {
            break;
        }
    }
    Ok(series)
}

/// Builds sample rows and maintains the rolling three-sample residuals.
struct Recorder<'a> {
    sample: &'a SampleSpec,
    spec: &'a PotentialSpec,
    sample_dt: f64,
    x2_window: Vec<f64>,
    rhs43_window: Vec<f64>,
    e51_windows: Vec<Vec<f64>>,
    rhs51_windows: Vec<Vec<f64>>,
}

impl<'a> Recorder<'a> {
    fn new(sample: &'a SampleSpec, spec: &'a PotentialSpec, sample_dt: f64) -> Self {
        Recorder {
            sample,
            spec,
            sample_dt,
            x2_window: Vec::new(),
            rhs43_window: Vec::new(),
            e51_windows: vec![Vec::new(); sample.alphas.len()],
            rhs51_windows: vec![Vec::new(); sample.alphas.len()],
        }
    }

    fn row(&mut self, st: &State) -> Result<Vec<f64>> {
        let mut row = Vec::new();
        for &k in &self.sample.k_list {
            row.push(sobolev_norm(&st.u, k as f64));
        }
        row.push(energy_x1(st, self.spec)?);
        for &k in &self.sample.k_list {
            row.push(energy_yk(st, k));
        }
        if self.sample.identities {
            let x2 = energy_x2(st, self.spec)?;
            let (i1, j1, j2) = identity_terms_43(st, self.spec)?;
            push_window(&mut self.x2_window, x2);
            push_window(&mut self.rhs43_window, i1 + j1 + j2);
            row.push(x2);
            row.push(i1);
            row.push(j1);
            row.push(j2);
            row.push(rolling_residual(
                &self.x2_window,
                &self.rhs43_window,
                self.sample_dt,
            ));
            for (ai, alpha) in self.sample.alphas.iter().enumerate() {
                let (k1, k2) = identity_terms_51(st, self.spec, alpha)?;
                let e = e51(st, alpha);
                push_window(&mut self.e51_windows[ai], e);
                push_window(&mut self.rhs51_windows[ai], k1 + k2);
                row.push(k1);
                row.push(k2);
                row.push(e);
                row.push(rolling_residual(
                    &self.e51_windows[ai],
                    &self.rhs51_windows[ai],
                    self.sample_dt,
                ));
            }
        }
        if let Some(r) = self.sample.lr_exponent {
            row.push(lp_norm_samples(&st.u.to_physical(), st.grid(), r)?);
        }
        Ok(row)
    }
}

fn push_window(window: &mut Vec<f64>, v: f64) {
    if window.len() == 3 {
        window.remove(0);
    }
    window.push(v);
}

/// Residual over the trailing three samples; NaN until enough history exists.
fn rolling_residual(lhs: &[f64], rhs: &[f64], dt: f64) -> f64 {
    if lhs.len() < 3 {
        f64::NAN
    } else {
        functionals::residual_43_from_scalars(lhs, rhs, dt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::hcal_norm;
    use crate::presets;
    use crate::propagator::free_step;
    use crate::rng::Rng;

    fn grid1d(n: usize, l: f64) -> GridSpec {
        GridSpec::new(1, n, l).unwrap()
    }

    #[test]
    fn splitting_degenerates_to_free_flow() {
        // q off, cubic off → exactly the free step
        let g = grid1d(64, 4.0);
        let st = presets::gaussian_bump(g, 1.0, 0.6);
        let cfg = IntegratorConfig::new(0.01, false).unwrap();
        let stepped = strang_step(&st, &PotentialSpec::disabled(), &cfg).unwrap();
        let exact = free_step(&st, 0.01);
        assert!(hcal_norm(&stepped.sub(&exact)) < 1e-13 * hcal_norm(&st));
    }

    #[test]
    fn zero_state_stays_zero() {
        let g = grid1d(32, 2.0);
        let cfg = IntegratorConfig::new(0.01, true).unwrap();
        let spec = PotentialSpec::new(1.0, 1.0, 1.0, true).unwrap();
        let st = strang_step(&State::zero(g), &spec, &cfg).unwrap();
        assert_eq!(hcal_norm(&st), 0.0);
    }

    #[test]
    fn config_validation() {
        assert!(IntegratorConfig::new(0.0, true).is_err());
        let g = grid1d(8, 0.1); // spacing 0.025
        let cfg = IntegratorConfig::new(0.05, true).unwrap();
        assert!(cfg.validate_for(&g).is_err());
    }

    #[test]
    fn second_order_convergence() {
        // endpoint error against a fine reference scales like dt²
        let g = grid1d(64, 4.0);
        let st = presets::gaussian_bump(g, 0.8, 0.6);
        let spec = PotentialSpec::new(1.0, 1.5, 2.0, true).unwrap();
        let t_end = 0.5;
        let run = |dt: f64| {
            let cfg = IntegratorConfig::new(dt, true).unwrap();
            let mut s = st.clone();
            let steps = libm::round(t_end / dt) as usize;
            for _ in 0..steps {
                s = strang_step(&s, &spec, &cfg).unwrap();
            }
            s
        };
        let reference = run(1.25e-4);
        let err = |dt: f64| hcal_norm(&run(dt).sub(&reference));
        let e1 = err(4e-3);
        let e2 = err(2e-3);
        let ratio = e1 / e2;
        assert!(
            (3.5..=4.5).contains(&ratio),
            "order-2 ratio out of range: {ratio} (e1={e1}, e2={e2})"
        );
    }

    #[test]
    fn linear_energy_norm_constant() {
        // q = 0, cubic off: homogeneous energy exactly conserved
        let g = grid1d(64, 3.0);
        let mut rng = Rng::seed_from(71);
        let st = State::new(
            Field::random_band_limited(g, 0.6, 1.0, &mut rng),
            Field::random_band_limited(g, 0.6, 0.5, &mut rng),
            0.0,
        );
        let cfg = IntegratorConfig::new(5e-3, false).unwrap();
        let energy = |s: &State| {
            let grad = crate::norms::l2_norm_spectral(&s.u.derivative(0, 1));
            let vel = crate::norms::l2_norm_spectral(&s.ut);
            libm::sqrt(grad * grad + vel * vel)
        };
        let e0 = energy(&st);
        let mut s = st;
        for _ in 0..200 {
            s = strang_step(&s, &PotentialSpec::disabled(), &cfg).unwrap();
        }
        assert!((energy(&s) - e0).abs() <= 1e-10 * e0);
    }

    #[test]
    fn time_reversibility_static_q_cubic_on() {
        let g = grid1d(64, 4.0);
        let st = presets::gaussian_bump(g, 0.7, 0.7);
        let spec = PotentialSpec::new(1.0, 1.5, 0.0, true).unwrap();
        let dt = 2e-3;
        let fwd = IntegratorConfig::new(dt, true).unwrap();
        let mut s = st.clone();
        for _ in 0..100 {
            s = strang_step(&s, &spec, &fwd).unwrap();
        }
        // march back with negated dt (skip constructor: reverse step)
        let ws = Workspace::new(g, &spec, -dt).unwrap();
        let mut u = s.u.coeffs().to_vec();
        let mut ut = s.ut.coeffs().to_vec();
        let mut t = s.t;
        for _ in 0..100 {
            ws.step(&mut u, &mut ut, t, -dt, &spec, true);
            t -= dt;
        }
        let back = State::new(Field::from_coeffs(g, u), Field::from_coeffs(g, ut), t);
        let rel = hcal_norm(&back.sub(&st)) / hcal_norm(&st);
        assert!(rel < 1e-9, "reversal defect {rel}");
    }

    #[test]
    fn evolve_records_expected_columns() {
        let g = grid1d(32, 2.0);
        let st = presets::single_mode(g, 1, 0.2);
        let spec = PotentialSpec::new(0.5, 1.0, 1.0, true).unwrap();
        let cfg = IntegratorConfig::new(5e-3, true).unwrap();
        let sample = SampleSpec::default();
        let series = evolve(&st, &spec, &cfg, 0.1, 5, &sample).unwrap();
        assert!(series.len() >= 4);
        for name in [
            "H1", "H2", "X1", "X2", "Y1", "Y2", "I1", "J1", "J2", "res43",
        ] {
            assert!(series.column(name).is_some(), "missing column {name}");
        }
        // residual column defined from the third sample on
        let res = series.column("res43").unwrap();
        assert!(res[0].is_nan());
        assert!(res[1].is_nan());
        assert!(res[2].is_finite());
    }

    #[test]
    fn evolve_zero_state_all_zero_columns() {
        let g = grid1d(32, 2.0);
        let spec = PotentialSpec::new(0.5, 1.0, 1.0, true).unwrap();
        let cfg = IntegratorConfig::new(5e-3, true).unwrap();
        let series = evolve(
            &State::zero(g),
            &spec,
            &cfg,
            0.05,
            2,
            &SampleSpec::default(),
        )
        .unwrap();
        for name in ["H1", "X1", "X2"] {
            assert!(series.column(name).unwrap().iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn defocusing_long_run_stays_finite() {
        let g = grid1d(64, 4.0);
        let st = presets::gaussian_bump(g, 1.0, 0.6);
        let spec = PotentialSpec::new(1.0, 1.5, 2.0, true).unwrap();
        let cfg = IntegratorConfig::new(0.02, true).unwrap();
        let series = evolve(
            &st,
            &spec,
            &cfg,
            100.0,
            500,
            &SampleSpec::norms_only(vec![1]),
        )
        .unwrap();
        let h1 = series.column("H1").unwrap();
        assert!(h1.iter().all(|v| v.is_finite()));
    }
}

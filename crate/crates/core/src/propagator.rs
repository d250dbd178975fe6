//! Exact free-wave propagator, the norm-dependent step rule, and the Picard
//! iteration solving the cubic problem window by window via its Duhamel form.
//!
//! One outer iterate freezes the cubic source at the previous iterate and
//! solves the linear-in-q problem; the q-coupling inside the Duhamel integral
//! is resolved by an inner fixed point, which contracts once the window is
//! short enough. Windows are chained with a 2/3 overlap to continue in time.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fft::{fft_nd, Direction};
use crate::field::{Field, GridSpec, State};
use crate::gauss::gauss_legendre_on;
use crate::norms::hcal_norm;
use crate::num::Complex;
use crate::potential::PotentialSpec;

/// Exact propagator of the free wave equation, diagonal in Fourier space:
/// per mode ξ ≠ 0 a rotation with angle dt·|ξ|; the zero mode drifts
/// linearly. Exactly reversible and energy-preserving up to round-off.
pub fn free_step(state: &State, dt: f64) -> State {
    let grid = state.grid();
    let freqs = grid.freq_table();
    let mut u = state.u.coeffs().to_vec();
    let mut ut = state.ut.coeffs().to_vec();
    for idx in 0..u.len() {
        let xi = libm::sqrt(grid.freq_norm_sqr(idx, &freqs));
        let (a, b) = rotate_mode(u[idx], ut[idx], xi, dt);
        u[idx] = a;
        ut[idx] = b;
    }
    State::new(
        Field::from_coeffs(grid, u),
        Field::from_coeffs(grid, ut),
        state.t + dt,
    )
}

#[inline]
fn rotate_mode(u: Complex, ut: Complex, xi: f64, dt: f64) -> (Complex, Complex) {
    if xi == 0.0 {
        (u + ut.scale(dt), ut)
    } else {
        let c = libm::cos(dt * xi);
        let s = libm::sin(dt * xi);
        (
            u.scale(c) + ut.scale(s / xi),
            u.scale(-xi * s) + ut.scale(c),
        )
    }
}

/// Action of the free propagator on an impulse pair (0, w).
#[inline]
fn propagate_impulse(w: Complex, xi: f64, dt: f64) -> (Complex, Complex) {
    if xi == 0.0 {
        (w.scale(dt), w)
    } else {
        (
            w.scale(libm::sin(dt * xi) / xi),
            w.scale(libm::cos(dt * xi)),
        )
    }
}

/// Step rule τ = c (1 + ‖f‖_ℋ)^{-γ}; c is capped at 1 so that τ < 1 always.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepRule {
    pub c: f64,
    pub gamma: f64,
}

impl StepRule {
    pub fn new(c: f64, gamma: f64) -> Result<Self> {
        if !(c > 0.0 && c <= 1.0) {
            return Err(Error::BadParameter {
                what: "step-rule constant must lie in (0, 1]",
            });
        }
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::BadParameter {
                what: "step-rule exponent must be positive",
            });
        }
        Ok(StepRule { c, gamma })
    }
}

/// Existence-window length for the given data.
pub fn step_size(state: &State, rule: &StepRule) -> f64 {
    rule.c * libm::pow(1.0 + hcal_norm(state), -rule.gamma)
}

#[derive(Clone, Copy, Debug)]
pub struct PicardConfig {
    /// Gauss-Legendre nodes per window for the Duhamel integral.
    pub n_quad: usize,
    /// Outer tolerance on the sup-in-time ℋ distance of iterates.
    pub tol: f64,
    pub max_iter: usize,
    /// Inner fixed point resolving the q-coupling.
    pub inner_tol: f64,
    pub inner_iters: usize,
    /// Toggle for the cubic source (off reproduces the linear equation).
    pub cubic_enabled: bool,
}

impl Default for PicardConfig {
    fn default() -> Self {
        PicardConfig {
            n_quad: 8,
            tol: 1e-10,
            max_iter: 30,
            inner_tol: 1e-12,
            inner_iters: 20,
            cubic_enabled: true,
        }
    }
}

/// Convergence record of one Picard window.
#[derive(Clone, Debug)]
pub struct PicardReport {
    pub iterates_used: usize,
    /// sup-in-time ℋ distances ‖u_{n+1} - u_n‖ of successive iterates.
    pub successive_diffs: Vec<f64>,
    pub converged: bool,
    pub final_state: State,
}

impl PicardReport {
    /// Ratios of consecutive successive differences.
    pub fn contraction_ratios(&self) -> Vec<f64> {
        self.successive_diffs
            .windows(2)
            .filter(|w| w[0] > 0.0)
            .map(|w| w[1] / w[0])
            .collect()
    }
}

/// Solve on [init.t, init.t + tau] with the iteration seeded at u_0 ≡ 0.
pub fn picard_solve(
    init: &State,
    spec: &PotentialSpec,
    tau: f64,
    cfg: &PicardConfig,
) -> Result<PicardReport> {
    let (report, _) = picard_solve_at(init, spec, tau, cfg, &[])?;
    Ok(report)
}

/// As `picard_solve`, additionally evaluating the converged solution at the
/// given interior times (used by the continuation driver).
pub fn picard_solve_at(
    init: &State,
    spec: &PotentialSpec,
    tau: f64,
    cfg: &PicardConfig,
    eval_times: &[f64],
) -> Result<(PicardReport, Vec<State>)> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::BadParameter {
            what: "picard window length must lie in (0, 1)",
        });
    }
    let window = PicardWindow::new(init, spec, tau, cfg)?;
    window.run(eval_times)
}

/// Quadrature and interpolation data for one Duhamel target time.
struct TargetRule {
    t: f64,
    /// Mapped Gauss-Legendre times and weights on [s, t].
    times: Vec<f64>,
    weights: Vec<f64>,
    /// lagrange[q][g]: coefficient of node g when interpolating to times[q].
    lagrange: Vec<Vec<f64>>,
    /// q(times[q], ·) on the grid.
    qvals: Vec<Vec<f64>>,
}

struct PicardWindow<'a> {
    grid: GridSpec,
    freqs: Vec<f64>,
    s: f64,
    tau: f64,
    cfg: &'a PicardConfig,
    spec: PotentialSpec,
    /// Cached time-independent spatial profile of the potential (amplitude
    /// and temporal factor applied per quadrature time).
    profile: Vec<f64>,
    node_times: Vec<f64>,
    node_rules: Vec<TargetRule>,
    free_at_nodes: Vec<State>,
    init: State,
}

fn lagrange_coeffs(nodes: &[f64], t: f64) -> Vec<f64> {
    let n = nodes.len();
    let mut out = vec![1.0; n];
    for g in 0..n {
        for h in 0..n {
            if h != g {
                out[g] *= (t - nodes[h]) / (nodes[g] - nodes[h]);
            }
        }
    }
    out
}

impl<'a> PicardWindow<'a> {
    fn new(init: &State, spec: &PotentialSpec, tau: f64, cfg: &'a PicardConfig) -> Result<Self> {
        let grid = init.grid();
        let s = init.t;
        let (node_times, _) = gauss_legendre_on(cfg.n_quad, s, s + tau);

        let profile = if spec.is_zero() {
            vec![0.0; grid.points()]
        } else {
            spec.spatial_profile(&grid)?
        };

        let mut window = PicardWindow {
            grid,
            freqs: grid.freq_table(),
            s,
            tau,
            cfg,
            spec: *spec,
            profile,
            node_times,
            node_rules: Vec::new(),
            free_at_nodes: Vec::new(),
            init: init.clone(),
        };
        window.node_rules = window
            .node_times
            .iter()
            .map(|&t| window.make_rule(t))
            .collect();
        window.free_at_nodes = window
            .node_times
            .iter()
            .map(|&t| free_step(init, t - s))
            .collect();
        Ok(window)
    }

    fn q_at(&self, t: f64) -> Vec<f64> {
        let g = if self.spec.is_zero() {
            0.0
        } else {
            self.spec.amplitude * self.spec.temporal(t)
        };
        self.profile.iter().map(|&p| p * g).collect()
    }

    fn make_rule(&self, t: f64) -> TargetRule {
        let (times, weights) = gauss_legendre_on(self.cfg.n_quad, self.s, t);
        let lagrange = times
            .iter()
            .map(|&tq| lagrange_coeffs(&self.node_times, tq))
            .collect();
        let qvals = times.iter().map(|&tq| self.q_at(tq)).collect();
        TargetRule {
            t,
            times,
            weights,
            lagrange,
            qvals,
        }
    }

    /// Duhamel evaluation at one target given the inner iterate's physical u
    /// at the nodes and the frozen cubic source at the nodes.
    fn eval_target(
        &self,
        rule: &TargetRule,
        free: &State,
        u_phys_nodes: &[Vec<f64>],
        source_nodes: &[Vec<f64>],
    ) -> State {
        let npts = self.grid.points();
        let mut acc_u = free.u.coeffs().to_vec();
        let mut acc_ut = free.ut.coeffs().to_vec();
        let mut integrand = vec![Complex::ZERO; npts];
        let mut phys = vec![0.0f64; npts];

        for q in 0..rule.times.len() {
            let lg = &rule.lagrange[q];
            for v in phys.iter_mut() {
                *v = 0.0;
            }
            for (g, &coeff) in lg.iter().enumerate() {
                if coeff == 0.0 {
                    continue;
                }
                let up = &u_phys_nodes[g];
                let sp = &source_nodes[g];
                for i in 0..npts {
                    phys[i] += coeff * (sp[i] + up[i] * rule.qvals[q][i]);
                }
            }
            for (z, &v) in integrand.iter_mut().zip(phys.iter()) {
                *z = Complex::from(v);
            }
            fft_nd(&mut integrand, &self.grid.dims(), Direction::Forward);

            // acc -= w_q · U0(t - τ_q)(0, q·u + u_n³)
            let dt = rule.t - rule.times[q];
            let w = rule.weights[q];
            for idx in 0..npts {
                let xi = libm::sqrt(self.grid.freq_norm_sqr(idx, &self.freqs));
                let (iu, iut) = propagate_impulse(integrand[idx], xi, dt);
                acc_u[idx] -= iu.scale(w);
                acc_ut[idx] -= iut.scale(w);
            }
        }

        State::new(
            Field::from_coeffs(self.grid, acc_u),
            Field::from_coeffs(self.grid, acc_ut),
            rule.t,
        )
    }

    fn cubic_source(&self, states: &[State]) -> Vec<Vec<f64>> {
        if self.cfg.cubic_enabled {
            states
                .iter()
                .map(|st| st.u.cube_dealiased().to_physical())
                .collect()
        } else {
            states
                .iter()
                .map(|_| vec![0.0; self.grid.points()])
                .collect()
        }
    }

    fn run(self, eval_times: &[f64]) -> Result<(PicardReport, Vec<State>)> {
        let g = self.cfg.n_quad;

        // u_0 ≡ 0 at the nodes
        let mut outer: Vec<State> = self
            .node_times
            .iter()
            .map(|&t| State {
                u: Field::zero(self.grid),
                ut: Field::zero(self.grid),
                t,
            })
            .collect();

        let mut diffs = Vec::new();
        let mut converged = false;
        let mut iterates = 0;

        for _n in 0..self.cfg.max_iter {
            iterates += 1;
            let source = self.cubic_source(&outer);

            // inner fixed point on the q-coupling, seeded with the free flow
            let mut inner: Vec<State> = self.free_at_nodes.clone();
            let mut inner_phys: Vec<Vec<f64>> = inner.iter().map(|st| st.u.to_physical()).collect();
            for _m in 0..self.cfg.inner_iters {
                let mut next = Vec::with_capacity(g);
                for j in 0..g {
                    next.push(self.eval_target(
                        &self.node_rules[j],
                        &self.free_at_nodes[j],
                        &inner_phys,
                        &source,
                    ));
                }
                let delta = inner
                    .iter()
                    .zip(&next)
                    .map(|(a, b)| hcal_norm(&a.sub(b)))
                    .fold(0.0f64, f64::max);
                inner = next;
                inner_phys = inner.iter().map(|st| st.u.to_physical()).collect();
                if delta <= self.cfg.inner_tol {
                    break;
                }
            }

            let diff = outer
                .iter()
                .zip(&inner)
                .map(|(a, b)| hcal_norm(&a.sub(b)))
                .fold(0.0f64, f64::max);
            outer = inner;
            diffs.push(diff);
            if diff <= self.cfg.tol {
                converged = true;
                break;
            }
        }

        if !converged {
            return Err(Error::PicardDiverged { window: 0, diffs });
        }

        // evaluate the converged solution at the endpoint and extra times
        let outer_phys: Vec<Vec<f64>> = outer.iter().map(|st| st.u.to_physical()).collect();
        let source = self.cubic_source(&outer);
        let eval_at = |t: f64| -> State {
            if t == self.s {
                return self.init.clone();
            }
            let rule = self.make_rule(t);
            let free = free_step(&self.init, t - self.s);
            self.eval_target(&rule, &free, &outer_phys, &source)
        };

        let final_state = eval_at(self.s + self.tau);
        let extras: Vec<State> = eval_times.iter().map(|&t| eval_at(t)).collect();

        Ok((
            PicardReport {
                iterates_used: iterates,
                successive_diffs: diffs,
                converged,
                final_state,
            },
            extras,
        ))
    }
}

/// Chain Picard windows until `t_end`, restarting each window at the overlap
/// fraction (the continuation choice is 2/3) of the previous window length.
/// Returns the states at all window boundaries; the last lands on `t_end`.
pub fn continuation_run(
    init: &State,
    spec: &PotentialSpec,
    rule: &StepRule,
    t_end: f64,
    overlap: f64,
    cfg: &PicardConfig,
) -> Result<Vec<State>> {
    if !(overlap > 0.0 && overlap <= 1.0) {
        return Err(Error::BadParameter {
            what: "continuation overlap must lie in (0, 1]",
        });
    }
    if !(t_end > init.t) {
        return Err(Error::BadParameter {
            what: "continuation horizon must exceed the initial time",
        });
    }

    let mut out = Vec::new();
    let mut state = init.clone();
    let mut window_index = 0usize;
    loop {
        let tau = step_size(&state, rule);
        let remaining = t_end - state.t;
        if tau >= remaining {
            // final (possibly short) window ends exactly at t_end
            let (report, _) = picard_solve_at(&state, spec, remaining.min(tau), cfg, &[])
                .map_err(|e| tag_window(e, window_index))?;
            out.push(report.final_state);
            return Ok(out);
        }
        let restart_t = state.t + overlap * tau;
        let (_, extras) = picard_solve_at(&state, spec, tau, cfg, &[restart_t])
            .map_err(|e| tag_window(e, window_index))?;
        state = extras.into_iter().next().unwrap();
        out.push(state.clone());
        window_index += 1;
    }
}

fn tag_window(e: Error, window: usize) -> Error {
    match e {
        Error::PicardDiverged { diffs, .. } => Error::PicardDiverged { window, diffs },
        other => other,
    }
}

/// Bisect the step-rule constant c until the Picard contraction ratios drop
/// below 1/2 for every calibration datum, mirroring the smallness condition
/// of the local theory. Returns the largest passing c (times a 0.9 margin).
pub fn calibrate_step_rule(
    data: &[State],
    spec: &PotentialSpec,
    gamma: f64,
    cfg: &PicardConfig,
) -> Result<StepRule> {
    let passes = |c: f64| -> bool {
        data.iter().all(|st| {
            let rule = StepRule { c, gamma };
            let tau = step_size(st, &rule);
            match picard_solve(st, spec, tau, cfg) {
                Ok(report) => report
                    .contraction_ratios()
                    .iter()
                    .skip(1)
                    .all(|&r| r <= 0.5),
                Err(_) => false,
            }
        })
    };

    let mut lo = 1e-4;
    let mut hi = 1.0;
    if !passes(lo) {
        return Err(Error::Domain {
            what: "no contracting step constant found at the lower search bound",
        });
    }
    if passes(hi) {
        return StepRule::new(0.9 * hi, gamma);
    }
    for _ in 0..25 {
        let mid = 0.5 * (lo + hi);
        if passes(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    StepRule::new(0.9 * lo, gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::{l2_norm_spectral, sobolev_norm};
    use crate::presets;
    use crate::rng::Rng;

    fn grid1d(n: usize, l: f64) -> GridSpec {
        GridSpec::new(1, n, l).unwrap()
    }

    #[test]
    fn free_step_dt_zero_is_identity() {
        let g = grid1d(32, 2.0);
        let st = presets::gaussian_bump(g, 1.0, 0.5);
        let moved = free_step(&st, 0.0);
        assert!(hcal_norm(&st.sub(&moved)) < 1e-15);
    }

    #[test]
    fn free_step_zero_mode_drift() {
        // (c, d) constants → (c + dt d, d)
        let g = grid1d(16, 1.0);
        let c = 1.5;
        let d = -0.75;
        let st = State::new(
            Field::from_physical(g, &[c; 16]),
            Field::from_physical(g, &[d; 16]),
            0.0,
        );
        let dt = 0.3;
        let moved = free_step(&st, dt);
        let u = moved.u.to_physical();
        let ut = moved.ut.to_physical();
        for i in 0..16 {
            assert!((u[i] - (c + dt * d)).abs() < 1e-14);
            assert!((ut[i] - d).abs() < 1e-14);
        }
    }

    #[test]
    fn free_step_single_mode_closed_form() {
        // (A sin(πx/L), 0) → (A cos(dt π/L) sin(πx/L), -A (π/L) sin(dt π/L) sin(πx/L))
        let l = 2.0;
        let g = grid1d(64, l);
        let a = 1.25;
        let st = presets::single_mode(g, 1, a);
        let dt = 0.37;
        let xi = core::f64::consts::PI / l;
        let moved = free_step(&st, dt);
        let xs = g.coord_table();
        let u = moved.u.to_physical();
        let ut = moved.ut.to_physical();
        for (i, &x) in xs.iter().enumerate() {
            let s = libm::sin(xi * x);
            assert!((u[i] - a * libm::cos(dt * xi) * s).abs() < 1e-10);
            assert!((ut[i] + a * xi * libm::sin(dt * xi) * s).abs() < 1e-10);
        }
    }

    #[test]
    fn free_step_reversible_and_group_law() {
        let g = grid1d(64, 3.0);
        let mut rng = Rng::seed_from(31);
        for _ in 0..20 {
            let st = State::new(
                Field::random_band_limited(g, 0.8, 1.0, &mut rng),
                Field::random_band_limited(g, 0.8, 0.5, &mut rng),
                0.0,
            );
            let scale = hcal_norm(&st);
            let a = rng.uniform(-1.0, 1.0);
            let b = rng.uniform(-1.0, 1.0);

            let back = free_step(&free_step(&st, a), -a);
            assert!(hcal_norm(&st.sub(&back)) <= 1e-12 * scale);

            let composed = free_step(&free_step(&st, a), b);
            let direct = free_step(&st, a + b);
            assert!(hcal_norm(&composed.sub(&direct)) <= 1e-11 * scale);
        }
    }

    #[test]
    fn free_step_conserves_homogeneous_energy() {
        let g = grid1d(64, 2.0);
        let mut rng = Rng::seed_from(32);
        let st = State::new(
            Field::random_band_limited(g, 0.7, 1.0, &mut rng),
            Field::random_band_limited(g, 0.7, 1.0, &mut rng),
            0.0,
        );
        let energy = |s: &State| {
            let grad = s.u.derivative(0, 1);
            let a = l2_norm_spectral(&s.ut);
            let b = l2_norm_spectral(&grad);
            0.5 * (a * a + b * b)
        };
        let e0 = energy(&st);
        let moved = free_step(&st, 0.83);
        assert!((energy(&moved) - e0).abs() <= 1e-10 * e0);
    }

    #[test]
    fn step_size_arithmetic_and_monotonicity() {
        let rule = StepRule::new(0.5, 2.0).unwrap();
        let g = grid1d(16, 1.0);

        // zero state: τ = c
        let zero = State::zero(g);
        assert!((step_size(&zero, &rule) - 0.5).abs() < 1e-15);

        // ‖f‖_ℋ = 1 → τ = 0.5 · 2^{-2} = 0.125
        // constant velocity field with |c|(2L)^{1/2} = 1
        let c = 1.0 / libm::sqrt(2.0);
        let st = State::new(Field::zero(g), Field::from_physical(g, &[c; 16]), 0.0);
        assert!((hcal_norm(&st) - 1.0).abs() < 1e-12);
        assert!((step_size(&st, &rule) - 0.125).abs() < 1e-12);

        // monotone in the norm
        let st3 = State::new(Field::zero(g), Field::from_physical(g, &[3.0 * c; 16]), 0.0);
        assert!(step_size(&st3, &rule) < step_size(&st, &rule));
    }

    #[test]
    fn step_rule_validation() {
        assert!(StepRule::new(0.0, 2.0).is_err());
        assert!(StepRule::new(1.1, 2.0).is_err());
        assert!(StepRule::new(0.5, 0.0).is_err());
        assert!(StepRule::new(1.0, 2.0).is_ok());
    }

    #[test]
    fn picard_zero_data_zero_potential_converges_immediately() {
        let g = grid1d(16, 1.0);
        let init = State::zero(g);
        let report = picard_solve(
            &init,
            &PotentialSpec::disabled(),
            0.1,
            &PicardConfig::default(),
        )
        .unwrap();
        assert!(report.converged);
        assert_eq!(report.iterates_used, 1);
        assert!(hcal_norm(&report.final_state) < 1e-14);
    }

    #[test]
    fn picard_linear_free_matches_free_step() {
        // q = 0 and cubic off: the window solver must reproduce the free flow
        let g = grid1d(32, 2.0);
        let init = presets::single_mode(g, 2, 0.8);
        let cfg = PicardConfig {
            cubic_enabled: false,
            ..PicardConfig::default()
        };
        let tau = 0.25;
        let report = picard_solve(&init, &PotentialSpec::disabled(), tau, &cfg).unwrap();
        let exact = free_step(&init, tau);
        let err = hcal_norm(&report.final_state.sub(&exact));
        assert!(err <= 1e-8 * hcal_norm(&init), "err = {err}");
    }

    #[test]
    fn picard_rejects_bad_tau() {
        let g = grid1d(16, 1.0);
        let init = State::zero(g);
        assert!(picard_solve(
            &init,
            &PotentialSpec::disabled(),
            0.0,
            &PicardConfig::default()
        )
        .is_err());
        assert!(picard_solve(
            &init,
            &PotentialSpec::disabled(),
            1.0,
            &PicardConfig::default()
        )
        .is_err());
    }

    #[test]
    fn picard_reports_divergence_with_history() {
        // absurdly tight tolerance with a single outer iterate budget
        let g = grid1d(32, 2.0);
        let init = presets::gaussian_bump(g, 2.0, 0.5);
        let cfg = PicardConfig {
            max_iter: 1,
            tol: 1e-300,
            ..PicardConfig::default()
        };
        match picard_solve(&init, &PotentialSpec::disabled(), 0.1, &cfg) {
            Err(Error::PicardDiverged { diffs, .. }) => {
                assert_eq!(diffs.len(), 1);
                assert!(diffs[0] > 0.0);
            }
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn continuation_single_window_when_horizon_short() {
        let g = grid1d(32, 2.0);
        let init = presets::single_mode(g, 1, 0.1);
        let rule = StepRule::new(0.5, 2.0).unwrap();
        let states = continuation_run(
            &init,
            &PotentialSpec::disabled(),
            &rule,
            0.05,
            2.0 / 3.0,
            &PicardConfig::default(),
        )
        .unwrap();
        assert_eq!(states.len(), 1);
        assert!((states[0].t - 0.05).abs() < 1e-12);
    }

    #[test]
    fn continuation_linear_matches_free_flow() {
        let g = grid1d(32, 2.0);
        let init = presets::single_mode(g, 1, 0.5);
        let rule = StepRule::new(0.3, 2.0).unwrap();
        let cfg = PicardConfig {
            cubic_enabled: false,
            ..PicardConfig::default()
        };
        let t_end = 0.4;
        let states = continuation_run(
            &init,
            &PotentialSpec::disabled(),
            &rule,
            t_end,
            2.0 / 3.0,
            &cfg,
        )
        .unwrap();
        let last = states.last().unwrap();
        assert!((last.t - t_end).abs() < 1e-12);
        let exact = free_step(&init, t_end);
        let err = hcal_norm(&last.sub(&exact));
        assert!(err <= 1e-8 * hcal_norm(&init), "err = {err}");
    }

    #[test]
    fn continuation_window_count_bracket() {
        // constant norm (q = 0, linear): m windows with (3/2) t_end ≤ m τ ≤ (3/2)(t_end + 1)
        let g = grid1d(32, 2.0);
        let init = presets::single_mode(g, 1, 0.5);
        let rule = StepRule::new(0.3, 2.0).unwrap();
        let cfg = PicardConfig {
            cubic_enabled: false,
            ..PicardConfig::default()
        };
        let tau = step_size(&init, &rule);
        let t_end = 1.0_f64.min(0.9); // well beyond one window
        let states = continuation_run(
            &init,
            &PotentialSpec::disabled(),
            &rule,
            t_end,
            2.0 / 3.0,
            &cfg,
        )
        .unwrap();
        let m = states.len() as f64;
        assert!(1.5 * t_end <= m * tau + 1e-9, "m={m} tau={tau}");
        assert!(m * tau <= 1.5 * (t_end + 1.0) + 1e-9, "m={m} tau={tau}");
    }

    #[test]
    fn picard_interior_evaluation_consistent() {
        // evaluating at the window end via extras must match final_state
        let g = grid1d(32, 2.0);
        let init = presets::gaussian_bump(g, 0.5, 0.5);
        let spec = PotentialSpec::new(1.0, 1.0, 1.0, true).unwrap();
        let tau = 0.1;
        let (report, extras) =
            picard_solve_at(&init, &spec, tau, &PicardConfig::default(), &[tau]).unwrap();
        let d = hcal_norm(&report.final_state.sub(&extras[0]));
        assert!(d < 1e-12 * (1.0 + hcal_norm(&init)));
    }

    #[test]
    fn picard_h2_norm_stays_bounded_on_window() {
        let g = grid1d(64, 2.0);
        let init = presets::gaussian_bump(g, 0.8, 0.5);
        let spec = PotentialSpec::new(1.0, 1.0, 2.0, true).unwrap();
        let report = picard_solve(&init, &spec, 0.05, &PicardConfig::default()).unwrap();
        let before = sobolev_norm(&init.u, 2.0);
        let after = sobolev_norm(&report.final_state.u, 2.0);
        assert!(after < 4.0 * (1.0 + before));
    }
}

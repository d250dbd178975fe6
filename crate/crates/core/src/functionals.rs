//! Energy functionals, the balance identities they satisfy along solutions,
//! discrete space-time (Strichartz) norms, and the bilinear product-estimate
//! probe.
//!
//! Identity conventions (for the residual checks): with
//! `X₂(t) = ½ Σ_j ∫ ((∂_j u_t)² + |∇ ∂_j u|² + 3 u² (∂_j u)² + q (∂_j u)²)`,
//! the flow satisfies `d X₂/dt = I₁ + J₁ + J₂`; with
//! `E_α(t) = ½ ∫ (|∇ ∂^α u|² + |∂_t ∂^α u|²)`, it satisfies
//! `d E_α/dt = K₁ + K₂`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, GridSpec, MultiIndex, State};
use crate::gauss::simpson_uniform;
use crate::norms::{h_sp_norm, lp_norm, lp_norm_samples, sobolev_norm};
use crate::potential::PotentialSpec;

fn integrate(samples: &[f64], grid: GridSpec) -> f64 {
    samples.iter().sum::<f64>() * grid.cell_volume()
}

/// X₁ = ½ ∫ (u_t² + |∇u|² + q u² + ½ u⁴); the conserved energy when q is
/// static.
pub fn energy_x1(state: &State, spec: &PotentialSpec) -> Result<f64> {
    let grid = state.grid();
    let u = state.u.to_physical();
    let ut = state.ut.to_physical();
    let q = spec.eval_grid(state.t, &grid)?;
    let mut acc = vec_zero(grid.points());
    for axis in 0..grid.dim() {
        let g = state.u.derivative(axis, 1).to_physical();
        for (a, &v) in acc.iter_mut().zip(&g) {
            *a += v * v;
        }
    }
    for i in 0..grid.points() {
        let u2 = u[i] * u[i];
        acc[i] += ut[i] * ut[i] + q[i] * u2 + 0.5 * u2 * u2;
    }
    Ok(0.5 * integrate(&acc, grid))
}

/// X₂ = ½ Σ_j ∫ ((∂_j u_t)² + |∇ ∂_j u|² + 3 u² (∂_j u)² + q (∂_j u)²).
pub fn energy_x2(state: &State, spec: &PotentialSpec) -> Result<f64> {
    let grid = state.grid();
    let u = state.u.to_physical();
    let q = spec.eval_grid(state.t, &grid)?;
    let mut acc = vec_zero(grid.points());
    for j in 0..grid.dim() {
        let uj = state.u.derivative(j, 1);
        let uj_phys = uj.to_physical();
        let ujt = state.ut.derivative(j, 1).to_physical();
        for axis in 0..grid.dim() {
            let g = uj.derivative(axis, 1).to_physical();
            for (a, &v) in acc.iter_mut().zip(&g) {
                *a += v * v;
            }
        }
        for i in 0..grid.points() {
            let uj2 = uj_phys[i] * uj_phys[i];
            acc[i] += ujt[i] * ujt[i] + 3.0 * u[i] * u[i] * uj2 + q[i] * uj2;
        }
    }
    Ok(0.5 * integrate(&acc, grid))
}

/// Y_k = ‖u‖²_{H^k} + ‖u_t‖²_{H^{k-1}}.
pub fn energy_yk(state: &State, k: u32) -> f64 {
    assert!(k >= 1, "Y_k needs k >= 1");
    let a = sobolev_norm(&state.u, k as f64);
    let b = sobolev_norm(&state.ut, k as f64 - 1.0);
    a * a + b * b
}

/// The three source terms of the X₂ balance:
/// I₁ = -Σ_j ∫ (∂_j q) u (∂_j u_t), J₁ = 3 Σ_j ∫ u u_t (∂_j u)²,
/// J₂ = ½ Σ_j ∫ q_t (∂_j u)².
pub fn identity_terms_43(state: &State, spec: &PotentialSpec) -> Result<(f64, f64, f64)> {
    let grid = state.grid();
    let u = state.u.to_physical();
    let ut = state.ut.to_physical();
    let qt = spec.qt_grid(state.t, &grid)?;
    let mut i1 = 0.0;
    let mut j1 = 0.0;
    let mut j2 = 0.0;
    for j in 0..grid.dim() {
        let uj = state.u.derivative(j, 1).to_physical();
        let ujt = state.ut.derivative(j, 1).to_physical();
        let qj = spec.grad_grid(state.t, &grid, j)?;
        let mut acc_i1 = 0.0;
        let mut acc_j1 = 0.0;
        let mut acc_j2 = 0.0;
        for i in 0..grid.points() {
            let uj2 = uj[i] * uj[i];
            acc_i1 += qj[i] * u[i] * ujt[i];
            acc_j1 += u[i] * ut[i] * uj2;
            acc_j2 += qt[i] * uj2;
        }
        i1 -= acc_i1;
        j1 += 3.0 * acc_j1;
        j2 += 0.5 * acc_j2;
    }
    let w = grid.cell_volume();
    Ok((i1 * w, j1 * w, j2 * w))
}

/// Left side of the order-α balance: E_α = ½ ∫ (|∇ ∂^α u|² + |∂_t ∂^α u|²).
pub fn e51(state: &State, alpha: &MultiIndex) -> f64 {
    let grid = state.grid();
    let da = state.u.derivative_multi(alpha);
    let mut acc = 0.0;
    for axis in 0..grid.dim() {
        let g = crate::norms::l2_norm_spectral(&da.derivative(axis, 1));
        acc += g * g;
    }
    let v = crate::norms::l2_norm_spectral(&state.ut.derivative_multi(alpha));
    0.5 * (acc + v * v)
}

/// The two source terms of the order-α balance:
/// K₁ = -∫ ∂^α(q u) ∂^α u_t, K₂ = -∫ ∂^α(u³) ∂^α u_t,
/// with ∂^α applied spectrally to the (dealiased, for the cube) products.
pub fn identity_terms_51(
    state: &State,
    spec: &PotentialSpec,
    alpha: &MultiIndex,
) -> Result<(f64, f64)> {
    let grid = state.grid();
    let da_ut = state.ut.derivative_multi(alpha).to_physical();

    let k1 = if spec.is_zero() {
        0.0
    } else {
        let u = state.u.to_physical();
        let q = spec.eval_grid(state.t, &grid)?;
        let qu: Vec<f64> = q.iter().zip(&u).map(|(&a, &b)| a * b).collect();
        let da_qu = Field::from_physical(grid, &qu)
            .derivative_multi(alpha)
            .to_physical();
        -integrate(
            &da_qu
                .iter()
                .zip(&da_ut)
                .map(|(&a, &b)| a * b)
                .collect::<Vec<_>>(),
            grid,
        )
    };

    let da_cube = state
        .u
        .cube_dealiased()
        .derivative_multi(alpha)
        .to_physical();
    let k2 = -integrate(
        &da_cube
            .iter()
            .zip(&da_ut)
            .map(|(&a, &b)| a * b)
            .collect::<Vec<_>>(),
        grid,
    );

    Ok((k1, k2))
}

fn check_window(window: &[State]) -> Result<f64> {
    if window.len() < 3 {
        return Err(Error::TooFewSamples {
            got: window.len(),
            need: 3,
        });
    }
    let dt = window[1].t - window[0].t;
    for w in window.windows(2) {
        if ((w[1].t - w[0].t) - dt).abs() > 1e-9 * dt.max(1e-300) {
            return Err(Error::NonUniformSampling);
        }
    }
    Ok(dt)
}

/// Residual of the X₂ balance over a uniformly sampled window:
/// |X₂(end) - X₂(start) - ∫ (I₁+J₁+J₂) dt| / (1 + X₂(start)),
/// the time integral by composite Simpson on the samples.
pub fn verify_identity_43(window: &[State], spec: &PotentialSpec) -> Result<f64> {
    let dt = check_window(window)?;
    let x2_start = energy_x2(&window[0], spec)?;
    let x2_end = energy_x2(window.last().unwrap(), spec)?;
    let mut rhs = Vec::with_capacity(window.len());
    for st in window {
        let (i1, j1, j2) = identity_terms_43(st, spec)?;
        rhs.push(i1 + j1 + j2);
    }
    let integral = simpson_uniform(&rhs, dt);
    Ok((x2_end - x2_start - integral).abs() / (1.0 + x2_start))
}

/// Residual of the order-α balance over a uniformly sampled window:
/// |E_α(end) - E_α(start) - ∫ (K₁+K₂) dt| / (1 + E_α(start)).
pub fn verify_identity_51(
    window: &[State],
    spec: &PotentialSpec,
    alpha: &MultiIndex,
) -> Result<f64> {
    let dt = check_window(window)?;
    let start = e51(&window[0], alpha);
    let end = e51(window.last().unwrap(), alpha);
    let mut rhs = Vec::with_capacity(window.len());
    for st in window {
        let (k1, k2) = identity_terms_51(st, spec, alpha)?;
        rhs.push(k1 + k2);
    }
    let integral = simpson_uniform(&rhs, dt);
    Ok((end - start - integral).abs() / (1.0 + start))
}

/// Residual of the X₂ balance from already-recorded scalar samples (X₂ and
/// I₁+J₁+J₂ columns); shares the quadrature with `verify_identity_43`.
pub fn residual_43_from_scalars(x2: &[f64], rhs: &[f64], dt: f64) -> f64 {
    debug_assert_eq!(x2.len(), rhs.len());
    let integral = simpson_uniform(rhs, dt);
    (x2[x2.len() - 1] - x2[0] - integral).abs() / (1.0 + x2[0])
}

/// Admissible space-time exponent pair: 1/p + 3/r = 1/2, derived from the
/// single knob ε via r = (4+2ε)/ε. ε = 1 gives the endpoint (p = ∞, r = 6).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrichartzParams {
    pub epsilon: f64,
    pub r: f64,
    pub p: f64,
}

impl StrichartzParams {
    pub fn from_epsilon(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::Domain {
                what: "strichartz epsilon must lie in (0, 1]",
            });
        }
        let r = (4.0 + 2.0 * epsilon) / epsilon;
        let inv_p = 0.5 - 3.0 / r;
        let p = if inv_p <= 0.0 {
            f64::INFINITY
        } else {
            1.0 / inv_p
        };
        Ok(StrichartzParams { epsilon, r, p })
    }

    /// Validate a user-supplied pair against the admissibility relation.
    pub fn check_admissible(p: f64, r: f64) -> Result<()> {
        if !(p > 2.0) {
            return Err(Error::BadExponents { what: "need p > 2" });
        }
        let lhs = if p.is_infinite() { 0.0 } else { 1.0 / p } + 3.0 / r;
        if (lhs - 0.5).abs() > 1e-12 {
            return Err(Error::BadExponents {
                what: "1/p + 3/r = 1/2 fails",
            });
        }
        Ok(())
    }
}

/// ‖u‖_{L^p([s, s+τ], L^r_x)} over a uniformly sampled window: Simpson in
/// time on ‖u(t)‖_{L^r}^p; p = ∞ takes the sup over samples.
pub fn strichartz_norm(window: &[State], params: &StrichartzParams) -> Result<f64> {
    if window.len() < 16 {
        return Err(Error::TooFewSamples {
            got: window.len(),
            need: 16,
        });
    }
    let dt = check_window(window)?;
    let mut lr = Vec::with_capacity(window.len());
    for st in window {
        lr.push(lp_norm(&st.u, params.r)?);
    }
    strichartz_from_lr_samples(&lr, dt, params.p)
}

/// Same quadrature when the L^r column has already been recorded.
pub fn strichartz_from_lr_samples(lr: &[f64], dt: f64, p: f64) -> Result<f64> {
    if p.is_infinite() {
        return Ok(lr.iter().fold(0.0f64, |a, &v| a.max(v)));
    }
    if !(p > 2.0) {
        return Err(Error::BadExponents { what: "need p > 2" });
    }
    let powered: Vec<f64> = lr.iter().map(|&v| libm::pow(v, p)).collect();
    Ok(libm::pow(simpson_uniform(&powered, dt), 1.0 / p))
}

/// Hölder exponent tuple for the product estimate probe.
#[derive(Clone, Copy, Debug)]
pub struct ProductExponents {
    pub p: f64,
    pub q1: f64,
    pub q2: f64,
    pub r1: f64,
    pub r2: f64,
}

impl ProductExponents {
    fn validate(&self) -> Result<()> {
        let inv = |x: f64| if x.is_infinite() { 0.0 } else { 1.0 / x };
        for (x, name) in [
            (self.q1, "q1"),
            (self.q2, "q2"),
            (self.r1, "r1"),
            (self.r2, "r2"),
        ] {
            if !(x > 1.0) {
                let _ = name;
                return Err(Error::BadExponents {
                    what: "product exponents must exceed 1",
                });
            }
        }
        if (inv(self.p) - inv(self.q1) - inv(self.q2)).abs() > 1e-12
            || (inv(self.p) - inv(self.r1) - inv(self.r2)).abs() > 1e-12
        {
            return Err(Error::BadExponents {
                what: "1/p = 1/q1 + 1/q2 = 1/r1 + 1/r2 fails",
            });
        }
        Ok(())
    }
}

/// Ratio ‖fg‖_{H^{s,p}} / (‖f‖_{L^{q1}} ‖g‖_{H^{s,q2}} + ‖g‖_{L^{r1}} ‖f‖_{H^{s,r2}}),
/// i.e. the product estimate with the constant stripped. Bounded ratios over
/// a smooth random ensemble estimate that constant empirically.
pub fn product_estimate_probe(
    f: &Field,
    g: &Field,
    s: f64,
    exps: &ProductExponents,
) -> Result<f64> {
    exps.validate()?;
    assert_eq!(f.grid(), g.grid());
    let grid = f.grid();
    let fp = f.to_physical();
    let gp = g.to_physical();
    let prod: Vec<f64> = fp.iter().zip(&gp).map(|(&a, &b)| a * b).collect();
    let lhs = h_sp_norm(&Field::from_physical(grid, &prod), s, exps.p)?;
    let rhs = lp_norm_samples(&fp, grid, exps.q1)? * h_sp_norm(g, s, exps.q2)?
        + lp_norm_samples(&gp, grid, exps.r1)? * h_sp_norm(f, s, exps.r2)?;
    if rhs == 0.0 {
        return Ok(0.0);
    }
    Ok(lhs / rhs)
}

/// Everything the run CSV records at one sample instant.
#[derive(Clone, Debug)]
pub struct EnergyReport {
    pub t: f64,
    pub hk: Vec<(u32, f64)>,
    pub x1: f64,
    pub x2: f64,
    pub yk: Vec<(u32, f64)>,
    pub i1: f64,
    pub j1: f64,
    pub j2: f64,
    /// (α, K₁, K₂, E_α) per configured multi-index.
    pub k_terms: Vec<(MultiIndex, f64, f64, f64)>,
    /// Optional L^r norm of u for Strichartz windows.
    pub lr: Option<f64>,
}

/// Evaluate every functional of one state at once.
pub fn energy_report(
    state: &State,
    spec: &PotentialSpec,
    k_list: &[u32],
    alphas: &[MultiIndex],
    lr_exponent: Option<f64>,
) -> Result<EnergyReport> {
    let hk = k_list
        .iter()
        .map(|&k| (k, sobolev_norm(&state.u, k as f64)))
        .collect();
    let yk = k_list.iter().map(|&k| (k, energy_yk(state, k))).collect();
    let (i1, j1, j2) = identity_terms_43(state, spec)?;
    let mut k_terms = Vec::with_capacity(alphas.len());
    for alpha in alphas {
        let (k1, k2) = identity_terms_51(state, spec, alpha)?;
        k_terms.push((*alpha, k1, k2, e51(state, alpha)));
    }
    let lr = match lr_exponent {
        Some(r) => Some(lp_norm(&state.u, r)?),
        None => None,
    };
    Ok(EnergyReport {
        t: state.t,
        hk,
        x1: energy_x1(state, spec)?,
        x2: energy_x2(state, spec)?,
        yk,
        i1,
        j1,
        j2,
        k_terms,
        lr,
    })
}

fn vec_zero(n: usize) -> Vec<f64> {
    alloc::vec![0.0; n]
}

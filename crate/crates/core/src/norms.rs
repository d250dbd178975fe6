//! Sobolev norms via Fourier multipliers, Lebesgue norms via grid quadrature,
//! and the phase-space norm ‖u‖_{H¹} + ‖u_t‖_{L²} controlling local existence.

use crate::error::{Error, Result};
use crate::field::{Field, GridSpec, State};

/// H^k norm computed spectrally:
/// ( Σ_ξ (1+|ξ|²)^k |c(ξ)|² · (2L)^dim )^{1/2}.
///
/// Fractional k is allowed; the experiments only exercise integer k.
pub fn sobolev_norm(field: &Field, k: f64) -> f64 {
    let grid = field.grid();
    let freqs = grid.freq_table();
    let measure = grid.box_volume();
    let mut acc = 0.0;
    for (idx, z) in field.coeffs().iter().enumerate() {
        let xi2 = grid.freq_norm_sqr(idx, &freqs);
        acc += libm::pow(1.0 + xi2, k) * z.norm_sqr();
    }
    libm::sqrt(acc * measure)
}

/// L² norm via Parseval (no inverse transform).
pub fn l2_norm_spectral(field: &Field) -> f64 {
    let measure = field.grid().box_volume();
    let acc: f64 = field.coeffs().iter().map(|z| z.norm_sqr()).sum();
    libm::sqrt(acc * measure)
}

/// L^p norm by rectangle quadrature of the physical samples; `p = ∞` returns
/// the max of |samples|.
pub fn lp_norm(field: &Field, p: f64) -> Result<f64> {
    let phys = field.to_physical();
    lp_norm_samples(&phys, field.grid(), p)
}

/// Same quadrature on already-available physical samples.
pub fn lp_norm_samples(samples: &[f64], grid: GridSpec, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::Domain {
            what: "lp_norm requires p >= 1",
        });
    }
    if p.is_infinite() {
        return Ok(samples.iter().fold(0.0f64, |a, &v| a.max(v.abs())));
    }
    let w = grid.cell_volume();
    let acc: f64 = samples.iter().map(|&v| libm::pow(v.abs(), p)).sum();
    Ok(libm::pow(acc * w, 1.0 / p))
}

/// ‖u‖_{H¹} + ‖u_t‖_{L²}.
pub fn hcal_norm(state: &State) -> f64 {
    sobolev_norm(&state.u, 1.0) + l2_norm_spectral(&state.ut)
}

/// Product norm of the pair (u, u_t) in H^k × H^{k-1}.
pub fn pair_norm(state: &State, k: f64) -> f64 {
    let a = sobolev_norm(&state.u, k);
    let b = sobolev_norm(&state.ut, k - 1.0);
    libm::sqrt(a * a + b * b)
}

/// ‖(1-Δ)^{s/2} f‖_{L^p}: the H^{s,p} norm used by the product estimate.
pub fn h_sp_norm(field: &Field, s: f64, p: f64) -> Result<f64> {
    lp_norm(&field.bessel_multiplier(s), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;
    use alloc::vec;
    use alloc::vec::Vec;

    fn grid1d(n: usize, l: f64) -> GridSpec {
        GridSpec::new(1, n, l).unwrap()
    }

    #[test]
    fn zero_field_norms() {
        let g = grid1d(16, 2.0);
        let f = Field::zero(g);
        assert_eq!(sobolev_norm(&f, 3.0), 0.0);
        assert_eq!(lp_norm(&f, 4.0).unwrap(), 0.0);
        assert_eq!(hcal_norm(&State::zero(g)), 0.0);
    }

    #[test]
    fn constant_field_closed_forms() {
        // ‖c‖ = |c| (2L)^{dim/2} for any Sobolev order; L^2 matches; L^∞ = |c|
        let c = -3.5f64;
        for grid in [grid1d(16, 2.0), GridSpec::new(3, 8, 1.25).unwrap()] {
            let f = Field::from_physical(grid, &vec![c; grid.points()]);
            let expect = c.abs() * libm::sqrt(grid.box_volume());
            assert!((sobolev_norm(&f, 0.0) - expect).abs() < 1e-12 * expect);
            assert!((sobolev_norm(&f, 2.5) - expect).abs() < 1e-12 * expect);
            assert!((lp_norm(&f, 2.0).unwrap() - expect).abs() < 1e-12 * expect);
            assert!((lp_norm(&f, f64::INFINITY).unwrap() - c.abs()).abs() < 1e-13);
        }
    }

    #[test]
    fn single_mode_h2_closed_form() {
        // A sin(πm x/L), k = 2 → A (2L)^{1/2} 2^{-1/2} (1 + (πm/L)²)
        let l = 2.0;
        let g = grid1d(64, l);
        let xs = g.coord_table();
        let a = 1.7;
        let m = 3.0;
        let f = Field::from_physical(
            g,
            &xs.iter()
                .map(|&x| a * libm::sin(core::f64::consts::PI * m * x / l))
                .collect::<Vec<_>>(),
        );
        let xi = core::f64::consts::PI * m / l;
        let expect = a * libm::sqrt(2.0 * l) * (1.0 + xi * xi) / libm::sqrt(2.0);
        let got = sobolev_norm(&f, 2.0);
        assert!(
            (got - expect).abs() < 1e-11 * expect,
            "got {got} expect {expect}"
        );
    }

    #[test]
    fn parseval_physical_vs_spectral() {
        let mut rng = Rng::seed_from(21);
        for grid in [grid1d(64, 1.0), GridSpec::new(2, 16, 2.0).unwrap()] {
            let samples: Vec<f64> = (0..grid.points()).map(|_| rng.normal()).collect();
            let f = Field::from_physical(grid, &samples);
            let a = lp_norm(&f, 2.0).unwrap();
            let b = l2_norm_spectral(&f);
            assert!((a * a - b * b).abs() <= 1e-10 * b * b);
        }
    }

    #[test]
    fn sobolev_monotone_in_k() {
        let mut rng = Rng::seed_from(22);
        let g = grid1d(32, 1.5);
        let f = Field::random_band_limited(g, 0.8, 1.0, &mut rng);
        let mut prev = 0.0;
        for k in [0.0, 0.5, 1.0, 2.0, 3.0] {
            let v = sobolev_norm(&f, k);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn triangle_inequality_random_pairs() {
        let mut rng = Rng::seed_from(23);
        let g = grid1d(32, 1.0);
        for _ in 0..50 {
            let f = Field::random_band_limited(g, 0.9, rng.uniform(0.1, 2.0), &mut rng);
            let h = Field::random_band_limited(g, 0.9, rng.uniform(0.1, 2.0), &mut rng);
            let sum = f.add(&h);
            for k in [0.0, 1.0, 2.0] {
                assert!(sobolev_norm(&sum, k) <= sobolev_norm(&f, k) + sobolev_norm(&h, k) + 1e-12);
            }
            for p in [1.0, 2.0, 4.0, f64::INFINITY] {
                assert!(
                    lp_norm(&sum, p).unwrap()
                        <= lp_norm(&f, p).unwrap() + lp_norm(&h, p).unwrap() + 1e-12
                );
            }
        }
    }

    #[test]
    fn lp_rejects_p_below_one() {
        let g = grid1d(16, 1.0);
        let f = Field::zero(g);
        assert!(matches!(lp_norm(&f, 0.5), Err(Error::Domain { .. })));
    }

    #[test]
    fn hcal_is_compositional() {
        let mut rng = Rng::seed_from(24);
        let g = grid1d(32, 2.0);
        let u = Field::random_band_limited(g, 0.7, 1.3, &mut rng);
        let ut = Field::random_band_limited(g, 0.7, 0.8, &mut rng);
        let st = State::new(u.clone(), ut.clone(), 0.0);
        let direct = hcal_norm(&st);
        let composed = sobolev_norm(&u, 1.0) + l2_norm_spectral(&ut);
        assert!((direct - composed).abs() <= 1e-12 * composed);
    }

    #[test]
    fn hcal_velocity_only_constant() {
        // (0, c) → |c| (2L)^{dim/2}
        let g = grid1d(16, 3.0);
        let c = 2.25;
        let st = State::new(Field::zero(g), Field::from_physical(g, &[c; 16]), 0.0);
        let expect = c * libm::sqrt(g.box_volume());
        assert!((hcal_norm(&st) - expect).abs() < 1e-12 * expect);
    }
}

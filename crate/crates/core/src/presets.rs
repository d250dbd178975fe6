//! Named initial-data presets used by run configurations.

use alloc::vec::Vec;

use crate::field::{Field, GridSpec, State};

/// u(0) = A exp(-|x|²/(2w²)), u_t(0) = 0. The tail at the box edge is below
/// machine epsilon whenever L ≳ 6w, so the periodization is harmless.
pub fn gaussian_bump(grid: GridSpec, amplitude: f64, width: f64) -> State {
    let coords = grid.coord_table();
    let mut samples = Vec::with_capacity(grid.points());
    for idx in 0..grid.points() {
        let ids = grid.unravel(idx);
        let mut r2 = 0.0;
        for axis in 0..grid.dim() {
            let x = coords[ids[axis]];
            r2 += x * x;
        }
        samples.push(amplitude * libm::exp(-r2 / (2.0 * width * width)));
    }
    State::new(Field::from_physical(grid, &samples), Field::zero(grid), 0.0)
}

/// u(0) = A sin(π m x₁ / L) along the first axis, u_t(0) = 0.
pub fn single_mode(grid: GridSpec, mode: usize, amplitude: f64) -> State {
    let coords = grid.coord_table();
    let l = grid.half_width();
    let mut samples = Vec::with_capacity(grid.points());
    for idx in 0..grid.points() {
        let ids = grid.unravel(idx);
        let x = coords[ids[0]];
        samples.push(amplitude * libm::sin(core::f64::consts::PI * mode as f64 * x / l));
    }
    State::new(Field::from_physical(grid, &samples), Field::zero(grid), 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms;

    #[test]
    fn gaussian_is_smooth_on_grid() {
        let g = GridSpec::new(1, 128, 6.0).unwrap();
        let st = gaussian_bump(g, 1.0, 0.8);
        // spectral tail far below the peak: H^4 norm stays modest
        assert!(norms::sobolev_norm(&st.u, 4.0) < 100.0);
        assert!(st.u.conjugate_symmetry_defect() < 1e-12);
    }

    #[test]
    fn single_mode_hits_one_frequency() {
        let g = GridSpec::new(1, 32, 2.0).unwrap();
        let st = single_mode(g, 3, 2.0);
        let mut nonzero = 0;
        for z in st.u.coeffs() {
            if z.abs() > 1e-12 {
                nonzero += 1;
            }
        }
        assert_eq!(nonzero, 2); // ±m
    }
}

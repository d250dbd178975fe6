//! Periodic-grid scalar fields stored as spectral coefficients.
//!
//! The box is `[-L, L)^dim` with `n` points per axis (power of two). Mode
//! index `m` along an axis carries frequency `ξ = π m / L`, `m` running over
//! the symmetric range `-n/2 .. n/2-1`. A `Field` holds the complex
//! coefficients of a real-valued function, so conjugate symmetry holds up to
//! round-off and every physical-space array it produces is real.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fft::{fft_nd, Direction};
use crate::num::Complex;
use crate::rng::Rng;

pub const MAX_DIM: usize = 3;

/// Fraction of modes kept by the dealiasing truncation (the 2/3 rule used
/// when forming cubic products).
const DEALIAS_KEEP_NUM: usize = 1;
const DEALIAS_KEEP_DEN: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    dim: usize,
    n: usize,
    half_width: f64,
}

impl GridSpec {
    pub fn new(dim: usize, n: usize, half_width: f64) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&dim) {
            return Err(Error::GridDim { dim });
        }
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::GridSize { n });
        }
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(Error::BadParameter {
                what: "grid half-width must be positive and finite",
            });
        }
        Ok(GridSpec { dim, n, half_width })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Total number of grid points / spectral modes.
    pub fn points(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    /// Grid spacing 2L/n.
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    /// Quadrature weight of one cell, (2L/n)^dim.
    pub fn cell_volume(&self) -> f64 {
        let mut v = 1.0;
        for _ in 0..self.dim {
            v *= self.spacing();
        }
        v
    }

    /// Box volume (2L)^dim.
    pub fn box_volume(&self) -> f64 {
        let mut v = 1.0;
        for _ in 0..self.dim {
            v *= 2.0 * self.half_width;
        }
        v
    }

    pub(crate) fn dims(&self) -> Vec<usize> {
        vec![self.n; self.dim]
    }

    /// Signed mode number for a flat axis index (Nyquist maps to -n/2).
    #[inline]
    pub fn mode_number(&self, j: usize) -> i64 {
        if j < self.n / 2 {
            j as i64
        } else {
            j as i64 - self.n as i64
        }
    }

    /// Frequency table along one axis: ξ_j = π m_j / L.
    pub fn freq_table(&self) -> Vec<f64> {
        (0..self.n)
            .map(|j| core::f64::consts::PI * self.mode_number(j) as f64 / self.half_width)
            .collect()
    }

    /// Physical coordinates along one axis: x_i = -L + i·Δx.
    pub fn coord_table(&self) -> Vec<f64> {
        let dx = self.spacing();
        (0..self.n)
            .map(|i| -self.half_width + i as f64 * dx)
            .collect()
    }

    /// Decompose a flat row-major index into per-axis indices.
    #[inline]
    pub fn unravel(&self, mut idx: usize) -> [usize; MAX_DIM] {
        let mut out = [0usize; MAX_DIM];
        for axis in (0..self.dim).rev() {
            out[axis] = idx % self.n;
            idx /= self.n;
        }
        out
    }

    /// |ξ|² of the mode at a flat index.
    pub fn freq_norm_sqr(&self, idx: usize, freqs: &[f64]) -> f64 {
        let ids = self.unravel(idx);
        let mut s = 0.0;
        for axis in 0..self.dim {
            let xi = freqs[ids[axis]];
            s += xi * xi;
        }
        s
    }
}

/// Spatial multi-index of derivative orders, one per axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiIndex {
    orders: [usize; MAX_DIM],
}

impl MultiIndex {
    pub fn new(orders: &[usize]) -> Self {
        let mut o = [0usize; MAX_DIM];
        o[..orders.len()].copy_from_slice(orders);
        MultiIndex { orders: o }
    }

    pub fn axis(axis: usize, order: usize) -> Self {
        let mut o = [0usize; MAX_DIM];
        o[axis] = order;
        MultiIndex { orders: o }
    }

    pub fn order(&self) -> usize {
        self.orders.iter().sum()
    }

    pub fn orders(&self) -> &[usize; MAX_DIM] {
        &self.orders
    }

    /// Short label like "a102" used for series column names.
    pub fn label(&self, dim: usize) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::from("a");
        for axis in 0..dim {
            let _ = write!(s, "{}", self.orders[axis]);
        }
        s
    }
}

/// Real scalar function on a periodic grid, stored spectrally.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    grid: GridSpec,
    coeffs: Vec<Complex>,
}

impl Field {
    pub fn zero(grid: GridSpec) -> Self {
        Field {
            grid,
            coeffs: vec![Complex::ZERO; grid.points()],
        }
    }

    pub fn from_coeffs(grid: GridSpec, coeffs: Vec<Complex>) -> Self {
        assert_eq!(coeffs.len(), grid.points());
        Field { grid, coeffs }
    }

    /// Forward transform of real physical samples (row-major).
    pub fn from_physical(grid: GridSpec, samples: &[f64]) -> Self {
        assert_eq!(samples.len(), grid.points());
        let mut coeffs: Vec<Complex> = samples.iter().map(|&x| Complex::from(x)).collect();
        fft_nd(&mut coeffs, &grid.dims(), Direction::Forward);
        Field { grid, coeffs }
    }

    /// Inverse transform back to real physical samples.
    pub fn to_physical(&self) -> Vec<f64> {
        let mut buf = self.coeffs.clone();
        fft_nd(&mut buf, &self.grid.dims(), Direction::Inverse);
        buf.iter().map(|z| z.re).collect()
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex] {
        &mut self.coeffs
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|z| z.is_finite())
    }

    /// Spectral derivative of the given order along one axis. The Nyquist
    /// plane of that axis is zeroed: its odd-order derivative has no real
    /// representative on the grid.
    pub fn derivative(&self, axis: usize, order: usize) -> Field {
        assert!(axis < self.grid.dim(), "axis {axis} out of range");
        self.derivative_multi(&MultiIndex::axis(axis, order))
    }

    /// Spectral mixed derivative ∂^α in a single pass.
    pub fn derivative_multi(&self, alpha: &MultiIndex) -> Field {
        if alpha.order() == 0 {
            return self.clone();
        }
        let grid = self.grid;
        let n = grid.n();
        let freqs = grid.freq_table();
        let mut out = self.coeffs.clone();
        for (idx, z) in out.iter_mut().enumerate() {
            let ids = grid.unravel(idx);
            let mut w = Complex::from(1.0);
            let mut kill = false;
            for axis in 0..grid.dim() {
                let ord = alpha.orders()[axis];
                if ord == 0 {
                    continue;
                }
                if ids[axis] == n / 2 {
                    kill = true;
                    break;
                }
                let xi = freqs[ids[axis]];
                // (iξ)^ord
                for _ in 0..ord {
                    w = w * Complex::new(0.0, xi);
                }
            }
            *z = if kill { Complex::ZERO } else { *z * w };
        }
        Field { grid, coeffs: out }
    }

    /// Apply the Fourier multiplier (1+|ξ|²)^(s/2) (the Bessel potential).
    pub fn bessel_multiplier(&self, s: f64) -> Field {
        let grid = self.grid;
        let freqs = grid.freq_table();
        let mut out = self.coeffs.clone();
        for (idx, z) in out.iter_mut().enumerate() {
            let xi2 = grid.freq_norm_sqr(idx, &freqs);
            *z = z.scale(libm::pow(1.0 + xi2, 0.5 * s));
        }
        Field { grid, coeffs: out }
    }

    /// Zero every mode outside the dealiasing band |m| ≤ n/3 (per axis).
    pub fn dealias(&self) -> Field {
        let grid = self.grid;
        let cut = (grid.n() * DEALIAS_KEEP_NUM) / DEALIAS_KEEP_DEN;
        let mut out = self.coeffs.clone();
        for (idx, z) in out.iter_mut().enumerate() {
            let ids = grid.unravel(idx);
            for axis in 0..grid.dim() {
                let m = grid.mode_number(ids[axis]).unsigned_abs() as usize;
                if m > cut {
                    *z = Complex::ZERO;
                    break;
                }
            }
        }
        Field { grid, coeffs: out }
    }

    /// Dealiased cube u³: truncate, cube pointwise in physical space,
    /// transform back, truncate again.
    pub fn cube_dealiased(&self) -> Field {
        let trunc = self.dealias();
        let mut phys = trunc.to_physical();
        for v in phys.iter_mut() {
            *v = *v * *v * *v;
        }
        Field::from_physical(self.grid, &phys).dealias()
    }

    pub fn scaled(&self, s: f64) -> Field {
        Field {
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|z| z.scale(s)).collect(),
        }
    }

    pub fn add(&self, other: &Field) -> Field {
        assert_eq!(self.grid, other.grid);
        Field {
            grid: self.grid,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Field) -> Field {
        assert_eq!(self.grid, other.grid);
        Field {
            grid: self.grid,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }

    /// self += s · other
    pub fn axpy(&mut self, s: f64, other: &Field) {
        assert_eq!(self.grid, other.grid);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b.scale(s);
        }
    }

    /// Worst conjugate-symmetry defect, relative to the largest coefficient.
    /// Zero (to round-off) for fields representing real functions.
    pub fn conjugate_symmetry_defect(&self) -> f64 {
        let grid = self.grid;
        let n = grid.n();
        let mut worst = 0.0f64;
        let mut scale = 0.0f64;
        for (idx, z) in self.coeffs.iter().enumerate() {
            scale = scale.max(z.abs());
            let ids = grid.unravel(idx);
            let mut mirrored = 0usize;
            for axis in 0..grid.dim() {
                mirrored = mirrored * n + (n - ids[axis]) % n;
            }
            let d = (*z - self.coeffs[mirrored].conj()).abs();
            worst = worst.max(d);
        }
        if scale > 0.0 {
            worst / scale
        } else {
            0.0
        }
    }

    /// Band-limited random field: iid normal coefficients below the cutoff
    /// fraction of the Nyquist frequency, conjugate-symmetrized, amplitude-
    /// normalized so the physical samples have the requested RMS.
    pub fn random_band_limited(
        grid: GridSpec,
        max_mode_frac: f64,
        rms: f64,
        rng: &mut Rng,
    ) -> Field {
        let n = grid.n();
        let cut = ((n as f64 / 2.0) * max_mode_frac) as i64;
        let mut coeffs = vec![Complex::ZERO; grid.points()];
        for (idx, c) in coeffs.iter_mut().enumerate() {
            let ids = grid.unravel(idx);
            let mut keep = true;
            for axis in 0..grid.dim() {
                let m = grid.mode_number(ids[axis]);
                if m.abs() > cut || ids[axis] == n / 2 {
                    keep = false;
                    break;
                }
            }
            if keep {
                *c = Complex::new(rng.normal(), rng.normal());
            }
        }
        // symmetrize: c(m) ← (c(m) + conj(c(-m)))/2
        let raw = Field { grid, coeffs };
        let mut sym = raw.clone();
        for (idx, z) in sym.coeffs.iter_mut().enumerate() {
            let ids = grid.unravel(idx);
            let mut mirrored = 0usize;
            for axis in 0..grid.dim() {
                mirrored = mirrored * n + (n - ids[axis]) % n;
            }
            *z = (*z + raw.coeffs[mirrored].conj()).scale(0.5);
        }
        // normalize RMS of physical samples
        let phys = sym.to_physical();
        let ms: f64 = phys.iter().map(|v| v * v).sum::<f64>() / phys.len() as f64;
        if ms > 0.0 {
            sym = sym.scaled(rms / libm::sqrt(ms));
        }
        sym
    }
}

/// Cauchy pair (u, u_t) at a time instant.
#[derive(Clone, Debug, PartialEq)]
pub struct State {
    pub u: Field,
    pub ut: Field,
    pub t: f64,
}

impl State {
    pub fn new(u: Field, ut: Field, t: f64) -> Self {
        assert_eq!(u.grid(), ut.grid(), "u and u_t live on different grids");
        State { u, ut, t }
    }

    pub fn zero(grid: GridSpec) -> Self {
        State {
            u: Field::zero(grid),
            ut: Field::zero(grid),
            t: 0.0,
        }
    }

    pub fn grid(&self) -> GridSpec {
        self.u.grid()
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.ut.is_finite()
    }

    pub fn sub(&self, other: &State) -> State {
        State {
            u: self.u.sub(&other.u),
            ut: self.ut.sub(&other.ut),
            t: self.t,
        }
    }
}

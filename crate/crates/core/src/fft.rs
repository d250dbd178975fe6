//! Radix-2 complex FFT for power-of-two sizes, with an n-dimensional driver.
//!
//! The forward transform carries the full 1/N normalization (N = total number
//! of grid points), so the coefficient of the DC mode equals the mean of the
//! samples and Parseval reads `Σ|u_i|² = N·Σ|c_m|²`.

use alloc::vec;
use alloc::vec::Vec;

use crate::num::Complex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Twiddle factors for one transform size; build once, reuse across lines.
pub struct Twiddles {
    n: usize,
    // exp(-2πi k/n) for k in 0..n/2
    w: Vec<Complex>,
}

impl Twiddles {
    pub fn new(n: usize) -> Self {
        debug_assert!(n.is_power_of_two());
        let half = n / 2;
        let mut w = Vec::with_capacity(half.max(1));
        for k in 0..half.max(1) {
            let theta = -2.0 * core::f64::consts::PI * k as f64 / n as f64;
            w.push(Complex::cis(theta));
        }
        Twiddles { n, w }
    }

    pub fn len(&self) -> usize {
        self.n
    }
}

/// In-place transform of one contiguous line. No scaling in either direction.
pub fn fft_line(buf: &mut [Complex], tw: &Twiddles, dir: Direction) {
    let n = buf.len();
    debug_assert_eq!(n, tw.n);
    if n < 2 {
        return;
    }

    // bit-reversal permutation
    let mut j = 0usize;
    for i in 0..n - 1 {
        if i < j {
            buf.swap(i, j);
        }
        let mut mask = n >> 1;
        while j & mask != 0 {
            j &= !mask;
            mask >>= 1;
        }
        j |= mask;
    }

    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let step = n / len;
        let mut base = 0;
        while base < n {
            for k in 0..half {
                let w = match dir {
                    Direction::Forward => tw.w[k * step],
                    Direction::Inverse => tw.w[k * step].conj(),
                };
                let t = w * buf[base + half + k];
                let u = buf[base + k];
                buf[base + k] = u + t;
                buf[base + half + k] = u - t;
            }
            base += len;
        }
        len <<= 1;
    }
}

/// n-dimensional transform of row-major data with `dims[a]` points per axis.
/// The forward direction scales by 1/(Π dims) at the end.
pub fn fft_nd(data: &mut [Complex], dims: &[usize], dir: Direction) {
    let total: usize = dims.iter().product();
    debug_assert_eq!(data.len(), total);

    for axis in 0..dims.len() {
        let n = dims[axis];
        let tw = Twiddles::new(n);
        // stride between consecutive entries along `axis` (row-major layout)
        let stride: usize = dims[axis + 1..].iter().product();
        let lines = total / n;
        let mut scratch = vec![Complex::ZERO; n];

        for line in 0..lines {
            // decompose the line id into (outer block, inner offset)
            let outer = line / stride;
            let inner = line % stride;
            let base = outer * n * stride + inner;
            for i in 0..n {
                scratch[i] = data[base + i * stride];
            }
            fft_line(&mut scratch, &tw, dir);
            for i in 0..n {
                data[base + i * stride] = scratch[i];
            }
        }
    }

    if dir == Direction::Forward {
        let scale = 1.0 / total as f64;
        for z in data.iter_mut() {
            *z = z.scale(scale);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;

    /// Brute-force DFT with the same normalization convention as `fft_nd`.
    fn dft_1d(input: &[Complex], dir: Direction) -> Vec<Complex> {
        let n = input.len();
        let sign = match dir {
            Direction::Forward => -1.0,
            Direction::Inverse => 1.0,
        };
        let mut out = vec![Complex::ZERO; n];
        for (k, o) in out.iter_mut().enumerate() {
            for (j, z) in input.iter().enumerate() {
                let theta = sign * 2.0 * core::f64::consts::PI * (k * j) as f64 / n as f64;
                *o += *z * Complex::cis(theta);
            }
            if dir == Direction::Forward {
                *o = o.scale(1.0 / n as f64);
            }
        }
        out
    }

    fn random_buf(n: usize, rng: &mut Rng) -> Vec<Complex> {
        (0..n)
            .map(|_| Complex::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)))
            .collect()
    }

    #[test]
    fn matches_brute_force_dft() {
        let mut rng = Rng::seed_from(7);
        for &n in &[8usize, 16, 64, 128] {
            let input = random_buf(n, &mut rng);
            for dir in [Direction::Forward, Direction::Inverse] {
                let expected = dft_1d(&input, dir);
                let mut got = input.clone();
                fft_nd(&mut got, &[n], dir);
                for (g, e) in got.iter().zip(&expected) {
                    assert!((*g - *e).abs() < 1e-11, "n={n} {dir:?}");
                }
            }
        }
    }

    #[test]
    fn round_trip_identity() {
        let mut rng = Rng::seed_from(11);
        for dims in [vec![32], vec![16, 8], vec![8, 8, 8]] {
            let total: usize = dims.iter().product();
            let input = random_buf(total, &mut rng);
            let mut buf = input.clone();
            fft_nd(&mut buf, &dims, Direction::Forward);
            fft_nd(&mut buf, &dims, Direction::Inverse);
            for (g, e) in buf.iter().zip(&input) {
                assert!((*g - *e).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn parseval_under_declared_normalization() {
        let mut rng = Rng::seed_from(3);
        let dims = [16usize, 16];
        let total: usize = dims.iter().product();
        let input = random_buf(total, &mut rng);
        let mut hat = input.clone();
        fft_nd(&mut hat, &dims, Direction::Forward);
        let phys: f64 = input.iter().map(|z| z.norm_sqr()).sum();
        let spec: f64 = hat.iter().map(|z| z.norm_sqr()).sum();
        assert!((phys - total as f64 * spec).abs() < 1e-10 * phys);
    }

    #[test]
    fn dc_mode_is_mean() {
        let n = 32;
        let mut buf = vec![Complex::from(2.5); n];
        fft_nd(&mut buf, &[n], Direction::Forward);
        assert!((buf[0].re - 2.5).abs() < 1e-14);
        for z in &buf[1..] {
            assert!(z.abs() < 1e-13);
        }
    }
}

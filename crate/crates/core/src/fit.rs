//! Growth-model fitting: polynomial (1+t)^m versus exponential e^{αt} in
//! log space, selected by r² with a tie margin.

use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthModel {
    Polynomial,
    Exponential,
    /// r² within the tie margin of each other.
    Indeterminate,
}

#[derive(Clone, Copy, Debug)]
pub struct GrowthFit {
    pub model: GrowthModel,
    pub poly_exponent: f64,
    pub poly_r2: f64,
    pub exp_rate: f64,
    pub exp_r2: f64,
    pub window: (f64, f64),
}

impl GrowthFit {
    /// Rate of the winning exponential model, 0 when it does not win.
    pub fn winning_exp_rate(&self) -> f64 {
        if self.model == GrowthModel::Exponential {
            self.exp_rate
        } else {
            0.0
        }
    }
}

const R2_TIE_MARGIN: f64 = 0.01;

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 {
        return (0.0, my, 0.0);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res = syy - slope * sxy;
    let r2 = if syy > 0.0 {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    } else {
        1.0
    };
    (slope, intercept, r2)
}

/// Fit both growth models to the samples inside [window.0, window.1].
/// Requires at least 20 positive samples in the window.
pub fn fit_growth(times: &[f64], values: &[f64], window: (f64, f64)) -> Result<GrowthFit> {
    assert_eq!(times.len(), values.len());
    let mut log_t = Vec::new();
    let mut lin_t = Vec::new();
    let mut log_v = Vec::new();
    for (&t, &v) in times.iter().zip(values) {
        if t < window.0 || t > window.1 {
            continue;
        }
        if !(v > 0.0) {
            return Err(Error::Domain {
                what: "growth fitting needs positive samples",
            });
        }
        log_t.push(libm::log(1.0 + t));
        lin_t.push(t);
        log_v.push(libm::log(v));
    }
    if log_v.len() < 20 {
        return Err(Error::TooFewSamples {
            got: log_v.len(),
            need: 20,
        });
    }

    let (m, _, poly_r2) = least_squares(&log_t, &log_v);
    let (rate, _, exp_r2) = least_squares(&lin_t, &log_v);

    let model = if poly_r2 > exp_r2 + R2_TIE_MARGIN {
        GrowthModel::Polynomial
    } else if exp_r2 > poly_r2 + R2_TIE_MARGIN {
        GrowthModel::Exponential
    } else {
        GrowthModel::Indeterminate
    };

    Ok(GrowthFit {
        model,
        poly_exponent: m,
        poly_r2,
        exp_rate: rate,
        exp_r2,
        window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn sample(f: impl Fn(f64) -> f64, t0: f64, t1: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
        let times: Vec<f64> = (0..n)
            .map(|i| t0 + (t1 - t0) * i as f64 / (n - 1) as f64)
            .collect();
        let values = times.iter().map(|&t| f(t)).collect();
        (times, values)
    }

    #[test]
    fn cubic_polynomial_recovered() {
        let (t, v) = sample(|t| libm::pow(1.0 + t, 3.0), 1.0, 100.0, 200);
        let fit = fit_growth(&t, &v, (1.0, 100.0)).unwrap();
        assert_eq!(fit.model, GrowthModel::Polynomial);
        assert!(
            (fit.poly_exponent - 3.0).abs() < 0.01,
            "{}",
            fit.poly_exponent
        );
    }

    #[test]
    fn exponential_recovered() {
        let (t, v) = sample(|t| libm::exp(0.5 * t), 1.0, 20.0, 100);
        let fit = fit_growth(&t, &v, (1.0, 20.0)).unwrap();
        assert_eq!(fit.model, GrowthModel::Exponential);
        assert!((fit.exp_rate - 0.5).abs() < 0.01, "{}", fit.exp_rate);
    }

    #[test]
    fn oscillation_tolerated() {
        let (t, v) = sample(
            |t| libm::pow(1.0 + t, 2.0) * (2.0 + libm::sin(t)),
            1.0,
            100.0,
            400,
        );
        let fit = fit_growth(&t, &v, (1.0, 100.0)).unwrap();
        assert_eq!(fit.model, GrowthModel::Polynomial);
        assert!(
            (fit.poly_exponent - 2.0).abs() < 0.2,
            "{}",
            fit.poly_exponent
        );
    }

    #[test]
    fn rejects_nonpositive_and_short_windows() {
        let (t, mut v) = sample(|t| 1.0 + t, 0.0, 10.0, 50);
        v[3] = 0.0;
        assert!(matches!(
            fit_growth(&t, &v, (0.0, 10.0)),
            Err(Error::Domain { .. })
        ));
        let (t, v) = sample(|t| 1.0 + t, 0.0, 10.0, 10);
        assert!(matches!(
            fit_growth(&t, &v, (0.0, 10.0)),
            Err(Error::TooFewSamples { .. })
        ));
    }
}

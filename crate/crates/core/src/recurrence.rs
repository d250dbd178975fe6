//! Constructive polynomial envelopes for stepwise recurrence inequalities.
//!
//! For a nonnegative sequence with
//! `α_n ≤ α_{n-1} + C ((α_{n-1})^{1-γ} + 1)(1+n)^y`, 0 < γ < 1, a constant
//! `C̃` is certified so that `α_n ≤ C̃ (1+n)^{(1+y)/γ}` for all n. The
//! certificate is built on the shifted sequence `β_n = α_n + 1`, which obeys
//! `β_n ≤ β_{n-1} + C₂ β_{n-1}^{1-γ} (1+n)^y` with `C₂ = 2C`, and verifies
//! the one-step induction factor
//! `f(n) = (1 - 1/(n+1))^{(1+y)/γ} [1 + C₂ C̃^{-γ} n^{-1} (n/(n+1))^{-y}] ≤ 1`.
//!
//! Envelope values overflow f64 long before the sequences do (exponents run
//! beyond 100), so every membership comparison happens in log space.

use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RecurrenceParams {
    pub gamma: f64,
    pub c: f64,
    pub y: f64,
    pub alpha0: f64,
}

impl RecurrenceParams {
    pub fn new(gamma: f64, c: f64, y: f64, alpha0: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(Error::BadParameter {
                what: "recurrence gamma must lie in (0, 1)",
            });
        }
        if !(c >= 0.0) || !c.is_finite() {
            return Err(Error::BadParameter {
                what: "recurrence constant must be nonnegative and finite",
            });
        }
        if !(y >= 0.0) || !y.is_finite() {
            return Err(Error::BadParameter {
                what: "recurrence weight exponent must be nonnegative",
            });
        }
        if !(alpha0 >= 0.0) || !alpha0.is_finite() {
            return Err(Error::BadParameter {
                what: "recurrence initial value must be nonnegative",
            });
        }
        Ok(RecurrenceParams {
            gamma,
            c,
            y,
            alpha0,
        })
    }

    /// Envelope exponent (1+y)/γ.
    pub fn exponent(&self) -> f64 {
        (1.0 + self.y) / self.gamma
    }
}

/// Parameters of the shifted sequence β_n = α_n + 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalizedParams {
    pub gamma: f64,
    pub c2: f64,
    pub y: f64,
    pub beta0: f64,
}

/// Shift the recurrence: a^{1-γ} + 1 ≤ 2 (a+1)^{1-γ} for a ≥ 0 turns the
/// hypothesis into the power-law form with C₂ = 2C.
pub fn normalize(params: &RecurrenceParams) -> NormalizedParams {
    NormalizedParams {
        gamma: params.gamma,
        c2: 2.0 * params.c,
        y: params.y,
        beta0: params.alpha0 + 1.0,
    }
}

/// Certified polynomial envelope α_n ≤ C̃ (1+n)^exponent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Envelope {
    pub ctilde: f64,
    pub exponent: f64,
}

impl Envelope {
    /// log of the envelope value at index n (the value itself may overflow).
    pub fn log_value(&self, n: usize) -> f64 {
        libm::log(self.ctilde) + self.exponent * libm::log(1.0 + n as f64)
    }

    /// Does the sequence stay below the envelope (log-space comparison)?
    pub fn dominates(&self, seq: &[f64]) -> bool {
        seq.iter()
            .enumerate()
            .all(|(n, &v)| v <= 0.0 || libm::log(v) <= self.log_value(n) + 1e-9)
    }
}

/// The induction factor f(n) for the shifted sequence.
pub fn induction_factor(eps: f64, exponent: f64, y: f64, n: f64) -> f64 {
    let base = libm::pow(1.0 - 1.0 / (n + 1.0), exponent);
    let bracket = 1.0 + eps / n * libm::pow(n / (n + 1.0), -y);
    base * bracket
}

/// Sample points for the numeric sweep of f: every integer up to 64, then
/// log-spaced integers up to the declared certificate limit 10⁵.
pub fn sweep_points() -> Vec<usize> {
    let mut pts: Vec<usize> = (1..=64).collect();
    let mut x = 64.0f64;
    while x < 1e5 {
        x *= 1.05;
        let n = x as usize;
        if *pts.last().unwrap() != n {
            pts.push(n.min(100_000));
        }
    }
    if *pts.last().unwrap() != 100_000 {
        pts.push(100_000);
    }
    pts
}

/// Certify C̃ for the given parameters. True iff
/// (i) the induction base holds: C̃ ≥ α₀ + 1;
/// (ii) the derivative-analysis sufficient condition holds at its worst case
///      n = 1: (1+y)/γ - ε (2+y) 2^y ≥ 0 with ε = C₂ C̃^{-γ};
/// (iii) a numeric sweep of f(n) on [1, 10⁵] never exceeds 1.
pub fn certify_envelope(params: &RecurrenceParams, ctilde: f64) -> bool {
    if !(ctilde > 0.0) || !ctilde.is_finite() {
        return false;
    }
    let norm = normalize(params);
    if ctilde < norm.beta0 {
        return false;
    }
    let eps = norm.c2 * libm::pow(ctilde, -norm.gamma);
    let exponent = params.exponent();
    if exponent - eps * (2.0 + norm.y) * libm::pow(2.0, norm.y) < 0.0 {
        return false;
    }
    for n in sweep_points() {
        if induction_factor(eps, exponent, norm.y, n as f64) > 1.0 + 1e-12 {
            return false;
        }
    }
    true
}

/// Smallest certified envelope constant, by bisection (the certificate is
/// monotone in C̃: growing C̃ only shrinks ε). For extreme parameters the
/// minimal constant scales like (2C/ε*)^{1/γ} and can leave f64 range, in
/// which case this reports a domain error rather than an invalid envelope.
pub fn min_envelope(params: &RecurrenceParams) -> Result<Envelope> {
    let exponent = params.exponent();
    let base = params.alpha0 + 1.0;

    if certify_envelope(params, base) {
        return Ok(Envelope {
            ctilde: base,
            exponent,
        });
    }
    let mut hi = base.max(1.0);
    while !certify_envelope(params, hi) {
        if hi >= f64::MAX / 2.0 {
            return Err(Error::Domain {
                what: "certified envelope constant exceeds the representable range",
            });
        }
        hi *= 2.0;
    }
    let mut lo = base;
    // lo is un-certified (or equals base, handled above); shrink to 1e-6 rel.
    for _ in 0..80 {
        if (hi - lo) <= 1e-6 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if certify_envelope(params, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Envelope {
        ctilde: hi,
        exponent,
    })
}

/// The pointwise-maximal sequence allowed by the hypothesis (equality at
/// every step). Errors with the first index that leaves f64 range.
pub fn extremal_sequence(params: &RecurrenceParams, n_max: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(params.alpha0);
    let mut prev = params.alpha0;
    for n in 1..=n_max {
        let step = params.c
            * (libm::pow(prev, 1.0 - params.gamma) + 1.0)
            * libm::pow(1.0 + n as f64, params.y);
        let next = prev + step;
        if !next.is_finite() {
            return Err(Error::Overflow { index: n });
        }
        out.push(next);
        prev = next;
    }
    Ok(out)
}

/// Result of checking a measured sequence against the recurrence hypothesis.
#[derive(Clone, Debug)]
pub struct SeriesCheck {
    /// Smallest C for which the hypothesis holds at every step.
    pub fitted_c: f64,
    pub envelope: Envelope,
    /// max_n α_n / (1+n)^exponent, computed in log space.
    pub worst_ratio: f64,
    pub passes: bool,
}

/// Fit the smallest admissible C to a uniformly sampled sequence, build its
/// certified envelope, and check membership.
pub fn check_series(times: &[f64], values: &[f64], gamma: f64, y: f64) -> Result<SeriesCheck> {
    if values.len() < 2 {
        return Err(Error::TooFewSamples {
            got: values.len(),
            need: 2,
        });
    }
    if times.len() != values.len() {
        return Err(Error::Domain {
            what: "times and values must have equal length",
        });
    }
    let dt = times[1] - times[0];
    if !(dt > 0.0) {
        return Err(Error::NonUniformSampling);
    }
    for w in times.windows(2) {
        if ((w[1] - w[0]) - dt).abs() > 1e-9 * dt {
            return Err(Error::NonUniformSampling);
        }
    }
    for &v in values {
        if !(v >= 0.0) || !v.is_finite() {
            return Err(Error::Domain {
                what: "sequence values must be nonnegative and finite",
            });
        }
    }

    let mut fitted_c = 0.0f64;
    for n in 1..values.len() {
        let denom = (libm::pow(values[n - 1], 1.0 - gamma) + 1.0) * libm::pow(1.0 + n as f64, y);
        let c_here = (values[n] - values[n - 1]) / denom;
        fitted_c = fitted_c.max(c_here);
    }
    fitted_c = fitted_c.max(0.0);

    let params = RecurrenceParams::new(gamma, fitted_c, y, values[0])?;
    let envelope = min_envelope(&params)?;

    let mut worst = 0.0f64;
    for (n, &v) in values.iter().enumerate() {
        if v > 0.0 {
            let log_ratio = libm::log(v) - envelope.exponent * libm::log(1.0 + n as f64);
            worst = worst.max(libm::exp(log_ratio));
        }
    }
    let passes = envelope.dominates(values);

    Ok(SeriesCheck {
        fitted_c,
        envelope,
        worst_ratio: worst,
        passes,
    })
}

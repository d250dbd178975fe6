//! Gauss-Legendre quadrature nodes and weights on [-1, 1].

use alloc::vec::Vec;

/// Nodes (ascending) and weights of the n-point Gauss-Legendre rule.
/// Newton iteration on the Legendre recurrence; accurate to ~1e-15.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let m = n.div_ceil(2);

    for i in 0..m {
        // Tricomi initial guess for the i-th positive root
        let mut x = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n(x) and P_n'(x) by upward recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            dp = n as f64 * (x * p - p0) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes.push(-x);
        weights.push(w);
    }

    // mirror to the positive half (skip duplicated center for odd n)
    for i in (0..n - m).rev() {
        let x = -nodes[i];
        let w = weights[i];
        nodes.push(x);
        weights.push(w);
    }
    (nodes, weights)
}

/// Same rule mapped to [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        x.iter().map(|&xi| mid + half * xi).collect(),
        w.iter().map(|&wi| wi * half).collect(),
    )
}

/// Composite Simpson integral of uniformly sampled values. Falls back to a
/// trapezoid on the final interval when the interval count is odd.
pub fn simpson_uniform(values: &[f64], dt: f64) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let intervals = n - 1;
    let even = intervals - intervals % 2;
    let mut acc = 0.0;
    let mut i = 0;
    while i < even {
        acc += dt / 3.0 * (values[i] + 4.0 * values[i + 1] + values[i + 2]);
        i += 2;
    }
    if intervals % 2 == 1 {
        acc += 0.5 * dt * (values[n - 2] + values[n - 1]);
    }
    acc
}

//! Quadrature building blocks: adaptive 15-point Gauss-Kronrod rules for
//! real and complex integrands, Gauss-Legendre rules of arbitrary order,
//! and a periodic trapezoid rule.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Kronrod abscissae for the 7-15 pair on [-1, 1].
const XGK15: [f64; 15] = [
    -0.9914553711208126,
    -0.9491079123427585,
    -0.8648644233597691,
    -0.7415311855993944,
    -0.5860872354676911,
    -0.4058451513773972,
    -0.2077849550078985,
    0.0,
    0.2077849550078985,
    0.4058451513773972,
    0.5860872354676911,
    0.7415311855993944,
    0.8648644233597691,
    0.9491079123427585,
    0.9914553711208126,
];

/// Kronrod weights matching `XGK15`.
const WGK15: [f64; 15] = [
    0.022935322010529224,
    0.06309209262997856,
    0.10479001032225018,
    0.14065325971552592,
    0.1690047266392679,
    0.1903505780647854,
    0.20443294007529889,
    0.20948214108472782,
    0.20443294007529889,
    0.1903505780647854,
    0.1690047266392679,
    0.14065325971552592,
    0.10479001032225018,
    0.06309209262997856,
    0.022935322010529224,
];

/// Weights of the embedded 7-point Gauss rule (odd-index abscissae of `XGK15`).
const WG7: [f64; 7] = [
    0.1294849661688697,
    0.27970539148927664,
    0.3818300505051189,
    0.4179591836734694,
    0.3818300505051189,
    0.27970539148927664,
    0.1294849661688697,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResultComplex {
    pub value: Complex64,
    pub abs_error: f64,
}

fn gk15_panel<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = 0.0;
    let mut gauss = 0.0;
    for (i, &x) in XGK15.iter().enumerate() {
        let v = f(center + half * x);
        kronrod += WGK15[i] * v;
        if i % 2 == 1 {
            gauss += WG7[i / 2] * v;
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).abs();
    // The (200 e)^{3/2} rescaling of QUADPACK is overkill here; the plain
    // Gauss/Kronrod difference is a usable, slightly pessimistic estimate.
    (value, err)
}

fn gk15_panel_complex<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kronrod = Complex64::new(0.0, 0.0);
    let mut gauss = Complex64::new(0.0, 0.0);
    for (i, &x) in XGK15.iter().enumerate() {
        let v = f(center + half * x);
        kronrod += WGK15[i] * v;
        if i % 2 == 1 {
            gauss += WG7[i / 2] * v;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).norm())
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

/// Integrate `f` over `[a, b]` by adaptive bisection of 15-point
/// Gauss-Kronrod panels.
///
/// Stops when the summed error estimate drops below
/// `max(abs_tol, rel_tol * |integral|)`; errors out after `max_panels`.
pub fn adaptive_gk15<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Result<QuadResult> {
    adaptive_gk15_split(f, &[a, b], rel_tol, abs_tol, max_panels)
}

/// Same as [`adaptive_gk15`] but with the initial panels split at the
/// given breakpoints (must be sorted; integration runs over the full span).
pub fn adaptive_gk15_split<F: FnMut(f64) -> f64>(
    f: &mut F,
    points: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Result<QuadResult> {
    assert!(points.len() >= 2, "need at least two breakpoints");
    let mut segs: Vec<Segment<f64>> = Vec::new();
    for w in points.windows(2) {
        if w[1] > w[0] {
            let (v, e) = gk15_panel(f, w[0], w[1]);
            segs.push(Segment { a: w[0], b: w[1], value: v, error: e });
        }
    }
    if segs.is_empty() {
        return Ok(QuadResult { value: 0.0, abs_error: 0.0 });
    }
    loop {
        let total: f64 = segs.iter().map(|s| s.value).sum();
        let err: f64 = segs.iter().map(|s| s.error).sum();
        let tol = abs_tol.max(rel_tol * total.abs());
        if err <= tol {
            return Ok(QuadResult { value: total, abs_error: err });
        }
        if segs.len() >= max_panels {
            return Err(Error::QuadratureNonConvergence {
                context: "adaptive_gk15".to_string(),
                achieved: err,
                requested: tol,
            });
        }
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap();
        let Segment { a, b, .. } = segs.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            // Interval at floating-point resolution; stop refining it.
            let (v, _) = gk15_panel(f, a, b);
            segs.push(Segment { a, b, value: v, error: 0.0 });
            continue;
        }
        let (v1, e1) = gk15_panel(f, a, mid);
        let (v2, e2) = gk15_panel(f, mid, b);
        segs.push(Segment { a, b: mid, value: v1, error: e1 });
        segs.push(Segment { a: mid, b, value: v2, error: e2 });
    }
}

/// Complex-valued counterpart of [`adaptive_gk15_split`].
pub fn adaptive_gk15_complex_split<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    points: &[f64],
    rel_tol: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Result<QuadResultComplex> {
    assert!(points.len() >= 2, "need at least two breakpoints");
    let mut segs: Vec<Segment<Complex64>> = Vec::new();
    for w in points.windows(2) {
        if w[1] > w[0] {
            let (v, e) = gk15_panel_complex(f, w[0], w[1]);
            segs.push(Segment { a: w[0], b: w[1], value: v, error: e });
        }
    }
    if segs.is_empty() {
        return Ok(QuadResultComplex { value: Complex64::new(0.0, 0.0), abs_error: 0.0 });
    }
    loop {
        let total: Complex64 = segs.iter().map(|s| s.value).sum();
        let err: f64 = segs.iter().map(|s| s.error).sum();
        let tol = abs_tol.max(rel_tol * total.norm());
        if err <= tol {
            return Ok(QuadResultComplex { value: total, abs_error: err });
        }
        if segs.len() >= max_panels {
            return Err(Error::QuadratureNonConvergence {
                context: "adaptive_gk15_complex".to_string(),
                achieved: err,
                requested: tol,
            });
        }
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap();
        let Segment { a, b, .. } = segs.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            let (v, _) = gk15_panel_complex(f, a, b);
            segs.push(Segment { a, b, value: v, error: 0.0 });
            continue;
        }
        let (v1, e1) = gk15_panel_complex(f, a, mid);
        let (v2, e2) = gk15_panel_complex(f, mid, b);
        segs.push(Segment { a, b: mid, value: v1, error: e1 });
        segs.push(Segment { a: mid, b, value: v2, error: e2 });
    }
}

pub fn adaptive_gk15_complex<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Result<QuadResultComplex> {
    adaptive_gk15_complex_split(f, &[a, b], rel_tol, abs_tol, max_panels)
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// found by Newton iteration on P_n with the Chebyshev initial guess.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(x) and P_n'(x) by the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = (n as f64) * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Fixed Gauss-Legendre quadrature of `f` over `[a, b]`.
pub fn gauss_legendre_integrate<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, n: usize) -> f64 {
    let (x, w) = gauss_legendre(n);
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    x.iter().zip(&w).map(|(&xi, &wi)| wi * f(c + h * xi)).sum::<f64>() * h
}

/// Trapezoid rule for a 2π-periodic integrand over [-π, π); spectrally
/// accurate for smooth periodic functions.
pub fn trapezoid_periodic<F: FnMut(f64) -> f64>(f: &mut F, n: usize) -> f64 {
    let h = 2.0 * std::f64::consts::PI / n as f64;
    (0..n)
        .map(|k| f(-std::f64::consts::PI + k as f64 * h))
        .sum::<f64>()
        * h
}

//! Special functions at fixed wavenumber k = 1: Riccati-Bessel and
//! Riccati-Neumann functions, principal-branch complex log-Gamma,
//! Legendre polynomials, odd double factorials, and the large-order
//! asymptotic envelope of u_l.
//!
//! Conventions: u_l(r) = sqrt(pi r/2) J_{l+1/2}(r) is the free solution
//! regular at the origin, v_l(r) = sqrt(pi r/2) Y_{l+1/2}(r) the
//! irregular companion, so that u_l ~ sin(r - l pi/2) and
//! v_l ~ -cos(r - l pi/2) as r -> infinity, with Wronskian
//! u_l v_l' - u_l' v_l = 1.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Angular-momentum index: a physical non-negative integer or a complex
/// value in the right half-plane Re l > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngularIndex {
    Integer(u32),
    Complex(Complex64),
}

impl AngularIndex {
    pub fn integer(ell: u32) -> Self {
        AngularIndex::Integer(ell)
    }

    /// Complex index; rejects values outside the right half-plane.
    pub fn complex(ell: Complex64) -> Result<Self> {
        if !(ell.re > 0.0) || !ell.re.is_finite() || !ell.im.is_finite() {
            return Err(Error::Domain(format!(
                "complex angular index must satisfy Re l > 0, got {ell}"
            )));
        }
        Ok(AngularIndex::Complex(ell))
    }

    pub fn as_complex(&self) -> Complex64 {
        match *self {
            AngularIndex::Integer(n) => Complex64::new(n as f64, 0.0),
            AngularIndex::Complex(z) => z,
        }
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    Ok(())
}

/// ln((2n+1)!!) for the odd double factorial, m = 2n+1.
pub fn ln_double_factorial_odd(m: u32) -> f64 {
    assert!(m % 2 == 1, "ln_double_factorial_odd takes an odd argument");
    let n = (m - 1) / 2;
    // (2n+1)!! = (2n+1)! / (2^n n!)
    log_gamma_real(2.0 * n as f64 + 2.0) - n as f64 * std::f64::consts::LN_2
        - log_gamma_real(n as f64 + 1.0)
}

/// (2n+1)!! as f64; infinite on overflow (m >= 171 or so).
pub fn double_factorial_odd(m: u32) -> f64 {
    assert!(m % 2 == 1);
    if m <= 29 {
        let mut p = 1.0_f64;
        let mut k = 1u32;
        while k <= m {
            p *= k as f64;
            k += 2;
        }
        p
    } else {
        ln_double_factorial_odd(m).exp()
    }
}

/// Power series for u_l(r), stable for r below the turning region.
fn riccati_bessel_series(ell: u32, r: f64) -> f64 {
    // u_l(r) = r^{l+1}/(2l+1)!! * S,  S = sum c_k,
    // c_0 = 1, c_{k+1} = c_k * (-r^2/2) / ((k+1)(2l+2k+3))
    let ln_pref = (ell as f64 + 1.0) * r.ln() - ln_double_factorial_odd(2 * ell + 1);
    let x = -0.5 * r * r;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 0..600u32 {
        term *= x / ((k as f64 + 1.0) * (2.0 * ell as f64 + 2.0 * k as f64 + 3.0));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    let ln_val = ln_pref + sum.abs().ln();
    if ln_val < -745.0 {
        return 0.0; // true value below the f64 underflow threshold
    }
    sum.signum() * ln_val.exp()
}

/// Forward recurrence from the closed forms u_0, u_1; stable only in the
/// oscillatory regime r >= l+1. Returns (u_l, u_{l-1}), l >= 1.
fn riccati_bessel_forward(ell: u32, r: f64) -> (f64, f64) {
    let mut um1 = r.sin();
    let mut u = r.sin() / r - r.cos();
    for j in 1..ell {
        let next = (2.0 * j as f64 + 1.0) / r * u - um1;
        um1 = u;
        u = next;
    }
    (u, um1)
}

/// One Miller backward pass from index `start`, normalized by the sum
/// rule sum_j (2j+1) u_j(r)^2 = r^2. Returns (u_l, u_{l-1}).
fn miller_pass(ell: u32, r: f64, start: u32) -> (f64, f64) {
    debug_assert!(start > ell && ell >= 1);
    let mut up1 = 0.0_f64;
    let mut u = 1.0_f64;
    let mut sum = (2.0 * start as f64 + 1.0) * u * u;
    let mut s_ell = 0.0_f64;
    let mut s_ellm1 = 0.0_f64;
    let mut s0 = 0.0_f64;
    let mut s1 = 0.0_f64;
    let mut j = start;
    while j > 0 {
        let um1 = (2.0 * j as f64 + 1.0) / r * u - up1;
        up1 = u;
        u = um1;
        j -= 1;
        sum += (2.0 * j as f64 + 1.0) * u * u;
        if j == ell {
            s_ell = u;
        }
        if j + 1 == ell {
            s_ellm1 = u;
        }
        if j == 1 {
            s1 = u;
        }
        if j == 0 {
            s0 = u;
        }
        if u.abs() > 1e140 || sum > 1e280 {
            let scale = 1e-140;
            u *= scale;
            up1 *= scale;
            sum *= scale * scale;
            s_ell *= scale;
            s_ellm1 *= scale;
            s0 *= scale;
            s1 *= scale;
        }
    }
    let c = r / sum.sqrt();
    let ref0 = r.sin();
    let sgn = if ref0.abs() >= 0.1 {
        (ref0 * s0).signum()
    } else {
        let ref1 = r.sin() / r - r.cos();
        (ref1 * s1).signum()
    };
    (sgn * c * s_ell, sgn * c * s_ellm1)
}

/// Self-validating Miller recursion: raises the start index until two
/// passes agree to near machine precision.
fn riccati_bessel_miller(ell: u32, r: f64) -> (f64, f64) {
    let base = ell.max(r.ceil() as u32);
    let mut start = base + 40;
    let mut prev: Option<(f64, f64)> = None;
    loop {
        let cur = miller_pass(ell, r, start);
        if let Some(p) = prev {
            if (cur.0 - p.0).abs() <= 5e-15 * cur.0.abs().max(1e-300)
                && (cur.1 - p.1).abs() <= 5e-15 * cur.1.abs().max(1e-300)
            {
                return cur;
            }
        }
        prev = Some(cur);
        start += 30;
        if start > base + 400 {
            return cur;
        }
    }
}

/// (u_l, u_{l-1}) for l >= 1, routed by regime.
fn riccati_bessel_pair(ell: u32, r: f64) -> (f64, f64) {
    if r < 0.5 || r < 0.5 * (ell as f64 + 1.0) {
        (
            riccati_bessel_series(ell, r),
            riccati_bessel_series(ell - 1, r),
        )
    } else if ell <= 30 && r >= ell as f64 + 1.0 {
        riccati_bessel_forward(ell, r)
    } else {
        riccati_bessel_miller(ell, r)
    }
}

/// Riccati-Bessel function u_l(r) = sqrt(pi r/2) J_{l+1/2}(r).
pub fn riccati_bessel(ell: u32, r: f64) -> Result<f64> {
    check_radius(r)?;
    if ell == 0 {
        return Ok(r.sin());
    }
    Ok(riccati_bessel_pair(ell, r).0)
}

/// u_l(r) together with its derivative, via u_l' = u_{l-1} - (l/r) u_l.
pub fn riccati_bessel_with_deriv(ell: u32, r: f64) -> Result<(f64, f64)> {
    check_radius(r)?;
    if ell == 0 {
        return Ok((r.sin(), r.cos()));
    }
    let (u, um1) = riccati_bessel_pair(ell, r);
    Ok((u, um1 - ell as f64 / r * u))
}

/// Riccati-Neumann v_l with derivative in rescaled form:
/// returns (v_hat, v_hat', ln_scale) with v = v_hat * exp(ln_scale).
/// Forward recurrence is stable (v is the dominant solution); the
/// rescaling keeps large orders representable.
pub(crate) fn riccati_neumann_scaled(ell: u32, r: f64) -> Result<(f64, f64, f64)> {
    check_radius(r)?;
    if ell == 0 {
        return Ok((-r.cos(), r.sin(), 0.0));
    }
    let mut vm1 = -r.cos();
    let mut v = -r.cos() / r - r.sin();
    let mut ln_scale = 0.0_f64;
    for j in 1..ell {
        let next = (2.0 * j as f64 + 1.0) / r * v - vm1;
        vm1 = v;
        v = next;
        if v.abs() > 1e200 {
            let s = 1e-200;
            v *= s;
            vm1 *= s;
            ln_scale += 200.0 * std::f64::consts::LN_10;
        }
    }
    let vp = vm1 - ell as f64 / r * v;
    Ok((v, vp, ln_scale))
}

/// Riccati-Neumann function v_l(r) = sqrt(pi r/2) Y_{l+1/2}(r).
pub fn riccati_neumann(ell: u32, r: f64) -> Result<f64> {
    let (v, _, ln_scale) = riccati_neumann_scaled(ell, r)?;
    rescale_back(v, ln_scale, ell, r)
}

/// v_l(r) and its derivative.
pub fn riccati_neumann_with_deriv(ell: u32, r: f64) -> Result<(f64, f64)> {
    let (v, vp, ln_scale) = riccati_neumann_scaled(ell, r)?;
    Ok((rescale_back(v, ln_scale, ell, r)?, rescale_back(vp, ln_scale, ell, r)?))
}

fn rescale_back(v: f64, ln_scale: f64, ell: u32, r: f64) -> Result<f64> {
    if ln_scale == 0.0 {
        return Ok(v);
    }
    let ln_val = ln_scale + v.abs().ln();
    if ln_val > 709.0 {
        return Err(Error::RangeExceeded(format!(
            "v_{ell}({r}) overflows f64 (ln |v| = {ln_val:.1})"
        )));
    }
    Ok(v.signum() * ln_val.exp())
}

const LANCZOS_G: f64 = 7.0;
// Lanczos coefficients for g = 7, n = 9 (GNU Scientific Library set).
const LANCZOS_COEF: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Principal-branch log Gamma on the right half-plane Re z > 0,
/// Lanczos approximation with argument shifted to Re >= 2.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!(
            "log_gamma requires Re z > 0, got {z}"
        )));
    }
    let mut zz = z;
    let mut corr = Complex64::new(0.0, 0.0);
    while zz.re < 2.0 {
        corr += zz.ln();
        zz += 1.0;
    }
    let x = zz - 1.0;
    let mut a = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (k, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (x + k as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    let half_ln_two_pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    Ok(half_ln_two_pi + (x + 0.5) * t.ln() - t + a.ln() - corr)
}

/// Real log Gamma for x > 0.
pub fn log_gamma_real(x: f64) -> f64 {
    log_gamma(Complex64::new(x, 0.0))
        .expect("log_gamma_real requires x > 0")
        .re
}

/// Legendre polynomial P_l(t) on [-1, 1] by the three-term recurrence.
pub fn legendre_poly(ell: u32, t: f64) -> Result<f64> {
    if !(t.abs() <= 1.0) {
        return Err(Error::Domain(format!("|t| <= 1 required, got {t}")));
    }
    let mut p0 = 1.0_f64;
    if ell == 0 {
        return Ok(p0);
    }
    let mut p1 = t;
    for k in 2..=ell {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    Ok(p1)
}

/// P_0(t), ..., P_lmax(t) in one sweep.
pub fn legendre_all(ell_max: u32, t: f64) -> Result<Vec<f64>> {
    if !(t.abs() <= 1.0) {
        return Err(Error::Domain(format!("|t| <= 1 required, got {t}")));
    }
    let mut out = Vec::with_capacity(ell_max as usize + 1);
    out.push(1.0);
    if ell_max == 0 {
        return Ok(out);
    }
    out.push(t);
    for k in 2..=ell_max {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * t * out[k as usize - 1] - (kf - 1.0) * out[k as usize - 2]) / kf;
        out.push(p2);
    }
    Ok(out)
}

/// Large-order asymptotic envelope of u_l, evaluated in log space.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticValue {
    pub value: f64,
    pub ln_value: f64,
    pub underflowed: bool,
}

/// sqrt(r/2) (e r/(2l+1))^{(2l+1)/2} (2l+1)^{-1/2}, the leading
/// large-l form of u_l(r). `value` is 0 with `underflowed` set when the
/// result drops below the f64 range; `ln_value` is always meaningful.
pub fn u_asymptotic(ell: u32, r: f64) -> Result<AsymptoticValue> {
    check_radius(r)?;
    if ell < 1 {
        return Err(Error::Domain("u_asymptotic requires l >= 1".into()));
    }
    let n = 2.0 * ell as f64 + 1.0;
    let ln_value = 0.5 * (0.5 * r).ln() + 0.5 * n * (1.0 + r.ln() - n.ln()) - 0.5 * n.ln();
    if ln_value < -745.0 {
        return Ok(AsymptoticValue { value: 0.0, ln_value, underflowed: true });
    }
    Ok(AsymptoticValue { value: ln_value.exp(), ln_value, underflowed: false })
}

//! Adaptive embedded Runge-Kutta integration (Dormand-Prince 5(4)) with
//! exact landing on the requested endpoint.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Hard floor on the step as a fraction of the span; below it the
    /// problem is declared stiff.
    pub h_min_factor: f64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions { rel_tol: 1e-10, abs_tol: 1e-14, h_min_factor: 1e-12 }
    }
}

// Dormand-Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// b - b_hat, the 5th/4th order difference used for the error estimate.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Advance y from `r0` to `r1` (`r1 > r0`) under dy/dr = f(r, y).
pub fn integrate_to<const N: usize, F>(
    f: &mut F,
    r0: f64,
    r1: f64,
    y: &mut [f64; N],
    opts: &OdeOptions,
) -> Result<()>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    let span = r1 - r0;
    if span <= 0.0 {
        return Ok(());
    }
    let h_min = opts.h_min_factor * span;
    let mut r = r0;
    let mut h = span;
    let mut steps: u64 = 0;
    while r < r1 {
        h = h.min(r1 - r);
        let k1 = f(r, y);
        let mut yt = [0.0; N];
        for i in 0..N {
            yt[i] = y[i] + h * A21 * k1[i];
        }
        let k2 = f(r + h / 5.0, &yt);
        for i in 0..N {
            yt[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        }
        let k3 = f(r + 3.0 * h / 10.0, &yt);
        for i in 0..N {
            yt[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        let k4 = f(r + 4.0 * h / 5.0, &yt);
        for i in 0..N {
            yt[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        let k5 = f(r + 8.0 * h / 9.0, &yt);
        for i in 0..N {
            yt[i] =
                y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        let k6 = f(r + h, &yt);
        let mut y5 = [0.0; N];
        for i in 0..N {
            y5[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        }
        let k7 = f(r + h, &y5);

        let mut err_sq = 0.0;
        for i in 0..N {
            let e = h
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = opts.abs_tol + opts.rel_tol * y[i].abs().max(y5[i].abs());
            err_sq += (e / sc) * (e / sc);
        }
        let err = (err_sq / N as f64).sqrt().max(1e-30);

        if err <= 1.0 {
            r += h;
            *y = y5;
            h *= (0.9 * err.powf(-0.2)).clamp(1.0, 5.0);
        } else {
            h *= (0.9 * err.powf(-0.2)).clamp(0.2, 0.9);
            if h < h_min {
                return Err(Error::StepUnderflow { r });
            }
        }
        steps += 1;
        if steps > 50_000_000 {
            return Err(Error::StepUnderflow { r });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        // y'' = -y from (0, 1): y = cos r
        let mut y = [1.0, 0.0];
        let mut f = |_r: f64, y: &[f64; 2]| [y[1], -y[0]];
        integrate_to(&mut f, 0.0, 10.0, &mut y, &OdeOptions::default()).unwrap();
        assert!((y[0] - 10.0_f64.cos()).abs() < 1e-9);
        assert!((y[1] + 10.0_f64.sin()).abs() < 1e-9);
    }

    #[test]
    fn quadrature_by_ode() {
        // y' = 3 r^2
        let mut y = [0.0];
        let mut f = |r: f64, _y: &[f64; 1]| [3.0 * r * r];
        integrate_to(&mut f, 0.0, 2.0, &mut y, &OdeOptions::default()).unwrap();
        assert!((y[0] - 8.0).abs() < 1e-10);
    }

    #[test]
    fn stiff_blowup_reports_step_underflow() {
        // y' = y^2 blows up at r = 1; integration past it must fail loudly
        let mut y = [1.0];
        let mut f = |_r: f64, y: &[f64; 1]| [y[0] * y[0]];
        let err = integrate_to(&mut f, 0.0, 2.0, &mut y, &OdeOptions::default());
        assert!(err.is_err());
    }
}

//! Regular solutions of the radial equation at k = 1, phase-shift
//! extraction by matching to the free (u_l, v_l) basis at the support
//! edge, and partial-wave amplitude assembly.
//!
//! The solver integrates a rescaled solution (value times a tracked
//! exponential) so that large orders neither underflow at the origin nor
//! overflow on the way out; phase shifts are scale-invariant and always
//! computable, while mapping back to the r^{l+1}/(2l+1)!! normalization
//! fails loudly if it leaves the f64 range.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ode::{integrate_to, OdeOptions};
use crate::potential::Potential;
use crate::quad;
use crate::specfun::{
    legendre_all, ln_double_factorial_odd, riccati_bessel_with_deriv, riccati_neumann_scaled,
};

pub const ELL_MAX: u32 = 200;

#[derive(Debug, Clone, Copy)]
pub struct RadialConfig {
    /// Output nodes of the uniform grid on [r0, a] (breakpoints are added).
    pub n_grid: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for RadialConfig {
    fn default() -> Self {
        // tighter than the 1e-10 contract so that accumulated global error
        // stays below it
        RadialConfig { n_grid: 4001, rel_tol: 1e-12, abs_tol: 1e-16 }
    }
}

/// Regular solution on its grid, in the r^{l+1}/(2l+1)!! normalization,
/// with the extracted phase shift and Jost magnitude.
#[derive(Debug, Clone)]
pub struct RadialSolution {
    pub ell: u32,
    pub grid: Vec<f64>,
    pub phi: Vec<f64>,
    pub phi_prime: Vec<f64>,
    pub delta: f64,
    pub jost_magnitude: f64,
}

/// Scale-tracked solution: phi = y[0] e^{ln_scale}, phi' = y[1] e^{ln_scale}.
pub(crate) struct ScaledSolution {
    pub ell: u32,
    pub grid: Vec<f64>,
    pub y: Vec<[f64; 2]>,
    pub ln_scale: Vec<f64>,
    pub support_radius: f64,
}

fn start_radius(a: f64, ell: u32) -> f64 {
    // sqrt growth keeps the O(r0^2 / l) Frobenius correction at the first
    // node below 1e-6 uniformly in l; linear growth would violate that
    // already at l = 2
    1e-3_f64.min(a * 1e-3) * (ell as f64 + 1.0).sqrt()
}

/// Frobenius initial data (value, derivative) of phi/e^{ln_scale} at r0,
/// with ln_scale = (l+1) ln r0 - ln (2l+1)!!. Constant-q leading
/// behaviour; the series is summed to machine convergence.
fn frobenius_start(ell: u32, r0: f64, q_near: f64) -> ([f64; 2], f64) {
    let lf = ell as f64;
    let mut coef = 1.0_f64; // a_m / a_0, even m only
    let mut w = 1.0_f64;
    let mut wp = (lf + 1.0) / r0;
    let mut m = 0u32;
    loop {
        m += 2;
        coef *= (q_near - 1.0) / (m as f64 * (2.0 * lf + 1.0 + m as f64));
        let t = coef * r0.powi(m as i32);
        w += t;
        wp += t * (lf + 1.0 + m as f64) / r0;
        if t.abs() < 1e-17 * w.abs() || m > 200 {
            break;
        }
    }
    let ln_scale = (lf + 1.0) * r0.ln() - ln_double_factorial_odd(2 * ell + 1);
    ([w, wp], ln_scale)
}

pub(crate) fn integrate_scaled(
    q: &Potential,
    ell: u32,
    cfg: &RadialConfig,
) -> Result<ScaledSolution> {
    if ell > ELL_MAX {
        return Err(Error::Domain(format!("l = {ell} exceeds the supported range {ELL_MAX}")));
    }
    let a = q.support_radius();
    let r0 = start_radius(a, ell);

    let mut grid: Vec<f64> = (0..cfg.n_grid)
        .map(|i| r0 + (a - r0) * i as f64 / (cfg.n_grid - 1) as f64)
        .collect();
    for b in q.breakpoints() {
        if b > r0 * (1.0 + 1e-12) && b < a * (1.0 - 1e-12) {
            grid.push(b);
        }
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|x, y| (*x - *y).abs() < 1e-13 * a);
    *grid.last_mut().unwrap() = a;

    let q_near = q.eval(0.5 * r0)?;
    let (mut y, mut ln_scale) = frobenius_start(ell, r0, q_near);

    let mut ys = Vec::with_capacity(grid.len());
    let mut scales = Vec::with_capacity(grid.len());
    ys.push(y);
    scales.push(ln_scale);

    let lam = ell as f64 * (ell as f64 + 1.0);
    let opts = OdeOptions { rel_tol: cfg.rel_tol, abs_tol: cfg.abs_tol, ..Default::default() };
    for w in grid.clone().windows(2) {
        let (lo, hi) = (w[0], w[1]);
        // Evaluate q on the open segment only: the left-limit convention at
        // breakpoints would otherwise leak the neighbouring piece into k1.
        let lo_inner = lo + 1e-9 * (hi - lo);
        let mut rhs = |r: f64, y: &[f64; 2]| {
            let rr = r.clamp(lo_inner, hi);
            let qv = q.eval(rr).unwrap_or(0.0);
            [y[1], (lam / (r * r) - 1.0 + qv) * y[0]]
        };
        integrate_to(&mut rhs, lo, hi, &mut y, &opts)?;
        ys.push(y);
        scales.push(ln_scale);
        let mag = y[0].abs().max(y[1].abs());
        if mag > 1e100 {
            y[0] /= mag;
            y[1] /= mag;
            ln_scale += mag.ln();
            *ys.last_mut().unwrap() = y;
            *scales.last_mut().unwrap() = ln_scale;
        }
    }

    Ok(ScaledSolution { ell, grid, y: ys, ln_scale: scales, support_radius: a })
}

/// Matching of (phi, phi') at r = a to |F|(cos d u - sin d v); exact
/// because q vanishes beyond a. Returns (delta in [-pi, pi), ln |F|).
fn match_at_edge(ell: u32, a: f64, y: [f64; 2], ln_scale: f64) -> Result<(f64, f64)> {
    let (u, up) = riccati_bessel_with_deriv(ell, a)?;
    let (vh, vhp, ln_v) = riccati_neumann_scaled(ell, a)?;
    // phi u' - phi' u = |F| sin d;  phi v' - phi' v = |F| cos d
    let b_hat = y[0] * up - y[1] * u;
    let a_hat = y[0] * vhp - y[1] * vh;
    let mut delta = f64::atan2(b_hat * (-ln_v).exp(), a_hat);
    if delta == std::f64::consts::PI {
        delta = -std::f64::consts::PI;
    }
    let ln_jost = ln_scale + ln_v + f64::hypot(a_hat, b_hat * (-ln_v).exp()).ln();
    Ok((delta, ln_jost))
}

/// Regular solution with default configuration.
pub fn regular_solution(q: &Potential, ell: u32) -> Result<RadialSolution> {
    regular_solution_with(q, ell, &RadialConfig::default())
}

pub fn regular_solution_with(
    q: &Potential,
    ell: u32,
    cfg: &RadialConfig,
) -> Result<RadialSolution> {
    let s = integrate_scaled(q, ell, cfg)?;
    let a = s.support_radius;
    let (delta, ln_jost) = match_at_edge(ell, a, *s.y.last().unwrap(), *s.ln_scale.last().unwrap())?;
    let jost_magnitude = ln_jost.exp();
    if !(jost_magnitude > 0.0) || !jost_magnitude.is_finite() {
        return Err(Error::RangeExceeded(format!(
            "Jost magnitude out of range (ln |F| = {ln_jost:.1})"
        )));
    }

    let mut phi = Vec::with_capacity(s.grid.len());
    let mut phi_prime = Vec::with_capacity(s.grid.len());
    for (y, &ls) in s.y.iter().zip(&s.ln_scale) {
        for (out, comp) in [(&mut phi, y[0]), (&mut phi_prime, y[1])] {
            let v = if comp == 0.0 {
                0.0
            } else {
                let ln_v = ls + comp.abs().ln();
                if ln_v > 709.0 {
                    return Err(Error::RangeExceeded(format!(
                        "paper-normalized solution overflows f64 at l = {ell}"
                    )));
                }
                if ln_v < -745.0 {
                    return Err(Error::RangeExceeded(format!(
                        "paper-normalized solution underflows f64 at l = {ell}; \
                         use phase_shift for scale-free quantities"
                    )));
                }
                comp.signum() * ln_v.exp()
            };
            out.push(v);
        }
    }

    Ok(RadialSolution { ell, grid: s.grid, phi, phi_prime, delta, jost_magnitude })
}

/// Phase shift and Jost magnitude; works for any l up to `ELL_MAX`
/// regardless of whether the paper normalization is representable.
pub fn phase_shift(q: &Potential, ell: u32) -> Result<(f64, f64)> {
    phase_shift_with(q, ell, &RadialConfig { n_grid: 129, ..Default::default() })
}

pub fn phase_shift_with(q: &Potential, ell: u32, cfg: &RadialConfig) -> Result<(f64, f64)> {
    let s = integrate_scaled(q, ell, cfg)?;
    let (delta, ln_jost) =
        match_at_edge(ell, s.support_radius, *s.y.last().unwrap(), *s.ln_scale.last().unwrap())?;
    let jost = ln_jost.exp();
    if !(jost > 0.0) || !jost.is_finite() {
        return Err(Error::RangeExceeded(format!(
            "Jost magnitude out of range (ln |F| = {ln_jost:.1})"
        )));
    }
    Ok((delta, jost))
}

impl RadialSolution {
    /// phi at an arbitrary radius by cubic Hermite interpolation on the
    /// stored grid; below the first node the leading power law is used.
    pub fn eval_phi(&self, r: f64) -> Result<f64> {
        let first = self.grid[0];
        let last = *self.grid.last().unwrap();
        if r < 0.0 || r > last * (1.0 + 1e-12) {
            return Err(Error::Domain(format!("radius {r} outside the solution grid")));
        }
        if r <= first {
            if r == 0.0 {
                return Ok(0.0);
            }
            return Ok(self.phi[0] * (r / first).powi(self.ell as i32 + 1));
        }
        let i = self
            .grid
            .partition_point(|&x| x < r)
            .clamp(1, self.grid.len() - 1);
        let (r1, r2) = (self.grid[i - 1], self.grid[i]);
        let h = r2 - r1;
        let t = ((r - r1) / h).clamp(0.0, 1.0);
        let (p1, p2) = (self.phi[i - 1], self.phi[i]);
        let (d1, d2) = (self.phi_prime[i - 1], self.phi_prime[i]);
        let t2 = t * t;
        let t3 = t2 * t;
        Ok(p1 * (2.0 * t3 - 3.0 * t2 + 1.0)
            + h * d1 * (t3 - 2.0 * t2 + t)
            + p2 * (-2.0 * t3 + 3.0 * t2)
            + h * d2 * (t3 - t2))
    }
}

/// Partial-wave amplitude coefficient 4 pi e^{i delta} sin(delta);
/// algebraically equal to 2 pi i (1 - e^{2 i delta}).
pub fn amplitude_coefficient(delta: f64) -> Complex64 {
    4.0 * std::f64::consts::PI * Complex64::new(0.0, delta).exp() * delta.sin()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseShiftEntry {
    pub ell: u32,
    pub delta: f64,
    pub jost_magnitude: f64,
}

/// Phase shifts of one potential, sorted by l, one entry per l.
#[derive(Debug, Clone)]
pub struct PhaseShiftTable {
    pub potential_id: String,
    entries: Vec<PhaseShiftEntry>,
}

impl PhaseShiftTable {
    pub fn new(potential_id: impl Into<String>) -> Self {
        PhaseShiftTable { potential_id: potential_id.into(), entries: Vec::new() }
    }

    pub fn insert(&mut self, entry: PhaseShiftEntry) -> Result<()> {
        if self.entries.iter().any(|e| e.ell == entry.ell) {
            return Err(Error::Validation(format!("duplicate entry for l = {}", entry.ell)));
        }
        self.entries.push(entry);
        self.entries.sort_by_key(|e| e.ell);
        Ok(())
    }

    /// Compute delta_l for l = 0..=l_max sequentially.
    pub fn compute(q: &Potential, l_max: u32) -> Result<Self> {
        let mut t = PhaseShiftTable::new(q.id());
        for ell in 0..=l_max {
            let (delta, jost_magnitude) = phase_shift(q, ell)?;
            t.insert(PhaseShiftEntry { ell, delta, jost_magnitude })?;
        }
        Ok(t)
    }

    pub fn entries(&self) -> &[PhaseShiftEntry] {
        &self.entries
    }

    pub fn get(&self, ell: u32) -> Option<&PhaseShiftEntry> {
        self.entries.iter().find(|e| e.ell == ell)
    }
}

/// Truncated amplitude A(cos theta) = sum_{l<=L} A_l (2l+1)/(4 pi) P_l,
/// the spherical-harmonic sum collapsed by the addition theorem.
/// Returns the value and a last-term tail estimate.
pub fn partial_wave_amplitude(
    table: &PhaseShiftTable,
    cos_theta: f64,
    l_max: u32,
) -> Result<(Complex64, f64)> {
    if !(cos_theta.abs() <= 1.0) {
        return Err(Error::Domain(format!("cos theta must lie in [-1, 1], got {cos_theta}")));
    }
    for ell in 0..=l_max {
        if table.get(ell).is_none() {
            return Err(Error::IncompleteTable(format!(
                "phase-shift table lacks l = {ell} <= L_max = {l_max}"
            )));
        }
    }
    let p = legendre_all(l_max, cos_theta)?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut tail = 0.0;
    for ell in 0..=l_max {
        let e = table.get(ell).unwrap();
        let weight = (2.0 * ell as f64 + 1.0) / (4.0 * std::f64::consts::PI);
        let term = amplitude_coefficient(e.delta) * weight;
        sum += term * p[ell as usize];
        if ell == l_max {
            tail = term.norm();
        }
    }
    Ok((sum, tail))
}

/// Born-approximation phase shift -∫ q u_l^2 dr (first order in q).
pub fn born_phase_shift(q: &Potential, ell: u32) -> Result<f64> {
    let pts = q.breakpoints();
    let mut f = |r: f64| {
        if r <= 0.0 {
            return 0.0;
        }
        let u = crate::specfun::riccati_bessel(ell, r).unwrap_or(0.0);
        -q.eval(r).unwrap_or(0.0) * u * u
    };
    Ok(quad::adaptive_gk15_split(&mut f, &pts, 1e-12, 1e-15, 4000)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::riccati_bessel;

    fn reduce_to_principal(x: f64) -> f64 {
        let two_pi = 2.0 * std::f64::consts::PI;
        let mut y = x - two_pi * ((x + std::f64::consts::PI) / two_pi).floor();
        if y >= std::f64::consts::PI {
            y -= two_pi;
        }
        y
    }

    /// Closed-form l=0 shift of a square well by logarithmic-derivative
    /// matching at r = a: tan(a + delta) = tan(kappa a)/kappa.
    fn delta0_square_well(q0: f64, a: f64) -> f64 {
        let kappa = (1.0 - q0).sqrt();
        let t = (kappa * a).tan() / kappa;
        reduce_to_principal(t.atan() - a)
    }

    #[test]
    fn free_solution_reproduces_u() {
        let q = Potential::zero(1.0).unwrap();
        let sol = regular_solution(&q, 3).unwrap();
        let mut max_rel: f64 = 0.0;
        let scale = sol
            .phi
            .iter()
            .fold(0.0_f64, |m, &v| m.max(v.abs()));
        for (r, phi) in sol.grid.iter().zip(&sol.phi) {
            let u = riccati_bessel(3, *r).unwrap();
            max_rel = max_rel.max((phi - u).abs() / scale);
        }
        assert!(max_rel < 1e-8, "free-case sup deviation {max_rel:e}");
    }

    #[test]
    fn free_phase_shift_is_zero() {
        let q = Potential::zero(1.0).unwrap();
        for ell in 0..=30u32 {
            let (d, f) = phase_shift(&q, ell).unwrap();
            assert!(d.abs() < 1e-10, "delta_{ell} = {d:e}");
            assert!((f - 1.0).abs() < 1e-10, "|F_{ell}| = {f}");
        }
    }

    #[test]
    fn square_well_closed_form_solution() {
        // q0 = -1 on [0,1]: phi = sin(kappa r)/kappa with kappa = sqrt(2)
        let q = Potential::square_well(-1.0, 1.0).unwrap();
        let sol = regular_solution(&q, 0).unwrap();
        let kappa = 2.0_f64.sqrt();
        for (r, phi) in sol.grid.iter().zip(&sol.phi) {
            let exact = (kappa * r).sin() / kappa;
            assert!(
                ((phi - exact) / exact).abs() < 1e-8,
                "phi(r={r}) = {phi} vs {exact}"
            );
        }
    }

    #[test]
    fn square_well_phase_shift_matches_closed_form() {
        for q0 in [-1.0, -0.5, 0.5] {
            let q = Potential::square_well(q0, 1.0).unwrap();
            let (d, _) = phase_shift(&q, 0).unwrap();
            let want = delta0_square_well(q0, 1.0);
            assert!((d - want).abs() < 1e-8, "q0 = {q0}: {d} vs {want}");
        }
    }

    #[test]
    fn born_approximation_weak_potential() {
        // The Born error is second order in q0 in absolute terms, hence
        // O(q0) relative to delta itself.
        for ell in 0..=2u32 {
            let q = Potential::square_well(0.01, 1.0).unwrap();
            let (d, _) = phase_shift(&q, ell).unwrap();
            let born = born_phase_shift(&q, ell).unwrap();
            assert!((d - born).abs() < 1e-4, "l={ell}: {d} vs born {born}");
            assert!(((d - born) / born).abs() < 1e-2);
        }
        // O(q0^2) scaling of the absolute deviation
        let dev = |q0: f64| {
            let q = Potential::square_well(q0, 1.0).unwrap();
            let (d, _) = phase_shift(&q, 0).unwrap();
            (d - born_phase_shift(&q, 0).unwrap()).abs()
        };
        let ratio = dev(0.01) / dev(0.001);
        assert!((60.0..160.0).contains(&ratio), "Born deviation scaling {ratio}");
    }

    #[test]
    fn sign_law_for_weak_wells_and_barriers() {
        let well = Potential::square_well(-0.05, 1.0).unwrap();
        let barrier = Potential::square_well(0.05, 1.0).unwrap();
        assert!(phase_shift(&well, 0).unwrap().0 > 0.0);
        assert!(phase_shift(&barrier, 0).unwrap().0 < 0.0);
    }

    #[test]
    fn jost_sine_integral_identity() {
        // |F_l| sin(delta_l) = -∫ q u_l phi_l dr
        let q = Potential::square_well(-1.0, 1.0).unwrap();
        for ell in 0..=10u32 {
            let sol = regular_solution(&q, ell).unwrap();
            let mut f = |r: f64| {
                if r <= 0.0 {
                    return 0.0;
                }
                let u = riccati_bessel(ell, r).unwrap();
                -q.eval(r).unwrap() * u * sol.eval_phi(r).unwrap()
            };
            let integral =
                quad::adaptive_gk15_split(&mut f, &q.breakpoints(), 1e-11, 1e-14, 4000)
                    .unwrap()
                    .value;
            let lhs = sol.jost_magnitude * sol.delta.sin();
            assert!(
                (lhs - integral).abs() < 1e-6,
                "l={ell}: |F| sin d = {lhs} vs integral {integral}"
            );
        }
    }

    #[test]
    fn ode_residual_on_returned_grid() {
        let q = Potential::square_well(-1.0, 1.0).unwrap();
        let sol = regular_solution(&q, 4).unwrap();
        let n = sol.grid.len();
        let mut worst: f64 = 0.0;
        let scale = sol
            .grid
            .iter()
            .zip(&sol.phi)
            .map(|(&r, &p)| {
                let w = 20.0 / (r * r) - 1.0 + q.eval(r).unwrap();
                (w * p).abs() + p.abs()
            })
            .fold(0.0_f64, f64::max);
        for i in 1..n - 1 {
            let h1 = sol.grid[i] - sol.grid[i - 1];
            let h2 = sol.grid[i + 1] - sol.grid[i];
            if (h1 - h2).abs() > 1e-12 * h1 {
                continue; // stencil requires uniform spacing
            }
            let r = sol.grid[i];
            let d2 = (sol.phi[i + 1] - 2.0 * sol.phi[i] + sol.phi[i - 1]) / (h1 * h1);
            let w = 20.0 / (r * r) - 1.0 + q.eval(r).unwrap();
            worst = worst.max((d2 - w * sol.phi[i]).abs());
        }
        assert!(worst / scale < 1e-6, "ODE residual {:e}", worst / scale);
    }

    #[test]
    fn small_r_normalization_invariant() {
        let q = Potential::square_well(-1.0, 1.0).unwrap();
        for ell in [0u32, 2, 7] {
            let sol = regular_solution(&q, ell).unwrap();
            let r0 = sol.grid[0];
            let lead =
                ((ell as f64 + 1.0) * r0.ln() - ln_double_factorial_odd(2 * ell + 1)).exp();
            assert!(
                ((sol.phi[0] - lead) / lead).abs() < 1e-6,
                "l={ell}: phi(r0) = {} vs leading {lead}",
                sol.phi[0]
            );
        }
    }

    #[test]
    fn large_ell_phase_shift_is_finite_and_tiny() {
        let q = Potential::square_well(-1.0, 1.0).unwrap();
        let (d, f) = phase_shift(&q, 60).unwrap();
        assert!(d.abs() < 1e-30, "delta_60 = {d:e}");
        // |F_l| - 1 = -∫ v q phi dr decays only like 1/(2(2l+1))
        assert!((f - 1.0).abs() < 0.01, "|F_60| = {f}");
        // and l beyond the supported range errors out
        assert!(phase_shift(&q, ELL_MAX + 1).is_err());
    }

    #[test]
    fn amplitude_coefficient_forms_agree() {
        assert_eq!(amplitude_coefficient(0.0), Complex64::new(0.0, 0.0));
        let v = amplitude_coefficient(std::f64::consts::FRAC_PI_2);
        assert!((v - Complex64::new(0.0, 4.0 * std::f64::consts::PI)).norm() < 1e-12);
        // pseudo-random deltas, fixed seed
        let mut state = 0x9e3779b97f4a7c15_u64;
        for _ in 0..100 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let delta = (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 * std::f64::consts::PI
                - std::f64::consts::PI;
            let a = amplitude_coefficient(delta);
            let b = 2.0
                * std::f64::consts::PI
                * Complex64::new(0.0, 1.0)
                * (1.0 - Complex64::new(0.0, 2.0 * delta).exp());
            assert!((a - b).norm() < 1e-13 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn partial_wave_amplitude_cases() {
        // all-zero deltas: amplitude vanishes at every angle
        let mut t = PhaseShiftTable::new("zero");
        for ell in 0..=10 {
            t.insert(PhaseShiftEntry { ell, delta: 0.0, jost_magnitude: 1.0 }).unwrap();
        }
        for x in [-1.0, -0.3, 0.0, 0.9] {
            assert!(partial_wave_amplitude(&t, x, 10).unwrap().0.norm() < 1e-15);
        }

        // single nonzero delta_0: angle-independent, equal to A_0/(4 pi)
        let mut t = PhaseShiftTable::new("s-wave");
        t.insert(PhaseShiftEntry { ell: 0, delta: 0.4, jost_magnitude: 1.0 }).unwrap();
        let want = amplitude_coefficient(0.4) / (4.0 * std::f64::consts::PI);
        for x in [-1.0, 0.2, 1.0] {
            let (v, _) = partial_wave_amplitude(&t, x, 0).unwrap();
            assert!((v - want).norm() < 1e-14);
        }

        // incomplete table below L_max errors out
        assert!(matches!(
            partial_wave_amplitude(&t, 0.5, 3),
            Err(Error::IncompleteTable(_))
        ));

        // square well: tail decay makes L_max 10 -> 20 a < 1e-8 change
        let q = Potential::square_well(-1.0, 1.0).unwrap();
        let table = PhaseShiftTable::compute(&q, 20).unwrap();
        let (a10, _) = partial_wave_amplitude(&table, 0.5, 10).unwrap();
        let (a20, tail) = partial_wave_amplitude(&table, 0.5, 20).unwrap();
        assert!((a10 - a20).norm() < 1e-8, "L_max tail {:e}", (a10 - a20).norm());
        assert!(tail < 1e-12);
    }

    #[test]
    fn duplicate_table_entry_rejected() {
        let mut t = PhaseShiftTable::new("x");
        t.insert(PhaseShiftEntry { ell: 1, delta: 0.1, jost_magnitude: 1.0 }).unwrap();
        assert!(t.insert(PhaseShiftEntry { ell: 1, delta: 0.2, jost_magnitude: 1.0 }).is_err());
    }
}

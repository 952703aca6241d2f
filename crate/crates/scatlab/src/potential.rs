//! Compactly supported radial potentials: piecewise-constant and sampled
//! kinds, JSON ingestion with validation, and exact cumulative moment
//! integrals used by the quadrature and kernel modules.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad;

/// One constant piece of a piecewise potential on (lo, hi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
}

/// One sample (r, q(r)) of a tabulated potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub r: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Zero,
    Piecewise(Vec<Piece>),
    Table(Vec<Sample>),
}

/// Real radial potential q(r), identically zero for r > a.
///
/// Tabulated potentials are interpolated piecewise-linearly between
/// samples and extended by their end values towards 0 and a. At jump
/// points of piecewise potentials, evaluation returns the left limit;
/// quadratures split at breakpoints so the convention never affects
/// integrals.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    kind: Kind,
    support_radius: f64,
    label: Option<String>,
}

fn check_support_radius(a: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Validation(format!(
            "support radius must be positive and finite, got {a}"
        )));
    }
    Ok(())
}

impl Potential {
    pub fn zero(a: f64) -> Result<Self> {
        check_support_radius(a)?;
        Ok(Potential { kind: Kind::Zero, support_radius: a, label: None })
    }

    pub fn piecewise(a: f64, pieces: Vec<Piece>) -> Result<Self> {
        check_support_radius(a)?;
        let mut prev_hi = 0.0_f64;
        for p in &pieces {
            if !p.lo.is_finite() || !p.hi.is_finite() || !p.value.is_finite() {
                return Err(Error::Validation("non-finite piece data".into()));
            }
            if p.lo < 0.0 {
                return Err(Error::Validation(format!("negative radius in piece: {}", p.lo)));
            }
            if p.hi <= p.lo {
                return Err(Error::Validation(format!(
                    "piece interval [{}, {}] is empty or reversed",
                    p.lo, p.hi
                )));
            }
            if p.lo < prev_hi {
                return Err(Error::Validation("pieces are unsorted or overlapping".into()));
            }
            if p.hi > a * (1.0 + 1e-12) {
                return Err(Error::Validation("support exceeds a".into()));
            }
            prev_hi = p.hi;
        }
        Ok(Potential { kind: Kind::Piecewise(pieces), support_radius: a, label: None })
    }

    pub fn table(a: f64, samples: Vec<Sample>) -> Result<Self> {
        check_support_radius(a)?;
        if samples.is_empty() {
            return Err(Error::Validation("table potential needs at least one sample".into()));
        }
        let mut prev = f64::NEG_INFINITY;
        for s in &samples {
            if !s.r.is_finite() || !s.value.is_finite() {
                return Err(Error::Validation("non-finite sample data".into()));
            }
            if s.r < 0.0 {
                return Err(Error::Validation(format!("negative radius in sample: {}", s.r)));
            }
            if s.r <= prev {
                return Err(Error::Validation("unsorted sample grid".into()));
            }
            if s.r > a * (1.0 + 1e-12) {
                return Err(Error::Validation("support exceeds a".into()));
            }
            prev = s.r;
        }
        Ok(Potential { kind: Kind::Table(samples), support_radius: a, label: None })
    }

    /// Square well/barrier of the given depth on [0, a].
    pub fn square_well(depth: f64, a: f64) -> Result<Self> {
        Potential::piecewise(a, vec![Piece { lo: 0.0, hi: a, value: depth }])
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Stable identifier used in CSV metadata and tables.
    pub fn id(&self) -> String {
        if let Some(l) = &self.label {
            return l.clone();
        }
        match &self.kind {
            Kind::Zero => format!("zero(a={})", self.support_radius),
            Kind::Piecewise(p) => {
                let body: Vec<String> = p
                    .iter()
                    .map(|p| format!("[{},{}]->{}", p.lo, p.hi, p.value))
                    .collect();
                format!("piecewise(a={};{})", self.support_radius, body.join(";"))
            }
            Kind::Table(s) => format!("table(a={};{} samples)", self.support_radius, s.len()),
        }
    }

    /// q(r); exactly zero beyond the support radius, left limit at jumps.
    pub fn eval(&self, r: f64) -> Result<f64> {
        if r < 0.0 || !r.is_finite() {
            return Err(Error::Domain(format!("radius must be non-negative, got {r}")));
        }
        if r > self.support_radius {
            return Ok(0.0);
        }
        Ok(match &self.kind {
            Kind::Zero => 0.0,
            Kind::Piecewise(pieces) => {
                if r == 0.0 {
                    return Ok(pieces.first().filter(|p| p.lo == 0.0).map_or(0.0, |p| p.value));
                }
                pieces
                    .iter()
                    .find(|p| p.lo < r && r <= p.hi)
                    .map_or(0.0, |p| p.value)
            }
            Kind::Table(samples) => {
                let first = samples.first().unwrap();
                let last = samples.last().unwrap();
                if r <= first.r {
                    first.value
                } else if r >= last.r {
                    last.value
                } else {
                    let i = samples.partition_point(|s| s.r <= r);
                    let (s0, s1) = (samples[i - 1], samples[i]);
                    let t = (r - s0.r) / (s1.r - s0.r);
                    s0.value + t * (s1.value - s0.value)
                }
            }
        })
    }

    /// Radii at which q may be non-smooth, including 0 and a, sorted.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts = vec![0.0, self.support_radius];
        match &self.kind {
            Kind::Zero => {}
            Kind::Piecewise(pieces) => {
                for p in pieces {
                    pts.push(p.lo);
                    pts.push(p.hi);
                }
            }
            Kind::Table(samples) => {
                for s in samples {
                    pts.push(s.r);
                }
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|x, y| (*x - *y).abs() < 1e-14 * self.support_radius);
        pts.retain(|&x| (0.0..=self.support_radius).contains(&x));
        pts
    }

    /// Cumulative integral of s q(s) over [0, min(r, a)], exact for both
    /// representations.
    pub fn cumulative_sq(&self, r: f64) -> f64 {
        self.cumulative_impl(r, false)
    }

    /// Cumulative integral of s |q(s)| over [0, min(r, a)].
    pub fn cumulative_sq_abs(&self, r: f64) -> f64 {
        self.cumulative_impl(r, true)
    }

    fn cumulative_impl(&self, r: f64, absolute: bool) -> f64 {
        let r = r.min(self.support_radius).max(0.0);
        match &self.kind {
            Kind::Zero => 0.0,
            Kind::Piecewise(pieces) => {
                let mut acc = 0.0;
                for p in pieces {
                    if p.lo >= r {
                        break;
                    }
                    let hi = p.hi.min(r);
                    let v = if absolute { p.value.abs() } else { p.value };
                    acc += v * 0.5 * (hi * hi - p.lo * p.lo);
                }
                acc
            }
            Kind::Table(samples) => {
                let mut acc = 0.0;
                let first = samples.first().unwrap();
                let last = samples.last().unwrap();
                // constant head below the first sample
                let head_hi = first.r.min(r);
                if head_hi > 0.0 {
                    acc += seg_s_linear(first.value, 0.0, 0.0, head_hi, absolute);
                }
                for w in samples.windows(2) {
                    let (s0, s1) = (w[0], w[1]);
                    if s0.r >= r {
                        break;
                    }
                    let hi = s1.r.min(r);
                    if hi <= s0.r {
                        continue;
                    }
                    let m = (s1.value - s0.value) / (s1.r - s0.r);
                    // q(s) = alpha + beta s on the segment
                    let beta = m;
                    let alpha = s0.value - m * s0.r;
                    acc += seg_s_linear(alpha, beta, s0.r, hi, absolute);
                }
                // constant tail above the last sample
                if r > last.r {
                    acc += seg_s_linear(last.value, 0.0, last.r, r, absolute);
                }
                acc
            }
        }
    }

    /// First moment of |q|: the constant that controls the Volterra
    /// contraction bound.
    pub fn first_moment(&self) -> f64 {
        self.cumulative_sq_abs(self.support_radius)
    }

    /// Same-kind potential with all values scaled by `c`.
    pub fn scaled(&self, c: f64) -> Potential {
        let kind = match &self.kind {
            Kind::Zero => Kind::Zero,
            Kind::Piecewise(p) => Kind::Piecewise(
                p.iter().map(|p| Piece { value: c * p.value, ..*p }).collect(),
            ),
            Kind::Table(s) => Kind::Table(
                s.iter().map(|s| Sample { value: c * s.value, ..*s }).collect(),
            ),
        };
        Potential { kind, support_radius: self.support_radius, label: None }
    }

    /// Parse and validate the JSON document format.
    pub fn from_json_str(text: &str) -> Result<Potential> {
        let doc: PotentialDoc = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("potential document: {e}")))?;
        doc.build()
    }

    /// Serialize to the JSON document format.
    pub fn to_json_string(&self) -> String {
        let doc = PotentialDoc {
            kind: match &self.kind {
                Kind::Zero => "zero".into(),
                Kind::Piecewise(_) => "piecewise".into(),
                Kind::Table(_) => "table".into(),
            },
            a: self.support_radius,
            pieces: match &self.kind {
                Kind::Piecewise(p) => p.iter().map(|p| [p.lo, p.hi, p.value]).collect(),
                _ => Vec::new(),
            },
            samples: match &self.kind {
                Kind::Table(s) => s.iter().map(|s| [s.r, s.value]).collect(),
                _ => Vec::new(),
            },
            label: self.label.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("potential document serializes")
    }
}

/// ∫ s (alpha + beta s) ds over [lo, hi], optionally of the absolute
/// value (split at the sign change).
fn seg_s_linear(alpha: f64, beta: f64, lo: f64, hi: f64, absolute: bool) -> f64 {
    let primitive = |x: f64| alpha * 0.5 * x * x + beta * x * x * x / 3.0;
    if !absolute {
        return primitive(hi) - primitive(lo);
    }
    let signed = |l: f64, h: f64| {
        let mid = 0.5 * (l + h);
        let sgn = (alpha + beta * mid).signum();
        sgn * (primitive(h) - primitive(l))
    };
    if beta != 0.0 {
        let root = -alpha / beta;
        if root > lo && root < hi {
            return signed(lo, root) + signed(root, hi);
        }
    }
    signed(lo, hi)
}

#[derive(Serialize, Deserialize)]
struct PotentialDoc {
    kind: String,
    a: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pieces: Vec<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    samples: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl PotentialDoc {
    fn build(self) -> Result<Potential> {
        let p = match self.kind.as_str() {
            "zero" => Potential::zero(self.a)?,
            "piecewise" => Potential::piecewise(
                self.a,
                self.pieces
                    .iter()
                    .map(|&[lo, hi, value]| Piece { lo, hi, value })
                    .collect(),
            )?,
            "table" => Potential::table(
                self.a,
                self.samples
                    .iter()
                    .map(|&[r, value]| Sample { r, value })
                    .collect(),
            )?,
            other => {
                return Err(Error::Validation(format!(
                    "unknown potential kind {other:?} (expected zero|piecewise|table)"
                )))
            }
        };
        Ok(match self.label {
            Some(l) => p.with_label(l),
            None => p,
        })
    }
}

/// Difference p(r) = q1(r) - q2(r) on the merged support.
#[derive(Debug, Clone)]
pub struct DifferencePotential {
    q1: Potential,
    q2: Potential,
}

impl DifferencePotential {
    pub fn new(q1: Potential, q2: Potential) -> Self {
        DifferencePotential { q1, q2 }
    }

    pub fn q1(&self) -> &Potential {
        &self.q1
    }

    pub fn q2(&self) -> &Potential {
        &self.q2
    }

    pub fn support_radius(&self) -> f64 {
        self.q1.support_radius().max(self.q2.support_radius())
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        Ok(self.q1.eval(r)? - self.q2.eval(r)?)
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts = self.q1.breakpoints();
        pts.extend(self.q2.breakpoints());
        pts.push(self.support_radius());
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|x, y| (*x - *y).abs() < 1e-14 * self.support_radius());
        pts
    }

    /// ∫ r |p(r)| dr by adaptive quadrature split at breakpoints.
    pub fn first_moment(&self) -> Result<f64> {
        let pts = self.breakpoints();
        let mut f = |r: f64| r * self.eval(r).unwrap_or(0.0).abs();
        Ok(quad::adaptive_gk15_split(&mut f, &pts, 1e-11, 1e-14, 4000)?.value)
    }

    /// True when q1 and q2 agree at every breakpoint and on a dense
    /// merged grid.
    pub fn is_zero_on_merged_grid(&self, n: usize) -> bool {
        let a = self.support_radius();
        let mut pts = self.breakpoints();
        pts.extend((0..=n).map(|i| a * i as f64 / n as f64));
        pts.iter().all(|&r| {
            let d = self.eval(r).unwrap_or(f64::NAN);
            d == 0.0
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ramp() -> Potential {
        Potential::table(
            1.0,
            vec![Sample { r: 0.0, value: 1.0 }, Sample { r: 1.0, value: 0.0 }],
        )
        .unwrap()
    }

    #[test]
    fn eval_zero_and_piecewise() {
        let z = Potential::zero(1.0).unwrap();
        assert_eq!(z.eval(0.5).unwrap(), 0.0);

        let w = Potential::square_well(-1.0, 1.0).unwrap();
        assert_eq!(w.eval(0.5).unwrap(), -1.0);
        assert_eq!(w.eval(2.0).unwrap(), 0.0);
        assert_eq!(w.eval(0.0).unwrap(), -1.0);
        assert_eq!(w.eval(1.0).unwrap(), -1.0); // left limit at the jump
    }

    #[test]
    fn eval_table_interpolates() {
        let t = ramp();
        assert!((t.eval(0.25).unwrap() - 0.75).abs() < 1e-15);
        assert_eq!(t.eval(0.0).unwrap(), 1.0);
        assert_eq!(t.eval(1.0).unwrap(), 0.0);
    }

    #[test]
    fn left_limit_and_gaps() {
        let p = Potential::piecewise(
            2.0,
            vec![
                Piece { lo: 0.0, hi: 0.5, value: 2.0 },
                Piece { lo: 1.0, hi: 1.5, value: -3.0 },
            ],
        )
        .unwrap();
        assert_eq!(p.eval(0.5).unwrap(), 2.0); // left limit
        assert_eq!(p.eval(0.75).unwrap(), 0.0); // gap
        assert_eq!(p.eval(1.0).unwrap(), 0.0); // left limit of the gap
        assert_eq!(p.eval(1.2).unwrap(), -3.0);
        assert_eq!(p.eval(1.75).unwrap(), 0.0);
    }

    #[test]
    fn first_moment_closed_forms() {
        assert_eq!(Potential::zero(3.0).unwrap().first_moment(), 0.0);
        // q0 = -1 on [0,1]: ∫ r dr = 1/2
        let w = Potential::square_well(-1.0, 1.0).unwrap();
        assert!((w.first_moment() - 0.5).abs() < 1e-15);
        // q0 = 2 on [0,2]: 2 ∫_0^2 r dr = 4
        let b = Potential::square_well(2.0, 2.0).unwrap();
        assert!((b.first_moment() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn cumulative_table_matches_quadrature() {
        let t = Potential::table(
            1.0,
            vec![
                Sample { r: 0.1, value: 1.0 },
                Sample { r: 0.4, value: -0.5 },
                Sample { r: 0.9, value: 0.25 },
            ],
        )
        .unwrap();
        for &(absolute, r) in &[(false, 0.3), (false, 1.0), (true, 0.7), (true, 1.0)] {
            let exact = t.cumulative_impl(r, absolute);
            let mut f = |s: f64| {
                let v = t.eval(s).unwrap();
                s * if absolute { v.abs() } else { v }
            };
            let mut pts = t.breakpoints();
            pts.retain(|&x| x <= r);
            pts.push(r);
            // plus the interior sign change of the interpolant
            pts.push(0.3); // q crosses zero between 0.1 and 0.4
            pts.sort_by(f64::total_cmp);
            let q = quad::adaptive_gk15_split(&mut f, &pts, 1e-13, 1e-15, 2000).unwrap();
            assert!(
                (exact - q.value).abs() < 1e-12,
                "cumulative(abs={absolute}, r={r}): {exact} vs {}",
                q.value
            );
        }
    }

    #[test]
    fn json_round_trip_and_diagnostics() {
        let z = Potential::from_json_str(r#"{"kind":"zero","a":1.0}"#).unwrap();
        assert_eq!(z, Potential::zero(1.0).unwrap());

        let w = Potential::from_json_str(r#"{"kind":"piecewise","a":1.0,"pieces":[[0,1,-1]]}"#)
            .unwrap();
        assert_eq!(w.eval(0.3).unwrap(), -1.0);

        let err = Potential::from_json_str(r#"{"kind":"piecewise","a":1.0,"pieces":[[0,2,-1]]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("support exceeds a"), "{err}");

        let err =
            Potential::from_json_str(r#"{"kind":"table","a":1.0,"samples":[[0.5,1],[0.2,2]]}"#)
                .unwrap_err();
        assert!(err.to_string().contains("unsorted"), "{err}");

        let err = Potential::from_json_str(r#"{"kind":"zero","a":1.0"#).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));

        for p in [
            Potential::zero(2.5).unwrap(),
            Potential::square_well(-1.0, 1.0).unwrap(),
            ramp(),
        ] {
            let back = Potential::from_json_str(&p.to_json_string()).unwrap();
            assert_eq!(p, back);
        }
    }

    #[test]
    fn difference_potential_basics() {
        let d = DifferencePotential::new(
            Potential::square_well(-1.0, 1.0).unwrap(),
            Potential::square_well(-1.1, 1.0).unwrap(),
        );
        assert!((d.eval(0.5).unwrap() - 0.1).abs() < 1e-15);
        assert!((d.first_moment().unwrap() - 0.05).abs() < 1e-12);
        assert!(!d.is_zero_on_merged_grid(64));

        let same = DifferencePotential::new(
            Potential::square_well(-1.0, 1.0).unwrap(),
            Potential::square_well(-1.0, 1.0).unwrap(),
        );
        assert!(same.is_zero_on_merged_grid(64));
    }

    proptest! {
        #[test]
        fn eval_respects_support(r in 0.0f64..20.0) {
            let w = Potential::square_well(-2.0, 1.5).unwrap();
            let t = ramp();
            if r > 1.5 {
                prop_assert_eq!(w.eval(r).unwrap(), 0.0);
            }
            if r > 1.0 {
                prop_assert_eq!(t.eval(r).unwrap(), 0.0);
            }
        }

        #[test]
        fn first_moment_absolutely_homogeneous(c in -50.0f64..50.0) {
            let t = Potential::table(
                1.0,
                vec![
                    Sample { r: 0.0, value: 1.0 },
                    Sample { r: 0.6, value: -0.7 },
                    Sample { r: 1.0, value: 0.2 },
                ],
            ).unwrap();
            let base = t.first_moment();
            let scaled = t.scaled(c).first_moment();
            prop_assert!((scaled - c.abs() * base).abs() <= 1e-12 * (1.0 + scaled.abs()));
        }
    }
}

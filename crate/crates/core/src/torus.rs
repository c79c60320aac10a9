//! The flat torus `C / (Z + τZ)` as a model Teichmüller space.
//!
//! A point is the modulus `τ = x + iy` in the upper half-plane. The curve of
//! slope `p/q` has translation vector `w = p + qτ`, so with the flat metric of
//! area `y` its extremal length is `|w|²/y`. As a function of the direction
//! `(p, q)` this is the positive-definite form
//!
//! ```text
//! Ext(p, q) = (p² + 2x·pq + (x² + y²)·q²) / y,     det = 1,
//! ```
//!
//! and every quadratic differential is a constant multiple of `dz²`.
//! Because both forms in an extremal-length ratio have unit determinant, the
//! largest ratio `Λ` satisfies `Λ + 1/Λ = 2·cosh d_H`, which ties the
//! enumerated supremum to the hyperbolic distance.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::farey::{FareyNode, Slope};
use crate::forms::{cone_sup, ratio_sup, QuadForm};
use crate::supratio::{maximize, SupQuery, SupRatioResult};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TorusPoint {
    x: f64,
    y: f64,
}

impl TorusPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() || y <= 0.0 {
            return Err(Error::InvalidPoint(format!("τ = {x}+{y}i needs finite x and y > 0")));
        }
        Ok(TorusPoint { x, y })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn tau(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// `τ + t·V`.
    pub fn displaced(&self, v: TangentVector, t: f64) -> Result<Self> {
        TorusPoint::new(self.x + t * v.vx, self.y + t * v.vy)
    }

    /// The extremal-length form in slope coordinates `(p, q)`.
    pub fn ext_form(&self) -> QuadForm {
        let (x, y) = (self.x, self.y);
        QuadForm::new(1.0 / y, x / y, (x * x + y * y) / y)
    }

    /// Derivative of [`Self::ext_form`] along `V`.
    pub fn ext_form_derivative(&self, v: TangentVector) -> QuadForm {
        let (x, y) = (self.x, self.y);
        let dx = QuadForm::new(0.0, 1.0 / y, 2.0 * x / y);
        let dy = QuadForm::new(-1.0 / (y * y), -x / (y * y), 2.0 - (x * x + y * y) / (y * y));
        dx.scale(v.vx).add(&dy.scale(v.vy))
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.x, self.y)
    }
}

impl FromStr for TorusPoint {
    type Err = Error;

    /// Accepts `x+yi`, `x-yi`, `yi` and `i` (with `y` defaulting to 1).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("torus point `{s}` (expected x+yi)"));
        let body = s.trim().strip_suffix('i').ok_or_else(bad)?;
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let x = if re.is_empty() { 0.0 } else { re.parse::<f64>().map_err(|_| bad())? };
        let y = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => im.parse::<f64>().map_err(|_| bad())?,
        };
        TorusPoint::new(x, y)
    }
}

/// A weighted simple closed curve `a·γ`, a rational point of the measured
/// foliation space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeightedFoliation {
    pub weight: f64,
    pub slope: Slope,
}

impl WeightedFoliation {
    pub fn new(weight: f64, slope: Slope) -> Result<Self> {
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::InvalidArgument(format!("foliation weight {weight} must be positive")));
        }
        Ok(WeightedFoliation { weight, slope })
    }

    pub fn unit(slope: Slope) -> Self {
        WeightedFoliation { weight: 1.0, slope }
    }

    fn direction(&self) -> (f64, f64) {
        (self.slope.p() as f64, self.slope.q() as f64)
    }
}

/// Coordinate velocity `dτ/dt = vx + i·vy`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TangentVector {
    pub vx: f64,
    pub vy: f64,
}

impl TangentVector {
    pub fn new(vx: f64, vy: f64) -> Self {
        TangentVector { vx, vy }
    }

    pub fn norm(&self) -> f64 {
        self.vx.hypot(self.vy)
    }
}

/// The constant quadratic differential `c·dz²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadDiff {
    pub c: Complex64,
}

impl QuadDiff {
    /// `∬ |Φ| dx dy` over a fundamental domain of area `y`.
    pub fn norm(&self, at: &TorusPoint) -> f64 {
        self.c.norm() * at.y
    }
}

/// A real linear functional on tangent vectors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Covector {
    pub gx: f64,
    pub gy: f64,
}

impl Covector {
    pub fn apply(&self, v: TangentVector) -> f64 {
        self.gx * v.vx + self.gy * v.vy
    }
}

/// Extremal length of a real direction `(p, q)` (not necessarily rational).
pub fn extremal_length_of_direction(v: (f64, f64), at: &TorusPoint) -> f64 {
    let (x, y) = (at.x, at.y);
    let h = v.0 + v.1 * x;
    let k = v.1 * y;
    (h * h + k * k) / y
}

fn d_extremal_of_direction(v: (f64, f64), at: &TorusPoint) -> Covector {
    let (x, y) = (at.x, at.y);
    let h = v.0 + v.1 * x;
    Covector {
        gx: 2.0 * v.1 * h / y,
        gy: v.1 * v.1 - h * h / (y * y),
    }
}

pub fn extremal_length(lambda: &WeightedFoliation, at: &TorusPoint) -> f64 {
    lambda.weight * lambda.weight * extremal_length_of_direction(lambda.direction(), at)
}

/// Exact gradient of `Ext_λ` in `(x, y)`.
pub fn d_extremal(lambda: &WeightedFoliation, at: &TorusPoint) -> Covector {
    let g = d_extremal_of_direction(lambda.direction(), at);
    let a2 = lambda.weight * lambda.weight;
    Covector { gx: a2 * g.gx, gy: a2 * g.gy }
}

/// The quadratic differential whose vertical foliation is `λ`: leaves run
/// along `w = p + qτ` and the transverse measure of any curve is `a` times
/// its intersection number with `γ`, giving `c = -(a/y)²·w̄²`.
pub fn quad_diff_of_foliation(lambda: &WeightedFoliation, at: &TorusPoint) -> QuadDiff {
    let (p, q) = lambda.direction();
    let w = Complex64::new(p, 0.0) + at.tau() * q;
    let s = lambda.weight / at.y;
    QuadDiff { c: -(w.conj() * w.conj()) * (s * s) }
}

/// Beltrami differential of the affine deformation with velocity `V`.
///
/// The affine map `z ↦ z + μ z̄` sends the modulus `τ` to
/// `(τ + μτ̄)/(1 + μ)`, whose derivative at `μ = 0` is `-2iy`; hence
/// `μ(V) = iV / (2y)`.
pub fn beltrami_of_tangent(v: TangentVector, at: &TorusPoint) -> Complex64 {
    Complex64::new(v.vx, v.vy) * Complex64::new(0.0, 0.5 / at.y)
}

/// `-2 Re⟨Φ, μ(V)⟩` with `⟨Φ, μ⟩ = ∬ Φ μ dx dy`.
pub fn gardiner_pairing(phi: &QuadDiff, v: TangentVector, at: &TorusPoint) -> f64 {
    let mu = beltrami_of_tangent(v, at);
    -2.0 * (phi.c * mu).re * at.y
}

/// Recovers the constant `κ` in `μ = κ·V` at `τ = i` from the two axis
/// foliations alone, by least squares on the pairing identity over both
/// coordinate directions. Returns `i/2` when the model is consistent.
pub fn calibrated_beltrami_constant() -> Complex64 {
    let at = TorusPoint { x: 0.0, y: 1.0 };
    // -2 Re(c κ V) y = dExt(V) is linear in (Re κ, Im κ):
    // -2 y [Re(cV), -Im(cV)] · [Re κ, Im κ] = dExt(V)
    let mut ata = [[0.0f64; 2]; 2];
    let mut atb = [0.0f64; 2];
    for slope in [Slope::INFINITY, Slope::ZERO] {
        let lambda = WeightedFoliation::unit(slope);
        let c = quad_diff_of_foliation(&lambda, &at).c;
        let g = d_extremal(&lambda, &at);
        for v in [TangentVector::new(1.0, 0.0), TangentVector::new(0.0, 1.0)] {
            let cv = c * Complex64::new(v.vx, v.vy);
            let row = [-2.0 * at.y * cv.re, 2.0 * at.y * cv.im];
            let rhs = g.apply(v);
            for i in 0..2 {
                atb[i] += row[i] * rhs;
                for j in 0..2 {
                    ata[i][j] += row[i] * row[j];
                }
            }
        }
    }
    let det = ata[0][0] * ata[1][1] - ata[0][1] * ata[1][0];
    Complex64::new(
        (atb[0] * ata[1][1] - ata[0][1] * atb[1]) / det,
        (ata[0][0] * atb[1] - ata[1][0] * atb[0]) / det,
    )
}

/// Teichmüller distance as half the hyperbolic distance of the moduli,
/// `d_H = 2·asinh(|τ₁ - τ₂| / (2√(y₁y₂)))`.
pub fn teich_distance_oracle(a: &TorusPoint, b: &TorusPoint) -> f64 {
    let chord = (a.tau() - b.tau()).norm();
    (chord / (2.0 * (a.y * b.y).sqrt())).asinh()
}

/// Same distance through the largest generalized eigenvalue of the two
/// extremal-length forms: `½·log Λ`.
pub fn teich_distance_eigen(a: &TorusPoint, b: &TorusPoint) -> f64 {
    0.5 * ratio_sup(&b.ext_form(), &a.ext_form()).ln()
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub tolerance: f64,
    pub max_depth: u32,
    pub max_evals: usize,
    pub execution: Execution,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            tolerance: 1e-6,
            max_depth: 1_000_000,
            max_evals: 1_000_000,
            execution: Execution::default(),
        }
    }
}

fn cone(node: &FareyNode) -> ((f64, f64), (f64, f64)) {
    let l = node.left_vector();
    let r = node.right_vector();
    ((l.0 as f64, l.1 as f64), (r.0 as f64, r.1 as f64))
}

/// `sup_γ Ext_γ(τ₂) / Ext_γ(τ₁)` over rational slopes, pruned with the exact
/// supremum of the form ratio on each node's cone.
pub fn teich_distance_enum(
    from: &TorusPoint,
    to: &TorusPoint,
    opts: &SearchOptions,
) -> Result<SupRatioResult> {
    let (num, den) = (to.ext_form(), from.ext_form());
    let objective = |s: Slope| {
        let v = (s.p() as f64, s.q() as f64);
        num.eval(v) / den.eval(v)
    };
    let bound = |node: &FareyNode| {
        let (l, r) = cone(node);
        cone_sup(&num, &den, l, r)
    };
    maximize(
        &SupQuery::new(&objective)
            .bound(&bound)
            .tolerance(opts.tolerance)
            .max_depth(opts.max_depth)
            .max_evals(opts.max_evals)
            .execution(opts.execution),
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct TeichNorm {
    pub value: f64,
    /// Certified supremum over rational slopes.
    pub rational: SupRatioResult,
    /// Supremum over all directions, from the generalized eigenvalue.
    pub closed_form: f64,
}

/// `‖V‖ = sup_λ dExt_λ^{1/2}(V) / Ext_λ^{1/2} = ½·sup_λ dExt_λ(V) / Ext_λ`.
pub fn teich_norm(at: &TorusPoint, v: TangentVector, opts: &SearchOptions) -> Result<TeichNorm> {
    let den = at.ext_form();
    let num = at.ext_form_derivative(v);
    let objective = |s: Slope| {
        let lambda = WeightedFoliation::unit(s);
        0.5 * d_extremal(&lambda, at).apply(v) / extremal_length(&lambda, at)
    };
    let bound = |node: &FareyNode| {
        let (l, r) = cone(node);
        0.5 * cone_sup(&num, &den, l, r)
    };
    let rational = maximize(
        &SupQuery::new(&objective)
            .bound(&bound)
            .tolerance(opts.tolerance)
            .max_depth(opts.max_depth)
            .max_evals(opts.max_evals)
            .execution(opts.execution),
    )?;
    let closed_form = 0.5 * ratio_sup(&num, &den);
    Ok(TeichNorm {
        value: rational.value.max(closed_form),
        rational,
        closed_form,
    })
}

/// Label of a dual-sphere sample: a rational slope when the sampled
/// direction is one, otherwise the angle `arg(p + qτ)` in `[0, π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleDirection {
    Slope(Slope),
    Angle(f64),
}

impl fmt::Display for SampleDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleDirection::Slope(s) => write!(f, "{s}"),
            SampleDirection::Angle(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DualSample {
    pub covector: Covector,
    pub direction: SampleDirection,
}

/// Largest denominator tried when recognizing rational sample directions.
const RATIONAL_DENOMINATOR: i64 = 64;

/// Best rational approximation of `p/q` by continued fractions, accepted
/// only if it reproduces the direction to near machine precision.
fn recognize_slope(v: (f64, f64)) -> Option<Slope> {
    let scale = v.0.abs().max(v.1.abs());
    if v.1.abs() <= 1e-13 * scale {
        return Some(Slope::INFINITY);
    }
    let target = v.0 / v.1;
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut x = target;
    for _ in 0..32 {
        let a = x.floor();
        if a.abs() > 1e9 {
            break;
        }
        let a = a as i64;
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > RATIONAL_DENOMINATOR {
            break;
        }
        if (h2 as f64 - target * k2 as f64).abs() <= 1e-12 * (k2 as f64) * target.abs().max(1.0) {
            return Slope::new(h2, k2).ok();
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = x - a as f64;
        if frac.abs() < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    None
}

/// Samples the image of `{λ : Ext_λ(τ) = 1}` under `λ ↦ dExt_λ`.
///
/// Directions are spaced uniformly in `φ = arg(p + qτ)`; the constraint
/// `Ext = 1` fixes `|p + qτ| = √y`. Directions that are rational slopes
/// (for instance `1/0` at `φ = 0`) are labelled and recomputed exactly from
/// the normalized curve.
pub fn dual_sphere(at: &TorusPoint, n: usize) -> Result<Vec<DualSample>> {
    if n < 16 {
        return Err(Error::InvalidArgument(format!("dual sphere needs at least 16 samples, got {n}")));
    }
    let (x, y) = (at.x, at.y);
    let root_y = y.sqrt();
    Ok((0..n)
        .map(|j| {
            let phi = std::f64::consts::PI * j as f64 / n as f64;
            let q = phi.sin() / root_y;
            let p = root_y * phi.cos() - q * x;
            match recognize_slope((p, q)) {
                Some(slope) => {
                    let ext = extremal_length(&WeightedFoliation::unit(slope), at);
                    // PF normalization: weight 1/√Ext puts λ on Ext = 1
                    let lambda = WeightedFoliation { weight: 1.0 / ext.sqrt(), slope };
                    DualSample {
                        covector: d_extremal(&lambda, at),
                        direction: SampleDirection::Slope(slope),
                    }
                }
                None => DualSample {
                    covector: d_extremal_of_direction((p, q), at),
                    direction: SampleDirection::Angle(phi),
                },
            }
        })
        .collect())
}

/// `Ext_λ(τ)^{1/2} / K^{1/2}` with `K = exp(2·d_T(τ₀, τ))` the dilatation of
/// the extremal quasiconformal map from the basepoint.
pub fn normalized_extremal_functional(
    base: &TorusPoint,
    at: &TorusPoint,
    lambda: &WeightedFoliation,
) -> f64 {
    extremal_length(lambda, at).sqrt() / teich_distance_oracle(base, at).exp()
}

#[derive(Clone, Debug, Serialize)]
pub struct GmRow {
    pub k: i64,
    pub slope: Slope,
    pub extremal_length: f64,
    pub dilatation: f64,
    pub normalized_value: f64,
}

/// `ℰ` along the twist sequence `τ_k = τ₀ + k`.
pub fn twist_sequence_rows(base: &TorusPoint, ks: &[i64], curves: &[Slope]) -> Result<Vec<GmRow>> {
    let mut rows = Vec::with_capacity(ks.len() * curves.len());
    for &k in ks {
        let at = TorusPoint::new(base.x + k as f64, base.y)?;
        let dilatation = (2.0 * teich_distance_oracle(base, &at)).exp();
        for &slope in curves {
            let lambda = WeightedFoliation::unit(slope);
            rows.push(GmRow {
                k,
                slope,
                extremal_length: extremal_length(&lambda, &at),
                dilatation,
                normalized_value: normalized_extremal_functional(base, &at, &lambda),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    fn tp(x: f64, y: f64) -> TorusPoint {
        TorusPoint::new(x, y).unwrap()
    }

    const I: TorusPoint = TorusPoint { x: 0.0, y: 1.0 };

    #[test]
    fn parse_points() {
        assert_eq!("i".parse::<TorusPoint>().unwrap(), I);
        assert_eq!("2i".parse::<TorusPoint>().unwrap(), tp(0.0, 2.0));
        assert_eq!("0.5+2i".parse::<TorusPoint>().unwrap(), tp(0.5, 2.0));
        assert_eq!("-1.5+0.25i".parse::<TorusPoint>().unwrap(), tp(-1.5, 0.25));
        assert_eq!("1e-3+1e-1i".parse::<TorusPoint>().unwrap(), tp(1e-3, 0.1));
        assert_eq!("3+i".parse::<TorusPoint>().unwrap(), tp(3.0, 1.0));
        assert!(matches!("1-2i".parse::<TorusPoint>(), Err(Error::InvalidPoint(_))));
        assert!("1+2".parse::<TorusPoint>().is_err());
        let p = tp(-0.25, 1.5);
        assert_eq!(p.to_string().parse::<TorusPoint>().unwrap(), p);
    }

    #[test]
    fn extremal_length_examples() {
        assert_eq!(extremal_length(&WeightedFoliation::unit(s(1, 0)), &I), 1.0);
        assert_eq!(extremal_length(&WeightedFoliation::unit(s(1, 1)), &I), 2.0);
        let three = WeightedFoliation::new(3.0, s(1, 0)).unwrap();
        assert_eq!(extremal_length(&three, &I), 9.0);
    }

    /// Extremal length as `sup_σ L_σ(γ)² / A(σ)` over the flat metrics
    /// `σ = |dz| · (1 + ε·f)` with `f` a trigonometric bump, computed by
    /// quadrature. The flat metric (`ε = 0`) must win.
    #[test]
    fn flat_metric_realizes_extremal_length() {
        let n = 400;
        let ratio = |eps: f64, freq: f64| {
            let sigma = |u: f64, v: f64| 1.0 + eps * (2.0 * std::f64::consts::PI * (freq * u + v)).cos();
            let h = 1.0 / n as f64;
            let mut area = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let (u, v) = ((i as f64 + 0.5) * h, (j as f64 + 0.5) * h);
                    area += sigma(u, v).powi(2) * h * h;
                }
            }
            // shortest straight representative of slope 1/1 over a family of offsets
            let mut best = f64::INFINITY;
            for o in 0..50 {
                let off = o as f64 / 50.0;
                let mut len = 0.0;
                for k in 0..n {
                    let t = (k as f64 + 0.5) / n as f64;
                    len += sigma((t + off).fract(), t) * 2f64.sqrt() / n as f64;
                }
                best = best.min(len);
            }
            best * best / area
        };
        let flat = ratio(0.0, 0.0);
        assert!((flat - 2.0).abs() < 1e-9);
        for (eps, freq) in [(0.3, 1.0), (0.5, 2.0), (0.2, -1.0)] {
            assert!(ratio(eps, freq) <= flat + 1e-9);
        }
    }

    #[test]
    fn gradient_examples() {
        let g = d_extremal(&WeightedFoliation::unit(s(1, 0)), &I);
        assert_eq!((g.gx, g.gy), (0.0, -1.0));
        let g = d_extremal(&WeightedFoliation::unit(s(0, 1)), &I);
        assert_eq!((g.gx, g.gy), (0.0, 1.0));
        assert_eq!(g.apply(TangentVector::new(1.0, 0.0)), 0.0);
    }

    #[test]
    fn gradient_matches_central_differences() {
        let h = 1e-6;
        for (x, y) in [(0.3, 0.7), (-1.2, 2.5), (1.7, 0.4)] {
            for slope in [s(2, 3), s(-5, 2), s(1, 0), s(7, 1)] {
                let lambda = WeightedFoliation::new(1.3, slope).unwrap();
                let g = d_extremal(&lambda, &tp(x, y));
                let fx = (extremal_length(&lambda, &tp(x + h, y)) - extremal_length(&lambda, &tp(x - h, y))) / (2.0 * h);
                let fy = (extremal_length(&lambda, &tp(x, y + h)) - extremal_length(&lambda, &tp(x, y - h))) / (2.0 * h);
                let scale = g.gx.abs().max(g.gy.abs()).max(1.0);
                assert!((fx - g.gx).abs() <= 1e-6 * scale);
                assert!((fy - g.gy).abs() <= 1e-6 * scale);
            }
        }
    }

    #[test]
    fn quad_diff_examples() {
        let phi = quad_diff_of_foliation(&WeightedFoliation::unit(s(1, 0)), &I);
        assert_eq!(phi.c, Complex64::new(-1.0, 0.0));
        // vertical leaves are where c·dz² < 0: horizontal for c = -1
        let phi = quad_diff_of_foliation(&WeightedFoliation::unit(s(0, 1)), &I);
        assert_eq!(phi.c, Complex64::new(1.0, 0.0));
        let one = quad_diff_of_foliation(&WeightedFoliation::unit(s(2, 3)), &tp(0.4, 1.3));
        let two = quad_diff_of_foliation(&WeightedFoliation::new(2.0, s(2, 3)).unwrap(), &tp(0.4, 1.3));
        assert!((two.c - one.c * 4.0).norm() < 1e-12);
    }

    #[test]
    fn quad_diff_vertical_measure_is_lambda() {
        // transverse measure of curve δ is |Re ∫ √Φ| = a·i(γ, δ)
        let at = tp(0.37, 1.9);
        let lambda = WeightedFoliation::new(1.7, s(3, -2)).unwrap();
        let phi = quad_diff_of_foliation(&lambda, &at);
        let root = phi.c.sqrt();
        for delta in [s(1, 0), s(0, 1), s(5, 3)] {
            let u = Complex64::new(delta.p() as f64, 0.0) + at.tau() * delta.q() as f64;
            let measure = (root * u).re.abs();
            let expected = lambda.weight * lambda.slope.intersection(&delta) as f64;
            assert!((measure - expected).abs() < 1e-12, "{measure} vs {expected}");
        }
        // and the leaves are parallel to the curve
        let w = Complex64::new(3.0, 0.0) + at.tau() * -2.0;
        let along = phi.c * w * w;
        assert!(along.im.abs() < 1e-12 && along.re < 0.0);
    }

    #[test]
    fn gardiner_examples() {
        let phi = quad_diff_of_foliation(&WeightedFoliation::unit(s(1, 0)), &I);
        assert_eq!(gardiner_pairing(&phi, TangentVector::new(0.0, 0.0), &I), 0.0);
        assert!((gardiner_pairing(&phi, TangentVector::new(0.0, 1.0), &I) + 1.0).abs() < 1e-15);
        let phi = quad_diff_of_foliation(&WeightedFoliation::unit(s(0, 1)), &I);
        assert!((gardiner_pairing(&phi, TangentVector::new(0.0, 1.0), &I) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn calibration_recovers_half_i() {
        let k = calibrated_beltrami_constant();
        assert!((k - Complex64::new(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn kerckhoff_norm_identity() {
        let at = tp(-0.8, 0.6);
        for slope in [s(1, 0), s(4, 7), s(-3, 1)] {
            let lambda = WeightedFoliation::new(0.7, slope).unwrap();
            let phi = quad_diff_of_foliation(&lambda, &at);
            let ext = extremal_length(&lambda, &at);
            assert!((phi.norm(&at) - ext).abs() <= 1e-12 * ext);
        }
    }

    #[test]
    fn distance_oracle_examples() {
        assert_eq!(teich_distance_oracle(&I, &I), 0.0);
        let d = teich_distance_oracle(&I, &tp(0.0, 2.0));
        assert!((d - 0.5 * 2f64.ln()).abs() < 1e-15);
        assert!((d - 0.346_573_6).abs() < 1e-7);
        let (a, b) = (tp(0.2, 0.7), tp(-1.1, 1.9));
        let shifted = teich_distance_oracle(&tp(1.2, 0.7), &tp(-0.1, 1.9));
        assert!((teich_distance_oracle(&a, &b) - shifted).abs() < 1e-14);
        assert!((teich_distance_oracle(&a, &b) - teich_distance_oracle(&b, &a)).abs() < 1e-15);
    }

    #[test]
    fn two_oracle_routes_agree() {
        let pts = [tp(0.0, 1.0), tp(0.3, 0.2), tp(-1.9, 4.8), tp(1.4, 0.9), tp(0.0, 5.0)];
        for a in &pts {
            for b in &pts {
                let d1 = teich_distance_oracle(a, b);
                let d2 = teich_distance_eigen(a, b);
                assert!((d1 - d2).abs() < 1e-12, "{a} {b}: {d1} vs {d2}");
            }
        }
    }

    #[test]
    fn enumerated_distance_i_to_2i() {
        let r = teich_distance_enum(&I, &tp(0.0, 2.0), &SearchOptions::default()).unwrap();
        assert!(r.certified);
        assert_eq!(r.value, 2.0);
        assert_eq!(r.argmax, s(0, 1));
    }

    #[test]
    fn enumerated_distance_matches_brute_force_depth_20() {
        let (a, b) = (I, tp(0.0, 2.0));
        let f = |sl: Slope| {
            let l = WeightedFoliation::unit(sl);
            extremal_length(&l, &b) / extremal_length(&l, &a)
        };
        let (brute, at) = crate::supratio::brute_force(&f, 20, Execution::Parallel).unwrap();
        assert_eq!((brute, at), (2.0, s(0, 1)));
    }

    #[test]
    fn enumerated_distance_irrational_maximizer() {
        let opts = SearchOptions::default();
        let (a, b) = (I, tp(0.5, 1.0));
        let r = teich_distance_enum(&a, &b, &opts).unwrap();
        assert!(r.certified);
        let oracle = teich_distance_oracle(&a, &b);
        assert!(0.5 * r.value.ln() <= oracle + 1e-15);
        assert!(oracle <= 0.5 * (r.value + opts.tolerance).ln());
        let back = teich_distance_enum(&b, &a, &opts).unwrap();
        assert!((0.5 * back.value.ln() - 0.5 * r.value.ln()).abs() <= 2.0 * opts.tolerance);
    }

    #[test]
    fn norm_examples() {
        let opts = SearchOptions::default();
        let zero = teich_norm(&I, TangentVector::new(0.0, 0.0), &opts).unwrap();
        assert_eq!(zero.value, 0.0);
        let n = teich_norm(&I, TangentVector::new(1.0, 0.0), &opts).unwrap();
        assert!((n.value - 0.5).abs() < 1e-6 && (n.closed_form - 0.5).abs() < 1e-12);
        let n = teich_norm(&tp(0.0, 2.0), TangentVector::new(0.0, 2.0), &opts).unwrap();
        assert!((n.value - 0.5).abs() < 1e-6);
    }

    #[test]
    fn norm_is_derivative_of_distance() {
        let (at, v) = (I, TangentVector::new(1.0, 0.0));
        let t = 1e-5;
        let fd = teich_distance_oracle(&at, &at.displaced(v, t).unwrap()) / t;
        assert!((fd - 0.5).abs() < 1e-5);
    }

    #[test]
    fn dual_sphere_at_i_is_symmetric() {
        let samples = dual_sphere(&I, 64).unwrap();
        assert_eq!(samples[0].direction, SampleDirection::Slope(s(1, 0)));
        assert_eq!(samples[32].direction, SampleDirection::Slope(s(0, 1)));
        assert_eq!(samples[16].direction, SampleDirection::Slope(s(1, 1)));
        // swapping 1/0 and 0/1 reflects the image (gx, gy) -> (gx, -gy)
        let pts: Vec<(f64, f64)> = samples.iter().map(|d| (d.covector.gx, d.covector.gy)).collect();
        for &(gx, gy) in &pts {
            assert!(pts.iter().any(|&(hx, hy)| (hx - gx).abs() < 1e-12 && (hy + gy).abs() < 1e-12));
        }
        assert!(dual_sphere(&I, 15).is_err());
    }

    #[test]
    fn dual_samples_lie_on_unit_extremal_length() {
        let at = tp(0.7, 0.45);
        for d in dual_sphere(&at, 40).unwrap() {
            let c = d.covector;
            // image is the circle of radius 1/y
            assert!((c.gx.hypot(c.gy) - 1.0 / at.y).abs() < 1e-12);
        }
    }

    #[test]
    fn normalized_functional_basics() {
        let lambda = WeightedFoliation::unit(s(2, 1));
        let at = tp(0.3, 1.4);
        let e = normalized_extremal_functional(&at, &at, &lambda);
        assert!((e - extremal_length(&lambda, &at).sqrt()).abs() < 1e-15);
        let scaled = WeightedFoliation::new(3.0, s(2, 1)).unwrap();
        let e3 = normalized_extremal_functional(&I, &at, &scaled) / 3.0;
        assert!((e3 - normalized_extremal_functional(&I, &at, &lambda)).abs() < 1e-14);
    }

    #[test]
    fn twist_sequence_ratios_converge_to_intersection_ratio() {
        let rows = twist_sequence_rows(&I, &[1, 10, 50, 1000], &[s(0, 1), s(1, 2)]).unwrap();
        let ratio = |k: i64| {
            let e: Vec<f64> = rows.iter().filter(|r| r.k == k).map(|r| r.normalized_value).collect();
            e[0] / e[1]
        };
        // i(1/0, 0/1) / i(1/0, 1/2) = 1/2
        assert!((ratio(1000) - 0.5).abs() < 1e-3);
        assert!((ratio(1000) - 0.5).abs() < (ratio(10) - 0.5).abs());
    }
}

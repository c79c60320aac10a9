//! The once-punctured torus in Fricke trace coordinates.
//!
//! A cusped punctured-torus group is determined up to conjugacy by the
//! traces `(x, y, z) = (tr A, tr B, tr AB)`, subject to the Markov relation
//! `x² + y² + z² = xyz`. Slopes `1/0`, `0/1` and `1/1` carry the traces `x`,
//! `y` and `z`; the trace of every other simple closed curve follows from the
//! Farey recursion `t(a ⊕ b) = t(a)·t(b) − t(a ⊖ b)`, and its hyperbolic
//! length is `2·acosh(t/2)`.
//!
//! Traces grow doubly exponentially with Farey depth, so the recursion is
//! run on `ln t` together with the logarithmic gradient `∇t / t`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::farey::{det, root_slopes, FareyNode, Slope};
use crate::supratio::{maximize, maximize_levels_many, maximize_levels_with, Limits, SupQuery, SupRatioResult};

/// Relative tolerance on the Markov relation.
pub const MARKOV_TOL: f64 = 1e-9;
/// Traces at or below `2 + DEGENERATE_MARGIN` are treated as degenerate.
pub const DEGENERATE_MARGIN: f64 = 1e-12;

/// Which root of `z² − xyz + x² + y² = 0` a point uses for its third trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Upper,
    Lower,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MarkovPoint {
    x: f64,
    y: f64,
    z: f64,
}

fn relative_residual(x: f64, y: f64, z: f64) -> f64 {
    (x * x + y * y + z * z - x * y * z).abs() / (x * y * z)
}

impl MarkovPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        for (name, t) in [("x", x), ("y", y), ("z", z)] {
            if !t.is_finite() || t <= 2.0 + DEGENERATE_MARGIN {
                return Err(Error::InvalidPoint(format!("trace {name} = {t} must exceed 2")));
            }
        }
        let residual = relative_residual(x, y, z);
        if residual > MARKOV_TOL {
            return Err(Error::InvalidPoint(format!(
                "({x}, {y}, {z}) is off the Markov variety (relative residual {residual:e})"
            )));
        }
        Ok(MarkovPoint { x, y, z })
    }

    /// Chart point on the upper branch (`z` the larger root).
    pub fn from_parameters(x: f64, y: f64) -> Result<Self> {
        Self::from_chart(x, y, Branch::Upper)
    }

    pub fn from_chart(x: f64, y: f64, branch: Branch) -> Result<Self> {
        if !(x > 2.0 + DEGENERATE_MARGIN) || !(y > 2.0 + DEGENERATE_MARGIN) {
            return Err(Error::OutOfChart(format!("chart coordinates ({x}, {y}) must exceed 2")));
        }
        let s = x * x + y * y;
        let disc = x * x * y * y - 4.0 * s;
        if !(disc >= 0.0) {
            return Err(Error::OutOfChart(format!(
                "no real trace z over ({x}, {y}): x²y² < 4(x² + y²)"
            )));
        }
        let upper = 0.5 * (x * y + disc.sqrt());
        let z = match branch {
            Branch::Upper => upper,
            // product of the roots is x² + y²
            Branch::Lower => s / upper,
        };
        MarkovPoint::new(x, y, z).map_err(|e| Error::OutOfChart(e.to_string()))
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn residual(&self) -> f64 {
        relative_residual(self.x, self.y, self.z)
    }

    pub fn branch(&self) -> Branch {
        if 2.0 * self.z >= self.x * self.y {
            Branch::Upper
        } else {
            Branch::Lower
        }
    }

    /// Point at `(x, y) + t·(vx, vy)` on this point's branch of the chart.
    pub fn chart_displaced(&self, vx: f64, vy: f64, t: f64) -> Result<Self> {
        MarkovPoint::from_chart(self.x + t * vx, self.y + t * vy, self.branch())
    }

    /// Gradient of `x² + y² + z² − xyz`.
    fn normal(&self) -> [f64; 3] {
        let (x, y, z) = (self.x, self.y, self.z);
        [2.0 * x - y * z, 2.0 * y - x * z, 2.0 * z - x * y]
    }
}

impl fmt::Display for MarkovPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.x, self.y, self.z)
    }
}

impl FromStr for MarkovPoint {
    type Err = Error;

    /// `x,y,z` for explicit traces, `chart:x,y` for the upper chart branch.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("punctured-torus point `{s}` (expected x,y,z or chart:x,y)"));
        let s = s.trim();
        let (chart, body) = match s.strip_prefix("chart:") {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let nums = body
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        match (chart, nums.as_slice()) {
            (true, [x, y]) => MarkovPoint::from_parameters(*x, *y),
            (false, [x, y, z]) => MarkovPoint::new(*x, *y, *z),
            _ => Err(bad()),
        }
    }
}

/// Trace of a curve together with its gradient in `(x, y, z)`, both stored
/// logarithmically: `log_trace = ln t` and `log_grad = ∇t / t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceJet {
    pub log_trace: f64,
    pub log_grad: [f64; 3],
}

impl TraceJet {
    pub fn trace(&self) -> f64 {
        self.log_trace.exp()
    }

    pub fn grad(&self) -> [f64; 3] {
        let t = self.trace();
        self.log_grad.map(|g| g * t)
    }
}

trait LogTrace: Copy {
    fn base(point: &MarkovPoint, axis: usize) -> Self;
    /// Jet of `a ⊕ b` given `a`, `b` and `c = a ⊖ b`.
    fn mediant(a: &Self, b: &Self, c: &Self) -> Self;
}

fn base_trace(point: &MarkovPoint, axis: usize) -> f64 {
    [point.x, point.y, point.z][axis]
}

impl LogTrace for f64 {
    fn base(point: &MarkovPoint, axis: usize) -> Self {
        base_trace(point, axis).ln()
    }

    fn mediant(a: &Self, b: &Self, c: &Self) -> Self {
        let rho = (c - a - b).exp();
        a + b + (-rho).ln_1p()
    }
}

impl LogTrace for TraceJet {
    fn base(point: &MarkovPoint, axis: usize) -> Self {
        let t = base_trace(point, axis);
        let mut log_grad = [0.0; 3];
        log_grad[axis] = 1.0 / t;
        TraceJet { log_trace: t.ln(), log_grad }
    }

    fn mediant(a: &Self, b: &Self, c: &Self) -> Self {
        // t = ta·tb − tc; with ρ = tc/(ta·tb):
        // ∇t/t = (∇ta/ta + ∇tb/tb − ρ·∇tc/tc) / (1 − ρ)
        let rho = (c.log_trace - a.log_trace - b.log_trace).exp();
        let inv = 1.0 / (1.0 - rho);
        let mut log_grad = [0.0; 3];
        for (k, g) in log_grad.iter_mut().enumerate() {
            *g = (a.log_grad[k] + b.log_grad[k] - rho * c.log_grad[k]) * inv;
        }
        TraceJet {
            log_trace: a.log_trace + b.log_trace + (-rho).ln_1p(),
            log_grad,
        }
    }
}

/// Axis index of a root slope in `(x, y, z)`.
fn root_axis(s: Slope) -> Option<usize> {
    match (s.p(), s.q()) {
        (1, 0) => Some(0),
        (0, 1) => Some(1),
        (1, 1) => Some(2),
        _ => None,
    }
}

/// `(left, right, opposite)` jets for each of [`FareyNode::roots`].
fn root_states<J: LogTrace>(point: &MarkovPoint) -> [[J; 3]; 3] {
    let jet = |axis| J::base(point, axis);
    [[1, 2, 0], [2, 0, 1], [0, 1, 2]].map(|axes| axes.map(jet))
}

/// Jets of a node's children from the node's `(left, right, opposite)`
/// jets and the mediant jet.
fn child_states<J: LogTrace>([l, r, _]: [J; 3], m: J) -> ([J; 3], [J; 3]) {
    ([l, m, r], [m, r, l])
}

fn descend<J: LogTrace>(point: &MarkovPoint, target: Slope) -> Result<J> {
    let jet = |axis| J::base(point, axis);
    if let Some(axis) = root_axis(target) {
        return Ok(jet(axis));
    }
    let roots = FareyNode::roots();
    let k = (0..3)
        .find(|&k| roots[k].contains(target))
        .expect("every non-root slope lies in one root interval");
    let mut node = roots[k];
    let [mut jl, mut jr, mut jc] = root_states::<J>(point)[k];
    loop {
        let m = node.mediant()?;
        let jm = J::mediant(&jl, &jr, &jc);
        if m == target {
            return Ok(jm);
        }
        let (left, right) = node.children()?;
        let (lj, rj) = child_states([jl, jr, jc], jm);
        [jl, jr, jc] = if left.contains(target) {
            node = left;
            lj
        } else {
            node = right;
            rj
        };
    }
}

/// Trace jet of the geodesic in class `s`.
pub fn trace_of_slope(point: &MarkovPoint, s: Slope) -> Result<TraceJet> {
    descend(point, s)
}

/// `ln t` for the geodesic in class `s`, without the gradient.
pub fn log_trace_of_slope(point: &MarkovPoint, s: Slope) -> Result<f64> {
    descend(point, s)
}

/// `2·acosh(t/2)` from `ln t`.
fn length_from_log_trace(log_t: f64) -> Result<f64> {
    let r = (-2.0 * log_t).exp() * 4.0; // (2/t)²
    if !(r < 1.0) {
        return Err(Error::InvalidPoint(format!("trace {} ≤ 2: not a hyperbolic element", log_t.exp())));
    }
    Ok(2.0 * (log_t - std::f64::consts::LN_2 + (1.0 + (1.0 - r).sqrt()).ln()))
}

/// A weighted simple closed curve, a rational point of measured lamination space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeightedLamination {
    pub weight: f64,
    pub slope: Slope,
}

impl WeightedLamination {
    pub fn new(weight: f64, slope: Slope) -> Result<Self> {
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::InvalidArgument(format!("lamination weight {weight} must be positive")));
        }
        Ok(WeightedLamination { weight, slope })
    }

    pub fn unit(slope: Slope) -> Self {
        WeightedLamination { weight: 1.0, slope }
    }
}

/// Tangent vector `(wx, wy, wz)` to the Markov variety.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PTTangent {
    pub wx: f64,
    pub wy: f64,
    pub wz: f64,
}

impl PTTangent {
    pub fn new(at: &MarkovPoint, wx: f64, wy: f64, wz: f64) -> Result<Self> {
        let n = at.normal();
        let dot = n[0] * wx + n[1] * wy + n[2] * wz;
        let scale = n[0].abs() * wx.abs() + n[1].abs() * wy.abs() + n[2].abs() * wz.abs();
        let residual = if scale == 0.0 { 0.0 } else { dot.abs() / scale };
        if residual > MARKOV_TOL {
            return Err(Error::NotTangent(residual));
        }
        Ok(PTTangent { wx, wy, wz })
    }

    /// Lifts a chart velocity `(vx, vy)` by differentiating the Markov
    /// relation implicitly for `wz`.
    pub fn lift(at: &MarkovPoint, vx: f64, vy: f64) -> Result<Self> {
        let n = at.normal();
        if n[2].abs() <= 1e-12 * (at.x * at.y) {
            return Err(Error::OutOfChart(format!("{at} is a branch point of the (x, y) chart")));
        }
        Ok(PTTangent { wx: vx, wy: vy, wz: -(n[0] * vx + n[1] * vy) / n[2] })
    }

    pub fn scaled(&self, s: f64) -> Self {
        PTTangent { wx: s * self.wx, wy: s * self.wy, wz: s * self.wz }
    }

    pub fn plus(&self, o: &PTTangent) -> Self {
        PTTangent { wx: self.wx + o.wx, wy: self.wy + o.wy, wz: self.wz + o.wz }
    }

    fn as_array(&self) -> [f64; 3] {
        [self.wx, self.wy, self.wz]
    }
}

/// Hyperbolic length `weight · 2·acosh(t/2)`.
pub fn length(at: &MarkovPoint, lambda: &WeightedLamination) -> Result<f64> {
    Ok(lambda.weight * length_from_log_trace(log_trace_of_slope(at, lambda.slope)?)?)
}

/// `dℓ_λ = weight · 2/√(t² − 4) · ∇t`, as a covector on `(wx, wy, wz)`.
pub fn d_length(at: &MarkovPoint, lambda: &WeightedLamination) -> Result<[f64; 3]> {
    let jet = trace_of_slope(at, lambda.slope)?;
    length_from_log_trace(jet.log_trace)?;
    let r = (-2.0 * jet.log_trace).exp() * 4.0;
    let f = lambda.weight * 2.0 / (1.0 - r).sqrt();
    Ok(jet.log_grad.map(|g| f * g))
}

/// How the supremum over curves is truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMode {
    /// Full enumeration to `max_depth`; never certified.
    FrontierHeuristic,
    /// Best-first search pruned by the collar / trace-submultiplicativity bound.
    Collar,
}

#[derive(Clone, Copy, Debug)]
pub struct ThurstonOptions {
    pub tolerance: f64,
    pub max_depth: u32,
    pub max_evals: usize,
    pub bound: BoundMode,
    pub execution: Execution,
}

impl Default for ThurstonOptions {
    fn default() -> Self {
        ThurstonOptions {
            tolerance: 1e-6,
            max_depth: 14,
            max_evals: 10_000_000,
            bound: BoundMode::FrontierHeuristic,
            execution: Execution::default(),
        }
    }
}

/// Width `2·asinh(1/sinh(ℓ/2))` of the embedded collar about a geodesic of
/// length `ℓ`; every crossing geodesic spends at least this much length
/// inside it.
pub fn collar_width(len: f64) -> f64 {
    2.0 * (1.0 / (0.5 * len).sinh()).asinh()
}

/// `t(a ⊕ b) < t(a)·t(b)` gives `ℓ(a ⊕ b) ≤ ℓ(a) + ℓ(b) + SUBADDITIVE_SLACK`:
/// `2·acosh(2C) − 2·acosh(C)` is decreasing for `C ≥ 1`, so it is at most
/// `2·acosh 2`.
pub const SUBADDITIVE_SLACK: f64 = 2.633_915_793_849_633_4;

/// Upper bound on `ℓ_Y(s)/ℓ_X(s)` over slopes `s = a·l + b·r` strictly inside
/// `node`, with `a, b ≥ 1`.
///
/// Numerator: by induction along the descent,
/// `ℓ_Y(s) ≤ a·(ℓ_Y(l) + δ) + b·(ℓ_Y(r) + δ)`.
/// Denominator: for any curve `γ` outside the open interval,
/// `i(s, γ) = a·|det(l, γ)| + b·|det(r, γ)|` and the collar lemma gives
/// `ℓ_X(s) ≥ i(s, γ)·w_X(γ)`. Both sides are homogeneous in `(a, b)`, so the
/// supremum over the cone is attained at `a + b = 1` on a breakpoint of the
/// piecewise-linear lower envelope.
pub fn collar_bound(from: &MarkovPoint, to: &MarkovPoint, node: &FareyNode) -> Result<f64> {
    let l = node.left_vector();
    let r = node.right_vector();
    let len_y = |s: Slope| length(to, &WeightedLamination::unit(s));
    let num_l = len_y(node.left)? + SUBADDITIVE_SLACK;
    let num_r = len_y(node.right)? + SUBADDITIVE_SLACK;

    let mut witnesses = vec![node.left, node.right, node.opposite()?];
    witnesses.extend(root_slopes());
    let mut pieces: Vec<(f64, f64)> = Vec::new();
    for g in witnesses {
        if node.contains(g) {
            continue;
        }
        let w = collar_width(length(from, &WeightedLamination::unit(g))?);
        let al = det(l, g.vector()).unsigned_abs() as f64;
        let ar = det(r, g.vector()).unsigned_abs() as f64;
        // piece as a function of a ∈ [0, 1], b = 1 − a
        pieces.push((w * al, w * ar));
    }
    let envelope = |a: f64| {
        pieces
            .iter()
            .map(|(cl, cr)| a * cl + (1.0 - a) * cr)
            .fold(0.0f64, f64::max)
    };
    let mut candidates = vec![0.0, 1.0];
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            let (a1, b1) = pieces[i];
            let (a2, b2) = pieces[j];
            // a·a1 + (1−a)·b1 = a·a2 + (1−a)·b2
            let denom = (a1 - b1) - (a2 - b2);
            if denom != 0.0 {
                let a = (b2 - b1) / denom;
                if (0.0..=1.0).contains(&a) {
                    candidates.push(a);
                }
            }
        }
    }
    let mut best = 0.0f64;
    for a in candidates {
        let d = envelope(a);
        let n = a * num_l + (1.0 - a) * num_r;
        best = best.max(if d > 0.0 { n / d } else { f64::INFINITY });
    }
    Ok(best)
}

fn limits(opts: &ThurstonOptions) -> Limits {
    Limits {
        tolerance: opts.tolerance,
        max_depth: opts.max_depth,
        max_evals: opts.max_evals,
        execution: opts.execution,
    }
}

/// `sup_γ ℓ_Y(γ)/ℓ_X(γ)`; the directed distance is its logarithm.
///
/// The heuristic mode carries the trace triples of each Farey triangle down
/// the tree, so every slope costs one recursion step at each point.
pub fn thurston_distance(
    from: &MarkovPoint,
    to: &MarkovPoint,
    opts: &ThurstonOptions,
) -> Result<SupRatioResult> {
    let ratio = |ly: f64, lx: f64| -> Result<f64> { Ok(length_from_log_trace(ly)? / length_from_log_trace(lx)?) };
    let objective = |s: Slope| {
        match (log_trace_of_slope(to, s), log_trace_of_slope(from, s)) {
            (Ok(a), Ok(b)) => ratio(a, b).unwrap_or(f64::NAN),
            _ => f64::NAN,
        }
    };
    match opts.bound {
        BoundMode::FrontierHeuristic => {
            let (fx, fy) = (root_states::<f64>(from), root_states::<f64>(to));
            let roots = [0, 1, 2].map(|k| (fx[k], fy[k]));
            maximize_levels_with(&limits(opts), &objective, roots, |_, (jx, jy)| {
                let mx = f64::mediant(&jx[0], &jx[1], &jx[2]);
                let my = f64::mediant(&jy[0], &jy[1], &jy[2]);
                let (lx, rx) = child_states(*jx, mx);
                let (ly, ry) = child_states(*jy, my);
                Ok((ratio(my, mx)?, (lx, ly), (rx, ry)))
            })
        }
        BoundMode::Collar => {
            let bound = |node: &FareyNode| collar_bound(from, to, node).unwrap_or(f64::INFINITY);
            maximize(
                &SupQuery::new(&objective)
                    .bound(&bound)
                    .tolerance(opts.tolerance)
                    .max_depth(opts.max_depth)
                    .max_evals(opts.max_evals)
                    .execution(opts.execution),
            )
        }
    }
}

/// `ln` of [`thurston_distance`]'s supremum.
pub fn thurston_log_distance(from: &MarkovPoint, to: &MarkovPoint, opts: &ThurstonOptions) -> Result<f64> {
    Ok(thurston_distance(from, to, opts)?.value.ln())
}

/// `dℓ(V)/ℓ` from a trace jet.
fn log_derivative(jet: &TraceJet, v: &PTTangent) -> Result<f64> {
    let len = length_from_log_trace(jet.log_trace)?;
    let r = (-2.0 * jet.log_trace).exp() * 4.0;
    let w = v.as_array();
    let dot = jet.log_grad[0] * w[0] + jet.log_grad[1] * w[1] + jet.log_grad[2] * w[2];
    Ok(2.0 * dot / (1.0 - r).sqrt() / len)
}

/// `‖V‖ = sup_λ dℓ_λ(V)/ℓ_λ(X)`; weights cancel, so the sup runs over curves.
/// Always frontier-heuristic.
pub fn thurston_norm(at: &MarkovPoint, v: &PTTangent, opts: &ThurstonOptions) -> Result<SupRatioResult> {
    let mut all = thurston_norms(at, std::slice::from_ref(v), opts)?;
    Ok(all.pop().expect("one vector"))
}

/// [`thurston_norm`] for several tangent vectors at one point, sharing the
/// trace jets of every curve.
pub fn thurston_norms(at: &MarkovPoint, vs: &[PTTangent], opts: &ThurstonOptions) -> Result<Vec<SupRatioResult>> {
    let values = |jet: &TraceJet| -> Result<Vec<f64>> { vs.iter().map(|v| log_derivative(jet, v)).collect() };
    let root_value = |s: Slope| {
        trace_of_slope(at, s)
            .and_then(|j| values(&j))
            .unwrap_or_else(|_| vec![f64::NAN; vs.len()])
    };
    maximize_levels_many(&limits(opts), vs.len(), &root_value, root_states::<TraceJet>(at), |_, j| {
        let m = TraceJet::mediant(&j[0], &j[1], &j[2]);
        let (l, r) = child_states(*j, m);
        Ok((values(&m)?, l, r))
    })
}

fn twist_once(p: &MarkovPoint, axis: usize, inverse: bool) -> (f64, f64, f64) {
    let (x, y, z) = (p.x, p.y, p.z);
    match (axis, inverse) {
        // about 1/0: slope (p, q) ↦ (p + q, q)
        (0, false) => (x, z, x * z - y),
        (0, true) => (x, x * y - z, y),
        // about 0/1: (p, q) ↦ (p, q − p)
        (1, false) => (x * y - z, y, x),
        (1, true) => (z, y, y * z - x),
        // about 1/1: (p, q) ↦ (p, q) + (q − p)·(1, 1)
        (2, false) => (y, y * z - x, z),
        (2, true) => (x * z - y, x, z),
        _ => unreachable!("axis < 3"),
    }
}

/// `k`-fold Dehn twist about one of the base curves `1/0`, `0/1`, `1/1`.
///
/// The twist acts on slopes by the transvection `v ↦ v + k·det(γ, v)·γ`, and
/// the twisted point assigns to each slope the trace of its image, so a
/// single twist about `1/0` is `(x, y, z) ↦ (x, z, xz − y)`.
pub fn dehn_twist(point: &MarkovPoint, about: Slope, k: i64) -> Result<MarkovPoint> {
    let axis = root_axis(about).ok_or_else(|| {
        Error::InvalidArgument(format!("twists are supported about 1/0, 0/1 and 1/1, not {about}"))
    })?;
    let mut p = *point;
    for _ in 0..k.unsigned_abs() {
        let (x, y, z) = twist_once(&p, axis, k < 0);
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::Overflow);
        }
        p = MarkovPoint { x, y, z };
    }
    MarkovPoint::new(p.x, p.y, p.z)
}

/// `ℓ_λ(X) / L_X` with `L_X = exp(d_L(X₀, X))` the Lipschitz constant of the
/// extremal Lipschitz map from the basepoint.
pub fn normalized_length_functional(
    base: &MarkovPoint,
    at: &MarkovPoint,
    lambda: &WeightedLamination,
    opts: &ThurstonOptions,
) -> Result<f64> {
    let lipschitz = thurston_distance(base, at, opts)?.value;
    Ok(length(at, lambda)? / lipschitz)
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryRow {
    pub k: i64,
    pub slope: Slope,
    pub length: f64,
    pub lipschitz: f64,
    pub normalized_value: f64,
}

/// `ℒ_{X_k}` along `X_k = T_γ^k(X₀)` for each requested curve.
pub fn twist_sequence_rows(
    base: &MarkovPoint,
    about: Slope,
    ks: &[i64],
    curves: &[Slope],
    opts: &ThurstonOptions,
) -> Result<Vec<BoundaryRow>> {
    let mut rows = Vec::with_capacity(ks.len() * curves.len());
    for &k in ks {
        let at = dehn_twist(base, about, k)?;
        let lipschitz = thurston_distance(base, &at, opts)?.value;
        for &slope in curves {
            let len = length(&at, &WeightedLamination::unit(slope))?;
            rows.push(BoundaryRow {
                k,
                slope,
                length: len,
                lipschitz,
                normalized_value: len / lipschitz,
            });
        }
    }
    Ok(rows)
}

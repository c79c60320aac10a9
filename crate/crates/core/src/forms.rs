//! Binary quadratic forms `a·p² + 2b·pq + c·q²` and suprema of their ratios.

/// Real symmetric 2×2 matrix `[[a, b], [b, c]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadForm {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl QuadForm {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        QuadForm { a, b, c }
    }

    pub fn eval(&self, v: (f64, f64)) -> f64 {
        self.a * v.0 * v.0 + 2.0 * self.b * v.0 * v.1 + self.c * v.1 * v.1
    }

    pub fn det(&self) -> f64 {
        self.a * self.c - self.b * self.b
    }

    pub fn scale(&self, s: f64) -> Self {
        QuadForm::new(self.a * s, self.b * s, self.c * s)
    }

    pub fn add(&self, o: &QuadForm) -> Self {
        QuadForm::new(self.a + o.a, self.b + o.b, self.c + o.c)
    }
}

/// Generalized eigenpairs of `num·v = λ·den·v` with `den` positive definite,
/// largest eigenvalue first.
pub fn generalized_eigen(num: &QuadForm, den: &QuadForm) -> [(f64, (f64, f64)); 2] {
    // det(num - λ den) = A λ² - B λ + C
    let a = den.det();
    let b = num.a * den.c + num.c * den.a - 2.0 * num.b * den.b;
    let c = num.det();
    let disc = (b * b - 4.0 * a * c).max(0.0);
    let sq = disc.sqrt();
    // numerically stable pair of roots
    let (l1, l2) = if b >= 0.0 {
        let t = 0.5 * (b + sq);
        (t / a, if t != 0.0 { c / t } else { 0.0 })
    } else {
        let t = 0.5 * (b - sq);
        (if t != 0.0 { c / t } else { 0.0 }, t / a)
    };
    let (hi, lo) = if l1 >= l2 { (l1, l2) } else { (l2, l1) };
    [(hi, eigenvector(num, den, hi)), (lo, eigenvector(num, den, lo))]
}

fn eigenvector(num: &QuadForm, den: &QuadForm, lambda: f64) -> (f64, f64) {
    let m = QuadForm::new(num.a - lambda * den.a, num.b - lambda * den.b, num.c - lambda * den.c);
    // null vector of a (numerically) singular symmetric matrix: take the row
    // with the larger norm and rotate it
    let r1 = (m.a, m.b);
    let r2 = (m.b, m.c);
    let n1 = r1.0.hypot(r1.1);
    let n2 = r2.0.hypot(r2.1);
    let v = if n1 >= n2 { (-r1.1, r1.0) } else { (-r2.1, r2.0) };
    let n = v.0.hypot(v.1);
    if n == 0.0 {
        // num is a multiple of den: every direction is an eigenvector
        (1.0, 0.0)
    } else {
        (v.0 / n, v.1 / n)
    }
}

/// Largest value of `num(v)/den(v)` over all real directions.
pub fn ratio_sup(num: &QuadForm, den: &QuadForm) -> f64 {
    generalized_eigen(num, den)[0].0
}

/// Whether `v` or `-v` lies in the closed cone spanned by `l` and `r`.
fn in_cone(v: (f64, f64), l: (f64, f64), r: (f64, f64)) -> bool {
    let cross = |a: (f64, f64), b: (f64, f64)| a.0 * b.1 - a.1 * b.0;
    let d = cross(l, r);
    let alpha = cross(v, r) / d;
    let beta = cross(l, v) / d;
    (alpha >= 0.0 && beta >= 0.0) || (alpha <= 0.0 && beta <= 0.0)
}

/// Exact supremum of `num/den` over the closed cone spanned by `l` and `r`:
/// the ratio is attained either on a boundary ray or at an interior critical
/// direction, and the critical directions are the generalized eigenvectors.
pub fn cone_sup(num: &QuadForm, den: &QuadForm, l: (f64, f64), r: (f64, f64)) -> f64 {
    let mut best = (num.eval(l) / den.eval(l)).max(num.eval(r) / den.eval(r));
    for (lambda, v) in generalized_eigen(num, den) {
        if lambda > best && in_cone(v, l, r) {
            best = lambda;
        }
    }
    best
}

//! Rational slopes and the Farey / Stern–Brocot tree.
//!
//! A [`Slope`] `p/q` labels an isotopy class of essential simple closed curve
//! on the torus or the once-punctured torus (the curve in homology class
//! `p·a + q·b`). The tree is grown from the root triangle `0/1, 1/1, 1/0`:
//! each of its three edges is a root interval, and every other slope is the
//! mediant of exactly one interval reached by repeated subdivision.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Greatest common divisor on absolute values.
fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// An essential simple closed curve class, kept in canonical form
/// (`q > 0`, or `p/q = 1/0` for the slope at infinity).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub const ZERO: Slope = Slope { p: 0, q: 1 };
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };
    pub const ONE: Slope = Slope { p: 1, q: 1 };

    /// Builds a canonical slope from any nonzero coprime pair; `(p, q)` and
    /// `(-p, -q)` name the same curve.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::InvalidSlope("0/0".into()));
        }
        if gcd(p, q) != 1 {
            return Err(Error::InvalidSlope(format!("{p}/{q} is not reduced")));
        }
        let (p, q) = if q < 0 || (q == 0 && p < 0) {
            (
                p.checked_neg().ok_or(Error::Overflow)?,
                q.checked_neg().ok_or(Error::Overflow)?,
            )
        } else {
            (p, q)
        };
        Ok(Slope { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }

    /// Geometric intersection number `|p_a q_b - q_a p_b|` on the torus.
    pub fn intersection(&self, other: &Slope) -> u64 {
        det(self.vector(), other.vector()).unsigned_abs() as u64
    }

    pub(crate) fn vector(&self) -> Vector {
        (self.p, self.q)
    }

    /// Canonical slope of an integer direction vector.
    pub(crate) fn from_vector(v: Vector) -> Result<Self> {
        Slope::new(v.0, v.1)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("slope `{s}` (expected p/q)"));
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p = p.trim().parse::<i64>().map_err(|_| bad())?;
        let q = q.trim().parse::<i64>().map_err(|_| bad())?;
        Slope::new(p, q)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Oriented integer vector `(p, q)`.
pub(crate) type Vector = (i64, i64);

pub(crate) fn det(a: Vector, b: Vector) -> i128 {
    a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
}

fn add(a: Vector, b: Vector) -> Result<Vector> {
    Ok((
        a.0.checked_add(b.0).ok_or(Error::Overflow)?,
        a.1.checked_add(b.1).ok_or(Error::Overflow)?,
    ))
}

fn sub(a: Vector, b: Vector) -> Result<Vector> {
    Ok((
        a.0.checked_sub(b.0).ok_or(Error::Overflow)?,
        a.1.checked_sub(b.1).ok_or(Error::Overflow)?,
    ))
}

/// Vector of `a` when it is the left end of an interval; `1/0` on the left is `-∞`.
fn left_vector(a: Slope) -> Vector {
    if a.is_infinite() {
        (-1, 0)
    } else {
        a.vector()
    }
}

/// Mediant of Farey neighbours `a < b`, read left to right along the
/// extended real line (so `1/0` on the left means `-∞`).
pub fn mediant(a: Slope, b: Slope) -> Result<Slope> {
    if a.intersection(&b) != 1 {
        return Err(Error::NotNeighbors(a, b));
    }
    Slope::from_vector(add(left_vector(a), b.vector())?)
}

/// Geometric intersection number of two curve classes.
pub fn intersection_number(a: Slope, b: Slope) -> u64 {
    a.intersection(&b)
}

/// A cell of the Stern–Brocot search tree: all slopes strictly between two
/// Farey neighbours. `depth` is the tree depth of the cell's mediant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FareyNode {
    pub left: Slope,
    pub right: Slope,
    pub depth: u32,
}

impl FareyNode {
    /// The three edges of the root triangle `0/1, 1/1, 1/0`: `[0, 1]`,
    /// `[1, +∞]` and the negative slopes `[-∞, 0]`.
    pub fn roots() -> [FareyNode; 3] {
        [
            FareyNode { left: Slope::ZERO, right: Slope::ONE, depth: 1 },
            FareyNode { left: Slope::ONE, right: Slope::INFINITY, depth: 1 },
            FareyNode { left: Slope::INFINITY, right: Slope::ZERO, depth: 1 },
        ]
    }

    pub(crate) fn left_vector(&self) -> Vector {
        left_vector(self.left)
    }

    pub(crate) fn right_vector(&self) -> Vector {
        self.right.vector()
    }

    pub fn mediant(&self) -> Result<Slope> {
        Slope::from_vector(add(self.left_vector(), self.right_vector())?)
    }

    /// Third vertex of the Farey triangle on the far side of this edge.
    pub fn opposite(&self) -> Result<Slope> {
        Slope::from_vector(sub(self.right_vector(), self.left_vector())?)
    }

    pub fn children(&self) -> Result<(FareyNode, FareyNode)> {
        let m = self.mediant()?;
        let depth = self.depth + 1;
        Ok((
            FareyNode { left: self.left, right: m, depth },
            FareyNode { left: m, right: self.right, depth },
        ))
    }

    /// Whether `s` lies strictly inside the interval.
    pub fn contains(&self, s: Slope) -> bool {
        let (l, r, v) = (self.left_vector(), self.right_vector(), s.vector());
        det(l, v) < 0 && det(v, r) < 0
    }

    /// `|det(left, right)|`; equal to 1 for every node the tree produces.
    pub fn determinant(&self) -> i128 {
        det(self.left_vector(), self.right_vector()).abs()
    }
}

/// Tie-break order for equal bounds: shallower first, then by endpoints.
pub(crate) fn node_order(a: &FareyNode, b: &FareyNode) -> Ordering {
    a.depth
        .cmp(&b.depth)
        .then_with(|| (a.left, a.right).cmp(&(b.left, b.right)))
}

/// The three root slopes evaluated before any descent.
pub fn root_slopes() -> [Slope; 3] {
    [Slope::ZERO, Slope::INFINITY, Slope::ONE]
}

/// All nodes of a given depth, left to right within each root interval.
pub fn nodes_at_depth(depth: u32) -> Result<Vec<FareyNode>> {
    if depth == 0 {
        return Ok(Vec::new());
    }
    let mut level: Vec<FareyNode> = FareyNode::roots().to_vec();
    for _ in 1..depth {
        let mut next = Vec::with_capacity(level.len() * 2);
        for node in &level {
            let (l, r) = node.children()?;
            next.push(l);
            next.push(r);
        }
        level = next;
    }
    Ok(level)
}

/// Every slope up to `max_depth`: the three roots, then the mediants depth by
/// depth. Depth `d ≥ 1` contributes `3·2^(d-1)` slopes, `2^d` of them positive.
pub fn enumerate(max_depth: u32) -> Result<Vec<Slope>> {
    let mut out: Vec<Slope> = root_slopes().to_vec();
    let mut level: Vec<FareyNode> = FareyNode::roots().to_vec();
    for _ in 1..=max_depth {
        let mut next = Vec::with_capacity(level.len() * 2);
        for node in &level {
            out.push(node.mediant()?);
            let (l, r) = node.children()?;
            next.push(l);
            next.push(r);
        }
        level = next;
    }
    Ok(out)
}

//! Maximization of a functional over all rational slopes.
//!
//! Two modes share one result type:
//!
//! * **bounded** — the caller supplies an upper bound on the objective over
//!   the interior of any [`FareyNode`]. Nodes are expanded best-first by
//!   bound; the search is certified once no outstanding bound exceeds the
//!   incumbent by more than the tolerance.
//! * **frontier-heuristic** — no bound is available, so the whole tree is
//!   evaluated level by level down to `max_depth`. The result is never
//!   certified; `stabilization_depth` records the last level at which the
//!   incumbent still moved by more than the tolerance.
//!
//! Work is dispatched in fixed-size batches whose composition does not
//! depend on the [`Execution`] mode, so sequential and parallel runs return
//! identical results.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::farey::{node_order, root_slopes, FareyNode, Slope};

/// Nodes expanded per bounded-mode round.
pub const BATCH: usize = 32;

pub type Objective<'a> = dyn Fn(Slope) -> f64 + Sync + 'a;
pub type SubtreeBound<'a> = dyn Fn(&FareyNode) -> f64 + Sync + 'a;

pub struct SupQuery<'a> {
    pub objective: &'a Objective<'a>,
    /// Upper bound on the objective over slopes strictly inside a node.
    pub subtree_bound: Option<&'a SubtreeBound<'a>>,
    /// Absolute tolerance on the supremum.
    pub tolerance: f64,
    pub max_depth: u32,
    pub max_evals: usize,
    pub execution: Execution,
}

impl<'a> SupQuery<'a> {
    pub fn new(objective: &'a Objective<'a>) -> Self {
        SupQuery {
            objective,
            subtree_bound: None,
            tolerance: 1e-6,
            max_depth: 64,
            max_evals: 1_000_000,
            execution: Execution::default(),
        }
    }

    pub fn bound(mut self, bound: &'a SubtreeBound<'a>) -> Self {
        self.subtree_bound = Some(bound);
        self
    }

    pub fn tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn max_depth(mut self, depth: u32) -> Self {
        self.max_depth = depth;
        self
    }

    pub fn max_evals(mut self, evals: usize) -> Self {
        self.max_evals = evals;
        self
    }

    pub fn execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupRatioResult {
    pub value: f64,
    pub argmax: Slope,
    pub certified: bool,
    /// Largest bound among unexplored nodes; `None` when no bound was supplied.
    pub frontier_bound: Option<f64>,
    pub evals: usize,
    pub stabilization_depth: u32,
}

struct Incumbent {
    value: f64,
    argmax: Slope,
    depth_improved: u32,
    tol: f64,
}

impl Incumbent {
    fn offer(&mut self, slope: Slope, value: f64, depth: u32) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::NonFinite { slope, value });
        }
        if value > self.value {
            if value > self.value + self.tol {
                self.depth_improved = depth;
            }
            self.value = value;
            self.argmax = slope;
        }
        Ok(())
    }
}

struct Pending {
    bound: f64,
    node: FareyNode,
}

impl PartialEq for Pending {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Pending {}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pending {
    // max-heap: larger bound first, then shallower, then smaller endpoints
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound
            .total_cmp(&other.bound)
            .then_with(|| node_order(&other.node, &self.node))
    }
}

fn sanitize_bound(b: f64) -> f64 {
    if b.is_nan() {
        f64::INFINITY
    } else {
        b
    }
}

/// Maximizes `q.objective` over every rational slope.
pub fn maximize(q: &SupQuery<'_>) -> Result<SupRatioResult> {
    if !(q.tolerance > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {} must be positive", q.tolerance)));
    }
    if q.max_evals == 0 {
        return Err(Error::InvalidArgument("max_evals must be positive".into()));
    }
    match q.subtree_bound {
        Some(bound) => maximize_bounded(q, bound),
        None => maximize_levels(q),
    }
}

fn evaluate_roots(q: &SupQuery<'_>) -> Result<(Incumbent, usize)> {
    let roots = root_slopes();
    let n = roots.len().min(q.max_evals);
    let values = q.execution.map(&roots[..n], |s| (q.objective)(*s));
    let mut inc = Incumbent {
        value: f64::NEG_INFINITY,
        argmax: roots[0],
        depth_improved: 0,
        tol: q.tolerance,
    };
    for (s, v) in roots.iter().zip(values) {
        inc.offer(*s, v, 0)?;
    }
    Ok((inc, n))
}

fn maximize_bounded(q: &SupQuery<'_>, bound: &SubtreeBound<'_>) -> Result<SupRatioResult> {
    let (mut inc, mut evals) = evaluate_roots(q)?;
    let roots = FareyNode::roots();
    let root_bounds = q.execution.map(&roots, |n| sanitize_bound(bound(n)));
    let mut heap: BinaryHeap<Pending> = roots
        .iter()
        .zip(root_bounds)
        .map(|(node, bound)| Pending { bound, node: *node })
        .collect();
    let mut truncated = f64::NEG_INFINITY;

    loop {
        let mut batch: Vec<FareyNode> = Vec::with_capacity(BATCH);
        let budget = q.max_evals.saturating_sub(evals).min(BATCH);
        while batch.len() < budget {
            let Some(top) = heap.peek() else { break };
            if top.bound <= inc.value + q.tolerance {
                break;
            }
            let top = heap.pop().expect("peeked");
            if top.node.depth > q.max_depth {
                truncated = truncated.max(top.bound);
                continue;
            }
            batch.push(top.node);
        }
        if batch.is_empty() {
            break;
        }
        let expanded = q.execution.map(&batch, |node| -> Result<_> {
            let m = node.mediant()?;
            let value = (q.objective)(m);
            let (l, r) = node.children()?;
            Ok((m, value, [(l, sanitize_bound(bound(&l))), (r, sanitize_bound(bound(&r)))]))
        });
        evals += batch.len();
        for (node, item) in batch.iter().zip(expanded) {
            let (m, value, children) = item?;
            inc.offer(m, value, node.depth)?;
            for (child, b) in children {
                heap.push(Pending { bound: b, node: child });
            }
        }
    }

    let outstanding = heap.peek().map_or(f64::NEG_INFINITY, |p| p.bound).max(truncated);
    let frontier = outstanding.max(inc.value);
    Ok(SupRatioResult {
        value: inc.value,
        argmax: inc.argmax,
        certified: frontier <= inc.value + q.tolerance,
        frontier_bound: Some(frontier),
        evals,
        stabilization_depth: inc.depth_improved,
    })
}

fn maximize_levels(q: &SupQuery<'_>) -> Result<SupRatioResult> {
    let limits = Limits {
        tolerance: q.tolerance,
        max_depth: q.max_depth,
        max_evals: q.max_evals,
        execution: q.execution,
    };
    maximize_levels_with(&limits, q.objective, [(); 3], |node, _| {
        Ok(((q.objective)(node.mediant()?), (), ()))
    })
}

/// Search limits for [`maximize_levels_with`].
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub tolerance: f64,
    pub max_depth: u32,
    pub max_evals: usize,
    pub execution: Execution,
}

/// Frontier-heuristic search in which every node carries state from its
/// parent, so the objective at a mediant can be formed in constant time.
///
/// `roots` holds the state of [`FareyNode::roots`] in order; `root_value`
/// evaluates the three root slopes. `expand` returns the objective at the
/// node's mediant and the states of its left and right children. Results
/// match [`maximize`] without a bound for the same objective.
pub fn maximize_levels_with<S, F>(
    limits: &Limits,
    root_value: &Objective<'_>,
    roots: [S; 3],
    expand: F,
) -> Result<SupRatioResult>
where
    S: Send + Sync,
    F: Fn(&FareyNode, &S) -> Result<(f64, S, S)> + Sync,
{
    let many = maximize_levels_many(limits, 1, &|s| vec![root_value(s)], roots, |node, state| {
        let (v, l, r) = expand(node, state)?;
        Ok((vec![v], l, r))
    })?;
    Ok(many.into_iter().next().expect("one objective"))
}

/// [`maximize_levels_with`] for `count` objectives sharing one traversal.
pub fn maximize_levels_many<S, F>(
    limits: &Limits,
    count: usize,
    root_value: &(dyn Fn(Slope) -> Vec<f64> + Sync),
    roots: [S; 3],
    expand: F,
) -> Result<Vec<SupRatioResult>>
where
    S: Send + Sync,
    F: Fn(&FareyNode, &S) -> Result<(Vec<f64>, S, S)> + Sync,
{
    if !(limits.tolerance > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance {} must be positive", limits.tolerance)));
    }
    if limits.max_evals == 0 {
        return Err(Error::InvalidArgument("max_evals must be positive".into()));
    }
    let slopes = root_slopes();
    let mut incs: Vec<Incumbent> = (0..count)
        .map(|_| Incumbent {
            value: f64::NEG_INFINITY,
            argmax: slopes[0],
            depth_improved: 0,
            tol: limits.tolerance,
        })
        .collect();
    let mut evals = slopes.len().min(limits.max_evals);
    let root_values = limits.execution.map(&slopes[..evals], |s| root_value(*s));
    for (s, values) in slopes.iter().zip(root_values) {
        for (inc, v) in incs.iter_mut().zip(values) {
            inc.offer(*s, v, 0)?;
        }
    }
    let mut level: Vec<(FareyNode, S)> = FareyNode::roots().into_iter().zip(roots).collect();
    let mut depth = 1;
    while depth <= limits.max_depth && evals < limits.max_evals {
        let take = level.len().min(limits.max_evals - evals);
        let last = take < level.len() || depth == limits.max_depth;
        let expanded = limits.execution.map(&level[..take], |(node, state)| -> Result<_> {
            let (values, l, r) = expand(node, state)?;
            let m = node.mediant()?;
            let children = if last {
                None
            } else {
                let depth = node.depth + 1;
                Some((
                    FareyNode { left: node.left, right: m, depth },
                    FareyNode { left: m, right: node.right, depth },
                ))
            };
            Ok((m, values, children, l, r))
        });
        evals += take;
        let mut next = Vec::with_capacity(if last { 0 } else { take * 2 });
        for item in expanded {
            let (m, values, children, l, r) = item?;
            for (inc, v) in incs.iter_mut().zip(values) {
                inc.offer(m, v, depth)?;
            }
            if let Some((lnode, rnode)) = children {
                next.push((lnode, l));
                next.push((rnode, r));
            }
        }
        if last {
            break;
        }
        level = next;
        depth += 1;
    }
    Ok(incs
        .into_iter()
        .map(|inc| SupRatioResult {
            value: inc.value,
            argmax: inc.argmax,
            certified: false,
            frontier_bound: None,
            evals,
            stabilization_depth: inc.depth_improved,
        })
        .collect())
}

/// Exhaustive maximum over [`crate::farey::enumerate`]`(depth)`; used as a
/// brute-force reference.
pub fn brute_force(
    objective: &Objective<'_>,
    depth: u32,
    execution: Execution,
) -> Result<(f64, Slope)> {
    let slopes = crate::farey::enumerate(depth)?;
    let values = execution.map(&slopes, |s| objective(*s));
    let mut best = (f64::NEG_INFINITY, slopes[0]);
    for (s, v) in slopes.iter().zip(values) {
        if !v.is_finite() {
            return Err(Error::NonFinite { slope: *s, value: v });
        }
        if v > best.0 {
            best = (v, *s);
        }
    }
    Ok(best)
}

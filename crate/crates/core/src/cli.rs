//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::farey::{intersection_number, Slope};
use crate::ptorus::{self, BoundMode, MarkovPoint, PTTangent, ThurstonOptions};
use crate::supratio::SupRatioResult;
use crate::torus::{self, SearchOptions, TangentVector, TorusPoint, WeightedFoliation};

#[derive(Parser, Debug)]
#[command(name = "teichmetric", version, about = "Teichmüller and Thurston metrics on the torus and the punctured torus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Teichmüller distance between two flat tori.
    DistTeich {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        common: Common,
    },
    /// Directed Thurston distance between two punctured tori.
    DistThurston {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value_t = Bound::Heuristic)]
        bound: Bound,
        #[command(flatten)]
        common: Common,
    },
    /// Teichmüller norm of a tangent vector on the torus.
    NormTeich {
        #[arg(long)]
        at: String,
        /// `vx,vy`
        #[arg(long = "vec")]
        vector: String,
        #[command(flatten)]
        common: Common,
    },
    /// Thurston norm of a chart velocity on the punctured torus.
    NormThurston {
        #[arg(long)]
        at: String,
        /// chart velocity `vx,vy`
        #[arg(long = "vec")]
        vector: String,
        #[command(flatten)]
        common: Common,
    },
    /// Samples of the dual unit sphere in the cotangent space.
    DualSphere {
        #[arg(long)]
        at: String,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Normalized length functionals along a Dehn twist sequence.
    ConvergeBoundary {
        #[arg(long, default_value = "3,3,3")]
        at: String,
        #[arg(long, default_value = "1/0")]
        about: String,
        #[arg(long, value_delimiter = ',', default_value = "10,25,50")]
        ks: Vec<i64>,
        #[arg(long, value_delimiter = ',', default_value = "0/1,1/1")]
        curves: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Normalized extremal length functionals along `τ + k`.
    ConvergeGm {
        #[arg(long, default_value = "i")]
        at: String,
        #[arg(long, value_delimiter = ',', default_value = "10,100,1000")]
        ks: Vec<i64>,
        #[arg(long, value_delimiter = ',', default_value = "0/1,1/2")]
        curves: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Compares the quadratic-differential pairing with dExt.
    GardinerCheck {
        #[arg(long)]
        at: String,
        #[arg(long = "vec")]
        vector: String,
        #[arg(long, default_value = "1/0")]
        slope: String,
        #[arg(long, default_value_t = 1.0)]
        weight: f64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long)]
    pub max_depth: Option<u32>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub require_certified: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Heuristic,
    Collar,
}

/// Process exit status.
pub mod exit {
    pub const OK: u8 = 0;
    pub const FAILURE: u8 = 1;
    pub const INVALID_POINT: u8 = 2;
    pub const UNCERTIFIED: u8 = 3;
}

/// Rendered output of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub body: String,
    pub certified: bool,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidPoint(_) | Error::OutOfChart(_) | Error::Parse(_) | Error::NotTangent(_) => exit::INVALID_POINT,
        _ => exit::FAILURE,
    }
}

fn pair(s: &str) -> Result<(f64, f64)> {
    let bad = || Error::Parse(format!("vector `{s}` (expected vx,vy)"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn slopes(list: &[String]) -> Result<Vec<Slope>> {
    list.iter().map(|s| s.parse()).collect()
}

fn check_common(c: &Common) -> Result<()> {
    if !(c.tol > 0.0) {
        return Err(Error::InvalidArgument(format!("--tol must be positive, got {}", c.tol)));
    }
    if c.max_depth == Some(0) {
        return Err(Error::InvalidArgument("--max-depth must be at least 1".into()));
    }
    Ok(())
}

fn search(c: &Common) -> SearchOptions {
    let d = SearchOptions::default();
    SearchOptions { tolerance: c.tol, max_depth: c.max_depth.unwrap_or(d.max_depth), ..d }
}

fn thurston(c: &Common, bound: Bound) -> ThurstonOptions {
    let d = ThurstonOptions::default();
    ThurstonOptions {
        tolerance: c.tol,
        max_depth: c.max_depth.unwrap_or(d.max_depth),
        bound: match bound {
            Bound::Heuristic => BoundMode::FrontierHeuristic,
            Bound::Collar => BoundMode::Collar,
        },
        ..d
    }
}

fn search_json(r: &SupRatioResult) -> Value {
    json!({
        "ratio": r.value,
        "argmax": r.argmax,
        "certified": r.certified,
        "frontier_bound": r.frontier_bound,
        "evals": r.evals,
        "stabilization_depth": r.stabilization_depth,
    })
}

/// A rectangular table; the first metadata column pair is repeated on every
/// row so each number carries its tolerance and certification status.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

fn render(command: &str, c: &Common, certified: bool, json_body: Value, table: Option<Table>) -> Result<String> {
    match c.format {
        Format::Json => {
            let mut v = json!({ "command": command, "tol": c.tol, "certified": certified });
            if let (Value::Object(dst), Value::Object(src)) = (&mut v, json_body) {
                dst.extend(src);
            }
            Ok(serde_json::to_string_pretty(&v).expect("JSON values serialize") + "\n")
        }
        Format::Csv => {
            let table = table.ok_or_else(|| {
                Error::InvalidArgument(format!("{command} has no CSV form; use --format json"))
            })?;
            let mut out = format!("# command={command} tol={} certified={certified}\n", c.tol);
            out.push_str(&table.header.join(","));
            out.push('\n');
            for row in table.rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
            Ok(out)
        }
    }
}

fn scalar_table(names: &[&'static str], values: Vec<String>) -> Table {
    Table { header: names.to_vec(), rows: vec![values] }
}

/// Runs one command and returns its rendered output.
pub fn execute(command: &Command) -> Result<(Report, &Common)> {
    let (name, common, certified, body, table) = match command {
        Command::DistTeich { from, to, common } => {
            check_common(common)?;
            let (a, b): (TorusPoint, TorusPoint) = (from.parse()?, to.parse()?);
            let r = torus::teich_distance_enum(&a, &b, &search(common))?;
            let distance = 0.5 * r.value.ln();
            let oracle = torus::teich_distance_oracle(&a, &b);
            let mut body = search_json(&r);
            body["from"] = json!(a.to_string());
            body["to"] = json!(b.to_string());
            body["distance"] = json!(distance);
            body["oracle"] = json!(oracle);
            let table = scalar_table(
                &["from", "to", "distance", "oracle", "argmax", "tol", "certified"],
                vec![a.to_string(), b.to_string(), distance.to_string(), oracle.to_string(), r.argmax.to_string(), common.tol.to_string(), r.certified.to_string()],
            );
            ("dist-teich", common, r.certified, body, Some(table))
        }
        Command::DistThurston { from, to, bound, common } => {
            check_common(common)?;
            let (a, b): (MarkovPoint, MarkovPoint) = (from.parse()?, to.parse()?);
            let opts = thurston(common, *bound);
            let r = ptorus::thurston_distance(&a, &b, &opts)?;
            let distance = r.value.ln();
            let mut body = search_json(&r);
            body["from"] = json!(a);
            body["to"] = json!(b);
            body["distance"] = json!(distance);
            body["max_depth"] = json!(opts.max_depth);
            body["bound_mode"] = json!(opts.bound);
            if opts.bound == BoundMode::Collar {
                body["bound_note"] = json!("collar and trace-submultiplicativity bound (own construction)");
            }
            let table = scalar_table(
                &["from", "to", "distance", "argmax", "stabilization_depth", "tol", "certified"],
                vec![a.to_string(), b.to_string(), distance.to_string(), r.argmax.to_string(), r.stabilization_depth.to_string(), common.tol.to_string(), r.certified.to_string()],
            );
            ("dist-thurston", common, r.certified, body, Some(table))
        }
        Command::NormTeich { at, vector, common } => {
            check_common(common)?;
            let p: TorusPoint = at.parse()?;
            let (vx, vy) = pair(vector)?;
            let v = TangentVector::new(vx, vy);
            let n = torus::teich_norm(&p, v, &search(common))?;
            let mut body = search_json(&n.rational);
            body["at"] = json!(p.to_string());
            body["vec"] = json!([vx, vy]);
            body["norm"] = json!(n.value);
            body["closed_form"] = json!(n.closed_form);
            let table = scalar_table(
                &["at", "vx", "vy", "norm", "closed_form", "tol", "certified"],
                vec![p.to_string(), vx.to_string(), vy.to_string(), n.value.to_string(), n.closed_form.to_string(), common.tol.to_string(), n.rational.certified.to_string()],
            );
            ("norm-teich", common, n.rational.certified, body, Some(table))
        }
        Command::NormThurston { at, vector, common } => {
            check_common(common)?;
            let p: MarkovPoint = at.parse()?;
            let (vx, vy) = pair(vector)?;
            let v = PTTangent::lift(&p, vx, vy)?;
            let opts = thurston(common, Bound::Heuristic);
            let r = ptorus::thurston_norm(&p, &v, &opts)?;
            let mut body = search_json(&r);
            body["at"] = json!(p);
            body["vec"] = json!(v);
            body["norm"] = json!(r.value);
            body["max_depth"] = json!(opts.max_depth);
            let table = scalar_table(
                &["at", "wx", "wy", "wz", "norm", "argmax", "tol", "certified"],
                vec![p.to_string(), v.wx.to_string(), v.wy.to_string(), v.wz.to_string(), r.value.to_string(), r.argmax.to_string(), common.tol.to_string(), r.certified.to_string()],
            );
            ("norm-thurston", common, r.certified, body, Some(table))
        }
        Command::DualSphere { at, samples, common } => {
            check_common(common)?;
            let p: TorusPoint = at.parse()?;
            let pts = torus::dual_sphere(&p, *samples)?;
            let rows = pts
                .iter()
                .map(|s| vec![s.covector.gx.to_string(), s.covector.gy.to_string(), s.direction.to_string()])
                .collect();
            let body = json!({ "at": p.to_string(), "samples": pts });
            // samples are exact evaluations; nothing is truncated
            ("dual-sphere", common, true, body, Some(Table { header: vec!["gx", "gy", "slope_or_angle"], rows }))
        }
        Command::ConvergeBoundary { at, about, ks, curves, common } => {
            check_common(common)?;
            let p: MarkovPoint = at.parse()?;
            let about: Slope = about.parse()?;
            let curves = slopes(curves)?;
            let opts = thurston(common, Bound::Heuristic);
            let rows = ptorus::twist_sequence_rows(&p, about, ks, &curves, &opts)?;
            let limit: Vec<Value> = curves
                .iter()
                .map(|c| json!({ "slope": c, "intersection": intersection_number(about, *c) }))
                .collect();
            let body = json!({ "base": p, "about": about, "max_depth": opts.max_depth, "limit": limit, "rows": rows });
            let table = Table {
                header: vec!["k", "slope", "hyperbolic_length", "lipschitz_constant", "normalized_length", "intersection_with_twist_curve", "tol", "certified"],
                rows: rows
                    .iter()
                    .map(|r| {
                        vec![r.k.to_string(), r.slope.to_string(), r.length.to_string(), r.lipschitz.to_string(), r.normalized_value.to_string(), intersection_number(about, r.slope).to_string(), common.tol.to_string(), "false".into()]
                    })
                    .collect(),
            };
            ("converge-boundary", common, false, body, Some(table))
        }
        Command::ConvergeGm { at, ks, curves, common } => {
            check_common(common)?;
            let p: TorusPoint = at.parse()?;
            let curves = slopes(curves)?;
            let rows = torus::twist_sequence_rows(&p, ks, &curves)?;
            let twist = Slope::INFINITY;
            let body = json!({ "base": p.to_string(), "rows": rows });
            let table = Table {
                header: vec!["k", "slope", "extremal_length", "dilatation", "normalized_extremal_length", "intersection_with_twist_curve", "tol", "certified"],
                rows: rows
                    .iter()
                    .map(|r| {
                        vec![r.k.to_string(), r.slope.to_string(), r.extremal_length.to_string(), r.dilatation.to_string(), r.normalized_value.to_string(), intersection_number(twist, r.slope).to_string(), common.tol.to_string(), "true".into()]
                    })
                    .collect(),
            };
            ("converge-gm", common, true, body, Some(table))
        }
        Command::GardinerCheck { at, vector, slope, weight, common } => {
            check_common(common)?;
            let p: TorusPoint = at.parse()?;
            let (vx, vy) = pair(vector)?;
            let v = TangentVector::new(vx, vy);
            let lambda = WeightedFoliation::new(*weight, slope.parse()?)?;
            let phi = torus::quad_diff_of_foliation(&lambda, &p);
            let pairing = torus::gardiner_pairing(&phi, v, &p);
            let derivative = torus::d_extremal(&lambda, &p).apply(v);
            let relative = (pairing - derivative).abs() / derivative.abs();
            let ok = relative <= common.tol || (pairing - derivative).abs() <= common.tol * 1e-3;
            let body = json!({
                "at": p.to_string(),
                "vec": [vx, vy],
                "lambda": lambda,
                "pairing": pairing,
                "d_extremal": derivative,
                "relative_residual": relative,
                "quad_diff_norm": phi.norm(&p),
                "extremal_length": torus::extremal_length(&lambda, &p),
            });
            let table = scalar_table(
                &["at", "slope", "weight", "pairing", "d_extremal", "relative_residual", "tol", "certified"],
                vec![p.to_string(), lambda.slope.to_string(), weight.to_string(), pairing.to_string(), derivative.to_string(), relative.to_string(), common.tol.to_string(), ok.to_string()],
            );
            ("gardiner-check", common, ok, body, Some(table))
        }
    };
    let body = render(name, common, certified, body, table)?;
    Ok((Report { body, certified }, common))
}

/// Parses nothing, runs `cli`, writes output, and returns the exit status.
pub fn run(cli: &Cli) -> u8 {
    match execute(&cli.command) {
        Ok((report, common)) => {
            let written = match &common.output {
                Some(path) => std::fs::write(path, &report.body).map_err(|e| e.to_string()),
                None => std::io::stdout().write_all(report.body.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return exit::FAILURE;
            }
            if common.require_certified && !report.certified {
                eprintln!("error: result is not certified");
                return exit::UNCERTIFIED;
            }
            exit::OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

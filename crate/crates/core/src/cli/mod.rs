//! The `charged3` command line: argument parsing, dispatch and emission of
//! JSON, CSV and SVG.
//!
//! Exit codes: 0 success, 2 input error, 3 numerical degeneracy, 4 failed
//! verification.

pub mod svg;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::atlas::{
    cusp_parameters, cusp_residual, gamma_coords, infinity_residual, polylines, raster_sweep,
    raster_sweep_parallel, reduced_potential, special_points, trace, Axis, BetaPoint, GammaPoint,
    GridSpec, Region, RegionLabel, RegionReport,
};
use crate::error::{Error, Result};
use crate::phase::{
    angular_velocity, build_relative_equilibrium, collinear_cc, integral_map, jacobian_rank,
    noncollinear_config, noncollinear_unit_inertia, CentralConfigResult, Vec3,
};
use crate::quintic::{
    build_quintic, CouplingTriple, IntervalId, MassTriple, ReducedQuintic, RootList,
};
use crate::tolerances::{FLOAT_GCD_REL, RANK_REL};
use crate::verify::{self, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 4;

pub const REGIONS_HEADER: &str =
    "beta1,beta2,n1,n2,n3,region,neg_u_count_i1,neg_u_count_i2,neg_u_count_i3";
pub const CURVE_HEADER: &str = "u,beta1,beta2,branch,at_infinity";

#[derive(Parser, Debug)]
#[command(name = "charged3", version, about = "Central configurations of three charged bodies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Real roots of the reduced quintic and their collinear configurations.
    Roots(RootsArgs),
    /// Classify a grid of normalised couplings.
    Regions(RegionsArgs),
    /// Samples of the discriminant curve.
    Curve(CurveArgs),
    /// Points at infinity and cusps of the curve for masses (mu, mu, 1).
    SpecialPoints(SpecialArgs),
    /// A relative equilibrium and the rank of the integral map there.
    Releq(ReleqArgs),
    /// Run the seeded property suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CouplingArgs {
    /// Couplings a1,a2,a3.
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true,
          conflicts_with_all = ["beta", "gravitational"])]
    pub alpha: Option<[f64; 3]>,
    /// Normalised couplings b1,b2, meaning (b1, b2, 1).
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, conflicts_with = "gravitational")]
    pub beta: Option<[f64; 2]>,
    /// a_i = m_j m_k.
    #[arg(long)]
    pub gravitational: bool,
}

impl CouplingArgs {
    fn resolve(&self, m: &MassTriple) -> Result<CouplingTriple> {
        match (self.alpha, self.beta, self.gravitational) {
            (Some(a), _, _) => CouplingTriple::from_array(a),
            (_, Some([b1, b2]), _) => CouplingTriple::from_beta(b1, b2),
            (_, _, true) => Ok(CouplingTriple::gravitational(m)),
            _ => Err(Error::InvalidInput("one of --alpha, --beta, --gravitational is required".into())),
        }
    }
}

#[derive(Args, Debug)]
pub struct RootsArgs {
    /// Masses m1,m2,m3.
    #[arg(long = "m", value_parser = parse_triple, default_value = "1,1,1")]
    pub masses: [f64; 3],
    #[command(flatten)]
    pub couplings: CouplingArgs,
    /// Use floating point instead of exact rational arithmetic.
    #[arg(long)]
    pub float: bool,
    /// Relative tolerance for floating gcds.
    #[arg(long, default_value_t = FLOAT_GCD_REL)]
    pub tol: f64,
    /// Accepted for uniformity; the output is always JSON.
    #[arg(long, hide = true)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct RegionsArgs {
    #[arg(long = "m", value_parser = parse_triple, default_value = "1,1,1")]
    pub masses: [f64; 3],
    /// min1:max1:n1,min2:max2:n2
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true, default_value = "-5:5:201,-5:5:201")]
    pub grid: GridSpec,
    /// Write the table here instead of standard output.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Print every cell as JSON instead of CSV.
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    /// Classify cells on one thread.
    #[arg(long)]
    pub serial: bool,
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    #[arg(long = "m", value_parser = parse_triple, default_value = "1,1,1")]
    pub masses: [f64; 3],
    /// lo:hi
    #[arg(long = "u-range", value_parser = parse_range, allow_hyphen_values = true, default_value = "-10:10")]
    pub u_range: [f64; 2],
    #[arg(long, default_value_t = 1001)]
    pub samples: usize,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Print the samples as JSON instead of CSV.
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SpecialArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub mu: f64,
    #[arg(long, hide = true)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ReleqArgs {
    #[arg(long = "m", value_parser = parse_triple, default_value = "1,1,1")]
    pub masses: [f64; 3],
    #[command(flatten)]
    pub couplings: CouplingArgs,
    /// Collinear configuration at the root of f nearest this value.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "noncollinear")]
    pub u: Option<f64>,
    /// The non-collinear configuration.
    #[arg(long)]
    pub noncollinear: bool,
    /// Multiplier of the non-collinear configuration; by default the one
    /// giving unit moment of inertia.
    #[arg(long, allow_hyphen_values = true, requires = "noncollinear")]
    pub lambda: Option<f64>,
    /// Relative singular value threshold for the rank.
    #[arg(long, default_value_t = RANK_REL)]
    pub tol: f64,
    #[arg(long, hide = true)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Samples per suite.
    #[arg(long, default_value_t = 100)]
    pub iterations: usize,
    /// Flip the sign of the second basis polynomial in the covariance suite.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
    #[arg(long, hide = true)]
    pub json: bool,
}

fn parse_list(s: &str, n: usize) -> std::result::Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    if v.len() != n {
        return Err(format!("expected {n} comma-separated numbers"));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err("values must be finite".into());
    }
    Ok(v)
}

fn parse_triple(s: &str) -> std::result::Result<[f64; 3], String> {
    parse_list(s, 3).map(|v| [v[0], v[1], v[2]])
}

fn parse_pair(s: &str) -> std::result::Result<[f64; 2], String> {
    parse_list(s, 2).map(|v| [v[0], v[1]])
}

fn parse_range(s: &str) -> std::result::Result<[f64; 2], String> {
    let v = parse_list(&s.replace(':', ","), 2)?;
    if !(v[0] < v[1]) {
        return Err("range must be increasing".into());
    }
    Ok([v[0], v[1]])
}

fn parse_axis(s: &str) -> std::result::Result<Axis, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("{s:?}: expected min:max:n"));
    }
    let f = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    let n = parts[2].trim().parse::<usize>().map_err(|e| format!("{:?}: {e}", parts[2]))?;
    Axis::new(f(parts[0])?, f(parts[1])?, n).map_err(|e| e.to_string())
}

fn parse_grid(s: &str) -> std::result::Result<GridSpec, String> {
    let (a, b) = s.split_once(',').ok_or("expected two axes separated by ','")?;
    Ok(GridSpec { b1: parse_axis(a)?, b2: parse_axis(b)? })
}

/// CSV number format: 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn masses(m: [f64; 3]) -> Result<MassTriple> {
    MassTriple::from_array(m)
}

fn write_file(path: &PathBuf, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

/// Write to standard output. A reader that went away (`| head`) is not an
/// error.
fn write_out(out: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    match out.write_all(bytes) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::InvalidInput(e.to_string())),
        _ => Ok(()),
    }
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    write_out(out, s.as_bytes())
}

fn error_json(e: &Error) -> Value {
    json!({ "error": e.kind(), "message": e.to_string() })
}

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // Help and version go to standard output with success.
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", error_json(&e));
            e.exit_code()
        }
    }
}

pub fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Roots(a) => emit_json(out, &cmd_roots(a)?).map(|_| EXIT_OK),
        Command::Regions(a) => cmd_regions(a, out).map(|_| EXIT_OK),
        Command::Curve(a) => cmd_curve(a, out).map(|_| EXIT_OK),
        Command::SpecialPoints(a) => emit_json(out, &cmd_special_points(a.mu)?).map(|_| EXIT_OK),
        Command::Releq(a) => emit_json(out, &cmd_releq(a)?).map(|_| EXIT_OK),
        Command::Verify(a) => {
            let report = cmd_verify(a.seed, a.iterations, a.inject_fault);
            emit_json(out, &serde_json::to_value(&report).expect("serialisable"))?;
            Ok(if report.passed { EXIT_OK } else { EXIT_VERIFY })
        }
    }
}

/// Run the property suites; `fault` deliberately breaks one of them.
pub fn cmd_verify(seed: u64, iterations: usize, fault: bool) -> verify::VerifyReport {
    verify::run(&VerifyOptions { seed, iterations, fault })
}

fn vec3(v: &Vec3) -> Value {
    json!([v[0], v[1], v[2]])
}

fn cc_json(cc: &CentralConfigResult) -> Value {
    json!({
        "kind": cc.kind,
        "distances": cc.distances,
        "lambda": cc.lambda,
        "potential": cc.potential,
        "inertia": cc.inertia,
        "residual": cc.residual,
        "couplings": cc.couplings,
        "positions": cc.configuration.positions().iter().map(vec3).collect::<Vec<_>>(),
    })
}

fn root_list(a: &CouplingTriple, m: &MassTriple, args: &RootsArgs) -> Result<(RootList, [usize; 3], Vec<f64>)> {
    if args.float {
        let q: ReducedQuintic<f64> = build_quintic::<f64>(a, m)?.with_tolerance(args.tol);
        let iso = q.isolate();
        Ok((q.isolate_real_roots()?, iso.counts(), q.coefficients_f64().to_vec()))
    } else {
        let q = build_quintic::<num_rational::BigRational>(a, m)?;
        let iso = q.isolate();
        Ok((q.isolate_real_roots()?, iso.counts(), q.coefficients_f64().to_vec()))
    }
}

pub fn cmd_roots(args: &RootsArgs) -> Result<Value> {
    let m = masses(args.masses)?;
    let a = args.couplings.resolve(&m)?;
    if a.is_zero() {
        return Err(Error::AllZero);
    }
    if !(args.tol > 0.0) {
        return Err(Error::InvalidInput("--tol must be positive".into()));
    }
    let (roots, simple, coefficients) = root_list(&a, &m, args)?;
    let beta = (a.a3 != 0.0).then(|| BetaPoint::new(a.a1 / a.a3, a.a2 / a.a3));
    let mut items = Vec::new();
    for r in &roots.roots {
        let u_value = beta.map(|b| reduced_potential(r.value, b)).transpose()?;
        let cc = collinear_cc(r.value, &a, &m, 1.0).map(|c| cc_json(&c)).unwrap_or_else(|e| error_json(&e));
        items.push(json!({
            "u": r.value,
            "lo": r.lo,
            "hi": r.hi,
            "interval": r.interval.to_string(),
            "multiplicity": r.multiplicity,
            "reduced_potential": u_value,
            "potential_sign": u_value.map(f64::signum),
            "configuration": cc,
        }));
    }
    let all_simple = roots.roots.iter().all(|r| r.multiplicity == 1);
    let region = all_simple.then(|| Region::from_triple(simple)).flatten().map(Region::id);
    Ok(json!({
        "masses": m,
        "alpha": a,
        "beta": beta,
        "coefficients": coefficients,
        "collisions": roots.collisions,
        "roots": items,
        "triple": simple,
        "all_simple": all_simple,
        "region": region,
    }))
}

/// One CSV row of a sweep.
pub fn region_row(r: &RegionReport) -> String {
    let mut s = format!("{},{},", num(r.beta.b1), num(r.beta.b2));
    match r.triple {
        Some([n1, n2, n3]) => {
            let [k1, k2, k3] = r.neg_counts;
            let _ = write!(s, "{n1},{n2},{n3},{},{k1},{k2},{k3}", r.label);
        }
        None => {
            let _ = write!(s, ",,,{},,,", r.label);
        }
    }
    s
}

pub fn regions_csv(cells: &[RegionReport]) -> String {
    let mut s = String::with_capacity(cells.len() * 64);
    s.push_str(REGIONS_HEADER);
    s.push('\n');
    for c in cells {
        s.push_str(&region_row(c));
        s.push('\n');
    }
    s
}

pub fn regions_svg(grid: &GridSpec, m: &MassTriple, cells: &[RegionReport]) -> String {
    let window = [[grid.b1.min, grid.b1.max], [grid.b2.min, grid.b2.max]];
    let markers = cusp_parameters(m)
        .into_iter()
        .filter_map(|eta| gamma_coords(&eta, &m.as_array()))
        .map(|(x, y)| [x, y])
        .filter(|p| p[0] >= window[0][0] && p[0] <= window[0][1] && p[1] >= window[1][0] && p[1] <= window[1][1])
        .collect();
    svg::SvgScene {
        width: 600.0,
        height: 600.0,
        window,
        cells: svg::labels(cells),
        nx: grid.b1.n,
        curve: polylines(m, window, 20000),
        markers,
        parabola: svg::parabola(window, 400),
    }
    .render()
}

pub fn cmd_regions(args: &RegionsArgs, out: &mut dyn Write) -> Result<()> {
    let m = masses(args.masses)?;
    let cells: Vec<RegionReport> = if args.serial {
        raster_sweep(&args.grid, &m).collect()
    } else {
        raster_sweep_parallel(&args.grid, &m)
    };
    if let Some(p) = &args.svg {
        write_file(p, &regions_svg(&args.grid, &m, &cells))?;
    }
    if args.json {
        return emit_json(out, &serde_json::to_value(&cells).expect("serialisable"));
    }
    let csv = regions_csv(&cells);
    match &args.csv {
        Some(p) => {
            write_file(p, &csv)?;
            let mut labels: Vec<String> = Vec::new();
            let mut counts = serde_json::Map::new();
            for c in &cells {
                let k = c.label.to_string();
                if !counts.contains_key(&k) {
                    labels.push(k.clone());
                }
                let e = counts.entry(k).or_insert(json!(0));
                *e = json!(e.as_u64().unwrap_or(0) + 1);
            }
            let distinct = cells
                .iter()
                .filter_map(|c| match c.label {
                    RegionLabel::Region(r) => Some(r),
                    _ => None,
                })
                .collect::<std::collections::BTreeSet<_>>();
            emit_json(
                out,
                &json!({
                    "cells": cells.len(),
                    "label_counts": counts,
                    "distinct_regions": distinct.iter().map(|r| r.id()).collect::<Vec<_>>(),
                }),
            )
        }
        None => write_out(out, csv.as_bytes()),
    }
}

pub fn curve_csv(m: &MassTriple, lo: f64, hi: f64, samples: usize) -> String {
    let mut s = String::from(CURVE_HEADER);
    s.push('\n');
    for g in trace(m, lo, hi, samples) {
        let (b1, b2, inf) = match g.point {
            GammaPoint::Finite(b) => (num(b.b1), num(b.b2), "false"),
            GammaPoint::AtInfinity { .. } => (String::new(), String::new(), "true"),
        };
        let _ = writeln!(s, "{},{b1},{b2},{},{inf}", num(g.u), g.branch);
    }
    s
}

pub fn cmd_curve(args: &CurveArgs, out: &mut dyn Write) -> Result<()> {
    let m = masses(args.masses)?;
    if args.json {
        let samples = trace(&m, args.u_range[0], args.u_range[1], args.samples);
        return emit_json(out, &serde_json::to_value(&samples).expect("serialisable"));
    }
    let csv = curve_csv(&m, args.u_range[0], args.u_range[1], args.samples);
    match &args.csv {
        Some(p) => write_file(p, &csv),
        None => write_out(out, csv.as_bytes()),
    }
}

pub fn cmd_special_points(mu: f64) -> Result<Value> {
    let sp = special_points(mu)?;
    let m = MassTriple::symmetric(mu)?;
    Ok(json!({
        "mu": mu,
        "xi_minus": sp.xi_minus,
        "xi_plus": sp.xi_plus,
        "xi0": sp.xi0,
        "eta_minus": sp.eta_minus,
        "eta_plus": sp.eta_plus,
        "eta0": sp.eta0,
        "ordered": sp.ordered(),
        "certificates": {
            "g3_xi_minus": infinity_residual(sp.xi_minus, &m),
            "g3_xi_plus": infinity_residual(sp.xi_plus, &m),
            "cprime_eta_minus": cusp_residual(sp.eta_minus, &m),
            "cprime_eta_plus": cusp_residual(sp.eta_plus, &m),
            "cprime_eta0": cusp_residual(sp.eta0, &m),
            "xi_product_minus_one": sp.xi_minus * sp.xi_plus - 1.0,
            "eta_product_minus_one": sp.eta_minus * sp.eta_plus - 1.0,
        },
    }))
}

/// The root of `f` nearest `u`.
fn nearest_root(u: f64, a: &CouplingTriple, m: &MassTriple) -> Result<f64> {
    let roots = build_quintic::<num_rational::BigRational>(a, m)?.isolate_real_roots()?;
    let best = roots
        .roots
        .iter()
        .min_by(|x, y| (x.value - u).abs().total_cmp(&(y.value - u).abs()))
        .ok_or_else(|| Error::NoSuchRoot("f has no real roots".into()))?;
    // Only accept a root on the same ordering as the request.
    if IntervalId::of(u) != Some(best.interval) {
        return Err(Error::NoSuchRoot(format!("no root of f in the interval of u = {u}")));
    }
    Ok(best.value)
}

pub fn cmd_releq(args: &ReleqArgs) -> Result<Value> {
    let m = masses(args.masses)?;
    let a = args.couplings.resolve(&m)?;
    if a.is_zero() {
        return Err(Error::AllZero);
    }
    if !(args.tol > 0.0) {
        return Err(Error::InvalidInput("--tol must be positive".into()));
    }
    let (cc, u) = if args.noncollinear {
        let cc = match args.lambda {
            Some(l) => noncollinear_config(&a, &m, l)?,
            None => noncollinear_unit_inertia(&a, &m)?,
        };
        (cc, None)
    } else {
        let target = args
            .u
            .ok_or_else(|| Error::InvalidInput("one of --u, --noncollinear is required".into()))?;
        let u = nearest_root(target, &a, &m)?;
        (collinear_cc(u, &a, &m, 1.0)?, Some(u))
    };
    let pp = build_relative_equilibrium(&cc.configuration, cc.lambda)?;
    let f = integral_map(&pp, &cc.couplings)?;
    let jr = jacobian_rank(&pp, &cc.couplings, args.tol);
    Ok(json!({
        "u": u,
        "central_configuration": cc_json(&cc),
        "momenta": pp.momenta().iter().map(vec3).collect::<Vec<_>>(),
        "angular_velocity": vec3(&angular_velocity(&pp)),
        "integrals": { "H": f.h, "L": vec3(&f.l), "P": vec3(&f.p), "Q": vec3(&f.q) },
        "singular_values": jr.singular_values,
        "ratio": jr.ratio(),
        "rank": jr.rank,
        "class": format!("{:?}", jr.class),
    }))
}

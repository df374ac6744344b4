//! `asreg`: construct, classify and verify 3-dimensional quadratic
//! AS-regular algebras from the command line. Output is JSON on stdout.

use std::io::Write;
use std::process::ExitCode;

use asreg::descriptor::{parse_descriptor, AlgebraDescriptor};
use asreg::ec::{iso_ec_witness, iso_orbit, morita_orbit, EcDescriptor};
use asreg::hesse::{f_set, lambda_of, CurvePoint, HesseCurve};
use asreg::oracle::{g1_check, g2_relations, pair_for, pair_for_ec, GeometricPair, DEFAULT_SAMPLES};
use asreg::qalg::{point_scheme_det, relations_equal};
use asreg::tables::{AlgebraType, TypedAlgebra};
use asreg::{Error, FieldElem, ProjPoint};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "asreg", version, about = "Quadratic AS-regular algebras of dimension 3")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Json, global = true)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Defining relations of an algebra.
    Construct(DescArgs),
    /// Decide graded isomorphism.
    Iso(PairArgs),
    /// Decide graded Morita equivalence.
    Morita(PairArgs),
    /// Fixed representative of the Morita class.
    NormalForm(DescArgs),
    /// Determinant of the multilinearization matrix.
    PointScheme(DescArgs),
    /// Recompute the relations from the geometric pair.
    VerifyG2(VerifyArgs),
    /// Check that the relations cut out the graph of sigma.
    VerifyG1(VerifyArgs),
    /// Operations on Hesse curves.
    #[command(subcommand)]
    Curve(CurveCommand),
}

#[derive(Args)]
struct DescArgs {
    /// Descriptor as JSON, e.g. '{"type":"S1","params":["2","3","5"]}'.
    #[arg(long, conflicts_with_all = ["ty", "point"])]
    a: Option<String>,
    /// Table type, e.g. S1, "S'1", NC2.
    #[arg(long = "type")]
    ty: Option<String>,
    /// Comma-separated parameters for --type.
    #[arg(long, requires = "ty", allow_hyphen_values = true)]
    params: Option<String>,
    /// Point for an elliptic-type descriptor.
    #[arg(long, conflicts_with = "ty", allow_hyphen_values = true)]
    point: Option<String>,
    /// Power of tau for an elliptic-type descriptor.
    #[arg(long, default_value_t = 0, requires = "point", allow_hyphen_values = true)]
    i: i64,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    desc: DescArgs,
    /// Number of sampled points.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
}

#[derive(Args)]
struct CurveArgs {
    /// Hesse parameter; by default taken from the first point with no zero coordinate, else 0.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
}

#[derive(Subcommand)]
enum CurveCommand {
    /// Sum of two points.
    Add {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Inverse of a point.
    Neg {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Integer multiple of a point.
    Smul {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// j-invariant and automorphism order d.
    J {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// The nine 3-torsion points in label order.
    Torsion3,
    /// Whether a point is 3-torsion, with its label.
    IsTorsion3 {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Apply tau^i to a point.
    Tau {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        i: i64,
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// The set {p - tau^i(p) : p in E[3]}.
    FSet {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
    },
    /// Translation points giving isomorphic (or Morita equivalent) algebras.
    Orbit {
        #[arg(long)]
        a: String,
        #[arg(long, value_enum, default_value_t = OrbitKind::Iso)]
        kind: OrbitKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrbitKind {
    Iso,
    Morita,
}

fn elems(s: &str) -> Result<Vec<FieldElem>, Error> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse()).collect()
}

fn point(s: &str) -> Result<ProjPoint, Error> {
    let v = elems(s)?;
    let arr: [FieldElem; 3] = v
        .try_into()
        .map_err(|_| Error::Parse(format!("a point needs 3 coordinates: {s:?}")))?;
    ProjPoint::from_vec(arr)
}

fn descriptor(d: &DescArgs) -> Result<AlgebraDescriptor, Error> {
    if let Some(js) = &d.a {
        return parse_descriptor(js);
    }
    if let Some(ty) = &d.ty {
        let t: AlgebraType = ty.parse()?;
        let ps = elems(d.params.as_deref().unwrap_or(""))?;
        return Ok(AlgebraDescriptor::Table(TypedAlgebra::new(t, ps)?));
    }
    if let Some(p) = &d.point {
        return Ok(AlgebraDescriptor::Ec(EcDescriptor::new(&point(p)?, d.i)?));
    }
    Err(Error::InvalidParameters("give --a, --type or --point".into()))
}

fn coords(p: &CurvePoint) -> Value {
    json!(p.point().coords())
}

/// The curve named by `--lambda`, or through the first point with no zero coordinate.
fn curve_for(args: &CurveArgs, pts: &[&ProjPoint]) -> Result<HesseCurve, Error> {
    let lambda = match &args.lambda {
        Some(l) => l.parse()?,
        None => pts
            .iter()
            .find_map(|p| lambda_of(p).ok())
            .unwrap_or_else(FieldElem::zero),
    };
    HesseCurve::new(lambda)
}

fn on_curve(args: &CurveArgs, ps: &[&str]) -> Result<(HesseCurve, Vec<CurvePoint>), Error> {
    let pts: Vec<ProjPoint> = ps.iter().map(|s| point(s)).collect::<Result<_, _>>()?;
    let curve = curve_for(args, &pts.iter().collect::<Vec<_>>())?;
    let cps = pts.into_iter().map(|p| curve.point(p)).collect::<Result<_, _>>()?;
    Ok((curve, cps))
}

fn geometric_pair(a: &AlgebraDescriptor) -> Result<GeometricPair, Error> {
    match a {
        AlgebraDescriptor::Table(t) => pair_for(t),
        AlgebraDescriptor::Ec(d) => pair_for_ec(d),
    }
}

fn run(cmd: Command) -> Result<Value, Error> {
    Ok(match cmd {
        Command::Construct(d) => {
            let a = descriptor(&d)?;
            let r = a.construct()?;
            json!({ "descriptor": a, "relations": r, "text": r.text() })
        }
        Command::Iso(p) => {
            let (a, b) = (parse_descriptor(&p.a)?, parse_descriptor(&p.b)?);
            match (&a, &b) {
                (AlgebraDescriptor::Ec(x), AlgebraDescriptor::Ec(y)) => {
                    let w = iso_ec_witness(x, y)?;
                    json!({ "isomorphic": w.is_some(), "witness": w })
                }
                _ => json!({ "isomorphic": a.iso(&b)? }),
            }
        }
        Command::Morita(p) => {
            let (a, b) = (parse_descriptor(&p.a)?, parse_descriptor(&p.b)?);
            json!({ "equivalent": a.morita(&b)? })
        }
        Command::NormalForm(d) => {
            let a = descriptor(&d)?;
            json!({ "descriptor": a, "normal_form": a.morita_normal_form()? })
        }
        Command::PointScheme(d) => {
            let a = descriptor(&d)?;
            let det = point_scheme_det(&a.construct()?);
            json!({
                "descriptor": a,
                "det": det,
                "text": det.to_string(),
                "identically_zero": det.is_zero(),
            })
        }
        Command::VerifyG2(v) => {
            let a = descriptor(&v.desc)?;
            let g = geometric_pair(&a)?;
            let got = g2_relations(&g, v.samples)?;
            json!({
                "descriptor": a,
                "family": g.family.name(),
                "samples": v.samples,
                "relations": got,
                "reproduced": relations_equal(&got, &a.construct()?),
            })
        }
        Command::VerifyG1(v) => {
            let a = descriptor(&v.desc)?;
            let g = geometric_pair(&a)?;
            let report = g1_check(&a.construct()?, &g, v.samples)?;
            json!({
                "descriptor": a,
                "family": g.family.name(),
                "pass": report.all_pass(),
                "report": report,
            })
        }
        Command::Curve(c) => run_curve(c)?,
    })
}

fn run_curve(c: CurveCommand) -> Result<Value, Error> {
    Ok(match c {
        CurveCommand::Add { p, q, curve } => {
            let (e, ps) = on_curve(&curve, &[&p, &q])?;
            json!({ "lambda": e.lambda(), "result": coords(&ps[0].add(&ps[1])?) })
        }
        CurveCommand::Neg { p, curve } => {
            let (e, ps) = on_curve(&curve, &[&p])?;
            json!({ "lambda": e.lambda(), "result": coords(&ps[0].neg()) })
        }
        CurveCommand::Smul { p, n, curve } => {
            let (e, ps) = on_curve(&curve, &[&p])?;
            json!({ "lambda": e.lambda(), "result": coords(&ps[0].smul(n)) })
        }
        CurveCommand::J { lambda } => {
            let e = HesseCurve::new(lambda.parse()?)?;
            json!({ "lambda": e.lambda(), "j": e.j(), "d": e.d() })
        }
        CurveCommand::Torsion3 => {
            let e = HesseCurve::new(FieldElem::zero())?;
            let pts: Vec<Value> = e.torsion_points().iter().map(coords).collect();
            json!({ "points": pts })
        }
        CurveCommand::IsTorsion3 { p, curve } => {
            let (e, ps) = on_curve(&curve, &[&p])?;
            json!({
                "lambda": e.lambda(),
                "torsion3": ps[0].is_torsion3(),
                "label": e.torsion_index(ps[0].point()),
            })
        }
        CurveCommand::Tau { p, i, curve } => {
            let (e, ps) = on_curve(&curve, &[&p])?;
            json!({ "lambda": e.lambda(), "i": i, "result": coords(&ps[0].tau(i)?) })
        }
        CurveCommand::FSet { lambda, i } => {
            let e = HesseCurve::new(lambda.parse()?)?;
            let pts = f_set(&e, i)?;
            let labels: Vec<usize> = pts.iter().filter_map(|p| e.torsion_index(p.point())).collect();
            let pts: Vec<Value> = pts.iter().map(coords).collect();
            json!({ "lambda": e.lambda(), "i": i, "labels": labels, "points": pts })
        }
        CurveCommand::Orbit { a, kind } => {
            let AlgebraDescriptor::Ec(d) = parse_descriptor(&a)? else {
                return Err(Error::InvalidParameters("orbits are defined for type EC only".into()));
            };
            let (name, orbit) = match kind {
                OrbitKind::Iso => ("iso", iso_orbit(&d)?),
                OrbitKind::Morita => ("morita", morita_orbit(&d)?),
            };
            let members: Vec<Value> = orbit
                .iter()
                .map(|(q, w)| json!({ "point": coords(q), "l": w.l, "r": w.r }))
                .collect();
            json!({ "descriptor": d, "kind": name, "size": members.len(), "members": members })
        }
    })
}

fn is_internal(e: &Error) -> bool {
    matches!(
        e,
        Error::WrongDimension { .. } | Error::SamplingExhausted { .. } | Error::SigmaLeavesVariety(_) | Error::DependentRelations
    )
}

fn emit(v: &Value, out: Output) {
    let s = match out {
        Output::Json => serde_json::to_string(v),
        Output::Pretty => serde_json::to_string_pretty(v),
    };
    let mut stdout = std::io::stdout().lock();
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = writeln!(stdout, "{}", s.expect("JSON values always serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            emit(&json!({ "error": { "kind": "Usage", "message": first } }), Output::Json);
            return ExitCode::from(1);
        }
    };
    let out = cli.output;
    match run(cli.command) {
        Ok(v) => {
            emit(&v, out);
            ExitCode::SUCCESS
        }
        Err(e) => {
            emit(&json!({ "error": { "kind": e.kind(), "message": e.to_string() } }), out);
            ExitCode::from(if is_internal(&e) { 2 } else { 1 })
        }
    }
}

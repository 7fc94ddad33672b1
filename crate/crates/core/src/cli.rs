//! The `affcox` command line.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::affine::{
    classify_length, consistency_check, constraint_constant, distinguished_series, extend, family, family_for_axis,
    length_multipliers, quadruplet_for_gamma, rescale, solve_constraint, symmetrize, ExtensionSpec, Family, Quadruplet,
    DEFAULT_BOUND,
};
use crate::coxeter::{check_km_rules, generate_group, root_system, GroupId};
use crate::error::{Error, Result};
use crate::geometry::{
    affine_reflection, h2_embed, h3_cartesian_group, h3_constants, mat_vec, reflection, twist_family, Vec3G,
};
use crate::goldring::{parse_golden, parse_rational, GMatrix, GoldenRational, Rational};
use crate::pointarray::{cardinality_scan, generate_array, seed_with, ArrayAxis, Convention, SeedName};

type G = GoldenRational;

/// Environment variable naming a directory for relative `--output` paths.
pub const OUT_DIR_VAR: &str = "AFFCOX_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "affcox",
    version,
    about = "Affine extensions of H2, H3 and H4 in exact golden-field arithmetic"
)]
pub struct Cli {
    /// Suppress informational messages.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the main output to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fibonacci family of extended Cartan matrices.
    Enumerate(EnumerateArgs),
    /// Solve xy = c over Z[tau] up to a bound.
    Solve(SolveArgs),
    /// Check extension rules, consistency and symmetrisation of matrices in a JSON file.
    Verify(VerifyArgs),
    /// Root system in the simple-root basis.
    Roots(RootsArgs),
    /// Reflection group elements.
    Group(GroupArgs),
    /// Affine operators for an H3 axis family member.
    Op(OpArgs),
    /// Point arrays and cardinality tables.
    Array(ArrayArgs),
    /// Translation lengths of the distinguished series.
    Lengths(LengthsArgs),
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long, default_value = "h3")]
    pub group: GroupId,
    /// 2fold, 3fold, 5fold (h3); highest, bisector (h2); a1..a4 (h4).
    #[arg(long)]
    pub axis: String,
    #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
    pub k: String,
    #[arg(long, default_value = "1")]
    pub gamma: String,
    /// Defaults to the value fixed by the constraint.
    #[arg(long)]
    pub delta: Option<String>,
    /// Base quadruplet `a,b,c,d`; defaults to the family's standard base.
    #[arg(long, allow_hyphen_values = true)]
    pub base: Option<String>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub target: String,
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    pub bound: i64,
    #[arg(long, default_value = "1")]
    pub gamma: String,
    #[arg(long, default_value = "1")]
    pub delta: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub file: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[arg(long)]
    pub group: GroupId,
    #[arg(long, value_enum, default_value = "json")]
    pub format: TableFormat,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    #[arg(long)]
    pub group: GroupId,
    #[arg(long)]
    pub count_only: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Emit {
    Matrix,
    Orbit,
}

#[derive(Debug, Args)]
pub struct OpArgs {
    /// 2fold, 3fold or 5fold.
    #[arg(long)]
    pub axis: String,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub k: i64,
    #[arg(long, default_value = "1")]
    pub gamma: String,
    #[arg(long, value_enum, default_value = "matrix")]
    pub emit: Emit,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ArrayFormat {
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConventionArg {
    RootVertex,
    MirrorVertex,
}

#[derive(Debug, Args)]
pub struct ArrayArgs {
    #[arg(long, default_value = "h2")]
    pub group: GroupId,
    #[arg(long, default_value = "pentagon")]
    pub seed: String,
    /// highest, bisector (h2); 2fold, 3fold, 5fold (h3).
    #[arg(long, default_value = "highest")]
    pub axis: String,
    /// Multiplier of the axis reference vector; repeat for a table.
    #[arg(long, required = true, allow_hyphen_values = true)]
    pub length: Vec<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub out: ArrayFormat,
    #[arg(long, value_enum, default_value = "root-vertex")]
    pub convention: ConventionArg,
}

#[derive(Debug, Args)]
pub struct LengthsArgs {
    #[arg(long, default_value = "h3")]
    pub group: GroupId,
    #[arg(long)]
    pub axis: String,
    /// Single series with this gamma; without it, all distinguished series.
    #[arg(long)]
    pub gamma: Option<String>,
    #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
    pub k: String,
}

/// Main output of a subcommand.
struct Rendered {
    text: String,
    json: Value,
    /// Raw file body (CSV, SVG) that replaces both forms.
    raw: Option<String>,
    status: i32,
}

impl Rendered {
    fn new(text: String, json: Value) -> Self {
        Rendered {
            text,
            json,
            raw: None,
            status: 0,
        }
    }
}

/// Runs the CLI and returns the process exit status.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let out = std::io::stdout();
    let err = std::io::stderr();
    run_with(args, &mut out.lock(), &mut err.lock())
}

pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli).and_then(|r| emit(&cli, r, out, err)) {
        Ok(status) => status,
        Err(e) => {
            let _ = if cli.json {
                writeln!(err, "{}", json!({ "error": e.to_string() }))
            } else {
                writeln!(err, "error: {e}")
            };
            1
        }
    }
}

fn emit(cli: &Cli, r: Rendered, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let body = match (&r.raw, cli.json) {
        (Some(raw), _) => raw.clone(),
        (None, true) => serde_json::to_string_pretty(&r.json).map_err(|e| Error::Invalid(e.to_string()))? + "\n",
        (None, false) => r.text,
    };
    match &cli.output {
        Some(p) => {
            let path = resolve_output(p);
            std::fs::write(&path, body.as_bytes())
                .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
            if !cli.quiet {
                let _ = writeln!(err, "wrote {}", path.display());
            }
        }
        None => {
            out.write_all(body.as_bytes())
                .map_err(|e| Error::Invalid(format!("cannot write output: {e}")))?;
        }
    }
    Ok(r.status)
}

fn resolve_output(p: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if p.is_relative() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn dispatch(cli: &Cli) -> Result<Rendered> {
    match &cli.command {
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Roots(a) => cmd_roots(a),
        Command::Group(a) => cmd_group(a),
        Command::Op(a) => cmd_op(a),
        Command::Array(a) => cmd_array(a),
        Command::Lengths(a) => cmd_lengths(a),
    }
}

/// Parses `a..b` (inclusive).
pub fn parse_k_range(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Invalid(format!("bad k range `{s}`, expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn parse_quadruplet(s: &str) -> Result<(i64, i64, i64, i64)> {
    let bad = || Error::Invalid(format!("bad quadruplet `{s}`, expected a,b,c,d"));
    let parts: Vec<i64> = s
        .trim_matches(|c| c == '(' || c == ')')
        .split([',', ';'])
        .map(|p| p.trim().parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    match parts[..] {
        [a, b, c, d] => Ok((a, b, c, d)),
        _ => Err(bad()),
    }
}

/// JSON form of an extended matrix, as written by `enumerate` and read by
/// `verify`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<G>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<G>,
    pub matrix: GMatrix,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixFile {
    One(Box<MatrixRecord>),
    Many(Vec<MatrixRecord>),
    Bare(GMatrix),
}

fn enumerate_records(a: &EnumerateArgs) -> Result<Vec<(i64, Quadruplet, MatrixRecord)>> {
    let fam = family_for_axis(a.group, &a.axis)?;
    let (k0, k1) = parse_k_range(&a.k)?;
    let gamma = parse_rational(&a.gamma)?;
    let base = match (&a.base, &a.delta) {
        (None, None) => quadruplet_for_gamma(fam, &gamma)?,
        (base, delta) => {
            let (qa, qb, qc, qd) = match base {
                Some(b) => parse_quadruplet(b)?,
                None => fam.default_base().0,
            };
            let q = Quadruplet::new(qa, qb, qc, qd);
            let delta = match delta {
                Some(d) => parse_rational(d)?,
                None => fixed_delta(fam, &q, &gamma)?,
            };
            q.with_multipliers(gamma.clone(), delta)
        }
    };
    let fib = family(&base, k0..=k1);
    fib.members
        .into_iter()
        .map(|m| {
            let ext = extend(&ExtensionSpec::new(fam, m.x.clone(), m.y.clone()))?;
            Ok((
                m.k,
                m.quadruplet,
                MatrixRecord {
                    group: Some(fam.group()),
                    family: Some(fam),
                    x: Some(m.x),
                    y: Some(m.y),
                    matrix: ext.entries,
                },
            ))
        })
        .collect()
}

/// `δ` with `γδ(a+bτ)(c+dτ) = c`, when it is rational.
fn fixed_delta(fam: Family, q: &Quadruplet, gamma: &Rational) -> Result<Rational> {
    let r = constraint_constant(fam).checked_div(&(q.left() * q.right()).scale(gamma))?;
    if !r.is_rational() {
        return Err(Error::Invalid(format!(
            "quadruplet {q} cannot satisfy the {fam} constraint with rational delta"
        )));
    }
    Ok(r.a().clone())
}

fn cmd_enumerate(a: &EnumerateArgs) -> Result<Rendered> {
    let recs = enumerate_records(a)?;
    let mut text = String::new();
    let mut items = Vec::new();
    for (k, q, r) in &recs {
        let det = r.matrix.det()?;
        let fam = r.family.expect("set by enumerate");
        let len = classify_length(q, fam)?;
        let _ = writeln!(
            text,
            "k={k} {q} x={} y={} det={det} length^2={}",
            r.x.as_ref().unwrap(),
            r.y.as_ref().unwrap(),
            len.length_sq
        );
        let _ = writeln!(text, "{}", indent(&r.matrix.to_string()));
        let mut item = serde_json::to_value(r).map_err(|e| Error::Invalid(e.to_string()))?;
        let obj = item.as_object_mut().expect("record is an object");
        obj.insert("k".into(), json!(k));
        obj.insert("quadruplet".into(), json!(q));
        obj.insert("det".into(), json!(det));
        obj.insert("length_sq".into(), json!(len.length_sq));
        obj.insert("decomposition".into(), json!(len.decomposition));
        items.push(item);
    }
    Ok(Rendered::new(text, Value::Array(items)))
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}")).collect::<Vec<_>>().join("\n")
}

fn cmd_solve(a: &SolveArgs) -> Result<Rendered> {
    let target = parse_golden(&a.target)?;
    let gamma = parse_rational(&a.gamma)?;
    let delta = parse_rational(&a.delta)?;
    let orbits = solve_constraint(&target, &gamma, &delta, a.bound)?;
    let mut text = format!("{} orbit(s) for xy = {target} at bound {}\n", orbits.len(), a.bound);
    for o in &orbits {
        let unit = o.unit_base.as_ref().map_or("-".to_string(), |u| u.to_string());
        let _ = writeln!(
            text,
            "base {} unit-normalised {unit} members {}",
            o.base,
            o.members.len()
        );
    }
    Ok(Rendered::new(
        text,
        json!({ "target": target, "bound": a.bound, "orbits": orbits }),
    ))
}

fn cmd_verify(a: &VerifyArgs) -> Result<Rendered> {
    let body = std::fs::read_to_string(&a.file)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", a.file.display())))?;
    let file: MatrixFile =
        serde_json::from_str(&body).map_err(|e| Error::Invalid(format!("{}: {e}", a.file.display())))?;
    let recs = match file {
        MatrixFile::One(r) => vec![*r],
        MatrixFile::Many(v) => v,
        MatrixFile::Bare(m) => vec![MatrixRecord {
            group: None,
            family: None,
            x: None,
            y: None,
            matrix: m,
        }],
    };
    let mut text = String::new();
    let mut items = Vec::new();
    let mut all_ok = true;
    for (i, r) in recs.iter().enumerate() {
        let km = check_km_rules(&r.matrix)?;
        let cons = consistency_check(&r.matrix)?;
        let sym = symmetrize(&r.matrix);
        let ok = km.pass_relaxed() && cons.passed();
        all_ok &= ok;
        let _ = writeln!(text, "matrix {i}: {}", if ok { "ok" } else { "FAILED" });
        for rule in &km.rules {
            let mark = if rule.passed { "pass" } else { "fail" };
            let w = rule.witness.as_deref().map(|w| format!(" ({w})")).unwrap_or_default();
            let _ = writeln!(text, "  rule {} {}: {mark}{w}", rule.rule, rule.name);
        }
        let _ = writeln!(
            text,
            "  lemma: {}  corollary: {}  angle bound: {}",
            pass(cons.lemma_holds),
            pass(cons.corollary_holds),
            pass(cons.angle_bound_holds)
        );
        let sym_json = match &sym {
            Ok(s) => {
                let d: Vec<String> = s.d.iter().map(ToString::to_string).collect();
                let _ = writeln!(
                    text,
                    "  symmetrisable: D = diag({}), det S = {}, psd: {}",
                    d.join(", "),
                    s.det,
                    s.positive_semidefinite
                );
                serde_json::to_value(s).map_err(|e| Error::Invalid(e.to_string()))?
            }
            Err(e) => {
                let _ = writeln!(text, "  not symmetrisable: {e}");
                json!({ "error": e.to_string() })
            }
        };
        items.push(json!({
            "index": i,
            "ok": ok,
            "rules": km,
            "consistency": cons,
            "symmetrisation": sym_json,
        }));
    }
    let mut r = Rendered::new(text, json!({ "ok": all_ok, "matrices": items }));
    r.status = if all_ok { 0 } else { 3 };
    Ok(r)
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

fn cmd_roots(a: &RootsArgs) -> Result<Rendered> {
    let roots = root_system(a.group);
    let rows: Vec<Vec<String>> = roots
        .iter()
        .map(|r| r.coords.iter().map(ToString::to_string).collect())
        .collect();
    let mut r = Rendered::new(
        String::new(),
        json!({ "group": a.group, "count": roots.len(), "roots": rows }),
    );
    r.raw = Some(match a.format {
        TableFormat::Json => serde_json::to_string_pretty(&r.json).map_err(|e| Error::Invalid(e.to_string()))? + "\n",
        TableFormat::Csv => {
            let header: Vec<String> = (1..=a.group.rank()).map(|i| format!("alpha{i}")).collect();
            csv_table(&header, &rows)?
        }
    });
    Ok(r)
}

fn csv_table(header: &[String], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Invalid(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Invalid(e.to_string()))
}

fn cmd_group(a: &GroupArgs) -> Result<Rendered> {
    let g = generate_group(a.group);
    if a.count_only {
        return Ok(Rendered::new(
            format!("{}\n", g.len()),
            json!({ "group": a.group, "order": g.len() }),
        ));
    }
    let mut text = format!("{} elements\n", g.len());
    for m in &g {
        let _ = writeln!(text, "{}\n", m.matrix);
    }
    let mats: Vec<&GMatrix> = g.iter().map(|m| &m.matrix).collect();
    Ok(Rendered::new(
        text,
        json!({ "group": a.group, "order": g.len(), "elements": mats }),
    ))
}

/// The affine root `α_0` of an H3 axis family member, as a multiple of `T`.
fn h3_affine_root(axis: &str, k: i64, gamma: &Rational) -> Result<(Family, u32, Quadruplet, G, Vec3G)> {
    let fam = family_for_axis(GroupId::H3, axis)?;
    let order = match fam {
        Family::H3TwoFold => 2,
        Family::H3ThreeFold => 3,
        _ => 5,
    };
    let q = rescale(&quadruplet_for_gamma(fam, gamma)?, k);
    let dec = classify_length(&q, fam)?
        .decomposition
        .ok_or_else(|| Error::Invalid(format!("{q} does not give a Q[tau] multiple of the axis")))?;
    let m = dec.multiplier();
    let t = h3_constants().axis(order)?.scale(&m);
    Ok((fam, order, q, m, t))
}

fn cmd_op(a: &OpArgs) -> Result<Rendered> {
    let gamma = parse_rational(&a.gamma)?;
    let (fam, order, q, m, alpha0) = h3_affine_root(&a.axis, a.k, &gamma)?;
    match a.emit {
        Emit::Matrix => {
            let raff = affine_reflection(&alpha0)?;
            let translation = raff.compose(&reflection(&alpha0)?);
            let twists = twist_family(&alpha0, order)?;
            let pure = twists.pure_translations().next().cloned();
            let mut text = format!("{fam} k={} {q}\nalpha0 = {m} * T{order} = {alpha0}\n", a.k);
            let _ = writeln!(
                text,
                "affine reflection:\n{}\nshift {}",
                indent(&raff.linear.to_string()),
                raff.shift
            );
            let _ = writeln!(text, "r_aff(alpha0) r(alpha0): shift {}", translation.shift);
            for c in &twists.choices {
                let _ = writeln!(text, "twist {:?}: shift {}", c.kind, c.operator.shift);
            }
            Ok(Rendered::new(
                text,
                json!({
                    "family": fam,
                    "k": a.k,
                    "quadruplet": q,
                    "multiplier": m,
                    "alpha0": alpha0,
                    "affine_reflection": raff,
                    "translation": translation,
                    "twists": twists.choices,
                    "pure_translation": pure,
                }),
            ))
        }
        Emit::Orbit => {
            let mut orbit: Vec<Vec3G> = h3_cartesian_group().iter().map(|g| mat_vec(g, &alpha0)).collect();
            orbit.sort();
            orbit.dedup();
            let mut text = format!("{} translation vectors\n", orbit.len());
            for v in &orbit {
                let _ = writeln!(text, "{v}");
            }
            Ok(Rendered::new(
                text,
                json!({ "family": fam, "k": a.k, "alpha0": alpha0, "orbit": orbit }),
            ))
        }
    }
}

fn cmd_array(a: &ArrayArgs) -> Result<Rendered> {
    let name: SeedName = a.seed.parse()?;
    let convention = match a.convention {
        ConventionArg::RootVertex => Convention::RootVertexRotations,
        ConventionArg::MirrorVertex => Convention::MirrorVertexFullGroup,
    };
    let seed = seed_with(name, convention);
    if seed.group != a.group {
        return Err(Error::FamilyMismatch {
            family: a.seed.clone(),
            group: a.group.to_string(),
        });
    }
    let axis = ArrayAxis::parse(a.group, &a.axis)?;
    let lengths = a.length.iter().map(|l| parse_golden(l)).collect::<Result<Vec<G>>>()?;

    if lengths.len() > 1 {
        let rows = cardinality_scan(&seed, axis, &lengths)?;
        let mut text = String::from("length\tlength^2\tcardinality\n");
        for r in &rows {
            let _ = writeln!(text, "{}\t{}\t{}", r.length, r.length_sq, r.cardinality);
        }
        let mut out = Rendered::new(text, json!({ "seed": name, "axis": axis, "rows": rows }));
        match a.out {
            ArrayFormat::Csv => {
                let table: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| vec![r.length.to_string(), r.length_sq.to_string(), r.cardinality.to_string()])
                    .collect();
                out.raw = Some(csv_table(
                    &["length".into(), "length_sq".into(), "cardinality".into()],
                    &table,
                )?);
            }
            ArrayFormat::Svg => return Err(Error::Invalid("SVG output needs a single --length".into())),
            ArrayFormat::Json => {}
        }
        return Ok(out);
    }

    let t = axis.vector(&lengths[0])?;
    let arr = generate_array(&seed, &t)?;
    let pts: Vec<Vec<String>> = arr
        .points
        .iter()
        .map(|p| p.iter().map(ToString::to_string).collect())
        .collect();
    let text = format!(
        "{} points ({} seed, length {})\n",
        arr.len(),
        seed.points.len(),
        lengths[0]
    );
    let mut out = Rendered::new(
        text,
        json!({ "seed": name, "axis": axis, "length": lengths[0], "translation": t, "cardinality": arr.len(), "points": pts }),
    );
    match a.out {
        ArrayFormat::Json => {
            out.raw = Some(serde_json::to_string_pretty(&out.json).map_err(|e| Error::Invalid(e.to_string()))? + "\n")
        }
        ArrayFormat::Csv => {
            let header: Vec<String> = (0..t.len()).map(|i| format!("c{}", i + 1)).collect();
            out.raw = Some(csv_table(&header, &pts)?);
        }
        ArrayFormat::Svg => {
            if seed.group != GroupId::H2 {
                return Err(Error::Invalid(
                    "SVG output is available for planar (h2) arrays only".into(),
                ));
            }
            out.raw = Some(svg(&arr.points, &seed.points));
        }
    }
    Ok(out)
}

fn svg(points: &std::collections::BTreeSet<Vec<G>>, seed: &std::collections::BTreeSet<Vec<G>>) -> String {
    let coords: Vec<([f64; 2], bool)> = points.iter().map(|p| (h2_embed(p), seed.contains(p))).collect();
    let r = coords
        .iter()
        .map(|(c, _)| c[0].abs().max(c[1].abs()))
        .fold(1.0f64, f64::max)
        * 1.1;
    let scale = 240.0 / r;
    let mut s = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"520\" viewBox=\"-260 -260 520 520\">\n",
    );
    for (c, is_seed) in &coords {
        let (fill, rad) = if *is_seed { ("#d62728", 6) } else { ("#1f77b4", 4) };
        let _ = writeln!(
            s,
            "  <circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"{rad}\" fill=\"{fill}\"/>",
            c[0] * scale,
            -c[1] * scale
        );
    }
    s.push_str("</svg>\n");
    s
}

type NamedSeries = (String, Quadruplet, (i64, i64));

fn cmd_lengths(a: &LengthsArgs) -> Result<Rendered> {
    let fam = family_for_axis(a.group, &a.axis)?;
    let single = |g: &str| -> Result<Vec<NamedSeries>> {
        let gamma = parse_rational(g)?;
        Ok(vec![(
            format!("gamma={gamma}"),
            quadruplet_for_gamma(fam, &gamma)?,
            parse_k_range(&a.k)?,
        )])
    };
    let series = match &a.gamma {
        Some(g) => single(g)?,
        None => {
            let named: Vec<_> = distinguished_series()
                .into_iter()
                .filter(|s| s.family == fam)
                .map(|s| (s.label.to_string(), s.base, s.k_range))
                .collect();
            if named.is_empty() {
                single("1")?
            } else {
                named
            }
        }
    };
    let mut text = String::new();
    let mut items = Vec::new();
    for (label, base, (k0, k1)) in series {
        let fib = family(&base, k0..=k1);
        let mults = length_multipliers(&fib, fam)?;
        let shown: Vec<String> = mults.iter().map(ToString::to_string).collect();
        if shown.len() == fib.members.len() {
            let _ = writeln!(text, "{fam} {label} base {base} k={k0}..{k1}: {{{}}}", shown.join(", "));
        } else {
            let sq: Vec<String> = fib
                .members
                .iter()
                .map(|m| Ok(classify_length(&m.quadruplet, fam)?.length_sq.to_string()))
                .collect::<Result<_>>()?;
            let _ = writeln!(
                text,
                "{fam} {label} base {base} k={k0}..{k1}: length^2 {{{}}}",
                sq.join(", ")
            );
        }
        let members: Vec<Value> = fib
            .members
            .iter()
            .map(|m| {
                let c = classify_length(&m.quadruplet, fam)?;
                Ok(json!({ "k": m.k, "quadruplet": m.quadruplet, "length_sq": c.length_sq, "decomposition": c.decomposition }))
            })
            .collect::<Result<_>>()?;
        items.push(json!({ "series": label, "base": base, "multipliers": mults, "members": members }));
    }
    Ok(Rendered::new(text, json!({ "family": fam, "series": items })))
}

//! Command-line front end. [`run`] parses arguments, dispatches to one
//! library pipeline and renders the result as JSON, CSV or text.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bdtriple::{
    collapse_mirrors, enumerate_triples_guarded, orbits_under_out, AdmissibleTriple, TripleError, DEFAULT_RANK_GUARD,
};
use crate::centralizer::{centralizer_shape, ReportRow};
use crate::exactnum::{ExtElem, LaurentPoly, MatK, RatFunc};
use crate::orders::{
    classify_cubic_algebra, classify_order_k2, classify_order_l, cubic_from_index_form, discriminant,
    enumerate_suborders_k3, enumerate_suborders_kl, lattice_class_count, lattice_class_oracle, reduce_gl2, reduce_gl3,
    same_coset_gl3, CosetForm3, IndexForm,
};
use crate::rmatrix::{build_rbd, cyb, verify_rmatrix};
use crate::rootsys::{root_coordinates, Family, LatticeTag, SimpleType};
use crate::twisted::{continuous_space_nontwisted, continuous_space_twisted, twistable_triples, ContinuousParameter, TwistCheck, TwistError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bdq", version, about = "Belavin-Drinfeld triples, centralizers, r-matrices and orders over C[[t]]")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Largest rank for which triples are enumerated.
    #[arg(long, default_value_t = DEFAULT_RANK_GUARD, global = true)]
    pub guard: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Admissible triples.
    #[command(subcommand)]
    Triples(TriplesCmd),
    /// Centralizer shape (torus rank and component group).
    Centralizer(CentralizerArgs),
    /// Shape tables for the exceptional types.
    #[command(subcommand)]
    Report(ReportCmd),
    /// Twisted r-matrices.
    #[command(subcommand)]
    Twisted(TwistedCmd),
    /// Explicit r-matrices in sl(n).
    #[command(subcommand)]
    Rmatrix(RmatrixCmd),
    /// Double cosets GL(n,O) \ GL(n,K) / Diag(n,K).
    #[command(subcommand)]
    Coset(CosetCmd),
    /// Orders in K^2, L, K^3 and K (+) L.
    #[command(subcommand)]
    Orders(OrdersCmd),
    /// Cubic rings from binary cubic forms.
    #[command(subcommand)]
    Cubic(CubicCmd),
}

#[derive(Debug, Subcommand)]
pub enum TriplesCmd {
    Enumerate {
        #[arg(long = "type")]
        ty: String,
        /// Drop the empty triple.
        #[arg(long)]
        nonempty: bool,
        /// Group into orbits of the diagram automorphism group.
        #[arg(long)]
        orbits: bool,
        /// Keep one triple of each mirror pair.
        #[arg(long)]
        unordered: bool,
        /// Print only the number of triples.
        #[arg(long)]
        count: bool,
    },
}

#[derive(Debug, Args)]
pub struct CentralizerArgs {
    #[arg(long = "type")]
    ty: String,
    /// `Q`, `P`, a JSON basis, or a file holding a JSON basis.
    #[arg(long)]
    lattice: String,
    /// A triple as JSON.
    #[arg(long, conflicts_with = "all")]
    triple: Option<String>,
    /// Every nonempty admissible triple (the default).
    #[arg(long)]
    all: bool,
}

#[derive(Debug, Subcommand)]
pub enum ReportCmd {
    Exceptional {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value = "P")]
        lattice: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum TwistedCmd {
    Check {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        triple: String,
    },
    List {
        #[arg(long = "type")]
        ty: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum RmatrixCmd {
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        triple: String,
        /// JSON file with `{"matrix": [[..]]}`; defaults to the solver's witness.
        #[arg(long)]
        r0: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CosetCmd {
    Reduce {
        #[arg(long)]
        n: usize,
        /// JSON file holding the matrix rows.
        #[arg(long)]
        matrix: String,
    },
    Same {
        /// `i,j,q` with `q` a Laurent polynomial in negative powers of t.
        #[arg(long)]
        form1: String,
        #[arg(long)]
        form2: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuborderAlgebra {
    K3,
    KL,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassifyAlgebra {
    K2,
    L,
}

#[derive(Debug, Subcommand)]
pub enum OrdersCmd {
    Enumerate {
        #[arg(long, value_enum, ignore_case = true)]
        algebra: SuborderAlgebra,
        #[arg(long)]
        index: u32,
    },
    Classify {
        #[arg(long, value_enum, ignore_case = true)]
        algebra: ClassifyAlgebra,
        /// JSON file with two basis vectors.
        #[arg(long)]
        basis: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum CubicCmd {
    Table(FormArg),
    Discriminant(FormArg),
    Classify(FormArg),
    /// Lattice-class count, optionally cross-checked by brute force.
    Lc {
        #[command(flatten)]
        form: FormArg,
        /// Also run the brute-force oracle up to this index.
        #[arg(long)]
        oracle_index: Option<u32>,
    },
}

#[derive(Debug, Args)]
pub struct FormArg {
    /// `a,b,c,d`, each a Laurent polynomial string.
    #[arg(long, allow_hyphen_values = true)]
    form: String,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("rank {rank} exceeds the enumeration guard {bound}; pass --guard {rank} to proceed")]
    Guard { rank: usize, bound: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Guard { .. } => EXIT_GUARD,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

impl From<TripleError> for CliError {
    fn from(e: TripleError) -> Self {
        match e {
            TripleError::RankGuard { rank, bound } => CliError::Guard { rank, bound },
            other => invalid(other),
        }
    }
}

impl From<TwistError> for CliError {
    fn from(e: TwistError) -> Self {
        match e {
            TwistError::Triple(t) => t.into(),
            other => invalid(other),
        }
    }
}

/// JSON payload: a single document, or one document per line.
#[derive(Debug, Clone)]
pub enum Json {
    Value(Value),
    Lines(Vec<Value>),
}

/// A rendered-on-demand result.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: Json,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Overrides the default column layout in text mode.
    pub text: Option<String>,
}

impl Output {
    fn new(json: Json, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Self {
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
            text: None,
        }
    }

    fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(match &self.json {
                Json::Value(v) => format!("{}\n", serde_json::to_string(v).map_err(invalid)?),
                Json::Lines(vs) => vs.iter().map(|v| format!("{v}\n")).collect(),
            }),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).map_err(invalid)?;
                for r in &self.rows {
                    w.write_record(r).map_err(invalid)?;
                }
                let bytes = w.into_inner().map_err(invalid)?;
                String::from_utf8(bytes).map_err(invalid)
            }
            Format::Text => Ok(match &self.text {
                Some(t) => format!("{t}\n"),
                None => columns(&self.header, &self.rows),
            }),
        }
    }
}

fn columns(header: &[String], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header);
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn list(v: &[usize]) -> String {
    v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn tau_cell(t: &AdmissibleTriple) -> String {
    t.tau.iter().map(|(a, b)| format!("{}->{}", a + 1, b + 1)).collect::<Vec<_>>().join(" ")
}

fn triple_row(t: &AdmissibleTriple) -> Vec<String> {
    vec![t.ty.to_string(), list(&t.gamma1), list(&t.gamma2), tau_cell(t)]
}

fn parse_type(s: &str) -> Result<SimpleType, CliError> {
    s.parse().map_err(invalid)
}

fn parse_triple(s: &str, ty: Option<SimpleType>) -> Result<AdmissibleTriple, CliError> {
    let t: AdmissibleTriple = serde_json::from_str(&read_or_inline(s)?).map_err(|e| invalid(format!("bad triple: {e}")))?;
    if let Some(ty) = ty {
        if t.ty != ty {
            return Err(invalid(format!("triple has type {} but --type is {ty}", t.ty)));
        }
    }
    if !t.check()? {
        return Err(invalid("triple is not admissible"));
    }
    Ok(t)
}

/// The argument itself, or the contents of the file it names.
fn read_or_inline(s: &str) -> Result<String, CliError> {
    let trimmed = s.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(s.to_string());
    }
    read_file(s)
}

fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| invalid(format!("{path}: {e}")))
}

fn parse_lattice(s: &str) -> Result<LatticeTag, CliError> {
    let text = if Path::new(s).is_file() { read_file(s)? } else { s.to_string() };
    text.parse().map_err(invalid)
}

fn enumerate(ty: SimpleType, include_empty: bool, guard: usize) -> Result<Vec<AdmissibleTriple>, CliError> {
    Ok(enumerate_triples_guarded(ty, include_empty, guard)?)
}

fn check_guard(ty: SimpleType, guard: usize) -> Result<(), CliError> {
    if ty.rank > guard {
        return Err(CliError::Guard { rank: ty.rank, bound: guard });
    }
    Ok(())
}

fn triples_cmd(cmd: &TriplesCmd, guard: usize) -> Result<Output, CliError> {
    let TriplesCmd::Enumerate { ty, nonempty, orbits, unordered, count } = cmd;
    let ty = parse_type(ty)?;
    let mut triples = enumerate(ty, !nonempty, guard)?;
    if *unordered {
        triples = collapse_mirrors(&triples);
    }
    if *count {
        let n = if *orbits { orbits_under_out(&triples).len() } else { triples.len() };
        return Ok(Output::new(Json::Value(json!(n)), &["count"], vec![vec![n.to_string()]]).with_text(n.to_string()));
    }
    let header = ["orbit", "type", "gamma1", "gamma2", "tau"];
    if *orbits {
        let groups = orbits_under_out(&triples);
        let rows = groups
            .iter()
            .enumerate()
            .flat_map(|(k, g)| {
                g.iter().map(move |t| {
                    let mut r = vec![(k + 1).to_string()];
                    r.extend(triple_row(t));
                    r
                })
            })
            .collect();
        let text = groups
            .iter()
            .enumerate()
            .map(|(k, g)| format!("orbit {}: {}", k + 1, g.iter().map(|t| t.label()).collect::<Vec<_>>().join(" | ")))
            .collect::<Vec<_>>()
            .join("\n");
        return Ok(Output::new(Json::Value(to_value(&groups)), &header, rows).with_text(text));
    }
    let rows = triples.iter().map(triple_row).collect();
    let text = triples.iter().map(|t| t.label()).collect::<Vec<_>>().join("\n");
    Ok(Output::new(Json::Value(to_value(&triples)), &header[1..], rows).with_text(text))
}

const SHAPE_HEADER: [&str; 7] = ["type", "gamma1", "gamma2", "tau", "strings", "torusRank", "torsion"];

fn shape_rows(ty: SimpleType, tag: &LatticeTag, triples: Vec<AdmissibleTriple>) -> Result<Vec<ReportRow>, CliError> {
    let lattice = root_coordinates(ty, tag).map_err(invalid)?;
    triples
        .into_par_iter()
        .map(|t| {
            let shape = centralizer_shape(&t, &lattice).map_err(invalid)?;
            Ok(ReportRow {
                strings: t.strings(),
                triple: t,
                torus_rank: shape.torus_rank,
                torsion: shape.torsion,
            })
        })
        .collect()
}

fn shape_output(rows: &[ReportRow]) -> Output {
    let table = rows
        .iter()
        .map(|r| {
            let mut cells = triple_row(&r.triple);
            cells.push(r.strings.to_string());
            cells.push(r.torus_rank.to_string());
            cells.push(r.torsion.iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
            cells
        })
        .collect();
    Output::new(Json::Lines(rows.iter().map(to_value).collect()), &SHAPE_HEADER, table)
}

fn centralizer_cmd(a: &CentralizerArgs, guard: usize) -> Result<Output, CliError> {
    let ty = parse_type(&a.ty)?;
    let tag = parse_lattice(&a.lattice)?;
    let triples = match &a.triple {
        Some(s) => vec![parse_triple(s, Some(ty))?],
        None => enumerate(ty, false, guard)?,
    };
    Ok(shape_output(&shape_rows(ty, &tag, triples)?))
}

fn report_cmd(cmd: &ReportCmd, guard: usize) -> Result<Output, CliError> {
    let ReportCmd::Exceptional { ty, lattice } = cmd;
    let ty = parse_type(ty)?;
    if ty.family != Family::E || !(6..=7).contains(&ty.rank) {
        return Err(invalid(format!("the exceptional report covers E6 and E7, got {ty}")));
    }
    let tag = parse_lattice(lattice)?;
    let rows = shape_rows(ty, &tag, enumerate(ty, false, guard)?)?;
    Ok(shape_output(&rows))
}

fn twisted_cmd(cmd: &TwistedCmd, guard: usize) -> Result<Output, CliError> {
    match cmd {
        TwistedCmd::Check { ty, triple } => {
            let ty = parse_type(ty)?;
            let t = parse_triple(triple, Some(ty))?;
            let check = match continuous_space_twisted(&t) {
                Ok(c) => c,
                Err(TwistError::DiscreteConditionsFail) => TwistCheck {
                    discrete_ok: false,
                    continuous_dim: -1,
                    witness: None,
                },
                Err(e) => return Err(e.into()),
            };
            let row = vec![check.discrete_ok.to_string(), check.continuous_dim.to_string(), check.witness.is_some().to_string()];
            let text = format!(
                "{}\ndiscrete conditions: {}\ncontinuous solution dimension: {}",
                t,
                if check.discrete_ok { "hold" } else { "fail" },
                check.continuous_dim
            );
            Ok(Output::new(Json::Value(to_value(&check)), &["discreteOk", "continuousDim", "witness"], vec![row]).with_text(text))
        }
        TwistedCmd::List { ty } => {
            let ty = parse_type(ty)?;
            let allowed = matches!((ty.family, ty.rank), (Family::E, 6) | (Family::D, 5) | (Family::D, 7));
            if !allowed {
                return Err(invalid(format!("twisted list covers E6, D5 and D7, got {ty}")));
            }
            check_guard(ty, guard)?;
            let triples = twistable_triples(ty)?;
            let rows = triples.iter().map(triple_row).collect();
            let text = triples.iter().map(|t| t.label()).collect::<Vec<_>>().join("\n");
            Ok(Output::new(Json::Value(to_value(&triples)), &["type", "gamma1", "gamma2", "tau"], rows).with_text(text))
        }
    }
}

fn rmatrix_cmd(cmd: &RmatrixCmd) -> Result<Output, CliError> {
    let RmatrixCmd::Verify { n, triple, r0 } = cmd;
    if !(2..=4).contains(n) {
        return Err(invalid(format!("--n must be 2, 3 or 4, got {n}")));
    }
    let ty = SimpleType::a(n - 1);
    let t = parse_triple(triple, Some(ty))?;
    let r0 = match r0 {
        Some(path) => serde_json::from_str::<ContinuousParameter>(&read_or_inline(path)?).map_err(|e| invalid(format!("bad r0: {e}")))?,
        None => continuous_space_nontwisted(&t)
            .1
            .ok_or_else(|| invalid("the continuous conditions on r0 have no solution"))?,
    };
    let r = build_rbd(&t, &r0).map_err(invalid)?;
    let cyb_terms = cyb(&r).nonzero_count();
    let ok = verify_rmatrix(&r);
    let value = json!({
        "n": n,
        "triple": to_value(&t),
        "r0": to_value(&r0),
        "cybNonzeroTerms": cyb_terms,
        "verified": ok,
    });
    let text = format!("{t}\nCYB nonzero terms: {cyb_terms}\nverified: {ok}");
    Ok(Output::new(Json::Value(value), &["n", "cybNonzeroTerms", "verified"], vec![vec![n.to_string(), cyb_terms.to_string(), ok.to_string()]])
        .with_text(text))
}

fn parse_matrix(path: &str, n: usize) -> Result<MatK, CliError> {
    let rows: Vec<Vec<RatFunc>> =
        serde_json::from_str(&read_or_inline(path)?).map_err(|e| invalid(format!("bad matrix: {e}")))?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(invalid(format!("expected a {n}x{n} matrix")));
    }
    Ok(MatK::from_rows(rows))
}

fn parse_coset_form(s: &str) -> Result<CosetForm3, CliError> {
    let mut parts = s.splitn(3, ',');
    let mut num = |what: &str| -> Result<u32, CliError> {
        parts
            .next()
            .and_then(|x| x.trim().parse().ok())
            .ok_or_else(|| invalid(format!("form {s:?}: missing or bad {what}")))
    };
    let i = num("i")?;
    let j = num("j")?;
    let q: LaurentPoly = match parts.next() {
        Some(q) if !q.trim().is_empty() => q.parse().map_err(invalid)?,
        _ => LaurentPoly::zero(),
    };
    CosetForm3::new(i, j, q).map_err(invalid)
}

fn coset3_row(f: &CosetForm3) -> Vec<String> {
    vec![f.i.to_string(), f.j.to_string(), f.q.to_string()]
}

fn coset_cmd(cmd: &CosetCmd) -> Result<Output, CliError> {
    match cmd {
        CosetCmd::Reduce { n: 2, matrix } => {
            let f = reduce_gl2(&parse_matrix(matrix, 2)?).map_err(invalid)?;
            Ok(Output::new(Json::Value(json!({ "i": f.i })), &["i"], vec![vec![f.i.to_string()]]).with_text(format!("T_{}", f.i)))
        }
        CosetCmd::Reduce { n: 3, matrix } => {
            let f = reduce_gl3(&parse_matrix(matrix, 3)?).map_err(invalid)?;
            let value = json!({ "i": f.i, "j": f.j, "q": f.q.to_string() });
            let text = format!("T_{{{},{}}}({})", f.i, f.j, f.q);
            Ok(Output::new(Json::Value(value), &["i", "j", "q"], vec![coset3_row(&f)]).with_text(text))
        }
        CosetCmd::Reduce { n, .. } => Err(invalid(format!("--n must be 2 or 3, got {n}"))),
        CosetCmd::Same { form1, form2 } => {
            let (f1, f2) = (parse_coset_form(form1)?, parse_coset_form(form2)?);
            let same = same_coset_gl3(&f1, &f2);
            Ok(Output::new(Json::Value(json!({ "same": same })), &["same"], vec![vec![same.to_string()]]).with_text(same.to_string()))
        }
    }
}

fn orders_cmd(cmd: &OrdersCmd) -> Result<Output, CliError> {
    match cmd {
        OrdersCmd::Enumerate { algebra, index } => {
            let header = ["name", "index", "gorenstein"];
            let (json, rows): (Value, Vec<Vec<String>>) = match algebra {
                SuborderAlgebra::K3 => {
                    let list = enumerate_suborders_k3(*index);
                    let rows = list.iter().map(|c| vec![c.to_string(), c.index().to_string(), c.is_gorenstein().to_string()]).collect();
                    (class_json(&list, |c| (c.to_string(), c.is_gorenstein())), rows)
                }
                SuborderAlgebra::KL => {
                    let list = enumerate_suborders_kl(*index);
                    let rows = list.iter().map(|c| vec![c.to_string(), c.index().to_string(), c.is_gorenstein().to_string()]).collect();
                    (class_json(&list, |c| (c.to_string(), c.is_gorenstein())), rows)
                }
            };
            Ok(Output::new(Json::Value(json), &header, rows))
        }
        OrdersCmd::Classify { algebra, basis } => {
            let text = read_or_inline(basis)?;
            let k = match algebra {
                ClassifyAlgebra::K2 => {
                    let vs: Vec<Vec<RatFunc>> = serde_json::from_str(&text).map_err(|e| invalid(format!("bad basis: {e}")))?;
                    classify_order_k2(&vs).map_err(invalid)?
                }
                ClassifyAlgebra::L => {
                    let vs: Vec<[LaurentPoly; 2]> =
                        serde_json::from_str(&text).map_err(|e| invalid(format!("bad basis: {e}")))?;
                    let elems: Vec<ExtElem> = vs.into_iter().map(|[e, o]| ExtElem::new(e, o)).collect();
                    classify_order_l(&elems).map_err(invalid)?
                }
            };
            let name = format!("Λ_{k}");
            Ok(Output::new(Json::Value(json!({ "index": k, "name": name })), &["index", "name"], vec![vec![k.to_string(), name.clone()]])
                .with_text(name))
        }
    }
}

fn class_json<C: Serialize>(list: &[C], info: impl Fn(&C) -> (String, bool)) -> Value {
    Value::Array(
        list.iter()
            .map(|c| {
                let (name, gorenstein) = info(c);
                let mut v = to_value(c);
                v["name"] = json!(name);
                v["gorenstein"] = json!(gorenstein);
                v
            })
            .collect(),
    )
}

fn parse_form(f: &FormArg) -> Result<IndexForm, CliError> {
    f.form.parse().map_err(invalid)
}

fn cubic_cmd(cmd: &CubicCmd) -> Result<Output, CliError> {
    match cmd {
        CubicCmd::Table(f) => {
            let ring = cubic_from_index_form(&parse_form(f)?);
            let coords = |v: &[RatFunc; 3]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
            let rows = vec![
                [vec!["w*th".to_string()], coords(&ring.omega_theta)].concat(),
                [vec!["w^2".to_string()], coords(&ring.omega_sq)].concat(),
                [vec!["th^2".to_string()], coords(&ring.theta_sq)].concat(),
            ];
            Ok(Output::new(Json::Value(to_value(&ring)), &["product", "1", "w", "th"], rows))
        }
        CubicCmd::Discriminant(f) => {
            let d = discriminant(&parse_form(f)?).to_string();
            Ok(Output::new(Json::Value(json!(d)), &["discriminant"], vec![vec![d.clone()]]).with_text(d))
        }
        CubicCmd::Classify(f) => {
            let form = parse_form(f)?;
            let kind = classify_cubic_algebra(&form).to_string();
            let d = discriminant(&form).to_string();
            Ok(Output::new(
                Json::Value(json!({ "type": kind, "discriminant": d })),
                &["type", "discriminant"],
                vec![vec![kind.clone(), d]],
            )
            .with_text(kind))
        }
        CubicCmd::Lc { form, oracle_index } => {
            let form = parse_form(form)?;
            let lc = lattice_class_count(&form).map_err(invalid)?;
            let oracle = match oracle_index {
                Some(m) => Some(lattice_class_oracle(&form, *m).map_err(invalid)?),
                None => None,
            };
            let mut value = json!({ "lc": lc });
            let mut header = vec!["lc"];
            let mut row = vec![lc.to_string()];
            let mut text = lc.to_string();
            if let (Some(o), Some(m)) = (oracle, oracle_index) {
                value["oracle"] = json!({ "maxIndex": m, "classes": o });
                header.extend(["oracleMaxIndex", "oracleClasses"]);
                row.extend([m.to_string(), o.to_string()]);
                text = format!("{lc} (brute force up to index {m}: {o})");
            }
            Ok(Output::new(Json::Value(value), &header, vec![row]).with_text(text))
        }
    }
}

/// Executes a parsed command line.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Triples(c) => triples_cmd(c, cli.guard),
        Command::Centralizer(a) => centralizer_cmd(a, cli.guard),
        Command::Report(c) => report_cmd(c, cli.guard),
        Command::Twisted(c) => twisted_cmd(c, cli.guard),
        Command::Rmatrix(c) => rmatrix_cmd(c),
        Command::Coset(c) => coset_cmd(c),
        Command::Orders(c) => orders_cmd(c),
        Command::Cubic(c) => cubic_cmd(c),
    }
}

/// Pool size from `BDQ_WORKERS`, if set to a positive integer.
fn workers_from_env() -> Option<usize> {
    std::env::var("BDQ_WORKERS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Runs the CLI on `argv` (program name first), writing to the given streams,
/// and returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match workers_from_env() {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(invalid(e)),
        },
        None => execute(&cli),
    };
    match result.and_then(|o| o.render(cli.format)) {
        Ok(s) => {
            if out.write_all(s.as_bytes()).is_err() {
                return EXIT_INVALID;
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs the CLI against the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

//! The `coha` command-line front end.
//!
//! [`run`] parses an argument vector, dispatches to the library and returns
//! the exit code together with what would go to stdout and stderr.

use std::ffi::OsString;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use higgs_coha::grcoha::{
    downset_series, fundamental_class, generation_shadow, hmodule_act, leading_product,
    strata_sheaf_classes, stratum_series, GenClass, StratumClass, LEADING_TERM_TAG,
};
use higgs_coha::jordan::{
    downset, enumerate_bounded, enumerate_rank0, render_young, DiagramFormat, Enumeration,
    EnumerationBounds, JordanType, RowClasses,
};
use higgs_coha::ktheory::{
    dim_coh, dim_ext_stack, dim_higgs, euler_coh, euler_higgs, rank_q_fibration,
};
use higgs_coha::tautalg::{
    chern_to_chchar, counit_at, flip, free_slot_chern, hpoly_mul, k_difference,
    kunneth_total_chern, parse_hpoly, poincare_coh_positive_rank, poincare_coh_torsion,
    twist_class, universal_sheaf, Gen, HPoly, Poly, QSeries, SheafClass, Whitney,
};
use higgs_coha::{CurveModel, Error, NumClass};

/// Subcommands and the library operations each one exposes.
pub const OPERATIONS: &[(&str, &[&str])] = &[
    ("euler coh", &["euler_coh"]),
    ("euler higgs", &["euler_higgs"]),
    ("slope", &["slope"]),
    ("twist", &["twist"]),
    ("class positive", &["is_positive"]),
    ("class leq", &["leq_standard"]),
    ("dims coh", &["dim_coh"]),
    ("dims higgs", &["dim_higgs"]),
    ("dims ext", &["dim_ext_stack"]),
    ("dims qrank", &["rank_q_fibration"]),
    ("dims qcorr", &["dim_q_correspondence"]),
    ("dims vbrank", &["vb_stack_rank"]),
    ("jordan total", &["total_class"]),
    ("jordan rows", &["row_classes"]),
    ("jordan decode", &["rows_to_type"]),
    ("jordan kernel", &["kernel_class"]),
    ("jordan preceq", &["preceq"]),
    ("jordan enum", &["enumerate_rank0", "enumerate_bounded"]),
    ("jordan downset", &["downset"]),
    ("jordan diagram", &["render_young"]),
    ("series coh", &["poincare_coh_positive_rank"]),
    ("series torsion", &["poincare_coh_torsion"]),
    ("series stratum", &["stratum_series"]),
    ("series downset", &["downset_series"]),
    ("hopf mul", &["hpoly_mul"]),
    ("hopf coproduct", &["coproduct"]),
    ("hopf verify", &[]),
    ("chern total", &["kunneth_total_chern"]),
    ("chern ch", &["chern_to_chchar"]),
    ("chern twist", &["twist_class"]),
    ("chern diff", &["k_difference"]),
    ("gr fundamental", &["fundamental_class"]),
    ("gr product", &["leading_product"]),
    ("gr act", &["hmodule_act"]),
    ("gr sheaves", &["strata_sheaf_classes"]),
    ("gr shadow", &["generation_shadow"]),
];

#[derive(Parser, Debug)]
#[command(
    name = "coha",
    version,
    about = "Exact computations on the nilpotent Higgs COHA of a curve"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CliConfig {
    /// Genus of the curve.
    #[arg(long, global = true, default_value_t = 0)]
    pub genus: u32,
    /// Truncation order: maximal cohomological degree kept.
    #[arg(long = "N", global = true, default_value_t = 4)]
    pub truncation: u32,
    /// Maximal Jordan type length for bounded enumerations.
    #[arg(long = "max-len", global = true, default_value_t = 3)]
    pub max_len: usize,
    /// Degree window for bounded enumerations.
    #[arg(long, global = true, default_value_t = 2)]
    pub window: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Tex,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Euler forms.
    #[command(subcommand)]
    Euler(Euler),
    /// Slope `d/r` of a class.
    Slope {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// `α(n)`: twist by a line bundle of degree `n`.
    Twist {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        n: String,
    },
    /// Positivity and the standard order on classes.
    #[command(subcommand)]
    Class(ClassCmd),
    /// Dimensions of stacks and correspondences.
    #[command(subcommand)]
    Dims(Dims),
    /// Jordan types.
    #[command(subcommand)]
    Jordan(Jordan),
    /// Poincaré series.
    #[command(subcommand)]
    Series(Series),
    /// The tautological algebra and its coproduct.
    #[command(subcommand)]
    Hopf(Hopf),
    /// Künneth Chern calculus of universal sheaves.
    #[command(subcommand)]
    Chern(Chern),
    /// Leading terms in the associated graded.
    #[command(subcommand)]
    Gr(Gr),
}

#[derive(Subcommand, Debug)]
pub enum Euler {
    Coh {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    Higgs {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ClassCmd {
    Positive {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Whether `b <= a`.
    Leq {
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Dims {
    Coh {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    Higgs {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Stack of extensions with quotient `a` and subsheaf `b`.
    Ext {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Rank of the affine fibration on Quot charts.
    Qrank {
        #[arg(long, allow_hyphen_values = true)]
        line: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Relative dimension of the convolution correspondence for row classes.
    Qcorr {
        #[arg(long, allow_hyphen_values = true)]
        rows: String,
    },
    /// Rank of the vector bundle stack over a stratum.
    Vbrank {
        #[arg(long = "type", allow_hyphen_values = true)]
        jordan: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Jordan {
    Total {
        #[arg(long = "type", allow_hyphen_values = true)]
        jordan: String,
    },
    Rows {
        #[arg(long = "type", allow_hyphen_values = true)]
        jordan: String,
    },
    Decode {
        #[arg(long, allow_hyphen_values = true)]
        rows: String,
    },
    Kernel {
        #[arg(long = "type", allow_hyphen_values = true)]
        jordan: String,
        #[arg(long)]
        k: String,
    },
    /// Whether `b ⪯ a`.
    Preceq {
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// All types of class `(0, d)`, or a bounded enumeration for `--class`.
    Enum {
        #[arg(long, conflicts_with = "class", required_unless_present = "class")]
        rank0: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        class: Option<String>,
    },
    Downset {
        #[arg(long = "type", allow_hyphen_values = true)]
        jordan: String,
    },
    Diagram {
        #[arg(long = "type", allow_hyphen_values = true)]
        jordan: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Series {
    /// `H*(Coh_α)` for positive rank.
    Coh,
    Torsion {
        #[arg(long)]
        d: String,
    },
    Stratum {
        #[arg(long = "type", allow_hyphen_values = true)]
        jordan: String,
    },
    Downset {
        #[arg(long = "type", allow_hyphen_values = true)]
        jordan: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Hopf {
    Mul {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    Coproduct {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Checks coassociativity, cocommutativity and the counit on all
    /// generators up to degree `N`, for degrees in the window.
    Verify,
}

#[derive(Subcommand, Debug)]
pub enum Chern {
    /// `c(⊕_k pr_k^* 𝔈_{α_k})` for `;`-separated slot classes.
    Total {
        #[arg(long, allow_hyphen_values = true)]
        slots: String,
    },
    /// Chern character of the universal sheaf.
    Ch {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Universal sheaf twisted by a line bundle of degree `by`.
    Twist {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        by: String,
    },
    /// `[pr_1^* 𝔈_a ⊕ pr_2^* 𝔈_b] - [pr_2^* 𝔈_b]`.
    Diff {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Gr {
    Fundamental {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Leading term of a product; factors in product order (`γ_s` first).
    Product {
        #[arg(long, allow_hyphen_values = true)]
        classes: String,
        /// `;`-separated polynomials, one per factor (default all `1`).
        #[arg(long, allow_hyphen_values = true)]
        payloads: Option<String>,
    },
    /// `h` acting on the leading term of a product.
    Act {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        classes: String,
        #[arg(long, allow_hyphen_values = true)]
        payloads: Option<String>,
    },
    Sheaves {
        #[arg(long = "type", allow_hyphen_values = true)]
        jordan: String,
    },
    /// Degree-by-degree generation check up to degree `N`.
    Shadow {
        #[arg(long = "type", allow_hyphen_values = true)]
        jordan: String,
    },
}

/// Why a command failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad input, attributed to an argument.
    Validation {
        arg: String,
        message: String,
    },
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation { .. } => 2,
            CliError::Internal(_) => 1,
        }
    }

    fn invalid(arg: &str, message: impl Into<String>) -> Self {
        CliError::Validation {
            arg: arg.to_string(),
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation { arg, message } => write!(f, "invalid argument {arg}: {message}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

/// Attributes a library error to the argument `arg`.
fn blame(arg: &str) -> impl Fn(Error) -> CliError + '_ {
    move |e| match e {
        Error::NotUnipotent | Error::NotNilpotent => CliError::Internal(e.to_string()),
        other => CliError::invalid(arg, other.to_string()),
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(arg: &str, value: &str) -> Result<T, CliError> {
    value.parse().map_err(blame(arg))
}

fn parse_int(arg: &str, value: &str) -> Result<BigInt, CliError> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::invalid(arg, format!("expected an integer, got `{value}`")))
}

fn parse_poly(arg: &str, value: &str, curve: &CurveModel) -> Result<HPoly, CliError> {
    parse_hpoly(value, curve).map_err(blame(arg))
}

fn parse_classes(arg: &str, value: &str) -> Result<Vec<NumClass>, CliError> {
    value
        .split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse(arg, p))
        .collect()
}

/// A command result in every output format.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub op: String,
    pub inputs: Value,
    pub result: Value,
    pub bounds: Value,
    pub text: String,
    pub tex: Option<String>,
}

impl Output {
    fn new(op: &str, inputs: Value, result: Value, text: impl Into<String>) -> Self {
        Output {
            op: op.to_string(),
            inputs,
            result,
            bounds: Value::Null,
            text: text.into(),
            tex: None,
        }
    }

    fn bounds(mut self, bounds: Value) -> Self {
        self.bounds = bounds;
        self
    }

    fn tex(mut self, tex: String) -> Self {
        self.tex = Some(tex);
        self
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = match format {
            Format::Json => {
                let doc = json!({
                    "op": self.op,
                    "inputs": self.inputs,
                    "result": self.result,
                    "bounds": self.bounds,
                });
                serde_json::to_string_pretty(&doc).expect("JSON values always serialize")
            }
            Format::Text => self.text.clone(),
            Format::Tex => self.tex.clone().unwrap_or_else(|| self.text.clone()),
        };
        if !out.ends_with('\n') {
            out.push('\n');
        }
        out
    }
}

fn int(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(n.to_string()),
    }
}

fn class_json(a: &NumClass) -> Value {
    json!({ "rank": int(&a.rank), "degree": int(&a.degree) })
}

fn class_text(a: &NumClass) -> String {
    format!("{},{}", a.rank, a.degree)
}

fn enumeration_json(e: &Enumeration) -> Value {
    json!({
        "max_len": e.bounds.max_len,
        "degree_window": e.bounds.degree_window,
        "exact": e.exact,
    })
}

fn types_text(types: &[JordanType]) -> String {
    types
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("\n")
}

fn series_tex(s: &QSeries) -> String {
    let text = s.to_string();
    let mut out = String::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '^' {
            let mut exp = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                exp.push(*d);
                chars.next();
            }
            out.push_str(&format!("^{{{exp}}}"));
        } else {
            out.push(c);
        }
    }
    out
}

fn truncation_bounds(cfg: &CliConfig) -> Value {
    json!({ "N": cfg.truncation })
}

/// Parses `--classes`/`--payloads` into factors in product order.
fn factors(
    classes: &str,
    payloads: Option<&str>,
    curve: &CurveModel,
) -> Result<Vec<GenClass>, CliError> {
    let classes = parse_classes("--classes", classes)?;
    let polys: Vec<HPoly> = match payloads {
        None => vec![higgs_coha::tautalg::hpoly_one(); classes.len()],
        Some(p) => p
            .split(';')
            .map(|x| parse_poly("--payloads", x, curve))
            .collect::<Result<_, _>>()?,
    };
    if polys.len() != classes.len() {
        return Err(CliError::invalid(
            "--payloads",
            format!("{} payloads for {} classes", polys.len(), classes.len()),
        ));
    }
    classes
        .into_iter()
        .zip(polys)
        .map(|(a, p)| GenClass::new(a, p).map_err(blame("--classes")))
        .collect()
}

fn stratum_output(
    op: &str,
    inputs: Value,
    x: &StratumClass,
    curve: &CurveModel,
    cfg: &CliConfig,
) -> Output {
    let text = format!("{}\n({LEADING_TERM_TAG})", x.render(curve));
    Output::new(op, inputs, x.to_json(curve), text).bounds(truncation_bounds(cfg))
}

fn sheaf_json(
    e: &SheafClass<impl higgs_coha::tautalg::Monomial + higgs_coha::tautalg::Render>,
    curve: &CurveModel,
) -> Value {
    json!({
        "rank": int(&e.rank),
        "total_chern": e.chern.poly().to_json(curve),
    })
}

/// Runs one parsed command.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let cfg = &cli.config;
    let curve = CurveModel::new(cfg.genus);
    let n = cfg.truncation;
    let g = json!(cfg.genus);
    Ok(match &cli.command {
        Command::Euler(e) => {
            let (op, a, b, f): (_, _, _, fn(&NumClass, &NumClass, &CurveModel) -> BigInt) = match e
            {
                Euler::Coh { a, b } => ("euler coh", a, b, euler_coh),
                Euler::Higgs { a, b } => ("euler higgs", a, b, euler_higgs),
            };
            let (ca, cb) = (parse::<NumClass>("--a", a)?, parse::<NumClass>("--b", b)?);
            let v = f(&ca, &cb, &curve);
            Output::new(
                op,
                json!({"genus": g, "a": a, "b": b}),
                int(&v),
                v.to_string(),
            )
        }
        Command::Slope { a } => {
            let s = parse::<NumClass>("--a", a)?.slope().map_err(blame("--a"))?;
            Output::new(
                "slope",
                json!({"a": a}),
                json!(s.to_string()),
                s.to_string(),
            )
        }
        Command::Twist { a, n: by } => {
            let t = parse::<NumClass>("--a", a)?.twist(&parse_int("--n", by)?);
            Output::new(
                "twist",
                json!({"a": a, "n": by}),
                class_json(&t),
                class_text(&t),
            )
        }
        Command::Class(c) => {
            let (op, inputs, v) = match c {
                ClassCmd::Positive { a } => (
                    "class positive",
                    json!({"a": a}),
                    parse::<NumClass>("--a", a)?.is_positive(),
                ),
                ClassCmd::Leq { b, a } => (
                    "class leq",
                    json!({"a": a, "b": b}),
                    parse::<NumClass>("--b", b)?.leq(&parse("--a", a)?),
                ),
            };
            Output::new(op, inputs, json!(v), v.to_string())
        }
        Command::Dims(d) => {
            let (op, inputs, v) = match d {
                Dims::Coh { a } => (
                    "dims coh",
                    json!({"a": a}),
                    dim_coh(&parse("--a", a)?, &curve),
                ),
                Dims::Higgs { a } => (
                    "dims higgs",
                    json!({"a": a}),
                    dim_higgs(&parse("--a", a)?, &curve),
                ),
                Dims::Ext { a, b } => (
                    "dims ext",
                    json!({"a": a, "b": b}),
                    dim_ext_stack(&parse("--a", a)?, &parse("--b", b)?, &curve),
                ),
                Dims::Qrank { line, a, b } => (
                    "dims qrank",
                    json!({"line": line, "a": a, "b": b}),
                    rank_q_fibration(
                        &parse_int("--line", line)?,
                        &parse("--a", a)?,
                        &parse("--b", b)?,
                        &curve,
                    ),
                ),
                Dims::Qcorr { rows } => (
                    "dims qcorr",
                    json!({"rows": rows}),
                    parse::<RowClasses>("--rows", rows)?.dim_q_correspondence(&curve),
                ),
                Dims::Vbrank { jordan } => (
                    "dims vbrank",
                    json!({"type": jordan}),
                    parse::<JordanType>("--type", jordan)?.vb_stack_rank(&curve),
                ),
            };
            let mut inputs = inputs;
            inputs["genus"] = g;
            Output::new(op, inputs, int(&v), v.to_string())
        }
        Command::Jordan(j) => jordan(j, cfg, &curve)?,
        Command::Series(s) => {
            let (op, inputs, series, bounds) = match s {
                Series::Coh => (
                    "series coh",
                    json!({}),
                    poincare_coh_positive_rank(&curve, n),
                    None,
                ),
                Series::Torsion { d } => {
                    let dv = u32::try_from(parse_int("--d", d)?)
                        .map_err(|_| CliError::invalid("--d", "expected a non-negative degree"))?;
                    (
                        "series torsion",
                        json!({"d": d}),
                        poincare_coh_torsion(&curve, dv, n),
                        None,
                    )
                }
                Series::Stratum { jordan } => {
                    let t = parse::<JordanType>("--type", jordan)?;
                    let s = stratum_series(&t, &curve, n).map_err(blame("--type"))?;
                    ("series stratum", json!({"type": jordan}), s, None)
                }
                Series::Downset { jordan } => {
                    let t = parse::<JordanType>("--type", jordan)?;
                    let (s, e) =
                        downset_series(&t, cfg.window, &curve, n).map_err(blame("--type"))?;
                    (
                        "series downset",
                        json!({"type": jordan}),
                        s,
                        Some(enumeration_json(&e)),
                    )
                }
            };
            let mut inputs = inputs;
            inputs["genus"] = g;
            let mut bounds_v = truncation_bounds(cfg);
            if let Some(Value::Object(extra)) = bounds {
                bounds_v.as_object_mut().expect("object").extend(extra);
            }
            Output::new(op, inputs, series.to_json(), series.to_string())
                .bounds(bounds_v)
                .tex(series_tex(&series))
        }
        Command::Hopf(h) => hopf(h, cfg, &curve)?,
        Command::Chern(c) => chern(c, cfg, &curve)?,
        Command::Gr(gr) => grcmd(gr, cfg, &curve)?,
    })
}

fn jordan(j: &Jordan, cfg: &CliConfig, curve: &CurveModel) -> Result<Output, CliError> {
    let g = json!(cfg.genus);
    Ok(match j {
        Jordan::Total { jordan } => {
            let a = parse::<JordanType>("--type", jordan)?.total_class(curve);
            Output::new(
                "jordan total",
                json!({"type": jordan, "genus": g}),
                class_json(&a),
                class_text(&a),
            )
        }
        Jordan::Rows { jordan } => {
            let rows = parse::<JordanType>("--type", jordan)?.row_classes(curve);
            let text = rows
                .rows()
                .iter()
                .map(class_text)
                .collect::<Vec<_>>()
                .join(";");
            let result = Value::Array(rows.rows().iter().map(class_json).collect());
            Output::new(
                "jordan rows",
                json!({"type": jordan, "genus": g}),
                result,
                text,
            )
        }
        Jordan::Decode { rows } => {
            let t = parse::<RowClasses>("--rows", rows)?
                .to_type(curve)
                .map_err(blame("--rows"))?;
            Output::new(
                "jordan decode",
                json!({"rows": rows, "genus": g}),
                json!(t.to_string()),
                t.to_string(),
            )
        }
        Jordan::Kernel { jordan, k } => {
            let t = parse::<JordanType>("--type", jordan)?;
            let k = usize::try_from(parse_int("--k", k)?)
                .ok()
                .filter(|k| *k >= 1)
                .ok_or_else(|| CliError::invalid("--k", "expected a positive integer"))?;
            let a = t.kernel_class(k, curve);
            Output::new(
                "jordan kernel",
                json!({"type": jordan, "k": k, "genus": g}),
                class_json(&a),
                class_text(&a),
            )
        }
        Jordan::Preceq { b, a } => {
            let (tb, ta) = (
                parse::<JordanType>("--b", b)?,
                parse::<JordanType>("--a", a)?,
            );
            if tb.total_class(curve) != ta.total_class(curve) {
                return Err(CliError::invalid(
                    "--b",
                    "types of different total classes are not comparable",
                ));
            }
            let v = tb.preceq(&ta, curve);
            Output::new(
                "jordan preceq",
                json!({"a": a, "b": b, "genus": g}),
                json!(v),
                v.to_string(),
            )
        }
        Jordan::Enum { rank0, class } => match (rank0, class) {
            (Some(d), _) => {
                let d = u64::try_from(parse_int("--rank0", d)?)
                    .map_err(|_| CliError::invalid("--rank0", "expected a non-negative degree"))?;
                if d > 40 {
                    return Err(CliError::invalid("--rank0", "degree above 40"));
                }
                let types = enumerate_rank0(d);
                let result = Value::Array(types.iter().map(|t| json!(t.to_string())).collect());
                Output::new(
                    "jordan enum",
                    json!({"rank0": d}),
                    result,
                    types_text(&types),
                )
                .bounds(json!({"exact": true}))
            }
            (None, Some(a)) => {
                let alpha = parse::<NumClass>("--class", a)?;
                let bounds = EnumerationBounds {
                    max_len: cfg.max_len,
                    degree_window: cfg.window,
                };
                let e = enumerate_bounded(&alpha, bounds, curve).map_err(blame("--class"))?;
                let result = Value::Array(e.types.iter().map(|t| json!(t.to_string())).collect());
                Output::new(
                    "jordan enum",
                    json!({"class": a, "genus": g}),
                    result,
                    types_text(&e.types),
                )
                .bounds(enumeration_json(&e))
            }
            (None, None) => {
                return Err(CliError::invalid(
                    "--rank0",
                    "one of --rank0, --class is required",
                ))
            }
        },
        Jordan::Downset { jordan } => {
            let t = parse::<JordanType>("--type", jordan)?;
            let e = downset(&t, cfg.window, curve).map_err(blame("--type"))?;
            let result = Value::Array(e.types.iter().map(|t| json!(t.to_string())).collect());
            Output::new(
                "jordan downset",
                json!({"type": jordan, "genus": g}),
                result,
                types_text(&e.types),
            )
            .bounds(enumeration_json(&e))
        }
        Jordan::Diagram { jordan } => {
            let t = parse::<JordanType>("--type", jordan)?;
            let text = render_young(&t, curve, DiagramFormat::Text);
            let tex = render_young(&t, curve, DiagramFormat::Tex);
            let result = json!({"text": text, "tex": tex});
            Output::new(
                "jordan diagram",
                json!({"type": jordan, "genus": g}),
                result,
                text,
            )
            .tex(tex)
        }
    })
}

fn hopf(h: &Hopf, cfg: &CliConfig, curve: &CurveModel) -> Result<Output, CliError> {
    let n = cfg.truncation;
    let g = json!(cfg.genus);
    Ok(match h {
        Hopf::Mul { p, q } => {
            let prod = hpoly_mul(&parse_poly("--p", p, curve)?, &parse_poly("--q", q, curve)?);
            Output::new(
                "hopf mul",
                json!({"p": p, "q": q, "genus": g}),
                prod.to_json(curve),
                prod.render(curve),
            )
        }
        Hopf::Coproduct { p, a, b } => {
            let poly = parse_poly("--p", p, curve)?;
            let (ca, cb) = (parse::<NumClass>("--a", a)?, parse::<NumClass>("--b", b)?);
            let d =
                higgs_coha::tautalg::coproduct(&poly, &ca, &cb, curve, n).map_err(blame("--p"))?;
            Output::new(
                "hopf coproduct",
                json!({"p": p, "a": a, "b": b, "genus": g}),
                d.to_json(curve),
                d.render(curve),
            )
            .bounds(truncation_bounds(cfg))
        }
        Hopf::Verify => {
            let w = i64::try_from(cfg.window)
                .map_err(|_| CliError::invalid("--window", "window too large"))?;
            if w > 6 {
                return Err(CliError::invalid("--window", "window above 6"));
            }
            let gens = Gen::all(curve, n);
            let class = |d: i64| NumClass::new(1, d);
            let zero = NumClass::zero();
            let (mut coassoc, mut cocomm, mut counit) = (true, true, true);
            let mut checked = 0u64;
            for d1 in -w..=w {
                for d2 in -w..=w {
                    let w12 = Whitney::new(&[class(d1), class(d2)], curve, n);
                    let w21 = Whitney::new(&[class(d2), class(d1)], curve, n);
                    for gen in &gens {
                        cocomm &= flip(&w12.image(gen)) == w21.image(gen);
                    }
                    for d3 in -w..=w {
                        let left = Whitney::new(&[class(d1 + d2), class(d3)], curve, n);
                        let right = Whitney::new(&[class(d1), class(d2 + d3)], curve, n);
                        let w23 = Whitney::new(&[class(d2), class(d3)], curve, n);
                        for gen in &gens {
                            let l = w12.apply_at(&left.image(gen), 0).map_err(blame("--N"))?;
                            let r = w23.apply_at(&right.image(gen), 1).map_err(blame("--N"))?;
                            coassoc &= l == r;
                            checked += 1;
                        }
                    }
                }
                let with_zero = Whitney::new(&[zero.clone(), class(d1)], curve, n);
                for gen in &gens {
                    let p = Poly::monomial(higgs_coha::tautalg::HMono::gen(*gen));
                    counit &=
                        counit_at(&with_zero.image(gen), 0) == higgs_coha::tautalg::embed(&p, 0, 1);
                }
            }
            let result = json!({
                "coassociative": coassoc,
                "cocommutative": cocomm,
                "counit": counit,
                "generators": gens.len(),
                "checks": checked,
            });
            let text = format!(
                "coassociative: {coassoc}\ncocommutative: {cocomm}\ncounit: {counit}\ngenerators: {}\nchecks: {checked}",
                gens.len()
            );
            Output::new("hopf verify", json!({"genus": g}), result, text)
                .bounds(json!({"N": n, "degree_window": cfg.window}))
        }
    })
}

fn chern(c: &Chern, cfg: &CliConfig, curve: &CurveModel) -> Result<Output, CliError> {
    let n = cfg.truncation;
    let g = json!(cfg.genus);
    let out = match c {
        Chern::Total { slots } => {
            let classes = parse_classes("--slots", slots)?;
            let total = kunneth_total_chern(&classes, curve, n);
            Output::new(
                "chern total",
                json!({"slots": slots, "genus": g}),
                total.poly().to_json(curve),
                total.render(curve),
            )
        }
        Chern::Ch { a } => {
            let alpha = parse::<NumClass>("--a", a)?;
            let e = universal_sheaf(&alpha, curve, n);
            let ch = chern_to_chchar(&e.chern, &e.rank).map_err(blame("--a"))?;
            Output::new(
                "chern ch",
                json!({"a": a, "genus": g}),
                ch.poly().to_json(curve),
                ch.render(curve),
            )
        }
        Chern::Twist { a, by } => {
            let alpha = parse::<NumClass>("--a", a)?;
            let t = twist_class(&universal_sheaf(&alpha, curve, n), &parse_int("--by", by)?)
                .map_err(blame("--by"))?;
            Output::new(
                "chern twist",
                json!({"a": a, "by": by, "genus": g}),
                sheaf_json(&t, curve),
                t.chern.render(curve),
            )
        }
        Chern::Diff { a, b } => {
            let (ca, cb) = (parse::<NumClass>("--a", a)?, parse::<NumClass>("--b", b)?);
            let sheaf = |slot, class: &NumClass| {
                SheafClass::new(
                    class.rank.clone(),
                    free_slot_chern(slot, 2, class, curve, n),
                )
                .map_err(blame("--a"))
            };
            let (ea, eb) = (sheaf(0, &ca)?, sheaf(1, &cb)?);
            let d = k_difference(&ea.direct_sum(&eb), &eb).map_err(blame("--b"))?;
            Output::new(
                "chern diff",
                json!({"a": a, "b": b, "genus": g}),
                sheaf_json(&d, curve),
                d.chern.render(curve),
            )
        }
    };
    Ok(out.bounds(truncation_bounds(cfg)))
}

fn grcmd(gr: &Gr, cfg: &CliConfig, curve: &CurveModel) -> Result<Output, CliError> {
    let n = cfg.truncation;
    let g = json!(cfg.genus);
    Ok(match gr {
        Gr::Fundamental { a } => {
            let f = fundamental_class(&parse("--a", a)?).map_err(blame("--a"))?;
            let result = json!({"class": class_json(&f.alpha), "payload": f.poly.to_json(curve)});
            Output::new(
                "gr fundamental",
                json!({"a": a}),
                result,
                format!("[Λ_({})]", class_text(&f.alpha)),
            )
        }
        Gr::Product { classes, payloads } => {
            let fs = factors(classes, payloads.as_deref(), curve)?;
            let x = leading_product(&fs, curve, n).map_err(blame("--classes"))?;
            let inputs = json!({"classes": classes, "payloads": payloads, "genus": g});
            stratum_output("gr product", inputs, &x, curve, cfg)
        }
        Gr::Act {
            h,
            classes,
            payloads,
        } => {
            let fs = factors(classes, payloads.as_deref(), curve)?;
            let x = leading_product(&fs, curve, n).map_err(blame("--classes"))?;
            let acted =
                hmodule_act(&parse_poly("--h", h, curve)?, &x, curve).map_err(blame("--h"))?;
            let inputs = json!({"h": h, "classes": classes, "payloads": payloads, "genus": g});
            stratum_output("gr act", inputs, &acted, curve, cfg)
        }
        Gr::Sheaves { jordan } => {
            let t = parse::<JordanType>("--type", jordan)?;
            let rows = strata_sheaf_classes(&t, curve, n).map_err(blame("--type"))?;
            let mut text = Vec::new();
            let mut result = Vec::new();
            for (i, e) in rows.iter().enumerate() {
                let class = e
                    .numerical_class()
                    .map_err(|e| CliError::Internal(e.to_string()))?;
                text.push(format!(
                    "E_{} [{}]: {}",
                    i + 1,
                    class_text(&class),
                    e.chern.render(curve)
                ));
                let mut v = sheaf_json(e, curve);
                v["class"] = class_json(&class);
                result.push(v);
            }
            Output::new(
                "gr sheaves",
                json!({"type": jordan, "genus": g}),
                Value::Array(result),
                text.join("\n"),
            )
            .bounds(truncation_bounds(cfg))
        }
        Gr::Shadow { jordan } => {
            let t = parse::<JordanType>("--type", jordan)?;
            let report = generation_shadow(&t, curve, n).map_err(blame("--type"))?;
            let degrees: Vec<Value> = report
                .degrees
                .iter()
                .map(|d| json!({"degree": d.degree, "reached": d.reached, "expected": d.expected}))
                .collect();
            let mut text: Vec<String> = report
                .degrees
                .iter()
                .map(|d| format!("degree {}: {}/{}", d.degree, d.reached, d.expected))
                .collect();
            text.push(format!("complete: {}", report.is_complete()));
            let result = json!({"degrees": degrees, "complete": report.is_complete()});
            Output::new(
                "gr shadow",
                json!({"type": jordan, "genus": g}),
                result,
                text.join("\n"),
            )
            .bounds(truncation_bounds(cfg))
        }
    })
}

/// Exit code, stdout and stderr of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let outcome = std::panic::catch_unwind(|| execute(&cli));
    match outcome {
        Ok(Ok(out)) => Outcome {
            code: 0,
            stdout: out.render(cli.config.format),
            stderr: String::new(),
        },
        Ok(Err(e)) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
        Err(_) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: "error: internal error\n".into(),
        },
    }
}

/// Full subcommand paths known to the parser, e.g. `jordan enum`.
pub fn subcommand_paths() -> Vec<String> {
    fn walk(cmd: &clap::Command, prefix: &str, out: &mut Vec<String>) {
        for sub in cmd.get_subcommands() {
            let path = if prefix.is_empty() {
                sub.get_name().to_string()
            } else {
                format!("{prefix} {}", sub.get_name())
            };
            if sub.has_subcommands() {
                walk(sub, &path, out);
            } else {
                out.push(path);
            }
        }
    }
    let mut out = Vec::new();
    walk(&Cli::command(), "", &mut out);
    out
}

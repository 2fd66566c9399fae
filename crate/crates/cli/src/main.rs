mod render;

use std::fs;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand};
use divgroup::arith::{DEFAULT_ENUM_BOUND, DEFAULT_FACTOR_BOUND};
use divgroup::element::{elem_add, elem_divide, elem_order, elem_smul, parse_element};
use divgroup::independence::is_independent;
use divgroup::lang::{normalize, parse_with};
use divgroup::snf::{fp_classify, smith_normal_form, IntMatrix};
use divgroup::structure::{
    count_division_solutions, divisible_hull, is_isomorphic, primary_decompose_element,
    primary_decompose_expr, socle_expr, split_divisible, torsion_split,
};
use divgroup::{Error, GroupElement, GroupExpr, Limits};
use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

use render::{cardinal, int};

/// Structure of abelian groups built from Z, Q, Z/m, Z(p^inf), Q/Z, R, C* and S^1.
///
/// Expressions combine atoms with `(+)` and cardinal exponents (`n`, `aleph0`, `c`),
/// e.g. `Q/Z (+) Z(2^inf)^3 (+) Q^c`. Elements are written `z:4`, `q:3/5`, `qz:1/6`,
/// `pr:2^inf:3/8`, `cyc:12:7`, or `{pos0.tag0=qz:1/2, pos1.tag0=q:1}` inside the
/// group given by `--group`.
#[derive(Parser)]
#[command(name = "divgroup", version)]
struct Cli {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest integer trial division will factor.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_FACTOR_BOUND)]
    max_factor_bound: u64,
    /// Largest number of candidates any enumeration may visit.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_ENUM_BOUND)]
    max_enum: u64,
    /// Ambient group for direct-sum element literals.
    #[arg(long, global = true, value_name = "EXPR")]
    group: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical form of an expression.
    Normalize { expr: String },
    /// The invariants m_p, n, free rank and elementary divisors.
    Invariants { expr: String },
    /// Decide whether two expressions are isomorphic.
    Iso { a: String, b: Option<String> },
    /// Torsion part and a torsion-free complement.
    Torsion { expr: String },
    /// Elements of square-free order.
    Socle { expr: String },
    /// Largest divisible summand and a reduced complement.
    SplitDivisible { expr: String },
    /// p-primary components of a torsion group.
    Primary { expr: String },
    /// Divisible hull of a finitely generated group.
    Hull { expr: String },
    /// Number of solutions of n x = y in a divisible group.
    CountSolutions { expr: String, n: BigUint },
    /// Order of an element.
    Order { elem: String },
    /// Sum of two elements.
    Add { x: String, y: String },
    /// Integer multiple n x.
    Smul {
        #[arg(allow_hyphen_values = true)]
        n: BigInt,
        elem: String,
    },
    /// Solutions of n y = x.
    Divide { n: BigUint, elem: String },
    /// Components of prime-power order of a torsion element.
    DecomposeElement { elem: String },
    /// Linear independence of a finite system of elements.
    Independent { elems: Vec<String> },
    /// Smith normal form U A V = D of an integer matrix.
    Snf {
        #[arg(long, value_name = "FILE")]
        matrix_file: String,
    },
    /// Group presented by a relation matrix (columns are generators, rows are relations).
    ClassifyFp {
        #[arg(long, value_name = "FILE")]
        matrix_file: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Normalize { .. } => "normalize",
            Command::Invariants { .. } => "invariants",
            Command::Iso { .. } => "iso",
            Command::Torsion { .. } => "torsion",
            Command::Socle { .. } => "socle",
            Command::SplitDivisible { .. } => "split-divisible",
            Command::Primary { .. } => "primary",
            Command::Hull { .. } => "hull",
            Command::CountSolutions { .. } => "count-solutions",
            Command::Order { .. } => "order",
            Command::Add { .. } => "add",
            Command::Smul { .. } => "smul",
            Command::Divide { .. } => "divide",
            Command::DecomposeElement { .. } => "decompose-element",
            Command::Independent { .. } => "independent",
            Command::Snf { .. } => "snf",
            Command::ClassifyFp { .. } => "classify-fp",
        }
    }

    fn input(&self) -> Value {
        match self {
            Command::Normalize { expr }
            | Command::Invariants { expr }
            | Command::Torsion { expr }
            | Command::Socle { expr }
            | Command::SplitDivisible { expr }
            | Command::Primary { expr }
            | Command::Hull { expr } => json!({ "expr": expr }),
            Command::Iso { a, b } => json!({ "a": a, "b": b }),
            Command::CountSolutions { expr, n } => json!({ "expr": expr, "n": int(n) }),
            Command::Order { elem } | Command::DecomposeElement { elem } => json!({ "elem": elem }),
            Command::Add { x, y } => json!({ "x": x, "y": y }),
            Command::Smul { n, elem } => json!({ "n": int(n), "elem": elem }),
            Command::Divide { n, elem } => json!({ "n": int(n), "elem": elem }),
            Command::Independent { elems } => json!({ "elems": elems }),
            Command::Snf { matrix_file } | Command::ClassifyFp { matrix_file } => {
                json!({ "matrix_file": matrix_file })
            }
        }
    }
}

struct Failure {
    error: Error,
    usage: bool,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure {
            error,
            usage: false,
        }
    }
}

impl Failure {
    fn usage(message: String) -> Self {
        Failure {
            error: Error::InvalidArgument(message),
            usage: true,
        }
    }

    fn exit_code(&self) -> u8 {
        if self.usage || matches!(self.error, Error::Parse(_)) {
            2
        } else {
            1
        }
    }
}

/// Text and JSON renderings of a successful result.
struct Output {
    text: String,
    json: Value,
}

struct Context {
    limits: Limits,
    group: Option<GroupExpr>,
}

impl Context {
    fn expr(&self, text: &str) -> Result<GroupExpr, Failure> {
        Ok(parse_with(text, &self.limits)?)
    }

    fn elem(&self, text: &str) -> Result<GroupElement, Failure> {
        Ok(parse_element(text, self.group.as_ref(), &self.limits)?)
    }
}

fn load_matrix(path: &str) -> Result<IntMatrix, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{path} is not JSON: {e}")))?;
    let dim = |key: &str| {
        value
            .get(key)
            .and_then(Value::as_u64)
            .map(|v| v as usize)
            .ok_or_else(|| Failure::usage(format!("{path}: missing or invalid \"{key}\"")))
    };
    let (rows, cols) = (dim("rows")?, dim("cols")?);
    let entries = value
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Failure::usage(format!("{path}: missing \"entries\" array")))?;
    let mut parsed = Vec::with_capacity(entries.len());
    for row in entries {
        let row = row
            .as_array()
            .ok_or_else(|| Failure::usage(format!("{path}: each row must be an array")))?;
        let mut out = Vec::with_capacity(row.len());
        for v in row {
            let n = match v {
                Value::Number(n) => n.to_string().parse::<BigInt>().ok(),
                _ => None,
            };
            out.push(n.ok_or_else(|| Failure::usage(format!("{path}: {v} is not an integer")))?);
        }
        parsed.push(out);
    }
    if parsed.len() != rows {
        return Err(Error::DimensionMismatch {
            expected: rows,
            found: parsed.len(),
        }
        .into());
    }
    Ok(IntMatrix::from_rows(cols, parsed)?)
}

fn one_line(label: &str, value: impl std::fmt::Display) -> String {
    format!("{label}: {value}")
}

fn run(command: &Command, ctx: &Context) -> Result<Output, Failure> {
    let limits = &ctx.limits;
    let out = match command {
        Command::Normalize { expr } => {
            let nf = normalize(&ctx.expr(expr)?, limits)?;
            Output {
                text: nf.to_expr().to_string(),
                json: render::normal_form(&nf),
            }
        }
        Command::Invariants { expr } => {
            let nf = normalize(&ctx.expr(expr)?, limits)?;
            Output {
                text: render::invariants_text(&nf),
                json: render::normal_form(&nf),
            }
        }
        Command::Iso { a, b } => {
            let a = ctx.expr(a)?;
            let b = b
                .as_deref()
                .ok_or_else(|| Failure::usage("iso needs two expressions".into()))?;
            let iso = is_isomorphic(&a, &ctx.expr(b)?, limits)?;
            Output {
                text: one_line("isomorphic", iso),
                json: json!({ "isomorphic": iso }),
            }
        }
        Command::Torsion { expr } => {
            let (t, f) = torsion_split(&ctx.expr(expr)?);
            Output {
                text: format!("torsion: {t}\ntorsion-free: {f}"),
                json: json!({ "torsion": t.to_string(), "torsion_free": f.to_string() }),
            }
        }
        Command::Socle { expr } => {
            let s = socle_expr(&ctx.expr(expr)?, limits)?;
            Output {
                text: one_line("socle", &s),
                json: json!({ "explicit": s.explicit.to_string(), "every_prime": cardinal(&s.every_prime) }),
            }
        }
        Command::SplitDivisible { expr } => {
            let (d, r) = split_divisible(&ctx.expr(expr)?);
            Output {
                text: format!("divisible: {d}\nreduced: {r}"),
                json: json!({ "divisible": d.to_string(), "reduced": r.to_string() }),
            }
        }
        Command::Primary { expr } => {
            let dec = primary_decompose_expr(&ctx.expr(expr)?, limits)?;
            let mut lines: Vec<String> = dec
                .components
                .iter()
                .map(|(p, c)| format!("p = {p}: {c}"))
                .collect();
            if !dec.every_prime.is_zero() {
                let suffix = if dec.every_prime == divgroup::Cardinal::one() {
                    String::new()
                } else {
                    format!("^{}", dec.every_prime)
                };
                lines.push(format!("every other prime p: Z(p^inf){suffix}"));
            }
            if lines.is_empty() {
                lines.push("trivial".into());
            }
            let components: Vec<Value> = dec
                .components
                .iter()
                .map(|(p, c)| json!({ "p": int(p), "component": c.to_string() }))
                .collect();
            Output {
                text: lines.join("\n"),
                json: json!({ "components": components, "every_prime": cardinal(&dec.every_prime) }),
            }
        }
        Command::Hull { expr } => {
            let h = divisible_hull(&ctx.expr(expr)?, limits)?;
            Output {
                text: one_line("hull", &h),
                json: json!({ "hull": h.to_string() }),
            }
        }
        Command::CountSolutions { expr, n } => {
            let c = count_division_solutions(&ctx.expr(expr)?, n, limits)?;
            Output {
                text: one_line("solutions", &c),
                json: json!({ "solutions": cardinal(&c) }),
            }
        }
        Command::Order { elem } => {
            let x = ctx.elem(elem)?;
            let order = elem_order(&x);
            let value = match order.finite() {
                Some(k) => int(k),
                None => json!("infinite"),
            };
            Output {
                text: one_line("order", &order),
                json: json!({ "order": value }),
            }
        }
        Command::Add { x, y } => {
            let s = elem_add(&ctx.elem(x)?, &ctx.elem(y)?)?;
            Output {
                text: one_line("sum", &s),
                json: json!({ "sum": s.to_string() }),
            }
        }
        Command::Smul { n, elem } => {
            let r = elem_smul(n, &ctx.elem(elem)?);
            Output {
                text: one_line("result", &r),
                json: json!({ "result": r.to_string() }),
            }
        }
        Command::Divide { n, elem } => {
            let d = elem_divide(n, &ctx.elem(elem)?, limits)?;
            let shown: Vec<String> = d.solutions.iter().map(ToString::to_string).collect();
            let mut text = format!("count: {}\n", d.count);
            if d.truncated {
                text.push_str(&format!("showing {} solutions\n", shown.len()));
            }
            text.push_str(&shown.join("\n"));
            Output {
                text: text.trim_end().to_string(),
                json: json!({ "count": cardinal(&d.count), "truncated": d.truncated, "solutions": shown }),
            }
        }
        Command::DecomposeElement { elem } => {
            let parts = primary_decompose_element(&ctx.elem(elem)?, limits)?;
            let text = if parts.is_empty() {
                "identity".to_string()
            } else {
                parts
                    .iter()
                    .map(|(p, c)| format!("p = {p}: {c}"))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            let json_parts: Vec<Value> = parts
                .iter()
                .map(|(p, c)| json!({ "p": int(p), "component": c.to_string() }))
                .collect();
            Output {
                text,
                json: json!({ "components": json_parts }),
            }
        }
        Command::Independent { elems } => {
            let xs = elems
                .iter()
                .map(|e| ctx.elem(e))
                .collect::<Result<Vec<_>, _>>()?;
            let v = is_independent(&xs, limits)?;
            let mut text = one_line("independent", v.independent);
            if let Some(cert) = &v.certificate {
                let cs: Vec<String> = cert.iter().map(ToString::to_string).collect();
                text.push_str(&format!("\ncertificate: {}", cs.join(" ")));
            }
            Output {
                text,
                json: render::verdict(&v),
            }
        }
        Command::Snf { matrix_file } => {
            let res = smith_normal_form(&load_matrix(matrix_file)?);
            let diag: Vec<String> = res.diagonal().iter().map(ToString::to_string).collect();
            Output {
                text: format!(
                    "diagonal: {}\nU:\n{}\nD:\n{}\nV:\n{}",
                    diag.join(" "),
                    render::matrix_text(&res.u),
                    render::matrix_text(&res.d),
                    render::matrix_text(&res.v)
                ),
                json: json!({
                    "u": render::matrix(&res.u),
                    "d": render::matrix(&res.d),
                    "v": render::matrix(&res.v),
                    "diagonal": res.diagonal().iter().map(int).collect::<Vec<_>>(),
                }),
            }
        }
        Command::ClassifyFp { matrix_file } => {
            let g = fp_classify(&load_matrix(matrix_file)?);
            let nf = normalize(&g, limits)?;
            Output {
                text: format!("group: {g}\nnormal form: {}", nf.to_expr()),
                json: json!({ "group": g.to_string(), "normal_form": render::normal_form(&nf) }),
            }
        }
    };
    Ok(out)
}

fn parse_args() -> Result<Cli, ExitCode> {
    Cli::try_parse().map_err(|e| {
        use clap::error::ErrorKind;
        if !matches!(
            e.kind(),
            ErrorKind::InvalidSubcommand | ErrorKind::MissingSubcommand
        ) {
            e.exit();
        }
        let _ = e.print();
        let names: Vec<String> = Cli::command()
            .get_subcommands()
            .map(|c| c.get_name().to_string())
            .collect();
        eprintln!("valid subcommands: {}", names.join(", "));
        ExitCode::from(2)
    })
}

fn main() -> ExitCode {
    let cli = match parse_args() {
        Ok(cli) => cli,
        Err(code) => return code,
    };
    let limits = Limits {
        factor_bound: cli.max_factor_bound,
        enum_bound: cli.max_enum,
    };
    let group = match cli.group.as_deref().map(|g| parse_with(g, &limits)) {
        None => Ok(None),
        Some(Ok(g)) => Ok(Some(g)),
        Some(Err(e)) => Err(Failure::from(e)),
    };
    let result = group.and_then(|group| run(&cli.command, &Context { limits, group }));
    let code = result.as_ref().err().map_or(0, Failure::exit_code);
    if cli.json {
        let (value, error) = match &result {
            Ok(out) => (out.json.clone(), Value::Null),
            Err(f) => (
                Value::Null,
                json!({ "kind": f.error.kind(), "message": f.error.to_string() }),
            ),
        };
        let doc = json!({
            "command": cli.command.name(),
            "input": cli.command.input(),
            "result": value,
            "error": error,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        );
    } else {
        match &result {
            Ok(out) => println!("{}", out.text),
            Err(f) => eprintln!("error[{}]: {}", f.error.kind(), f.error),
        }
    }
    ExitCode::from(code)
}

//! JSON and text renderings of library values.

use divgroup::independence::IndependenceVerdict;
use divgroup::lang::NormalForm;
use divgroup::snf::IntMatrix;
use divgroup::Cardinal;
use num_bigint::BigInt;
use serde_json::{json, Number, Value};

pub fn int(n: impl ToString) -> Value {
    Value::Number(
        n.to_string()
            .parse::<Number>()
            .expect("integers are valid JSON numbers"),
    )
}

pub fn cardinal(c: &Cardinal) -> Value {
    match c {
        Cardinal::Finite(n) => json!({ "finite": int(n) }),
        Cardinal::Aleph0 => json!("aleph0"),
        Cardinal::Continuum => json!("continuum"),
    }
}

pub fn normal_form(nf: &NormalForm) -> Value {
    let divisors: Vec<Value> = nf
        .elementary_divisors
        .iter()
        .map(|d| json!({ "p": int(d.p), "r": int(d.r), "multiplicity": cardinal(&d.mult) }))
        .collect();
    let exceptions: Vec<Value> = nf
        .prufer_exceptions
        .iter()
        .map(|(p, m)| json!({ "p": int(p), "multiplicity": cardinal(m) }))
        .collect();
    json!({
        "expression": nf.to_expr().to_string(),
        "free_rank": cardinal(&nf.free_rank),
        "elementary_divisors": divisors,
        "m_p": { "default": cardinal(&nf.default_prufer), "exceptions": exceptions },
        "n": cardinal(&nf.q_mult),
    })
}

pub fn invariants_text(nf: &NormalForm) -> String {
    let mut out = format!("m_p default: {}\n", nf.default_prufer);
    if nf.prufer_exceptions.is_empty() {
        out.push_str("m_p exceptions: none\n");
    } else {
        let list: Vec<String> = nf
            .prufer_exceptions
            .iter()
            .map(|(p, m)| format!("m_{p} = {m}"))
            .collect();
        out.push_str(&format!("m_p exceptions: {}\n", list.join(", ")));
    }
    out.push_str(&format!("n: {}\n", nf.q_mult));
    out.push_str(&format!("free rank: {}\n", nf.free_rank));
    if nf.elementary_divisors.is_empty() {
        out.push_str("elementary divisors: none");
    } else {
        let list: Vec<String> = nf
            .elementary_divisors
            .iter()
            .map(|d| format!("{}^{} x {}", d.p, d.r, d.mult))
            .collect();
        out.push_str(&format!("elementary divisors: {}", list.join(", ")));
    }
    out
}

pub fn matrix(m: &IntMatrix) -> Value {
    let rows: Vec<Value> = m
        .to_rows()
        .iter()
        .map(|r| Value::Array(r.iter().map(int).collect()))
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": rows })
}

pub fn matrix_text(m: &IntMatrix) -> String {
    let cells: Vec<Vec<String>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(BigInt::to_string).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    if cells.is_empty() {
        return format!("  (0 x {})", m.cols());
    }
    cells
        .iter()
        .map(|r| {
            let padded: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
            format!("  [{}]", padded.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn verdict(v: &IndependenceVerdict) -> Value {
    json!({
        "independent": v.independent,
        "certificate": v.certificate.as_ref().map(|c| c.iter().map(int).collect::<Vec<_>>()),
    })
}

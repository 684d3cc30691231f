//! Text rendering. JSON output is produced with serde directly.

use ahcalc_core::exactlinalg::IntMatrix;
use ahcalc_core::morphisms::AlgebraMorphism;
use ahcalc_core::selfequiv::SequenceReport;

pub fn matrix_rows(m: &IntMatrix) -> Vec<String> {
    (0..m.rows())
        .map(|i| {
            let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
            format!("[{}]", row.join(", "))
        })
        .collect()
}

pub fn matrix_json(m: &IntMatrix) -> serde_json::Value {
    serde_json::Value::Array(
        (0..m.rows())
            .map(|i| serde_json::Value::Array(m.row(i).iter().map(|x| serde_json::Value::String(x.to_string())).collect()))
            .collect(),
    )
}

pub fn morphism_lines(f: &AlgebraMorphism) -> String {
    f.describe().iter().map(|(v, im)| format!("  {v} -> {im}\n")).collect()
}

pub fn report(r: &SequenceReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "model degrees: q = {}, n = {} (space degrees: cells of dimension {}, X of dimension <= {})\n",
        r.model_q, r.model_n, r.space_q, r.space_n
    ));
    out.push_str(&format!("rank V_q = {}\n", r.i));
    out.push_str(&format!("H_{}(A(X)) = {}\n", r.model_q, r.h_q_base));
    out.push_str(&format!("H_{}(A(X)) = {}\n", r.model_q - 1, r.h_q_minus_1_base));
    out.push_str(&format!("b_q: {}\n", r.bq));
    out.push_str(&format!("kernel: {}\n", r.kernel));
    out.push_str(&format!(
        "E(A(Y)):   {} >-> {} ->> {}\n",
        r.full_row.kernel, r.full_row.middle, r.full_row.quotient
    ));
    out.push_str(&format!(
        "E_*(A(Y)): {} >-> {} ->> {}\n",
        r.star_row.kernel, r.star_row.middle, r.star_row.quotient
    ));
    if let Some(g) = &r.star_group {
        out.push_str(&format!("E_* = {g}\n"));
    }
    for note in &r.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    out
}

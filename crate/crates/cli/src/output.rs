//! CSV and JSON serialization of operator output.

use std::fmt::Write;

use mulfrac::verify::PropertyReport;
use serde::Serialize;

#[derive(Serialize)]
pub struct Meta {
    pub op: String,
    pub order: Option<f64>,
    pub side: String,
    pub a: f64,
    pub b: f64,
    pub grid: usize,
    pub function: String,
}

pub struct SeriesResult {
    x: Vec<f64>,
    value: Vec<f64>,
    reference: Option<Vec<f64>>,
    abs_err: Option<Vec<f64>>,
    meta: Meta,
}

/// Absolute difference; anything involving a non-finite value is non-finite.
fn abs_err(v: f64, r: f64) -> f64 {
    if v.is_finite() && r.is_finite() {
        (v - r).abs()
    } else {
        f64::INFINITY
    }
}

/// 17 significant digits; non-finite values print as `inf`.
fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "inf".to_string()
    }
}

fn json_num(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

impl SeriesResult {
    pub fn new(x: Vec<f64>, value: Vec<f64>, reference: Option<Vec<f64>>, meta: Meta) -> Self {
        let abs_err = reference
            .as_ref()
            .map(|r| value.iter().zip(r).map(|(&v, &r)| abs_err(v, r)).collect());
        SeriesResult { x, value, reference, abs_err, meta }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,value");
        if self.reference.is_some() {
            out.push_str(",reference,abs_err");
        }
        out.push('\n');
        for i in 0..self.x.len() {
            let _ = write!(out, "{},{}", num(self.x[i]), num(self.value[i]));
            if let (Some(r), Some(e)) = (&self.reference, &self.abs_err) {
                let _ = write!(out, ",{},{}", num(r[i]), num(e[i]));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            x: Vec<Option<f64>>,
            value: Vec<Option<f64>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            reference: Option<Vec<Option<f64>>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            abs_err: Option<Vec<Option<f64>>>,
            meta: &'a Meta,
        }
        let col = |v: &[f64]| v.iter().map(|&x| json_num(x)).collect::<Vec<_>>();
        let doc = Doc {
            x: col(&self.x),
            value: col(&self.value),
            reference: self.reference.as_deref().map(col),
            abs_err: self.abs_err.as_deref().map(col),
            meta: &self.meta,
        };
        let mut s = serde_json::to_string(&doc).expect("plain data serializes");
        s.push('\n');
        s
    }
}

pub fn table_csv(x: &[f64], numeric: &[f64], closed: &[f64]) -> String {
    let mut out = String::from("x,numeric,closed_form,abs_err\n");
    for i in 0..x.len() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            num(x[i]),
            num(numeric[i]),
            num(closed[i]),
            num(abs_err(numeric[i], closed[i]))
        );
    }
    out
}

pub fn reports_json(reports: &[PropertyReport]) -> String {
    #[derive(Serialize)]
    struct Row<'a> {
        name: &'a str,
        passed: bool,
        observed_error: Option<f64>,
        tolerance: f64,
        config: &'a str,
    }
    let rows: Vec<Row> = reports
        .iter()
        .map(|r| Row {
            name: &r.name,
            passed: r.passed,
            observed_error: json_num(r.observed_error),
            tolerance: r.tolerance,
            config: &r.config_summary,
        })
        .collect();
    serde_json::to_string(&rows).expect("plain data serializes")
}

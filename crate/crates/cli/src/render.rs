//! Output in the three formats. Big integers and rationals are always
//! written as decimal strings, including inside JSON.

use moonshine_core::poly::Polynomial;
use moonshine_core::qvalue::{format_coeffs, QValue};
use moonshine_core::ratfunc::RationalFunction;
use moonshine_core::rational::{format_rational, Rational};
use moonshine_core::schwarzfit::{FitReport, VerifyRow, VerifyStatus};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Tsv,
}

fn strings(values: &[Rational]) -> Value {
    Value::Array(
        values
            .iter()
            .map(|v| Value::String(format_rational(v)))
            .collect(),
    )
}

fn poly_json(p: &Polynomial) -> Value {
    strings(p.coeffs())
}

fn qvalue_json(q: &QValue) -> Value {
    json!({
        "num": poly_json(q.num()),
        "den_core": poly_json(q.den_core()),
        "display": q.to_string(),
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

/// `a(first) .. a(first + len - 1)`.
pub fn coefficients(
    label: Option<&str>,
    first: i64,
    values: &[Rational],
    format: Format,
    one_line: bool,
) -> String {
    match format {
        Format::Plain if one_line => {
            values
                .iter()
                .map(format_rational)
                .collect::<Vec<_>>()
                .join(" ")
                + "\n"
        }
        Format::Plain => values.iter().map(|v| format_rational(v) + "\n").collect(),
        Format::Tsv => {
            let mut out = String::from("n\tcoefficient\n");
            for (i, v) in values.iter().enumerate() {
                out += &format!("{}\t{}\n", first + i as i64, format_rational(v));
            }
            out
        }
        Format::Json => {
            let mut obj = json!({
                "first": first,
                "order": first + values.len() as i64 - 1,
                "coefficients": strings(values),
            });
            if let Some(l) = label {
                obj["class"] = Value::String(l.to_owned());
            }
            pretty(&obj)
        }
    }
}

pub fn fit_report(rep: &FitReport, shift: Option<&Rational>, format: Format) -> String {
    let label = rep
        .class
        .as_ref()
        .map_or("-".to_owned(), |c| c.label().to_owned());
    let square = rep
        .square_factored
        .as_ref()
        .map_or("-".to_owned(), format_coeffs);
    let (r, s) = rep.degrees;
    match format {
        Format::Plain => {
            let mut out = format!("class\t{label}\n");
            if let Some(c) = shift {
                out += &format!("shift\t{}\n", format_rational(c));
            }
            out += &format!(
                "Q\t{}\nN\t{}\nM\t{}\nsquare\t{square}\ndegrees\t{r} {s}\norders\t{}\nnullspace\t{}\n",
                rep.qvalue,
                format_coeffs(rep.qvalue.num()),
                format_coeffs(rep.qvalue.den_core()),
                rep.orders_checked,
                rep.nullspace_dim
            );
            out
        }
        Format::Tsv => format!(
            "class\tshift\tN\tM\tsquare\tr\ts\torders_checked\tnullspace_dim\n{label}\t{}\t{}\t{}\t{square}\t{r}\t{s}\t{}\t{}\n",
            shift.map_or("0".to_owned(), format_rational),
            format_coeffs(rep.qvalue.num()),
            format_coeffs(rep.qvalue.den_core()),
            rep.orders_checked,
            rep.nullspace_dim
        ),
        Format::Json => {
            let mut obj = json!({
                "class": rep.class.as_ref().map(|c| c.label().to_owned()),
                "qvalue": qvalue_json(&rep.qvalue),
                "square_factor": rep.square_factored.as_ref().map(poly_json),
                "degrees": [r, s],
                "orders_checked": rep.orders_checked,
                "nullspace_dim": rep.nullspace_dim,
            });
            if let Some(c) = shift {
                obj["shift"] = Value::String(format_rational(c));
            }
            pretty(&obj)
        }
    }
}

fn summary(rows: &[VerifyRow]) -> Vec<(VerifyStatus, usize)> {
    [
        VerifyStatus::Match,
        VerifyStatus::Mismatch,
        VerifyStatus::TypoSuspected,
        VerifyStatus::Unavailable,
    ]
    .into_iter()
    .map(|s| (s, rows.iter().filter(|r| r.status == s).count()))
    .collect()
}

pub fn verify_rows(rows: &[VerifyRow], format: Format) -> String {
    let opt = |q: &Option<QValue>, f: fn(&QValue) -> String| q.as_ref().map_or("-".to_owned(), f);
    match format {
        Format::Plain => {
            let width = rows.iter().map(|r| r.label.len()).max().unwrap_or(0);
            let mut out = String::new();
            for r in rows {
                let mut line = format!("{:<width$}  {:<14}", r.label, r.status.to_string());
                if r.status != VerifyStatus::Match {
                    if let Some(q) = &r.fitted {
                        line += &format!("  fitted {q}");
                    }
                    if !r.detail.is_empty() {
                        line += &format!("  ({})", r.detail);
                    }
                }
                out += line.trim_end();
                out.push('\n');
            }
            let totals: Vec<String> = summary(rows)
                .iter()
                .map(|(s, n)| format!("{n} {s}"))
                .collect();
            out += &(totals.join(", ") + "\n");
            out
        }
        Format::Tsv => {
            let mut out = String::from("class\tstatus\tfitted_N\tfitted_M\tnote\n");
            for r in rows {
                out += &format!(
                    "{}\t{}\t{}\t{}\t{}\n",
                    r.label,
                    r.status,
                    opt(&r.fitted, |q| format_coeffs(q.num())),
                    opt(&r.fitted, |q| format_coeffs(q.den_core())),
                    r.detail
                );
            }
            out
        }
        Format::Json => {
            let rows_json: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "class": r.label,
                        "status": r.status.to_string(),
                        "expected": r.expected.as_ref().map(qvalue_json),
                        "fitted": r.fitted.as_ref().map(qvalue_json),
                        "detail": r.detail,
                    })
                })
                .collect();
            let totals: serde_json::Map<String, Value> = summary(rows)
                .into_iter()
                .map(|(s, n)| (s.to_string(), json!(n)))
                .collect();
            pretty(&json!({ "rows": rows_json, "summary": totals }))
        }
    }
}

pub fn scalar(v: &Rational, format: Format) -> String {
    match format {
        Format::Plain | Format::Tsv => format_rational(v) + "\n",
        Format::Json => pretty(&json!({ "value": format_rational(v) })),
    }
}

pub fn rational_function(q: &RationalFunction, format: Format) -> String {
    match format {
        Format::Plain => format!("{q}\n"),
        Format::Tsv => format!(
            "num\tden\n{}\t{}\n",
            format_coeffs(q.num()),
            format_coeffs(q.den())
        ),
        Format::Json => pretty(&json!({
            "num": poly_json(q.num()),
            "den": poly_json(q.den()),
            "display": q.to_string(),
        })),
    }
}

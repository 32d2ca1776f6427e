//! Rendering of results as CSV, JSON and aligned text.
//!
//! Experiment CSV columns are `grid,estimate,std_error,oracle,gap`. Numbers
//! are written as shortest round-trip decimals and a missing oracle leaves
//! its cell (and the gap) empty. Exact documents flatten to
//! `field,index,value` with vector entries joined by spaces.

use expcone_sim::{ExperimentResult, Row};
use serde_json::Value;
use std::fmt::Write as _;

pub const CSV_HEADER: [&str; 5] = ["grid", "estimate", "std_error", "oracle", "gap"];

fn num(x: f64) -> String {
    format!("{x}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn rows_to_csv(rows: &[Row]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in rows {
        w.write_record([
            num(r.grid),
            num(r.estimate),
            num(r.std_error),
            opt(r.oracle),
            opt(r.gap),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

/// Reads the experiment CSV schema back.
pub fn parse_rows_csv(text: &str) -> Result<Vec<Row>, String> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| e.to_string())?;
    if header.iter().ne(CSV_HEADER) {
        return Err(format!("unexpected header {header:?}"));
    }
    let cell =
        |s: &str| -> Result<f64, String> { s.parse::<f64>().map_err(|e| format!("{s:?}: {e}")) };
    let opt_cell = |s: &str| -> Result<Option<f64>, String> {
        if s.is_empty() {
            Ok(None)
        } else {
            cell(s).map(Some)
        }
    };
    r.records()
        .map(|rec| {
            let rec = rec.map_err(|e| e.to_string())?;
            if rec.len() != 5 {
                return Err(format!("expected 5 fields, got {}", rec.len()));
            }
            Ok(Row {
                grid: cell(&rec[0])?,
                estimate: cell(&rec[1])?,
                std_error: cell(&rec[2])?,
                oracle: opt_cell(&rec[3])?,
                gap: opt_cell(&rec[4])?,
            })
        })
        .collect()
}

fn flat(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => xs.iter().map(flat).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn flatten_into(prefix: &str, v: &Value, out: &mut Vec<[String; 3]>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_into(&key, x, out);
            }
        }
        Value::Array(xs) if xs.iter().any(Value::is_array) => {
            for (i, x) in xs.iter().enumerate() {
                out.push([prefix.to_string(), i.to_string(), flat(x)]);
            }
        }
        other => out.push([prefix.to_string(), String::new(), flat(other)]),
    }
}

pub fn exact_csv(doc: &Value) -> String {
    let mut rows = Vec::new();
    flatten_into("", doc, &mut rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["field", "index", "value"])
        .expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

pub fn exact_pretty(doc: &Value) -> String {
    let mut rows = Vec::new();
    flatten_into("", doc, &mut rows);
    let width = rows.iter().map(|r| r[0].len()).max().unwrap_or(0);
    let mut s = String::new();
    let mut last = String::new();
    for [field, _, value] in rows {
        let value = if !value.contains(' ') {
            value
        } else {
            format!("({})", value.replace(' ', ", "))
        };
        let label = if field == last {
            String::new()
        } else {
            field.clone()
        };
        let _ = writeln!(s, "{label:<width$}  {value}");
        last = field;
    }
    s
}

pub fn result_json(res: &ExperimentResult) -> String {
    let mut s = serde_json::to_string_pretty(res).expect("serializable result");
    s.push('\n');
    s
}

pub fn result_pretty(res: &ExperimentResult) -> String {
    let header: Vec<String> = [
        res.grid_name.as_str(),
        "estimate",
        "std_error",
        "oracle",
        "gap",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let mut table = vec![header];
    for r in &res.rows {
        table.push(vec![
            num(r.grid),
            num(r.estimate),
            num(r.std_error),
            opt(r.oracle),
            opt(r.gap),
        ]);
    }
    let widths: Vec<usize> = (0..5)
        .map(|j| table.iter().map(|row| row[j].len()).max().unwrap_or(0))
        .collect();
    let mut s = format!("experiment: {}\n", res.experiment);
    if let Some(seed) = res.seed {
        let _ = writeln!(s, "seed: {seed}");
    }
    for row in &table {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        let _ = writeln!(s, "{}", cells.join("  ").trim_end());
    }
    let summary = serde_json::to_value(&res.summary).expect("serializable summary");
    if let Value::Object(m) = summary {
        for (k, v) in m {
            let _ = writeln!(s, "{k}: {v}");
        }
    }
    if res.det_warnings > 0 {
        let _ = writeln!(s, "determinant warnings: {}", res.det_warnings);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use serde_json::json;

    #[test]
    fn empty_result_set_is_header_only() {
        assert_eq!(rows_to_csv(&[]), "grid,estimate,std_error,oracle,gap\n");
        assert_eq!(
            parse_rows_csv("grid,estimate,std_error,oracle,gap\n").unwrap(),
            vec![]
        );
    }

    #[test]
    fn exact_documents_keep_rationals_as_strings() {
        let doc = json!({"floor": "1/3", "facets": [["1", "-1/2"], ["0", "2"]], "member": true});
        let csv = exact_csv(&doc);
        assert!(csv.contains("floor,,1/3"));
        assert!(csv.contains("facets,1,0 2"));
        assert!(csv.contains("member,,true"));
        assert!(exact_pretty(&doc).contains("(1, -1/2)"));
    }

    fn finite() -> impl Strategy<Value = f64> {
        prop_oneof![
            -1e12f64..1e12,
            (-300i32..300).prop_map(|e| 1.234_567_890_123_456_7 * 10f64.powi(e)),
            Just(0.0),
            Just(-0.0),
        ]
    }

    proptest! {
        #[test]
        fn csv_round_trips(rows in prop::collection::vec(
            (finite(), finite(), finite(), prop::option::of(finite())), 0..20)
        ) {
            let rows: Vec<Row> = rows
                .into_iter()
                .map(|(g, e, s, o)| Row { grid: g, estimate: e, std_error: s, oracle: o, gap: o.map(|o| e - o) })
                .collect();
            let back = parse_rows_csv(&rows_to_csv(&rows)).unwrap();
            prop_assert_eq!(back.len(), rows.len());
            for (a, b) in back.iter().zip(&rows) {
                prop_assert_eq!(a.grid.to_bits(), b.grid.to_bits());
                prop_assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
                prop_assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
                prop_assert_eq!(a.oracle.map(f64::to_bits), b.oracle.map(f64::to_bits));
                prop_assert_eq!(a.gap.map(f64::to_bits), b.gap.map(f64::to_bits));
            }
        }
    }
}

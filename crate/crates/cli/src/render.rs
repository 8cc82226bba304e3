//! JSON, CSV and aligned-table rendering of serialized records.

use clap::ValueEnum;
use sasaki_join::arith::RayCertificate;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Decimal places for interval bounds in tables.
const TABLE_DIGITS: usize = 10;

/// Dotted-path flattening; scalar arrays become `a,b`, nested arrays compact JSON.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    flatten_into("", v, &mut out);
    out
}

fn flatten_into(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten_into(&key, x, out);
            }
        }
        _ => out.push((prefix.to_string(), cell(v))),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(xs) if xs.iter().all(|x| !x.is_array() && !x.is_object()) => xs.iter().map(cell).collect::<Vec<_>>().join(","),
        _ => v.to_string(),
    }
}

/// A single object or a list of rows, with the column order used when the
/// list is empty.
pub enum Records<'a> {
    One(&'a Value),
    Many { rows: &'a [Value], columns: &'a [&'a str] },
}

pub fn render(records: Records<'_>, format: Format) -> String {
    match format {
        Format::Json => render_json(&records),
        Format::Csv => render_csv(&records),
        Format::Table => render_table(&records),
    }
}

fn render_json(records: &Records<'_>) -> String {
    match records {
        Records::One(v) => format!("{v}\n"),
        Records::Many { rows, .. } => rows.iter().map(|r| format!("{r}\n")).collect(),
    }
}

fn grid(records: &Records<'_>) -> (Vec<String>, Vec<Vec<String>>) {
    let rows: Vec<Vec<(String, String)>> = match records {
        Records::One(v) => vec![flatten(v)],
        Records::Many { rows, .. } => rows.iter().map(flatten).collect(),
    };
    let columns: Vec<String> = match (records, rows.first()) {
        (_, Some(first)) => first.iter().map(|(k, _)| k.clone()).collect(),
        (Records::Many { columns, .. }, None) => columns.iter().map(|c| c.to_string()).collect(),
        (Records::One(_), None) => Vec::new(),
    };
    let cells = rows
        .into_iter()
        .map(|r| columns.iter().map(|c| r.iter().find(|(k, _)| k == c).map(|(_, v)| v.clone()).unwrap_or_default()).collect())
        .collect();
    (columns, cells)
}

fn render_csv(records: &Records<'_>) -> String {
    let (columns, cells) = grid(records);
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    if !columns.is_empty() {
        w.write_record(&columns).expect("write to memory");
    }
    for row in &cells {
        w.write_record(row).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is utf-8")
}

fn is_interval(s: &str) -> bool {
    s.starts_with('[') && matches!(s.parse::<RayCertificate>(), Ok(RayCertificate::Interval { .. }))
}

fn render_table(records: &Records<'_>) -> String {
    let (mut columns, mut cells) = grid(records);
    let interval_cols: Vec<usize> = (0..columns.len()).filter(|&c| cells.iter().any(|r| is_interval(&r[c]))).collect();
    for &c in interval_cols.iter().rev() {
        columns.insert(c + 1, format!("{} (exact)", columns[c]));
        for row in &mut cells {
            let exact = row[c].clone();
            if is_interval(&exact) {
                row[c] = exact.parse::<RayCertificate>().map(|r| r.decimal(TABLE_DIGITS)).unwrap_or_default();
            }
            row.insert(c + 1, exact);
        }
    }
    let width: Vec<usize> = (0..columns.len())
        .map(|c| cells.iter().map(|r| r[c].chars().count()).chain([columns[c].chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |row: &[String]| {
        let s: Vec<String> = row.iter().zip(&width).map(|(x, w)| format!("{x:<w$}")).collect();
        format!("{}\n", s.join("  ").trim_end())
    };
    let mut out = String::new();
    if !columns.is_empty() {
        out.push_str(&line(&columns));
        let rule: Vec<String> = width.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&line(&rule));
    }
    for row in &cells {
        out.push_str(&line(row));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_forms() {
        let one = json!({"k": "3", "v": [7, 5]});
        assert_eq!(render(Records::One(&one), Format::Json), "{\"k\":\"3\",\"v\":[7,5]}\n");
        let rows = vec![json!({"a": 1}), json!({"a": 2})];
        assert_eq!(render(Records::Many { rows: &rows, columns: &["a"] }, Format::Json), "{\"a\":1}\n{\"a\":2}\n");
    }

    #[test]
    fn csv_forms() {
        let rows = vec![json!({"w": [21, 5], "t": {"x": null, "y": true}})];
        let out = render(Records::Many { rows: &rows, columns: &[] }, Format::Csv);
        assert_eq!(out, "w,t.x,t.y\n\"21,5\",,true\n");
        let empty = render(Records::Many { rows: &[], columns: &["k", "w"] }, Format::Csv);
        assert_eq!(empty, "k,w\n");
    }

    #[test]
    fn table_intervals() {
        let rows = vec![json!({"b": "[1686140/1000000, 1686141/1000000]", "q": false}), json!({"b": "5/7", "q": true})];
        let out = render(Records::Many { rows: &rows, columns: &[] }, Format::Table);
        let lines: Vec<&str> = out.lines().collect();
        assert!(lines[0].starts_with("b "));
        assert!(lines[0].contains("b (exact)"));
        assert!(lines[2].starts_with("[1.6861400000, 1.6861410000]"));
        assert!(lines[2].contains("[1686140/1000000, 1686141/1000000]"));
        assert!(lines[3].starts_with("5/7"));
    }
}

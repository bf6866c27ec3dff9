//! Aligned text rendering of result envelopes.

use gwtower::page::BigradedPage;
use serde_json::Value;

fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0; cols];
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// One `path value` row per leaf, arrays of scalars kept inline.
fn flatten(prefix: &str, v: &Value, rows: &mut Vec<Vec<String>>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, rows);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, rows);
            }
        }
        other => rows.push(vec![prefix.to_string(), scalar(other)]),
    }
}

fn page_table(v: &Value) -> Option<String> {
    let page: BigradedPage = serde_json::from_value(v.clone()).ok()?;
    let mut out = page.to_table();
    if let Some(ds) = &page.differentials {
        let rows: Vec<Vec<String>> = ds
            .iter()
            .map(|d| {
                vec![
                    format!("d{}", d.r),
                    format!("({},{}) -> ({},{})", d.from[0], d.from[1], d.to[0], d.to[1]),
                    format!("rank {}", d.rank),
                ]
            })
            .collect();
        out.push_str(&align(&rows));
    }
    Some(out)
}

pub fn table(envelope: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", &envelope["params"], &mut rows);
    let mut out = format!("# {}\n# params\n", scalar(&envelope["command"]));
    out.push_str(&align(&rows));
    out.push_str("# result\n");
    let result = &envelope["result"];
    if let Some(t) = page_table(result) {
        out.push_str(&t);
    } else if let Some(pages) = result.get("pages").and_then(Value::as_array) {
        for p in pages {
            out.push_str(&page_table(p).unwrap_or_default());
        }
    } else {
        let mut rows = Vec::new();
        flatten("", result, &mut rows);
        out.push_str(&align(&rows));
    }
    out
}

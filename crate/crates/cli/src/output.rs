use serde::Serialize;

use crate::args::OutputFormat;

/// Pads every column to its widest cell.
pub fn align(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let padded: Vec<String> = cells
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_owned()
    };
    let mut out = line(&mut header.iter().copied());
    out.push('\n');
    for row in rows {
        out.push_str(&line(&mut row.iter().map(String::as_str)));
        out.push('\n');
    }
    out
}

/// JSON object or a two-column key/value table.
pub fn render<T: Serialize>(value: &T, format: OutputFormat) -> String {
    let json = serde_json::to_value(value).expect("output types serialize");
    match format {
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(&json).expect("valid json")),
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = match &json {
                serde_json::Value::Object(map) => map
                    .iter()
                    .map(|(k, v)| {
                        let shown = match v {
                            serde_json::Value::String(s) => s.clone(),
                            other => other.to_string(),
                        };
                        vec![k.clone(), shown]
                    })
                    .collect(),
                other => vec![vec!["value".into(), other.to_string()]],
            };
            align(&["field", "value"], &rows)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_line_up() {
        let t = align(&["a", "long"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    long\nxyz  1\n");
    }
}

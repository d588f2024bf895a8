//! Rendering helpers: aligned text tables, CSV and the JSON envelope.

use serde::Serialize;
use zeno_core::Rational;

pub const SCHEMA_VERSION: u32 = 1;

/// A rational in both exact and rounded decimal form.
#[derive(Debug, Clone, Serialize)]
pub struct Num {
    pub exact: String,
    pub decimal: String,
}

impl Num {
    pub fn new(value: &Rational, digits: usize) -> Self {
        Num {
            exact: value.to_string(),
            decimal: value.to_decimal_string(digits),
        }
    }
}

#[derive(Serialize)]
pub struct Envelope<'a, I: Serialize, R: Serialize> {
    pub schema_version: u32,
    pub command: &'a str,
    pub inputs: I,
    pub results: R,
}

pub fn envelope<I: Serialize, R: Serialize>(command: &str, inputs: I, results: R) -> String {
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        inputs,
        results,
    };
    let mut text = serde_json::to_string_pretty(&env).expect("envelope serializes");
    text.push('\n');
    text
}

/// Left-aligned columns separated by two spaces, trailing whitespace trimmed.
pub fn table(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|cell| cell.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            line.push_str(cell);
            if c + 1 < row.len() {
                let pad = widths[c] - cell.chars().count() + 2;
                line.extend(std::iter::repeat_n(' ', pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_alignment() {
        let rows = vec![
            vec!["n".to_string(), "t_n".to_string()],
            vec!["10".to_string(), "1/2".to_string()],
        ];
        assert_eq!(table(&rows), "n   t_n\n10  1/2\n");
    }

    #[test]
    fn csv_lines() {
        let rows = vec![vec!["0".to_string(), "1/2".to_string()]];
        assert_eq!(csv(&["n", "t_n"], &rows), "n,t_n\n0,1/2\n");
    }
}

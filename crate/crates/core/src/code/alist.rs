//! MacKay's alist text format.
//!
//! ```text
//! n m
//! max_col_weight max_row_weight
//! <n column weights>
//! <m row weights>
//! <n lines: 1-based check indices of each column, zero padded>
//! <m lines: 1-based variable indices of each row, zero padded>
//! ```

use std::fmt::Write as _;

use super::SparseParityCheck;
use crate::error::{Error, Result};

/// Serializes `h` as an alist document with LF line endings.
pub fn save_alist(h: &SparseParityCheck) -> String {
    let max_col = h.column_weights().max().unwrap_or(0);
    let max_row = h.row_weights().max().unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", h.n(), h.m());
    let _ = writeln!(out, "{max_col} {max_row}");
    out.push_str(&join(h.column_weights()));
    out.push('\n');
    out.push_str(&join(h.row_weights()));
    out.push('\n');
    for col in h.cols() {
        out.push_str(&padded(col, max_col));
        out.push('\n');
    }
    for row in h.rows() {
        out.push_str(&padded(row, max_row));
        out.push('\n');
    }
    out
}

fn join(values: impl Iterator<Item = usize>) -> String {
    values.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn padded(indices: &[usize], width: usize) -> String {
    indices
        .iter()
        .map(|&x| x + 1)
        .chain(std::iter::repeat_n(0, width.saturating_sub(indices.len())))
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    /// Next non-blank line as parsed integers, with its 1-based line number.
    fn next_ints(&mut self, what: &str) -> Result<(usize, Vec<usize>)> {
        for (idx, line) in self.inner.by_ref() {
            let number = idx + 1;
            self.last = number;
            if line.trim().is_empty() {
                continue;
            }
            let values = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| Error::parse(number, format!("expected a non-negative integer, found {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok((number, values));
        }
        Err(Error::parse(self.last + 1, format!("unexpected end of document, expected {what}")))
    }
}

/// Parses an alist document. Indices in the file are 1-based.
pub fn load_alist(text: &str) -> Result<SparseParityCheck> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
        last: 0,
    };

    let (ln, dims) = lines.next_ints("dimensions")?;
    let [n, m] = dims[..] else {
        return Err(Error::parse(ln, "header must be \"n m\""));
    };
    let (ln, maxes) = lines.next_ints("maximum weights")?;
    let [max_col, max_row] = maxes[..] else {
        return Err(Error::parse(ln, "second line must be \"max_col_weight max_row_weight\""));
    };

    let (ln, col_weights) = lines.next_ints("column weights")?;
    if col_weights.len() != n {
        return Err(Error::parse(ln, format!("expected {n} column weights, found {}", col_weights.len())));
    }
    if col_weights.iter().copied().max().unwrap_or(0) != max_col {
        return Err(Error::parse(ln, format!("column weights do not match declared maximum {max_col}")));
    }
    let (ln, row_weights) = lines.next_ints("row weights")?;
    if row_weights.len() != m {
        return Err(Error::parse(ln, format!("expected {m} row weights, found {}", row_weights.len())));
    }
    if row_weights.iter().copied().max().unwrap_or(0) != max_row {
        return Err(Error::parse(ln, format!("row weights do not match declared maximum {max_row}")));
    }

    let mut cols = Vec::with_capacity(n);
    for (i, &w) in col_weights.iter().enumerate() {
        let (ln, entries) = lines.next_ints(&format!("column {}", i + 1))?;
        cols.push((ln, adjacency(ln, &entries, w, m, "check")?));
    }
    let mut rows = Vec::with_capacity(m);
    for (j, &w) in row_weights.iter().enumerate() {
        let (ln, entries) = lines.next_ints(&format!("row {}", j + 1))?;
        if w == 0 {
            return Err(Error::parse(ln, format!("row {} has weight 0", j + 1)));
        }
        rows.push(adjacency(ln, &entries, w, n, "variable")?);
    }

    let h = SparseParityCheck::from_rows(n, rows).map_err(|e| Error::parse(lines.last, e.to_string()))?;
    for (i, (ln, mut col)) in cols.into_iter().enumerate() {
        col.sort_unstable();
        if col != h.col(i) {
            return Err(Error::parse(
                ln,
                format!("column {} disagrees with the row section", i + 1),
            ));
        }
    }
    Ok(h)
}

/// Converts one adjacency line to 0-based indices, enforcing the declared
/// weight and the trailing-zero padding convention.
fn adjacency(line: usize, entries: &[usize], weight: usize, bound: usize, kind: &str) -> Result<Vec<usize>> {
    let listed = entries.iter().take_while(|&&v| v != 0).count();
    if entries[listed..].iter().any(|&v| v != 0) {
        return Err(Error::parse(line, "zero padding must come after all indices"));
    }
    if listed != weight {
        return Err(Error::parse(
            line,
            format!("declared weight {weight} but {listed} indices listed"),
        ));
    }
    let mut out = Vec::with_capacity(listed);
    for &v in &entries[..listed] {
        if v > bound {
            return Err(Error::parse(line, format!("{kind} index {v} out of range 1..={bound}")));
        }
        out.push(v - 1);
    }
    let mut sorted = out.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::parse(line, format!("duplicate {kind} index")));
    }
    Ok(out)
}

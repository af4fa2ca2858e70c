//! MacKay alist text format for sparse parity-check matrices.
//!
//! ```text
//! n m
//! max_col_degree max_row_degree
//! <n column degrees>
//! <m row degrees>
//! <n lines: 1-based row indices of each column, zero padded to max_col_degree>
//! <m lines: 1-based column indices of each row, zero padded to max_row_degree>
//! ```

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

fn join(values: impl IntoIterator<Item = usize>) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn padded(indices: &[usize], width: usize) -> String {
    join(indices.iter().map(|&i| i + 1).chain(std::iter::repeat_n(0, width - indices.len())))
}

pub fn to_alist(h: &BitMatrix) -> String {
    let cols = h.col_supports();
    let rows: Vec<Vec<usize>> = (0..h.rows()).map(|r| h.row_support(r)).collect();
    let max_col = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", h.cols(), h.rows()));
    out.push_str(&format!("{max_col} {max_row}\n"));
    out.push_str(&join(cols.iter().map(Vec::len)));
    out.push('\n');
    out.push_str(&join(rows.iter().map(Vec::len)));
    out.push('\n');
    for c in &cols {
        out.push_str(&padded(c, max_col));
        out.push('\n');
    }
    for r in &rows {
        out.push_str(&padded(r, max_row));
        out.push('\n');
    }
    out
}

pub fn from_alist(text: &str) -> Result<BitMatrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut next_numbers = |expected: Option<usize>| -> Result<(usize, Vec<usize>)> {
        let (line, raw) = lines.next().ok_or(Error::Parse { line: 0, msg: "unexpected end of alist".into() })?;
        let nums = raw
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|e| Error::Parse { line, msg: format!("`{t}`: {e}") }))
            .collect::<Result<Vec<_>>>()?;
        if let Some(n) = expected {
            if nums.len() != n {
                return Err(Error::Parse { line, msg: format!("expected {n} numbers, found {}", nums.len()) });
            }
        }
        Ok((line, nums))
    };
    let (_, head) = next_numbers(Some(2))?;
    let (n, m) = (head[0], head[1]);
    let (_, max) = next_numbers(Some(2))?;
    let (_, col_deg) = next_numbers(Some(n))?;
    let (_, row_deg) = next_numbers(Some(m))?;
    let mut h = BitMatrix::zeros(m, n);
    for (c, &deg) in col_deg.iter().enumerate() {
        let (line, idx) = next_numbers(Some(max[0]))?;
        let ones: Vec<usize> = idx.iter().copied().filter(|&i| i != 0).collect();
        if ones.len() != deg || ones.iter().any(|&r| r > m) {
            return Err(Error::Parse { line, msg: format!("column {} entries disagree with header", c + 1) });
        }
        for r in ones {
            h.set(r - 1, c, true);
        }
    }
    for (r, &deg) in row_deg.iter().enumerate() {
        let (line, idx) = next_numbers(Some(max[1]))?;
        let ones: Vec<usize> = idx.iter().copied().filter(|&i| i != 0).map(|i| i - 1).collect();
        if ones.len() != deg || h.row_support(r) != ones {
            return Err(Error::Parse { line, msg: format!("row {} disagrees with the column lists", r + 1) });
        }
    }
    Ok(h)
}

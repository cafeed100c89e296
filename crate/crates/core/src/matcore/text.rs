//! Plain-text matrix and witness files.
//!
//! A matrix file starts with `<rows> <cols>` followed by `rows` lines of
//! `cols` whitespace-separated tokens. `0` and `1` are the designated zero and
//! one; every other token becomes an extra alphabet symbol, numbered in order
//! of first appearance. A witness file holds two lines of indices: rows, then
//! columns.

use std::fmt::Write as _;
use std::sync::Arc;

use super::{Alphabet, BoolMatrix, MatrixError, Selection};

fn parse_err(line: usize, msg: impl Into<String>) -> MatrixError {
    MatrixError::Parse { line, msg: msg.into() }
}

pub fn parse_matrix(text: &str) -> Result<BoolMatrix, MatrixError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [r, c] = dims[..] else {
        return Err(parse_err(1, "header must be \"<rows> <cols>\""));
    };
    let rows: usize = r.parse().map_err(|_| parse_err(1, format!("bad row count {r:?}")))?;
    let cols: usize = c.parse().map_err(|_| parse_err(1, format!("bad column count {c:?}")))?;
    if rows == 0 || cols == 0 {
        return Err(parse_err(1, "dimensions must be positive"));
    }

    let mut alphabet = Alphabet::binary();
    let mut entries = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| parse_err(i + 2, format!("expected {rows} matrix rows, found {i}")))?;
        let mut count = 0;
        for tok in line.split_whitespace() {
            let s = match alphabet.lookup(tok) {
                Some(s) => s,
                None => alphabet.push(tok).map_err(|e| parse_err(lineno, e.to_string()))?,
            };
            entries.push(s);
            count += 1;
        }
        if count != cols {
            return Err(parse_err(lineno, format!("expected {cols} tokens, found {count}")));
        }
    }
    for (lineno, line) in lines {
        if !line.trim().is_empty() {
            return Err(parse_err(lineno, "unexpected content after the last matrix row"));
        }
    }
    BoolMatrix::new(rows, cols, entries, Arc::new(alphabet))
}

pub fn format_matrix(m: &BoolMatrix) -> String {
    let mut out = String::with_capacity(m.rows() * m.cols() * 2 + 16);
    writeln!(out, "{} {}", m.rows(), m.cols()).unwrap();
    for i in 0..m.rows() {
        for (j, &s) in m.row(i).iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            out.push_str(m.alphabet().token(s));
        }
        out.push('\n');
    }
    out
}

fn join(idx: &[usize]) -> String {
    idx.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub fn format_selection(sel: &Selection) -> String {
    format!("{}\n{}\n", join(&sel.rows), join(&sel.cols))
}

pub fn parse_selection(text: &str) -> Result<Selection, MatrixError> {
    let mut lines = text.lines();
    let mut seq = |lineno: usize| -> Result<Vec<usize>, MatrixError> {
        let line = lines.next().ok_or_else(|| parse_err(lineno, "missing index line"))?;
        line.split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(lineno, format!("bad index {t:?}"))))
            .collect()
    };
    let rows = seq(1)?;
    let cols = seq(2)?;
    Ok(Selection::new(rows, cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_extra_tokens_in_order() {
        let m = parse_matrix("2 3\n0 w 1\nv 0 w\n").unwrap();
        assert_eq!(m.alphabet().symbols(), &["0", "1", "w", "v"]);
        assert_eq!(m.row(0), &[0, 2, 1]);
        assert_eq!(m.row(1), &[3, 0, 2]);
        assert_eq!(format_matrix(&m), "2 3\n0 w 1\nv 0 w\n");
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(
            parse_matrix("2 2\n0 1\n0\n"),
            Err(MatrixError::Parse { line: 3, msg: "expected 2 tokens, found 1".into() })
        );
        assert!(matches!(parse_matrix(""), Err(MatrixError::Parse { line: 1, .. })));
        assert!(matches!(parse_matrix("2 x\n"), Err(MatrixError::Parse { line: 1, .. })));
        assert!(matches!(parse_matrix("2 1\n0\n"), Err(MatrixError::Parse { line: 3, .. })));
        assert!(matches!(parse_matrix("1 1\n0\n1\n"), Err(MatrixError::Parse { line: 3, .. })));
        assert!(parse_matrix("1 1\n0\n\n").is_ok());
    }

    #[test]
    fn selection_roundtrip() {
        let sel = Selection::new(vec![3, 0, 2], vec![1, 4, 0]);
        assert_eq!(parse_selection(&format_selection(&sel)).unwrap(), sel);
        assert_eq!(parse_selection("\n\n").unwrap(), Selection::empty());
        assert!(parse_selection("1 2\n").is_err());
    }
}

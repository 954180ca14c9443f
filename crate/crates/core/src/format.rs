//! The plain-text matrix format: one row per line, entries separated by whitespace.
//!
//! Entries are integers or polynomials in `t` such as `3`, `t`, `2t^2+t`. Blank lines and
//! lines starting with `#` are ignored.

use crate::algebra::{IntPoly, Matrix, PolyMatrix, Polynomials, RingKind, ZMatrix};
use crate::error::{Error, Result};

fn ring_spec(ring: RingKind) -> Polynomials {
    Polynomials { nonnegative: ring.nonnegative() }
}

fn parse_entry_at(token: &str, ring: RingKind, line: usize, column: usize) -> Result<IntPoly> {
    let e = IntPoly::parse_entry(token).map_err(|(off, message)| Error::Parse { line, column: column + off, message })?;
    if !ring.admits(&e) {
        return Err(Error::Parse {
            line,
            column,
            message: format!("entry '{token}' is not an element of {}", ring.name()),
        });
    }
    Ok(e)
}

/// Parses rows given as separate strings (the row `i` is reported as line `i + 1`).
pub fn parse_matrix_rows(rows: &[&str], ring: RingKind) -> Result<PolyMatrix> {
    let mut data = Vec::new();
    let mut width: Option<usize> = None;
    for (i, row) in rows.iter().enumerate() {
        let entries = tokens(row)
            .map(|(col, tok)| parse_entry_at(tok, ring, i + 1, col))
            .collect::<Result<Vec<_>>>()?;
        match width {
            None => width = Some(entries.len()),
            Some(w) if w != entries.len() => {
                return Err(Error::Parse {
                    line: i + 1,
                    column: 1,
                    message: format!("row has {} entries, expected {w}", entries.len()),
                })
            }
            _ => {}
        }
        data.extend(entries);
    }
    Matrix::new(ring_spec(ring), rows.len(), width.unwrap_or(0), data)
}

// (1-based column, token) pairs
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out.into_iter()
}

/// Parses a whole document; an empty document is an error.
pub fn parse_matrix_document(text: &str, ring: RingKind) -> Result<PolyMatrix> {
    let mut rows = Vec::new();
    let mut line_numbers = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        rows.push(line);
        line_numbers.push(i + 1);
    }
    if rows.is_empty() {
        return Err(Error::Parse { line: 1, column: 1, message: "empty matrix document".into() });
    }
    parse_matrix_rows(&rows, ring).map_err(|e| match e {
        Error::Parse { line, column, message } => Error::Parse { line: line_numbers[line - 1], column, message },
        other => other,
    })
}

/// Parses a ℤ₊ matrix document.
pub fn parse_nat_matrix(text: &str) -> Result<ZMatrix> {
    let p = parse_matrix_document(text, RingKind::ZPlus)?;
    Ok(p.constant_part().expect("zplus entries are constants"))
}

pub fn render_matrix_rows(m: &PolyMatrix) -> Vec<String> {
    m.render_rows()
}

pub fn render_matrix_document(m: &PolyMatrix) -> String {
    let mut out = String::new();
    for row in m.render_rows() {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_polynomial_entries() {
        let m = parse_matrix_document("0 t\n2t^2+t 3\n", RingKind::ZPlusT).unwrap();
        assert_eq!(m.get(1, 0), &IntPoly::from_i64s(&[0, 1, 2]));
        assert_eq!(render_matrix_document(&m), "0 t\n2t^2+t 3\n");
    }

    #[test]
    fn ring_violations_have_positions() {
        match parse_matrix_document("1 2\n3 t\n", RingKind::ZPlus) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(parse_matrix_document("-1\n", RingKind::ZPlus).is_err());
        assert!(parse_matrix_document("-1\n", RingKind::Z).is_ok());
        assert!(parse_matrix_document("5\n", RingKind::Fp(5)).is_err());
    }

    #[test]
    fn ragged_and_empty_documents_fail() {
        assert!(matches!(parse_matrix_document("1 2\n3\n", RingKind::ZPlus), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_matrix_document("", RingKind::ZPlus), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix_document("# only a comment\n\n", RingKind::ZPlus), Err(Error::Parse { .. })));
    }

    #[test]
    fn bad_token_column() {
        match parse_matrix_document("# header\n1  2x\n", RingKind::ZPlusT) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
    }
}

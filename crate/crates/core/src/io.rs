//! PMM and ADJ text formats.
//!
//! Both are `MAGIC 1`, the order, then one line per row with space-separated
//! tokens, LF line endings. Writers emit a trailing newline; parsers accept the
//! file with or without it and reject anything else.

use crate::linalg::{Graph, IntSymMatrix, LinalgError, PmOneMatrix};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("expected header `{expected}`, found `{found}`")]
    BadHeader { expected: &'static str, found: String },
    #[error("carriage return found; files must use LF line endings")]
    CarriageReturn,
    #[error("bad order line `{0}`")]
    BadOrder(String),
    #[error("expected {expected} matrix rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("line {line}: expected {expected} tokens, found {found}")]
    RowLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: unexpected token `{token}`")]
    BadToken { line: usize, token: String },
    #[error("matrix is not symmetric at ({i}, {j})")]
    Asymmetric { i: usize, j: usize },
    #[error("nonzero diagonal entry at row {0}")]
    NonzeroDiagonal(usize),
}

const PMM_HEADER: &str = "PMM 1";
const ADJ_HEADER: &str = "ADJ 1";

fn write_rows(header: &str, m: &IntSymMatrix) -> String {
    let n = m.order();
    let mut out = String::with_capacity(16 + n * n * 3);
    out.push_str(header);
    out.push('\n');
    out.push_str(&n.to_string());
    out.push('\n');
    for i in 0..n {
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_pmm(m: &PmOneMatrix) -> String {
    write_rows(PMM_HEADER, m.as_sym())
}

pub fn write_adj(g: &Graph) -> String {
    write_rows(ADJ_HEADER, g.as_sym())
}

fn parse_rows(
    text: &str,
    header: &'static str,
    token: impl Fn(&str) -> Option<i64>,
) -> Result<IntSymMatrix, FormatError> {
    if text.contains('\r') {
        return Err(FormatError::CarriageReturn);
    }
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n');
    let first = lines.next().unwrap_or("");
    if first != header {
        return Err(FormatError::BadHeader {
            expected: header,
            found: first.to_string(),
        });
    }
    let order_line = lines.next().unwrap_or("");
    let n: usize = order_line
        .parse()
        .ok()
        .filter(|&n| n > 0 && order_line.chars().all(|c| c.is_ascii_digit()))
        .ok_or_else(|| FormatError::BadOrder(order_line.to_string()))?;
    let rows: Vec<&str> = lines.collect();
    if rows.len() != n {
        return Err(FormatError::RowCount {
            expected: n,
            found: rows.len(),
        });
    }
    let mut data = Vec::with_capacity(n * n);
    for (r, line) in rows.iter().enumerate() {
        let tokens: Vec<&str> = line.split(' ').collect();
        if tokens.len() != n {
            return Err(FormatError::RowLength {
                line: r + 3,
                expected: n,
                found: tokens.len(),
            });
        }
        for t in tokens {
            data.push(token(t).ok_or_else(|| FormatError::BadToken {
                line: r + 3,
                token: t.to_string(),
            })?);
        }
    }
    IntSymMatrix::from_vec(n, data).map_err(|e| match e {
        LinalgError::NotSymmetric { i, j } => FormatError::Asymmetric { i, j },
        other => unreachable!("shape already validated: {other}"),
    })
}

pub fn parse_pmm(text: &str) -> Result<PmOneMatrix, FormatError> {
    let m = parse_rows(text, PMM_HEADER, |t| match t {
        "1" => Some(1),
        "-1" => Some(-1),
        _ => None,
    })?;
    Ok(PmOneMatrix::new(m).expect("tokens restricted to ±1"))
}

pub fn parse_adj(text: &str) -> Result<Graph, FormatError> {
    let m = parse_rows(text, ADJ_HEADER, |t| match t {
        "0" => Some(0),
        "1" => Some(1),
        _ => None,
    })?;
    if let Some(i) = (0..m.order()).find(|&i| m.get(i, i) != 0) {
        return Err(FormatError::NonzeroDiagonal(i));
    }
    Ok(Graph::new(m).expect("0/1 entries with zero diagonal"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pmm_bytes() {
        assert_eq!(write_pmm(&PmOneMatrix::h2()), "PMM 1\n2\n1 1\n1 -1\n");
    }

    #[test]
    fn adj_bytes() {
        assert_eq!(write_adj(&Graph::complete(2)), "ADJ 1\n2\n0 1\n1 0\n");
    }

    #[test]
    fn pmm_rejects_bad_input() {
        assert!(matches!(
            parse_pmm("PMM 1\n2\n1 1\n-1 -1\n"),
            Err(FormatError::Asymmetric { .. })
        ));
        assert!(matches!(
            parse_pmm("PMM 1\n2\n1 0\n0 1\n"),
            Err(FormatError::BadToken { .. })
        ));
        assert!(matches!(
            parse_pmm("PMM 2\n1\n1\n"),
            Err(FormatError::BadHeader { .. })
        ));
        assert!(matches!(
            parse_pmm("PMM 1\r\n1\r\n1\r\n"),
            Err(FormatError::CarriageReturn)
        ));
        assert!(matches!(
            parse_pmm("PMM 1\n2\n1 1\n"),
            Err(FormatError::RowCount { .. })
        ));
        assert!(matches!(
            parse_pmm("PMM 1\n2\n1  1\n1 1\n"),
            Err(FormatError::RowLength { .. })
        ));
        assert!(matches!(parse_pmm("PMM 1\n+2\n"), Err(FormatError::BadOrder(_))));
    }

    #[test]
    fn adj_rejects_loops_and_asymmetry() {
        assert_eq!(
            parse_adj("ADJ 1\n2\n1 0\n0 0\n"),
            Err(FormatError::NonzeroDiagonal(0))
        );
        assert!(matches!(
            parse_adj("ADJ 1\n2\n0 1\n0 0\n"),
            Err(FormatError::Asymmetric { .. })
        ));
    }

    #[test]
    fn trailing_newline_optional() {
        assert_eq!(parse_pmm("PMM 1\n1\n-1").unwrap().get(0, 0), -1);
    }
}

//! Symmetric Latin squares used as block layouts.
//!
//! Formulas are 1-based; storage is 0-based. Symbols are `1..=s`.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatinError {
    #[error("size must be positive")]
    ZeroSize,
    #[error("no symmetric Latin square of odd order {0} has a constant diagonal")]
    ConstDiagImpossible(usize),
    #[error("malformed square: {0}")]
    Malformed(String),
}

/// An `s×s` array over `{1, …, s}`. Constructors in this module always
/// produce genuine Latin squares; [`LatinSquare::from_rows`] only checks shape
/// and symbol range so that [`validate`] has something to reject.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    size: usize,
    cells: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum LatinKind {
    #[serde(rename = "back_circulant")]
    BackCirculant,
    #[serde(rename = "const_diag")]
    ConstDiag,
}

impl LatinSquare {
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, LatinError> {
        let s = rows.len();
        if s == 0 {
            return Err(LatinError::ZeroSize);
        }
        let mut cells = Vec::with_capacity(s * s);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != s {
                return Err(LatinError::Malformed(format!("row {i} has {} cells", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x == 0 || x > s) {
                return Err(LatinError::Malformed(format!("symbol {x} outside 1..={s}")));
            }
            cells.extend_from_slice(row);
        }
        Ok(Self { size: s, cells })
    }

    fn from_fn(s: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut cells = Vec::with_capacity(s * s);
        for i in 1..=s {
            for j in 1..=s {
                cells.push(f(i, j));
            }
        }
        Self { size: s, cells }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Symbol at 0-based position `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// `s` lines of space-separated symbols.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in self.cells.chunks(self.size) {
            let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&r.join(" "));
            out.push('\n');
        }
        out
    }
}

/// `l_{i,j} = ((i + j) mod s) + 1`.
pub fn back_circulant(s: usize) -> Result<LatinSquare, LatinError> {
    if s == 0 {
        return Err(LatinError::ZeroSize);
    }
    Ok(LatinSquare::from_fn(s, |i, j| (i + j) % s + 1))
}

/// Symmetric Latin square of even order with `s` along the diagonal.
///
/// Off the last row and column the square is a back-circulant of order
/// `s − 1`; the last row and column carry the symbols displaced by the
/// diagonal.
pub fn const_diag_symmetric(s: usize) -> Result<LatinSquare, LatinError> {
    if s == 0 {
        return Err(LatinError::ZeroSize);
    }
    if s % 2 == 1 {
        return Err(LatinError::ConstDiagImpossible(s));
    }
    let m = s - 1;
    Ok(LatinSquare::from_fn(s, |i, j| {
        if i == j {
            s
        } else if i < s && j < s {
            (i + j) % m + 1
        } else if i == s {
            (2 * j) % m + 1
        } else {
            (2 * i) % m + 1
        }
    }))
}

pub fn build(kind: LatinKind, s: usize) -> Result<LatinSquare, LatinError> {
    match kind {
        LatinKind::BackCirculant => back_circulant(s),
        LatinKind::ConstDiag => const_diag_symmetric(s),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct LatinReport {
    pub is_latin: bool,
    pub is_symmetric: bool,
    pub diagonal_constant: Option<usize>,
}

pub fn validate(l: &LatinSquare) -> LatinReport {
    let s = l.size;
    let line_ok = |cell: &dyn Fn(usize) -> usize| {
        let mut seen = vec![false; s + 1];
        (0..s).all(|t| !std::mem::replace(&mut seen[cell(t)], true))
    };
    let rows_ok = (0..s).all(|i| line_ok(&|j| l.get(i, j)));
    let cols_ok = (0..s).all(|j| line_ok(&|i| l.get(i, j)));
    let is_symmetric = (0..s).all(|i| (0..i).all(|j| l.get(i, j) == l.get(j, i)));
    let d = l.get(0, 0);
    let diagonal_constant = (0..s).all(|i| l.get(i, i) == d).then_some(d);
    LatinReport {
        is_latin: rows_ok && cols_ok,
        is_symmetric,
        diagonal_constant,
    }
}

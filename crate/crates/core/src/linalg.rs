//! Exact integer matrices with checked arithmetic.
//!
//! [`IntSymMatrix`] is the workhorse: a dense row-major symmetric matrix whose
//! symmetry is enforced at construction. [`PmOneMatrix`] and [`Graph`] are
//! thin wrappers that add an entry-set invariant. [`IntMatrix`] exists only so
//! that products of non-commuting symmetric matrices have somewhere to live.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("entry {value} at ({i}, {j}) is not allowed here")]
    InvalidEntry { i: usize, j: usize, value: i64 },
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("exponent {0} outside 1..=4")]
    ExponentOutOfRange(u32),
    #[error("matrix order must be positive")]
    Empty,
}

pub type Result<T> = std::result::Result<T, LinalgError>;

fn mul(a: i64, b: i64, what: &'static str) -> Result<i64> {
    a.checked_mul(b).ok_or(LinalgError::Overflow(what))
}

fn add(a: i64, b: i64, what: &'static str) -> Result<i64> {
    a.checked_add(b).ok_or(LinalgError::Overflow(what))
}

/// General dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, c: i64) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|&x| mul(x, c, "scale"))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { data, ..*self })
    }

    /// Reinterprets a square symmetric result as an [`IntSymMatrix`].
    pub fn into_symmetric(self) -> Result<IntSymMatrix> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        IntSymMatrix::from_vec(self.rows, self.data)
    }
}

/// Exact product `a · b` with overflow detection.
pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    if a.cols != b.rows {
        return Err(LinalgError::DimensionMismatch {
            left: (a.rows, a.cols),
            right: (b.rows, b.cols),
        });
    }
    let mut out = vec![0i64; a.rows * b.cols];
    for i in 0..a.rows {
        let out_row = &mut out[i * b.cols..(i + 1) * b.cols];
        for l in 0..a.cols {
            let x = a.data[i * a.cols + l];
            if x == 0 {
                continue;
            }
            let b_row = &b.data[l * b.cols..(l + 1) * b.cols];
            for (o, &y) in out_row.iter_mut().zip(b_row) {
                *o = add(*o, mul(x, y, "mat_mul")?, "mat_mul")?;
            }
        }
    }
    IntMatrix::new(a.rows, b.cols, out)
}

/// Dense symmetric integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntSymMatrix {
    order: usize,
    data: Vec<i64>,
}

impl IntSymMatrix {
    /// Builds from a row-major vector, rejecting asymmetry.
    pub fn from_vec(order: usize, data: Vec<i64>) -> Result<Self> {
        if order == 0 {
            return Err(LinalgError::Empty);
        }
        if data.len() != order * order {
            return Err(LinalgError::NotSquare {
                rows: order,
                cols: data.len() / order,
            });
        }
        for i in 0..order {
            for j in (i + 1)..order {
                if data[i * order + j] != data[j * order + i] {
                    return Err(LinalgError::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self { order, data })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(LinalgError::NotSquare {
                rows: n,
                cols: bad.len(),
            });
        }
        Self::from_vec(n, rows.concat())
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> i64) -> Result<Self> {
        let mut data = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                data.push(f(i, j));
            }
        }
        Self::from_vec(order, data)
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order.max(1), |i, j| i64::from(i == j)).expect("identity is symmetric")
    }

    /// The all-ones matrix `J_n`.
    pub fn ones(order: usize) -> Self {
        Self::from_fn(order.max(1), |_, _| 1).expect("J is symmetric")
    }

    pub fn zeros(order: usize) -> Self {
        Self::from_fn(order.max(1), |_, _| 0).expect("zero is symmetric")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.order).map(|i| self.get(i, i)).collect()
    }

    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix {
            rows: self.order,
            cols: self.order,
            data: self.data.clone(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> Result<i64>) -> Result<Self> {
        if self.order != other.order {
            return Err(LinalgError::DimensionMismatch {
                left: (self.order, self.order),
                right: (other.order, other.order),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            order: self.order,
            data,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| add(a, b, "add"))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.checked_sub(b).ok_or(LinalgError::Overflow("sub")))
    }

    pub fn scale(&self, c: i64) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|&x| mul(x, c, "scale"))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            order: self.order,
            data,
        })
    }

    pub fn neg(&self) -> Result<Self> {
        self.scale(-1)
    }

    /// Same matrix with the diagonal set to zero.
    pub fn zero_diagonal(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.order {
            out.data[i * self.order + i] = 0;
        }
        out
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        mat_pow(self, e)
    }

    /// Sum of squared entries, i.e. `tr(A²)` for symmetric `A`.
    pub fn sum_of_squares(&self) -> Result<i64> {
        self.data
            .iter()
            .try_fold(0i64, |acc, &x| add(acc, mul(x, x, "sum_of_squares")?, "sum_of_squares"))
    }

    /// Applies `f` entrywise; `f` must map symmetric input to symmetric output,
    /// which any entrywise function does.
    pub fn map(&self, f: impl Fn(i64) -> i64) -> Self {
        Self {
            order: self.order,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }
}

/// Kronecker product; entry `((i,p),(j,q)) = a[i][j] · b[p][q]`.
pub fn kron(a: &IntSymMatrix, b: &IntSymMatrix) -> Result<IntSymMatrix> {
    let (m, n) = (a.order, b.order);
    let order = m.checked_mul(n).ok_or(LinalgError::Overflow("kron order"))?;
    let mut data = vec![0i64; order * order];
    for i in 0..m {
        for j in 0..m {
            let x = a.get(i, j);
            for p in 0..n {
                for q in 0..n {
                    data[(i * n + p) * order + j * n + q] = mul(x, b.get(p, q), "kron")?;
                }
            }
        }
    }
    Ok(IntSymMatrix { order, data })
}

/// `a^e` for `1 ≤ e ≤ 4`. Powers of a symmetric matrix stay symmetric.
pub fn mat_pow(a: &IntSymMatrix, e: u32) -> Result<IntSymMatrix> {
    if !(1..=4).contains(&e) {
        return Err(LinalgError::ExponentOutOfRange(e));
    }
    let base = a.to_matrix();
    let mut acc = base.clone();
    for _ in 1..e {
        acc = mat_mul(&acc, &base)?;
    }
    acc.into_symmetric()
}

pub fn trace(a: &IntSymMatrix) -> Result<i64> {
    (0..a.order).try_fold(0i64, |acc, i| add(acc, a.get(i, i), "trace"))
}

pub fn rowsums(a: &IntSymMatrix) -> Result<Vec<i64>> {
    (0..a.order)
        .map(|i| a.row(i).iter().try_fold(0i64, |acc, &x| add(acc, x, "rowsums")))
        .collect()
}

/// `den · B³ == num · B` entrywise: every eigenvalue λ of `b` then satisfies
/// `den·λ³ = num·λ`, i.e. λ ∈ {0, ±√(num/den)}.
pub fn minpoly_zero_pm_check(b: &IntSymMatrix, num: i64, den: i64) -> Result<bool> {
    let cube = mat_pow(b, 3)?;
    for (&c, &x) in cube.entries().iter().zip(b.entries()) {
        if mul(den, c, "minpoly")? != mul(num, x, "minpoly")? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Symmetric matrix with entries in {−1, +1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PmOneMatrix(IntSymMatrix);

impl PmOneMatrix {
    pub fn new(m: IntSymMatrix) -> Result<Self> {
        for i in 0..m.order {
            for j in 0..m.order {
                let v = m.get(i, j);
                if v != 1 && v != -1 {
                    return Err(LinalgError::InvalidEntry { i, j, value: v });
                }
            }
        }
        Ok(Self(m))
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntSymMatrix::from_rows(rows)?)
    }

    pub fn ones(order: usize) -> Self {
        Self(IntSymMatrix::ones(order))
    }

    /// `H_2 = [[1, 1], [1, −1]]`.
    pub fn h2() -> Self {
        Self::from_rows(&[vec![1, 1], vec![1, -1]]).expect("H_2")
    }

    /// `K = [[1, −1], [−1, 1]]`, the zero-rowsum rank-one matrix.
    pub fn k2() -> Self {
        Self::from_rows(&[vec![1, -1], vec![-1, 1]]).expect("K")
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0.get(i, j)
    }

    pub fn as_sym(&self) -> &IntSymMatrix {
        &self.0
    }

    pub fn into_sym(self) -> IntSymMatrix {
        self.0
    }

    pub fn negated(&self) -> Self {
        Self(self.0.map(|x| -x))
    }

    pub fn kron(&self, other: &Self) -> Self {
        // ±1 products cannot overflow.
        Self(kron(&self.0, &other.0).expect("±1 Kronecker product"))
    }
}

/// Simple graph stored as a 0/1 adjacency matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph(IntSymMatrix);

impl Graph {
    pub fn new(m: IntSymMatrix) -> Result<Self> {
        for i in 0..m.order {
            for j in 0..m.order {
                let v = m.get(i, j);
                if (i == j && v != 0) || !(v == 0 || v == 1) {
                    return Err(LinalgError::InvalidEntry { i, j, value: v });
                }
            }
        }
        Ok(Self(m))
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut data = vec![0i64; order * order];
        for &(u, v) in edges {
            if u >= order || v >= order || u == v {
                return Err(LinalgError::InvalidEntry {
                    i: u,
                    j: v,
                    value: 1,
                });
            }
            data[u * order + v] = 1;
            data[v * order + u] = 1;
        }
        Self::new(IntSymMatrix::from_vec(order, data)?)
    }

    pub fn complete(order: usize) -> Self {
        Self(IntSymMatrix::from_fn(order.max(1), |i, j| i64::from(i != j)).expect("K_n"))
    }

    pub fn empty(order: usize) -> Self {
        Self(IntSymMatrix::zeros(order))
    }

    pub fn cycle(order: usize) -> Result<Self> {
        let edges: Vec<_> = (0..order).map(|i| (i, (i + 1) % order)).collect();
        Self::from_edges(order, &edges)
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.0.get(u, v) == 1
    }

    pub fn edge_count(&self) -> usize {
        self.0.data.iter().filter(|&&x| x == 1).count() / 2
    }

    pub fn as_sym(&self) -> &IntSymMatrix {
        &self.0
    }

    pub fn into_sym(self) -> IntSymMatrix {
        self.0
    }
}

/// `result[i][j] = signs[i]·signs[j]·a[perm[i]][perm[j]]`.
pub fn signed_permute(a: &PmOneMatrix, perm: &[usize], signs: &[i64]) -> Result<PmOneMatrix> {
    let n = a.order();
    if perm.len() != n || signs.len() != n {
        return Err(LinalgError::MalformedPermutation(format!(
            "expected length {n}, got perm {} / signs {}",
            perm.len(),
            signs.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(LinalgError::MalformedPermutation(format!(
                "index {p} repeated or out of range"
            )));
        }
    }
    if let Some(&s) = signs.iter().find(|&&s| s != 1 && s != -1) {
        return Err(LinalgError::MalformedPermutation(format!("sign {s}")));
    }
    let m = IntSymMatrix::from_fn(n, |i, j| signs[i] * signs[j] * a.get(perm[i], perm[j]))?;
    Ok(PmOneMatrix(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> IntSymMatrix {
        PmOneMatrix::k2().into_sym()
    }

    #[test]
    fn kron_identity_with_ones_is_block_diagonal() {
        let m = kron(&IntSymMatrix::identity(2), &IntSymMatrix::ones(3)).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(m.get(i, j), i64::from(i / 3 == j / 3));
            }
        }
    }

    #[test]
    fn kron_k_h2_has_zero_rowsums() {
        let m = kron(&k(), PmOneMatrix::h2().as_sym()).unwrap();
        assert_eq!(m.order(), 4);
        assert!(PmOneMatrix::new(m.clone()).is_ok());
        assert_eq!(rowsums(&m).unwrap(), vec![0; 4]);
    }

    #[test]
    fn small_powers() {
        let j3 = IntSymMatrix::ones(3);
        assert_eq!(mat_pow(&j3, 2).unwrap(), j3.scale(3).unwrap());
        let h = IntSymMatrix::ones(4)
            .sub(&IntSymMatrix::identity(4).scale(2).unwrap())
            .unwrap();
        assert_eq!(mat_pow(&h, 2).unwrap(), IntSymMatrix::identity(4).scale(4).unwrap());
        let h2 = PmOneMatrix::h2().into_sym();
        assert_eq!(mat_pow(&h2, 2).unwrap(), IntSymMatrix::identity(2).scale(2).unwrap());
        assert_eq!(mat_pow(&h2, 5), Err(LinalgError::ExponentOutOfRange(5)));
        assert_eq!(mat_pow(&h2, 0), Err(LinalgError::ExponentOutOfRange(0)));
    }

    #[test]
    fn trace_and_rowsums() {
        assert_eq!(trace(&IntSymMatrix::ones(5)).unwrap(), 5);
        let m = kron(&k(), &IntSymMatrix::ones(2)).unwrap();
        assert_eq!(rowsums(&m).unwrap(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn overflow_is_reported() {
        let big = IntSymMatrix::ones(2).scale(i64::MAX / 2).unwrap();
        assert!(matches!(mat_pow(&big, 2), Err(LinalgError::Overflow(_))));
        assert!(matches!(big.scale(4), Err(LinalgError::Overflow(_))));
        assert!(matches!(
            minpoly_zero_pm_check(&big, 1, 1),
            Err(LinalgError::Overflow(_))
        ));
    }

    #[test]
    fn minpoly_examples() {
        assert!(minpoly_zero_pm_check(&IntSymMatrix::ones(5), 25, 1).unwrap());
        assert!(minpoly_zero_pm_check(PmOneMatrix::h2().as_sym(), 2, 1).unwrap());
        assert!(!minpoly_zero_pm_check(PmOneMatrix::h2().as_sym(), 3, 1).unwrap());
    }

    #[test]
    fn rejects_asymmetric_and_bad_entries() {
        assert_eq!(
            IntSymMatrix::from_rows(&[vec![1, 2], vec![3, 1]]),
            Err(LinalgError::NotSymmetric { i: 0, j: 1 })
        );
        assert!(PmOneMatrix::from_rows(&[vec![1, 0], vec![0, 1]]).is_err());
        assert!(Graph::new(IntSymMatrix::identity(2)).is_err());
    }

    #[test]
    fn signed_permute_trivial_cases() {
        let h = PmOneMatrix::h2();
        assert_eq!(signed_permute(&h, &[0, 1], &[1, 1]).unwrap(), h);
        assert_eq!(signed_permute(&h, &[0, 1], &[-1, -1]).unwrap(), h);
        assert!(signed_permute(&h, &[0, 0], &[1, 1]).is_err());
        assert!(signed_permute(&h, &[0, 1], &[1, 2]).is_err());
    }

    #[test]
    fn graph_helpers() {
        let g = Graph::cycle(5).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert!(g.adjacent(0, 4));
        assert_eq!(Graph::complete(4).edge_count(), 6);
    }
}

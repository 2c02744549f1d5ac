//! Symmetric Hadamard matrices and orthogonal ±1 vector families.
//!
//! The catalog holds Sylvester matrices (orders `2^m`) and Paley type II
//! matrices (orders `2(q+1)` for primes `q ≡ 1 mod 4`). Both are symmetric, so
//! they live in [`PmOneMatrix`].

use crate::arith::is_prime;
use crate::linalg::{mat_mul, signed_permute, IntSymMatrix, PmOneMatrix};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// Largest catalog order considered by [`orth_family`].
pub const DEFAULT_CATALOG_CAP: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HadamardError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not congruent to 1 mod 4")]
    WrongResidue(u64),
    #[error("requested order exceeds the cap of {0}")]
    TooLarge(usize),
    #[error("matrix of order {0} does not satisfy H·Hᵀ = nI")]
    NotHadamard(usize),
    #[error("no catalog order up to {cap} offers {needed} rows")]
    NoCatalogOrder { needed: usize, cap: usize },
    #[error("order {n} is not in the catalog or has fewer than {needed} usable rows")]
    NotInCatalog { n: usize, needed: usize },
}

/// Which catalog entry a matrix came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogId {
    Sylvester { m: u32 },
    PaleyII { q: u64 },
}

impl CatalogId {
    pub fn order(&self) -> usize {
        match *self {
            CatalogId::Sylvester { m } => 1usize << m,
            CatalogId::PaleyII { q } => 2 * (q as usize + 1),
        }
    }

    pub fn build(&self) -> Result<HadamardMatrix, HadamardError> {
        match *self {
            CatalogId::Sylvester { m } => sylvester(m),
            CatalogId::PaleyII { q } => paley2(q),
        }
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogId::Sylvester { m } => write!(f, "sylvester({m})"),
            CatalogId::PaleyII { q } => write!(f, "paley2({q})"),
        }
    }
}

impl Serialize for CatalogId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Symmetric ±1 matrix with `H·Hᵀ = nI`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HadamardMatrix(PmOneMatrix);

impl HadamardMatrix {
    /// Verifies the Hadamard identity exactly.
    pub fn new(m: PmOneMatrix) -> Result<Self, HadamardError> {
        let n = m.order();
        let a = m.as_sym().to_matrix();
        let sq = mat_mul(&a, &a).map_err(|_| HadamardError::NotHadamard(n))?;
        let ok = (0..n).all(|i| (0..n).all(|j| sq.get(i, j) == if i == j { n as i64 } else { 0 }));
        if ok {
            Ok(Self(m))
        } else {
            Err(HadamardError::NotHadamard(n))
        }
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn matrix(&self) -> &PmOneMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> PmOneMatrix {
        self.0
    }

    pub fn is_normalized(&self) -> bool {
        (0..self.order()).all(|i| self.0.get(0, i) == 1 && self.0.get(i, 0) == 1)
    }
}

/// `m`-fold Kronecker power of `H_2`.
pub fn sylvester(m: u32) -> Result<HadamardMatrix, HadamardError> {
    if m > DEFAULT_CATALOG_CAP.trailing_zeros() {
        return Err(HadamardError::TooLarge(DEFAULT_CATALOG_CAP));
    }
    let mut h = PmOneMatrix::ones(1);
    for _ in 0..m {
        h = h.kron(&PmOneMatrix::h2());
    }
    Ok(HadamardMatrix(h))
}

fn legendre(x: u64, q: u64) -> i64 {
    let x = x % q;
    if x == 0 {
        return 0;
    }
    let (mut base, mut e, mut acc) = (x, (q - 1) / 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// Paley type II matrix of order `2(q+1)`.
///
/// `C = [[0, jᵀ], [j, Q]]` with `Q` the quadratic-residue matrix is a
/// symmetric conference matrix (`C² = qI`), and
/// `[[C + I, C − I], [C − I, −C − I]]` is then symmetric Hadamard.
pub fn paley2(q: u64) -> Result<HadamardMatrix, HadamardError> {
    if !is_prime(q) {
        return Err(HadamardError::NotPrime(q));
    }
    if q % 4 != 1 {
        return Err(HadamardError::WrongResidue(q));
    }
    let m = q as usize + 1;
    if 2 * m > DEFAULT_CATALOG_CAP {
        return Err(HadamardError::TooLarge(DEFAULT_CATALOG_CAP));
    }
    let c = |i: usize, j: usize| -> i64 {
        match (i, j) {
            (0, 0) => 0,
            (0, _) | (_, 0) => 1,
            _ => legendre((j as u64 + q - i as u64) % q, q),
        }
    };
    let sym = IntSymMatrix::from_fn(2 * m, |i, j| {
        let (bi, bj) = (i / m, j / m);
        let (i, j) = (i % m, j % m);
        let eye = i64::from(i == j);
        match (bi, bj) {
            (0, 0) => c(i, j) + eye,
            (1, 1) => -c(i, j) - eye,
            _ => c(i, j) - eye,
        }
    })
    .expect("Paley II layout is symmetric");
    let pm = PmOneMatrix::new(sym).expect("Paley II entries are ±1");
    HadamardMatrix::new(pm)
}

/// Signs rows and columns so the first row and column are all ones.
///
/// Uses the same sign vector on both sides, so symmetry survives.
pub fn normalize(h: &HadamardMatrix) -> HadamardMatrix {
    let n = h.order();
    let flip = h.0.get(0, 0);
    let signs: Vec<i64> = (0..n).map(|i| h.0.get(i, 0) * flip).collect();
    let ident: Vec<usize> = (0..n).collect();
    let mut m = signed_permute(&h.0, &ident, &signs).expect("valid signs");
    if m.get(0, 0) == -1 {
        m = m.negated();
    }
    HadamardMatrix(m)
}

/// Catalog orders up to `cap`, ascending. Sylvester entries come first on ties.
pub fn catalog(cap: usize) -> Vec<CatalogId> {
    let mut out = Vec::new();
    let mut m = 0;
    while (1usize << m) <= cap {
        out.push(CatalogId::Sylvester { m });
        m += 1;
    }
    let mut q = 5u64;
    while 2 * (q as usize + 1) <= cap {
        if is_prime(q) {
            out.push(CatalogId::PaleyII { q });
        }
        q += 4;
    }
    out.sort_by_key(|id| (id.order(), matches!(id, CatalogId::PaleyII { .. })));
    out
}

/// Pairwise orthogonal ±1 vectors of a common dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthFamily {
    pub dimension: usize,
    pub vectors: Vec<Vec<i64>>,
    pub includes_allones: bool,
    pub source: CatalogId,
    /// 0-based row indices of the normalized source matrix.
    pub rows: Vec<usize>,
}

impl OrthFamily {
    pub fn is_valid(&self) -> bool {
        let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
        let ones = vec![1i64; self.dimension];
        let pairwise = self.vectors.iter().enumerate().all(|(i, a)| {
            self.vectors[..i].iter().all(|b| dot(a, b) == 0)
        });
        let against_ones = self.includes_allones
            || self.vectors.iter().all(|v| dot(v, &ones) == 0);
        pairwise && against_ones
    }
}

/// Rows needed from a catalog matrix for a family of `s` vectors.
fn rows_needed(s: usize, include_allones: bool) -> usize {
    if include_allones {
        s
    } else {
        s + 1
    }
}

/// `s` orthogonal vectors from the smallest admissible catalog order.
///
/// With `include_allones` the first vector is the all-ones row and the rest
/// follow it; without, the vectors are the `s` lowest non-initial rows and so
/// are orthogonal to all-ones.
pub fn orth_family(s: usize, include_allones: bool) -> Result<OrthFamily, HadamardError> {
    orth_family_at(s, include_allones, None, DEFAULT_CATALOG_CAP)
}

/// [`orth_family`] with an optional fixed dimension and an explicit cap.
pub fn orth_family_at(
    s: usize,
    include_allones: bool,
    n: Option<usize>,
    cap: usize,
) -> Result<OrthFamily, HadamardError> {
    let needed = rows_needed(s.max(1), include_allones);
    let id = match n {
        Some(n) => catalog(n.max(cap))
            .into_iter()
            .find(|id| id.order() == n && n >= needed)
            .ok_or(HadamardError::NotInCatalog { n, needed })?,
        None => catalog(cap)
            .into_iter()
            .find(|id| id.order() >= needed)
            .ok_or(HadamardError::NoCatalogOrder { needed, cap })?,
    };
    let h = normalize(&id.build()?);
    let rows: Vec<usize> = if include_allones {
        (0..s).collect()
    } else {
        (1..=s).collect()
    };
    let vectors = rows
        .iter()
        .map(|&r| h.matrix().as_sym().row(r).to_vec())
        .collect();
    Ok(OrthFamily {
        dimension: id.order(),
        vectors,
        includes_allones: include_allones,
        source: id,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sylvester_small() {
        assert_eq!(sylvester(0).unwrap().matrix(), &PmOneMatrix::ones(1));
        assert_eq!(sylvester(1).unwrap().matrix(), &PmOneMatrix::h2());
        let h4 = sylvester(2).unwrap();
        assert_eq!(h4.order(), 4);
        assert!(h4.is_normalized());
        assert!(sylvester(40).is_err());
    }

    #[test]
    fn paley_orders() {
        let h = paley2(5).unwrap();
        assert_eq!(h.order(), 12);
        assert_eq!(paley2(13).unwrap().order(), 28);
        assert_eq!(paley2(3), Err(HadamardError::WrongResidue(3)));
        assert_eq!(paley2(9), Err(HadamardError::NotPrime(9)));
    }

    #[test]
    fn normalize_examples() {
        let h4 = sylvester(2).unwrap();
        assert_eq!(normalize(&h4), h4);
        let p = normalize(&paley2(5).unwrap());
        assert!(p.is_normalized());
        assert!(HadamardMatrix::new(p.matrix().clone()).is_ok());
        // Sign change on index 2 (row and column together keeps symmetry).
        let flipped = signed_permute(h4.matrix(), &[0, 1, 2, 3], &[1, 1, -1, 1]).unwrap();
        let flipped = HadamardMatrix::new(flipped).unwrap();
        assert_ne!(flipped, h4);
        assert_eq!(normalize(&flipped), h4);
    }

    #[test]
    fn orth_family_examples() {
        let f = orth_family(2, false).unwrap();
        assert_eq!(f.dimension, 4);
        assert_eq!(f.vectors, vec![vec![1, -1, 1, -1], vec![1, 1, -1, -1]]);
        assert!(f.is_valid());
        let f = orth_family(1, true).unwrap();
        assert_eq!((f.dimension, f.vectors.clone()), (1, vec![vec![1]]));
        let f = orth_family(3, false).unwrap();
        assert_eq!(f.dimension, 4);
        assert_eq!(f.rows, vec![1, 2, 3]);
        assert!(f.is_valid());
    }

    #[test]
    fn orth_family_uses_paley_when_smaller() {
        // 9 rows orthogonal to all-ones need n ≥ 10: 12 (Paley, q=5) beats 16.
        let f = orth_family(9, false).unwrap();
        assert_eq!(f.source, CatalogId::PaleyII { q: 5 });
        assert!(f.is_valid());
    }

    #[test]
    fn orth_family_fixed_dimension() {
        assert_eq!(orth_family_at(2, true, Some(4), 64).unwrap().dimension, 4);
        assert!(orth_family_at(4, false, Some(4), 64).is_err());
        assert!(orth_family_at(2, true, Some(6), 64).is_err());
    }
}

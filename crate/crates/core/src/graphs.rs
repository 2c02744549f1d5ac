//! Matrix-to-graph transforms and the named extremal graph builders.
//!
//! Most builders go through [`half_shift`]: `½(±B ⊗ J_t + J)` turns a ±1
//! matrix into a 0/1 matrix whose spectrum is read off from `B`. When the
//! diagonal of `±B` is already −1 the result is an adjacency matrix as is and
//! the spectrum is exact; otherwise the diagonal is zeroed and every
//! eigenvalue moves by at most 1.

use crate::constructions::{self, CertifiedSk, Constructibility, ConstructionError};
use crate::hadamard::HadamardMatrix;
use crate::linalg::{kron, rowsums, Graph, IntSymMatrix, LinalgError, PmOneMatrix};
use crate::spectra::{spectrum, SpectraError, Spectrum};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error("blowup factor must be positive")]
    ZeroBlowup,
    #[error("zero_diag=auto needs the diagonal of sign·B to be constant −1 (entry {index} is {value})")]
    DiagonalNotMinusOne { index: usize, value: i64 },
    #[error("matrix is not regular (rowsums {first} and {other})")]
    NotRegular { first: i64, other: i64 },
    #[error("rowsums must be nonzero")]
    ZeroRowsum,
    #[error("rowsums must be positive, got {0}")]
    NonPositiveRowsum(i64),
    #[error("S_{k} has no available construction: {detail}")]
    NotConstructible { k: u64, detail: String },
    #[error("s must be even, got {0}")]
    OddS(usize),
}

pub type Result<T> = std::result::Result<T, GraphError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "+1" | "1" | "+" => Ok(Sign::Plus),
            "-1" | "−1" | "-" => Ok(Sign::Minus),
            _ => Err(format!("sign must be +1 or -1, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroDiag {
    Auto,
    Force,
}

impl std::str::FromStr for ZeroDiag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(ZeroDiag::Auto),
            "force" => Ok(ZeroDiag::Force),
            _ => Err(format!("zero-diag must be auto or force, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlowupSpec {
    pub t: usize,
    pub closed: bool,
}

/// `½(sign·B ⊗ J_t + J)` before any diagonal handling; entries are 0 or 1.
pub fn half_shift_matrix(b: &PmOneMatrix, t: usize, sign: Sign) -> Result<IntSymMatrix> {
    if t == 0 {
        return Err(GraphError::ZeroBlowup);
    }
    let s = sign.value();
    let big = kron(b.as_sym(), &IntSymMatrix::ones(t))?;
    Ok(big.map(|x| (s * x + 1) / 2))
}

pub fn half_shift(b: &PmOneMatrix, t: usize, sign: Sign, zero_diag: ZeroDiag) -> Result<Graph> {
    if zero_diag == ZeroDiag::Auto {
        if let Some(index) = (0..b.order()).find(|&i| sign.value() * b.get(i, i) != -1) {
            return Err(GraphError::DiagonalNotMinusOne {
                index,
                value: sign.value() * b.get(index, index),
            });
        }
    }
    let m = half_shift_matrix(b, t, sign)?;
    Ok(Graph::new(m.zero_diagonal())?)
}

/// `[[A, −A], [−A, A]]`.
pub fn doubling(a: &PmOneMatrix) -> PmOneMatrix {
    PmOneMatrix::k2().kron(a)
}

/// Open blowup `A ⊗ J_t` or closed blowup `(A + I) ⊗ J_t − I`.
pub fn blowup(g: &Graph, spec: BlowupSpec) -> Result<Graph> {
    if spec.t == 0 {
        return Err(GraphError::ZeroBlowup);
    }
    let base = if spec.closed {
        g.as_sym().add(&IntSymMatrix::identity(g.order()))?
    } else {
        g.as_sym().clone()
    };
    let m = kron(&base, &IntSymMatrix::ones(spec.t))?;
    Ok(Graph::new(m.zero_diagonal())?)
}

pub fn complement(g: &Graph) -> Graph {
    let m = g.as_sym().map(|x| 1 - x).zero_diagonal();
    Graph::new(m).expect("complement of a simple graph")
}

/// Common rowsum, or an error naming two different ones.
pub fn regular_rowsum(m: &IntSymMatrix) -> Result<i64> {
    let r = rowsums(m)?;
    match r.iter().find(|&&x| x != r[0]) {
        Some(&other) => Err(GraphError::NotRegular { first: r[0], other }),
        None => Ok(r[0]),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// `λ_k`
    Eigenvalue(usize),
    /// `λ_{n−k+1}`
    EigenvalueFromBottom(usize),
    /// `λ*_k`
    SingularValue(usize),
    /// Sum of the `k` largest singular values.
    KyFan(usize),
}

impl Quantity {
    fn eval(self, s: &Spectrum) -> Result<f64> {
        Ok(match self {
            Quantity::Eigenvalue(k) => s.lambda(k)?,
            Quantity::EigenvalueFromBottom(k) => s.lambda_from_bottom(k)?,
            Quantity::SingularValue(k) => s.singular_value(k)?,
            Quantity::KyFan(k) => s.ky_fan(k)?,
        })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Eigenvalue(k) => write!(f, "λ_{k}"),
            Quantity::EigenvalueFromBottom(k) => write!(f, "λ_(n-{k}+1)"),
            Quantity::SingularValue(k) => write!(f, "λ*_{k}"),
            Quantity::KyFan(k) => write!(f, "ky_fan_{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    AtLeast,
    AtMost,
}

/// A claim about one graph, or about the sum over a graph and its complement
/// when `paired` is set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claim {
    pub quantity: Quantity,
    pub relation: Relation,
    pub value: f64,
    /// Negate each term before summing (for sums of `|λ|` of negative eigenvalues).
    pub negate: bool,
    pub paired: bool,
}

impl Claim {
    pub fn new(quantity: Quantity, relation: Relation, value: f64) -> Self {
        Self {
            quantity,
            relation,
            value,
            negate: false,
            paired: false,
        }
    }

    pub fn describe(&self) -> String {
        let q = if self.negate {
            format!("-{}", self.quantity)
        } else {
            self.quantity.to_string()
        };
        let lhs = if self.paired {
            format!("{q}(G) + {q}(Ḡ)")
        } else {
            q
        };
        let rel = match self.relation {
            Relation::Equal => "==",
            Relation::AtLeast => ">=",
            Relation::AtMost => "<=",
        };
        format!("{lhs} {rel} {}", self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub expected: f64,
    pub observed: f64,
    pub passed: bool,
}

/// What a builder promises about its output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphCertificate {
    pub family: String,
    pub order: usize,
    /// Exact spectrum as `(value, multiplicity)`, when the construction needs
    /// no diagonal zeroing.
    pub expected_spectrum: Option<Vec<(f64, usize)>>,
    pub claims: Vec<Claim>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub spectrum_matches: Option<bool>,
    pub checks: Vec<ClaimCheck>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.spectrum_matches != Some(false) && self.checks.iter().all(|c| c.passed)
    }
}

impl GraphCertificate {
    /// Checks every claim against the float spectrum with absolute tolerance `tol`.
    pub fn verify(&self, g: &Graph, complement: Option<&Graph>, tol: f64) -> Result<Verification> {
        let s = spectrum(g.as_sym())?;
        let sc = complement.map(|c| spectrum(c.as_sym())).transpose()?;
        let spectrum_matches = self
            .expected_spectrum
            .as_ref()
            .map(|e| spectrum_matches(&s, e, tol));
        let mut checks = Vec::new();
        for c in &self.claims {
            let sign = if c.negate { -1.0 } else { 1.0 };
            let mut observed = sign * c.quantity.eval(&s)?;
            if c.paired {
                if let Some(sc) = &sc {
                    observed += sign * c.quantity.eval(sc)?;
                }
            }
            let passed = match c.relation {
                Relation::Equal => (observed - c.value).abs() <= tol,
                Relation::AtLeast => observed >= c.value - tol,
                Relation::AtMost => observed <= c.value + tol,
            };
            checks.push(ClaimCheck {
                claim: c.describe(),
                expected: c.value,
                observed,
                passed,
            });
        }
        Ok(Verification {
            spectrum_matches,
            checks,
        })
    }
}

fn spectrum_matches(s: &Spectrum, expected: &[(f64, usize)], tol: f64) -> bool {
    let mut flat: Vec<f64> = expected
        .iter()
        .flat_map(|&(v, m)| std::iter::repeat_n(v, m))
        .collect();
    flat.sort_by(|a, b| b.total_cmp(a));
    flat.len() == s.order() && flat.iter().zip(s.values()).all(|(a, b)| (a - b).abs() <= tol)
}

/// Exact spectrum of `½(sign·B ⊗ J_t + J)` for a regular `B ∈ S_k` with
/// rowsum `rho`: `j` picks up `½(sign·rho·t + nt)`, every other eigenvalue
/// `μ` of `B` becomes `½·sign·μ·t`, and the blowup adds `(t−1)n` zeros.
pub fn half_shift_spectrum(b: &CertifiedSk, t: usize, sign: Sign) -> Result<Vec<(f64, usize)>> {
    let n = b.matrix().order();
    let rho = regular_rowsum(b.matrix().as_sym())?;
    let sigma = n as f64 / (b.k() as f64).sqrt();
    let inertia = b.certificate().inertia;
    let mut parts = vec![
        (sigma, inertia.plus),
        (-sigma, inertia.minus),
        (0.0, n - inertia.plus - inertia.minus),
    ];
    let slot = parts
        .iter()
        .position(|&(v, m)| m > 0 && (v - rho as f64).abs() < 1e-9 * sigma.max(1.0))
        .ok_or(ConstructionError::CertificationFailure {
            k: b.k(),
            detail: format!("rowsum {rho} is not an eigenvalue"),
        })?;
    parts[slot].1 -= 1;
    let (sg, tf, nf) = (sign.value() as f64, t as f64, n as f64);
    let mut out = vec![(0.5 * (sg * rho as f64 * tf + nf * tf), 1)];
    out.extend(parts.into_iter().map(|(v, m)| (0.5 * sg * v * tf, m)));
    out.push((0.0, (t - 1) * n));
    Ok(merge(out))
}

fn merge(mut parts: Vec<(f64, usize)>) -> Vec<(f64, usize)> {
    parts.retain(|&(_, m)| m > 0);
    parts.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut out: Vec<(f64, usize)> = Vec::new();
    for (v, m) in parts {
        match out.last_mut() {
            Some(last) if (last.0 - v).abs() < 1e-9 * v.abs().max(1.0) => last.1 += m,
            _ => out.push((v + 0.0, m)),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct BuiltGraph {
    pub graph: Graph,
    pub certificate: GraphCertificate,
}

impl BuiltGraph {
    pub fn verify(&self, tol: f64) -> Result<Verification> {
        self.certificate.verify(&self.graph, None, tol)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BuiltPair {
    pub graph: Graph,
    pub complement: Graph,
    pub certificate: GraphCertificate,
}

impl BuiltPair {
    pub fn verify(&self, tol: f64) -> Result<Verification> {
        self.certificate.verify(&self.graph, Some(&self.complement), tol)
    }
}

/// `½(A′ ⊗ J_t + J)` with zeroed diagonal, `A′` the doubling of `a ∈ S_k`:
/// order `2nt` and `λ*_{k+1} ≥ nt/√k − 1`.
pub fn build_thmx(a: &CertifiedSk, t: usize) -> Result<BuiltGraph> {
    let n = a.matrix().order();
    let k = a.k() as usize;
    let graph = half_shift(&doubling(a.matrix()), t, Sign::Plus, ZeroDiag::Force)?;
    let bound = (n * t) as f64 / (k as f64).sqrt() - 1.0;
    Ok(BuiltGraph {
        certificate: GraphCertificate {
            family: "thmx".into(),
            order: graph.order(),
            expected_spectrum: None,
            claims: vec![Claim::new(Quantity::SingularValue(k + 1), Relation::AtLeast, bound)],
        },
        graph,
    })
}

/// Half-shift of the zero-rowsum block construction: order `snt` with
/// `λ*_{s²+1} = nt/2` exactly.
pub fn build_thp(s: usize, t: usize) -> Result<BuiltGraph> {
    let c = constructions::build_thkhn(s, None)?;
    let k = (s * s) as u64;
    let b = CertifiedSk::certify(c.matrix, k)?;
    let n = c.recipe.n;
    let graph = half_shift(b.matrix(), t, Sign::Plus, ZeroDiag::Auto)?;
    Ok(BuiltGraph {
        certificate: GraphCertificate {
            family: "thp".into(),
            order: graph.order(),
            expected_spectrum: Some(half_shift_spectrum(&b, t, Sign::Plus)?),
            claims: vec![Claim::new(
                Quantity::SingularValue(s * s + 1),
                Relation::Equal,
                (n * t) as f64 / 2.0,
            )],
        },
        graph,
    })
}

/// `G = ½(B⊗J_t + J)` and `Ḡ = ½(J − B⊗J_t)`, both with zeroed diagonal, for
/// the balanced zero-rowsum `B ∈ S_{2k}` obtained by doubling a member of `S_k`.
pub fn build_thng_pair(k: u64, t: usize) -> Result<BuiltPair> {
    let recipe = match constructions::sk_constructible(k) {
        Constructibility::Constructible { recipe } => recipe,
        Constructibility::Obstructed { reason } => {
            return Err(GraphError::NotConstructible { k, detail: reason })
        }
        Constructibility::Unknown => {
            return Err(GraphError::NotConstructible {
                k,
                detail: "no recipe from the available constructions".into(),
            })
        }
    };
    build_thng_pair_from(&recipe.build()?, t)
}

/// [`build_thng_pair`] from a given member of `S_k`; the pair has order
/// `4nt` for `a` of order `n`.
pub fn build_thng_pair_from(a: &CertifiedSk, t: usize) -> Result<BuiltPair> {
    let k = a.k();
    let b = constructions::sk_double(a)?;
    let graph = half_shift(b.matrix(), t, Sign::Plus, ZeroDiag::Force)?;
    let complement = half_shift(b.matrix(), t, Sign::Minus, ZeroDiag::Force)?;
    debug_assert_eq!(complement, self::complement(&graph));
    let ku = k as usize;
    let x = (b.matrix().order() * t) as f64 / ((2 * k) as f64).sqrt();
    let upper = Claim {
        paired: true,
        ..Claim::new(Quantity::Eigenvalue(ku + 1), Relation::AtLeast, x - 2.0)
    };
    let lower = Claim {
        paired: true,
        negate: true,
        ..Claim::new(Quantity::EigenvalueFromBottom(ku), Relation::AtLeast, x)
    };
    Ok(BuiltPair {
        certificate: GraphCertificate {
            family: "thng".into(),
            order: graph.order(),
            expected_spectrum: None,
            claims: vec![upper, lower],
        },
        graph,
        complement,
    })
}

/// `½(J − B⊗J_t)` for the constant-diagonal construction (even `s`): order
/// `snt`, Ky Fan `s²`-norm exactly `½(1+s)snt`.
pub fn build_thck(s: usize, n: Option<usize>, t: usize) -> Result<BuiltGraph> {
    if s % 2 == 1 {
        return Err(GraphError::OddS(s));
    }
    let c = constructions::build_thj(s, n)?;
    let n = c.recipe.n;
    let b = CertifiedSk::certify(c.matrix, (s * s) as u64)?;
    let graph = half_shift(b.matrix(), t, Sign::Minus, ZeroDiag::Auto)?;
    let value = 0.5 * ((1 + s) * s * n * t) as f64;
    Ok(BuiltGraph {
        certificate: GraphCertificate {
            family: "thck".into(),
            order: graph.order(),
            expected_spectrum: Some(half_shift_spectrum(&b, t, Sign::Minus)?),
            claims: vec![Claim::new(Quantity::KyFan(s * s), Relation::Equal, value)],
        },
        graph,
    })
}

/// `½(J − B⊗J_t)` with zeroed diagonal for a regular `B ∈ S_k` with nonzero
/// rowsums, negating `B` first when its rowsum is positive. Ky Fan `k`-norm
/// at least `½(1+√k)·n·t − k`.
pub fn build_thck1(b: &CertifiedSk, t: usize) -> Result<BuiltGraph> {
    let rho = regular_rowsum(b.matrix().as_sym())?;
    if rho == 0 {
        return Err(GraphError::ZeroRowsum);
    }
    let m = if rho > 0 {
        b.matrix().negated()
    } else {
        b.matrix().clone()
    };
    let graph = half_shift(&m, t, Sign::Minus, ZeroDiag::Force)?;
    let k = b.k() as usize;
    let bound = 0.5 * (1.0 + (k as f64).sqrt()) * (m.order() * t) as f64 - k as f64;
    Ok(BuiltGraph {
        certificate: GraphCertificate {
            family: "thck1".into(),
            order: graph.order(),
            expected_spectrum: None,
            claims: vec![Claim::new(Quantity::KyFan(k), Relation::AtLeast, bound)],
        },
        graph,
    })
}

/// The built-in regular symmetric Hadamard matrix `J_4 − 2I_4`.
pub fn regular_hadamard_4() -> HadamardMatrix {
    let m = IntSymMatrix::from_fn(4, |i, j| if i == j { -1 } else { 1 }).expect("symmetric");
    HadamardMatrix::new(PmOneMatrix::new(m).expect("±1")).expect("(J−2I)² = 4I")
}

/// `½(H⊗J_n + J)` for a regular symmetric Hadamard `H` of order `k` with
/// diagonal −1 and positive rowsums: order `kn`, Ky Fan `k`-norm exactly
/// `½(1+√k)·kn`.
pub fn build_kyfan_hadamard(h: &HadamardMatrix, n: usize) -> Result<BuiltGraph> {
    let rho = regular_rowsum(h.matrix().as_sym())?;
    if rho <= 0 {
        return Err(GraphError::NonPositiveRowsum(rho));
    }
    let k = h.order();
    let b = CertifiedSk::certify(h.matrix().clone(), k as u64)?;
    let graph = half_shift(b.matrix(), n, Sign::Plus, ZeroDiag::Auto)?;
    let value = 0.5 * (1.0 + (k as f64).sqrt()) * (k * n) as f64;
    Ok(BuiltGraph {
        certificate: GraphCertificate {
            family: "kyfan-hadamard".into(),
            order: graph.order(),
            expected_spectrum: Some(half_shift_spectrum(&b, n, Sign::Plus)?),
            claims: vec![Claim::new(Quantity::KyFan(k), Relation::Equal, value)],
        },
        graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_thj, build_thj1, build_thkhn};

    fn eig(g: &Graph) -> Vec<f64> {
        spectrum(g.as_sym()).unwrap().values().to_vec()
    }

    fn close(a: &[f64], b: &[f64]) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < 1e-8, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn half_shift_examples() {
        let b = build_thkhn(2, Some(4)).unwrap().matrix;
        let g = half_shift(&b, 1, Sign::Plus, ZeroDiag::Auto).unwrap();
        close(&eig(&g), &[4.0, 2.0, 0.0, 0.0, 0.0, -2.0, -2.0, -2.0]);

        let b = build_thj(2, Some(4)).unwrap().matrix;
        let g = half_shift(&b, 1, Sign::Minus, ZeroDiag::Auto).unwrap();
        close(&eig(&g), &[6.0, 0.0, 0.0, 0.0, 0.0, -2.0, -2.0, -2.0]);

        assert!(matches!(
            half_shift(&PmOneMatrix::ones(3), 1, Sign::Plus, ZeroDiag::Auto),
            Err(GraphError::DiagonalNotMinusOne { .. })
        ));
    }

    #[test]
    fn doubling_examples() {
        assert_eq!(doubling(&PmOneMatrix::ones(1)), PmOneMatrix::k2());
        let d = doubling(&PmOneMatrix::h2());
        assert_eq!(d.order(), 4);
        assert!(rowsums(d.as_sym()).unwrap().iter().all(|&r| r == 0));
        let r = 2.0 * 2f64.sqrt();
        close(&spectrum(d.as_sym()).unwrap().singular_values(), &[r, r, 0.0, 0.0]);
    }

    #[test]
    fn blowup_examples() {
        let k2 = Graph::complete(2);
        let open = blowup(&k2, BlowupSpec { t: 2, closed: false }).unwrap();
        close(&eig(&open), &[2.0, 0.0, 0.0, -2.0]);
        let closed = blowup(&k2, BlowupSpec { t: 2, closed: true }).unwrap();
        assert_eq!(closed, Graph::complete(4));
        let c5 = Graph::cycle(5).unwrap();
        for closed in [false, true] {
            assert_eq!(blowup(&c5, BlowupSpec { t: 1, closed }).unwrap(), c5);
        }
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(&Graph::complete(5)), Graph::empty(5));
        let c = Graph::cycle(6).unwrap();
        assert_eq!(complement(&complement(&c)), c);
    }

    #[test]
    fn thp_examples() {
        for (s, t, idx, val, order) in [(2, 1, 5, 2.0, 8), (2, 3, 5, 6.0, 24), (3, 1, 10, 2.0, 12)] {
            let g = build_thp(s, t).unwrap();
            assert_eq!(g.graph.order(), order);
            let v = g.verify(1e-8).unwrap();
            assert!(v.passed(), "{v:?}");
            let sv = spectrum(g.graph.as_sym()).unwrap().singular_value(idx).unwrap();
            assert!((sv - val).abs() < 1e-8);
        }
    }

    #[test]
    fn thng_examples() {
        for (k, order, bound) in [(2, 8, 2.0), (1, 4, 4.0 / 2f64.sqrt() - 2.0)] {
            let p = build_thng_pair(k, 1).unwrap();
            assert_eq!(p.graph.order(), order);
            assert_eq!(p.complement, complement(&p.graph));
            assert!((p.certificate.claims[0].value - bound).abs() < 1e-12);
            assert!(p.verify(1e-8).unwrap().passed());
        }
        assert!(build_thng_pair(3, 1).is_err());
    }

    #[test]
    fn thck_examples() {
        for (s, t, order, val) in [(2, 1, 8, 12.0), (2, 2, 16, 24.0), (4, 1, 16, 40.0)] {
            let g = build_thck(s, Some(4), t).unwrap();
            assert_eq!(g.graph.order(), order);
            assert!((g.certificate.claims[0].value - val).abs() < 1e-12);
            assert!(g.verify(1e-8).unwrap().passed());
        }
        assert_eq!(build_thck(3, None, 1), Err(GraphError::OddS(3)));
    }

    #[test]
    fn thck1_examples() {
        let b = CertifiedSk::certify(build_thj1(3, Some(4)).unwrap().matrix, 9).unwrap();
        let g = build_thck1(&b, 1).unwrap();
        assert_eq!(g.graph.order(), 12);
        assert_eq!(g.certificate.claims[0].value, 15.0);
        assert!(g.verify(1e-8).unwrap().passed());

        let b = CertifiedSk::certify(build_thj1(2, Some(4)).unwrap().matrix, 4).unwrap();
        let g = build_thck1(&b, 1).unwrap();
        assert_eq!(g.certificate.claims[0].value, 8.0);
        assert!(g.verify(1e-8).unwrap().passed());

        let b = CertifiedSk::certify(build_thkhn(2, Some(4)).unwrap().matrix, 4).unwrap();
        assert_eq!(build_thck1(&b, 1), Err(GraphError::ZeroRowsum));
    }

    #[test]
    fn kyfan_hadamard_examples() {
        let h = regular_hadamard_4();
        for n in [1, 3] {
            let g = build_kyfan_hadamard(&h, n).unwrap();
            assert_eq!(g.graph.order(), 4 * n);
            assert!((g.certificate.claims[0].value - 6.0 * n as f64).abs() < 1e-12);
            assert!(g.verify(1e-8).unwrap().passed());
        }
        let sylv = crate::hadamard::sylvester(1).unwrap();
        assert!(build_kyfan_hadamard(&sylv, 1).is_err());
    }

    #[test]
    fn thmx_bound() {
        let a = CertifiedSk::certify(PmOneMatrix::h2(), 2).unwrap();
        for t in 1..=3 {
            let g = build_thmx(&a, t).unwrap();
            assert_eq!(g.graph.order(), 4 * t);
            assert!(g.verify(1e-8).unwrap().passed());
        }
    }
}

//! Block constructions of ±1 matrices with few distinct singular values, and
//! exact membership certificates for the classes `S_k`.
//!
//! A symmetric ±1 matrix `B` of order `n` is in `S_k` when its singular values
//! are `n/√k` (k times) and 0 otherwise. Every eigenvalue then satisfies
//! `k·λ³ = n²·λ`, and since `tr B² = n²` the identity `k·B³ = n²·B` pins the
//! nonzero count to exactly `k`. That identity is checked in integers.

use crate::arith::{binomial, exact_sqrt, is_prime};
use crate::hadamard::{self, CatalogId, HadamardError, DEFAULT_CATALOG_CAP};
use crate::latin::{self, LatinError, LatinKind, LatinSquare};
use crate::linalg::{
    minpoly_zero_pm_check, rowsums, trace, IntSymMatrix, LinalgError, PmOneMatrix,
};
use crate::spectra::{eigen_sym, default_tolerance, Inertia, SpectraError};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Hadamard(#[from] HadamardError),
    #[error(transparent)]
    Latin(#[from] LatinError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error("s must be at least 2, got {0}")]
    SizeTooSmall(usize),
    #[error("the constant-diagonal layout needs even s, got {0}")]
    OddOrderUnsupported(usize),
    #[error("k must be positive")]
    ZeroK,
    #[error("certification into S_{k} failed: {detail}")]
    CertificationFailure { k: u64, detail: String },
}

pub type Result<T> = std::result::Result<T, ConstructionError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertifyMode {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Member,
    NonMember,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkCertificate {
    pub k: u64,
    pub order: usize,
    pub verdict: Verdict,
    pub inertia: Inertia,
    pub checks: Vec<Check>,
}

impl SkCertificate {
    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }
}

fn float_inertia(b: &PmOneMatrix) -> Result<Inertia> {
    let n = b.order();
    let spec = eigen_sym(b.as_sym(), default_tolerance(n))?;
    Ok(spec.inertia(1e-6 * n as f64))
}

/// Decides whether `b ∈ S_k`.
///
/// Exact mode checks `k·B³ == n²·B` and derives the inertia from the trace:
/// with `n₊ + n₋ = k` and `(n₊ − n₋)·n/√k = tr B`, a square `k` needs
/// `√k·tr B / n` to be an integer of the parity of `k`, and a non-square `k`
/// forces `tr B = 0`. Non-members get a floating-point inertia for reference.
pub fn sk_certify(b: &PmOneMatrix, k: u64, mode: CertifyMode) -> Result<SkCertificate> {
    if k == 0 {
        return Err(ConstructionError::ZeroK);
    }
    match mode {
        CertifyMode::Exact => certify_exact(b, k),
        CertifyMode::Float => certify_float(b, k),
    }
}

fn certify_exact(b: &PmOneMatrix, k: u64) -> Result<SkCertificate> {
    let n = b.order();
    let n2 = (n as i64).checked_mul(n as i64).ok_or(LinalgError::Overflow("n²"))?;
    let mut checks = Vec::new();
    let sq = b.as_sym().sum_of_squares()?;
    checks.push(Check::new("trace_square", sq == n2, format!("tr B² = {sq}, n² = {n2}")));

    let minpoly = if k as usize > n {
        checks.push(Check::new(
            "minpoly",
            false,
            format!("k = {k} exceeds the order {n}; rank cannot reach k"),
        ));
        false
    } else {
        let ok = minpoly_zero_pm_check(b.as_sym(), n2, k as i64)?;
        checks.push(Check::new(
            "minpoly",
            ok,
            format!("{k}·B³ {} {n2}·B", if ok { "==" } else { "!=" }),
        ));
        ok
    };
    if !minpoly {
        checks.push(Check::new(
            "inertia_integrality",
            false,
            "not evaluated; inertia taken from the floating eigensolver",
        ));
        return Ok(SkCertificate {
            k,
            order: n,
            verdict: Verdict::NonMember,
            inertia: float_inertia(b)?,
            checks,
        });
    }

    let tr = trace(b.as_sym())?;
    let (k_i, n_i) = (k as i64, n as i64);
    let diff = match exact_sqrt(k) {
        Some(r) => {
            let num = tr * r as i64;
            (num % n_i == 0).then(|| num / n_i).filter(|d| d.abs() <= k_i && (k_i + d) % 2 == 0)
        }
        None => (tr == 0 && k.is_multiple_of(2)).then_some(0),
    };
    let detail = match (exact_sqrt(k), diff) {
        (Some(r), Some(d)) => format!("n₊ − n₋ = √k·tr B / n = {r}·{tr}/{n} = {d}"),
        (Some(r), None) => format!("√k·tr B / n = {r}·{tr}/{n} is not an admissible integer"),
        (None, Some(_)) => "k is not a square, so n₊ = n₋ and tr B = 0".to_string(),
        (None, None) => format!("k is not a square but tr B = {tr} (or k is odd)"),
    };
    checks.push(Check::new("inertia_integrality", diff.is_some(), detail));
    let (verdict, inertia) = match diff {
        Some(d) => (
            Verdict::Member,
            Inertia {
                plus: ((k_i + d) / 2) as usize,
                zero: n - k as usize,
                minus: ((k_i - d) / 2) as usize,
            },
        ),
        // The cubic identity and the trace cannot disagree for a genuine
        // matrix; treat it as unresolved rather than guess.
        None => (Verdict::Indeterminate, float_inertia(b)?),
    };
    Ok(SkCertificate {
        k,
        order: n,
        verdict,
        inertia,
        checks,
    })
}

fn certify_float(b: &PmOneMatrix, k: u64) -> Result<SkCertificate> {
    let n = b.order();
    let tol = 1e-6 * n as f64;
    let spec = match eigen_sym(b.as_sym(), default_tolerance(n)) {
        Ok(s) => s,
        Err(e @ SpectraError::NonConvergence { .. }) => {
            return Ok(SkCertificate {
                k,
                order: n,
                verdict: Verdict::Indeterminate,
                inertia: Inertia {
                    plus: 0,
                    zero: n,
                    minus: 0,
                },
                checks: vec![Check::new("singular_spectrum", false, e.to_string())],
            })
        }
        Err(e) => return Err(e.into()),
    };
    let target = n as f64 / (k as f64).sqrt();
    let sv = spec.singular_values();
    let worst = sv
        .iter()
        .enumerate()
        .map(|(i, &x)| if (i as u64) < k { (x - target).abs() } else { x })
        .fold(0.0f64, f64::max);
    let ok = k as usize <= n && worst <= tol;
    let checks = vec![Check::new(
        "singular_spectrum",
        ok,
        format!("max deviation from {{n/√k ×k, 0 ×(n−k)}} is {worst:.3e} (tolerance {tol:.1e})"),
    )];
    Ok(SkCertificate {
        k,
        order: n,
        verdict: if ok { Verdict::Member } else { Verdict::NonMember },
        inertia: spec.inertia(tol),
        checks,
    })
}

/// A ±1 matrix together with a member certificate for `S_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedSk {
    matrix: PmOneMatrix,
    certificate: SkCertificate,
}

impl CertifiedSk {
    /// Certifies exactly; anything but a member verdict is an error.
    pub fn certify(matrix: PmOneMatrix, k: u64) -> Result<Self> {
        let certificate = sk_certify(&matrix, k, CertifyMode::Exact)?;
        if !certificate.is_member() {
            let detail = certificate
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| format!("{}: {}", c.name, c.detail))
                .collect::<Vec<_>>()
                .join("; ");
            return Err(ConstructionError::CertificationFailure { k, detail });
        }
        Ok(Self {
            matrix,
            certificate,
        })
    }

    pub fn k(&self) -> u64 {
        self.certificate.k
    }

    pub fn matrix(&self) -> &PmOneMatrix {
        &self.matrix
    }

    pub fn certificate(&self) -> &SkCertificate {
        &self.certificate
    }

    pub fn into_matrix(self) -> PmOneMatrix {
        self.matrix
    }
}

/// `A ⊗ B ∈ S_{kl}`, re-certified.
pub fn sk_kron(a: &CertifiedSk, b: &CertifiedSk) -> Result<CertifiedSk> {
    CertifiedSk::certify(a.matrix.kron(&b.matrix), a.k() * b.k())
}

/// `K ⊗ (H_2 ⊗ A) ∈ S_{2k}`: zero rowsums and as many positive as negative
/// eigenvalues.
pub fn sk_double(a: &CertifiedSk) -> Result<CertifiedSk> {
    let m = PmOneMatrix::k2().kron(&PmOneMatrix::h2().kron(&a.matrix));
    let out = CertifiedSk::certify(m, 2 * a.k())?;
    let inertia = out.certificate.inertia;
    if inertia.plus != inertia.minus || rowsums(out.matrix.as_sym())?.iter().any(|&r| r != 0) {
        return Err(ConstructionError::CertificationFailure {
            k: out.k(),
            detail: "doubled matrix is not balanced with zero rowsums".into(),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Thkhn,
    Thj,
    Thj1,
}

impl Family {
    pub fn latin_kind(self) -> LatinKind {
        match self {
            Family::Thj => LatinKind::ConstDiag,
            Family::Thkhn | Family::Thj1 => LatinKind::BackCirculant,
        }
    }

    fn includes_allones(self) -> bool {
        self != Family::Thkhn
    }

    /// `n₊ − n₋` as the constructions' own trace computations state it.
    pub fn stated_difference(self, s: usize) -> i64 {
        let s = s as i64;
        match self {
            Family::Thkhn => -s,
            Family::Thj => s,
            Family::Thj1 => s - 2,
        }
    }

    /// Published `(n₊, n₋)` counts (binomials in `s − 1`).
    pub fn printed_counts(self, s: usize) -> (u64, u64) {
        let s = s as u64;
        let lo = binomial(s - 1, 2).expect("small binomial");
        let hi = binomial(s + 1, 2).expect("small binomial");
        match self {
            Family::Thkhn => (lo, hi),
            Family::Thj => (hi, lo),
            Family::Thj1 => (hi - 1, lo + 1),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Thkhn => "thkhn",
            Family::Thj => "thj",
            Family::Thj1 => "thj1",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "thkhn" => Ok(Family::Thkhn),
            "thj" => Ok(Family::Thj),
            "thj1" => Ok(Family::Thj1),
            other => Err(format!("unknown family `{other}`")),
        }
    }
}

/// Everything needed to rebuild a construction bit for bit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionRecipe {
    pub family: Family,
    pub s: usize,
    pub n: usize,
    pub hadamard_source: CatalogId,
    pub hadamard_rows: Vec<usize>,
    pub latin_source: LatinKind,
}

impl ConstructionRecipe {
    pub fn rebuild(&self) -> Result<PmOneMatrix> {
        Ok(build(self.family, self.s, Some(self.n))?.matrix)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub matrix: PmOneMatrix,
    pub recipe: ConstructionRecipe,
}

/// The `s` rank-one blocks `A_1, …, A_s` of a construction, in symbol order.
pub fn blocks(family: Family, s: usize, n: Option<usize>) -> Result<(Vec<IntSymMatrix>, ConstructionRecipe)> {
    if s < 2 {
        return Err(ConstructionError::SizeTooSmall(s));
    }
    if family == Family::Thj && s % 2 == 1 {
        return Err(ConstructionError::OddOrderUnsupported(s));
    }
    let fam = hadamard::orth_family_at(s, family.includes_allones(), n, DEFAULT_CATALOG_CAP)?;
    let outer = |x: &[i64], sign: i64| {
        IntSymMatrix::from_fn(x.len(), |i, j| sign * x[i] * x[j]).expect("outer product is symmetric")
    };
    let blocks = fam
        .vectors
        .iter()
        .enumerate()
        .map(|(i, x)| match family {
            Family::Thkhn => outer(x, -1),
            Family::Thj | Family::Thj1 => outer(x, if i == 0 { -1 } else { 1 }),
        })
        .collect();
    let recipe = ConstructionRecipe {
        family,
        s,
        n: fam.dimension,
        hadamard_source: fam.source,
        hadamard_rows: fam.rows,
        latin_source: family.latin_kind(),
    };
    Ok((blocks, recipe))
}

fn assemble(l: &LatinSquare, blocks: &[IntSymMatrix]) -> PmOneMatrix {
    let n = blocks[0].order();
    let m = IntSymMatrix::from_fn(l.size() * n, |i, j| {
        blocks[l.get(i / n, j / n) - 1].get(i % n, j % n)
    })
    .expect("symmetric layout of symmetric blocks");
    PmOneMatrix::new(m).expect("blocks are ±1")
}

pub fn build(family: Family, s: usize, n: Option<usize>) -> Result<Construction> {
    let (blocks, recipe) = blocks(family, s, n)?;
    let l = latin::build(recipe.latin_source, s)?;
    Ok(Construction {
        matrix: assemble(&l, &blocks),
        recipe,
    })
}

/// Back-circulant layout of blocks `−x_i x_iᵀ` with every `x_i ⊥ j`:
/// diagonal −1, zero rowsums, trace `−sn`.
pub fn build_thkhn(s: usize, n: Option<usize>) -> Result<Construction> {
    build(Family::Thkhn, s, n)
}

/// Constant-diagonal layout with `A_1 = −J` and `A_i = x_i x_iᵀ`: diagonal
/// +1, `B·j = −n·j`, trace `sn`. Even `s` only.
pub fn build_thj(s: usize, n: Option<usize>) -> Result<Construction> {
    build(Family::Thj, s, n)
}

/// Back-circulant layout of the same blocks as [`build_thj`]: every rowsum
/// is `−n`.
pub fn build_thj1(s: usize, n: Option<usize>) -> Result<Construction> {
    build(Family::Thj1, s, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlusMinus {
    pub plus: i64,
    pub minus: i64,
}

/// Positive/negative eigenvalue counts of a construction from every available
/// source, with the disagreements spelled out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InertiaReport {
    pub family: Family,
    pub s: usize,
    pub n: usize,
    pub trace: i64,
    /// From the exact trace: `n₊ − n₋ = tr B / n`, `n₊ + n₋ = s²`.
    pub trace_derived: PlusMinus,
    /// From the stated trace formula (`−s`, `s`, `s − 2`).
    pub stated: PlusMinus,
    /// The published binomial counts.
    pub printed: PlusMinus,
    pub eigensolver: Inertia,
    pub discrepancies: Vec<String>,
}

fn counts(total: i64, diff: i64) -> PlusMinus {
    PlusMinus {
        plus: (total + diff) / 2,
        minus: (total - diff) / 2,
    }
}

pub fn inertia_report(c: &Construction) -> Result<InertiaReport> {
    let ConstructionRecipe { family, s, n, .. } = c.recipe;
    let tr = trace(c.matrix.as_sym())?;
    let total = (s * s) as i64;
    let trace_derived = counts(total, tr / n as i64);
    let stated = counts(total, family.stated_difference(s));
    let (p, m) = family.printed_counts(s);
    let printed = PlusMinus {
        plus: p as i64,
        minus: m as i64,
    };
    let order = c.matrix.order();
    let eigensolver = eigen_sym(c.matrix.as_sym(), default_tolerance(order))?.inertia(1e-6 * order as f64);
    let mut discrepancies = Vec::new();
    let eig = PlusMinus {
        plus: eigensolver.plus as i64,
        minus: eigensolver.minus as i64,
    };
    if eig != trace_derived {
        discrepancies.push(format!(
            "eigensolver counts {eig:?} differ from trace-derived {trace_derived:?}"
        ));
    }
    if stated != trace_derived {
        discrepancies.push(format!(
            "stated trace formula gives n₊ − n₋ = {} but tr B / n = {}",
            family.stated_difference(s),
            tr / n as i64
        ));
    }
    if printed != trace_derived {
        discrepancies.push(format!(
            "printed counts (n₊, n₋) = ({}, {}) differ from trace-derived ({}, {})",
            printed.plus, printed.minus, trace_derived.plus, trace_derived.minus
        ));
    }
    Ok(InertiaReport {
        family,
        s,
        n,
        trace: tr,
        trace_derived,
        stated,
        printed,
        eigensolver,
        discrepancies,
    })
}

/// How to build a member of `S_k` from the available pieces:
/// `base(s) ⊗ Paley(q)? ⊗ H_2^{⊗ doublings}` with `k = s²·(2(q+1))?·2^doublings`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkRecipe {
    pub k: u64,
    /// `J_1` when 1, otherwise the zero-rowsum block construction of size `s`.
    pub s: u64,
    pub paley_prime: Option<u64>,
    pub doublings: u32,
}

impl SkRecipe {
    pub fn describe(&self) -> String {
        let mut parts = vec![if self.s == 1 {
            "J_1".to_string()
        } else {
            format!("thkhn(s={})", self.s)
        }];
        if let Some(q) = self.paley_prime {
            parts.push(format!("paley2({q})"));
        }
        for _ in 0..self.doublings {
            parts.push("H_2".into());
        }
        parts.join(" ⊗ ")
    }

    pub fn build(&self) -> Result<CertifiedSk> {
        let mut acc = if self.s == 1 {
            CertifiedSk::certify(PmOneMatrix::ones(1), 1)?
        } else {
            let b = build_thkhn(self.s as usize, None)?;
            CertifiedSk::certify(b.matrix, self.s * self.s)?
        };
        if let Some(q) = self.paley_prime {
            let h = hadamard::paley2(q)?;
            let p = CertifiedSk::certify(h.into_matrix(), 2 * (q + 1))?;
            acc = sk_kron(&acc, &p)?;
        }
        let h2 = CertifiedSk::certify(PmOneMatrix::h2(), 2)?;
        for _ in 0..self.doublings {
            acc = sk_kron(&acc, &h2)?;
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "decision")]
pub enum Constructibility {
    Constructible { recipe: SkRecipe },
    Obstructed { reason: String },
    Unknown,
}

/// Looks for a recipe; odd non-square `k` is ruled out because members with
/// non-square `k` have as many positive as negative eigenvalues.
pub fn sk_constructible(k: u64) -> Constructibility {
    if k == 0 {
        return Constructibility::Obstructed {
            reason: "k must be positive".into(),
        };
    }
    if k % 2 == 1 && exact_sqrt(k).is_none() {
        return Constructibility::Obstructed {
            reason: format!(
                "{k} is odd and not a square: non-square k forces n₊ = n₋, so k = n₊ + n₋ is even"
            ),
        };
    }
    let mut paley: Vec<Option<u64>> = vec![None];
    paley.extend(
        (5..=k / 2)
            .step_by(4)
            .filter(|&q| is_prime(q) && k.is_multiple_of(2 * (q + 1)))
            .map(Some),
    );
    for p in paley {
        let mut rest = k / p.map_or(1, |q| 2 * (q + 1));
        let mut doublings = 0;
        loop {
            if let Some(s) = exact_sqrt(rest) {
                return Constructibility::Constructible {
                    recipe: SkRecipe {
                        k,
                        s,
                        paley_prime: p,
                        doublings,
                    },
                };
            }
            if rest % 2 == 1 {
                break;
            }
            rest /= 2;
            doublings += 1;
        }
    }
    Constructibility::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(b: &PmOneMatrix, k: u64) -> SkCertificate {
        sk_certify(b, k, CertifyMode::Exact).unwrap()
    }

    #[test]
    fn certify_examples() {
        assert!(exact(&PmOneMatrix::ones(5), 1).is_member());
        assert!(exact(&PmOneMatrix::h2(), 2).is_member());
        let h = IntSymMatrix::ones(4)
            .sub(&IntSymMatrix::identity(4).scale(2).unwrap())
            .unwrap();
        let c = exact(&PmOneMatrix::new(h).unwrap(), 4);
        assert!(c.is_member());
        assert_eq!(
            c.inertia,
            Inertia {
                plus: 1,
                zero: 0,
                minus: 3
            }
        );
        // 2A(K_3) − J recast as ±1: diagonal −1, off-diagonal +1.
        let k3 = PmOneMatrix::from_rows(&[vec![-1, 1, 1], vec![1, -1, 1], vec![1, 1, -1]]).unwrap();
        for k in 1..=3 {
            assert_eq!(exact(&k3, k).verdict, Verdict::NonMember);
        }
        assert_eq!(exact(&PmOneMatrix::h2(), 3).verdict, Verdict::NonMember);
        assert_eq!(sk_certify(&PmOneMatrix::h2(), 0, CertifyMode::Exact), Err(ConstructionError::ZeroK));
    }

    #[test]
    fn float_mode_agrees() {
        assert!(sk_certify(&PmOneMatrix::h2(), 2, CertifyMode::Float).unwrap().is_member());
        assert!(!sk_certify(&PmOneMatrix::h2(), 1, CertifyMode::Float).unwrap().is_member());
    }

    #[test]
    fn thkhn_s2() {
        let c = build_thkhn(2, Some(4)).unwrap();
        assert_eq!(c.matrix.order(), 8);
        assert_eq!(trace(c.matrix.as_sym()).unwrap(), -8);
        let cert = exact(&c.matrix, 4);
        assert!(cert.is_member());
        assert_eq!(
            cert.inertia,
            Inertia {
                plus: 1,
                zero: 4,
                minus: 3
            }
        );
    }

    #[test]
    fn thj_requires_even() {
        assert_eq!(build_thj(3, None), Err(ConstructionError::OddOrderUnsupported(3)));
        assert_eq!(build_thkhn(1, None), Err(ConstructionError::SizeTooSmall(1)));
    }

    #[test]
    fn constructibility() {
        assert!(matches!(sk_constructible(3), Constructibility::Obstructed { .. }));
        assert!(matches!(
            sk_constructible(9),
            Constructibility::Constructible {
                recipe: SkRecipe { s: 3, paley_prime: None, doublings: 0, .. }
            }
        ));
        assert_eq!(sk_constructible(6), Constructibility::Unknown);
        assert_eq!(sk_constructible(10), Constructibility::Unknown);
        assert!(matches!(
            sk_constructible(12),
            Constructibility::Constructible {
                recipe: SkRecipe { paley_prime: Some(5), .. }
            }
        ));
    }

    #[test]
    fn recipes_build_members() {
        for k in [1, 2, 4, 8, 9, 12, 18, 24] {
            let Constructibility::Constructible { recipe } = sk_constructible(k) else {
                panic!("{k} should be constructible");
            };
            let m = recipe.build().unwrap();
            assert_eq!(m.k(), k, "{}", recipe.describe());
        }
    }
}

//! Exact spectra of strongly regular graphs, Taylor's family and the
//! ±1 matrix `2A(T̄(q)) − J` built from its complement.

use crate::arith::{exact_sqrt, is_odd_prime_power};
use crate::spectra::Spectrum;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

pub type Q = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SrgError {
    #[error("infeasible parameters ({v}, {k}, {a}, {c}): {reason}")]
    Infeasible {
        v: u64,
        k: u64,
        a: u64,
        c: u64,
        reason: String,
    },
    #[error("q must be an odd prime power at least 3, got {0}")]
    BadTaylorQ(u64),
    #[error("value out of range")]
    Overflow,
}

/// `x + y·√d` with rational `x`, `y` and squarefree `d ≥ 1`; `y = 0` when
/// `d = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QSurd {
    pub rational: Q,
    pub coeff: Q,
    pub radicand: i64,
}

fn squarefree_split(n: i64) -> (i64, i64) {
    let mut m = 1;
    let mut d = n;
    let mut p = 2;
    while p * p <= d {
        while d % (p * p) == 0 {
            d /= p * p;
            m *= p;
        }
        p += 1;
    }
    (m, d)
}

impl QSurd {
    pub fn rational(x: Q) -> Self {
        Self {
            rational: x,
            coeff: Q::zero(),
            radicand: 1,
        }
    }

    pub fn int(x: i64) -> Self {
        Self::rational(Q::from_integer(x))
    }

    /// `x + y·√n` for any `n ≥ 0`, normalizing the radicand.
    pub fn new(x: Q, y: Q, n: i64) -> Self {
        assert!(n >= 0, "negative radicand");
        let (m, d) = squarefree_split(n);
        if d == 1 || n == 0 || y.is_zero() {
            let root = if n == 0 { 0 } else { m };
            return Self::rational(x + y * Q::from_integer(root));
        }
        Self {
            rational: x,
            coeff: y * Q::from_integer(m),
            radicand: d,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let f = |q: Q| *q.numer() as f64 / *q.denom() as f64;
        f(self.rational) + f(self.coeff) * (self.radicand as f64).sqrt()
    }

    fn common(a: &Self, b: &Self) -> i64 {
        match (a.is_rational(), b.is_rational()) {
            (true, _) => b.radicand,
            (_, true) => a.radicand,
            _ => {
                assert_eq!(a.radicand, b.radicand, "mixed radicands");
                a.radicand
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let d = Self::common(self, o);
        Self::new(self.rational + o.rational, self.coeff + o.coeff, d)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = Self::common(self, o);
        let dq = Q::from_integer(d);
        Self::new(
            self.rational * o.rational + self.coeff * o.coeff * dq,
            self.rational * o.coeff + self.coeff * o.rational,
            d,
        )
    }

    pub fn scale(&self, c: Q) -> Self {
        Self::new(self.rational * c, self.coeff * c, self.radicand)
    }
}

impl fmt::Display for QSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.rational);
        }
        let c = self.coeff;
        let sqrt = format!("√{}", self.radicand);
        let term = if c.abs() == Q::from_integer(1) {
            sqrt
        } else {
            format!("{}{}", c.abs(), sqrt)
        };
        if self.rational.is_zero() {
            let sign = if c.is_negative() { "-" } else { "" };
            write!(f, "{sign}{term}")
        } else {
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, "{} {sign} {term}", self.rational)
        }
    }
}

impl Serialize for QSurd {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Distinct eigenvalues with multiplicities, largest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactSpectrum {
    pub parts: Vec<(QSurd, u64)>,
}

impl ExactSpectrum {
    pub fn new(parts: Vec<(QSurd, u64)>) -> Self {
        let mut merged: Vec<(QSurd, u64)> = Vec::new();
        for (v, m) in parts.into_iter().filter(|&(_, m)| m > 0) {
            match merged.iter_mut().find(|(w, _)| *w == v) {
                Some(slot) => slot.1 += m,
                None => merged.push((v, m)),
            }
        }
        merged.sort_by(|a, b| b.0.to_f64().total_cmp(&a.0.to_f64()));
        Self { parts: merged }
    }

    pub fn order(&self) -> u64 {
        self.parts.iter().map(|p| p.1).sum()
    }

    /// `λ_i`, 1-based from the top.
    pub fn lambda(&self, i: u64) -> Option<QSurd> {
        let mut seen = 0;
        for &(v, m) in &self.parts {
            seen += m;
            if i >= 1 && i <= seen {
                return Some(v);
            }
        }
        None
    }

    /// `Σ m·λ^p`.
    pub fn power_sum(&self, p: u32) -> QSurd {
        self.parts.iter().fold(QSurd::int(0), |acc, &(v, m)| {
            let mut x = QSurd::int(1);
            for _ in 0..p {
                x = x.mul(&v);
            }
            acc.add(&x.scale(Q::from_integer(m as i64)))
        })
    }

    pub fn to_spectrum(&self, tolerance: f64) -> Spectrum {
        let values = self
            .parts
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat_n(v.to_f64(), m as usize))
            .collect();
        Spectrum::from_values(values, tolerance)
    }

    pub fn map(&self, f: impl Fn(&QSurd) -> QSurd) -> Self {
        Self::new(self.parts.iter().map(|(v, m)| (f(v), *m)).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub a: u64,
    pub c: u64,
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.v, self.k, self.a, self.c)
    }
}

impl SrgParams {
    pub fn new(v: u64, k: u64, a: u64, c: u64) -> Result<Self, SrgError> {
        let p = Self { v, k, a, c };
        let bad = |reason: &str| {
            Err(SrgError::Infeasible {
                v,
                k,
                a,
                c,
                reason: reason.into(),
            })
        };
        if v > 1 << 20 {
            return Err(SrgError::Overflow);
        }
        if k == 0 || k >= v {
            return bad("need 1 ≤ k < v");
        }
        if a + 1 > k {
            return bad("need a < k");
        }
        if k * (k - a - 1) != (v - k - 1) * c {
            return bad("k(k − a − 1) ≠ (v − k − 1)c");
        }
        if k < v - 1 && c > k {
            return bad("need c ≤ k");
        }
        Ok(p)
    }

    /// Parameters of the complement.
    pub fn complement(&self) -> Result<Self, SrgError> {
        let Self { v, k, a, c } = *self;
        if k == v - 1 {
            return Err(SrgError::Infeasible {
                v,
                k,
                a,
                c,
                reason: "complement of a complete graph is edgeless".into(),
            });
        }
        Self::new(v, v - k - 1, v - 2 * k - 2 + c, v - 2 * k + a)
    }
}

/// `k`, then `r, s = ((a−c) ± √Δ)/2` with `Δ = (a−c)² + 4(k−c)` and
/// multiplicities from `tr A = 0`, `tr A² = vk`.
pub fn srg_spectrum(p: SrgParams) -> Result<ExactSpectrum, SrgError> {
    let SrgParams { v, k, a, c } = p;
    let (vi, ki) = (v as i64, k as i64);
    if k == v - 1 {
        return Ok(ExactSpectrum::new(vec![(QSurd::int(ki), 1), (QSurd::int(-1), v - 1)]));
    }
    let infeasible = |reason: String| SrgError::Infeasible { v, k, a, c, reason };
    let e = a as i64 - c as i64;
    let delta = e * e + 4 * (ki - c as i64);
    let numer = 2 * ki + (vi - 1) * e;
    let half = Q::new(1, 2);
    let (r, s, f) = match exact_sqrt(delta as u64) {
        Some(m) => {
            let m = m as i64;
            let twice_f = (vi - 1) * m - numer;
            if twice_f < 0 || twice_f % (2 * m) != 0 {
                return Err(infeasible(format!("multiplicity {twice_f}/{} is not a nonnegative integer", 2 * m)));
            }
            (
                QSurd::rational(Q::new(e + m, 2)),
                QSurd::rational(Q::new(e - m, 2)),
                twice_f / (2 * m),
            )
        }
        None => {
            if numer != 0 || (v - 1) % 2 != 0 {
                return Err(infeasible("irrational eigenvalues need 2k + (v−1)(a−c) = 0 and v odd".into()));
            }
            (
                QSurd::new(Q::from_integer(e) * half, half, delta),
                QSurd::new(Q::from_integer(e) * half, -half, delta),
                (vi - 1) / 2,
            )
        }
    };
    let g = vi - 1 - f;
    if g < 0 {
        return Err(infeasible("negative multiplicity".into()));
    }
    Ok(ExactSpectrum::new(vec![
        (QSurd::int(ki), 1),
        (r, f as u64),
        (s, g as u64),
    ]))
}

fn check_taylor_q(q: u64) -> Result<(), SrgError> {
    if q < 3 || !is_odd_prime_power(q) || q > 1 << 10 {
        return Err(SrgError::BadTaylorQ(q));
    }
    Ok(())
}

/// `(q³, ½(q−1)(q²+1), ¼(q−1)³ − 1, ¼(q−1)(q²+1))`.
pub fn taylor_params(q: u64) -> Result<SrgParams, SrgError> {
    check_taylor_q(q)?;
    let q2 = q * q + 1;
    SrgParams::new(q * q * q, (q - 1) * q2 / 2, (q - 1).pow(3) / 4 - 1, (q - 1) * q2 / 4)
}

/// Parameters of the complement of `T(q)`, from the general complement rule.
pub fn taylor_complement_params(q: u64) -> Result<SrgParams, SrgError> {
    taylor_params(q)?.complement()
}

/// The closed-form spectra of `T(q)` and its complement.
pub fn taylor_spectra(q: u64) -> Result<(ExactSpectrum, ExactSpectrum), SrgError> {
    check_taylor_q(q)?;
    let qi = q as i64;
    let h = |x: i64| QSurd::rational(Q::new(x, 2));
    let t = ExactSpectrum::new(vec![
        (h((qi - 1) * (qi * qi + 1)), 1),
        (h(qi - 1), (q - 1) * (q * q + 1)),
        (h(-(qi * qi + 1)), q * (q - 1)),
    ]);
    let tc = ExactSpectrum::new(vec![
        (h((qi + 1) * (qi * qi - 1)), 1),
        (h(qi * qi - 1), q * (q - 1)),
        (h(-(qi + 1)), (q - 1) * (q * q + 1)),
    ]);
    Ok((t, tc))
}

/// Spectrum of `T = 2A(T̄(q)) − J`: `{q²−1 ×q(q−1); q²−q−1 ×1; −(q+1) ×(q−1)(q²+1)}`.
pub fn seidel_shift_spectrum(q: u64) -> Result<ExactSpectrum, SrgError> {
    check_taylor_q(q)?;
    let qi = q as i64;
    Ok(ExactSpectrum::new(vec![
        (QSurd::int(qi * qi - 1), q * (q - 1)),
        (QSurd::int(qi * qi - qi - 1), 1),
        (QSurd::int(-(qi + 1)), (q - 1) * (q * q + 1)),
    ]))
}

/// `2·spec(Ā) − J` computed from a complement spectrum: the principal
/// eigenvalue `k̄` becomes `2k̄ − v`, every other one doubles.
pub fn seidel_shift_from(p: SrgParams) -> Result<ExactSpectrum, SrgError> {
    let s = srg_spectrum(p)?;
    let mut parts = Vec::new();
    let mut principal_done = false;
    for &(v, m) in &s.parts {
        let mut m = m;
        if !principal_done && v == QSurd::int(p.k as i64) {
            parts.push((QSurd::int(2 * p.k as i64 - p.v as i64), 1));
            m -= 1;
            principal_done = true;
        }
        parts.push((v.scale(Q::from_integer(2)), m));
    }
    Ok(ExactSpectrum::new(parts))
}

/// `λ_i` of the closed blowup `H^[t]`: `(λ_i(H) + 1)t − 1` while
/// `λ_i(H) ≥ −1`.
pub fn closed_blowup_lambda(h: &ExactSpectrum, i: u64, t: u64) -> Option<QSurd> {
    let l = h.lambda(i)?;
    (l.to_f64() >= -1.0).then(|| l.add(&QSurd::int(1)).scale(Q::from_integer(t as i64)).add(&QSurd::int(-1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(s: &ExactSpectrum) -> Vec<(String, u64)> {
        s.parts.iter().map(|(v, m)| (v.to_string(), *m)).collect()
    }

    fn ints(s: &[(i64, u64)]) -> Vec<(String, u64)> {
        s.iter().map(|(v, m)| (v.to_string(), *m)).collect()
    }

    #[test]
    fn paley_nine() {
        let s = srg_spectrum(SrgParams::new(9, 4, 1, 2).unwrap()).unwrap();
        assert_eq!(parts(&s), ints(&[(4, 1), (1, 4), (-2, 4)]));
        assert_eq!(s.lambda(5), Some(QSurd::int(1)));
    }

    #[test]
    fn paley_thirteen_is_irrational() {
        let s = srg_spectrum(SrgParams::new(13, 6, 2, 3).unwrap()).unwrap();
        let l7 = s.lambda(7).unwrap();
        assert_eq!(l7.to_string(), "-1/2 + 1/2√13");
        assert!((l7.to_f64() - (13f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
        assert_eq!(s.power_sum(1), QSurd::int(0));
        assert_eq!(s.power_sum(2), QSurd::int(13 * 6));
    }

    #[test]
    fn taylor_three() {
        let p = taylor_params(3).unwrap();
        assert_eq!(p, SrgParams { v: 27, k: 10, a: 1, c: 5 });
        assert_eq!(
            taylor_complement_params(3).unwrap(),
            SrgParams { v: 27, k: 16, a: 10, c: 8 }
        );
        let (t, tc) = taylor_spectra(3).unwrap();
        assert_eq!(parts(&t), ints(&[(10, 1), (1, 20), (-5, 6)]));
        assert_eq!(parts(&tc), ints(&[(16, 1), (4, 6), (-2, 20)]));
        assert_eq!(t, srg_spectrum(p).unwrap());
        assert_eq!(parts(&seidel_shift_spectrum(3).unwrap()), ints(&[(8, 6), (5, 1), (-4, 20)]));
    }

    #[test]
    fn taylor_errors() {
        for q in [1, 2, 4, 15] {
            assert_eq!(taylor_params(q), Err(SrgError::BadTaylorQ(q)));
        }
    }

    #[test]
    fn complement_q5() {
        let (_, tc) = taylor_spectra(5).unwrap();
        assert_eq!(tc.lambda(2), Some(QSurd::int(12)));
        assert_eq!(tc.parts[1].1, 20);
    }

    #[test]
    fn infeasible() {
        assert!(SrgParams::new(9, 4, 1, 3).is_err());
        assert!(srg_spectrum(SrgParams::new(5, 4, 3, 0).unwrap()).is_ok());
    }

    #[test]
    fn surd_display() {
        assert_eq!(QSurd::new(Q::from_integer(1), Q::from_integer(2), 8).to_string(), "1 + 4√2");
        assert_eq!(QSurd::new(Q::zero(), Q::from_integer(-1), 3).to_string(), "-√3");
        assert_eq!(QSurd::new(Q::from_integer(1), Q::from_integer(1), 9), QSurd::int(4));
    }
}

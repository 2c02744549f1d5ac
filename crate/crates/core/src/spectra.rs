//! Floating-point symmetric eigensolver and the quantities derived from it.
//!
//! The solver is cyclic Jacobi: sweep over all off-diagonal pairs, rotate each
//! to zero, repeat until the off-diagonal Frobenius norm is negligible. It
//! converges quadratically, preserves symmetry exactly and is plenty fast at
//! the orders used here (a few hundred at most).

use crate::linalg::IntSymMatrix;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectraError {
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (residual {residual:e})")]
    NonConvergence { sweeps: usize, residual: f64 },
    #[error("index {k} outside 1..={order}")]
    IndexOutOfRange { k: usize, order: usize },
}

/// Default convergence tolerance for a matrix of the given order.
pub fn default_tolerance(order: usize) -> f64 {
    1e-9 * order as f64
}

/// Counts of positive, zero and negative eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub plus: usize,
    pub zero: usize,
    pub minus: usize,
}

/// Eigenvalues in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    tolerance: f64,
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += 2.0 * a[i * n + j] * a[i * n + j];
        }
    }
    s.sqrt()
}

/// Eigenvalues of a dense symmetric `n×n` matrix given row-major, unsorted.
///
/// Iterates until the off-diagonal norm reaches rounding level; fails only if
/// the residual is still above `tolerance` after the sweep budget.
pub fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize, tolerance: f64) -> Result<Vec<f64>, SpectraError> {
    assert_eq!(a.len(), n * n, "matrix storage does not match order");
    let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let floor = 1e-15 * frob;
    let mut prev = f64::INFINITY;
    let mut sweeps = 0;
    loop {
        let off = off_norm(&a, n);
        if off <= floor || (off <= tolerance && off >= 0.5 * prev) {
            break;
        }
        if sweeps == MAX_SWEEPS {
            if off <= tolerance {
                break;
            }
            return Err(SpectraError::NonConvergence {
                sweeps,
                residual: off,
            });
        }
        prev = off;
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    Ok((0..n).map(|i| a[i * n + i]).collect())
}

impl Spectrum {
    /// Wraps already-computed eigenvalues, sorting them descending.
    pub fn from_values(mut values: Vec<f64>, tolerance: f64) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self { values, tolerance }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    fn check_index(&self, k: usize) -> Result<(), SpectraError> {
        if k == 0 || k > self.order() {
            return Err(SpectraError::IndexOutOfRange {
                k,
                order: self.order(),
            });
        }
        Ok(())
    }

    /// `λ_k`, the k-th largest eigenvalue (1-based).
    pub fn lambda(&self, k: usize) -> Result<f64, SpectraError> {
        self.check_index(k)?;
        Ok(self.values[k - 1])
    }

    /// `λ_{n−k+1}`, the k-th smallest eigenvalue.
    pub fn lambda_from_bottom(&self, k: usize) -> Result<f64, SpectraError> {
        self.check_index(k)?;
        Ok(self.values[self.order() - k])
    }

    /// Absolute values sorted descending; ties keep eigenvalue order.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.values.iter().map(|x| x.abs()).collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    /// `λ*_k`, the k-th largest singular value.
    pub fn singular_value(&self, k: usize) -> Result<f64, SpectraError> {
        self.check_index(k)?;
        Ok(self.singular_values()[k - 1])
    }

    /// Sum of the `k` largest singular values.
    pub fn ky_fan(&self, k: usize) -> Result<f64, SpectraError> {
        self.check_index(k)?;
        Ok(self.singular_values()[..k].iter().sum())
    }

    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Default grouping tolerance: `1e-6` times the spectral radius (at least 1).
    pub fn cluster_tolerance(&self) -> f64 {
        1e-6 * self.spectral_radius().max(1.0)
    }

    pub fn inertia(&self, zero_tol: f64) -> Inertia {
        let plus = self.values.iter().filter(|&&x| x > zero_tol).count();
        let minus = self.values.iter().filter(|&&x| x < -zero_tol).count();
        Inertia {
            plus,
            zero: self.order() - plus - minus,
            minus,
        }
    }

    /// Distinct eigenvalues with multiplicities, merging neighbours closer than
    /// `tol`. Values are cluster means.
    pub fn grouped(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut groups: Vec<(f64, usize, f64)> = Vec::new();
        for &x in &self.values {
            match groups.last_mut() {
                Some((sum, count, last)) if (*last - x).abs() <= tol => {
                    *sum += x;
                    *count += 1;
                    *last = x;
                }
                _ => groups.push((x, 1, x)),
            }
        }
        groups
            .into_iter()
            .map(|(sum, count, _)| (sum / count as f64, count))
            .collect()
    }

    pub fn report(&self, ky_fan_ks: &[usize]) -> Result<SpectrumReport, SpectraError> {
        let mut ky_fan = BTreeMap::new();
        for &k in ky_fan_ks {
            ky_fan.insert(k.to_string(), self.ky_fan(k)?);
        }
        Ok(SpectrumReport {
            order: self.order(),
            tolerance: self.tolerance,
            eigenvalues: self.values.clone(),
            singular_values: self.singular_values(),
            ky_fan,
        })
    }
}

/// JSON view of a spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub order: usize,
    pub tolerance: f64,
    pub eigenvalues: Vec<f64>,
    pub singular_values: Vec<f64>,
    pub ky_fan: BTreeMap<String, f64>,
}

pub fn eigen_sym(m: &IntSymMatrix, tolerance: f64) -> Result<Spectrum, SpectraError> {
    let n = m.order();
    let a: Vec<f64> = m.entries().iter().map(|&x| x as f64).collect();
    let values = jacobi_eigenvalues(a, n, tolerance)?;
    Ok(Spectrum::from_values(values, tolerance))
}

/// [`eigen_sym`] at the default tolerance.
pub fn spectrum(m: &IntSymMatrix) -> Result<Spectrum, SpectraError> {
    eigen_sym(m, default_tolerance(m.order()))
}

pub fn singular_values(m: &IntSymMatrix) -> Result<Vec<f64>, SpectraError> {
    Ok(spectrum(m)?.singular_values())
}

pub fn ky_fan(m: &IntSymMatrix, k: usize) -> Result<f64, SpectraError> {
    spectrum(m)?.ky_fan(k)
}

pub fn lambda_k(m: &IntSymMatrix, k: usize) -> Result<f64, SpectraError> {
    spectrum(m)?.lambda(k)
}

pub fn lambda_from_bottom(m: &IntSymMatrix, k: usize) -> Result<f64, SpectraError> {
    spectrum(m)?.lambda_from_bottom(k)
}

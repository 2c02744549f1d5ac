//! Brute-force checks of graph eigenvalue inequalities over every labeled
//! graph of small order and over seeded Erdős–Rényi samples.

use crate::arith::binomial;
use crate::io::write_adj;
use crate::linalg::{Graph, IntSymMatrix};
use crate::spectra::jacobi_eigenvalues;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub const MAX_EXHAUSTIVE_ORDER: usize = 7;
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
    #[error("exhaustive enumeration is capped at order {cap}, got {n}")]
    TooLarge { n: usize, cap: usize },
    #[error("k must be at least {min}, got {k}")]
    BadK { k: usize, min: usize },
    #[error("unknown property {0:?}")]
    UnknownProperty(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Universe {
    Exhaustive { orders: Vec<usize> },
    Random { count: usize, order: usize, edge_probability: f64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub statement: String,
    pub k: usize,
    pub lhs: f64,
    pub rhs: f64,
    /// Offending graph in ADJ format.
    pub graph: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyRun {
    pub property_name: String,
    pub universe: Universe,
    pub instances: u64,
    pub violations: Vec<Violation>,
    pub tolerance: f64,
    pub notes: Vec<String>,
}

impl PropertyRun {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabConfig {
    pub n_max: usize,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for LabConfig {
    fn default() -> Self {
        Self {
            n_max: 6,
            samples: 10_000,
            seed: 0,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

pub const PROPERTIES: [&str; 5] = ["lob", "weyl", "th1_spro", "ng_kyfan", "all"];

fn edge_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn adjacency(n: usize, mask: u64) -> Vec<i64> {
    let mut a = vec![0; n * n];
    let mut b = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if mask >> b & 1 == 1 {
                a[i * n + j] = 1;
                a[j * n + i] = 1;
            }
            b += 1;
        }
    }
    a
}

fn complement_of(n: usize, a: &[i64]) -> Vec<i64> {
    (0..n * n).map(|x| if x / n == x % n { 0 } else { 1 - a[x] }).collect()
}

fn to_graph(n: usize, a: &[i64]) -> Graph {
    Graph::new(IntSymMatrix::from_vec(n, a.to_vec()).expect("symmetric")).expect("0/1, zero diagonal")
}

/// Eigenvalues in descending order.
fn eigs(n: usize, a: &[i64]) -> Vec<f64> {
    let mut v = jacobi_eigenvalues(a.iter().map(|&x| x as f64).collect(), n, 1e-10 * n.max(1) as f64)
        .expect("Jacobi converges on small 0/1 matrices");
    v.sort_by(|x, y| y.total_cmp(x));
    v
}

fn singular(ev: &[f64]) -> Vec<f64> {
    let mut s: Vec<f64> = ev.iter().map(|x| x.abs()).collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Every labeled graph on `n` vertices, each exactly once.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>, LabError> {
    if n > MAX_EXHAUSTIVE_ORDER {
        return Err(LabError::TooLarge {
            n,
            cap: MAX_EXHAUSTIVE_ORDER,
        });
    }
    Ok((0..1u64 << edge_count(n)).map(move |m| to_graph(n, &adjacency(n, m))))
}

/// Erdős–Rényi adjacency matrices, reproducible from the seed.
pub fn random_graphs(order: usize, count: usize, p: f64, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut a = vec![0; order * order];
            for i in 0..order {
                for j in (i + 1)..order {
                    if rng.gen_bool(p) {
                        a[i * order + j] = 1;
                        a[j * order + i] = 1;
                    }
                }
            }
            a
        })
        .collect()
}

/// A per-graph check: given the order, adjacency and descending spectrum,
/// returns the violated instances.
type Check<'a> = dyn Fn(usize, &[i64], &[f64]) -> Vec<Violation> + Sync + 'a;

fn violation(statement: &str, k: usize, lhs: f64, rhs: f64, n: usize, a: &[i64]) -> Violation {
    Violation {
        statement: statement.to_string(),
        k,
        lhs,
        rhs,
        graph: write_adj(&to_graph(n, a)),
    }
}

fn run_exhaustive(orders: &[usize], check: &Check) -> (u64, Vec<Violation>) {
    let mut count = 0;
    let mut out = Vec::new();
    for &n in orders {
        let total = 1u64 << edge_count(n);
        count += total;
        let mut v: Vec<Violation> = (0..total)
            .into_par_iter()
            .flat_map_iter(|m| {
                let a = adjacency(n, m);
                let ev = eigs(n, &a);
                check(n, &a, &ev)
            })
            .collect();
        out.append(&mut v);
    }
    (count, out)
}

fn run_random(graphs: &[Vec<i64>], n: usize, check: &Check) -> Vec<Violation> {
    graphs
        .par_iter()
        .flat_map_iter(|a| {
            let ev = eigs(n, a);
            check(n, a, &ev)
        })
        .collect()
}

fn exhaustive_run(name: &str, orders: Vec<usize>, tol: f64, check: &Check) -> PropertyRun {
    let (instances, violations) = run_exhaustive(&orders, check);
    PropertyRun {
        property_name: name.into(),
        universe: Universe::Exhaustive { orders },
        instances,
        violations,
        tolerance: tol,
        notes: vec![],
    }
}

fn random_run(name: &str, order: usize, cfg: &LabConfig, check: &Check) -> PropertyRun {
    let graphs = random_graphs(order, cfg.samples, 0.5, cfg.seed);
    PropertyRun {
        property_name: name.into(),
        universe: Universe::Random {
            count: cfg.samples,
            order,
            edge_probability: 0.5,
            seed: cfg.seed,
        },
        instances: graphs.len() as u64,
        violations: run_random(&graphs, order, check),
        tolerance: cfg.tolerance,
        notes: vec![],
    }
}

fn lob_check(k: usize, tol: f64) -> impl Fn(usize, &[i64], &[f64]) -> Vec<Violation> + Sync {
    move |n, a, ev| {
        let mut v = Vec::new();
        if ev[k - 1] < -1.0 - tol {
            v.push(violation("lambda_k >= -1", k, ev[k - 1], -1.0, n, a));
        }
        if ev[n - k] > tol {
            v.push(violation("lambda_{n-k+1} <= 0", k, ev[n - k], 0.0, n, a));
        }
        v
    }
}

/// Ramsey-based bounds `λ_k ≥ −1` and `λ_{n−k+1} ≤ 0` for `n ≥ C(2k−1, k−1)`.
///
/// Orders within the exhaustive cap are enumerated; when the threshold is
/// above the cap a random sample at `random_order` (at least the threshold)
/// is used instead.
pub fn check_lob(k: usize, cfg: &LabConfig, random_order: usize) -> Result<PropertyRun, LabError> {
    if k < 1 {
        return Err(LabError::BadK { k, min: 1 });
    }
    let threshold = binomial(2 * k as u64 - 1, k as u64 - 1).unwrap_or(u64::MAX) as usize;
    let check = lob_check(k, cfg.tolerance);
    let mut run = if threshold <= cfg.n_max.min(MAX_EXHAUSTIVE_ORDER) {
        let orders: Vec<usize> = (threshold.max(k)..=cfg.n_max.min(MAX_EXHAUSTIVE_ORDER)).collect();
        exhaustive_run("lob", orders, cfg.tolerance, &check)
    } else {
        random_run("lob", random_order.max(threshold), cfg, &check)
    };
    run.notes.push(format!("k = {k}, threshold order {threshold}"));
    if k == 2 {
        // below threshold: informational only
        let ev = eigs(2, &adjacency(2, 1));
        run.notes.push(format!("below threshold, K_2 has lambda_2 = {}", ev[1]));
    }
    Ok(run)
}

fn weyl_complement(n: usize, a: &[i64], ev: &[f64], tol: f64) -> Vec<Violation> {
    let ec = eigs(n, &complement_of(n, a));
    (2..=n)
        .filter_map(|k| {
            let lhs = ev[k - 1] + ec[n - k + 1];
            (lhs > -1.0 + tol).then(|| violation("lambda_k(G) + lambda_{n-k+2}(complement) <= -1", k, lhs, -1.0, n, a))
        })
        .collect()
}

fn weyl_diagonal(n: usize, a: &[i64], ev: &[f64], d: u64, tol: f64) -> Vec<Violation> {
    let mut ad = a.to_vec();
    (0..n).for_each(|i| ad[i * n + i] = (d >> i & 1) as i64);
    let ed = eigs(n, &ad);
    (1..=n)
        .filter(|&k| ev[k - 1] < ed[k - 1] - 1.0 - tol)
        .map(|k| {
            let mut w = violation("lambda_k(A) >= lambda_k(A') - 1", k, ev[k - 1], ed[k - 1] - 1.0, n, a);
            w.statement.push_str(&format!(" (diagonal mask {d:b})"));
            w
        })
        .collect()
}

/// The two Weyl corollaries: the complement bound and the diagonal-zeroing
/// penalty. Exhaustive orders try every 0/1 diagonal per graph; random orders
/// try one seeded diagonal per graph.
pub fn check_weyl(cfg: &LabConfig, random_order: usize) -> Result<Vec<PropertyRun>, LabError> {
    let n_max = cfg.n_max.min(MAX_EXHAUSTIVE_ORDER);
    let tol = cfg.tolerance;
    let check = move |n: usize, a: &[i64], ev: &[f64]| {
        let mut v = weyl_complement(n, a, ev, tol);
        for d in 0..1u64 << n {
            v.extend(weyl_diagonal(n, a, ev, d, tol));
        }
        v
    };
    let mut out = vec![exhaustive_run("weyl", (1..=n_max).collect(), tol, &check)];
    if random_order > 0 {
        let rcheck = move |n: usize, a: &[i64], ev: &[f64]| {
            let mut v = weyl_complement(n, a, ev, tol);
            let h = a.iter().fold(cfg.seed, |h, &x| h.wrapping_mul(31).wrapping_add(x as u64));
            let d = ChaCha8Rng::seed_from_u64(h).gen::<u64>() & ((1u64 << n) - 1);
            v.extend(weyl_diagonal(n, a, ev, d, tol));
            v
        };
        let mut r = random_run("weyl", random_order, cfg, &rcheck);
        r.notes.push("one seeded random diagonal per sampled graph".into());
        out.push(r);
    }
    Ok(out)
}

fn th1_check(tol: f64) -> impl Fn(usize, &[i64], &[f64]) -> Vec<Violation> + Sync {
    move |n, a, ev| {
        let mut v = Vec::new();
        let sv = singular(ev);
        for k in 2..=n {
            let star = sv[k - 1];
            let bound = n as f64 / (2.0 * ((k - 1) as f64).sqrt());
            if ev[k - 1] > star + tol {
                v.push(violation("lambda_k <= lambda*_k", k, ev[k - 1], star, n, a));
            }
            if star > bound + tol {
                v.push(violation("lambda*_k <= n/(2 sqrt(k-1))", k, star, bound, n, a));
            }
            // with a positive λ_{n−k+2} the absolute-value form fails (2K_2 ∪ K_1, k = 5)
            if ev[n - k + 1] <= tol && ev[n - k + 1].abs() > star + tol {
                v.push(violation("|lambda_{n-k+2}| <= lambda*_k", k, ev[n - k + 1].abs(), star, n, a));
            }
        }
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Maxima {
    pub lambda_k: f64,
    /// `max −λ_{n−k+2}`, the negative part only.
    pub neg_k_minus_1: f64,
    /// `max |λ_{n−k+2}|`, which positive eigenvalues can dominate below the
    /// Ramsey threshold.
    pub abs_k_minus_1: f64,
    pub star_k: f64,
}

/// Maxima over all graphs of order `n`, indexed by `k − 1`. For `k = 1` the
/// `λ_{n−k+2}` entries are 0.
pub fn universe_maxima(n: usize) -> Result<Vec<Maxima>, LabError> {
    if n > MAX_EXHAUSTIVE_ORDER {
        return Err(LabError::TooLarge {
            n,
            cap: MAX_EXHAUSTIVE_ORDER,
        });
    }
    let zero = || {
        vec![
            Maxima {
                lambda_k: f64::MIN,
                neg_k_minus_1: f64::MIN,
                abs_k_minus_1: f64::MIN,
                star_k: f64::MIN
            };
            n
        ]
    };
    let merge = |mut x: Vec<Maxima>, y: Vec<Maxima>| {
        for (p, q) in x.iter_mut().zip(y) {
            p.lambda_k = p.lambda_k.max(q.lambda_k);
            p.neg_k_minus_1 = p.neg_k_minus_1.max(q.neg_k_minus_1);
            p.abs_k_minus_1 = p.abs_k_minus_1.max(q.abs_k_minus_1);
            p.star_k = p.star_k.max(q.star_k);
        }
        x
    };
    Ok((0..1u64 << edge_count(n))
        .into_par_iter()
        .map(|m| {
            let ev = eigs(n, &adjacency(n, m));
            let sv = singular(&ev);
            (1..=n)
                .map(|k| {
                    let low = if k >= 2 { ev[n - k + 1] } else { 0.0 };
                    Maxima {
                        lambda_k: ev[k - 1],
                        neg_k_minus_1: -low,
                        abs_k_minus_1: low.abs(),
                        star_k: sv[k - 1],
                    }
                })
                .collect::<Vec<_>>()
        })
        .reduce(zero, merge))
}

/// Per-graph singular-value bounds, and the extremal-function relations at
/// the level of universe maxima. The `λ_{n−k+2}` side uses the negative part:
/// with absolute values, order 6 and k = 6 already fail (2K_3 against 3K_2).
pub fn check_th1_spro(cfg: &LabConfig) -> Result<Vec<PropertyRun>, LabError> {
    let n_max = cfg.n_max.min(MAX_EXHAUSTIVE_ORDER);
    let mut th1 = exhaustive_run("th1", (2..=n_max).collect(), cfg.tolerance, &th1_check(cfg.tolerance));
    th1.notes.push("|lambda_{n-k+2}| <= lambda*_k checked where lambda_{n-k+2} <= 0".into());
    let mut spro = PropertyRun {
        property_name: "spro".into(),
        universe: Universe::Exhaustive {
            orders: (2..=n_max).collect(),
        },
        instances: 0,
        violations: vec![],
        tolerance: cfg.tolerance,
        notes: vec![],
    };
    let tol = cfg.tolerance;
    for n in 2..=n_max {
        let max = universe_maxima(n)?;
        spro.instances += 1 << edge_count(n);
        for k in 2..=n {
            let Maxima {
                lambda_k: lk,
                neg_k_minus_1: neg,
                abs_k_minus_1: abs,
                star_k: star,
            } = max[k - 1];
            let mut push = |s: &str, lhs: f64, rhs: f64| {
                spro.violations.push(Violation {
                    statement: format!("{s} at order {n}"),
                    k,
                    lhs,
                    rhs,
                    graph: String::new(),
                })
            };
            if lk > star + tol {
                push("lambda_k(n) <= lambda*_k(n)", lk, star);
            }
            if neg > star + tol {
                push("lambda_{-k+1}(n) <= lambda*_k(n)", neg, star);
            }
            if lk + 1.0 > neg + tol {
                push("lambda_k(n) + 1 <= lambda_{-k+1}(n)", lk + 1.0, neg);
            }
            spro.notes.push(format!(
                "n={n} k={k}: lambda_k(n)={lk:.6} max -lambda_{{n-k+2}}={neg:.6} max |lambda_{{n-k+2}}|={abs:.6} lambda*_k(n)={star:.6}"
            ));
        }
    }
    Ok(vec![th1, spro])
}

fn nikbo_check(tol: f64) -> impl Fn(usize, &[i64], &[f64]) -> Vec<Violation> + Sync {
    move |n, a, ev| {
        let sv = singular(ev);
        let mut v = Vec::new();
        let mut acc = 0.0;
        for k in 1..=n {
            acc += sv[k - 1];
            let bound = 0.5 * (1.0 + (k as f64).sqrt()) * n as f64;
            if acc > bound + tol {
                v.push(violation("ky_fan_k <= (1 + sqrt k) n / 2", k, acc, bound, n, a));
            }
        }
        // easy Nordhaus-Gaddum bound for singular values
        let sc = singular(&eigs(n, &complement_of(n, a)));
        for k in 2..=n {
            let lhs = sv[k - 1] + sc[k - 1];
            let bound = n as f64 / ((k - 1) as f64).sqrt();
            if lhs > bound + tol {
                v.push(violation("lambda*_k(G) + lambda*_k(complement) <= n/sqrt(k-1)", k, lhs, bound, n, a));
            }
        }
        v
    }
}

fn ng_upper_check(k: usize, tol: f64) -> impl Fn(usize, &[i64], &[f64]) -> Vec<Violation> + Sync {
    move |n, a, ev| {
        let ec = eigs(n, &complement_of(n, a));
        let lhs = ev[k - 1] + ec[k - 1];
        let bound = n as f64 / (2.0 * (k - 1) as f64).sqrt() - 1.0;
        if lhs > bound + tol {
            vec![violation("lambda_k(G) + lambda_k(complement) <= n/sqrt(2(k-1)) - 1", k, lhs, bound, n, a)]
        } else {
            vec![]
        }
    }
}

fn ng_lower_check(k: usize, tol: f64) -> impl Fn(usize, &[i64], &[f64]) -> Vec<Violation> + Sync {
    move |n, a, ev| {
        let ec = eigs(n, &complement_of(n, a));
        let lhs = ev[n - k].abs() + ec[n - k].abs();
        let bound = n as f64 / (2.0 * k as f64).sqrt() + 1.0;
        if lhs > bound + tol {
            vec![violation("|lambda_{n-k+1}(G)| + |lambda_{n-k+1}(complement)| <= n/sqrt(2k) + 1", k, lhs, bound, n, a)]
        } else {
            vec![]
        }
    }
}

/// Ky Fan upper bound everywhere, and the two Nordhaus-Gaddum bounds only on
/// universes meeting their order premises (`n ≥ 15(k−1)`, `n ≥ 4^k`).
pub fn check_ng_kyfan(cfg: &LabConfig, ng_order: usize) -> Result<Vec<PropertyRun>, LabError> {
    let n_max = cfg.n_max.min(MAX_EXHAUSTIVE_ORDER);
    let tol = cfg.tolerance;
    let mut out = vec![exhaustive_run("nikbo", (1..=n_max).collect(), tol, &nikbo_check(tol))];
    let k2 = 2;
    if ng_order >= 15 * (k2 - 1) {
        out.push(random_run("ng_upper", ng_order, cfg, &ng_upper_check(k2, tol)));
    }
    let k1 = 1;
    let premise = 4usize.pow(k1 as u32);
    let orders: Vec<usize> = (premise..=n_max).collect();
    if !orders.is_empty() {
        let mut r = exhaustive_run("ng_lower", orders, tol, &ng_lower_check(k1, tol));
        r.notes.push(format!("k = {k1}, premise n >= {premise}"));
        out.push(r);
    }
    Ok(out)
}

/// Runs a named suite with the default random orders.
pub fn run_property(name: &str, cfg: &LabConfig) -> Result<Vec<PropertyRun>, LabError> {
    match name {
        "lob" => Ok(vec![check_lob(2, cfg, 12)?, check_lob(3, cfg, 12)?]),
        "weyl" => check_weyl(cfg, 20),
        "th1_spro" => check_th1_spro(cfg),
        "ng_kyfan" => check_ng_kyfan(cfg, 30),
        "all" => {
            let mut v = run_property("lob", cfg)?;
            for p in ["weyl", "th1_spro", "ng_kyfan"] {
                v.extend(run_property(p, cfg)?);
            }
            Ok(v)
        }
        other => Err(LabError::UnknownProperty(other.into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_graphs(1).unwrap().count(), 1);
        assert_eq!(enumerate_graphs(3).unwrap().count(), 8);
        assert_eq!(enumerate_graphs(4).unwrap().count(), 64);
        assert!(enumerate_graphs(8).is_err());
        let mut seen: Vec<_> = enumerate_graphs(4).unwrap().map(|g| g.as_sym().entries().to_vec()).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 64);
    }

    #[test]
    fn seeds_reproduce() {
        assert_eq!(random_graphs(10, 5, 0.5, 7), random_graphs(10, 5, 0.5, 7));
        assert_ne!(random_graphs(10, 5, 0.5, 7), random_graphs(10, 5, 0.5, 8));
    }

    #[test]
    fn complete_graph_weyl_equality() {
        let n = 5;
        let a = complement_of(n, &vec![0; n * n]);
        let ev = eigs(n, &a);
        let ec = eigs(n, &complement_of(n, &a));
        for k in 2..=n {
            assert!((ev[k - 1] + ec[n - k + 1] + 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn small_suites_clean() {
        let cfg = LabConfig {
            n_max: 5,
            samples: 200,
            ..LabConfig::default()
        };
        for run in run_property("all", &cfg).unwrap() {
            assert!(run.passed(), "{}: {:?}", run.property_name, run.violations.first());
        }
    }

    #[test]
    fn violations_carry_adj() {
        // a false statement must be caught and dumped
        let check = |n: usize, a: &[i64], ev: &[f64]| {
            if ev[0] > 0.5 {
                vec![violation("lambda_1 <= 0.5", 1, ev[0], 0.5, n, a)]
            } else {
                vec![]
            }
        };
        let run = exhaustive_run("false", vec![2], 1e-9, &check);
        assert_eq!(run.violations.len(), 1);
        assert!(run.violations[0].graph.starts_with("ADJ"));
    }
}

//! Pruned exhaustive search for members of `S_k` at a fixed order, and a
//! canonical form under simultaneous signed permutations.
//!
//! The search fills a symmetric ±1 matrix row by row. Once a row is complete
//! its inner products with earlier rows are known, and for `B ∈ S_k` the Gram
//! matrix `B² = (n²/k)·P` with `P` an orthogonal projection of rank `k`. That
//! gives the cheap necessary conditions used for pruning.

use crate::arith::exact_sqrt;
use crate::constructions::{sk_certify, CertifyMode};
use crate::linalg::{IntSymMatrix, PmOneMatrix};
use crate::spectra::jacobi_eigenvalues;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const CANONICAL_ORDER_CAP: usize = 16;
pub const SEARCH_ORDER_CAP: usize = 24;
/// Orders tried for `S_6` when none is given.
pub const S6_DEFAULT_ORDERS: [usize; 2] = [6, 12];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("order {order} exceeds the cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("order must be positive")]
    ZeroOrder,
    #[error("budget must be positive")]
    ZeroBudget,
    #[error("malformed resume token: {0}")]
    BadToken(String),
    #[error("resume token is for (k={k}, order={order}, symmetry={symmetry}), not this run")]
    TokenMismatch { k: u64, order: usize, symmetry: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "decision")]
pub enum Feasibility {
    Feasible { constraints: Vec<String> },
    Obstructed { reason: String },
}

/// Trace values `2p − n` compatible with `B ∈ S_k` of order `n`.
pub fn allowed_traces(k: u64, n: usize) -> Vec<i64> {
    let ni = n as i64;
    let parity_ok = |t: i64| (t + ni) % 2 == 0 && t.abs() <= ni;
    match exact_sqrt(k) {
        // tr B = d·n/√k with n₊ − n₋ = d, |d| ≤ k, d ≡ k (mod 2)
        Some(s) => {
            let (s, k) = (s as i64, k as i64);
            (-k..=k)
                .rev()
                .filter(|d| (d - k) % 2 == 0 && (d * ni) % s == 0)
                .map(|d| d * ni / s)
                .filter(|&t| parity_ok(t))
                .collect()
        }
        None => {
            if k.is_multiple_of(2) && parity_ok(0) {
                vec![0]
            } else {
                vec![]
            }
        }
    }
}

pub fn feasibility_filter(k: u64, n: usize) -> Feasibility {
    if k == 0 {
        return Feasibility::Obstructed {
            reason: "k must be positive".into(),
        };
    }
    let square = exact_sqrt(k).is_some();
    if !square && k % 2 == 1 {
        return Feasibility::Obstructed {
            reason: format!("k = {k} is odd and not a square: n₊ = n₋ would make k even"),
        };
    }
    if (n as u64) < k {
        return Feasibility::Obstructed {
            reason: format!("order {n} is below k = {k}, so rank k is impossible"),
        };
    }
    let traces = allowed_traces(k, n);
    if traces.is_empty() {
        return Feasibility::Obstructed {
            reason: format!("no trace of a ±1 matrix of order {n} has the form (n₊ − n₋)·n/√k"),
        };
    }
    let constraints = if square {
        vec![format!("√k·tr(B)/n is an integer ≡ k (mod 2); allowed traces {traces:?}")]
    } else {
        vec!["k is not a square: n₊ = n₋ forces tr(B) = 0".into()]
    };
    Feasibility::Feasible { constraints }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub k: u64,
    pub order: usize,
    pub budget: u64,
    pub symmetry_reduction: bool,
    pub resume_token: Option<String>,
}

impl SearchConfig {
    pub fn new(k: u64, order: usize, budget: u64) -> Self {
        Self {
            k,
            order,
            budget,
            symmetry_reduction: true,
            resume_token: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    Exhausted,
    BudgetExceeded,
    Obstructed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleLog {
    pub name: &'static str,
    pub soundness: &'static str,
    pub prunes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub k: u64,
    pub order: usize,
    pub status: SearchStatus,
    #[serde(serialize_with = "witness_rows")]
    pub witness: Option<PmOneMatrix>,
    pub nodes_expanded: u64,
    pub leaves_certified: u64,
    pub feasibility: Feasibility,
    pub obstructions_applied: Vec<RuleLog>,
    pub symmetry_reduction: bool,
    pub resume_token: Option<String>,
}

fn witness_rows<S: serde::Serializer>(w: &Option<PmOneMatrix>, s: S) -> Result<S::Ok, S::Error> {
    let rows = w.as_ref().map(|m| {
        (0..m.order())
            .map(|i| m.as_sym().row(i).to_vec())
            .collect::<Vec<_>>()
    });
    rows.serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Token {
    k: u64,
    order: usize,
    symmetry: bool,
    pattern_index: usize,
    choices: Vec<u64>,
    nodes: u64,
    leaves: u64,
}

const RULES: [(&str, &str); 7] = [
    ("first_row_normalized", "switching makes row 0 all +1 and a global negation then fixes b₀₀ = +1; both preserve S_k"),
    ("diagonal_sorted", "permuting indices ≥ 1 keeps row 0 all +1, so the remaining diagonal can be sorted +1 first"),
    ("row1_sorted_in_classes", "permuting indices ≥ 2 inside a class of equal diagonal keeps row 0 and the diagonal, so row 1 can be sorted there"),
    ("trace_feasibility", "tr B = (n₊ − n₋)·n/√k with n₊ + n₋ = k, and n₊ = n₋ when k is not a square"),
    ("gram_pair", "B² = (n²/k)P with P a projection of diagonal k/n, so |P_ij| ≤ 1 − k/n, i.e. k(n + |⟨r_i, r_j⟩|) ≤ n²"),
    ("row_rank", "rank B = k, so any set of complete rows has rank at most k (exact fraction-free elimination)"),
    ("gram_spectral", "the Gram matrix of complete rows is (n²/k) times a compression of a projection, so its top eigenvalue is at most n²/k"),
];

const R_TRACE: usize = 3;
const R_ROW1: usize = 2;
const R_PAIR: usize = 4;
const R_RANK: usize = 5;
const R_SPEC: usize = 6;

struct Searcher {
    k: u64,
    n: usize,
    sym: bool,
    m: Vec<i64>,
    prunes: [u64; 7],
    nodes: u64,
    leaves: u64,
}

/// Rank of an integer matrix by Bareiss elimination; `None` on overflow.
pub fn integer_rank(rows: &[Vec<i64>]) -> Option<usize> {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (r, c) = (a.len(), a.first().map_or(0, |x| x.len()));
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..c {
        let Some(p) = (rank..r).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for i in (rank + 1)..r {
            for j in (col + 1)..c {
                let v = a[rank][col]
                    .checked_mul(a[i][j])?
                    .checked_sub(a[i][col].checked_mul(a[rank][j])?)?;
                a[i][j] = v / prev;
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        rank += 1;
        if rank == r {
            break;
        }
    }
    Some(rank)
}

impl Searcher {
    fn get(&self, i: usize, j: usize) -> i64 {
        self.m[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.m[i * self.n + j] = v;
        self.m[j * self.n + i] = v;
    }

    fn first_row(&self) -> usize {
        usize::from(self.sym)
    }

    fn free_bits(&self, r: usize) -> usize {
        self.n - 1 - r
    }

    fn patterns(&mut self) -> Vec<Vec<i64>> {
        let n = self.n;
        let traces = allowed_traces(self.k, n);
        let ok = |d: &[i64]| traces.contains(&d.iter().sum::<i64>());
        let mut out = Vec::new();
        if self.sym {
            for p in (0..n).rev() {
                let d: Vec<i64> = (0..n).map(|i| if i == 0 || i <= p { 1 } else { -1 }).collect();
                if ok(&d) {
                    out.push(d);
                } else {
                    self.prunes[R_TRACE] += 1;
                }
            }
        } else {
            for mask in 0..(1u64 << n) {
                let d: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 0 { 1 } else { -1 }).collect();
                if ok(&d) {
                    out.push(d);
                } else {
                    self.prunes[R_TRACE] += 1;
                }
            }
        }
        out
    }

    fn setup(&mut self, diag: &[i64]) {
        self.m.iter_mut().for_each(|x| *x = 1);
        for (i, &d) in diag.iter().enumerate() {
            self.m[i * self.n + i] = d;
        }
    }

    fn assign(&mut self, r: usize, choice: u64) {
        for (b, j) in ((r + 1)..self.n).enumerate() {
            self.set(r, j, if choice >> (self.free_bits(r) - 1 - b) & 1 == 0 { 1 } else { -1 });
        }
    }

    fn row1_sorted(&self) -> bool {
        (2..self.n.saturating_sub(1))
            .all(|j| self.get(j, j) != self.get(j + 1, j + 1) || self.get(1, j) >= self.get(1, j + 1))
    }

    fn dot(&self, i: usize, j: usize) -> i64 {
        (0..self.n).map(|t| self.get(i, t) * self.get(j, t)).sum()
    }

    /// Necessary conditions on rows `0..=r`, all complete.
    fn rows_ok(&mut self, r: usize) -> bool {
        let (n2, k) = ((self.n * self.n) as i64, self.k as i64);
        let ni = self.n as i64;
        for i in 0..r {
            if k * (ni + self.dot(i, r).abs()) > n2 {
                self.prunes[R_PAIR] += 1;
                return false;
            }
        }
        if (r + 1) as u64 > self.k {
            let rows: Vec<Vec<i64>> = (0..=r).map(|i| self.m[i * self.n..(i + 1) * self.n].to_vec()).collect();
            if integer_rank(&rows).is_some_and(|rank| rank as u64 > self.k) {
                self.prunes[R_RANK] += 1;
                return false;
            }
        }
        if r >= 2 {
            let g: Vec<f64> = (0..=r)
                .flat_map(|i| (0..=r).map(move |j| (i, j)))
                .map(|(i, j)| self.dot(i, j) as f64)
                .collect();
            if let Ok(ev) = jacobi_eigenvalues(g, r + 1, 1e-9) {
                let top = ev.iter().fold(f64::MIN, |a, &b| a.max(b));
                if top > (n2 as f64 / k as f64) * (1.0 + 1e-9) {
                    self.prunes[R_SPEC] += 1;
                    return false;
                }
            }
        }
        true
    }

    fn leaf(&mut self) -> Option<PmOneMatrix> {
        self.leaves += 1;
        let last = self.n - 1;
        if last > 0 && !self.rows_ok(last) {
            return None;
        }
        let m = IntSymMatrix::from_vec(self.n, self.m.clone()).expect("kept symmetric");
        let b = PmOneMatrix::new(m).expect("±1 entries");
        let cert = sk_certify(&b, self.k, CertifyMode::Exact).ok()?;
        cert.is_member().then_some(b)
    }

    fn logs(&self) -> Vec<RuleLog> {
        RULES
            .iter()
            .enumerate()
            .filter(|(i, _)| self.sym || *i > R_ROW1)
            .map(|(i, &(name, soundness))| RuleLog {
                name,
                soundness,
                prunes: self.prunes[i],
            })
            .collect()
    }
}

pub fn search_sk(config: &SearchConfig) -> Result<SearchResult, SearchError> {
    let (k, n) = (config.k, config.order);
    if n == 0 {
        return Err(SearchError::ZeroOrder);
    }
    if n > SEARCH_ORDER_CAP {
        return Err(SearchError::OrderTooLarge {
            order: n,
            cap: SEARCH_ORDER_CAP,
        });
    }
    if config.budget == 0 {
        return Err(SearchError::ZeroBudget);
    }
    let feasibility = feasibility_filter(k, n);
    let mut s = Searcher {
        k,
        n,
        sym: config.symmetry_reduction,
        m: vec![1; n * n],
        prunes: [0; 7],
        nodes: 0,
        leaves: 0,
    };
    let result = |s: &Searcher, status, witness, feasibility: Feasibility, token| SearchResult {
        k,
        order: n,
        status,
        witness,
        nodes_expanded: s.nodes,
        leaves_certified: s.leaves,
        feasibility,
        obstructions_applied: s.logs(),
        symmetry_reduction: s.sym,
        resume_token: token,
    };
    if let Feasibility::Obstructed { .. } = feasibility {
        return Ok(result(&s, SearchStatus::Obstructed, None, feasibility, None));
    }

    let patterns = s.patterns();
    let mut pattern_index = 0;
    let mut choices: Vec<u64> = Vec::new();
    let mut resumed = false;
    if let Some(t) = &config.resume_token {
        let t: Token = serde_json::from_str(t).map_err(|e| SearchError::BadToken(e.to_string()))?;
        if (t.k, t.order, t.symmetry) != (k, n, s.sym) {
            return Err(SearchError::TokenMismatch {
                k: t.k,
                order: t.order,
                symmetry: t.symmetry,
            });
        }
        pattern_index = t.pattern_index;
        choices = t.choices;
        s.nodes = t.nodes;
        s.leaves = t.leaves;
        resumed = true;
    }
    let first = s.first_row();
    let free_rows = (first + 1..n).len();
    let budget = s.nodes.saturating_add(config.budget);

    while pattern_index < patterns.len() {
        s.setup(&patterns[pattern_index]);
        if free_rows == 0 {
            if let Some(w) = s.leaf() {
                return Ok(result(&s, SearchStatus::Found, Some(w), feasibility, None));
            }
            pattern_index += 1;
            continue;
        }
        if resumed {
            for (d, &c) in choices.iter().enumerate().take(choices.len().saturating_sub(1)) {
                s.assign(first + d, c);
            }
            resumed = false;
        } else {
            choices = vec![0];
        }
        while let Some(&c) = choices.last() {
            let d = choices.len() - 1;
            let r = first + d;
            if c >= 1u64 << s.free_bits(r) {
                choices.pop();
                if let Some(parent) = choices.last_mut() {
                    *parent += 1;
                }
                continue;
            }
            if s.nodes >= budget {
                let token = Token {
                    k,
                    order: n,
                    symmetry: s.sym,
                    pattern_index,
                    choices: choices.clone(),
                    nodes: s.nodes,
                    leaves: s.leaves,
                };
                let token = serde_json::to_string(&token).expect("token serializes");
                return Ok(result(&s, SearchStatus::BudgetExceeded, None, feasibility, Some(token)));
            }
            s.nodes += 1;
            s.assign(r, c);
            let ok = if s.sym && r == 1 && !s.row1_sorted() {
                s.prunes[R_ROW1] += 1;
                false
            } else {
                s.rows_ok(r)
            };
            if !ok {
                *choices.last_mut().expect("nonempty") += 1;
                continue;
            }
            if r + 1 == n - 1 {
                if let Some(w) = s.leaf() {
                    return Ok(result(&s, SearchStatus::Found, Some(w), feasibility, None));
                }
                *choices.last_mut().expect("nonempty") += 1;
            } else {
                choices.push(0);
            }
        }
        pattern_index += 1;
    }
    Ok(result(&s, SearchStatus::Exhausted, None, feasibility, None))
}

// Keys are the column-major upper triangle with +1 ↦ 0 and −1 ↦ 1.
struct Canon<'a> {
    m: &'a [i64],
    n: usize,
    best: Option<Vec<u8>>,
    best_perm: Vec<usize>,
}

impl Canon<'_> {
    fn column(&self, prefix: &[usize], v: usize) -> Vec<u8> {
        prefix
            .iter()
            .chain(std::iter::once(&v))
            .map(|&u| u8::from(self.m[u * self.n + v] < 0))
            .collect()
    }

    fn extend(&mut self, prefix: &mut Vec<usize>, key: &mut Vec<u8>, used: &mut [bool]) {
        let n = self.n;
        if prefix.len() == n {
            if self.best.as_ref().is_none_or(|b| key[..] < b[..]) {
                self.best = Some(key.clone());
                self.best_perm = prefix.clone();
            }
            return;
        }
        let mut cols: Vec<(Vec<u8>, usize)> = (0..n).filter(|&v| !used[v]).map(|v| (self.column(prefix, v), v)).collect();
        let min = cols.iter().map(|c| c.0.clone()).min().expect("unused vertex");
        cols.retain(|c| c.0 == min);
        let start = key.len();
        key.extend_from_slice(&min);
        if let Some(b) = &self.best {
            if key[..] > b[..key.len()] {
                key.truncate(start);
                return;
            }
        }
        // vertices with identical rows on the unused part are interchangeable
        let mut seen: Vec<Vec<i64>> = Vec::new();
        for (_, v) in cols {
            let sig: Vec<i64> = (0..n).map(|u| if u == v { 2 } else { self.m[v * n + u] }).collect();
            if seen.contains(&sig) {
                continue;
            }
            seen.push(sig);
            used[v] = true;
            prefix.push(v);
            self.extend(prefix, key, used);
            prefix.pop();
            used[v] = false;
        }
        key.truncate(start);
    }
}

/// Lexicographically least representative of `b` under simultaneous signed
/// permutations.
pub fn canonical_form(b: &PmOneMatrix) -> Result<PmOneMatrix, SearchError> {
    let n = b.order();
    if n > CANONICAL_ORDER_CAP {
        return Err(SearchError::OrderTooLarge {
            order: n,
            cap: CANONICAL_ORDER_CAP,
        });
    }
    let mut best: Option<(Vec<u8>, Vec<i64>, Vec<usize>)> = None;
    let min_diag = (0..n).map(|v| u8::from(b.get(v, v) < 0)).min().unwrap_or(0);
    for v0 in (0..n).filter(|&v| u8::from(b.get(v, v) < 0) == min_diag) {
        // switching that makes row v0 all +1
        let d: Vec<i64> = (0..n).map(|u| if u == v0 { 1 } else { b.get(v0, u) }).collect();
        let m: Vec<i64> = (0..n * n).map(|x| d[x / n] * d[x % n] * b.get(x / n, x % n)).collect();
        let mut c = Canon {
            m: &m,
            n,
            best: best.as_ref().map(|b| b.0.clone()),
            best_perm: Vec::new(),
        };
        let mut used = vec![false; n];
        used[v0] = true;
        let mut prefix = vec![v0];
        let mut key = vec![min_diag];
        c.extend(&mut prefix, &mut key, &mut used);
        if !c.best_perm.is_empty() {
            let key = c.best.expect("set with perm");
            let perm = c.best_perm;
            best = Some((key, m.clone(), perm));
        }
    }
    let (_, m, perm) = best.expect("n ≥ 1");
    let out = IntSymMatrix::from_fn(n, |i, j| m[perm[i] * n + perm[j]]).expect("symmetric");
    Ok(PmOneMatrix::new(out).expect("±1"))
}

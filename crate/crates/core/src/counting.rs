//! Direct counters for paths, cycles and cliques, and the finite-n counting
//! bounds for hosts in which every pair of vertices has at most `t - 1`
//! common neighbours.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::constructions::turan_class_sizes;
use crate::embed::CopyCount;
use crate::error::{precondition, Error, Result};
use crate::graph::{Graph, Ones};

fn copy_count(value: u128, pattern: Graph, host: &Graph) -> CopyCount {
    CopyCount {
        value: BigUint::from(value),
        pattern,
        host_size: host.order(),
    }
}

fn par_sum(n: usize, f: impl Fn(usize) -> u128 + Sync + Send) -> u128 {
    if n >= 24 {
        (0..n).into_par_iter().map(f).sum()
    } else {
        (0..n).map(f).sum()
    }
}

/// Number of `k`-vertex paths (as subgraphs).
pub fn count_paths(g: &Graph, k: usize) -> Result<CopyCount> {
    if k == 0 {
        return precondition("path length k must be at least 1");
    }
    let n = g.order();
    if k == 1 {
        return Ok(copy_count(n as u128, Graph::path(1), g));
    }
    fn walk(g: &Graph, v: usize, left: usize, on: &mut [bool]) -> u128 {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for w in g.neighbors(v) {
            if !on[w] {
                on[w] = true;
                total += walk(g, w, left - 1, on);
                on[w] = false;
            }
        }
        total
    }
    let ordered = par_sum(n, |s| {
        let mut on = vec![false; n];
        on[s] = true;
        walk(g, s, k - 1, &mut on)
    });
    Ok(copy_count(ordered / 2, Graph::path(k), g))
}

/// Number of `k`-cycles (as subgraphs).
pub fn count_cycles(g: &Graph, k: usize) -> Result<CopyCount> {
    if k < 3 {
        return precondition(format!("cycle length must be at least 3, got {k}"));
    }
    let n = g.order();
    // Walks from their least vertex `s` through larger vertices only; each
    // cycle is seen once per direction.
    fn walk(g: &Graph, s: usize, v: usize, left: usize, on: &mut [bool]) -> u128 {
        if left == 1 {
            return g.neighbors(v).filter(|&w| w > s && !on[w] && g.has_edge(w, s)).count() as u128;
        }
        let mut total = 0;
        for w in g.neighbors(v) {
            if w > s && !on[w] {
                on[w] = true;
                total += walk(g, s, w, left - 1, on);
                on[w] = false;
            }
        }
        total
    }
    let directed = par_sum(n, |s| {
        let mut on = vec![false; n];
        on[s] = true;
        walk(g, s, s, k - 1, &mut on)
    });
    Ok(copy_count(directed / 2, Graph::cycle(k), g))
}

/// Number of `t`-cliques.
pub fn count_cliques(g: &Graph, t: usize) -> Result<CopyCount> {
    if t == 0 {
        return precondition("clique size t must be at least 1");
    }
    let n = g.order();
    fn grow(g: &Graph, cand: &[u64], left: usize) -> u128 {
        if left == 0 {
            return 1;
        }
        if left == 1 {
            return cand.iter().map(|w| w.count_ones() as u128).sum();
        }
        let mut total = 0;
        for v in Ones::new(cand) {
            // Later members are larger than v and adjacent to it.
            let next: Vec<u64> = cand
                .iter()
                .zip(g.row(v))
                .enumerate()
                .map(|(i, (c, r))| c & r & above_mask(i, v))
                .collect();
            total += grow(g, &next, left - 1);
        }
        total
    }
    let total = par_sum(n, |v| {
        let row: Vec<u64> = g
            .row(v)
            .iter()
            .enumerate()
            .map(|(i, &r)| r & above_mask(i, v))
            .collect();
        grow(g, &row, t - 1)
    });
    Ok(copy_count(total, Graph::complete(t), g))
}

/// Bits of word `i` that index vertices strictly greater than `v`.
fn above_mask(i: usize, v: usize) -> u64 {
    let lo = i * 64;
    if v < lo {
        !0
    } else if v + 1 >= lo + 64 {
        0
    } else {
        !0u64 << (v + 1 - lo)
    }
}

/// Exact number of `t`-cliques in `T_{k-1}(n)`: the elementary symmetric
/// polynomial of degree `t` in the class sizes.
pub fn turan_clique_count(n: usize, k: usize, t: usize) -> Result<BigUint> {
    if t == 0 {
        return precondition("clique size t must be at least 1");
    }
    let sizes = turan_class_sizes(n, k)?;
    let mut e = vec![BigUint::zero(); t + 1];
    e[0] = BigUint::one();
    for s in sizes {
        for j in (1..=t).rev() {
            let add = &e[j - 1] * s;
            e[j] += add;
        }
    }
    Ok(e.swap_remove(t))
}

/// Which inequality a [`BoundReport`] instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormulaId {
    CycleEven,
    CycleOdd,
    Path,
    C4,
    KstEdges,
    TuranClique,
    GreedyCycleLb,
    GreedyPathLb,
    Asymptotic,
}

impl FormulaId {
    pub fn as_str(&self) -> &'static str {
        match self {
            FormulaId::CycleEven => "cycle-even",
            FormulaId::CycleOdd => "cycle-odd",
            FormulaId::Path => "path",
            FormulaId::C4 => "c4",
            FormulaId::KstEdges => "kst-edges",
            FormulaId::TuranClique => "turan-clique",
            FormulaId::GreedyCycleLb => "greedy-cycle-lb",
            FormulaId::GreedyPathLb => "greedy-path-lb",
            FormulaId::Asymptotic => "asymptotic",
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Upper,
    Lower,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Upper => "upper",
            Direction::Lower => "lower",
        })
    }
}

/// One instance of a counting inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub formula: FormulaId,
    pub inputs: Vec<(&'static str, u64)>,
    pub value: BigUint,
    pub direction: Direction,
}

impl BoundReport {
    fn upper(formula: FormulaId, inputs: Vec<(&'static str, u64)>, value: BigUint) -> Self {
        BoundReport {
            formula,
            inputs,
            value,
            direction: Direction::Upper,
        }
    }

    /// The inputs formatted as `name=value` pairs joined by `;`.
    pub fn inputs_string(&self) -> String {
        self.inputs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Upper bound on the number of `C_k` in an `n`-vertex, `e`-edge graph with
/// all codegrees at most `t - 1`.
///
/// Even `k`: every cycle arises `2k` times from a choice of its alternate
/// vertices (`n^{k/2}` ways) and their common neighbours. Odd `k`: from an
/// oriented edge, `(k-3)/2` further alternate vertices and the common
/// neighbours in between.
pub fn certified_cycle_bound(n: u64, e: u64, t: u64, k: u32) -> Result<BoundReport> {
    if t < 2 || k < 5 {
        return precondition(format!("cycle bound needs t >= 2 and k >= 5, got t = {t}, k = {k}"));
    }
    let inputs = vec![("n", n), ("e", e), ("t", t), ("k", k as u64)];
    Ok(if k.is_multiple_of(2) {
        let v = (big(t - 1) * big(n)).pow(k / 2) / big(2 * k as u64);
        BoundReport::upper(FormulaId::CycleEven, inputs, v)
    } else {
        let v = big(e) * big(n).pow((k - 3) / 2) * big(t - 1).pow((k - 1) / 2) / big(k as u64);
        BoundReport::upper(FormulaId::CycleOdd, inputs, v)
    })
}

/// Upper bound on the number of `k`-vertex paths under the same hypotheses.
pub fn certified_path_bound(n: u64, e: u64, t: u64, k: u32) -> Result<BoundReport> {
    if t < 2 || k < 2 {
        return precondition(format!("path bound needs t >= 2 and k >= 2, got t = {t}, k = {k}"));
    }
    let inputs = vec![("n", n), ("e", e), ("t", t), ("k", k as u64)];
    let v = if k % 2 == 1 {
        big(n).pow(k.div_ceil(2)) * big(t - 1).pow((k - 1) / 2) / big(2)
    } else {
        big(2 * e) * big(n).pow((k - 2) / 2) * big(t - 1).pow((k - 2) / 2) / big(2)
    };
    Ok(BoundReport::upper(FormulaId::Path, inputs, v))
}

/// Upper bound on the number of 4-cycles: each is fixed by a diagonal pair
/// and two of its common neighbours, and has two diagonals.
pub fn certified_c4_bound(n: u64, t: u64) -> Result<BoundReport> {
    if t < 2 {
        return precondition(format!("C4 bound needs t >= 2, got {t}"));
    }
    let pairs = big(n) * big(n.saturating_sub(1)) / big(2);
    let tpairs = big(t - 1) * big(t.saturating_sub(2)) / big(2);
    Ok(BoundReport::upper(
        FormulaId::C4,
        vec![("n", n), ("t", t)],
        pairs * tpairs / big(2),
    ))
}

/// Greedy lower bounds for the orbit graph `F_{q,t}` on `n = (q^2-1)/(t-1)`
/// vertices: `n (q-k+1)^{k-1} / 2` paths on `k` vertices and, for `k >= 5`,
/// `n (q-t(k-3))^{k-2} (t-1) / 2k` cycles of length `k`.
///
/// Requires `q > t(k-3)` and `q >= k` so that both greedy factors are
/// positive.
pub fn greedy_lower_certificates(q: u64, t: u64, k: u32) -> Result<(BoundReport, Option<BoundReport>)> {
    if t < 2 || crate::field::prime_power(q as usize).is_none() || !(q - 1).is_multiple_of(t - 1) {
        return precondition(format!("(q, t) = ({q}, {t}) is not a valid orbit-graph parameter pair"));
    }
    if k < 2 {
        return precondition(format!("k must be at least 2, got {k}"));
    }
    let kk = k as u64;
    if q < kk || q <= t * kk.saturating_sub(3) {
        return precondition(format!(
            "greedy certificates need q >= k and q > t(k-3); got q = {q}, t = {t}, k = {k}"
        ));
    }
    let n = (q * q - 1) / (t - 1);
    let inputs = vec![("q", q), ("t", t), ("k", kk), ("n", n)];
    let path = BoundReport {
        formula: FormulaId::GreedyPathLb,
        inputs: inputs.clone(),
        value: big(n) * big(q - kk + 1).pow(k - 1) / big(2),
        direction: Direction::Lower,
    };
    let cycle = (k >= 5).then(|| BoundReport {
        formula: FormulaId::GreedyCycleLb,
        inputs,
        value: big(n) * big(q - t * (kk - 3)).pow(k - 2) * big(t - 1) / big(2 * kk),
        direction: Direction::Lower,
    });
    Ok((path, cycle))
}

/// Leading-term families available to [`asymptotic_predictor`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predictor {
    /// `(t-1)^{k/2} n^{k/2} / 2k` cycles of length `k`.
    Cycle,
    /// `(t-1)^{(k-1)/2} n^{(k+1)/2} / 2` paths on `k` vertices.
    Path,
    /// `binom(t-1, 2) n^2 / 4` four-cycles.
    C4,
    /// `sqrt(t-1) n^{3/2} / 2` edges.
    KstEdges,
    /// `binom(k-1, t) (n/(k-1))^t` cliques of size `t` in `K_k`-free graphs.
    TuranClique,
}

impl FromStr for Predictor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cycle" | "cycle-even" | "cycle-odd" => Predictor::Cycle,
            "path" => Predictor::Path,
            "c4" => Predictor::C4,
            "kst-edges" => Predictor::KstEdges,
            "turan-clique" => Predictor::TuranClique,
            other => return precondition(format!("unknown formula id {other:?}")),
        })
    }
}

/// A predicted value: exact when every half-integer power involved is of a
/// perfect square, otherwise a floating-point approximation.
#[derive(Clone, Debug, PartialEq)]
pub enum Predicted {
    Exact(BigRational),
    Approx(f64),
}

impl Predicted {
    pub fn to_f64(&self) -> f64 {
        match self {
            Predicted::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Predicted::Approx(x) => *x,
        }
    }
}

impl fmt::Display for Predicted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicted::Exact(r) => write!(f, "{r}"),
            Predicted::Approx(x) => write!(f, "{x}"),
        }
    }
}

/// `x^{num/2}`, exact when possible.
fn half_power(x: u64, num: u32) -> Option<BigUint> {
    if num.is_multiple_of(2) {
        return Some(big(x).pow(num / 2));
    }
    let r = x.sqrt();
    (r * r == x).then(|| big(r).pow(num))
}

/// Leading term of the asymptotic count; for diagnostics only.
pub fn asymptotic_predictor(which: Predictor, n: u64, t: u64, k: u32) -> Result<Predicted> {
    let ratio = |num: Option<BigUint>, den: BigUint, approx: f64| match num {
        Some(v) => Predicted::Exact(BigRational::new(v.into(), den.into())),
        None => Predicted::Approx(approx),
    };
    let (nf, tf, kf) = (n as f64, t as f64, k as f64);
    Ok(match which {
        Predictor::Cycle => {
            if t < 2 || k < 3 {
                return precondition("cycle predictor needs t >= 2 and k >= 3");
            }
            let num = half_power((t - 1) * n, k).or_else(|| Some(half_power(t - 1, k)? * half_power(n, k)?));
            ratio(num, big(2 * k as u64), ((tf - 1.0) * nf).powf(kf / 2.0) / (2.0 * kf))
        }
        Predictor::Path => {
            if t < 2 || k < 1 {
                return precondition("path predictor needs t >= 2 and k >= 1");
            }
            let num = half_power(t - 1, k - 1).and_then(|a| Some(a * half_power(n, k + 1)?));
            ratio(
                num,
                big(2),
                (tf - 1.0).powf((kf - 1.0) / 2.0) * nf.powf((kf + 1.0) / 2.0) / 2.0,
            )
        }
        Predictor::C4 => {
            if t < 2 {
                return precondition("C4 predictor needs t >= 2");
            }
            let num = big((t - 1) * (t - 2) / 2) * big(n).pow(2);
            ratio(Some(num), big(4), 0.0)
        }
        Predictor::KstEdges => {
            if t < 2 {
                return precondition("edge predictor needs t >= 2");
            }
            let num = half_power(t - 1, 1).and_then(|a| Some(a * half_power(n, 3)?));
            ratio(num, big(2), (tf - 1.0).sqrt() * nf.powf(1.5) / 2.0)
        }
        Predictor::TuranClique => {
            if k < 2 {
                return precondition("clique predictor needs k >= 2");
            }
            let parts = (k - 1) as u64;
            let choose = binomial(parts, t);
            let v = BigRational::new((choose * big(n).pow(t as u32)).into(), big(parts).pow(t as u32).into());
            Predicted::Exact(v)
        }
    })
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * big(n - i) / big(i + 1);
    }
    acc
}

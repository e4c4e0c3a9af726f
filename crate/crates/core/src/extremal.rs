//! `ex(n, H, F)`: exhaustive values at small `n`, randomized and local-search
//! lower bounds beyond, and the general inequalities relating it to classical
//! Turán numbers and shadows.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::canon::{automorphism_count, canonical_form};
use crate::embed::{count_embeddings, find_embedding, find_embedding_through};
use crate::enumerate::fold_graphs;
use crate::error::{precondition, Error, Result};
use crate::graph::Graph;

/// Default largest `n` for exhaustive search.
pub const DEFAULT_LIMIT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Exact,
    HeuristicLower,
    RandomLower,
    CertifiedUpper,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::HeuristicLower => "heuristic-lower",
            Method::RandomLower => "random-lower",
            Method::CertifiedUpper => "certified-upper",
        })
    }
}

/// A computed value of `ex(n, H, {F_i})` with a witness graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalRecord {
    pub n: usize,
    pub pattern: Graph,
    pub forbidden: Vec<Graph>,
    pub value: BigUint,
    pub witness: Graph,
    pub method: Method,
    pub seed: Option<u64>,
}

/// Counts copies of a fixed pattern, caching `|Aut(H)|`.
struct Counter<'a> {
    pattern: &'a Graph,
    aut: u128,
}

impl<'a> Counter<'a> {
    fn new(pattern: &'a Graph) -> Self {
        let aut = if pattern.is_empty() {
            1
        } else {
            u128::try_from(automorphism_count(pattern)).expect("pattern automorphism group fits in u128")
        };
        Counter { pattern, aut }
    }

    fn count(&self, g: &Graph) -> u128 {
        count_embeddings(self.pattern, g) / self.aut
    }
}

fn check_forbidden(forbidden: &[Graph]) -> Result<()> {
    if let Some(f) = forbidden.iter().find(|f| f.order() <= 1) {
        return precondition(format!(
            "forbidden graphs need at least 2 vertices (got one with {})",
            f.order()
        ));
    }
    Ok(())
}

struct Best {
    value: u128,
    graph: Graph,
    label: Option<Vec<u8>>,
}

impl Best {
    fn label(&mut self) -> &[u8] {
        if self.label.is_none() {
            self.label = Some(canonical_form(&self.graph));
        }
        self.label.as_deref().unwrap()
    }

    /// Larger value wins; ties go to the least canonical label.
    fn merge(mut a: Best, mut b: Best) -> Best {
        match a.value.cmp(&b.value) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => {
                if b.label() < a.label() {
                    b
                } else {
                    a
                }
            }
        }
    }
}

/// Exhaustive `ex(n, H, {F_i})` for `n <= limit`.
///
/// Every isomorphism class of `n`-vertex graphs avoiding all of `forbidden`
/// is generated by canonical augmentation (pruning at every step, since
/// freeness is hereditary) and the copies of `H` counted. The witness is the
/// maximiser with the least canonical label. With nothing forbidden the
/// answer is `K_n`.
pub fn exact_extremal(n: usize, pattern: &Graph, forbidden: &[Graph], limit: usize) -> Result<ExtremalRecord> {
    if pattern.order() == 0 {
        return precondition("pattern H needs at least one vertex");
    }
    check_forbidden(forbidden)?;
    if n > limit {
        return Err(Error::LimitExceeded {
            what: "n",
            got: n,
            limit,
        });
    }
    let counter = Counter::new(pattern);
    let record = |value: u128, witness: Graph| ExtremalRecord {
        n,
        pattern: pattern.clone(),
        forbidden: forbidden.to_vec(),
        value: value.into(),
        witness,
        method: Method::Exact,
        seed: None,
    };
    if forbidden.is_empty() {
        let k = Graph::complete(n);
        return Ok(record(counter.count(&k), k));
    }
    let leaf = |g: &Graph| Best {
        value: counter.count(g),
        graph: g.clone(),
        label: None,
    };
    match fold_graphs(n, forbidden, false, &leaf, &Best::merge) {
        Some(mut best) => {
            let label = best.label().to_vec();
            let witness = crate::format::from_graph6(std::str::from_utf8(&label).expect("graph6 is ASCII"))?;
            Ok(record(best.value, witness))
        }
        None => precondition(format!("no {n}-vertex graph avoids every forbidden graph")),
    }
}

/// Adds `(u, v)` when the result still avoids every forbidden graph.
fn try_add(g: &mut Graph, u: usize, v: usize, forbidden: &[Graph]) -> bool {
    if g.has_edge(u, v) {
        return false;
    }
    g.add_edge(u, v);
    if forbidden.iter().any(|f| find_embedding_through(f, g, u).is_some()) {
        g.remove_edge(u, v);
        return false;
    }
    true
}

fn random_pair(rng: &mut ChaCha8Rng, n: usize) -> (usize, usize) {
    let u = rng.gen_range(0..n);
    let mut v = rng.gen_range(0..n - 1);
    if v >= u {
        v += 1;
    }
    (u.min(v), u.max(v))
}

/// One hill-climbing run from a seeded random F-free start.
fn climb(n: usize, counter: &Counter<'_>, forbidden: &[Graph], seed: u64, steps: usize) -> Best {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    if n >= 2 {
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        pairs.shuffle(&mut rng);
        for (u, v) in pairs {
            if rng.gen_bool(0.5) {
                try_add(&mut g, u, v, forbidden);
            }
        }
    }
    let mut value = counter.count(&g);
    let mut best = (value, g.clone());
    for _ in 0..if n >= 2 { steps } else { 0 } {
        let (u, v) = random_pair(&mut rng, n);
        let mut next = g.clone();
        if next.has_edge(u, v) {
            next.remove_edge(u, v);
            if rng.gen_bool(0.7) {
                // Swap: move the edge elsewhere.
                let (x, y) = random_pair(&mut rng, n);
                if (x, y) == (u, v) || !try_add(&mut next, x, y, forbidden) {
                    continue;
                }
            }
        } else if !try_add(&mut next, u, v, forbidden) {
            continue;
        }
        let nv = counter.count(&next);
        if nv >= value {
            g = next;
            value = nv;
            if value > best.0 {
                best = (value, g.clone());
            }
        }
    }
    Best {
        value: best.0,
        graph: best.1,
        label: None,
    }
}

/// Seeded local search for a large `ex(n, H, F)` lower bound.
///
/// The `iterations` budget is split over restarts of at most 2000 steps. Each
/// restart draws its own seed from the master seed, so the result does not
/// depend on how restarts are scheduled across threads.
pub fn heuristic_lower(
    n: usize,
    pattern: &Graph,
    forbidden: &[Graph],
    seed: u64,
    iterations: usize,
) -> Result<ExtremalRecord> {
    if pattern.order() == 0 {
        return precondition("pattern H needs at least one vertex");
    }
    check_forbidden(forbidden)?;
    let counter = Counter::new(pattern);
    let restarts = iterations.div_ceil(2000).max(1);
    let steps = iterations / restarts;
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..restarts).map(|_| master.next_u64()).collect();
    let best = seeds
        .into_par_iter()
        .map(|s| climb(n, &counter, forbidden, s, steps))
        .reduce_with(Best::merge)
        .expect("at least one restart");
    Ok(ExtremalRecord {
        n,
        pattern: pattern.clone(),
        forbidden: forbidden.to_vec(),
        value: best.value.into(),
        witness: best.graph,
        method: Method::HeuristicLower,
        seed: Some(seed),
    })
}

/// Inputs of the random-deletion construction.
#[derive(Clone, Debug)]
pub struct RandomConstructionParams {
    pub n: usize,
    pub h: Graph,
    pub f: Graph,
    /// Coefficient in `p = c n^{-(|F|-2)/(e(F)-e(H))}`.
    pub c: f64,
    pub seed: u64,
}

impl RandomConstructionParams {
    /// Edge probability, clamped to `[0, 1]`.
    pub fn p(&self) -> Result<f64> {
        let (ef, eh) = (self.f.edge_count(), self.h.edge_count());
        if ef <= eh {
            return precondition(format!(
                "random construction needs e(F) > e(H), got e(F) = {ef}, e(H) = {eh}"
            ));
        }
        let expo = (self.f.order() as f64 - 2.0) / (ef - eh) as f64;
        Ok((self.c * (self.n as f64).powf(-expo)).clamp(0.0, 1.0))
    }

    /// The coefficient `|H|^{|H|(e(F)-e(H))} + 1` used in the existence
    /// argument, as a float (usually large enough to force `p = 1`).
    pub fn reference_c(h: &Graph, f: &Graph) -> f64 {
        let diff = f.edge_count() as f64 - h.edge_count() as f64;
        (h.order() as f64).powf(h.order() as f64 * diff) + 1.0
    }
}

/// Samples `G(n, p)`, then repeatedly finds a copy of `F` and deletes its
/// lexicographically least edge until none is left.
pub fn random_deletion_lower(params: &RandomConstructionParams) -> Result<ExtremalRecord> {
    let p = params.p()?;
    if params.f.edge_count() == 0 {
        return precondition("F must have an edge");
    }
    let n = params.n;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut g = Graph::new(n);
    for v in 1..n {
        for u in 0..v {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v);
            }
        }
    }
    let f_edges = params.f.edges();
    while let Some(map) = find_embedding(&params.f, &g) {
        let (u, v) = f_edges
            .iter()
            .map(|&(a, b)| (map[a].min(map[b]), map[a].max(map[b])))
            .min()
            .expect("F has an edge");
        g.remove_edge(u, v);
    }
    let value = Counter::new(&params.h).count(&g);
    Ok(ExtremalRecord {
        n,
        pattern: params.h.clone(),
        forbidden: vec![params.f.clone()],
        value: value.into(),
        witness: g,
        method: Method::RandomLower,
        seed: Some(params.seed),
    })
}

/// `|H| - e(H)(|F|-2)/(e(F)-e(H))`, the growth exponent of the random
/// construction. Negative values are returned as they are.
pub fn exponent_lower(h: &Graph, f: &Graph) -> Result<BigRational> {
    let (eh, ef) = (h.edge_count() as i64, f.edge_count() as i64);
    if ef <= eh {
        return precondition(format!("exponent needs e(F) > e(H), got e(F) = {ef}, e(H) = {eh}"));
    }
    let vh = BigRational::from_integer(BigInt::from(h.order()));
    Ok(vh - BigRational::new(BigInt::from(eh * (f.order() as i64 - 2)), BigInt::from(ef - eh)))
}

/// `max(ex(n, F) - ex(n, H), 0)`.
pub fn subtraction_bound(ex_f: &BigUint, ex_h: &BigUint) -> BigUint {
    if ex_f > ex_h {
        ex_f - ex_h
    } else {
        BigUint::zero()
    }
}

/// `binom(x, k)` for real `x`.
pub fn binom_real(x: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (x - j as f64) / (j as f64 + 1.0))
}

/// The `x >= k` with `binom(x, k) = m`, by bisection (snapped to an integer
/// when one is exact).
pub fn kk_solve(m: u64, k: u32) -> f64 {
    assert!(m >= 1 && k >= 1, "kk_solve needs m >= 1 and k >= 1");
    let target = m as f64;
    let mut lo = k as f64;
    let mut hi = lo.max(1.0);
    while binom_real(hi, k) < target {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if binom_real(mid, k) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (rl, rh) = ((binom_real(lo, k) - target).abs(), (binom_real(hi, k) - target).abs());
    let x = if rl <= rh { lo } else { hi };
    let r = x.round();
    if r >= k as f64 && (binom_real(r, k) - target).abs() <= (binom_real(x, k) - target).abs() {
        r
    } else {
        x
    }
}

/// Shadow lower bound: `m` edges of a `k`-uniform hypergraph have at least
/// `binom(x, i)` distinct `i`-subsets, where `binom(x, k) = m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShadowBound {
    pub m: u64,
    pub k: u32,
    pub i: u32,
    pub x: f64,
    pub value: f64,
}

pub fn kk_shadow_bound(m: u64, k: u32, i: u32) -> Result<ShadowBound> {
    if i < 1 || i > k {
        return precondition(format!("shadow level must satisfy 1 <= i <= k, got i = {i}, k = {k}"));
    }
    if m == 0 {
        return Ok(ShadowBound {
            m,
            k,
            i,
            x: k as f64,
            value: 0.0,
        });
    }
    let x = kk_solve(m, k);
    Ok(ShadowBound {
        m,
        k,
        i,
        x,
        value: binom_real(x, i),
    })
}

/// `ex(n, F)^{t/2}`, an upper bound for `ex(n, K_t, F)`.
pub fn kk_clique_bound(ex_f: u64, t: u32) -> Result<f64> {
    if t < 2 {
        return precondition(format!("clique bound needs t >= 2, got {t}"));
    }
    Ok((ex_f as f64).powf(t as f64 / 2.0))
}

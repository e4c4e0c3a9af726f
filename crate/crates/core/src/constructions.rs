//! Builders for the named graph families.
//!
//! The families that grow with a multiplicity parameter `r` (stars on a
//! cycle, bananas, Q- and R-graphs) number their vertices so that the graph
//! for `r` is the subgraph induced on the first vertices of the graph for any
//! larger `r`. Embeddings found at small `r` therefore remain valid verbatim
//! at larger `r`.

use std::collections::HashSet;
use std::fmt;

use crate::canon::canonical_form;
use crate::error::{precondition, Result};
use crate::field::Field;
use crate::graph::Graph;

/// The complete `(k-1)`-partite graph on `n` vertices with balanced classes.
pub fn turan_graph(n: usize, k: usize) -> Result<Graph> {
    Ok(Graph::complete_multipartite(&turan_class_sizes(n, k)?))
}

/// Class sizes of `T_{k-1}(n)`, largest first.
pub fn turan_class_sizes(n: usize, k: usize) -> Result<Vec<usize>> {
    if k < 2 {
        return precondition(format!("Turán graph needs k >= 2, got k = {k}"));
    }
    let parts = k - 1;
    Ok((0..parts).map(|i| n / parts + usize::from(i < n % parts)).collect())
}

/// Replaces vertex `v` by an independent set of `sizes[v]` vertices and each
/// edge by a complete bipartite graph. Blocks are numbered consecutively.
pub fn blowup(g: &Graph, sizes: &[usize]) -> Result<Graph> {
    if sizes.len() != g.order() {
        return precondition(format!(
            "blow-up needs one size per vertex: {} sizes for {} vertices",
            sizes.len(),
            g.order()
        ));
    }
    let mut start = Vec::with_capacity(sizes.len());
    let mut total = 0;
    for &s in sizes {
        start.push(total);
        total += s;
    }
    let mut b = Graph::new(total);
    for (u, v) in g.edges() {
        for x in start[u]..start[u] + sizes[u] {
            for y in start[v]..start[v] + sizes[v] {
                b.add_edge(x, y);
            }
        }
    }
    Ok(b)
}

/// The orbit graph over GF(q): vertices are the orbits of the nonzero vectors
/// of GF(q)^2 under scaling by the subgroup `H` of order `t - 1`, and
/// `<(a,b)>` is adjacent to `<(x,y)>` when `ax + by` lies in `H`.
/// Loops are dropped.
pub fn furedi_graph(q: usize, t: usize) -> Result<Graph> {
    if t < 2 {
        return precondition(format!("t must be at least 2, got {t}"));
    }
    let f = Field::new(q)?;
    if !(q - 1).is_multiple_of(t - 1) {
        return precondition(format!("t - 1 = {} does not divide q - 1 = {}", t - 1, q - 1));
    }
    let h = f.subgroup(t - 1);
    let mut in_h = vec![false; q];
    for &x in &h {
        in_h[x] = true;
    }
    // Orbit ids, numbered by least member in the order x*q + y.
    let mut id = vec![usize::MAX; q * q];
    let mut reps = Vec::new();
    for p in 1..q * q {
        if id[p] == usize::MAX {
            let (x, y) = (p / q, p % q);
            for &s in &h {
                id[f.mul(s, x) * q + f.mul(s, y)] = reps.len();
            }
            reps.push((x, y));
        }
    }
    let mut g = Graph::new(reps.len());
    for (v, &(a, b)) in reps.iter().enumerate() {
        for &s in &h {
            if b != 0 {
                let binv = f.inv(b);
                for x in 0..q {
                    let y = f.mul(f.add(s, f.neg(f.mul(a, x))), binv);
                    let w = id[x * q + y];
                    if w != v {
                        g.add_edge(v, w);
                    }
                }
            } else {
                let x = f.mul(s, f.inv(a));
                for y in 0..q {
                    let w = id[x * q + y];
                    if w != v {
                        g.add_edge(v, w);
                    }
                }
            }
        }
    }
    debug_assert!(g.edges().iter().all(|&(u, w)| {
        let ((a, b), (x, y)) = (reps[u], reps[w]);
        in_h[f.add(f.mul(a, x), f.mul(b, y))]
    }));
    Ok(g)
}

/// `C_k` on `0..k` with `r` pendant vertices attached to vertex 0.
pub fn c_star(k: usize, r: usize) -> Result<Graph> {
    if k < 3 {
        return precondition(format!("cycle length must be at least 3, got {k}"));
    }
    let mut g = Graph::cycle(k);
    for _ in 0..r {
        g = g.with_vertex([0]);
    }
    Ok(g)
}

/// `C_k` (k = 4 or 5) with `r` pendants on vertex 0 and `r` on vertex 2.
/// Pendants alternate between the two anchors.
pub fn c_double_star(k: usize, r: usize) -> Result<Graph> {
    if k != 4 && k != 5 {
        return precondition(format!("double star is defined for k = 4 or 5, got {k}"));
    }
    let mut g = Graph::cycle(k);
    for _ in 0..r {
        g = g.with_vertex([0]).with_vertex([2]);
    }
    Ok(g)
}

/// `r` internally disjoint paths of length `t` between main vertices 0 and 1.
pub fn banana(t: usize, r: usize) -> Result<Graph> {
    if t < 2 || r < 1 {
        return precondition(format!("banana needs t >= 2 and r >= 1, got t = {t}, r = {r}"));
    }
    let mut g = Graph::new(2 + r * (t - 1));
    for i in 0..r {
        let inner: Vec<usize> = (0..t - 1).map(|j| 2 + i * (t - 1) + j).collect();
        add_path(&mut g, 0, &inner, 1);
    }
    Ok(g)
}

fn add_path(g: &mut Graph, from: usize, inner: &[usize], to: usize) {
    let mut prev = from;
    for &x in inner {
        g.add_edge(prev, x);
        prev = x;
    }
    g.add_edge(prev, to);
}

/// A banana `B_t^r` on main vertices 0, 1 plus a 0–1 path of length `k - t`.
pub fn q_graph(k: usize, r: usize, t: usize) -> Result<Graph> {
    if t < 2 || t >= k || r < 1 {
        return precondition(format!(
            "Q-graph needs 2 <= t < k and r >= 1, got k = {k}, r = {r}, t = {t}"
        ));
    }
    let main = k - t - 1;
    let mut g = Graph::new(k + (r - 1) * (t - 1));
    add_path(&mut g, 0, &(2..2 + main).collect::<Vec<_>>(), 1);
    for i in 0..r {
        let base = 2 + main + i * (t - 1);
        add_path(&mut g, 0, &(base..base + t - 1).collect::<Vec<_>>(), 1);
    }
    Ok(g)
}

/// Parameters of an R-graph: bananas of lengths `a` and `c` joined in a ring
/// by paths of lengths `b` and `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RParams {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl RParams {
    pub fn k(&self) -> usize {
        self.a + self.b + self.c + self.d
    }

    pub fn vertex_count(&self, r: usize) -> usize {
        4 - usize::from(self.b == 0) - usize::from(self.d == 0)
            + r * (self.a - 1)
            + r * (self.c - 1)
            + self.b.saturating_sub(1)
            + self.d.saturating_sub(1)
    }
}

impl fmt::Display for RParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.c, self.d)
    }
}

/// The R-graph on the ring `u -a- v -b- w -c- x -d- u`, where the `a` and `c`
/// segments are bananas of multiplicity `r` and a zero-length segment
/// identifies its ends.
pub fn r_graph(k: usize, r: usize, p: RParams) -> Result<Graph> {
    let RParams { a, b, c, d } = p;
    if a < 2 || c < 2 || r < 1 || p.k() != k {
        return precondition(format!(
            "R-graph needs a, c >= 2, r >= 1 and a + b + c + d = k; got k = {k}, r = {r}, {p}"
        ));
    }
    let mut g = Graph::new(p.vertex_count(r));
    let mut next = 2;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let (u, v) = (0, 1);
    let w = if b == 0 { v } else { fresh() };
    let x = if d == 0 { u } else { fresh() };
    let b_inner: Vec<usize> = (0..b.saturating_sub(1)).map(|_| fresh()).collect();
    let d_inner: Vec<usize> = (0..d.saturating_sub(1)).map(|_| fresh()).collect();
    if b > 0 {
        add_path(&mut g, v, &b_inner, w);
    }
    if d > 0 {
        add_path(&mut g, x, &d_inner, u);
    }
    for _ in 0..r {
        let ai: Vec<usize> = (0..a - 1).map(|_| fresh()).collect();
        let ci: Vec<usize> = (0..c - 1).map(|_| fresh()).collect();
        add_path(&mut g, u, &ai, v);
        add_path(&mut g, w, &ci, x);
    }
    Ok(g)
}

/// Every parameter tuple `(a,b,c,d)` with `a, c >= 2` summing to `k`, in
/// lexicographic order.
pub fn r_params(k: usize) -> Vec<RParams> {
    let mut out = Vec::new();
    for a in 2..=k {
        for b in 0..=k - a {
            for c in 2..=k - a - b {
                out.push(RParams {
                    a,
                    b,
                    c,
                    d: k - a - b - c,
                });
            }
        }
    }
    out
}

/// One R-graph per isomorphism class, keeping the lexicographically first
/// parameter tuple of each class.
pub fn all_r_graphs(k: usize, r: usize) -> Result<Vec<(RParams, Graph)>> {
    if k < 5 {
        return precondition(format!("R-graph families are used for k >= 5, got {k}"));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in r_params(k) {
        let g = r_graph(k, r, p)?;
        if seen.insert(canonical_form(&g)) {
            out.push((p, g));
        }
    }
    Ok(out)
}

/// A named family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Turan { n: usize, k: usize },
    Blowup { base: Graph, sizes: Vec<usize> },
    Furedi { q: usize, t: usize },
    CStar { k: usize, r: usize },
    CDoubleStar { k: usize, r: usize },
    Banana { t: usize, r: usize },
    QGraph { k: usize, r: usize, t: usize },
    RGraph { k: usize, r: usize, p: RParams },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            FamilySpec::Turan { n, k } => turan_graph(*n, *k),
            FamilySpec::Blowup { base, sizes } => blowup(base, sizes),
            FamilySpec::Furedi { q, t } => furedi_graph(*q, *t),
            FamilySpec::CStar { k, r } => c_star(*k, *r),
            FamilySpec::CDoubleStar { k, r } => c_double_star(*k, *r),
            FamilySpec::Banana { t, r } => banana(*t, *r),
            FamilySpec::QGraph { k, r, t } => q_graph(*k, *r, *t),
            FamilySpec::RGraph { k, r, p } => r_graph(*k, *r, *p),
        }
    }

    /// Groups of vertex blocks of the built graph such that swapping two
    /// blocks of a group (vertex by vertex) is an automorphism.
    pub fn interchangeable_blocks(&self) -> Vec<Vec<Vec<usize>>> {
        let paths = |base: usize, count: usize, stride: usize, len: usize| -> Vec<Vec<usize>> {
            (0..count)
                .map(|i| (base + i * stride..base + i * stride + len).collect())
                .collect()
        };
        match self {
            FamilySpec::CStar { k, r } => vec![paths(*k, *r, 1, 1)],
            FamilySpec::CDoubleStar { k, r } => vec![paths(*k, *r, 2, 1), paths(k + 1, *r, 2, 1)],
            FamilySpec::Banana { t, r } => vec![paths(2, *r, t - 1, t - 1)],
            FamilySpec::QGraph { k, r, t } => vec![paths(k - t + 1, *r, t - 1, t - 1)],
            FamilySpec::RGraph { r, p, .. } => {
                let RParams { a, b, c, d } = *p;
                let base = 2 + usize::from(b > 0) + usize::from(d > 0) + b.saturating_sub(1) + d.saturating_sub(1);
                let stride = a + c - 2;
                vec![paths(base, *r, stride, a - 1), paths(base + a - 1, *r, stride, c - 1)]
            }
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Turan { n, k } => write!(f, "turan(n={n},k={k})"),
            FamilySpec::Blowup { base, sizes } => {
                write!(f, "blowup({},{sizes:?})", crate::format::to_graph6(base))
            }
            FamilySpec::Furedi { q, t } => write!(f, "furedi(q={q},t={t})"),
            FamilySpec::CStar { k, r } => write!(f, "c_star(k={k},r={r})"),
            FamilySpec::CDoubleStar { k, r } => write!(f, "c_double_star(k={k},r={r})"),
            FamilySpec::Banana { t, r } => write!(f, "banana(t={t},r={r})"),
            FamilySpec::QGraph { k, r, t } => write!(f, "q_graph(k={k},r={r},t={t})"),
            FamilySpec::RGraph { k, r, p } => write!(f, "r_graph(k={k},r={r},{p})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{are_isomorphic, automorphism_count};
    use crate::embed::{count_copies, is_free, max_codegree};

    fn rp(a: usize, b: usize, c: usize, d: usize) -> RParams {
        RParams { a, b, c, d }
    }

    #[test]
    fn turan_examples() {
        let g = turan_graph(4, 3).unwrap();
        assert!(are_isomorphic(&g, &Graph::complete_bipartite(2, 2)));
        assert_eq!(turan_graph(6, 4).unwrap().edge_count(), 12);
        assert_eq!(turan_graph(7, 3).unwrap().edge_count(), 12);
        assert_eq!(turan_class_sizes(5, 4).unwrap(), vec![2, 2, 1]);
        assert!(turan_graph(5, 1).is_err());
        assert_eq!(turan_graph(0, 3).unwrap().order(), 0);
    }

    #[test]
    fn blowup_examples() {
        let b = blowup(&Graph::complete(2), &[2, 3]).unwrap();
        assert!(are_isomorphic(&b, &Graph::complete_bipartite(2, 3)));
        let c = blowup(&Graph::cycle(5), &[2; 5]).unwrap();
        assert_eq!((c.order(), c.edge_count()), (10, 20));
        assert!(is_free(&c, &Graph::complete(3)));
        assert_eq!(blowup(&Graph::new(1), &[5]).unwrap(), Graph::new(5));
        assert!(blowup(&Graph::complete(2), &[1]).is_err());
    }

    #[test]
    fn furedi_small_cases() {
        let g = furedi_graph(3, 2).unwrap();
        assert_eq!(g.order(), 8);
        assert!(is_free(&g, &Graph::cycle(4)));
        let g = furedi_graph(4, 2).unwrap();
        assert_eq!(g.order(), 15);
        assert!(is_free(&g, &Graph::cycle(4)));
        assert!(furedi_graph(6, 2).is_err());
        assert!(furedi_graph(4, 3).is_err());
        assert!(furedi_graph(5, 1).is_err());
    }

    #[test]
    fn furedi_5_3_codegrees() {
        // Orbits <v>, <w> with v, w independent have exactly t - 1 common
        // neighbours when non-adjacent; dependent pairs (w = lambda v with
        // lambda outside the subgroup) have none.
        let (q, t) = (5, 3);
        let g = furedi_graph(q, t).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(max_codegree(&g).unwrap(), 2);
        let f = Field::new(q).unwrap();
        let h = f.subgroup(t - 1);
        let mut reps = Vec::new();
        let mut seen = HashSet::new();
        for p in 1..q * q {
            if seen.insert(p) {
                let (x, y) = (p / q, p % q);
                for &s in &h {
                    seen.insert(f.mul(s, x) * q + f.mul(s, y));
                }
                reps.push((x, y));
            }
        }
        for u in 0..12 {
            for v in u + 1..12 {
                if g.has_edge(u, v) {
                    continue;
                }
                let ((a, b), (x, y)) = (reps[u], reps[v]);
                let det = f.add(f.mul(a, y), f.neg(f.mul(b, x)));
                let expect = if det == 0 { 0 } else { t - 1 };
                assert_eq!(g.codegree(u, v), expect, "pair {u} {v}");
            }
        }
    }

    #[test]
    fn furedi_degrees() {
        for (q, t) in [(3, 2), (4, 2), (5, 2), (7, 2), (7, 3), (5, 5), (9, 3), (8, 8)] {
            let g = furedi_graph(q, t).unwrap();
            assert_eq!(g.order(), (q * q - 1) / (t - 1));
            let degs = g.degrees();
            assert!(degs.iter().all(|&d| d == q || d == q - 1));
            assert!(degs.iter().filter(|&&d| d == q - 1).count() <= 2 * q);
        }
    }

    #[test]
    fn star_families() {
        assert_eq!(c_star(6, 0).unwrap(), Graph::cycle(6));
        let g = c_star(6, 3).unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(g.degrees().iter().filter(|&&d| d == 5).count(), 1);
        let g = c_double_star(4, 2).unwrap();
        let mut degs = g.degrees();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 1, 1, 2, 2, 4, 4]);
        assert_eq!(&g.degrees()[..4], &[4, 2, 4, 2]);
        assert!(c_double_star(6, 1).is_err());
        assert!(c_star(2, 1).is_err());
        assert_eq!(automorphism_count(&c_star(6, 3).unwrap()), 12u32.into());
    }

    #[test]
    fn banana_examples() {
        assert!(are_isomorphic(&banana(2, 3).unwrap(), &Graph::complete_bipartite(2, 3)));
        assert!(are_isomorphic(&banana(3, 2).unwrap(), &Graph::cycle(6)));
        let g = banana(4, 3).unwrap();
        assert_eq!(g.order(), 11);
        let high: Vec<usize> = (0..11).filter(|&v| g.degree(v) == 3).collect();
        assert_eq!(high, vec![0, 1]);
        assert_eq!(g.distances_from(0)[1], Some(4));
        assert!(banana(1, 3).is_err());
    }

    #[test]
    fn q_graph_examples() {
        assert!(are_isomorphic(&q_graph(6, 1, 2).unwrap(), &Graph::cycle(6)));
        assert_eq!(q_graph(6, 3, 2).unwrap().order(), 8);
        let g = q_graph(7, 2, 3).unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(count_copies(&Graph::cycle(7), &g).value, 2u32.into());
        assert!(q_graph(5, 1, 5).is_err());
    }

    #[test]
    fn interchangeable_blocks_are_automorphisms() {
        let specs = [
            FamilySpec::CStar { k: 6, r: 3 },
            FamilySpec::CDoubleStar { k: 5, r: 3 },
            FamilySpec::Banana { t: 4, r: 3 },
            FamilySpec::QGraph { k: 7, r: 3, t: 3 },
            FamilySpec::RGraph {
                k: 8,
                r: 3,
                p: rp(2, 1, 3, 2),
            },
            FamilySpec::RGraph {
                k: 7,
                r: 3,
                p: rp(3, 0, 2, 2),
            },
            FamilySpec::RGraph {
                k: 6,
                r: 3,
                p: rp(3, 0, 3, 0),
            },
        ];
        for spec in specs {
            let g = spec.build().unwrap();
            for group in spec.interchangeable_blocks() {
                for w in group.windows(2) {
                    let mut perm: Vec<usize> = (0..g.order()).collect();
                    for (&x, &y) in w[0].iter().zip(&w[1]) {
                        assert!(x < y);
                        perm.swap(x, y);
                    }
                    assert_eq!(g.permuted(&perm), g, "{spec}");
                }
            }
        }
    }

    #[test]
    fn r_graph_examples() {
        assert_eq!(r_graph(6, 2, rp(2, 0, 2, 2)).unwrap().order(), 8);
        assert!(are_isomorphic(
            &r_graph(6, 1, rp(2, 0, 2, 2)).unwrap(),
            &Graph::cycle(6)
        ));
        let g = r_graph(8, 2, rp(2, 0, 2, 4)).unwrap();
        assert_eq!(count_copies(&Graph::cycle(8), &g).value, 4u32.into());
        assert!(r_graph(6, 2, rp(1, 1, 2, 2)).is_err());
        assert!(r_graph(7, 2, rp(2, 0, 2, 2)).is_err());
        // Both ends identified.
        let g = r_graph(6, 3, rp(2, 0, 4, 0)).unwrap();
        assert_eq!(g.order(), rp(2, 0, 4, 0).vertex_count(3));
        assert_eq!(count_copies(&Graph::cycle(6), &g).value, 9u32.into());
    }

    #[test]
    fn vertex_counts_match_formulas() {
        for t in 2..=8 {
            for r in 1..=8 {
                if 2 + r * (t - 1) <= 40 {
                    assert_eq!(banana(t, r).unwrap().order(), 2 + r * (t - 1));
                }
            }
        }
        for k in 3..=10 {
            for t in 2..k {
                for r in 1..=6 {
                    assert_eq!(q_graph(k, r, t).unwrap().order(), k + (r - 1) * (t - 1));
                }
            }
        }
        for k in 4..=10 {
            for r in 1..=5 {
                for p in r_params(k) {
                    let g = r_graph(k, r, p).unwrap();
                    assert_eq!(g.order(), p.vertex_count(r));
                }
            }
        }
    }

    #[test]
    fn smaller_r_is_an_induced_prefix() {
        for p in r_params(7) {
            let small = r_graph(7, 2, p).unwrap();
            let big = r_graph(7, 4, p).unwrap();
            let prefix: Vec<usize> = (0..small.order()).collect();
            assert_eq!(big.induced(&prefix), small);
        }
        let small = c_double_star(5, 1).unwrap();
        let big = c_double_star(5, 3).unwrap();
        assert_eq!(big.induced(&(0..7).collect::<Vec<_>>()), small);
    }

    #[test]
    fn all_r_graph_members() {
        let one = all_r_graphs(6, 1).unwrap();
        assert_eq!(one.len(), 1);
        assert!(are_isomorphic(&one[0].1, &Graph::cycle(6)));
        let two = all_r_graphs(6, 2).unwrap();
        for p in [
            rp(2, 0, 2, 2),
            rp(2, 0, 4, 0),
            rp(3, 0, 3, 0),
            rp(2, 1, 2, 1),
            rp(2, 2, 2, 0),
        ] {
            let g = r_graph(6, 2, p).unwrap();
            assert!(two.iter().any(|(_, m)| are_isomorphic(m, &g)), "{p}");
        }
        let five = all_r_graphs(5, 2).unwrap();
        let g = r_graph(5, 2, rp(2, 0, 3, 0)).unwrap();
        assert!(five.iter().any(|(_, m)| are_isomorphic(m, &g)));
        assert!(all_r_graphs(4, 2).is_err());
        for k in 5..=8 {
            for (_, g) in all_r_graphs(k, 3).unwrap() {
                assert!(!is_free(&g, &Graph::cycle(k)));
            }
        }
    }

    #[test]
    fn family_spec_builds() {
        let s = FamilySpec::Furedi { q: 3, t: 2 };
        assert_eq!(s.build().unwrap().order(), 8);
        assert_eq!(s.to_string(), "furedi(q=3,t=2)");
    }
}

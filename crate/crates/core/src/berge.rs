//! Berge copies of graphs in hypergraphs, the clique/greedy reductions
//! between graphs and hypergraphs, and exact Berge-Turán numbers for tiny `n`.

use std::fmt;

use num_bigint::BigUint;

use crate::enumerate::uniform_hypergraph_levels;
use crate::error::{precondition, Error, Result};
use crate::extremal::{exact_extremal, DEFAULT_LIMIT};
use crate::graph::Graph;
use crate::hypergraph::Hypergraph;

/// Largest `n` accepted by [`exact_berge_extremal`].
pub const BERGE_LIMIT: usize = 6;

/// A forbidden Berge configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BergePattern {
    Graph(Graph),
    /// Berge-`C_2`: two hyperedges sharing at least two vertices.
    DoubleEdge,
}

impl fmt::Display for BergePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BergePattern::Graph(g) => f.write_str(&crate::format::to_graph6(g)),
            BergePattern::DoubleEdge => f.write_str("C2"),
        }
    }
}

/// A Berge copy: `core[v]` is the image of pattern vertex `v` and
/// `assignment[i]` indexes (into `Hypergraph::edges`) the hyperedge carrying
/// the `i`-th pattern edge, in `Graph::edges` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BergeWitness {
    pub core: Vec<usize>,
    pub assignment: Vec<usize>,
}

impl BergeWitness {
    /// Checks injectivity of both maps and edgewise containment.
    pub fn verify(&self, h: &Hypergraph, f: &Graph) -> bool {
        let edges = f.edges();
        if self.core.len() != f.order() || self.assignment.len() != edges.len() {
            return false;
        }
        let distinct = |xs: &[usize]| {
            let mut s = xs.to_vec();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        };
        distinct(&self.core)
            && distinct(&self.assignment)
            && self.core.iter().all(|&v| v < h.order())
            && edges.iter().zip(&self.assignment).all(|(&(u, v), &i)| {
                h.edges()
                    .get(i)
                    .is_some_and(|e| e.contains(&self.core[u]) && e.contains(&self.core[v]))
            })
    }
}

/// Hyperedge indices containing each vertex pair.
fn pair_index(h: &Hypergraph) -> Vec<Vec<Vec<usize>>> {
    let n = h.order();
    let mut idx = vec![vec![Vec::new(); n]; n];
    for (i, e) in h.edges().iter().enumerate() {
        for (a, &u) in e.iter().enumerate() {
            for &v in &e[a + 1..] {
                idx[u][v].push(i);
                idx[v][u].push(i);
            }
        }
    }
    idx
}

struct Search<'a> {
    f_edges: Vec<(usize, usize)>,
    order: Vec<usize>,
    /// Pattern edges completed when `order[i]` is placed.
    closing: Vec<Vec<usize>>,
    pairs: &'a [Vec<Vec<usize>>],
    n: usize,
}

#[derive(Clone)]
struct Matching {
    of_edge: Vec<usize>,
    of_hyper: Vec<usize>,
}

impl Search<'_> {
    fn augment(&self, m: &mut Matching, core: &[usize], fe: usize, seen: &mut [bool]) -> bool {
        let (u, v) = self.f_edges[fe];
        for &he in &self.pairs[core[u]][core[v]] {
            if seen[he] {
                continue;
            }
            seen[he] = true;
            let other = m.of_hyper[he];
            if other == usize::MAX || self.augment(m, core, other, seen) {
                m.of_hyper[he] = fe;
                m.of_edge[fe] = he;
                return true;
            }
        }
        false
    }

    fn rec(&self, i: usize, core: &mut Vec<usize>, used: &mut [bool], m: &Matching, hyper: usize) -> Option<Matching> {
        if i == self.order.len() {
            return Some(m.clone());
        }
        let p = self.order[i];
        for h in 0..self.n {
            if used[h] {
                continue;
            }
            core[p] = h;
            let mut next = m.clone();
            let ok = self.closing[i].iter().all(|&fe| {
                let mut seen = vec![false; hyper];
                self.augment(&mut next, core, fe, &mut seen)
            });
            if ok {
                used[h] = true;
                let found = self.rec(i + 1, core, used, &next, hyper);
                used[h] = false;
                if found.is_some() {
                    return found;
                }
            }
            core[p] = usize::MAX;
        }
        None
    }
}

/// Finds a Berge copy of `f` in `h`, if any.
///
/// Pattern vertices are mapped one at a time; whenever both ends of a pattern
/// edge are mapped, the edge is added to a bipartite matching against the
/// hyperedges containing its image pair, and the branch is cut as soon as no
/// augmenting path exists.
pub fn contains_berge(h: &Hypergraph, f: &Graph) -> Option<BergeWitness> {
    if f.order() > h.order() || f.edge_count() > h.edge_count() {
        return None;
    }
    let f_edges = f.edges();
    let np = f.order();
    let mut order = Vec::with_capacity(np);
    let mut placed = vec![false; np];
    while order.len() < np {
        let next = (0..np)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = f.neighbors(v).filter(|&w| placed[w]).count();
                (back, f.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    let mut pos = vec![0; np];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut closing = vec![Vec::new(); np];
    for (i, &(u, v)) in f_edges.iter().enumerate() {
        closing[pos[u].max(pos[v])].push(i);
    }
    let pairs = pair_index(h);
    let search = Search {
        f_edges: f_edges.clone(),
        order,
        closing,
        pairs: &pairs,
        n: h.order(),
    };
    let m = Matching {
        of_edge: vec![usize::MAX; f_edges.len()],
        of_hyper: vec![usize::MAX; h.edge_count()],
    };
    let mut core = vec![usize::MAX; np];
    let mut used = vec![false; h.order()];
    let found = search.rec(0, &mut core, &mut used, &m, h.edge_count())?;
    Some(BergeWitness {
        core,
        assignment: found.of_edge,
    })
}

/// Two hyperedges sharing at least two vertices, as a Berge-`C_2` witness on
/// the core `{a, b}`.
pub fn contains_berge_c2(h: &Hypergraph) -> Option<BergeWitness> {
    let edges = h.edges();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let common: Vec<usize> = edges[i].iter().copied().filter(|v| edges[j].contains(v)).collect();
            if common.len() >= 2 {
                return Some(BergeWitness {
                    core: common[..2].to_vec(),
                    assignment: vec![i, j],
                });
            }
        }
    }
    None
}

pub fn contains_berge_pattern(h: &Hypergraph, p: &BergePattern) -> Option<BergeWitness> {
    match p {
        BergePattern::Graph(f) => contains_berge(h, f),
        BergePattern::DoubleEdge => contains_berge_c2(h),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CliqueMode {
    /// Vertex sets of all `K_r` copies.
    Uniform(usize),
    /// Vertex sets of all cliques on at least two vertices.
    All,
}

fn for_each_clique(g: &Graph, f: &mut dyn FnMut(&[usize])) {
    fn grow(g: &Graph, clique: &mut Vec<usize>, cand: Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        for (i, &v) in cand.iter().enumerate() {
            clique.push(v);
            f(clique);
            let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            grow(g, clique, next, f);
            clique.pop();
        }
    }
    grow(g, &mut Vec::new(), (0..g.order()).collect(), f);
}

/// Replaces cliques of `g` by hyperedges on their vertex sets.
pub fn cliques_to_hypergraph(g: &Graph, mode: CliqueMode) -> Result<Hypergraph> {
    if let CliqueMode::Uniform(r) = mode {
        if r < 2 {
            return precondition(format!("uniform clique hypergraph needs r >= 2, got {r}"));
        }
    }
    let mut cliques = Vec::new();
    for_each_clique(g, &mut |c| {
        let keep = match mode {
            CliqueMode::Uniform(r) => c.len() == r,
            CliqueMode::All => c.len() >= 2,
        };
        if keep {
            cliques.push(c.to_vec());
        }
    });
    Hypergraph::from_edges(g.order(), cliques)
}

/// What a hyperedge contributed in [`hypergraph_to_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assignment {
    Edge(usize, usize),
    /// Every pair inside the hyperedge was already an edge.
    Clique,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreedyReduction {
    pub graph: Graph,
    /// One entry per hyperedge, in `Hypergraph::edges` order.
    pub assignment: Vec<Assignment>,
}

/// Walks the hyperedges by size, then lexicographically, giving each the
/// least vertex pair inside it that is not yet an edge, or marking it as a
/// clique when none is left.
pub fn hypergraph_to_graph(h: &Hypergraph) -> GreedyReduction {
    let mut g = Graph::new(h.order());
    let assignment = h
        .edges()
        .iter()
        .map(|e| {
            for (a, &u) in e.iter().enumerate() {
                for &v in &e[a + 1..] {
                    if !g.has_edge(u, v) {
                        g.add_edge(u, v);
                        return Assignment::Edge(u, v);
                    }
                }
            }
            Assignment::Clique
        })
        .collect();
    GreedyReduction { graph: g, assignment }
}

/// Cliques of `g` on at least two vertices.
pub fn clique_total(g: &Graph) -> u64 {
    let mut total = 0;
    for_each_clique(g, &mut |c| total += u64::from(c.len() >= 2));
    total
}

#[derive(Clone, Debug)]
pub struct BergeExtremalRecord {
    pub n: usize,
    /// Uniformity; 0 would mean non-uniform, which the exact search does not do.
    pub r: usize,
    pub forbidden: Vec<BergePattern>,
    pub value: usize,
    pub witness: Hypergraph,
}

/// Exhaustive `ex_r(n, Berge-{F_i})` for `n <= BERGE_LIMIT`.
///
/// `r`-uniform hypergraphs are grown one hyperedge at a time, keeping one
/// representative per isomorphism class and discarding any that contain a
/// forbidden Berge configuration (which is inherited by supersets). The
/// witness is the representative with the least canonical label among those
/// with the most hyperedges.
pub fn exact_berge_extremal(n: usize, r: usize, forbidden: &[BergePattern]) -> Result<BergeExtremalRecord> {
    if r < 2 {
        return precondition(format!("uniformity must be at least 2, got {r}"));
    }
    if n > BERGE_LIMIT {
        return Err(Error::LimitExceeded {
            what: "n",
            got: n,
            limit: BERGE_LIMIT,
        });
    }
    let keep = |h: &Hypergraph| forbidden.iter().all(|p| contains_berge_pattern(h, p).is_none());
    let levels = uniform_hypergraph_levels(n, r, &keep);
    let Some(top) = levels.last() else {
        return precondition("the empty hypergraph already contains a forbidden configuration");
    };
    Ok(BergeExtremalRecord {
        n,
        r,
        forbidden: forbidden.to_vec(),
        value: levels.len() - 1,
        witness: top[0].clone(),
    })
}

/// The three quantities `ex(n, K_r, F) <= ex_r(n, Berge-F) <= ex(n, K_r, F) + ex(n, F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichReport {
    pub n: usize,
    pub r: usize,
    pub ex_clique: BigUint,
    pub ex_berge: BigUint,
    pub ex_edges: BigUint,
}

impl SandwichReport {
    pub fn lower_holds(&self) -> bool {
        self.ex_clique <= self.ex_berge
    }

    pub fn upper_holds(&self) -> bool {
        self.ex_berge <= &self.ex_clique + &self.ex_edges
    }
}

/// Computes all three sides exactly.
pub fn berge_sandwich_check(n: usize, r: usize, f: &Graph) -> Result<SandwichReport> {
    let berge = exact_berge_extremal(n, r, &[BergePattern::Graph(f.clone())])?;
    let clique = exact_extremal(n, &Graph::complete(r), std::slice::from_ref(f), DEFAULT_LIMIT)?;
    let edges = exact_extremal(n, &Graph::complete(2), std::slice::from_ref(f), DEFAULT_LIMIT)?;
    Ok(SandwichReport {
        n,
        r,
        ex_clique: clique.value,
        ex_berge: BigUint::from(berge.value),
        ex_edges: edges.value,
    })
}

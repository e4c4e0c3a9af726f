//! Canonical labelling by individualisation and refinement.
//!
//! The search tree is the usual one: refine the current ordered partition to
//! an equitable one, pick the first smallest non-singleton cell, and branch on
//! individualising each of its vertices. The canonical leaf is the one whose
//! relabelled adjacency rows are lexicographically least. Leaves equal to the
//! first or to the best leaf yield automorphisms, which prune siblings (orbits
//! of the pointwise stabiliser of the current path) and trigger jumps back to
//! the branching node. The automorphisms found generate the whole group, so
//! the group order falls out of orbit sizes along the first path.

use num_bigint::BigUint;

use crate::format::to_graph6_bytes;
use crate::graph::{bit_set, Graph};

/// Outcome of a canonical labelling search.
#[derive(Clone, Debug)]
pub struct Canon {
    /// Canonical label: equal for two (coloured) graphs iff they are isomorphic.
    pub label: Vec<u8>,
    /// `labeling[i]` is the vertex placed at canonical position `i`.
    pub labeling: Vec<usize>,
    /// Automorphism generators, each as a vertex map `v -> gamma[v]`.
    pub generators: Vec<Vec<usize>>,
    first_path: Vec<usize>,
}

impl Canon {
    /// The canonically relabelled graph.
    pub fn canonical_graph(&self, g: &Graph) -> Graph {
        g.permuted(&inverse(&self.labeling))
    }

    /// `|Aut(G)|` as the product of stabiliser-orbit sizes along the first path.
    pub fn group_order(&self) -> BigUint {
        let n = self.labeling.len();
        let mut order = BigUint::from(1u32);
        for i in 0..self.first_path.len() {
            let prefix = &self.first_path[..i];
            let gens: Vec<&Vec<usize>> = self
                .generators
                .iter()
                .filter(|g| prefix.iter().all(|&v| g[v] == v))
                .collect();
            let orbits = Orbits::from_generators(n, gens.into_iter());
            order *= orbits.size_of(self.first_path[i]);
        }
        order
    }

    /// Orbits of the full automorphism group.
    pub fn orbits(&self) -> Orbits {
        Orbits::from_generators(self.labeling.len(), self.generators.iter())
    }
}

/// Union-find over vertices, merged along generator cycles.
#[derive(Clone, Debug)]
pub struct Orbits {
    parent: Vec<usize>,
}

impl Orbits {
    fn from_generators<'a>(n: usize, gens: impl Iterator<Item = &'a Vec<usize>>) -> Self {
        let mut o = Orbits {
            parent: (0..n).collect(),
        };
        for g in gens {
            for (v, &w) in g.iter().enumerate() {
                o.union(v, w);
            }
        }
        o
    }

    pub fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn size_of(&self, v: usize) -> usize {
        let r = self.find(v);
        (0..self.parent.len()).filter(|&w| self.find(w) == r).count()
    }
}

fn inverse(labeling: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; labeling.len()];
    for (pos, &v) in labeling.iter().enumerate() {
        inv[v] = pos;
    }
    inv
}

struct Leaf {
    labeling: Vec<usize>,
    key: Vec<u64>,
    path: Vec<usize>,
}

struct Search<'g> {
    g: &'g Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

type Cells = Vec<Vec<usize>>;

/// Splits cells until every vertex in a cell has the same number of
/// neighbours in every cell. Sub-cells are ordered by their count vectors,
/// which keeps the result independent of vertex names.
fn refine(g: &Graph, mut cells: Cells) -> Cells {
    let w = g.words();
    loop {
        let masks: Vec<Vec<u64>> = cells
            .iter()
            .map(|c| {
                let mut m = vec![0u64; w];
                for &v in c {
                    bit_set(&mut m, v);
                }
                m
            })
            .collect();
        let mut next: Cells = Vec::with_capacity(cells.len());
        let mut split = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut sig: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let row = g.row(v);
                    let counts = masks
                        .iter()
                        .map(|m| row.iter().zip(m).map(|(a, b)| (a & b).count_ones()).sum())
                        .collect();
                    (counts, v)
                })
                .collect();
            sig.sort_unstable();
            let mut start = 0;
            for i in 1..=sig.len() {
                if i == sig.len() || sig[i].0 != sig[start].0 {
                    next.push(sig[start..i].iter().map(|x| x.1).collect());
                    start = i;
                }
            }
            split |= sig.first().map(|x| &x.0) != sig.last().map(|x| &x.0);
        }
        cells = next;
        if !split {
            return cells;
        }
    }
}

fn target_cell(cells: &Cells) -> Option<usize> {
    cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i)
}

fn individualize(cells: &Cells, at: usize, v: usize) -> Cells {
    let mut out = Vec::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..at]);
    out.push(vec![v]);
    out.push(cells[at].iter().copied().filter(|&x| x != v).collect());
    out.extend_from_slice(&cells[at + 1..]);
    out
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    fn leaf_key(&self, labeling: &[usize]) -> Vec<u64> {
        let g = self.g;
        let n = g.order();
        let w = g.words();
        let pos = inverse(labeling);
        let mut key = vec![0u64; n * w];
        for (i, &v) in labeling.iter().enumerate() {
            let row = &mut key[i * w..(i + 1) * w];
            for u in g.neighbors(v) {
                bit_set(row, pos[u]);
            }
        }
        key
    }

    fn record_automorphism(&mut self, from: &[usize], to: &[usize]) {
        let mut gamma = vec![0; from.len()];
        for (a, b) in from.iter().zip(to) {
            gamma[*a] = *b;
        }
        if gamma.iter().enumerate().any(|(v, &w)| v != w) {
            self.generators.push(gamma);
        }
    }

    /// Returns `Some(level)` to unwind to the node at depth `level`.
    fn visit(&mut self, cells: Cells, path: &mut Vec<usize>) -> Option<usize> {
        let Some(t) = target_cell(&cells) else {
            return self.visit_leaf(cells.into_iter().map(|c| c[0]).collect(), path);
        };
        let level = path.len();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[t] {
            if !tried.is_empty() {
                let stab = self.generators.iter().filter(|g| path.iter().all(|&p| g[p] == p));
                let orbits = Orbits::from_generators(self.g.order(), stab);
                if tried.iter().any(|&u| orbits.same(u, v)) {
                    continue;
                }
            }
            let child = refine(self.g, individualize(&cells, t, v));
            path.push(v);
            let jump = self.visit(child, path);
            path.pop();
            tried.push(v);
            if let Some(l) = jump {
                if l < level {
                    return Some(l);
                }
            }
        }
        None
    }

    fn visit_leaf(&mut self, labeling: Vec<usize>, path: &[usize]) -> Option<usize> {
        let key = self.leaf_key(&labeling);
        let leaf = Leaf {
            labeling,
            key,
            path: path.to_vec(),
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                labeling: leaf.labeling.clone(),
                key: leaf.key.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if leaf.key == first.key {
            let (from, lcp) = (first.labeling.clone(), common_prefix(&first.path, &leaf.path));
            self.record_automorphism(&from, &leaf.labeling);
            return Some(lcp);
        }
        let best = self.best.as_ref().unwrap();
        if leaf.key == best.key {
            let (from, lcp) = (best.labeling.clone(), common_prefix(&best.path, &leaf.path));
            self.record_automorphism(&from, &leaf.labeling);
            return Some(lcp);
        }
        if leaf.key < best.key {
            self.best = Some(leaf);
        }
        None
    }
}

/// Canonical labelling of `g` with an optional vertex colouring; colours are
/// respected (only colour-preserving isomorphisms count) and their classes are
/// ordered by colour value.
pub fn canonize_colored(g: &Graph, colors: Option<&[u32]>) -> Canon {
    let n = g.order();
    let mut cells: Cells = match colors {
        None => vec![(0..n).collect()],
        Some(c) => {
            assert_eq!(c.len(), n, "one colour per vertex");
            let mut vals: Vec<u32> = c.to_vec();
            vals.sort_unstable();
            vals.dedup();
            vals.iter().map(|&x| (0..n).filter(|&v| c[v] == x).collect()).collect()
        }
    };
    cells.retain(|c: &Vec<usize>| !c.is_empty());
    let mut search = Search {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    if n > 0 {
        let start = refine(g, cells.clone());
        search.visit(start, &mut Vec::new());
    }
    let (labeling, first_path) = match (&search.best, &search.first) {
        (Some(b), Some(f)) => (b.labeling.clone(), f.path.clone()),
        _ => (Vec::new(), Vec::new()),
    };
    let canon_graph = g.permuted(&inverse(&labeling));
    let mut label = Vec::new();
    if let Some(c) = colors {
        // Colour-class sizes and values in order, then a separator.
        for cell in &cells {
            label.extend_from_slice(&c[cell[0]].to_le_bytes());
            label.extend_from_slice(&(cell.len() as u32).to_le_bytes());
        }
        label.push(b'|');
    }
    label.extend(to_graph6_bytes(&canon_graph));
    Canon {
        label,
        labeling,
        generators: search.generators,
        first_path,
    }
}

pub fn canonize(g: &Graph) -> Canon {
    canonize_colored(g, None)
}

/// Canonical label (graph6 bytes of the canonically relabelled graph).
pub fn canonical_form(g: &Graph) -> Vec<u8> {
    canonize(g).label
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

/// `|Aut(G)|`.
pub fn automorphism_count(g: &Graph) -> BigUint {
    canonize(g).group_order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for k in 0..n {
            let mut next = Vec::new();
            for p in &out {
                for i in 0..=k {
                    let mut q = p.clone();
                    q.insert(i, k);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }

    fn brute_aut(g: &Graph) -> usize {
        all_permutations(g.order())
            .into_iter()
            .filter(|p| g.permuted(p) == *g)
            .count()
    }

    fn graph_from_mask(n: usize, mask: u64) -> Graph {
        let mut g = Graph::new(n);
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> k & 1 == 1 {
                    g.add_edge(i, j);
                }
                k += 1;
            }
        }
        g
    }

    #[test]
    fn relabelled_c4_agrees() {
        let a = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let b = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]);
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn k3_plus_k1_differs_from_p4() {
        let a = Graph::complete(3).disjoint_union(&Graph::new(1));
        assert_ne!(canonical_form(&a), canonical_form(&Graph::path(4)));
    }

    #[test]
    fn class_counts_up_to_five_vertices() {
        // Brute-force pairwise isomorphism over all labelled graphs gives the
        // reference counts 1, 2, 4, 11, 34; here we check n = 4 both ways.
        let perms = all_permutations(4);
        let mut reps: Vec<Graph> = Vec::new();
        for mask in 0..64u64 {
            let g = graph_from_mask(4, mask);
            if !reps.iter().any(|r| perms.iter().any(|p| g.permuted(p) == *r)) {
                reps.push(g);
            }
        }
        assert_eq!(reps.len(), 11);
        for (n, expect) in [(1usize, 1usize), (2, 2), (3, 4), (4, 11), (5, 34)] {
            let m = n * (n - 1) / 2;
            let labels: HashSet<Vec<u8>> = (0..1u64 << m)
                .map(|mask| canonical_form(&graph_from_mask(n, mask)))
                .collect();
            assert_eq!(labels.len(), expect, "n = {n}");
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphism_count(&Graph::complete(3)), 6u32.into());
        assert_eq!(automorphism_count(&Graph::path(3)), 2u32.into());
        assert_eq!(automorphism_count(&Graph::new(6)), 720u32.into());
        assert_eq!(automorphism_count(&Graph::cycle(7)), 14u32.into());
        assert_eq!(automorphism_count(&Graph::complete_bipartite(3, 3)), 72u32.into());
        // Petersen graph.
        let mut p = Graph::new(10);
        for i in 0..5 {
            p.add_edge(i, (i + 1) % 5);
            p.add_edge(i, i + 5);
            p.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        assert_eq!(automorphism_count(&p), 120u32.into());
    }

    #[test]
    fn automorphisms_match_brute_force_on_all_six_vertex_graphs_sample() {
        for mask in (0..1u64 << 15).step_by(37) {
            let g = graph_from_mask(6, mask);
            assert_eq!(automorphism_count(&g), BigUint::from(brute_aut(&g)), "{g:?}");
        }
    }

    #[test]
    fn coloured_labels_respect_colours() {
        let g = Graph::path(3);
        let a = canonize_colored(&g, Some(&[0, 1, 0])).label;
        let b = canonize_colored(&g, Some(&[1, 0, 0])).label;
        let c = canonize_colored(&g, Some(&[0, 0, 1])).label;
        assert_ne!(a, b);
        assert_eq!(b, c);
    }

    #[test]
    fn generators_are_automorphisms() {
        let g = Graph::complete_bipartite(2, 4).disjoint_union(&Graph::cycle(5));
        let c = canonize(&g);
        for gamma in &c.generators {
            assert_eq!(g.permuted(gamma), g);
        }
        assert_eq!(c.group_order(), BigUint::from(2u32 * 24 * 10));
    }

    fn rook_4x4() -> Graph {
        let mut g = Graph::new(16);
        for a in 0..16 {
            for b in a + 1..16 {
                if a / 4 == b / 4 || a % 4 == b % 4 {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    fn shrikhande() -> Graph {
        let mut g = Graph::new(16);
        let steps = [(0, 1), (1, 0), (1, 1)];
        for a in 0..16usize {
            let (x, y) = (a / 4, a % 4);
            for (dx, dy) in steps {
                let b = ((x + dx) % 4) * 4 + (y + dy) % 4;
                g.add_edge(a, b);
            }
        }
        g
    }

    #[test]
    fn strongly_regular_pair_is_separated() {
        let (r, s) = (rook_4x4(), shrikhande());
        assert_eq!(r.degrees(), vec![6; 16]);
        assert_eq!(s.degrees(), vec![6; 16]);
        assert!(!are_isomorphic(&r, &s));
        assert_eq!(automorphism_count(&r), 1152u32.into());
        assert_eq!(automorphism_count(&s), 192u32.into());
    }

    #[test]
    fn paley_13() {
        let squares: HashSet<usize> = (1..13).map(|x| x * x % 13).collect();
        let mut g = Graph::new(13);
        for a in 0..13 {
            for b in a + 1..13 {
                if squares.contains(&(b - a)) {
                    g.add_edge(a, b);
                }
            }
        }
        assert_eq!(automorphism_count(&g), 78u32.into());
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn label_is_invariant_under_relabelling(
            n in 1usize..14,
            bits in proptest::collection::vec(any::<bool>(), 91),
            shuffle in proptest::collection::vec(any::<u32>(), 14),
        ) {
            let mut g = Graph::new(n);
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[k % bits.len()] ^ (k % 7 == 3) { g.add_edge(i, j); }
                    k += 1;
                }
            }
            let mut perm: Vec<usize> = (0..n).collect();
            perm.sort_by_key(|&v| (shuffle[v], v));
            let h = g.permuted(&perm);
            let (cg, ch) = (canonize(&g), canonize(&h));
            prop_assert_eq!(&cg.label, &ch.label);
            prop_assert_eq!(cg.group_order(), ch.group_order());
            prop_assert_eq!(cg.canonical_graph(&g), ch.canonical_graph(&h));
        }
    }
}

//! Isomorph-free generation of graphs and uniform hypergraphs under a
//! hereditary constraint.
//!
//! Graphs grow one vertex at a time. A child `P + v` of a parent `P` is kept
//! when every forbidden pattern is still absent (only copies through `v` need
//! checking), when `v` lies in the automorphism orbit of the vertex that the
//! canonical labelling places last, and when no isomorphic child of the same
//! parent was kept before. Each class then appears exactly once.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::canon::{canonize, canonize_colored};
use crate::embed::find_embedding_through;
use crate::graph::Graph;
use crate::hypergraph::{for_each_subset, Hypergraph};

/// Children of `parent` with one more vertex that avoid every forbidden
/// pattern. With `classes` set, only canonical, pairwise non-isomorphic
/// children are returned.
fn children(parent: &Graph, forbidden: &[Graph], classes: bool) -> Vec<Graph> {
    let m = parent.order();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << m {
        let child = parent.with_vertex((0..m).filter(|&i| mask >> i & 1 == 1));
        if forbidden.iter().any(|f| find_embedding_through(f, &child, m).is_some()) {
            continue;
        }
        if classes {
            let c = canonize(&child);
            let last = c.labeling[m];
            if !c.orbits().same(last, m) || !seen.insert(c.label) {
                continue;
            }
        }
        out.push(child);
    }
    out
}

/// Folds `leaf` over the `n`-vertex graphs avoiding `forbidden`.
///
/// With `classes` set, every isomorphism class is visited exactly once.
/// Otherwise the final level is not reduced, so each class is visited at
/// least once; this is enough for maximisation and saves canonical labelling
/// of every leaf. `merge` must be associative and commutative for the result
/// not to depend on scheduling.
pub fn fold_graphs<T, L, M>(n: usize, forbidden: &[Graph], classes: bool, leaf: &L, merge: &M) -> Option<T>
where
    T: Send,
    L: Fn(&Graph) -> T + Sync,
    M: Fn(T, T) -> T + Sync,
{
    fn walk<T: Send>(
        g: Graph,
        n: usize,
        forbidden: &[Graph],
        classes: bool,
        leaf: &(dyn Fn(&Graph) -> T + Sync),
        merge: &(dyn Fn(T, T) -> T + Sync),
    ) -> Option<T> {
        if g.order() == n {
            return Some(leaf(&g));
        }
        let last_level = g.order() + 1 == n;
        let kids = children(&g, forbidden, classes || !last_level);
        if kids.len() > 1 && g.order() + 2 <= n && g.order() >= 3 {
            kids.into_par_iter()
                .filter_map(|c| walk(c, n, forbidden, classes, leaf, merge))
                .reduce_with(merge)
        } else {
            kids.into_iter()
                .filter_map(|c| walk(c, n, forbidden, classes, leaf, merge))
                .reduce(merge)
        }
    }
    let root = Graph::new(0);
    if forbidden.iter().any(|f| f.order() == 0) {
        return None;
    }
    walk(root, n, forbidden, classes, leaf, merge)
}

/// One representative of each isomorphism class of `n`-vertex graphs
/// avoiding `forbidden`, in no particular order.
pub fn graph_classes(n: usize, forbidden: &[Graph]) -> Vec<Graph> {
    fold_graphs(
        n,
        forbidden,
        true,
        &|g: &Graph| vec![g.clone()],
        &|mut a: Vec<Graph>, b| {
            a.extend(b);
            a
        },
    )
    .unwrap_or_default()
}

/// Canonical label of a hypergraph: the canonical form of its vertex–edge
/// incidence graph with the two sides coloured apart.
pub fn hypergraph_canonical_form(h: &Hypergraph) -> Vec<u8> {
    let n = h.order();
    let m = h.edge_count();
    let mut g = Graph::new(n + m);
    for (i, e) in h.edges().iter().enumerate() {
        for &v in e {
            g.add_edge(v, n + i);
        }
    }
    let colors: Vec<u32> = (0..n + m).map(|v| u32::from(v >= n)).collect();
    canonize_colored(&g, Some(&colors)).label
}

/// Isomorphism classes of `r`-uniform hypergraphs on `n` vertices satisfying
/// the hereditary predicate `keep`, grouped by edge count. Level `j` of the
/// result holds one representative per class with `j` edges.
pub fn uniform_hypergraph_levels(
    n: usize,
    r: usize,
    keep: &(dyn Fn(&Hypergraph) -> bool + Sync),
) -> Vec<Vec<Hypergraph>> {
    let mut all_edges = Vec::new();
    let verts: Vec<usize> = (0..n).collect();
    for_each_subset(&verts, r, &mut |s| all_edges.push(s.to_vec()));
    let empty = Hypergraph::new(n);
    if !keep(&empty) {
        return Vec::new();
    }
    let mut levels = vec![vec![empty]];
    loop {
        let last = levels.last().unwrap();
        let mut next: Vec<(Vec<u8>, Hypergraph)> = last
            .par_iter()
            .flat_map_iter(|h| {
                let mut local = Vec::new();
                for e in &all_edges {
                    if h.contains_edge(e) {
                        continue;
                    }
                    let mut child = h.clone();
                    child.add_edge(e).expect("fresh edge");
                    if keep(&child) {
                        local.push((hypergraph_canonical_form(&child), child));
                    }
                }
                local
            })
            .collect();
        next.sort_by(|a, b| a.0.cmp(&b.0));
        next.dedup_by(|a, b| a.0 == b.0);
        if next.is_empty() {
            return levels;
        }
        levels.push(next.into_iter().map(|x| x.1).collect());
    }
}

//! Finite set systems on `0..n`.

use crate::error::{Error, Result};

/// A hypergraph on vertices `0..n` whose edges are distinct vertex sets of
/// size at least two.
///
/// Edges are stored sorted internally and kept ordered by size, then
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

fn edge_order(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Hypergraph {
    pub fn new(n: usize) -> Self {
        Hypergraph { n, edges: Vec::new() }
    }

    pub fn from_edges<I, E>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        let mut h = Hypergraph::new(n);
        for e in edges {
            h.add_edge(e.as_ref())?;
        }
        Ok(h)
    }

    /// Inserts an edge. Duplicated vertices inside `edge` are rejected, as are
    /// edges of size below two, out-of-range vertices and repeated edges.
    pub fn add_edge(&mut self, edge: &[usize]) -> Result<()> {
        let mut e = edge.to_vec();
        e.sort_unstable();
        if e.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Hypergraph(format!("repeated vertex in edge {edge:?}")));
        }
        if e.len() < 2 {
            return Err(Error::Hypergraph(format!("edge {edge:?} has fewer than 2 vertices")));
        }
        if let Some(&v) = e.last().filter(|&&v| v >= self.n) {
            return Err(Error::Hypergraph(format!("vertex {v} out of range for n={}", self.n)));
        }
        match self.edges.binary_search_by(|x| edge_order(x, &e)) {
            Ok(_) => Err(Error::Hypergraph(format!("duplicate edge {edge:?}"))),
            Err(pos) => {
                self.edges.insert(pos, e);
                Ok(())
            }
        }
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search_by(|x| edge_order(x, &e)).is_ok()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges ordered by size, then lexicographically.
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// `Some(r)` when every edge has exactly `r` vertices (`None` for no edges
    /// or mixed sizes).
    pub fn uniformity(&self) -> Option<usize> {
        let r = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == r).then_some(r)
    }

    pub fn is_uniform(&self, r: usize) -> bool {
        self.edges.iter().all(|e| e.len() == r)
    }

    /// The `i`-shadow: all `i`-subsets of edges, sorted and deduplicated.
    pub fn shadow(&self, i: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for e in &self.edges {
            for_each_subset(e, i, &mut |s| out.push(s.to_vec()));
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Calls `f` on every `k`-subset of `items` in lexicographic order of positions.
pub fn for_each_subset(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = k - cur.len();
        for i in start..=items.len() - need {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    if k > items.len() {
        return;
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), f);
}

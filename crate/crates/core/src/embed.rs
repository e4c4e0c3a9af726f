//! Subgraph embeddings: injective, adjacency-preserving vertex maps from a
//! pattern into a host (not necessarily induced).

use std::ops::ControlFlow;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::canon::automorphism_count;
use crate::error::{precondition, Result};
use crate::graph::{bit_set, bit_test, words_for, Graph, Ones};

/// Hosts at least this large have their top-level branches counted in parallel.
const PAR_HOST_ORDER: usize = 24;

/// Backtracking embedder for one (pattern, host) pair.
///
/// Pattern vertices are visited in a connectivity-first order so that every
/// vertex after the first of its component has an already-mapped neighbour;
/// its candidates are then the intersection of the mapped neighbours' host
/// rows.
pub struct Embedder<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
    pdeg: Vec<usize>,
    hdeg: Vec<usize>,
    host_order: Vec<usize>,
    root_pin: Option<usize>,
    breaks: Option<Breaks>,
    blocks: Option<HostBlocks>,
}

/// Interchangeable vertex blocks of the host: within a group, any two blocks
/// are swapped by a host automorphism fixing every other vertex. Blocks of a
/// group are then first used in their listed order.
struct HostBlocks {
    block_of: Vec<usize>,
    prev: Vec<usize>,
}

/// Order constraints met by the lexicographically least image vector (in
/// search order) among embeddings related by swapping twin vertices or
/// isomorphic components of the pattern, or interchangeable host blocks.
struct Breaks {
    /// At position `i`: earlier-placed vertices whose image must be below the
    /// new one.
    below: Vec<Vec<usize>>,
}

impl Breaks {
    fn new(pattern: &Graph, pos: &[usize]) -> Self {
        let np = pattern.order();
        let mut below = vec![Vec::new(); np];
        let mut require = |u: usize, w: usize| {
            let (early, late) = if pos[u] < pos[w] { (u, w) } else { (w, u) };
            below[pos[late]].push(early);
        };
        for u in 0..np {
            if pattern.degree(u) == 0 {
                continue;
            }
            for w in u + 1..np {
                let twins = (0..np)
                    .filter(|&x| x != u && x != w)
                    .all(|x| pattern.has_edge(u, x) == pattern.has_edge(w, x));
                if twins {
                    require(u, w);
                }
            }
        }
        let comps = pattern.components();
        let canon: Vec<_> = comps
            .iter()
            .map(|c| crate::canon::canonize(&pattern.induced(c)))
            .collect();
        let first = |c: usize| (0..comps[c].len()).min_by_key(|&j| pos[comps[c][j]]).unwrap();
        for b in 0..comps.len() {
            let Some(a) = (0..b).rev().find(|&a| canon[a].label == canon[b].label) else {
                continue;
            };
            // x in the component placed first, and its image in the other one
            // under the isomorphism given by the canonical labellings.
            let (a, b) = if pos[comps[a][first(a)]] < pos[comps[b][first(b)]] {
                (a, b)
            } else {
                (b, a)
            };
            let x = first(a);
            let slot = canon[a].labeling.iter().position(|&v| v == x).unwrap();
            require(comps[a][x], comps[b][canon[b].labeling[slot]]);
        }
        Breaks { below }
    }

    fn admits(&self, by_pattern: &[usize], i: usize, h: usize) -> bool {
        self.below[i].iter().all(|&u| by_pattern[u] < h)
    }
}

impl<'a> Embedder<'a> {
    pub fn new(pattern: &'a Graph, host: &'a Graph) -> Self {
        Self::build(pattern, host, None, None)
    }

    /// Embeddings sending pattern vertex `root` to host vertex `target`.
    pub fn pinned(pattern: &'a Graph, host: &'a Graph, root: usize, target: usize) -> Self {
        Self::build(pattern, host, Some(root), Some(target))
    }

    fn build(pattern: &'a Graph, host: &'a Graph, root: Option<usize>, pin: Option<usize>) -> Self {
        let np = pattern.order();
        let pdeg = pattern.degrees();
        let hdeg = host.degrees();
        let mut placed = vec![false; np];
        let mut conn = vec![0usize; np];
        let mut order = Vec::with_capacity(np);
        while order.len() < np {
            let next = if let (true, Some(r)) = (order.is_empty(), root) {
                r
            } else {
                (0..np)
                    .filter(|&v| !placed[v])
                    .max_by_key(|&v| (conn[v], pdeg[v], std::cmp::Reverse(v)))
                    .unwrap()
            };
            placed[next] = true;
            order.push(next);
            for w in pattern.neighbors(next) {
                conn[w] += 1;
            }
        }
        let mut pos = vec![0; np];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| pattern.neighbors(v).map(|w| pos[w]).filter(|&j| j < i).collect())
            .collect();
        let mut host_order: Vec<usize> = (0..host.order()).collect();
        host_order.sort_by_key(|&v| (std::cmp::Reverse(hdeg[v]), v));
        Embedder {
            pattern,
            host,
            order,
            back,
            pdeg,
            hdeg,
            host_order,
            root_pin: pin,
            breaks: None,
            blocks: None,
        }
    }

    /// Declares interchangeable host blocks (see [`Embedder::reduced`]).
    /// `groups[g][j]` lists the vertices of block `j` of group `g`, in
    /// corresponding order across blocks; the caller guarantees that swapping
    /// two blocks of a group is an automorphism of the host.
    pub fn with_host_blocks(mut self, groups: &[Vec<Vec<usize>>]) -> Self {
        let mut block_of = vec![usize::MAX; self.host.order()];
        let mut prev = Vec::new();
        for group in groups {
            for (j, block) in group.iter().enumerate() {
                let id = prev.len();
                prev.push(if j == 0 { usize::MAX } else { id - 1 });
                for &v in block {
                    block_of[v] = id;
                }
            }
        }
        self.blocks = Some(HostBlocks { block_of, prev });
        self
    }

    /// Skips embeddings that differ from a visited one only by permuting twin
    /// vertices or isomorphic components of the pattern. Existence searches
    /// stay exact; `count` ignores this. Not for pinned embedders.
    pub fn reduced(mut self) -> Self {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        self.breaks = Some(Breaks::new(self.pattern, &pos));
        self
    }

    #[inline]
    fn try_assign(&self, st: &mut State, i: usize, h: usize) -> bool {
        if let Some(hb) = &self.blocks {
            let id = hb.block_of[h];
            if id != usize::MAX && st.touched[id] == 0 && hb.prev[id] != usize::MAX && st.touched[hb.prev[id]] == 0 {
                return false;
            }
        }
        if let Some(b) = &self.breaks {
            if !b.admits(&st.by_pattern, i, h) {
                return false;
            }
        }
        st.assign(self, i, h);
        true
    }

    fn trivially_empty(&self) -> bool {
        self.pattern.order() > self.host.order() || self.pattern.edge_count() > self.host.edge_count()
    }

    fn first_candidates(&self) -> Vec<usize> {
        if self.order.is_empty() {
            return Vec::new();
        }
        let need = self.pdeg[self.order[0]];
        match self.root_pin {
            Some(t) => (self.hdeg[t] >= need).then_some(t).into_iter().collect(),
            None => self
                .host_order
                .iter()
                .copied()
                .filter(|&h| self.hdeg[h] >= need)
                .collect(),
        }
    }

    /// Visits every embedding as a slice indexed by pattern vertex.
    /// Returning `ControlFlow::Break` stops the search.
    pub fn for_each(&self, mut f: impl FnMut(&[usize]) -> ControlFlow<()>) {
        if self.trivially_empty() {
            return;
        }
        if self.order.is_empty() {
            let _ = f(&[]);
            return;
        }
        let mut st = State::new(self);
        for h in self.first_candidates() {
            if !self.try_assign(&mut st, 0, h) {
                continue;
            }
            let flow = self.rec(&mut st, 1, &mut f);
            st.unassign(self, 0, h);
            if flow.is_break() {
                return;
            }
        }
    }

    fn rec(&self, st: &mut State, i: usize, f: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) -> ControlFlow<()> {
        if i == self.order.len() {
            return f(&st.by_pattern);
        }
        let p = self.order[i];
        let need = self.pdeg[p];
        if self.back[i].is_empty() {
            for idx in 0..self.host_order.len() {
                let h = self.host_order[idx];
                if bit_test(&st.used, h) || self.hdeg[h] < need || !self.try_assign(st, i, h) {
                    continue;
                }
                let flow = self.rec(st, i + 1, f);
                st.unassign(self, i, h);
                flow?;
            }
            return ControlFlow::Continue(());
        }
        let cand = st.candidates(self, i);
        let mut flow = ControlFlow::Continue(());
        for h in Ones::new(&cand) {
            if self.hdeg[h] < need || !self.try_assign(st, i, h) {
                continue;
            }
            flow = self.rec(st, i + 1, f);
            st.unassign(self, i, h);
            if flow.is_break() {
                break;
            }
        }
        st.release(i, cand);
        flow
    }

    fn count_from(&self, st: &mut State, i: usize) -> u128 {
        if i == self.order.len() {
            return 1;
        }
        let p = self.order[i];
        let need = self.pdeg[p];
        let mut total = 0u128;
        if self.back[i].is_empty() {
            for idx in 0..self.host_order.len() {
                let h = self.host_order[idx];
                if bit_test(&st.used, h) || self.hdeg[h] < need {
                    continue;
                }
                st.assign(self, i, h);
                total += self.count_from(st, i + 1);
                st.unassign(self, i, h);
            }
            return total;
        }
        let cand = st.candidates(self, i);
        if i + 1 == self.order.len() {
            total = Ones::new(&cand).filter(|&h| self.hdeg[h] >= need).count() as u128;
        } else {
            for h in Ones::new(&cand) {
                if self.hdeg[h] < need {
                    continue;
                }
                st.assign(self, i, h);
                total += self.count_from(st, i + 1);
                st.unassign(self, i, h);
            }
        }
        st.release(i, cand);
        total
    }

    /// Number of embeddings.
    pub fn count(&self) -> u128 {
        if self.trivially_empty() {
            return 0;
        }
        if self.order.is_empty() {
            return 1;
        }
        let firsts = self.first_candidates();
        let branch = |h: usize| {
            let mut st = State::new(self);
            st.assign(self, 0, h);
            self.count_from(&mut st, 1)
        };
        if self.host.order() >= PAR_HOST_ORDER && firsts.len() > 1 {
            firsts.into_par_iter().map(branch).sum()
        } else {
            firsts.into_iter().map(branch).sum()
        }
    }

    /// First embedding found, indexed by pattern vertex.
    pub fn find(&self) -> Option<Vec<usize>> {
        let mut out = None;
        self.for_each(|m| {
            out = Some(m.to_vec());
            ControlFlow::Break(())
        });
        out
    }
}

struct State {
    by_pattern: Vec<usize>,
    used: Vec<u64>,
    bufs: Vec<Vec<u64>>,
    touched: Vec<u32>,
}

impl State {
    fn new(e: &Embedder<'_>) -> Self {
        let w = words_for(e.host.order());
        State {
            by_pattern: vec![usize::MAX; e.pattern.order()],
            used: vec![0; w],
            bufs: vec![vec![0; w]; e.pattern.order()],
            touched: vec![0; e.blocks.as_ref().map_or(0, |b| b.prev.len())],
        }
    }

    #[inline]
    fn assign(&mut self, e: &Embedder<'_>, i: usize, h: usize) {
        self.by_pattern[e.order[i]] = h;
        bit_set(&mut self.used, h);
        if let Some(hb) = &e.blocks {
            if hb.block_of[h] != usize::MAX {
                self.touched[hb.block_of[h]] += 1;
            }
        }
    }

    #[inline]
    fn unassign(&mut self, e: &Embedder<'_>, i: usize, h: usize) {
        self.by_pattern[e.order[i]] = usize::MAX;
        crate::graph::bit_clear(&mut self.used, h);
        if let Some(hb) = &e.blocks {
            if hb.block_of[h] != usize::MAX {
                self.touched[hb.block_of[h]] -= 1;
            }
        }
    }

    /// Candidate row for position `i`; hand it back with `release`.
    fn candidates(&mut self, e: &Embedder<'_>, i: usize) -> Vec<u64> {
        let mut buf = std::mem::take(&mut self.bufs[i]);
        let back = &e.back[i];
        let first = self.by_pattern[e.order[back[0]]];
        buf.copy_from_slice(e.host.row(first));
        for &j in &back[1..] {
            let h = self.by_pattern[e.order[j]];
            for (a, b) in buf.iter_mut().zip(e.host.row(h)) {
                *a &= b;
            }
        }
        for (a, u) in buf.iter_mut().zip(&self.used) {
            *a &= !u;
        }
        buf
    }

    #[inline]
    fn release(&mut self, i: usize, buf: Vec<u64>) {
        self.bufs[i] = buf;
    }
}

/// Number of injective adjacency-preserving maps `V(pattern) -> V(host)`.
pub fn count_embeddings(pattern: &Graph, host: &Graph) -> u128 {
    Embedder::new(pattern, host).count()
}

/// Some embedding of `pattern` into `host`, indexed by pattern vertex.
pub fn find_embedding(pattern: &Graph, host: &Graph) -> Option<Vec<usize>> {
    Embedder::new(pattern, host).reduced().find()
}

/// Some embedding of `pattern` into `host` whose image contains host vertex `v`.
pub fn find_embedding_through(pattern: &Graph, host: &Graph, v: usize) -> Option<Vec<usize>> {
    (0..pattern.order()).find_map(|p| Embedder::pinned(pattern, host, p, v).find())
}

/// Checks that `map` is an injective adjacency-preserving map of `pattern`
/// into `host`.
pub fn is_valid_embedding(pattern: &Graph, host: &Graph, map: &[usize]) -> bool {
    if map.len() != pattern.order() || map.iter().any(|&h| h >= host.order()) {
        return false;
    }
    let mut seen = map.to_vec();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    pattern.edges().into_iter().all(|(u, v)| host.has_edge(map[u], map[v]))
}

/// Number of subgraphs of a host isomorphic to a pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyCount {
    pub value: BigUint,
    pub pattern: Graph,
    pub host_size: usize,
}

/// Counts subgraphs of `host` isomorphic to `pattern` (not necessarily
/// induced): embeddings divided by `|Aut(pattern)|`.
pub fn count_copies(pattern: &Graph, host: &Graph) -> CopyCount {
    let emb = BigUint::from(count_embeddings(pattern, host));
    let aut = if pattern.is_empty() {
        BigUint::from(1u32)
    } else {
        automorphism_count(pattern)
    };
    CopyCount {
        value: emb / aut,
        pattern: pattern.clone(),
        host_size: host.order(),
    }
}

/// `true` iff `host` has no subgraph isomorphic to `forbidden`. Stops at the
/// first embedding found.
pub fn is_free(host: &Graph, forbidden: &Graph) -> bool {
    find_embedding(forbidden, host).is_none()
}

/// Largest number of common neighbours over all vertex pairs.
pub fn max_codegree(g: &Graph) -> Result<usize> {
    if g.order() < 2 {
        return precondition("max_codegree needs at least 2 vertices");
    }
    let n = g.order();
    Ok((0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .map(|(u, v)| g.codegree(u, v))
        .max()
        .unwrap())
}

//! Whether `ex(n, C_k, F)` grows linearly or quadratically.
//!
//! `F` is linear exactly when it lies in a cycle with pendant stars
//! (`C_k^{*r}` for `k > 5`, `C_k^{**r}` for `k = 4, 5`) or, for `k > 5`, when
//! it is a forest contained in every R-graph. Otherwise some family with
//! quadratically many `k`-cycles avoids `F`, and a member of it is returned.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::constructions::{all_r_graphs, furedi_graph, r_graph, r_params, FamilySpec, RParams};
use crate::counting::count_cycles;
use crate::embed::{is_free, is_valid_embedding, Embedder};
use crate::error::{precondition, Result};
use crate::graph::Graph;

/// Simple paths in `g` starting at `v`: longest vertex count.
fn longest_path_from(g: &Graph, v: usize, on: &mut [bool]) -> usize {
    let mut best = 1;
    for w in g.neighbors(v) {
        if !on[w] {
            on[w] = true;
            best = best.max(1 + longest_path_from(g, w, on));
            on[w] = false;
        }
    }
    best
}

fn longest_path_in(g: &Graph, verts: &[usize]) -> usize {
    let mut on = vec![false; g.order()];
    verts
        .iter()
        .map(|&v| {
            on[v] = true;
            let l = longest_path_from(g, v, &mut on);
            on[v] = false;
            l
        })
        .max()
        .unwrap_or(0)
}

/// Sum over components with an edge of the vertex count of a longest path.
pub fn c_of(f: &Graph) -> usize {
    f.components()
        .iter()
        .filter(|c| c.len() > 1)
        .map(|c| longest_path_in(f, c))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentProfile {
    pub vertices: Vec<usize>,
    pub longest_path: usize,
    /// Vertices of degree greater than 2.
    pub high_degree: Vec<usize>,
    /// A path with any number of extra leaves at one end.
    pub is_broom: bool,
    /// `K_{1,m}` with `m >= 2`.
    pub is_star: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestProfile {
    pub components: Vec<ComponentProfile>,
    pub c_value: usize,
    /// Necessary conditions 1..=7 for a forest to lie in every R-graph.
    pub properties: [bool; 7],
}

impl ForestProfile {
    pub fn all_hold(&self) -> bool {
        self.properties.iter().all(|&p| p)
    }
}

fn component_profile(f: &Graph, verts: Vec<usize>) -> ComponentProfile {
    let high: Vec<usize> = verts.iter().copied().filter(|&v| f.degree(v) > 2).collect();
    let is_broom = match high.as_slice() {
        [] => true,
        [c] => f.neighbors(*c).filter(|&w| f.degree(w) == 2).count() <= 1,
        _ => false,
    };
    let m = verts.len();
    let is_star = m >= 3 && verts.iter().any(|&v| f.degree(v) == m - 1) && f.edge_count_within(&verts) == m - 1;
    ComponentProfile {
        longest_path: longest_path_in(f, &verts),
        vertices: verts,
        high_degree: high,
        is_broom,
        is_star,
    }
}

trait EdgesWithin {
    fn edge_count_within(&self, verts: &[usize]) -> usize;
}

impl EdgesWithin for Graph {
    fn edge_count_within(&self, verts: &[usize]) -> usize {
        verts.iter().map(|&v| self.degree(v)).sum::<usize>() / 2
    }
}

/// Evaluates the seven necessary conditions for a forest to be contained in
/// every R-graph of cycle length `k`:
///
/// 1. at most two vertices of degree above 2;
/// 2. at most one such vertex per component;
/// 3. each such vertex has at most two neighbours of degree 2;
/// 4. with two such vertices, one lies in a broom component;
/// 5. a longest path has at most `k` vertices;
/// 6. `c(F) <= k + 4`;
/// 7. if `c(F) = k + 4`, there are three star components on at least three
///    vertices and every component with a vertex of degree above 2 is a star.
pub fn forest_properties(f: &Graph, k: usize) -> Result<ForestProfile> {
    if !f.is_forest() {
        return precondition("forest_properties needs a forest");
    }
    if k <= 5 {
        return precondition(format!("forest_properties needs k > 5, got {k}"));
    }
    let comps: Vec<ComponentProfile> = f.components().into_iter().map(|c| component_profile(f, c)).collect();
    let c_value = c_of(f);
    let high: Vec<usize> = comps.iter().flat_map(|c| c.high_degree.iter().copied()).collect();
    let p1 = high.len() <= 2;
    let p2 = comps.iter().all(|c| c.high_degree.len() <= 1);
    let p3 = high
        .iter()
        .all(|&v| f.neighbors(v).filter(|&w| f.degree(w) == 2).count() <= 2);
    let p4 = high.len() != 2
        || comps
            .iter()
            .any(|c| c.is_broom && c.high_degree.iter().any(|v| high.contains(v)));
    let p5 = comps.iter().map(|c| c.longest_path).max().unwrap_or(0) <= k;
    let p6 = c_value <= k + 4;
    let p7 = c_value != k + 4
        || (comps.iter().filter(|c| c.is_star).count() >= 3
            && comps.iter().filter(|c| !c.high_degree.is_empty()).all(|c| c.is_star));
    Ok(ForestProfile {
        components: comps,
        c_value,
        properties: [p1, p2, p3, p4, p5, p6, p7],
    })
}

/// Some embedding of `f` into the family member, pruning with the member's
/// interchangeable blocks.
fn find_in(f: &Graph, spec: &FamilySpec) -> Result<Option<Vec<usize>>> {
    let host = spec.build()?;
    Ok(Embedder::new(f, &host)
        .reduced()
        .with_host_blocks(&spec.interchangeable_blocks())
        .find())
}

/// Embedding of a pattern into a member of a family indexed by `r` whose
/// smaller members are induced prefixes of larger ones: searching upward in
/// `r` and reusing the map verbatim at `r_max`.
fn embed_in_prefix_family(
    f: &Graph,
    r_min: usize,
    r_max: usize,
    spec: &dyn Fn(usize) -> FamilySpec,
) -> Result<Option<(usize, Vec<usize>)>> {
    // An embedding touches at most |V(F)| of the interchangeable gadgets,
    // so r = |V(F)| decides containment for every larger r.
    let cap = r_max.min(f.order().max(r_min));
    let mut r = r_min;
    loop {
        if let Some(map) = find_in(f, &spec(r))? {
            return Ok(Some((r, map)));
        }
        if r >= cap {
            return Ok(None);
        }
        r = (2 * r).max(r + 1).min(cap);
    }
}

/// Least `r` with `F` inside `spec(r)`, with an embedding there.
fn least_r(f: &Graph, r_max: usize, spec: &dyn Fn(usize) -> FamilySpec) -> Result<Option<(usize, Vec<usize>)>> {
    let Some((mut hi, mut map)) = embed_in_prefix_family(f, 0, r_max, spec)? else {
        return Ok(None);
    };
    let mut lo = 0;
    // Containment is monotone in r; find the least r by bisection.
    while lo < hi {
        let mid = (lo + hi) / 2;
        match find_in(f, &spec(mid))? {
            Some(m) => {
                hi = mid;
                map = m;
            }
            None => lo = mid + 1,
        }
    }
    Ok(Some((hi, map)))
}

/// Result of testing membership in the forest family for `(k, r)`.
#[derive(Clone, Debug)]
pub struct FkrOutcome {
    pub is_member: bool,
    /// One embedding per R-graph class at multiplicity `r`, in class order,
    /// when `is_member` holds.
    pub embeddings: Vec<(RParams, Vec<usize>)>,
    /// An R-graph parameter tuple avoiding `F`, when `F` is a forest but not a member.
    pub missed: Option<RParams>,
}

/// Whether the forest `F` is a subgraph of every R-graph of cycle length `k`
/// and multiplicity `r`.
pub fn is_fkr_forest(k: usize, r: usize, f: &Graph) -> Result<FkrOutcome> {
    if k <= 5 || r < 1 {
        return precondition(format!("is_fkr_forest needs k > 5 and r >= 1, got k = {k}, r = {r}"));
    }
    if !f.is_forest() {
        return Ok(FkrOutcome {
            is_member: false,
            embeddings: Vec::new(),
            missed: None,
        });
    }
    let members = all_r_graphs(k, r)?;
    let found: Vec<(RParams, Option<Vec<usize>>)> = members
        .par_iter()
        .map(|(p, _)| {
            let hit = embed_in_prefix_family(f, 1, r, &|rr| FamilySpec::RGraph { k, r: rr, p: *p })
                .expect("valid parameters")
                .map(|x| x.1);
            (*p, hit)
        })
        .collect();
    let missed = found.iter().find(|x| x.1.is_none()).map(|x| x.0);
    Ok(FkrOutcome {
        is_member: missed.is_none(),
        embeddings: if missed.is_none() {
            found.into_iter().map(|(p, m)| (p, m.unwrap())).collect()
        } else {
            Vec::new()
        },
        missed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Linear,
    Quadratic,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Linear => "linear",
            Verdict::Quadratic => "quadratic",
        })
    }
}

/// Cycle counts on two members of a quadratic family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthCheck {
    pub n1: usize,
    pub n2: usize,
    pub count1: BigUint,
    pub count2: BigUint,
}

impl GrowthCheck {
    /// `count2 / count1 >= (n2 / n1)^{3/2}`.
    pub fn passes(&self) -> bool {
        let (c1, c2) = (self.count1.to_f64().unwrap_or(0.0), self.count2.to_f64().unwrap_or(0.0));
        c1 > 0.0 && c2 / c1 >= (self.n2 as f64 / self.n1 as f64).powf(1.5)
    }
}

#[derive(Clone, Debug)]
pub enum Certificate {
    /// `F` embeds in `C_k^{*r}` or `C_k^{**r}`.
    Containment {
        host: FamilySpec,
        host_graph: Graph,
        embedding: Vec<usize>,
    },
    /// `F` is a forest embedded in each R-graph class at multiplicity `r`.
    Forest {
        r: usize,
        embeddings: Vec<(RParams, Vec<usize>)>,
    },
    /// A quadratic family member avoiding `F`.
    Family {
        family: FamilySpec,
        member: Graph,
        growth: GrowthCheck,
    },
}

#[derive(Clone, Debug)]
pub struct LinearityVerdict {
    pub k: usize,
    pub f: Graph,
    pub verdict: Verdict,
    /// Multiplicity at which containment in the star hosts was decided.
    pub r0_star: usize,
    /// Multiplicity at which forest membership was decided.
    pub r0_forest: usize,
    pub certificate: Certificate,
}

impl LinearityVerdict {
    /// Re-checks the certificate from scratch.
    pub fn verify(&self) -> bool {
        match &self.certificate {
            Certificate::Containment {
                host,
                host_graph,
                embedding,
            } => host.build().ok().as_ref() == Some(host_graph) && is_valid_embedding(&self.f, host_graph, embedding),
            Certificate::Forest { r, embeddings } => {
                let Ok(members) = all_r_graphs(self.k, *r) else {
                    return false;
                };
                members.len() == embeddings.len()
                    && members
                        .iter()
                        .zip(embeddings)
                        .all(|((p, g), (q, m))| p == q && is_valid_embedding(&self.f, g, m))
            }
            Certificate::Family { family, member, growth } => {
                family.build().ok().as_ref() == Some(member) && is_free(member, &self.f) && growth.passes()
            }
        }
    }
}

fn cycles_in(g: &Graph, k: usize) -> BigUint {
    count_cycles(g, k).expect("k >= 3").value
}

/// Quadratic certificate: an R-graph avoiding `F`, or failing that an orbit
/// graph avoiding it (`q` ranging over valid field orders).
fn quadratic_certificate(k: usize, f: &Graph) -> Result<Certificate> {
    // Containment at r = max(|V(F)|, 2) decides every larger r.
    let r = f.order().max(2);
    for p in r_params(k) {
        let family = FamilySpec::RGraph { k, r, p };
        if find_in(f, &family)?.is_none() {
            let member = family.build()?;
            let big = r_graph(k, 2 * r, p)?;
            let growth = GrowthCheck {
                n1: member.order(),
                n2: big.order(),
                count1: cycles_in(&member, k),
                count2: cycles_in(&big, k),
            };
            return Ok(Certificate::Family { family, member, growth });
        }
    }
    let t = if k == 4 { 3 } else { 2 };
    let qs: Vec<usize> = [5, 7, 9, 11, 13]
        .into_iter()
        .filter(|q| (q - 1) % (t - 1) == 0)
        .collect();
    for w in qs.windows(2) {
        let member = furedi_graph(w[0], t)?;
        if is_free(&member, f) {
            let bigger = furedi_graph(w[1], t)?;
            let growth = GrowthCheck {
                n1: member.order(),
                n2: bigger.order(),
                count1: cycles_in(&member, k),
                count2: cycles_in(&bigger, k),
            };
            return Ok(Certificate::Family {
                family: FamilySpec::Furedi { q: w[0], t },
                member,
                growth,
            });
        }
    }
    precondition(format!("no quadratic family member avoiding F found for k = {k}"))
}

/// Decides linear versus quadratic growth of `ex(n, C_k, F)` for `k >= 4`.
///
/// Star hosts are tested up to `r = |V(F)|` and the least sufficient `r` is
/// reported; forest membership is tested at `r = |V(F)| + k`.
pub fn classify_linearity(k: usize, f: &Graph) -> Result<LinearityVerdict> {
    if k < 4 {
        return precondition(format!("classification needs k >= 4, got {k}"));
    }
    let r0_star = f.order();
    let r0_forest = f.order() + k;
    let verdict = |verdict, certificate| LinearityVerdict {
        k,
        f: f.clone(),
        verdict,
        r0_star,
        r0_forest,
        certificate,
    };
    let double = k <= 5;
    let spec = |r: usize| {
        if double {
            FamilySpec::CDoubleStar { k, r }
        } else {
            FamilySpec::CStar { k, r }
        }
    };
    if let Some((r, embedding)) = least_r(f, r0_star, &spec)? {
        let host = spec(r);
        let host_graph = host.build()?;
        return Ok(verdict(
            Verdict::Linear,
            Certificate::Containment {
                host,
                host_graph,
                embedding,
            },
        ));
    }
    if !double && f.is_forest() {
        let out = is_fkr_forest(k, r0_forest, f)?;
        if out.is_member {
            return Ok(verdict(
                Verdict::Linear,
                Certificate::Forest {
                    r: r0_forest,
                    embeddings: out.embeddings,
                },
            ));
        }
    }
    Ok(verdict(Verdict::Quadratic, quadratic_certificate(k, f)?))
}

//! Instance builders for the two lcs hardness reductions, their witness
//! colorings, and small-instance verification.
//!
//! Both instances put the gadget vertices `V1`, then `V2`, then the triangle
//! `V3 = {z1, z2, z3}` in that index order. Replica and triangle indices are
//! 1-based in roles, matching `[m+n+1]`, `[2m+2]` and `{z1, z2, z3}`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coloring::{colorful_vertices, find_coloring, Coloring};
use crate::critical::{four_params, is_critical, is_determining};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::extension::count_extensions;
use crate::graph::{Graph, VertexSet};
use crate::limits::Limits;

/// Instances at or below this many vertices are verified exactly by default.
pub const FULL_MODE_VERTICES: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Ulcs,
    Olcs,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ulcs" => Ok(Variant::Ulcs),
            "olcs" => Ok(Variant::Olcs),
            other => Err(Error::invalid(format!("unknown reduction variant {other:?}"))),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Ulcs => "ulcs",
            Variant::Olcs => "olcs",
        })
    }
}

/// Role of an instance vertex, with its origin in `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class")]
pub enum Role {
    /// ulcs: the vertex `vertex` of `H`. olcs: `x_{vertex, edge}`.
    V1 {
        vertex: usize,
        edge: Option<[usize; 2]>,
    },
    /// ulcs: `(edges[0], replica)`. olcs: `y_{vertex, edges[0], edges[1], replica}`.
    V2 {
        vertex: Option<usize>,
        edges: Vec<[usize; 2]>,
        replica: usize,
    },
    V3 {
        index: usize,
    },
}

impl Role {
    pub fn class(&self) -> &'static str {
        match self {
            Role::V1 { .. } => "V1",
            Role::V2 { .. } => "V2",
            Role::V3 { .. } => "V3",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionInstance {
    pub variant: Variant,
    pub source: Graph,
    pub graph: Graph,
    pub k: usize,
    pub roles: Vec<Role>,
}

#[derive(Serialize)]
struct RoleEntry<'a> {
    id: usize,
    #[serde(flatten)]
    role: &'a Role,
}

#[derive(Serialize)]
struct RoleMap<'a> {
    variant: Variant,
    k: usize,
    source_vertices: usize,
    source_edges: usize,
    roles: Vec<RoleEntry<'a>>,
}

impl ReductionInstance {
    pub fn members(&self, class: &str) -> VertexSet {
        VertexSet::from_indices(
            self.graph.vertex_count(),
            self.roles.iter().enumerate().filter(|(_, r)| r.class() == class).map(|(i, _)| i),
        )
    }

    pub fn triangle(&self) -> [usize; 3] {
        let n = self.graph.vertex_count();
        [n - 3, n - 2, n - 1]
    }

    /// JSON object: variant, threshold, and one role entry per vertex. Entries
    /// carry the instance vertex as `id`; `vertex` inside a role refers to `H`.
    pub fn role_map_json(&self) -> serde_json::Value {
        let map = RoleMap {
            variant: self.variant,
            k: self.k,
            source_vertices: self.source.vertex_count(),
            source_edges: self.source.edge_count(),
            roles: self.roles.iter().enumerate().map(|(id, role)| RoleEntry { id, role }).collect(),
        };
        serde_json::to_value(map).expect("role maps always serialize")
    }

    /// Closed-form `(|V(G)|, |E(G)|, k)` for this variant applied to `h`.
    pub fn expected_sizes(variant: Variant, h: &Graph) -> (usize, usize, usize) {
        let (n, m) = (h.vertex_count(), h.edge_count());
        match variant {
            Variant::Ulcs => (n + m * (m + n + 1) + 3, 2 * m * (m + n + 1) + 3, m + n + 3),
            Variant::Olcs => {
                let y = (2 * m + 2) * pairs_at_vertices(h);
                (2 * m + y + 3, m + 2 * y + 3, y + 2)
            }
        }
    }
}

/// `Σ_v C(deg v, 2)`.
pub fn pairs_at_vertices(h: &Graph) -> usize {
    (0..h.vertex_count()).map(|v| h.degree(v) * h.degree(v).saturating_sub(1) / 2).sum()
}

fn push_triangle(roles: &mut Vec<Role>, edges: &mut Vec<(usize, usize)>) {
    let base = roles.len();
    roles.extend((1..=3).map(|index| Role::V3 { index }));
    edges.extend([(base, base + 1), (base, base + 2), (base + 1, base + 2)]);
}

/// `G = H' ∪ K3` with `V1 = V(H)`, `V2 = E(H) × [m+n+1]` and `v ~ (e, j)`
/// whenever `v ∈ e`; threshold `k = m + n + 3`.
pub fn reduce_ulcs(h: &Graph) -> ReductionInstance {
    let (n, m) = (h.vertex_count(), h.edge_count());
    let reps = m + n + 1;
    let mut roles: Vec<Role> = (0..n).map(|vertex| Role::V1 { vertex, edge: None }).collect();
    let mut edges = Vec::new();
    for (u, w) in h.edges() {
        for replica in 1..=reps {
            let id = roles.len();
            roles.push(Role::V2 { vertex: None, edges: vec![[u, w]], replica });
            edges.extend([(u, id), (w, id)]);
        }
    }
    push_triangle(&mut roles, &mut edges);
    let graph = Graph::from_edges(roles.len(), edges).expect("gadget edges are in range");
    ReductionInstance { variant: Variant::Ulcs, source: h.clone(), graph, k: m + n + 3, roles }
}

/// `G = H' ∪ K3` with `V1 = {x_{v,e} : v ∈ e}`, edges `x_{v,vw} x_{w,vw}`, and
/// for every vertex `v`, unordered pair `{e, f}` of distinct edges at `v` and
/// `j ∈ [2m+2]` a vertex `y_{v,{e,f},j}` adjacent to `x_{v,e}` and `x_{v,f}`.
/// Threshold `k = (2m+2)·Σ_v C(deg v, 2) + 2`.
pub fn reduce_olcs(h: &Graph) -> ReductionInstance {
    let (n, m) = (h.vertex_count(), h.edge_count());
    let reps = 2 * m + 2;
    let mut roles = Vec::new();
    let mut edges = Vec::new();
    // x[v] lists (edge, index of x_{v,edge}) in edge order.
    let mut x: Vec<Vec<([usize; 2], usize)>> = vec![Vec::new(); n];
    for (u, w) in h.edges() {
        let e = [u, w];
        let (iu, iw) = (roles.len(), roles.len() + 1);
        roles.push(Role::V1 { vertex: u, edge: Some(e) });
        roles.push(Role::V1 { vertex: w, edge: Some(e) });
        x[u].push((e, iu));
        x[w].push((e, iw));
        edges.push((iu, iw));
    }
    for (v, incident) in x.iter().enumerate() {
        for (a, &(e, xe)) in incident.iter().enumerate() {
            for &(f, xf) in &incident[a + 1..] {
                for replica in 1..=reps {
                    let id = roles.len();
                    roles.push(Role::V2 { vertex: Some(v), edges: vec![e, f], replica });
                    edges.extend([(xe, id), (xf, id)]);
                }
            }
        }
    }
    push_triangle(&mut roles, &mut edges);
    let graph = Graph::from_edges(roles.len(), edges).expect("gadget edges are in range");
    ReductionInstance { variant: Variant::Olcs, source: h.clone(), graph, k: reps * pairs_at_vertices(h) + 2, roles }
}

pub fn reduce(h: &Graph, variant: Variant) -> ReductionInstance {
    match variant {
        Variant::Ulcs => reduce_ulcs(h),
        Variant::Olcs => reduce_olcs(h),
    }
}

fn check_source_coloring(inst: &ReductionInstance, variant: Variant, c3: &Coloring) -> Result<()> {
    if inst.variant != variant {
        return Err(Error::invalid(format!("expected a {variant} instance, got {}", inst.variant)));
    }
    if c3.len() != inst.source.vertex_count() || c3.colors().iter().any(|&c| c >= 3) || !c3.is_proper(&inst.source) {
        return Err(Error::invalid("source coloring is not a proper 3-coloring of H"));
    }
    Ok(())
}

fn least_color_avoiding(used: &[u8]) -> u8 {
    (0..3).find(|c| !used.contains(c)).expect("at most two colors are excluded")
}

/// Witness coloring for a 3-colorable `H` in the ulcs instance: `V1` copies
/// `c3`, each replica of `xy` takes the least color missing from `{c3(x), c3(y)}`,
/// and `z_j` takes color `j - 1`.
pub fn proof_coloring_ulcs(inst: &ReductionInstance, c3: &Coloring) -> Result<Coloring> {
    check_source_coloring(inst, Variant::Ulcs, c3)?;
    let colors = inst
        .roles
        .iter()
        .map(|r| match r {
            Role::V1 { vertex, .. } => c3.color(*vertex),
            Role::V2 { edges, .. } => least_color_avoiding(&[c3.color(edges[0][0]), c3.color(edges[0][1])]),
            Role::V3 { index } => (*index - 1) as u8,
        })
        .collect();
    Coloring::proper(&inst.graph, colors, 3)
}

/// Witness coloring for a 3-colorable `H` in the olcs instance: `x_{v,e}` takes
/// `c3(v)`, every `y_{v,..}` the least color other than `c3(v)`, `z_j` color `j - 1`.
pub fn proof_coloring_olcs(inst: &ReductionInstance, c3: &Coloring) -> Result<Coloring> {
    check_source_coloring(inst, Variant::Olcs, c3)?;
    let colors = inst
        .roles
        .iter()
        .map(|r| match r {
            Role::V1 { vertex, .. } => c3.color(*vertex),
            Role::V2 { vertex, .. } => least_color_avoiding(&[c3.color(vertex.expect("olcs roles carry a vertex"))]),
            Role::V3 { index } => (*index - 1) as u8,
        })
        .collect();
    Coloring::proper(&inst.graph, colors, 3)
}

pub fn proof_coloring(inst: &ReductionInstance, c3: &Coloring) -> Result<Coloring> {
    match inst.variant {
        Variant::Ulcs => proof_coloring_ulcs(inst, c3),
        Variant::Olcs => proof_coloring_olcs(inst, c3),
    }
}

/// A random proper 3-coloring of an instance graph: vertices in index order
/// each take a uniform color unused by earlier neighbours. Gadget graphs
/// never get stuck in this order.
pub fn sample_three_coloring(g: &Graph, seed: u64) -> Coloring {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut colors = vec![0u8; g.vertex_count()];
    for v in 0..g.vertex_count() {
        let free: Vec<u8> =
            (0..3).filter(|&c| g.neighbors(v).iter().take_while(|&&w| w < v).all(|&w| colors[w] != c)).collect();
        colors[v] =
            *free.choose(&mut rng).expect("gadget vertices have at most two earlier neighbours per color class");
    }
    Coloring::new(colors, 3).expect("colors are below 3")
}

fn is_forced(g: &Graph, c: &Coloring, v: usize) -> bool {
    let mut others = VertexSet::full(g.vertex_count());
    others.remove(v);
    count_extensions(g, &c.restrict(&others), 2) >= 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Auto,
    Full,
    Certificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub variant: Variant,
    pub mode: VerifyMode,
    pub vertices: usize,
    pub k: usize,
    pub source_three_colorable: bool,
    /// Exact `ulcs` or `olcs` of the instance (full mode only).
    pub exact_value: Option<usize>,
    pub samples: usize,
    pub consistent: bool,
    pub detail: String,
}

/// Check the reduction on a small source graph.
///
/// Full mode computes the instance's exact `ulcs` or `olcs` and compares
/// `value >= k` with the 3-colorability of `H`. Certificate mode checks the
/// direction the construction makes explicit for this `H`, over `samples`
/// seeded colorings where colorings are sampled.
pub fn verify_reduction_small(
    h: &Graph,
    variant: Variant,
    mode: VerifyMode,
    samples: usize,
    seed: u64,
    limits: &Limits,
    exec_mode: Execution,
) -> Result<VerificationReport> {
    let inst = reduce(h, variant);
    let c3 = find_coloring(h, 3)?;
    let colorable = c3.is_some();
    let nv = inst.graph.vertex_count();
    let mode = match mode {
        VerifyMode::Auto if nv <= FULL_MODE_VERTICES && nv <= limits.exact_vertices => VerifyMode::Full,
        VerifyMode::Auto => VerifyMode::Certificate,
        m => m,
    };
    let mut report = VerificationReport {
        variant,
        mode,
        vertices: nv,
        k: inst.k,
        source_three_colorable: colorable,
        exact_value: None,
        samples: 0,
        consistent: false,
        detail: String::new(),
    };
    if mode == VerifyMode::Full {
        let q = four_params(&inst.graph, limits)?;
        let value = if variant == Variant::Ulcs { q.ulcs } else { q.olcs };
        let expect_at_least_k = (variant == Variant::Ulcs) != colorable;
        report.exact_value = Some(value);
        report.consistent = (value >= inst.k) == expect_at_least_k;
        report.detail = format!(
            "exact: {variant}(G)={value}, k={}, H {}3-colorable, {}",
            inst.k,
            if colorable { "" } else { "not " },
            if report.consistent { "consistent" } else { "INCONSISTENT" }
        );
        return Ok(report);
    }
    match (variant, c3) {
        (Variant::Ulcs, Some(c3)) => {
            // Replicas of each edge are colorful twins, so a critical set holds at most one per edge.
            let c = proof_coloring_ulcs(&inst, &c3)?;
            let colorful = colorful_vertices(&inst.graph, &c);
            report.consistent = inst.members("V2").is_subset(&colorful);
            report.detail = format!(
                "certificate: all V2 replicas colorful under the witness coloring; critical sets have at most {} < k={} vertices",
                h.edge_count() + h.vertex_count() + 2,
                inst.k
            );
        }
        (Variant::Ulcs, None) => {
            let n = h.vertex_count();
            let seeds: Vec<u64> = {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..samples).map(|_| rng.gen()).collect()
            };
            let results = exec::map(exec_mode, &seeds, |&s| {
                let c = sample_three_coloring(&inst.graph, s);
                let mono = h.edges().position(|(u, w)| c.color(u) == c.color(w));
                let Some(ei) = mono else { return false };
                let reps = inst.roles.len() - 3 - n;
                let per_edge = reps / h.edge_count();
                (0..per_edge).all(|j| is_forced(&inst.graph, &c, n + ei * per_edge + j))
            });
            report.samples = samples;
            report.consistent = samples > 0 && results.iter().all(|&ok| ok);
            report.detail = format!(
                "certificate: {}/{samples} sampled 3-colorings have a monochromatic H-edge whose {} replicas are all forced; with two triangle vertices every critical set has at least k={} vertices",
                results.iter().filter(|&&ok| ok).count(),
                h.edge_count() + n + 1,
                inst.k
            );
        }
        (Variant::Olcs, Some(c3)) => {
            let c = proof_coloring_olcs(&inst, &c3)?;
            let v2 = inst.members("V2");
            let all_forced = v2.iter().all(|v| is_forced(&inst.graph, &c, v));
            let [z1, z2, _] = inst.triangle();
            let mut s = v2.clone();
            s.insert(z1);
            s.insert(z2);
            let core = s.clone();
            for v in inst.members("V1").iter() {
                if is_determining(&inst.graph, &c, &s) {
                    break;
                }
                s.insert(v);
            }
            for v in s.difference(&core).iter().collect::<Vec<_>>() {
                s.remove(v);
                if !is_determining(&inst.graph, &c, &s) {
                    s.insert(v);
                }
            }
            let cert = is_critical(&inst.graph, &c, &s);
            report.consistent = all_forced && cert.determining && cert.minimal && s.len() >= inst.k;
            report.detail = format!(
                "certificate: every V2 vertex forced ({all_forced}); critical set of size {} built from V2 and two triangle vertices, k={}",
                s.len(),
                inst.k
            );
        }
        (Variant::Olcs, None) => {
            let seeds: Vec<u64> = {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..samples).map(|_| rng.gen()).collect()
            };
            let results = exec::map(exec_mode, &seeds, |&s| {
                let c = sample_three_coloring(&inst.graph, s);
                let colorful = colorful_vertices(&inst.graph, &c);
                // Some y group sees two colors, making its 2m+2 twins colorful.
                inst.roles
                    .iter()
                    .enumerate()
                    .any(|(i, r)| matches!(r, Role::V2 { replica: 1, .. }) && colorful.contains(i))
            });
            report.samples = samples;
            report.consistent = samples > 0 && results.iter().all(|&ok| ok);
            report.detail = format!(
                "certificate: {}/{samples} sampled 3-colorings contain a colorful twin group of y vertices, so critical sets have at most k-1={} vertices",
                results.iter().filter(|&&ok| ok).count(),
                inst.k - 1
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::critical_sets;

    fn p3() -> Graph {
        Graph::path(3)
    }

    #[test]
    fn ulcs_sizes() {
        let i = reduce_ulcs(&Graph::complete(3));
        assert_eq!((i.graph.vertex_count(), i.k), (27, 9));
        let i = reduce_ulcs(&Graph::complete(2));
        assert_eq!((i.graph.vertex_count(), i.k), (9, 6));
        let i = reduce_ulcs(&Graph::empty(2));
        assert_eq!(i.graph.vertex_count(), 5);
        assert_eq!(i.members("V2").len(), 0);
    }

    #[test]
    fn olcs_sizes() {
        let i = reduce_olcs(&p3());
        assert_eq!((i.members("V1").len(), i.members("V2").len(), i.graph.vertex_count(), i.k), (4, 6, 13, 8));
        let i = reduce_olcs(&Graph::complete(3));
        assert_eq!((i.members("V1").len(), i.members("V2").len(), i.graph.vertex_count(), i.k), (6, 24, 33, 26));
        let i = reduce_olcs(&Graph::complete(2));
        assert_eq!((i.members("V2").len(), i.k), (0, 2));
        for v in i.members("V2").iter() {
            assert_eq!(i.graph.degree(v), 2);
        }
    }

    #[test]
    fn formulas_match_builders() {
        for h in [Graph::complete(4), Graph::cycle(5).unwrap(), Graph::star(3), Graph::empty(3)] {
            for variant in [Variant::Ulcs, Variant::Olcs] {
                let i = reduce(&h, variant);
                assert_eq!(
                    (i.graph.vertex_count(), i.graph.edge_count(), i.k),
                    ReductionInstance::expected_sizes(variant, &h)
                );
            }
        }
    }

    #[test]
    fn proof_colorings() {
        let k3 = Graph::complete(3);
        let id = Coloring::new(vec![0, 1, 2], 3).unwrap();
        let i = reduce_ulcs(&k3);
        let c = proof_coloring_ulcs(&i, &id).unwrap();
        assert_eq!(&c.colors()[24..], &[0, 1, 2]);
        assert!(i.members("V2").is_subset(&colorful_vertices(&i.graph, &c)));
        let bad = Coloring::new(vec![0, 0, 1], 3).unwrap();
        assert!(proof_coloring_ulcs(&i, &bad).is_err());
        assert!(proof_coloring_olcs(&i, &id).is_err());

        let i = reduce_olcs(&p3());
        let c = proof_coloring_olcs(&i, &Coloring::new(vec![1, 0, 1], 3).unwrap()).unwrap();
        for v in i.members("V2").iter() {
            assert_eq!(c.color(v), 1);
            assert!(is_forced(&i.graph, &c, v));
        }
        assert!(colorful_vertices(&i.graph, &c).intersection(&i.members("V2")).is_empty());
    }

    #[test]
    fn replicas_never_share_a_critical_set() {
        let i = reduce_ulcs(&Graph::complete(2));
        let c = proof_coloring_ulcs(&i, &Coloring::new(vec![0, 1], 3).unwrap()).unwrap();
        let v2 = i.members("V2");
        for s in critical_sets(&i.graph, &c, &Limits::default()).unwrap() {
            assert!(s.intersection(&v2).len() <= 1);
        }
    }

    #[test]
    fn samples_are_proper() {
        let i = reduce_olcs(&Graph::complete(4));
        for seed in 0..5 {
            assert!(sample_three_coloring(&i.graph, seed).is_proper(&i.graph));
        }
    }

    #[test]
    fn role_map_shape() {
        let i = reduce_olcs(&p3());
        let j = i.role_map_json();
        assert_eq!(j["k"], 8);
        assert_eq!(j["roles"].as_array().unwrap().len(), 13);
        assert_eq!(j["roles"][0]["class"], "V1");
        assert_eq!(j["roles"][12]["index"], 3);
        assert_eq!(j["roles"][1]["id"], 1);
        assert_eq!(j["roles"][1]["vertex"], 1);
    }
}

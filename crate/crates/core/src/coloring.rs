//! Proper colorings: chromatic number, enumeration up to palette permutation,
//! unique colorability and colorful vertices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::limits::Limits;

/// Palettes larger than this are rejected; color domains are `u32` masks.
pub const MAX_PALETTE: usize = 32;

/// Total assignment `V -> {0, .., k-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<u8>,
    k: usize,
}

impl Coloring {
    pub fn new(colors: Vec<u8>, k: usize) -> Result<Coloring> {
        if k > MAX_PALETTE {
            return Err(Error::SizeLimit { what: "palette size", n: k, cap: MAX_PALETTE });
        }
        if let Some((v, &c)) = colors.iter().enumerate().find(|(_, &c)| c as usize >= k) {
            return Err(Error::invalid(format!("vertex {v} has color {c} outside palette of size {k}")));
        }
        Ok(Coloring { colors, k })
    }

    /// Like [`Coloring::new`] but also checks properness on `g`.
    pub fn proper(g: &Graph, colors: Vec<u8>, k: usize) -> Result<Coloring> {
        let c = Coloring::new(colors, k)?;
        if c.colors.len() != g.vertex_count() {
            return Err(Error::invalid(format!(
                "coloring has {} entries for a graph on {} vertices",
                c.colors.len(),
                g.vertex_count()
            )));
        }
        if let Some((u, v)) = c.conflict(g) {
            return Err(Error::invalid(format!("edge {u}-{v} is monochromatic")));
        }
        Ok(c)
    }

    pub fn palette(&self) -> usize {
        self.k
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u8 {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// First monochromatic edge, if any.
    pub fn conflict(&self, g: &Graph) -> Option<(usize, usize)> {
        g.edges().find(|&(u, v)| self.colors[u] == self.colors[v])
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.vertex_count() && self.conflict(g).is_none()
    }

    pub fn distinct_colors(&self) -> usize {
        let mask = self.colors.iter().fold(0u32, |m, &c| m | 1 << c);
        mask.count_ones() as usize
    }

    /// Vertices carrying color `c`.
    pub fn class(&self, c: u8) -> VertexSet {
        VertexSet::from_indices(self.colors.len(), (0..self.colors.len()).filter(|&v| self.colors[v] == c))
    }

    /// Relabel colors in order of first use by vertex index.
    pub fn normalized(&self) -> Coloring {
        let mut map = [u8::MAX; MAX_PALETTE];
        let mut next = 0u8;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                if map[c as usize] == u8::MAX {
                    map[c as usize] = next;
                    next += 1;
                }
                map[c as usize]
            })
            .collect();
        Coloring { colors, k: self.k }
    }

    /// Restriction to `support`.
    pub fn restrict(&self, support: &VertexSet) -> PartialAssignment {
        PartialAssignment {
            k: self.k,
            colors: (0..self.colors.len()).map(|v| support.contains(v).then_some(self.colors[v])).collect(),
        }
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coloring(k={}, {:?})", self.k, self.colors)
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.colors.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Colors fixed on a subset of the vertices, palette `[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAssignment {
    k: usize,
    colors: Vec<Option<u8>>,
}

impl PartialAssignment {
    pub fn new(colors: Vec<Option<u8>>, k: usize) -> Result<PartialAssignment> {
        if k > MAX_PALETTE {
            return Err(Error::SizeLimit { what: "palette size", n: k, cap: MAX_PALETTE });
        }
        if let Some(v) = colors.iter().position(|c| c.is_some_and(|c| c as usize >= k)) {
            return Err(Error::invalid(format!("vertex {v} has a color outside palette of size {k}")));
        }
        Ok(PartialAssignment { k, colors })
    }

    /// Nothing fixed.
    pub fn unassigned(n: usize, k: usize) -> Result<PartialAssignment> {
        PartialAssignment::new(vec![None; n], k)
    }

    pub fn palette(&self) -> usize {
        self.k
    }

    pub fn get(&self, v: usize) -> Option<u8> {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn support(&self) -> VertexSet {
        VertexSet::from_indices(self.colors.len(), (0..self.colors.len()).filter(|&v| self.colors[v].is_some()))
    }

    pub fn is_proper_on_support(&self, g: &Graph) -> bool {
        g.edges().all(|(u, v)| match (self.colors[u], self.colors[v]) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        })
    }
}

/// Streams proper colorings of a graph into `[k]` in lexicographic order.
///
/// In canonical mode only first-use-ordered colorings are produced (vertex
/// `v` may use a color already seen on `0..v` or the next fresh one), which
/// yields one representative per orbit under palette permutation. With
/// `surjective` set, only colorings using all `k` colors are produced.
pub struct ProperColorings<'g> {
    g: &'g Graph,
    k: usize,
    canonical: bool,
    surjective: bool,
    assign: Vec<u8>,
    trial: Vec<u8>,
    uses: [usize; MAX_PALETTE],
    distinct: usize,
    set: Vec<bool>,
    depth: usize,
    yielded: bool,
    finished: bool,
}

impl<'g> ProperColorings<'g> {
    pub fn new(g: &'g Graph, k: usize, canonical: bool, surjective: bool) -> Result<Self> {
        if k > MAX_PALETTE {
            return Err(Error::SizeLimit { what: "palette size", n: k, cap: MAX_PALETTE });
        }
        let n = g.vertex_count();
        Ok(ProperColorings {
            g,
            k,
            canonical,
            surjective,
            assign: vec![0; n],
            trial: vec![0; n],
            uses: [0; MAX_PALETTE],
            distinct: 0,
            set: vec![false; n],
            depth: 0,
            yielded: false,
            finished: false,
        })
    }

    fn unset(&mut self, v: usize) {
        if self.set[v] {
            let c = self.assign[v] as usize;
            self.uses[c] -= 1;
            if self.uses[c] == 0 {
                self.distinct -= 1;
            }
            self.set[v] = false;
        }
    }

    fn fits(&self, v: usize, c: u8) -> bool {
        self.g.neighbors(v).iter().take_while(|&&w| w < v).all(|&w| self.assign[w] != c)
    }
}

impl Iterator for ProperColorings<'_> {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        if self.finished {
            return None;
        }
        let n = self.g.vertex_count();
        if n == 0 {
            self.finished = true;
            return (!self.surjective || self.k == 0).then(|| Coloring { colors: Vec::new(), k: self.k });
        }
        if self.yielded {
            self.yielded = false;
            self.depth = n - 1;
        }
        loop {
            let v = self.depth;
            self.unset(v);
            let limit = if self.canonical { self.k.min(self.distinct + 1) } else { self.k };
            let mut placed = false;
            while (self.trial[v] as usize) < limit {
                let c = self.trial[v];
                self.trial[v] += 1;
                if !self.fits(v, c) {
                    continue;
                }
                let fresh = self.uses[c as usize] == 0;
                if self.surjective {
                    let after = self.distinct + fresh as usize;
                    if self.k - after > n - v - 1 {
                        continue;
                    }
                }
                self.assign[v] = c;
                self.set[v] = true;
                self.uses[c as usize] += 1;
                self.distinct += fresh as usize;
                placed = true;
                break;
            }
            if placed {
                if v + 1 == n {
                    self.yielded = true;
                    return Some(Coloring { colors: self.assign.clone(), k: self.k });
                }
                self.depth = v + 1;
                self.trial[v + 1] = 0;
            } else {
                if v == 0 {
                    self.finished = true;
                    return None;
                }
                self.depth = v - 1;
            }
        }
    }
}

fn greedy_clique_bound(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut best = usize::from(n > 0);
    for start in 0..n {
        let mut clique = vec![start];
        let mut cand: Vec<usize> = g.neighbors(start).to_vec();
        while !cand.is_empty() {
            let &pick = cand.iter().max_by_key(|&&w| (g.degree(w), std::cmp::Reverse(w))).unwrap();
            clique.push(pick);
            cand.retain(|&w| w != pick && g.has_edge(pick, w));
        }
        best = best.max(clique.len());
    }
    best
}

struct Dsatur<'g> {
    g: &'g Graph,
    k: usize,
    colors: Vec<Option<u8>>,
}

impl Dsatur<'_> {
    fn neighbor_mask(&self, v: usize) -> u32 {
        self.g.neighbors(v).iter().filter_map(|&w| self.colors[w]).fold(0, |m, c| m | 1 << c)
    }

    fn solve(&mut self, used: usize, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        let n = self.g.vertex_count();
        let mut pick = None;
        let mut key = (0u32, 0usize);
        for v in (0..n).filter(|&v| self.colors[v].is_none()) {
            let k = (self.neighbor_mask(v).count_ones(), self.g.degree(v));
            if pick.is_none() || k > key {
                pick = Some(v);
                key = k;
            }
        }
        let v = pick.expect("an uncolored vertex remains");
        let forbidden = self.neighbor_mask(v);
        // Fresh colors are interchangeable: try only the next unused one.
        let top = self.k.min(used + 1);
        for c in 0..top {
            if forbidden >> c & 1 == 1 {
                continue;
            }
            self.colors[v] = Some(c as u8);
            if self.solve(used.max(c + 1), remaining - 1) {
                return true;
            }
        }
        self.colors[v] = None;
        false
    }
}

/// Some proper coloring into `[k]`, if one exists.
pub fn find_coloring(g: &Graph, k: usize) -> Result<Option<Coloring>> {
    if k > MAX_PALETTE {
        return Err(Error::SizeLimit { what: "palette size", n: k, cap: MAX_PALETTE });
    }
    let n = g.vertex_count();
    let mut s = Dsatur { g, k, colors: vec![None; n] };
    if !s.solve(0, n) {
        return Ok(None);
    }
    let colors = s.colors.into_iter().map(|c| c.unwrap()).collect();
    Ok(Some(Coloring { colors, k }))
}

/// Least `k` admitting a proper `k`-coloring (0 for the empty graph).
pub fn chromatic_number(g: &Graph, limits: &Limits) -> Result<usize> {
    let n = g.vertex_count();
    limits.check_coloring(n)?;
    if n == 0 {
        return Ok(0);
    }
    if g.edge_count() == 0 {
        return Ok(1);
    }
    for k in greedy_clique_bound(g).max(2)..=n.min(MAX_PALETTE) {
        if find_coloring(g, k)?.is_some() {
            return Ok(k);
        }
    }
    Err(Error::SizeLimit { what: "chromatic number", n, cap: MAX_PALETTE })
}

/// Optimal colorings, one per palette-permutation orbit, in lexicographic order.
pub fn enumerate_optimal_colorings<'g>(g: &'g Graph, limits: &Limits) -> Result<ProperColorings<'g>> {
    let chi = chromatic_number(g, limits)?;
    ProperColorings::new(g, chi, true, true)
}

/// Orbit representatives of proper colorings into `[k]`, not necessarily using every color.
pub fn enumerate_k_colorings<'g>(g: &'g Graph, k: usize, limits: &Limits) -> Result<ProperColorings<'g>> {
    limits.check_coloring(g.vertex_count())?;
    ProperColorings::new(g, k, true, false)
}

pub fn is_uniquely_colorable(g: &Graph, limits: &Limits) -> Result<bool> {
    Ok(enumerate_optimal_colorings(g, limits)?.take(2).count() == 1)
}

/// Vertices whose closed neighbourhood shows all `k` palette colors.
pub fn colorful_vertices(g: &Graph, c: &Coloring) -> VertexSet {
    let n = g.vertex_count();
    let full: u64 = if c.palette() >= 64 { u64::MAX } else { (1u64 << c.palette()) - 1 };
    VertexSet::from_indices(
        n,
        (0..n).filter(|&v| {
            let seen = g.neighbors(v).iter().fold(1u64 << c.color(v), |m, &w| m | 1 << c.color(w));
            seen == full
        }),
    )
}

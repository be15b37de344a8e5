//! Determining sets, critical sets and the four extremal parameters.
//!
//! Determining sets of a fixed coloring form an up-set in the subset lattice
//! (adding revealed vertices can only remove completions), so critical sets are
//! exactly its minimal elements. The exact search walks that up-set from `V`
//! downwards, visiting each determining set once and memoising the determining
//! status of every subset it probes. A visited set none of whose one-vertex
//! deletions is determining is critical.

use serde::Serialize;

use crate::coloring::{
    chromatic_number, enumerate_k_colorings, enumerate_optimal_colorings, is_uniquely_colorable, Coloring,
};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::extension::{count_extensions, MaskCounter};
use crate::graph::{Graph, VertexSet};
use crate::limits::Limits;

/// A coloring together with a vertex set achieving one of the extremal values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub coloring: Coloring,
    pub set: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadWitnesses {
    pub uscs: Witness,
    pub oscs: Witness,
    pub ulcs: Witness,
    pub olcs: Witness,
}

/// `uscs`/`oscs` are the min/max over colorings of the smallest critical set;
/// `ulcs`/`olcs` the min/max of the largest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamQuad {
    pub uscs: usize,
    pub oscs: usize,
    pub ulcs: usize,
    pub olcs: usize,
    pub witnesses: Option<QuadWitnesses>,
}

impl ParamQuad {
    pub fn from_values(uscs: usize, oscs: usize, ulcs: usize, olcs: usize) -> Self {
        ParamQuad { uscs, oscs, ulcs, olcs, witnesses: None }
    }

    pub fn uniform(k: usize) -> Self {
        ParamQuad::from_values(k, k, k, k)
    }

    /// `[uscs, oscs, ulcs, olcs]`.
    pub fn values(&self) -> [usize; 4] {
        [self.uscs, self.oscs, self.ulcs, self.olcs]
    }

    /// The common value when all four parameters agree.
    pub fn uniform_value(&self) -> Option<usize> {
        let [a, b, c, d] = self.values();
        (a == b && b == c && c == d).then_some(a)
    }

    /// `uscs <= oscs`, `uscs <= ulcs`, `ulcs <= olcs`, `oscs <= olcs`.
    pub fn ordering_holds(&self) -> bool {
        self.uscs <= self.oscs && self.uscs <= self.ulcs && self.ulcs <= self.olcs && self.oscs <= self.olcs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalCertificate {
    pub coloring: Coloring,
    pub set: VertexSet,
    pub determining: bool,
    pub minimal: bool,
}

/// Smallest and largest critical set of one coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringExtremes {
    pub scs: usize,
    pub lcs: usize,
    pub scs_witness: VertexSet,
    pub lcs_witness: VertexSet,
    /// Number of critical sets of this coloring.
    pub critical_sets: usize,
}

/// True iff revealing `c` on `s` leaves exactly one proper completion.
pub fn is_determining(g: &Graph, c: &Coloring, s: &VertexSet) -> bool {
    count_extensions(g, &c.restrict(s), 2) == 1
}

pub fn is_critical(g: &Graph, c: &Coloring, s: &VertexSet) -> CriticalCertificate {
    let determining = is_determining(g, c, s);
    let minimal = determining
        && s.iter().all(|v| {
            let mut t = s.clone();
            t.remove(v);
            !is_determining(g, c, &t)
        });
    CriticalCertificate { coloring: c.clone(), set: s.clone(), determining, minimal }
}

struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64).max(1)])
    }
    fn get(&self, i: u64) -> bool {
        self.0[(i / 64) as usize] >> (i % 64) & 1 == 1
    }
    fn set(&mut self, i: u64) {
        self.0[(i / 64) as usize] |= 1 << (i % 64);
    }
}

/// Memoised determining status over the subsets of one coloring.
struct Lattice {
    counter: MaskCounter<u64>,
    classes: Vec<u64>,
    all: u64,
    known: Bits,
    det: Bits,
}

impl Lattice {
    fn new(g: &Graph, c: &Coloring) -> Self {
        let n = g.vertex_count();
        let k = c.palette();
        let mut classes = vec![0u64; k];
        for v in 0..n {
            classes[c.color(v) as usize] |= 1 << v;
        }
        let size = 1usize << n;
        Lattice {
            counter: MaskCounter::new(g, k),
            classes,
            all: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            known: Bits::new(size),
            det: Bits::new(size),
        }
    }

    fn determining(&mut self, s: u64) -> bool {
        if self.known.get(s) {
            return self.det.get(s);
        }
        let mut cand = [0u64; crate::coloring::MAX_PALETTE];
        let free = self.all & !s;
        for (slot, &class) in cand.iter_mut().zip(&self.classes) {
            *slot = free | (s & class);
        }
        let d = self.counter.count(cand, 2) == 1;
        self.known.set(s);
        if d {
            self.det.set(s);
        }
        d
    }

    /// Calls `on_critical` once for every critical set (as a mask).
    fn walk(&mut self, mut on_critical: impl FnMut(u64)) {
        let mut visited = Bits::new(self.known.0.len() * 64);
        let top = self.all;
        visited.set(top);
        let mut stack = vec![top];
        while let Some(s) = stack.pop() {
            let mut critical = true;
            let mut rest = s;
            while rest != 0 {
                let v = rest.trailing_zeros();
                rest &= rest - 1;
                let t = s & !(1u64 << v);
                if self.determining(t) {
                    critical = false;
                    if !visited.get(t) {
                        visited.set(t);
                        stack.push(t);
                    }
                }
            }
            if critical {
                on_critical(s);
            }
        }
    }
}

/// For masks of equal size: is `a` lexicographically before `b` as a sorted list?
fn lex_before(a: u64, b: u64) -> bool {
    let d = a ^ b;
    d != 0 && a & (d & d.wrapping_neg()) != 0
}

fn check_coloring(g: &Graph, c: &Coloring, limits: &Limits) -> Result<()> {
    limits.check_exact(g.vertex_count())?;
    if !c.is_proper(g) {
        return Err(Error::invalid("coloring is not proper on this graph"));
    }
    Ok(())
}

/// Exact smallest/largest critical set of `c`, with lexicographically least witnesses.
pub fn scs_lcs_for_coloring(g: &Graph, c: &Coloring, limits: &Limits) -> Result<ColoringExtremes> {
    check_coloring(g, c, limits)?;
    let mut lattice = Lattice::new(g, c);
    let mut best_small: Option<u64> = None;
    let mut best_large: Option<u64> = None;
    let mut count = 0usize;
    lattice.walk(|s| {
        count += 1;
        let size = s.count_ones();
        match best_small {
            Some(b) if size > b.count_ones() || (size == b.count_ones() && !lex_before(s, b)) => {}
            _ => best_small = Some(s),
        }
        match best_large {
            Some(b) if size < b.count_ones() || (size == b.count_ones() && !lex_before(s, b)) => {}
            _ => best_large = Some(s),
        }
    });
    let n = g.vertex_count();
    let (small, large) = match (best_small, best_large) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Internal("no critical set found".into())),
    };
    Ok(ColoringExtremes {
        scs: small.count_ones() as usize,
        lcs: large.count_ones() as usize,
        scs_witness: VertexSet::from_mask(n, small),
        lcs_witness: VertexSet::from_mask(n, large),
        critical_sets: count,
    })
}

/// Every critical set of `c`, sorted.
pub fn critical_sets(g: &Graph, c: &Coloring, limits: &Limits) -> Result<Vec<VertexSet>> {
    check_coloring(g, c, limits)?;
    let n = g.vertex_count();
    let mut out = Vec::new();
    Lattice::new(g, c).walk(|s| out.push(VertexSet::from_mask(n, s)));
    out.sort();
    Ok(out)
}

fn quad_over(g: &Graph, colorings: Vec<Coloring>, limits: &Limits, mode: Execution) -> Result<ParamQuad> {
    let per = exec::map(mode, &colorings, |c| scs_lcs_for_coloring(g, c, limits));
    let per: Vec<ColoringExtremes> = per.into_iter().collect::<Result<_>>()?;
    if per.is_empty() {
        return Err(Error::invalid("graph has no proper coloring with this palette"));
    }
    // Strict comparisons keep the first coloring (in enumeration order) on ties.
    let pick = |key: &dyn Fn(&ColoringExtremes) -> usize, want_max: bool| -> usize {
        let mut best = 0;
        for (i, e) in per.iter().enumerate().skip(1) {
            let better = if want_max { key(e) > key(&per[best]) } else { key(e) < key(&per[best]) };
            if better {
                best = i;
            }
        }
        best
    };
    let us = pick(&|e| e.scs, false);
    let os = pick(&|e| e.scs, true);
    let ul = pick(&|e| e.lcs, false);
    let ol = pick(&|e| e.lcs, true);
    let w = |i: usize, small: bool| Witness {
        coloring: colorings[i].clone(),
        set: if small { per[i].scs_witness.clone() } else { per[i].lcs_witness.clone() },
    };
    Ok(ParamQuad {
        uscs: per[us].scs,
        oscs: per[os].scs,
        ulcs: per[ul].lcs,
        olcs: per[ol].lcs,
        witnesses: Some(QuadWitnesses { uscs: w(us, true), oscs: w(os, true), ulcs: w(ul, false), olcs: w(ol, false) }),
    })
}

pub fn four_params(g: &Graph, limits: &Limits) -> Result<ParamQuad> {
    four_params_with(g, limits, Execution::default())
}

/// [`four_params`] with an explicit execution mode for the per-coloring jobs.
pub fn four_params_with(g: &Graph, limits: &Limits, mode: Execution) -> Result<ParamQuad> {
    limits.check_exact(g.vertex_count())?;
    let colorings: Vec<Coloring> = enumerate_optimal_colorings(g, limits)?.collect();
    quad_over(g, colorings, limits, mode)
}

/// The four parameters taken over all proper colorings into `[k]`, `k >= χ(G)`.
/// Colorings need not use every color.
pub fn four_params_k(g: &Graph, k: usize, limits: &Limits) -> Result<ParamQuad> {
    limits.check_exact(g.vertex_count())?;
    let chi = chromatic_number(g, limits)?;
    if k < chi {
        return Err(Error::invalid(format!("palette {k} is below the chromatic number {chi}")));
    }
    let colorings: Vec<Coloring> = enumerate_k_colorings(g, k, limits)?.collect();
    quad_over(g, colorings, limits, Execution::default())
}

/// `Some(k)` if every critical set of every optimal coloring has size `k`.
pub fn is_critically_uniform(g: &Graph, limits: &Limits) -> Result<Option<usize>> {
    Ok(four_params(g, limits)?.uniform_value())
}

/// Inputs to the unique-colorability / uniformity implication and its converse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop1Check {
    pub chi: usize,
    pub uniquely_colorable: bool,
    pub uniform: Option<usize>,
}

impl Prop1Check {
    pub fn compute(g: &Graph, limits: &Limits) -> Result<Prop1Check> {
        let quad = four_params(g, limits)?;
        Ok(Prop1Check {
            chi: chromatic_number(g, limits)?,
            uniquely_colorable: is_uniquely_colorable(g, limits)?,
            uniform: quad.uniform_value(),
        })
    }

    fn uniform_at_chi_minus_one(&self) -> Option<bool> {
        self.chi.checked_sub(1).map(|t| self.uniform == Some(t))
    }

    /// Uniquely colorable implies critically (χ−1)-uniform.
    pub fn prop1_holds(&self) -> bool {
        self.uniform_at_chi_minus_one().is_none_or(|u| !self.uniquely_colorable || u)
    }

    /// Critically (χ−1)-uniform implies uniquely colorable.
    pub fn converse_holds(&self) -> bool {
        self.uniform_at_chi_minus_one().is_none_or(|u| !u || self.uniquely_colorable)
    }
}

pub fn verify_prop1(g: &Graph, limits: &Limits) -> Result<bool> {
    Ok(Prop1Check::compute(g, limits)?.prop1_holds())
}

pub fn verify_converse_prop1(g: &Graph, limits: &Limits) -> Result<bool> {
    Ok(Prop1Check::compute(g, limits)?.converse_holds())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, v.iter().copied())
    }

    #[test]
    fn determining_basics() {
        let c4 = Graph::cycle(4).unwrap();
        let c = Coloring::proper(&c4, vec![0, 1, 0, 1], 2).unwrap();
        assert!(is_determining(&c4, &c, &VertexSet::full(4)));
        assert!(is_determining(&c4, &c, &set(4, &[0])));
        assert!(!is_determining(&c4, &c, &VertexSet::new(4)));
        let cert = is_critical(&c4, &c, &set(4, &[0]));
        assert!(cert.determining && cert.minimal);
        let cert = is_critical(&c4, &c, &set(4, &[0, 1]));
        assert!(cert.determining && !cert.minimal);
    }

    #[test]
    fn odd_cycle_gap_never_determines() {
        let c5 = Graph::cycle(5).unwrap();
        for c in enumerate_optimal_colorings(&c5, &lim()).unwrap() {
            for i in 0..5 {
                let s = VertexSet::from_indices(5, (0..5).filter(|&v| v != i && v != (i + 1) % 5));
                assert!(!is_determining(&c5, &c, &s));
            }
        }
    }

    #[test]
    fn per_coloring_extremes() {
        let k3 = Graph::complete(3);
        let c = Coloring::proper(&k3, vec![0, 1, 2], 3).unwrap();
        let e = scs_lcs_for_coloring(&k3, &c, &lim()).unwrap();
        assert_eq!((e.scs, e.lcs), (2, 2));
        assert_eq!(e.scs_witness, set(3, &[0, 1]));

        let c5 = Graph::cycle(5).unwrap();
        let c0 = Coloring::proper(&c5, vec![0, 1, 0, 1, 2], 3).unwrap();
        let e = scs_lcs_for_coloring(&c5, &c0, &lim()).unwrap();
        assert_eq!(e.lcs, 4);
        assert_eq!(e.lcs_witness, set(5, &[0, 1, 2, 3]));
        assert_eq!(e.scs, 3);
    }

    #[test]
    fn four_params_small() {
        assert_eq!(four_params(&Graph::path(4), &lim()).unwrap().values(), [1; 4]);
        assert_eq!(four_params(&Graph::complete(4), &lim()).unwrap().values(), [3; 4]);
        let pend = Graph::complete(3).add_pendant_to_each();
        assert_eq!(four_params(&pend, &lim()).unwrap().values(), [4; 4]);
        assert_eq!(four_params(&Graph::cycle(5).unwrap(), &lim()).unwrap().values(), [3, 3, 4, 4]);
        assert_eq!(four_params(&Graph::empty(0), &lim()).unwrap().values(), [0; 4]);
    }

    #[test]
    fn witnesses_are_critical_and_sized() {
        let g = Graph::cycle(7).unwrap();
        let q = four_params(&g, &lim()).unwrap();
        let w = q.witnesses.as_ref().unwrap();
        for (value, wit) in [(q.uscs, &w.uscs), (q.oscs, &w.oscs), (q.ulcs, &w.ulcs), (q.olcs, &w.olcs)] {
            assert_eq!(wit.set.len(), value);
            let cert = is_critical(&g, &wit.coloring, &wit.set);
            assert!(cert.minimal);
        }
    }

    #[test]
    fn uniformity() {
        assert_eq!(is_critically_uniform(&Graph::path(5), &lim()).unwrap(), Some(1));
        assert_eq!(is_critically_uniform(&Graph::complete(4), &lim()).unwrap(), Some(3));
        assert_eq!(is_critically_uniform(&Graph::cycle(5).unwrap(), &lim()).unwrap(), None);
    }

    #[test]
    fn parametrized_palettes() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(four_params_k(&c5, 3, &lim()).unwrap().values(), four_params(&c5, &lim()).unwrap().values());
        let k2 = Graph::complete(2);
        let q = four_params_k(&k2, 3, &lim()).unwrap();
        assert!(q.uscs >= 1);
        assert!(matches!(four_params_k(&c5, 2, &lim()), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn prop1_examples() {
        let pend = Graph::complete(3).add_pendant_to_each();
        let check = Prop1Check::compute(&pend, &lim()).unwrap();
        assert!(!check.uniquely_colorable);
        assert_eq!(check.uniform, Some(4));
        assert!(check.prop1_holds() && check.converse_holds());
        assert!(verify_prop1(&Graph::complete(1), &lim()).unwrap());
        assert!(verify_converse_prop1(&Graph::complete(1), &lim()).unwrap());
    }

    #[test]
    fn size_limit_and_improper_input() {
        let big = Graph::path(21);
        assert!(matches!(four_params(&big, &lim()), Err(Error::SizeLimit { .. })));
        let k2 = Graph::complete(2);
        let bad = Coloring::new(vec![0, 0], 2).unwrap();
        assert!(scs_lcs_for_coloring(&k2, &bad, &lim()).is_err());
    }

    #[test]
    fn lex_rule() {
        assert!(lex_before(0b01001, 0b00110));
        assert!(!lex_before(0b00110, 0b01001));
        assert!(!lex_before(0b11, 0b11));
    }
}

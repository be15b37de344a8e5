//! Counting proper completions of a partial coloring.
//!
//! Both solvers propagate forced vertices (a vertex with a single remaining
//! color removes that color from its neighbours) to a fixpoint before
//! branching on a vertex with the fewest remaining colors. Counts are
//! truncated at `cap`, so determining checks only ever look for a second
//! completion.
//!
//! The mask solver keeps, for each color, the set of vertices that may still
//! take it. Per-vertex domain sizes are read off bit-sliced counters across
//! those sets, so one propagation round costs `O(k)` word operations. It
//! covers graphs of up to 128 vertices; the domain solver handles any size.

use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not};

use crate::coloring::{Coloring, PartialAssignment, MAX_PALETTE};
use crate::graph::{Graph, VertexSet};

pub(crate) trait Mask:
    Copy + Eq + BitAnd<Output = Self> + BitOr<Output = Self> + Not<Output = Self> + BitAndAssign + BitOrAssign
{
    const ZERO: Self;
    fn bit(i: usize) -> Self;
    fn low_bits(n: usize) -> Self;
    fn lowest(self) -> usize;
    fn clear_lowest(self) -> Self;
}

macro_rules! impl_mask {
    ($t:ty) => {
        impl Mask for $t {
            const ZERO: Self = 0;
            fn bit(i: usize) -> Self {
                1 << i
            }
            fn low_bits(n: usize) -> Self {
                if n >= <$t>::BITS as usize {
                    <$t>::MAX
                } else {
                    (1 << n) - 1
                }
            }
            fn lowest(self) -> usize {
                self.trailing_zeros() as usize
            }
            fn clear_lowest(self) -> Self {
                self & (self - 1)
            }
        }
    };
}

impl_mask!(u64);
impl_mask!(u128);

/// Prepared adjacency for repeated counts on one graph and palette.
pub(crate) struct MaskCounter<M> {
    adj: Vec<M>,
    all: M,
    k: usize,
}

impl<M: Mask> MaskCounter<M> {
    pub(crate) fn new(g: &Graph, k: usize) -> Self {
        let n = g.vertex_count();
        debug_assert!(k <= MAX_PALETTE);
        let adj = (0..n).map(|v| g.neighbors(v).iter().fold(M::ZERO, |m, &w| m | M::bit(w))).collect();
        MaskCounter { adj, all: M::low_bits(n), k }
    }

    /// Candidate sets for a partial assignment: fixed vertices admit only their color.
    pub(crate) fn candidates(&self, fixed: &[Option<u8>]) -> [M; MAX_PALETTE] {
        let mut cand = [M::ZERO; MAX_PALETTE];
        let mut free = self.all;
        for (v, c) in fixed.iter().enumerate() {
            if let Some(c) = c {
                free &= !M::bit(v);
                cand[*c as usize] |= M::bit(v);
            }
        }
        for slot in cand.iter_mut().take(self.k) {
            *slot |= free;
        }
        cand
    }

    pub(crate) fn count(&self, cand: [M; MAX_PALETTE], cap: u64) -> u64 {
        let mut count = 0;
        if cap > 0 {
            self.search(cand, M::ZERO, cap, &mut count);
        }
        count
    }

    fn search(&self, mut cand: [M; MAX_PALETTE], mut done: M, cap: u64, count: &mut u64) {
        let k = self.k;
        loop {
            let (mut one, mut two, mut three) = (M::ZERO, M::ZERO, M::ZERO);
            for &c in &cand[..k] {
                three |= two & c;
                two |= one & c;
                one |= c;
            }
            if one != self.all {
                return;
            }
            let fresh = one & !two & !done;
            if fresh == M::ZERO {
                if two == M::ZERO {
                    *count += 1;
                    return;
                }
                let pool = if two & !three != M::ZERO { two & !three } else { two };
                let v = pool.lowest();
                let vb = M::bit(v);
                for c in 0..k {
                    if cand[c] & vb == M::ZERO {
                        continue;
                    }
                    let mut next = cand;
                    for (c2, slot) in next[..k].iter_mut().enumerate() {
                        if c2 != c {
                            *slot &= !vb;
                        }
                    }
                    self.search(next, done, cap, count);
                    if *count >= cap {
                        return;
                    }
                }
                return;
            }
            let mut rest = fresh;
            while rest != M::ZERO {
                let v = rest.lowest();
                rest = rest.clear_lowest();
                let vb = M::bit(v);
                let Some(c) = (0..k).find(|&c| cand[c] & vb != M::ZERO) else {
                    // Emptied by another vertex fixed in this same round.
                    return;
                };
                cand[c] &= !self.adj[v];
            }
            done |= fresh;
        }
    }
}

fn count_by_masks<M: Mask>(g: &Graph, p: &PartialAssignment, cap: u64) -> u64 {
    let counter = MaskCounter::<M>::new(g, p.palette());
    let fixed: Vec<Option<u8>> = (0..p.len()).map(|v| p.get(v)).collect();
    counter.count(counter.candidates(&fixed), cap)
}

struct DomainSearch<'g> {
    g: &'g Graph,
    cap: u64,
    count: u64,
}

impl DomainSearch<'_> {
    fn run(&mut self, mut dom: Vec<u32>, mut done: Vec<bool>) {
        let n = self.g.vertex_count();
        let mut queue: Vec<usize> = (0..n).filter(|&v| !done[v] && dom[v].count_ones() == 1).collect();
        while let Some(v) = queue.pop() {
            if done[v] {
                continue;
            }
            if dom[v] == 0 {
                return;
            }
            done[v] = true;
            let bit = dom[v];
            for &w in self.g.neighbors(v) {
                if dom[w] & bit != 0 {
                    dom[w] &= !bit;
                    match dom[w].count_ones() {
                        0 => return,
                        1 if !done[w] => queue.push(w),
                        _ => {}
                    }
                }
            }
        }
        let pick = (0..n).filter(|&v| !done[v]).min_by_key(|&v| dom[v].count_ones());
        let Some(v) = pick else {
            self.count += 1;
            return;
        };
        let mut colors = dom[v];
        while colors != 0 {
            let bit = colors & colors.wrapping_neg();
            colors &= !bit;
            let mut next = dom.clone();
            next[v] = bit;
            self.run(next, done.clone());
            if self.count >= self.cap {
                return;
            }
        }
    }
}

/// Domain-array solver; no size restriction.
pub fn count_extensions_by_domains(g: &Graph, p: &PartialAssignment, cap: u64) -> u64 {
    let n = g.vertex_count();
    assert_eq!(p.len(), n, "assignment length must match the graph");
    if cap == 0 {
        return 0;
    }
    let full: u32 = if p.palette() >= 32 { u32::MAX } else { (1u32 << p.palette()) - 1 };
    let dom: Vec<u32> = (0..n).map(|v| p.get(v).map_or(full, |c| 1 << c)).collect();
    if dom.contains(&0) {
        return 0;
    }
    let mut s = DomainSearch { g, cap, count: 0 };
    s.run(dom, vec![false; n]);
    s.count
}

/// Number of proper colorings into `[k]` agreeing with `p` on its support,
/// truncated at `cap`. An assignment that is improper on its support has no
/// completions.
pub fn count_extensions(g: &Graph, p: &PartialAssignment, cap: u64) -> u64 {
    let n = g.vertex_count();
    assert_eq!(p.len(), n, "assignment length must match the graph");
    if n <= 64 {
        count_by_masks::<u64>(g, p, cap)
    } else if n <= 128 {
        count_by_masks::<u128>(g, p, cap)
    } else {
        count_extensions_by_domains(g, p, cap)
    }
}

/// Vertices whose color stays open when every other vertex is revealed.
/// Each of them lies in every determining set of `c`.
pub fn forced_vertices(g: &Graph, c: &Coloring) -> VertexSet {
    let n = g.vertex_count();
    let mut out = VertexSet::new(n);
    for v in 0..n {
        let mut others = VertexSet::full(n);
        others.remove(v);
        if count_extensions(g, &c.restrict(&others), 2) >= 2 {
            out.insert(v);
        }
    }
    out
}

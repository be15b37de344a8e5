//! Canonical labelling by exhaustive permutation search, and isomorphism-class
//! atlases of small graphs.
//!
//! The canonical form is the relabelling whose upper-triangle bit string (in
//! graph6 column order) is lexicographically least. The search is
//! branch-and-bound: a partial labelling is abandoned as soon as its column
//! prefix exceeds the best complete labelling found so far.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::graph::Graph;
use crate::graph6::emit_graph6;

/// Largest vertex count accepted by [`canonical_form`].
pub const CANONICAL_CAP: usize = 8;

/// Labelled enumeration is only offered up to this size.
pub const LABELED_ENUMERATION_CAP: usize = 6;

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    perm: Vec<usize>,
    cols: Vec<u32>,
    best_perm: Vec<usize>,
    best_cols: Option<Vec<u32>>,
}

impl Search<'_> {
    /// Returns true if `best` was replaced somewhere below this node.
    fn descend(&mut self, depth: usize, used: u32, tight: bool) -> bool {
        if depth == self.n {
            if tight && self.best_cols.is_some() {
                return false;
            }
            self.best_cols = Some(self.cols.clone());
            self.best_perm.clone_from(&self.perm);
            return true;
        }
        let mut tight = tight;
        let mut replaced = false;
        for w in 0..self.n {
            if used >> w & 1 == 1 {
                continue;
            }
            let mut col = 0u32;
            for i in 0..depth {
                col = (col << 1) | self.g.has_edge(self.perm[i], w) as u32;
            }
            let child_tight = match &self.best_cols {
                Some(best) if tight => {
                    if col > best[depth] {
                        continue;
                    }
                    col == best[depth]
                }
                _ => false,
            };
            self.perm[depth] = w;
            self.cols[depth] = col;
            if self.descend(depth + 1, used | 1 << w, child_tight) {
                replaced = true;
                // Our prefix now equals the new best's prefix.
                tight = true;
            }
        }
        replaced
    }
}

/// Permutation `p` such that `g.permuted(&p)` is the canonical form.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    if n > CANONICAL_CAP {
        return Err(Error::SizeLimit { what: "canonical form vertex count", n, cap: CANONICAL_CAP });
    }
    let mut s = Search { g, n, perm: vec![0; n], cols: vec![0; n], best_perm: (0..n).collect(), best_cols: None };
    s.descend(0, 0, false);
    Ok(s.best_perm)
}

/// Lexicographically least relabelling of `g`; isomorphic graphs give equal output.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    g.permuted(&canonical_labeling(g)?)
}

/// graph6 string of the canonical form.
pub fn canonical_graph6(g: &Graph) -> Result<String> {
    Ok(emit_graph6(&canonical_form(g)?))
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

fn sorted_classes(keys: HashSet<String>) -> Vec<Graph> {
    let mut keys: Vec<String> = keys.into_iter().collect();
    keys.sort();
    keys.iter().map(|k| crate::graph6::parse_graph6(k).expect("canonical graph6 re-parses")).collect()
}

/// One canonical representative per isomorphism class on exactly `n` vertices,
/// sorted by canonical graph6 string.
///
/// Classes on `n` vertices are grown from those on `n - 1` by adding a vertex
/// with every possible neighbourhood: deleting any vertex of an `n`-vertex graph
/// leaves a graph whose class is already known, so nothing is missed.
pub fn atlas(n: usize, mode: Execution) -> Result<Vec<Graph>> {
    if n > CANONICAL_CAP {
        return Err(Error::SizeLimit { what: "atlas vertex count", n, cap: CANONICAL_CAP });
    }
    let mut level = vec![Graph::empty(0)];
    for size in 1..=n {
        let mut candidates = Vec::new();
        for g in &level {
            let old = size - 1;
            for mask in 0u32..1 << old {
                let edges = g.edges().chain((0..old).filter(|&v| mask >> v & 1 == 1).map(|v| (v, old)));
                candidates.push(Graph::from_edges(size, edges)?);
            }
        }
        let keys = exec::map(mode, &candidates, |g| canonical_graph6(g).expect("size checked"));
        level = sorted_classes(keys.into_iter().collect());
    }
    Ok(level)
}

/// All classes on `0..=n` vertices, smallest first.
pub fn atlas_up_to(n: usize, mode: Execution) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for size in 0..=n {
        out.extend(atlas(size, mode)?);
    }
    Ok(out)
}

/// Same classes as [`atlas`], found by canonicalising every labelled graph.
pub fn atlas_by_labeled_enumeration(n: usize) -> Result<Vec<Graph>> {
    if n > LABELED_ENUMERATION_CAP {
        return Err(Error::SizeLimit { what: "labelled enumeration vertex count", n, cap: LABELED_ENUMERATION_CAP });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut keys = HashSet::new();
    for mask in 0u64..1 << pairs.len() {
        let g = Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))?;
        keys.insert(canonical_graph6(&g)?);
    }
    Ok(sorted_classes(keys))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_cycles_agree() {
        let c4 = Graph::cycle(4).unwrap();
        let other = Graph::from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_ne!(c4, other);
        assert_eq!(canonical_form(&c4).unwrap(), canonical_form(&other).unwrap());
    }

    #[test]
    fn path_and_star_differ() {
        assert_ne!(canonical_form(&Graph::path(4)).unwrap(), canonical_form(&Graph::star(3)).unwrap());
    }

    #[test]
    fn p3_labelings_collapse() {
        // The three labelled P3s (choice of centre) plus a relabelled copy.
        let forms: HashSet<Graph> =
            [vec![(0, 1), (1, 2)], vec![(1, 0), (0, 2)], vec![(0, 2), (2, 1)], vec![(2, 1), (1, 0)]]
                .into_iter()
                .map(|e| canonical_form(&Graph::from_edges(3, e).unwrap()).unwrap())
                .collect();
        assert_eq!(forms.len(), 1);
    }

    #[test]
    fn products_match_small_families() {
        let k2 = Graph::complete(2);
        assert!(are_isomorphic(&k2.cartesian_product(&k2), &Graph::cycle(4).unwrap()).unwrap());
        assert!(are_isomorphic(&k2.strong_product(&k2), &Graph::complete(4)).unwrap());
    }

    #[test]
    fn canonical_form_is_minimal_over_all_permutations() {
        // Brute force over all 5! labelings of a small asymmetric-ish graph.
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (1, 3), (3, 4)]).unwrap();
        let mut best: Option<String> = None;
        let mut perm: Vec<usize> = (0..5).collect();
        permute(&mut perm, 0, &mut |p| {
            let s = emit_graph6(&g.permuted(p).unwrap());
            if best.as_ref().is_none_or(|b| s < *b) {
                best = Some(s);
            }
        });
        assert_eq!(canonical_graph6(&g).unwrap(), best.unwrap());
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    #[test]
    fn atlas_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| atlas(n, Execution::Sequential).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn extension_matches_labeled_enumeration() {
        for n in 0..=5 {
            assert_eq!(atlas(n, Execution::Sequential).unwrap(), atlas_by_labeled_enumeration(n).unwrap());
        }
    }

    #[test]
    fn size_cap() {
        assert!(matches!(canonical_form(&Graph::empty(9)), Err(Error::SizeLimit { .. })));
    }
}

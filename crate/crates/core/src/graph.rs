//! Simple undirected graphs stored as adjacency bit-rows.

use std::cmp::Ordering;
use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A subset of `{0, .., n-1}` stored as a bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet { n, words: vec![0; words_for(n)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    /// Panics if an index is `>= n`.
    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = VertexSet::new(n);
        for v in indices {
            s.insert(v);
        }
        s
    }

    /// Build from the low `n` bits of a mask (`n <= 64`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= WORD, "from_mask needs n <= 64");
        let mut s = VertexSet::new(n);
        if n > 0 {
            let keep = if n == WORD { u64::MAX } else { (1u64 << n) - 1 };
            s.words[0] = mask & keep;
        }
        s
    }

    /// The set as a single word; `None` when the universe exceeds 64 vertices.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    /// Size of the universe this set lives in.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range for universe {}", self.n);
        self.words[v / WORD] |= 1 << (v % WORD);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.n {
            self.words[v / WORD] &= !(1 << (v % WORD));
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * WORD + b)
            })
        })
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet::full(self.n).difference(self)
    }

    fn zip_with(&self, other: &VertexSet, f: impl Fn(u64, u64) -> u64) -> VertexSet {
        assert_eq!(self.n, other.n, "vertex sets over different universes");
        VertexSet { n: self.n, words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect() }
    }
}

/// Sets compare by their sorted element lists, so among sets of equal size the
/// lexicographically least one sorts first.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter()).then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Serialized as the sorted list of members.
impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Immutable simple undirected graph on vertices `0..n`.
///
/// Row `v` of the adjacency matrix has bit `w` set iff `{v, w}` is an edge;
/// rows are symmetric and the diagonal is always clear.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    nbrs: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph { n, adj: vec![VertexSet::new(n); n], nbrs: vec![Vec::new(); n] }
    }

    /// Build from an edge list. Duplicate edges are merged; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut adj = vec![VertexSet::new(n); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge {u}-{v} out of range for n={n}")));
            }
            if u == v {
                return Err(Error::invalid(format!("loop at vertex {u}")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph::from_rows(adj))
    }

    /// Infallible builder for internal constructors whose edges are known valid.
    fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let mut adj = vec![VertexSet::new(n); n];
        for (u, v) in edges {
            debug_assert!(u != v);
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Graph::from_rows(adj)
    }

    fn from_rows(adj: Vec<VertexSet>) -> Graph {
        let nbrs = adj.iter().map(|row| row.iter().collect()).collect();
        Graph { n: adj.len(), adj, nbrs }
    }

    /// Cycle `v_0 v_1 ... v_{n-1} v_0`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::invalid(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        Ok(Graph::build(n, (0..n).map(|i| (i, (i + 1) % n))))
    }

    pub fn complete(n: usize) -> Graph {
        Graph::build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// Path on `n` vertices (`n - 1` edges).
    pub fn path(n: usize) -> Graph {
        Graph::build(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::build(leaves + 1, (1..=leaves).map(|i| (0, i)))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.nbrs.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nbrs.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    /// Open neighbourhood `N(v)` as a set.
    pub fn neighborhood(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    /// Common degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.nbrs.first().map_or(0, Vec::len);
        self.nbrs.iter().all(|ns| ns.len() == d).then_some(d)
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for &w in &self.nbrs[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let sv = side[v].unwrap();
                for &w in &self.nbrs[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            stack.push(w);
                        }
                        Some(sw) if sw == sv => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Relabel so that old vertex `perm[i]` becomes new vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n || perm.iter().any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::invalid("not a permutation of the vertex set"));
        }
        let mut inv = vec![0; self.n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        Ok(Graph::build(self.n, self.edges().map(|(u, v)| (inv[u], inv[v]))))
    }

    /// `self ∪ other`, with `other`'s vertices shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        Graph::build(self.n + other.n, self.edges().chain(other.edges().map(|(u, v)| (u + off, v + off))))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n;
        Graph::build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !self.has_edge(u, v)))
    }

    /// Attach a new degree-1 neighbour to every vertex; the pendant of `v` is
    /// vertex `n + v`.
    pub fn add_pendant_to_each(&self) -> Graph {
        let n = self.n;
        Graph::build(2 * n, self.edges().chain((0..n).map(|v| (v, n + v))))
    }

    /// Cartesian product `self □ other`; vertex `(u, v)` has index `u·|V(other)| + v`.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        self.product(other, |same_u, adj_u, same_v, adj_v| (same_u && adj_v) || (same_v && adj_u))
    }

    /// Strong product `self ⊠ other`, indexed like [`Graph::cartesian_product`].
    pub fn strong_product(&self, other: &Graph) -> Graph {
        self.product(other, |same_u, adj_u, same_v, adj_v| (same_u || adj_u) && (same_v || adj_v))
    }

    fn product(&self, other: &Graph, rule: impl Fn(bool, bool, bool, bool) -> bool) -> Graph {
        let (a, b) = (self.n, other.n);
        let mut edges = Vec::new();
        for x in 0..a * b {
            let (u, v) = (x / b, x % b);
            for y in x + 1..a * b {
                let (u2, v2) = (y / b, y % b);
                if rule(u == u2, self.has_edge(u, u2), v == v2, other.has_edge(v, v2)) {
                    edges.push((x, y));
                }
            }
        }
        Graph::build(a * b, edges)
    }

    /// Union of the edge sets of two graphs on the same vertex set.
    pub fn edge_union(&self, other: &Graph) -> Result<Graph> {
        if self.n != other.n {
            return Err(Error::invalid(format!(
                "edge union needs equal vertex counts, got {} and {}",
                self.n, other.n
            )));
        }
        Ok(Graph::build(self.n, self.edges().chain(other.edges())))
    }

    /// `copies` disjoint copies of `self`.
    pub fn repeat(&self, copies: usize) -> Graph {
        (0..copies).fold(Graph::empty(0), |acc, _| acc.disjoint_union(self))
    }
}

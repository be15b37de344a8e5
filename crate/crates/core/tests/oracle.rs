//! Brute-force reference implementation, independent of the crate's search
//! code: colorings are enumerated as all maps into `[k]`, and a set is
//! critical when it is determining and no proper subset is.

use critset::canon::atlas_up_to;
use critset::{four_params, is_critical, Execution, Graph, Limits};

fn proper_maps(g: &Graph, k: usize) -> Vec<Vec<u8>> {
    let n = g.vertex_count();
    let total = k.pow(n as u32);
    let edges: Vec<(usize, usize)> = g.edges().collect();
    (0..total)
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let c = (x % k) as u8;
                    x /= k;
                    c
                })
                .collect::<Vec<u8>>()
        })
        .filter(|c| edges.iter().all(|&(u, v)| c[u] != c[v]))
        .collect()
}

fn chi(g: &Graph) -> usize {
    (0..=g.vertex_count()).find(|&k| !proper_maps(g, k).is_empty()).unwrap()
}

/// Sizes of all critical sets of `c` among `colorings`.
fn critical_sizes(n: usize, c: &[u8], colorings: &[Vec<u8>]) -> Vec<usize> {
    let det: Vec<bool> = (0..1usize << n)
        .map(|s| colorings.iter().filter(|d| (0..n).all(|v| s >> v & 1 == 0 || d[v] == c[v])).count() == 1)
        .collect();
    (0..1usize << n)
        .filter(|&s| {
            if !det[s] {
                return false;
            }
            let mut t = s;
            // Every proper submask of s must fail to determine.
            while t > 0 {
                t = (t - 1) & s;
                if det[t] {
                    return false;
                }
            }
            true
        })
        .map(|s| s.count_ones() as usize)
        .collect()
}

fn oracle_params(g: &Graph) -> [usize; 4] {
    let n = g.vertex_count();
    let colorings = proper_maps(g, chi(g));
    let mut quad = [usize::MAX, 0, usize::MAX, 0];
    for c in &colorings {
        let sizes = critical_sizes(n, c, &colorings);
        let (scs, lcs) = (*sizes.iter().min().unwrap(), *sizes.iter().max().unwrap());
        quad = [quad[0].min(scs), quad[1].max(scs), quad[2].min(lcs), quad[3].max(lcs)];
    }
    quad
}

#[test]
fn oracle_reproduces_hand_computed_values() {
    assert_eq!(oracle_params(&Graph::cycle(5).unwrap()), [3, 3, 4, 4]);
    assert_eq!(oracle_params(&Graph::cycle(7).unwrap()), [4, 5, 4, 6]);
    assert_eq!(oracle_params(&Graph::complete(3).add_pendant_to_each()), [4; 4]);
    let paw = Graph::complete(1).disjoint_union(&Graph::path(3)).complement();
    assert_eq!(oracle_params(&paw), [2, 2, 3, 3]);
    assert_eq!(oracle_params(&Graph::empty(3)), [0; 4]);
    assert_eq!(oracle_params(&Graph::empty(2).disjoint_union(&Graph::complete(2))), [3; 4]);
}

#[test]
fn engine_matches_oracle_on_small_atlas() {
    let lim = Limits::default();
    for g in atlas_up_to(6, Execution::Parallel).unwrap() {
        let q = four_params(&g, &lim).unwrap();
        assert_eq!(q.values(), oracle_params(&g), "{}", critset::emit_graph6(&g));
    }
}

#[test]
fn engine_matches_oracle_on_seven_vertex_samples() {
    let lim = Limits::default();
    let mut graphs = vec![Graph::cycle(7).unwrap(), Graph::cycle(7).unwrap().complement()];
    graphs.push(Graph::from_edges(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6)]).unwrap());
    graphs.push(Graph::from_edges(7, [(0, 1), (0, 2), (0, 3), (1, 2), (3, 4), (4, 5), (5, 6), (6, 1)]).unwrap());
    for g in &graphs {
        assert_eq!(four_params(g, &lim).unwrap().values(), oracle_params(g), "{g:?}");
    }
}

#[test]
fn engine_witnesses_are_critical() {
    let lim = Limits::default();
    for g in atlas_up_to(5, Execution::Sequential).unwrap() {
        let q = four_params(&g, &lim).unwrap();
        let w = q.witnesses.as_ref().expect("engine reports witnesses");
        for (value, wit) in [(q.uscs, &w.uscs), (q.oscs, &w.oscs), (q.ulcs, &w.ulcs), (q.olcs, &w.olcs)] {
            let cert = is_critical(&g, &wit.coloring, &wit.set);
            assert!(cert.determining && cert.minimal, "{g:?}");
            assert_eq!(wit.set.len(), value);
        }
    }
}

//! Closed-form parameter values for cycles, bipartite graphs and uniquely
//! colorable graphs, plus the explicit witness colorings used for odd cycles.
//!
//! Nothing here calls the critical-set search; these values are meant to be
//! checked against it.

use serde::Serialize;

use crate::coloring::{chromatic_number, is_uniquely_colorable, Coloring};
use crate::critical::ParamQuad;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::limits::Limits;

/// Parameters of the cycle `C_n`.
///
/// Even cycles are connected bipartite graphs, hence `(1, 1, 1, 1)`. For odd
/// `n >= 5`: `uscs = (n+1)/2`, `oscs = n-2`, `olcs = n-1`, and `ulcs` is
/// `(n+3)/2` when `n ≡ 1 (mod 4)`, `(n+1)/2` when `n ≡ 3 (mod 4)`.
/// `C_3 = K_3` is uniquely colorable and gives `(2, 2, 2, 2)`; the odd-cycle
/// `oscs` formula does not extend to it.
pub fn cycle_params(n: usize) -> Result<ParamQuad> {
    if n < 3 {
        return Err(Error::invalid(format!("a cycle needs at least 3 vertices, got {n}")));
    }
    if n.is_multiple_of(2) {
        return Ok(ParamQuad::uniform(1));
    }
    if n == 3 {
        return Ok(ParamQuad::uniform(2));
    }
    let ulcs = if n % 4 == 1 { (n + 3) / 2 } else { n.div_ceil(2) };
    Ok(ParamQuad::from_values(n.div_ceil(2), n - 2, ulcs, n - 1))
}

/// Parameters of a bipartite graph: one revealed vertex per component.
///
/// Edgeless graphs (including the empty graph) have `χ <= 1`, so every
/// coloring is determined by nothing and all values are 0. Otherwise `χ = 2`
/// and every component, isolated vertices included, needs exactly one clue.
pub fn bipartite_params(g: &Graph) -> Result<ParamQuad> {
    if !g.is_bipartite() {
        return Err(Error::invalid("graph is not bipartite"));
    }
    if g.edge_count() == 0 {
        return Ok(ParamQuad::uniform(0));
    }
    Ok(ParamQuad::uniform(g.components().len()))
}

/// Uniquely colorable graphs are critically `(χ-1)`-uniform.
pub fn uniquely_colorable_params(g: &Graph, limits: &Limits) -> Result<ParamQuad> {
    if !is_uniquely_colorable(g, limits)? {
        return Err(Error::invalid("graph is not uniquely colorable"));
    }
    Ok(ParamQuad::uniform(chromatic_number(g, limits)?.saturating_sub(1)))
}

/// Which explicit odd-cycle construction to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleConstruction {
    Uscs,
    Olcs,
    Ulcs,
}

impl std::str::FromStr for CycleConstruction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uscs" => Ok(CycleConstruction::Uscs),
            "olcs" => Ok(CycleConstruction::Olcs),
            "ulcs" => Ok(CycleConstruction::Ulcs),
            other => Err(Error::invalid(format!("unknown construction {other:?}"))),
        }
    }
}

/// Witness coloring of `C_n` (odd `n >= 5`) and a critical set of the size the
/// corresponding closed form predicts.
pub fn proof_coloring_cycle(n: usize, which: CycleConstruction) -> Result<(Coloring, VertexSet)> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(Error::invalid(format!("construction needs an odd cycle length >= 5, got {n}")));
    }
    let (colors, members): (Vec<u8>, Vec<usize>) = match which {
        CycleConstruction::Olcs => {
            // Alternate 0/1, last vertex 2; reveal everything but the last vertex.
            let colors = (0..n).map(|i| if i == n - 1 { 2 } else { (i % 2) as u8 }).collect();
            (colors, (0..n - 1).collect())
        }
        CycleConstruction::Uscs => {
            let mut colors: Vec<u8> = (0..n).map(|j| (j % 3) as u8).collect();
            let members = match n % 3 {
                0 | 2 => (0..n).step_by(2).collect(),
                _ => {
                    colors[n - 1] = 1;
                    (0..=n - 3).step_by(2).chain([n - 2]).collect()
                }
            };
            (colors, members)
        }
        CycleConstruction::Ulcs => {
            let mut colors: Vec<u8> = (0..n)
                .map(|i| match (i % 2, i % 4) {
                    (0, _) => 0,
                    (_, 1) => 1,
                    _ => 2,
                })
                .collect();
            colors[n - 1] = 3 - colors[n - 2];
            // Every odd vertex up to n-4 is forced; the tail choice depends on n mod 4.
            let odd = (1..n - 3).step_by(2);
            let members =
                if n % 4 == 1 { odd.chain([n - 3, n - 1, 0]).collect() } else { odd.chain([n - 2, n - 1]).collect() };
            (colors, members)
        }
    };
    Ok((Coloring::new(colors, 3)?, VertexSet::from_indices(n, members)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critical::is_critical;

    #[test]
    fn cycle_values() {
        assert_eq!(cycle_params(5).unwrap().values(), [3, 3, 4, 4]);
        assert_eq!(cycle_params(7).unwrap().values(), [4, 5, 4, 6]);
        assert_eq!(cycle_params(6).unwrap().values(), [1, 1, 1, 1]);
        assert_eq!(cycle_params(3).unwrap().values(), [2, 2, 2, 2]);
        assert!(cycle_params(2).is_err());
        for n in 3..40 {
            assert!(cycle_params(n).unwrap().ordering_holds(), "n={n}");
        }
    }

    #[test]
    fn bipartite_values() {
        assert_eq!(bipartite_params(&Graph::path(4)).unwrap().values(), [1; 4]);
        assert_eq!(bipartite_params(&Graph::complete(2).repeat(2)).unwrap().values(), [2; 4]);
        assert_eq!(bipartite_params(&Graph::empty(3)).unwrap().values(), [0; 4]);
        let k1_k2 = Graph::complete(1).disjoint_union(&Graph::complete(2));
        assert_eq!(bipartite_params(&k1_k2).unwrap().values(), [2; 4]);
        assert!(bipartite_params(&Graph::complete(3)).is_err());
    }

    #[test]
    fn uniquely_colorable_values() {
        let lim = Limits::default();
        assert_eq!(uniquely_colorable_params(&Graph::complete(4), &lim).unwrap().values(), [3; 4]);
        assert_eq!(uniquely_colorable_params(&Graph::complete(2), &lim).unwrap().values(), [1; 4]);
        assert_eq!(uniquely_colorable_params(&Graph::path(5), &lim).unwrap().values(), [1; 4]);
        assert!(uniquely_colorable_params(&Graph::cycle(5).unwrap(), &lim).is_err());
    }

    #[test]
    fn constructions_examples() {
        let (c, s) = proof_coloring_cycle(5, CycleConstruction::Olcs).unwrap();
        assert_eq!(c.colors(), &[0, 1, 0, 1, 2]);
        assert_eq!(s, VertexSet::from_indices(5, 0..4));
        let (c, s) = proof_coloring_cycle(9, CycleConstruction::Uscs).unwrap();
        assert_eq!(c.colors(), &[0, 1, 2, 0, 1, 2, 0, 1, 2]);
        assert_eq!(s.len(), 5);
        assert!(proof_coloring_cycle(4, CycleConstruction::Ulcs).is_err());
        assert!(proof_coloring_cycle(3, CycleConstruction::Ulcs).is_err());
    }

    #[test]
    fn constructions_are_critical_with_predicted_size() {
        for n in (5..=15).step_by(2) {
            let g = Graph::cycle(n).unwrap();
            let q = cycle_params(n).unwrap();
            for (which, size) in [
                (CycleConstruction::Uscs, q.uscs),
                (CycleConstruction::Olcs, q.olcs),
                (CycleConstruction::Ulcs, q.ulcs),
            ] {
                let (c, s) = proof_coloring_cycle(n, which).unwrap();
                assert!(c.is_proper(&g), "n={n} {which:?}");
                assert_eq!(s.len(), size, "n={n} {which:?}");
                assert!(is_critical(&g, &c, &s).minimal, "n={n} {which:?}");
            }
        }
    }
}

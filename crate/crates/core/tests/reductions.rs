use critset::coloring::enumerate_optimal_colorings;
use critset::critical::critical_sets;
use critset::hardness::{proof_coloring, reduce, verify_reduction_small, ReductionInstance, Variant, VerifyMode};
use critset::{forced_vertices, Coloring, Execution, Graph, Limits};

#[test]
fn forced_vertices_within_every_critical_set() {
    let lim = Limits::default();
    for (h, variant) in [(Graph::complete(2), Variant::Ulcs), (Graph::path(3), Variant::Olcs)] {
        let inst = reduce(&h, variant);
        for c in enumerate_optimal_colorings(&inst.graph, &lim).unwrap() {
            let forced = forced_vertices(&inst.graph, &c);
            for s in critical_sets(&inst.graph, &c, &lim).unwrap() {
                assert!(forced.is_subset(&s), "{variant} {c}");
            }
        }
    }
}

#[test]
fn olcs_witness_forces_all_of_v2() {
    let inst = reduce(&Graph::complete(3), Variant::Olcs);
    let c = proof_coloring(&inst, &Coloring::new(vec![0, 1, 2], 3).unwrap()).unwrap();
    assert!(inst.members("V2").is_subset(&forced_vertices(&inst.graph, &c)));
}

#[test]
fn certificate_modes() {
    let lim = Limits::default();
    let cases = [
        (Graph::complete(3), Variant::Ulcs),
        (Graph::complete(3), Variant::Olcs),
        (Graph::complete(4), Variant::Olcs),
        (Graph::cycle(5).unwrap(), Variant::Olcs),
    ];
    for (h, variant) in cases {
        let r = verify_reduction_small(&h, variant, VerifyMode::Certificate, 8, 3, &lim, Execution::Parallel).unwrap();
        assert!(r.consistent, "{variant}: {}", r.detail);
    }
}

#[test]
fn auto_mode_selects_by_size() {
    let lim = Limits::default();
    let small =
        verify_reduction_small(&Graph::complete(2), Variant::Ulcs, VerifyMode::Auto, 0, 0, &lim, Execution::Sequential)
            .unwrap();
    assert_eq!(small.mode, VerifyMode::Full);
    assert_eq!(small.exact_value, Some(4));
    let big =
        verify_reduction_small(&Graph::complete(3), Variant::Ulcs, VerifyMode::Auto, 4, 0, &lim, Execution::Sequential)
            .unwrap();
    assert_eq!(big.mode, VerifyMode::Certificate);
}

#[test]
fn empty_source_instances() {
    let h = Graph::empty(3);
    let u = reduce(&h, Variant::Ulcs);
    assert_eq!(u.graph.vertex_count(), 6);
    assert_eq!(u.graph.edge_count(), 3);
    let o = reduce(&h, Variant::Olcs);
    assert_eq!((o.graph.vertex_count(), o.k), (3, 2));
    assert_eq!(ReductionInstance::expected_sizes(Variant::Olcs, &h), (3, 3, 2));
}

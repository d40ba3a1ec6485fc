mod common;

use graph_algebra::harness::{default_samples, verify_box, verify_gensubdivision, verify_hypergraph, verify_tensor_power};
use graph_algebra::{is_isomorphic, Graph, SubdivisionScheme, DEFAULT_BUDGET};

#[test]
fn reports_are_deterministic() {
    let ps = default_samples();
    let a = verify_box(&Graph::path(2), &ps, DEFAULT_BUDGET).unwrap();
    let b = verify_box(&Graph::path(2), &ps, DEFAULT_BUDGET).unwrap();
    assert_eq!(a.render_machine(), b.render_machine());
    let scheme = SubdivisionScheme::path(2).unwrap();
    let a = verify_gensubdivision(&scheme, &Graph::cycle(4), &ps, DEFAULT_BUDGET).unwrap();
    let b = verify_gensubdivision(&scheme, &Graph::cycle(4), &ps, DEFAULT_BUDGET).unwrap();
    assert_eq!(a.render_machine(), b.render_machine());
}

#[test]
fn box_of_a_square_is_the_cube() {
    let scheme = SubdivisionScheme::parallel().unwrap();
    assert!(is_isomorphic(&scheme.subdivide(&Graph::cycle(4)).unwrap(), &common::cube()));
    let domino = Graph::unlabeled(2, 6, [[0u32, 1], [1, 2], [3, 4], [4, 5], [0, 3], [1, 4], [2, 5]]).unwrap();
    assert!(is_isomorphic(&scheme.subdivide(&Graph::path(2)).unwrap(), &domino));
}

#[test]
fn failing_budget_is_reported_as_an_error() {
    let err = verify_tensor_power(&Graph::cycle(4), 2, 10).unwrap_err();
    assert!(matches!(err, graph_algebra::Error::Budget { .. }), "{:?}", err);
}

#[test]
fn hypergraph_reports_reject_hypergraph_inputs() {
    assert!(verify_hypergraph(&Graph::complete(3, 3), 3, 1, DEFAULT_BUDGET).is_err());
    assert!(verify_hypergraph(&Graph::complete(2, 2), 3, 2, DEFAULT_BUDGET).is_err());
}

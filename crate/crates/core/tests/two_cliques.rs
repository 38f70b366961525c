//! Worked examples on two disjoint 7-cliques, with hand-checked answers.

use std::collections::BTreeSet;
use std::path::PathBuf;

use graphinsight_core::answer::TypedAnswer;
use graphinsight_core::description::parse_description;
use graphinsight_core::oracle::{CompositeQuery, MacroQuery, MicroQuery, Query};
use graphinsight_core::Graph;

fn fixture(name: &str) -> Graph {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/fixtures").join(name);
    let text = std::fs::read_to_string(&path).unwrap();
    let (directed, edges) = parse_description(&text).unwrap();
    let nodes: Vec<u32> = edges.iter().flat_map(|e| [e.u, e.v]).collect();
    Graph::new(directed, nodes, edges).unwrap()
}

fn ask(g: &Graph, q: Query) -> TypedAnswer {
    q.answer(g).unwrap()
}

fn set(ids: &[u32]) -> TypedAnswer {
    TypedAnswer::NodeSet(ids.iter().copied().collect())
}

#[test]
fn first_walkthrough() {
    let g = fixture("two_cliques_a.txt");
    assert_eq!(g.edge_count(), 42);
    assert_eq!(ask(&g, Query::Macro(MacroQuery::NodeCount)), TypedAnswer::number(14));
    assert_eq!(ask(&g, Query::Macro(MacroQuery::IsConnected)), TypedAnswer::Boolean(false));
    assert_eq!(ask(&g, Query::Macro(MacroQuery::HasCycle)), TypedAnswer::Boolean(true));
    assert_eq!(ask(&g, Query::Macro(MacroQuery::MaxEdgeWeight)), TypedAnswer::number(5));
    assert_eq!(
        ask(&g, Query::Macro(MacroQuery::TopKDegrees(3))),
        TypedAnswer::ScoredPairList(vec![(0, 6), (1, 6), (2, 6)])
    );
    assert_eq!(ask(&g, Query::Micro(MicroQuery::Degree(12))), TypedAnswer::number(6));
    assert_eq!(ask(&g, Query::Micro(MicroQuery::Neighbors(12))), set(&[7, 8, 9, 10, 11, 13]));
    assert_eq!(ask(&g, Query::Micro(MicroQuery::EdgeWeight(12, 13))), TypedAnswer::number(5));
    assert_eq!(ask(&g, Query::Micro(MicroQuery::DirectConnection(8, 2))), TypedAnswer::Boolean(false));
    assert_eq!(ask(&g, Query::Micro(MicroQuery::IsLeaf(0))), TypedAnswer::Boolean(false));
    assert_eq!(ask(&g, Query::Micro(MicroQuery::EvenDegree(12))), TypedAnswer::Boolean(true));
    assert_eq!(ask(&g, Query::Micro(MicroQuery::DegreeGreater(2, 6))), TypedAnswer::Boolean(false));
}

#[test]
fn second_walkthrough() {
    let g = fixture("two_cliques_b.txt");
    assert_eq!(ask(&g, Query::Composite(CompositeQuery::CompleteSubgraph(vec![0, 1, 6]))), TypedAnswer::Boolean(true));
    assert_eq!(ask(&g, Query::Composite(CompositeQuery::KOrderNeighbors { node: 7, k: 2 })), set(&[]));
    assert_eq!(ask(&g, Query::Composite(CompositeQuery::HighestDegreeNeighborOfNeighbor(9))), TypedAnswer::number(8));
    assert_eq!(ask(&g, Query::Composite(CompositeQuery::NeighborsConnectedTo { node: 11, target: 3 })), set(&[]));
    assert_eq!(ask(&g, Query::Composite(CompositeQuery::EdgeCommonNeighbors(1, 5))), set(&[0, 2, 3, 4, 6]));

    let others = [0, 1, 3, 4, 5, 6];
    let mut pairs = BTreeSet::new();
    for (i, &a) in others.iter().enumerate() {
        for &b in &others[i + 1..] {
            pairs.insert((a, b));
        }
    }
    assert_eq!(pairs.len(), 15);
    assert_eq!(ask(&g, Query::Composite(CompositeQuery::NeighborPairs(2))), TypedAnswer::PairSet(pairs));

    let mut edges = BTreeSet::new();
    for a in [8, 11] {
        for b in [7, 8, 9, 10, 11, 12, 13] {
            if a != b {
                edges.insert((a, b));
            }
        }
    }
    assert_eq!(edges.len(), 12);
    assert_eq!(ask(&g, Query::Composite(CompositeQuery::ConnectedEdges(8, 11))), TypedAnswer::AnchoredPairSet(edges));
}

#[test]
fn questions_round_trip_through_templates() {
    let g = fixture("two_cliques_b.txt");
    let q = Query::Composite(CompositeQuery::ConnectedEdges(8, 11));
    let text = q.question();
    assert!(text.starts_with("Given the edge (8, 11), find all edges connected to it."));
    assert_eq!(Query::from_question(&text), Some(q.clone()));
    assert!(q.answer(&g).is_ok());
}

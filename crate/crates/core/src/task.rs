//! Benchmark task kinds and their question templates.
//!
//! Questions render from fixed templates so they can be parsed back into a
//! [`Query`]; the simulator and the agent both rely on that.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::answer::{AnswerType, TypedAnswer};
use crate::oracle::{CompositeQuery, MacroQuery, MicroQuery, Query};
use crate::text::{match_template, parse_id_list, parse_u32};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Macro,
    Micro,
    Composite,
}

impl Level {
    /// Report bucket: composite tasks count as micro.
    pub fn report_level(self) -> &'static str {
        match self {
            Level::Macro => "macro",
            Level::Micro | Level::Composite => "micro",
        }
    }
}

macro_rules! task_kinds {
    ($($variant:ident => $name:literal, $level:ident, $template:literal;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum TaskKind {
            $($variant,)*
        }

        impl TaskKind {
            pub const ALL: &'static [TaskKind] = &[$(TaskKind::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(TaskKind::$variant => $name,)*
                }
            }

            pub fn level(self) -> Level {
                match self {
                    $(TaskKind::$variant => Level::$level,)*
                }
            }

            /// Question template; `{}` marks a parameter slot.
            pub fn template(self) -> &'static str {
                match self {
                    $(TaskKind::$variant => $template,)*
                }
            }
        }
    };
}

task_kinds! {
    NodeCount => "node_count", Macro, "How many nodes are in this graph?";
    IsConnected => "is_connected", Macro, "Is this graph a connected graph?";
    HasCycle => "has_cycle", Macro, "Does this graph contain a cycle?";
    MaxEdgeWeight => "max_edge_weight", Macro, "What is the maximum weight of the edges in this graph?";
    TopKDegrees => "top_k_degrees", Macro, "What are the nodes with the top {} highest degrees in this graph?";
    DirectConnection => "direct_connection", Micro, "Is there a direct connection between node {} and node {}?";
    Degree => "degree", Micro, "What is the degree of node {}?";
    IsLeaf => "is_leaf", Micro, "Is node {} a leaf node?";
    EvenDegree => "even_degree", Micro, "Does node {} have an even degree?";
    Neighbors => "neighbors", Micro, "Who are the neighbors of node {}?";
    CommonNeighbors => "common_neighbors", Micro, "Do nodes {} and {} have any common neighbors?";
    DegreeGreater => "degree_greater", Micro, "Is the degree of node {} greater than the degree of node {}?";
    EdgeWeight => "edge_weight", Micro, "What is the weight of the edge between node {} and node {}?";
    ConnectedEdges => "connected_edges", Composite, "Given the edge ({}, {}), find all edges connected to it. List the answers in the format of '[(1, 2), (3, 4), ...]'.";
    CompleteSubgraph => "complete_subgraph", Composite, "Given the nodes {}, determine if they form a complete subgraph. List the answer directly in the format of 'Yes' or 'No'.";
    HighestDegreeNeighborOfNeighbor => "highest_degree_nn", Composite, "Given the node {}, find the neighbor's neighbor with the highest degree. List the answer directly as the node id.";
    KOrderNeighbors => "k_order_neighbors", Composite, "Given the node {}, find all its {}-order neighbors. Note that the {}-order neighbors do not include the 1-order neighbors, and so on. List the answers in the format of '[1, 2, ...]'.";
    NeighborsConnectedTo => "neighbors_connected_to", Composite, "Given the node {}, find its neighbors that are directly connected to node {}. List the answers in the format of '[1, 2, ...]'.";
    NeighborPairs => "neighbor_pairs", Composite, "Given the node {}, find all connected pairs among its neighbors. List the answers in the format of '[(1, 2), (3, 4), ...]'.";
    EdgeCommonNeighbors => "edge_common_neighbors", Composite, "Given the edge ({}, {}), find all common neighbors of its two end nodes. List the answers in the format of '[1, 2, ...]'.";
    Triangles => "triangles", Composite, "Given the node {}, find all triangles (sets of three nodes that are mutually connected) it forms with its neighbors. List the answers in the format of '[(1, 2, 3), (4, 5, 6), ...]'.";
    CommonKOrderNeighbors => "common_k_order", Composite, "Given nodes {} and {}, find all common {}-order neighbors. List the answers in the format of '[1, 2, ...]'.";
}

impl TaskKind {
    /// The 20-kind suite: 5 macro, 8 micro and the 7 composite kinds that
    /// carry worked templates. `Triangles` and `CommonKOrderNeighbors` are
    /// available on request.
    pub const STANDARD: &'static [TaskKind] = &[
        TaskKind::NodeCount,
        TaskKind::IsConnected,
        TaskKind::HasCycle,
        TaskKind::MaxEdgeWeight,
        TaskKind::TopKDegrees,
        TaskKind::DirectConnection,
        TaskKind::Degree,
        TaskKind::IsLeaf,
        TaskKind::EvenDegree,
        TaskKind::Neighbors,
        TaskKind::CommonNeighbors,
        TaskKind::DegreeGreater,
        TaskKind::EdgeWeight,
        TaskKind::ConnectedEdges,
        TaskKind::CompleteSubgraph,
        TaskKind::HighestDegreeNeighborOfNeighbor,
        TaskKind::KOrderNeighbors,
        TaskKind::NeighborsConnectedTo,
        TaskKind::NeighborPairs,
        TaskKind::EdgeCommonNeighbors,
    ];
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TaskKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TaskKind::ALL.iter().copied().find(|k| k.as_str() == s).ok_or_else(|| format!("unknown task kind '{s}'"))
    }
}

impl Query {
    pub fn kind(&self) -> TaskKind {
        match self {
            Query::Macro(q) => match q {
                MacroQuery::NodeCount => TaskKind::NodeCount,
                MacroQuery::IsConnected => TaskKind::IsConnected,
                MacroQuery::HasCycle => TaskKind::HasCycle,
                MacroQuery::MaxEdgeWeight => TaskKind::MaxEdgeWeight,
                MacroQuery::TopKDegrees(_) => TaskKind::TopKDegrees,
            },
            Query::Micro(q) => match q {
                MicroQuery::DirectConnection(..) => TaskKind::DirectConnection,
                MicroQuery::Degree(_) => TaskKind::Degree,
                MicroQuery::IsLeaf(_) => TaskKind::IsLeaf,
                MicroQuery::EvenDegree(_) => TaskKind::EvenDegree,
                MicroQuery::Neighbors(_) => TaskKind::Neighbors,
                MicroQuery::CommonNeighbors(..) => TaskKind::CommonNeighbors,
                MicroQuery::DegreeGreater(..) => TaskKind::DegreeGreater,
                MicroQuery::EdgeWeight(..) => TaskKind::EdgeWeight,
            },
            Query::Composite(q) => match q {
                CompositeQuery::ConnectedEdges(..) => TaskKind::ConnectedEdges,
                CompositeQuery::CompleteSubgraph(_) => TaskKind::CompleteSubgraph,
                CompositeQuery::HighestDegreeNeighborOfNeighbor(_) => TaskKind::HighestDegreeNeighborOfNeighbor,
                CompositeQuery::KOrderNeighbors { .. } => TaskKind::KOrderNeighbors,
                CompositeQuery::NeighborsConnectedTo { .. } => TaskKind::NeighborsConnectedTo,
                CompositeQuery::NeighborPairs(_) => TaskKind::NeighborPairs,
                CompositeQuery::EdgeCommonNeighbors(..) => TaskKind::EdgeCommonNeighbors,
                CompositeQuery::Triangles(_) => TaskKind::Triangles,
                CompositeQuery::CommonKOrderNeighbors { .. } => TaskKind::CommonKOrderNeighbors,
            },
        }
    }

    /// Slot values in template order.
    fn slots(&self) -> Vec<String> {
        let s = |x: &dyn fmt::Display| format!("{x}");
        match self {
            Query::Macro(MacroQuery::TopKDegrees(k)) => alloc::vec![s(k)],
            Query::Macro(_) => Vec::new(),
            Query::Composite(CompositeQuery::CompleteSubgraph(ns)) => {
                // caller's order, not sorted
                let mut out = String::from("[");
                for (i, n) in ns.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&s(n));
                }
                out.push(']');
                alloc::vec![out]
            }
            Query::Composite(CompositeQuery::KOrderNeighbors { node, k }) => alloc::vec![s(node), s(k), s(k)],
            Query::Composite(CompositeQuery::CommonKOrderNeighbors { u, v, k }) => alloc::vec![s(u), s(v), s(k)],
            other => other.mentioned_nodes().iter().map(|n| s(n)).collect(),
        }
    }

    pub fn question(&self) -> String {
        let template = self.kind().template();
        let mut out = String::with_capacity(template.len() + 16);
        let mut slots = self.slots().into_iter();
        let mut pieces = template.split("{}");
        if let Some(first) = pieces.next() {
            out.push_str(first);
        }
        for piece in pieces {
            out.push_str(&slots.next().unwrap_or_default());
            out.push_str(piece);
        }
        out
    }

    /// Inverse of [`Query::question`].
    pub fn from_question(text: &str) -> Option<Query> {
        let text = text.trim();
        TaskKind::ALL.iter().find_map(|&kind| {
            let caps = match_template(kind.template(), text)?;
            build_query(kind, &caps)
        })
    }
}

fn build_query(kind: TaskKind, caps: &[&str]) -> Option<Query> {
    let id = |i: usize| caps.get(i).and_then(|c| parse_u32(c));
    let k = |i: usize| id(i).map(|x| x as usize).filter(|&x| x >= 1);
    use TaskKind::*;
    Some(match kind {
        NodeCount => Query::Macro(MacroQuery::NodeCount),
        IsConnected => Query::Macro(MacroQuery::IsConnected),
        HasCycle => Query::Macro(MacroQuery::HasCycle),
        MaxEdgeWeight => Query::Macro(MacroQuery::MaxEdgeWeight),
        TopKDegrees => Query::Macro(MacroQuery::TopKDegrees(k(0)?)),
        DirectConnection => Query::Micro(MicroQuery::DirectConnection(id(0)?, id(1)?)),
        Degree => Query::Micro(MicroQuery::Degree(id(0)?)),
        IsLeaf => Query::Micro(MicroQuery::IsLeaf(id(0)?)),
        EvenDegree => Query::Micro(MicroQuery::EvenDegree(id(0)?)),
        Neighbors => Query::Micro(MicroQuery::Neighbors(id(0)?)),
        CommonNeighbors => Query::Micro(MicroQuery::CommonNeighbors(id(0)?, id(1)?)),
        DegreeGreater => Query::Micro(MicroQuery::DegreeGreater(id(0)?, id(1)?)),
        EdgeWeight => Query::Micro(MicroQuery::EdgeWeight(id(0)?, id(1)?)),
        ConnectedEdges => Query::Composite(CompositeQuery::ConnectedEdges(id(0)?, id(1)?)),
        CompleteSubgraph => Query::Composite(CompositeQuery::CompleteSubgraph(parse_id_list(caps.first()?)?)),
        HighestDegreeNeighborOfNeighbor => Query::Composite(CompositeQuery::HighestDegreeNeighborOfNeighbor(id(0)?)),
        KOrderNeighbors => {
            let k1 = k(1)?;
            if k(2)? != k1 {
                return None;
            }
            Query::Composite(CompositeQuery::KOrderNeighbors { node: id(0)?, k: k1 })
        }
        NeighborsConnectedTo => Query::Composite(CompositeQuery::NeighborsConnectedTo { node: id(0)?, target: id(1)? }),
        NeighborPairs => Query::Composite(CompositeQuery::NeighborPairs(id(0)?)),
        EdgeCommonNeighbors => Query::Composite(CompositeQuery::EdgeCommonNeighbors(id(0)?, id(1)?)),
        Triangles => Query::Composite(CompositeQuery::Triangles(id(0)?)),
        CommonKOrderNeighbors => {
            Query::Composite(CompositeQuery::CommonKOrderNeighbors { u: id(0)?, v: id(1)?, k: k(2)? })
        }
    })
}

/// A benchmark question with its ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct Task {
    pub id: String,
    pub graph_id: usize,
    pub query: Query,
    pub question: String,
    pub truth: TypedAnswer,
}

impl Task {
    pub fn kind(&self) -> TaskKind {
        self.query.kind()
    }

    pub fn answer_type(&self) -> AnswerType {
        self.query.answer_type()
    }

    pub fn level(&self) -> Level {
        self.kind().level()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twenty_two_kinds_twenty_standard() {
        assert_eq!(TaskKind::ALL.len(), 22);
        assert_eq!(TaskKind::STANDARD.len(), 20);
        let macro_count = TaskKind::STANDARD.iter().filter(|k| k.level() == Level::Macro).count();
        let composite = TaskKind::STANDARD.iter().filter(|k| k.level() == Level::Composite).count();
        assert_eq!((macro_count, composite), (5, 7));
    }

    #[test]
    fn worked_questions_render() {
        let cases = [
            (Query::Macro(MacroQuery::NodeCount), "How many nodes are in this graph?"),
            (
                Query::Macro(MacroQuery::TopKDegrees(3)),
                "What are the nodes with the top 3 highest degrees in this graph?",
            ),
            (
                Query::Micro(MicroQuery::DirectConnection(8, 2)),
                "Is there a direct connection between node 8 and node 2?",
            ),
            (Query::Micro(MicroQuery::CommonNeighbors(7, 11)), "Do nodes 7 and 11 have any common neighbors?"),
            (
                Query::Composite(CompositeQuery::KOrderNeighbors { node: 7, k: 2 }),
                "Given the node 7, find all its 2-order neighbors. Note that the 2-order neighbors do not include the 1-order neighbors, and so on. List the answers in the format of '[1, 2, ...]'.",
            ),
            (
                Query::Composite(CompositeQuery::CompleteSubgraph(alloc::vec![0, 1, 6])),
                "Given the nodes [0, 1, 6], determine if they form a complete subgraph. List the answer directly in the format of 'Yes' or 'No'.",
            ),
            (
                Query::Composite(CompositeQuery::ConnectedEdges(8, 11)),
                "Given the edge (8, 11), find all edges connected to it. List the answers in the format of '[(1, 2), (3, 4), ...]'.",
            ),
        ];
        for (q, text) in cases {
            assert_eq!(q.question(), text);
            assert_eq!(Query::from_question(text), Some(q));
        }
    }

    #[test]
    fn every_kind_round_trips() {
        let samples = [
            Query::Macro(MacroQuery::HasCycle),
            Query::Micro(MicroQuery::EdgeWeight(12, 13)),
            Query::Micro(MicroQuery::DegreeGreater(2, 6)),
            Query::Composite(CompositeQuery::Triangles(4)),
            Query::Composite(CompositeQuery::CommonKOrderNeighbors { u: 1, v: 9, k: 3 }),
            Query::Composite(CompositeQuery::NeighborsConnectedTo { node: 11, target: 3 }),
            Query::Composite(CompositeQuery::EdgeCommonNeighbors(1, 5)),
            Query::Composite(CompositeQuery::HighestDegreeNeighborOfNeighbor(9)),
            Query::Composite(CompositeQuery::NeighborPairs(2)),
        ];
        for q in samples {
            assert_eq!(Query::from_question(&q.question()), Some(q.clone()), "{}", q.question());
        }
        assert_eq!(Query::from_question("What is the capital of France?"), None);
        let mismatched_k = "Given the node 7, find all its 2-order neighbors. Note that the 3-order neighbors do not include the 1-order neighbors, and so on. List the answers in the format of '[1, 2, ...]'.";
        assert_eq!(Query::from_question(mismatched_k), None);
    }

    #[test]
    fn kind_names_round_trip() {
        for &k in TaskKind::ALL {
            assert_eq!(k.as_str().parse::<TaskKind>().unwrap(), k);
        }
    }
}

//! Weighted graph store permitting multi-edges and self-loops.
//!
//! Edges keep their insertion order; that order is what the raw description
//! renders and what "first matching edge" lookups resolve against.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub type NodeId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub w: u32,
}

impl Edge {
    pub const fn new(u: NodeId, v: NodeId, w: u32) -> Self {
        Self { u, v, w }
    }

    pub fn is_self_loop(&self) -> bool {
        self.u == self.v
    }

    /// Endpoint pair with the smaller id first.
    pub fn canonical_pair(&self) -> (NodeId, NodeId) {
        if self.u <= self.v {
            (self.u, self.v)
        } else {
            (self.v, self.u)
        }
    }

    pub fn touches(&self, x: NodeId) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite `x`; `x` itself for a self-loop.
    pub fn other(&self, x: NodeId) -> NodeId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

impl From<(NodeId, NodeId, u32)> for Edge {
    fn from((u, v, w): (NodeId, NodeId, u32)) -> Self {
        Self { u, v, w }
    }
}

/// Immutable after construction. Incidence lists are built once so every
/// oracle is a read-only walk.
#[derive(Debug, Clone)]
pub struct Graph {
    directed: bool,
    nodes: Vec<NodeId>,
    edges: Vec<Edge>,
    // per node index: (other endpoint, edge index), sorted; a self-loop appears once
    incidence: Vec<Vec<(NodeId, usize)>>,
    degrees: Vec<usize>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.directed == other.directed && self.nodes == other.nodes && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new<I>(directed: bool, nodes: I, edges: Vec<Edge>) -> Result<Self>
    where
        I: IntoIterator<Item = NodeId>,
    {
        let nodes: Vec<NodeId> = nodes.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut incidence = vec![Vec::new(); nodes.len()];
        let mut degrees = vec![0usize; nodes.len()];
        for (idx, e) in edges.iter().enumerate() {
            if e.w == 0 {
                return Err(Error::ZeroWeight { u: e.u, v: e.v });
            }
            let (iu, iv) = match (nodes.binary_search(&e.u), nodes.binary_search(&e.v)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => return Err(Error::DanglingEdge { u: e.u, v: e.v }),
            };
            degrees[iu] += 1;
            degrees[iv] += 1;
            incidence[iu].push((e.v, idx));
            if iu != iv {
                incidence[iv].push((e.u, idx));
            }
        }
        for list in &mut incidence {
            list.sort_unstable();
        }
        Ok(Self { directed, nodes, edges, incidence, degrees })
    }

    pub fn undirected<I>(nodes: I, edges: Vec<Edge>) -> Result<Self>
    where
        I: IntoIterator<Item = NodeId>,
    {
        Self::new(false, nodes, edges)
    }

    /// Node set inferred from edge endpoints.
    pub fn from_edges(directed: bool, edges: &[(NodeId, NodeId, u32)]) -> Result<Self> {
        let nodes: Vec<NodeId> = edges.iter().flat_map(|&(u, v, _)| [u, v]).collect();
        Self::new(directed, nodes, edges.iter().map(|&e| Edge::from(e)).collect())
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Ascending, distinct.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.nodes.binary_search(&v).is_ok()
    }

    pub fn index_of(&self, v: NodeId) -> Result<usize> {
        self.nodes.binary_search(&v).map_err(|_| Error::UnknownNode(v))
    }

    pub fn require(&self, v: NodeId) -> Result<()> {
        self.index_of(v).map(|_| ())
    }

    /// `(other endpoint, edge index)` for every edge touching `v`, sorted by
    /// other endpoint then insertion order. Direction is ignored.
    pub fn incident(&self, v: NodeId) -> Result<&[(NodeId, usize)]> {
        Ok(&self.incidence[self.index_of(v)?])
    }

    pub(crate) fn incident_at(&self, idx: usize) -> &[(NodeId, usize)] {
        &self.incidence[idx]
    }

    /// Endpoint incidences; a self-loop counts twice, multi-edges separately.
    pub fn degree(&self, v: NodeId) -> Result<usize> {
        Ok(self.degrees[self.index_of(v)?])
    }

    pub(crate) fn degree_at(&self, idx: usize) -> usize {
        self.degrees[idx]
    }

    /// Distinct adjacent nodes, ascending. `v` is included only if it carries
    /// a self-loop.
    pub fn neighbors(&self, v: NodeId) -> Result<Vec<NodeId>> {
        Ok(self.neighbors_at(self.index_of(v)?))
    }

    pub(crate) fn neighbors_at(&self, idx: usize) -> Vec<NodeId> {
        let mut out: Vec<NodeId> = self.incidence[idx].iter().map(|&(n, _)| n).collect();
        out.dedup();
        out
    }

    pub fn neighbor_set(&self, v: NodeId) -> Result<BTreeSet<NodeId>> {
        Ok(self.incident(v)?.iter().map(|&(n, _)| n).collect())
    }

    pub fn adjacent(&self, u: NodeId, v: NodeId) -> Result<bool> {
        self.require(v)?;
        Ok(self.first_edge_between(u, v)?.is_some())
    }

    /// Index of the first inserted edge joining `u` and `v` in either direction.
    pub fn first_edge_between(&self, u: NodeId, v: NodeId) -> Result<Option<usize>> {
        self.require(v)?;
        let list = self.incident(u)?;
        let start = list.partition_point(|&(n, _)| n < v);
        Ok(list.get(start).filter(|&&(n, _)| n == v).map(|&(_, idx)| idx))
    }

    /// True when no two edges share an endpoint pair (ordered pair for
    /// directed graphs). Self-loops are allowed.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| {
            let key = if self.directed { (e.u, e.v) } else { e.canonical_pair() };
            seen.insert(key)
        })
    }

    pub fn has_self_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_self_loop)
    }

    /// Subgraph keeping every node and only the listed edges.
    pub fn with_edges(&self, edges: Vec<Edge>) -> Result<Self> {
        Self::new(self.directed, self.nodes.iter().copied(), edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_dangling_and_zero_weight() {
        assert_eq!(Graph::undirected([0, 1], vec![Edge::new(0, 2, 1)]), Err(Error::DanglingEdge { u: 0, v: 2 }));
        assert_eq!(Graph::undirected([0, 1], vec![Edge::new(0, 1, 0)]), Err(Error::ZeroWeight { u: 0, v: 1 }));
    }

    #[test]
    fn self_loop_degree_and_neighbors() {
        let g = Graph::undirected([0, 1], vec![Edge::new(0, 0, 2), Edge::new(0, 1, 1)]).unwrap();
        assert_eq!(g.degree(0).unwrap(), 3);
        assert_eq!(g.neighbors(0).unwrap(), vec![0, 1]);
        assert_eq!(g.neighbors(1).unwrap(), vec![0]);
    }

    #[test]
    fn isolated_node() {
        let g = Graph::undirected([0, 1, 5], vec![Edge::new(0, 1, 1)]).unwrap();
        assert_eq!(g.degree(5).unwrap(), 0);
        assert!(g.neighbors(5).unwrap().is_empty());
        assert_eq!(g.degree(7), Err(Error::UnknownNode(7)));
    }

    #[test]
    fn multi_edges_count_separately() {
        let g = Graph::from_edges(false, &[(0, 1, 3), (1, 0, 5), (1, 2, 1)]).unwrap();
        assert_eq!(g.degree(1).unwrap(), 3);
        assert_eq!(g.first_edge_between(1, 0).unwrap(), Some(0));
        assert!(!g.is_simple());
    }
}

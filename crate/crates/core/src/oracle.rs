//! Exact answers for every benchmark question.
//!
//! All oracles read the graph through its undirected incidence lists except
//! cycle detection on directed graphs, which follows arc direction.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::answer::{AnswerType, TypedAnswer};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MacroQuery {
    NodeCount,
    IsConnected,
    HasCycle,
    MaxEdgeWeight,
    TopKDegrees(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MicroQuery {
    DirectConnection(NodeId, NodeId),
    Degree(NodeId),
    IsLeaf(NodeId),
    EvenDegree(NodeId),
    Neighbors(NodeId),
    CommonNeighbors(NodeId, NodeId),
    DegreeGreater(NodeId, NodeId),
    EdgeWeight(NodeId, NodeId),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CompositeQuery {
    ConnectedEdges(NodeId, NodeId),
    CompleteSubgraph(Vec<NodeId>),
    HighestDegreeNeighborOfNeighbor(NodeId),
    KOrderNeighbors { node: NodeId, k: usize },
    NeighborsConnectedTo { node: NodeId, target: NodeId },
    NeighborPairs(NodeId),
    EdgeCommonNeighbors(NodeId, NodeId),
    Triangles(NodeId),
    CommonKOrderNeighbors { u: NodeId, v: NodeId, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Query {
    Macro(MacroQuery),
    Micro(MicroQuery),
    Composite(CompositeQuery),
}

impl Query {
    pub fn answer(&self, g: &Graph) -> Result<TypedAnswer> {
        match self {
            Query::Macro(q) => macro_oracle(g, q),
            Query::Micro(q) => micro_oracle(g, q),
            Query::Composite(q) => composite_oracle(g, q),
        }
    }

    pub fn answer_type(&self) -> AnswerType {
        use AnswerType::*;
        match self {
            Query::Macro(q) => match q {
                MacroQuery::NodeCount | MacroQuery::MaxEdgeWeight => Number,
                MacroQuery::IsConnected | MacroQuery::HasCycle => Boolean,
                MacroQuery::TopKDegrees(_) => ScoredPairList,
            },
            Query::Micro(q) => match q {
                MicroQuery::DirectConnection(..)
                | MicroQuery::IsLeaf(_)
                | MicroQuery::EvenDegree(_)
                | MicroQuery::DegreeGreater(..) => Boolean,
                MicroQuery::Degree(_) | MicroQuery::EdgeWeight(..) => Number,
                MicroQuery::Neighbors(_) | MicroQuery::CommonNeighbors(..) => NodeSet,
            },
            Query::Composite(q) => match q {
                CompositeQuery::ConnectedEdges(..) => AnchoredPairSet,
                CompositeQuery::CompleteSubgraph(_) => Boolean,
                CompositeQuery::HighestDegreeNeighborOfNeighbor(_) => Number,
                CompositeQuery::KOrderNeighbors { .. }
                | CompositeQuery::NeighborsConnectedTo { .. }
                | CompositeQuery::EdgeCommonNeighbors(..)
                | CompositeQuery::CommonKOrderNeighbors { .. } => NodeSet,
                CompositeQuery::NeighborPairs(_) => PairSet,
                CompositeQuery::Triangles(_) => TripleSet,
            },
        }
    }

    pub fn is_macro(&self) -> bool {
        matches!(self, Query::Macro(_))
    }

    /// Node ids named by the question parameters, in parameter order.
    pub fn mentioned_nodes(&self) -> Vec<NodeId> {
        match self {
            Query::Macro(_) => Vec::new(),
            Query::Micro(q) => match *q {
                MicroQuery::Degree(v)
                | MicroQuery::IsLeaf(v)
                | MicroQuery::EvenDegree(v)
                | MicroQuery::Neighbors(v) => vec![v],
                MicroQuery::DirectConnection(u, v)
                | MicroQuery::CommonNeighbors(u, v)
                | MicroQuery::DegreeGreater(u, v)
                | MicroQuery::EdgeWeight(u, v) => vec![u, v],
            },
            Query::Composite(q) => match q {
                CompositeQuery::CompleteSubgraph(ns) => ns.clone(),
                &CompositeQuery::HighestDegreeNeighborOfNeighbor(v)
                | &CompositeQuery::KOrderNeighbors { node: v, .. }
                | &CompositeQuery::NeighborPairs(v)
                | &CompositeQuery::Triangles(v) => vec![v],
                &CompositeQuery::ConnectedEdges(u, v)
                | &CompositeQuery::EdgeCommonNeighbors(u, v)
                | &CompositeQuery::NeighborsConnectedTo { node: u, target: v }
                | &CompositeQuery::CommonKOrderNeighbors { u, v, .. } => vec![u, v],
            },
        }
    }
}

pub fn macro_oracle(g: &Graph, q: &MacroQuery) -> Result<TypedAnswer> {
    Ok(match *q {
        MacroQuery::NodeCount => TypedAnswer::number(g.node_count() as f64),
        MacroQuery::IsConnected => TypedAnswer::Boolean(is_connected(g)?),
        MacroQuery::HasCycle => TypedAnswer::Boolean(has_cycle(g)),
        MacroQuery::MaxEdgeWeight => {
            let w = g.edges().iter().map(|e| e.w).max().ok_or(Error::NoEdges)?;
            TypedAnswer::number(w)
        }
        MacroQuery::TopKDegrees(k) => TypedAnswer::ScoredPairList(top_k_degrees(g, k)?),
    })
}

pub fn micro_oracle(g: &Graph, q: &MicroQuery) -> Result<TypedAnswer> {
    Ok(match *q {
        MicroQuery::DirectConnection(u, v) => TypedAnswer::Boolean(g.adjacent(u, v)?),
        MicroQuery::Degree(v) => TypedAnswer::number(g.degree(v)? as f64),
        MicroQuery::IsLeaf(v) => TypedAnswer::Boolean(g.degree(v)? == 1),
        MicroQuery::EvenDegree(v) => TypedAnswer::Boolean(g.degree(v)? % 2 == 0),
        MicroQuery::Neighbors(v) => TypedAnswer::nodes(g.neighbors(v)?),
        MicroQuery::CommonNeighbors(u, v) => TypedAnswer::NodeSet(common_neighbors(g, u, v)?),
        MicroQuery::DegreeGreater(u, v) => TypedAnswer::Boolean(g.degree(u)? > g.degree(v)?),
        MicroQuery::EdgeWeight(u, v) => TypedAnswer::number(edge_weight(g, u, v)?),
    })
}

pub fn composite_oracle(g: &Graph, q: &CompositeQuery) -> Result<TypedAnswer> {
    Ok(match q {
        &CompositeQuery::ConnectedEdges(u, v) => TypedAnswer::AnchoredPairSet(connected_edges(g, u, v)?),
        CompositeQuery::CompleteSubgraph(nodes) => TypedAnswer::Boolean(is_complete(g, nodes)?),
        &CompositeQuery::HighestDegreeNeighborOfNeighbor(v) => {
            TypedAnswer::number(highest_degree_neighbor_of_neighbor(g, v)?)
        }
        &CompositeQuery::KOrderNeighbors { node, k } => TypedAnswer::NodeSet(k_order_neighbors(g, node, k)?),
        &CompositeQuery::NeighborsConnectedTo { node, target } => {
            TypedAnswer::NodeSet(common_neighbors(g, node, target)?)
        }
        &CompositeQuery::NeighborPairs(v) => TypedAnswer::PairSet(neighbor_pairs(g, v)?),
        &CompositeQuery::EdgeCommonNeighbors(u, v) => {
            require_edge(g, u, v)?;
            TypedAnswer::NodeSet(common_neighbors(g, u, v)?)
        }
        &CompositeQuery::Triangles(v) => TypedAnswer::TripleSet(
            neighbor_pairs(g, v)?.into_iter().map(|(a, b)| crate::answer::canonical_triple((v, a, b))).collect(),
        ),
        &CompositeQuery::CommonKOrderNeighbors { u, v, k } => {
            let a = k_order_neighbors(g, u, k)?;
            let b = k_order_neighbors(g, v, k)?;
            TypedAnswer::NodeSet(a.intersection(&b).copied().collect())
        }
    })
}

/// Smallest weight among the edges joining `u` and `v`, so parallel edges
/// give the same answer whatever order they are listed in.
pub fn edge_weight(g: &Graph, u: NodeId, v: NodeId) -> Result<u32> {
    g.require(v)?;
    g.incident(u)?
        .iter()
        .filter(|&&(other, _)| other == v)
        .map(|&(_, e)| g.edges()[e].w)
        .min()
        .ok_or(Error::NoSuchEdge(u, v))
}

fn require_edge(g: &Graph, u: NodeId, v: NodeId) -> Result<()> {
    g.first_edge_between(u, v)?.map(|_| ()).ok_or(Error::NoSuchEdge(u, v))
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False when already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Weak connectivity. A single node is connected.
pub fn is_connected(g: &Graph) -> Result<bool> {
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut ds = DisjointSet::new(g.node_count());
    let mut components = g.node_count();
    for e in g.edges() {
        if ds.union(g.index_of(e.u)?, g.index_of(e.v)?) {
            components -= 1;
        }
    }
    Ok(components == 1)
}

/// Undirected: any edge closing a loop in the spanning forest, which
/// includes self-loops and repeated endpoint pairs. Directed: a directed
/// cycle (self-loops included).
pub fn has_cycle(g: &Graph) -> bool {
    if g.is_directed() {
        return has_directed_cycle(g);
    }
    let mut ds = DisjointSet::new(g.node_count());
    g.edges().iter().any(|e| {
        let a = g.index_of(e.u).expect("validated at construction");
        let b = g.index_of(e.v).expect("validated at construction");
        !ds.union(a, b)
    })
}

fn has_directed_cycle(g: &Graph) -> bool {
    // Kahn: anything left after peeling zero in-degree nodes sits on a cycle
    let n = g.node_count();
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in g.edges() {
        let a = g.index_of(e.u).expect("validated at construction");
        let b = g.index_of(e.v).expect("validated at construction");
        out[a].push(b);
        indeg[b] += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut removed = 0;
    while let Some(x) = queue.pop_front() {
        removed += 1;
        for &y in &out[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                queue.push_back(y);
            }
        }
    }
    removed < n
}

/// `k` nodes by degree descending, ties by ascending id.
pub fn top_k_degrees(g: &Graph, k: usize) -> Result<Vec<(NodeId, u64)>> {
    if k == 0 || k > g.node_count() {
        return Err(Error::InvalidK { k, max: g.node_count() });
    }
    let mut all: Vec<(NodeId, u64)> = g.nodes().iter().enumerate().map(|(i, &v)| (v, g.degree_at(i) as u64)).collect();
    all.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    all.truncate(k);
    Ok(all)
}

pub fn common_neighbors(g: &Graph, u: NodeId, v: NodeId) -> Result<BTreeSet<NodeId>> {
    let a = g.neighbor_set(u)?;
    let b = g.neighbor_set(v)?;
    Ok(a.intersection(&b).copied().collect())
}

/// Every edge touching either endpoint of the anchor edge, written as
/// `(endpoint, other end)`. The anchor edge itself appears once from each side.
pub fn connected_edges(g: &Graph, u: NodeId, v: NodeId) -> Result<BTreeSet<(NodeId, NodeId)>> {
    require_edge(g, u, v)?;
    let mut out = BTreeSet::new();
    for a in [u, v] {
        for &(other, _) in g.incident(a)? {
            out.insert((a, other));
        }
    }
    Ok(out)
}

pub fn is_complete(g: &Graph, nodes: &[NodeId]) -> Result<bool> {
    for &v in nodes {
        g.require(v)?;
    }
    let distinct: Vec<NodeId> = nodes.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    for (i, &a) in distinct.iter().enumerate() {
        for &b in &distinct[i + 1..] {
            if !g.adjacent(a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Scans neighbors of `v` ascending and, for each, its neighbors ascending
/// (skipping `v`); the first candidate reaching the maximum degree wins.
pub fn highest_degree_neighbor_of_neighbor(g: &Graph, v: NodeId) -> Result<NodeId> {
    let mut best: Option<(usize, NodeId)> = None;
    for n in g.neighbors(v)? {
        for m in g.neighbors(n)? {
            if m == v {
                continue;
            }
            let d = g.degree(m)?;
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, m));
            }
        }
    }
    best.map(|(_, m)| m).ok_or(Error::NoCandidate(v))
}

/// Hop distances from `v` over undirected incidence; `None` when unreachable.
pub fn hop_distances(g: &Graph, v: NodeId) -> Result<Vec<Option<usize>>> {
    let start = g.index_of(v)?;
    let mut dist = vec![None; g.node_count()];
    dist[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let dx = dist[x].expect("queued nodes have a distance");
        for &(y, _) in g.incident_at(x) {
            let iy = g.index_of(y)?;
            if dist[iy].is_none() {
                dist[iy] = Some(dx + 1);
                queue.push_back(iy);
            }
        }
    }
    Ok(dist)
}

/// Nodes at shortest-path distance exactly `k`.
pub fn k_order_neighbors(g: &Graph, v: NodeId, k: usize) -> Result<BTreeSet<NodeId>> {
    if k == 0 {
        return Err(Error::InvalidK { k, max: usize::MAX });
    }
    let dist = hop_distances(g, v)?;
    Ok(g.nodes().iter().zip(&dist).filter(|(_, d)| **d == Some(k)).map(|(&n, _)| n).collect())
}

/// Adjacent pairs `(a, b)`, `a < b`, among the neighbors of `v` other than `v`.
pub fn neighbor_pairs(g: &Graph, v: NodeId) -> Result<BTreeSet<(NodeId, NodeId)>> {
    let nbrs: Vec<NodeId> = g.neighbors(v)?.into_iter().filter(|&n| n != v).collect();
    let mut out = BTreeSet::new();
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if g.adjacent(a, b)? {
                out.insert((a, b));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn triangle() -> Graph {
        Graph::from_edges(false, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap()
    }

    #[test]
    fn cycle_rules() {
        let single = Graph::undirected([0], alloc::vec![]).unwrap();
        assert!(!has_cycle(&single));
        let path = Graph::from_edges(false, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert!(!has_cycle(&path));
        assert!(has_cycle(&triangle()));
        let multi = Graph::from_edges(false, &[(0, 1, 1), (1, 0, 2)]).unwrap();
        assert!(has_cycle(&multi));
        let self_loop = Graph::from_edges(false, &[(0, 0, 1)]).unwrap();
        assert!(has_cycle(&self_loop));
        let dag = Graph::new(true, [0, 1, 2], alloc::vec![Edge::new(0, 1, 1), Edge::new(0, 2, 1), Edge::new(1, 2, 1)])
            .unwrap();
        assert!(!has_cycle(&dag));
        let dcycle = Graph::new(true, [0, 1], alloc::vec![Edge::new(0, 1, 1), Edge::new(1, 0, 1)]).unwrap();
        assert!(has_cycle(&dcycle));
    }

    #[test]
    fn max_weight_needs_edges() {
        let g = Graph::undirected([0, 1], alloc::vec![]).unwrap();
        assert_eq!(macro_oracle(&g, &MacroQuery::MaxEdgeWeight), Err(Error::NoEdges));
        assert_eq!(macro_oracle(&g, &MacroQuery::IsConnected), Ok(TypedAnswer::Boolean(false)));
    }

    #[test]
    fn top_k_bounds() {
        let g = triangle();
        assert!(top_k_degrees(&g, 0).is_err());
        assert!(top_k_degrees(&g, 4).is_err());
        assert_eq!(top_k_degrees(&g, 3).unwrap(), alloc::vec![(0, 2), (1, 2), (2, 2)]);
    }

    #[test]
    fn edge_weight_missing_and_multi() {
        let g = Graph::from_edges(false, &[(0, 1, 3), (1, 0, 5)]).unwrap();
        assert_eq!(micro_oracle(&g, &MicroQuery::EdgeWeight(1, 0)), Ok(TypedAnswer::number(3)));
        let t = triangle();
        let g2 = t.with_edges(alloc::vec![Edge::new(0, 1, 1)]).unwrap();
        assert_eq!(micro_oracle(&g2, &MicroQuery::EdgeWeight(1, 2)), Err(Error::NoSuchEdge(1, 2)));
    }

    #[test]
    fn triangle_neighbors() {
        let g = triangle();
        assert_eq!(g.neighbors(0).unwrap(), alloc::vec![1, 2]);
        assert_eq!(composite_oracle(&g, &CompositeQuery::Triangles(0)).unwrap(), TypedAnswer::triples([(0, 1, 2)]));
    }

    #[test]
    fn k_order_one_is_neighbors_without_self() {
        let g = Graph::from_edges(false, &[(0, 0, 1), (0, 1, 1), (1, 2, 1)]).unwrap();
        assert_eq!(k_order_neighbors(&g, 0, 1).unwrap(), BTreeSet::from([1]));
        assert_eq!(k_order_neighbors(&g, 0, 2).unwrap(), BTreeSet::from([2]));
        assert!(k_order_neighbors(&g, 0, 0).is_err());
    }

    #[test]
    fn anchor_edge_required() {
        let g = triangle();
        let h = g.with_edges(alloc::vec![Edge::new(0, 1, 1)]).unwrap();
        assert_eq!(connected_edges(&h, 1, 2), Err(Error::NoSuchEdge(1, 2)));
        assert!(composite_oracle(&h, &CompositeQuery::EdgeCommonNeighbors(0, 2)).is_err());
    }

    #[test]
    fn highest_degree_nn_without_candidates() {
        let g = Graph::from_edges(false, &[(0, 1, 1)]).unwrap();
        assert_eq!(highest_degree_neighbor_of_neighbor(&g, 0), Err(Error::NoCandidate(0)));
    }
}

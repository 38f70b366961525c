//! Graph → prompt text.
//!
//! The sequential format writes one clause per edge:
//!
//! ```text
//! This is an undirected graph with the following edges:
//! From node 0 to node 1 with weight 4;
//! From node 0 to node 2 with weight 4;
//! ```
//!
//! Every ordering (raw, BFS, DFS, shortest-path, importance) is a permutation
//! of the same clauses; [`DescriptionSequence::position_map`] records which
//! graph edge sits at each position.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, NodeId};
use crate::text::{match_template, parse_id_list, parse_tuple_list, parse_u32};

pub const UNDIRECTED_PREAMBLE: &str = "This is an undirected graph with the following edges:";
pub const DIRECTED_PREAMBLE: &str = "This is a directed graph with the following edges:";
const CLAUSE_TEMPLATE: &str = "From node {} to node {} with weight {};";

pub fn preamble(directed: bool) -> &'static str {
    if directed {
        DIRECTED_PREAMBLE
    } else {
        UNDIRECTED_PREAMBLE
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClause {
    pub u: NodeId,
    pub v: NodeId,
    pub w: u32,
    pub rendered: String,
}

impl EdgeClause {
    pub fn new(e: Edge) -> Self {
        Self { u: e.u, v: e.v, w: e.w, rendered: format!("From node {} to node {} with weight {};", e.u, e.v, e.w) }
    }

    pub fn edge(&self) -> Edge {
        Edge::new(self.u, self.v, self.w)
    }

    pub fn parse(line: &str) -> Option<Edge> {
        let caps = match_template(CLAUSE_TEMPLATE, line.trim())?;
        Some(Edge::new(parse_u32(caps[0])?, parse_u32(caps[1])?, parse_u32(caps[2])?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescriptionSequence {
    pub header: String,
    pub clauses: Vec<EdgeClause>,
    /// Clause index → index into `Graph::edges`.
    pub position_map: Vec<usize>,
}

impl DescriptionSequence {
    /// Clauses for `order`, a list of edge indices.
    pub fn from_order(g: &Graph, order: Vec<usize>) -> Self {
        let clauses = order.iter().map(|&i| EdgeClause::new(g.edges()[i])).collect();
        Self { header: String::from(preamble(g.is_directed())), clauses, position_map: order }
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Preamble and clauses, newline separated, no trailing newline.
    pub fn text(&self) -> String {
        let mut out = String::with_capacity(self.header.len() + self.clauses.len() * 40);
        out.push_str(&self.header);
        for c in &self.clauses {
            out.push('\n');
            out.push_str(&c.rendered);
        }
        out
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.clauses.iter().map(EdgeClause::edge).collect()
    }
}

/// One clause per edge in insertion order, each written as stored.
pub fn render_raw(g: &Graph) -> DescriptionSequence {
    DescriptionSequence::from_order(g, (0..g.edge_count()).collect())
}

/// Inverse of [`DescriptionSequence::text`]: returns the direction flag and
/// the edges in clause order.
pub fn parse_description(text: &str) -> Result<(bool, Vec<Edge>)> {
    let mut lines = text.lines();
    let directed = match lines.next().map(str::trim) {
        Some(UNDIRECTED_PREAMBLE) => false,
        Some(DIRECTED_PREAMBLE) => true,
        other => return Err(Error::Parse(format!("unexpected preamble {other:?}"))),
    };
    let edges = lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| EdgeClause::parse(l).ok_or_else(|| Error::Parse(format!("clause {}: {l:?}", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok((directed, edges))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructuralFormat {
    AdjacencyList,
    AdjacencyMatrix,
}

fn kind_word(directed: bool) -> &'static str {
    if directed {
        "a directed"
    } else {
        "an undirected"
    }
}

pub fn adjacency_list_header(directed: bool) -> String {
    format!("This is {} graph with the following adjacency list:", kind_word(directed))
}

pub fn adjacency_matrix_header(directed: bool, nodes: &[NodeId]) -> String {
    let mut ids = String::new();
    for (i, n) in nodes.iter().enumerate() {
        if i > 0 {
            ids.push_str(", ");
        }
        let _ = write!(ids, "{n}");
    }
    format!("This is {} graph with the following adjacency matrix over nodes [{ids}]:", kind_word(directed))
}

/// Adjacency list (`v: [(nbr, w), ...]` per node, ascending) or a dense weight
/// matrix (row per node, `0` for no edge). Undirected edges appear in both
/// endpoint lines; a self-loop appears once in its node's line. Directed
/// lists and rows hold outgoing arcs.
pub fn render_structural(g: &Graph, format: StructuralFormat) -> Result<String> {
    let mut out = String::new();
    match format {
        StructuralFormat::AdjacencyList => {
            out.push_str(&adjacency_list_header(g.is_directed()));
            for (i, &v) in g.nodes().iter().enumerate() {
                let _ = write!(out, "\n{v}: [");
                let mut first = true;
                for &(n, e) in g.incident_at(i) {
                    let edge = g.edges()[e];
                    if g.is_directed() && edge.u != v {
                        continue;
                    }
                    if !first {
                        out.push_str(", ");
                    }
                    first = false;
                    let _ = write!(out, "({n}, {})", edge.w);
                }
                out.push(']');
            }
        }
        StructuralFormat::AdjacencyMatrix => {
            if !g.is_simple() {
                return Err(Error::NotSimple);
            }
            let n = g.node_count();
            let mut m = vec![vec![0u32; n]; n];
            for e in g.edges() {
                let a = g.index_of(e.u)?;
                let b = g.index_of(e.v)?;
                m[a][b] = e.w;
                if !g.is_directed() {
                    m[b][a] = e.w;
                }
            }
            out.push_str(&adjacency_matrix_header(g.is_directed(), g.nodes()));
            for row in m {
                out.push_str("\n[");
                for (j, w) in row.iter().enumerate() {
                    if j > 0 {
                        out.push_str(", ");
                    }
                    let _ = write!(out, "{w}");
                }
                out.push(']');
            }
        }
    }
    Ok(out)
}

/// `5: [(4, 1), (7, 2)]` → `(5, [(4, 1), (7, 2)])`.
pub fn parse_adjacency_line(line: &str) -> Option<(NodeId, Vec<(NodeId, u32)>)> {
    let (head, list) = line.trim().split_once(": ")?;
    let v = parse_u32(head)?;
    let entries = parse_tuple_list(list, 2)?
        .into_iter()
        .map(|t| Some((u32::try_from(t[0]).ok()?, u32::try_from(t[1]).ok()?)))
        .collect::<Option<Vec<_>>>()?;
    Some((v, entries))
}

pub fn parse_matrix_header(line: &str) -> Option<(bool, Vec<NodeId>)> {
    let line = line.trim();
    for directed in [false, true] {
        let t = format!("This is {} graph with the following adjacency matrix over nodes {{}}:", kind_word(directed));
        if let Some(caps) = match_template(&t, line) {
            return Some((directed, parse_id_list(caps[0])?));
        }
    }
    None
}

pub fn parse_matrix_row(line: &str) -> Option<Vec<u32>> {
    parse_id_list(line)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Traversal {
    Bfs,
    Dfs,
    ShortestPath,
}

/// Roots for each component: `root` first, then the smallest node id not yet
/// reached, repeatedly.
fn component_roots(g: &Graph, root_idx: usize, mut reach: impl FnMut(usize, &mut [bool])) {
    let mut visited = vec![false; g.node_count()];
    reach(root_idx, &mut visited);
    while let Some(next) = visited.iter().position(|&seen| !seen) {
        reach(next, &mut visited);
    }
}

/// Edge order by first traversal touch. BFS and DFS emit every not-yet-emitted
/// edge incident to a node when the traversal scans that node (neighbors
/// ascending), so non-tree edges land next to the tree edges around them.
/// Shortest-path order sorts edges by the weighted distance of their nearer
/// endpoint, then that endpoint's id, then the far endpoint's id.
pub fn reorder(g: &Graph, kind: Traversal, root: NodeId) -> Result<DescriptionSequence> {
    let root_idx = g.index_of(root)?;
    let mut emitted = vec![false; g.edge_count()];
    let mut order = Vec::with_capacity(g.edge_count());

    match kind {
        Traversal::Bfs => component_roots(g, root_idx, |r, visited| {
            visited[r] = true;
            let mut queue = alloc::collections::VecDeque::from([r]);
            while let Some(x) = queue.pop_front() {
                for &(y, e) in g.incident_at(x) {
                    if emitted[e] {
                        continue;
                    }
                    emitted[e] = true;
                    order.push(e);
                    let iy = g.index_of(y).expect("validated at construction");
                    if !visited[iy] {
                        visited[iy] = true;
                        queue.push_back(iy);
                    }
                }
            }
        }),
        Traversal::Dfs => component_roots(g, root_idx, |r, visited| {
            visited[r] = true;
            let mut stack = vec![(r, 0usize)];
            while let Some(top) = stack.last_mut() {
                let (x, pos) = *top;
                let inc = g.incident_at(x);
                if pos == inc.len() {
                    stack.pop();
                    continue;
                }
                top.1 += 1;
                let (y, e) = inc[pos];
                if emitted[e] {
                    continue;
                }
                emitted[e] = true;
                order.push(e);
                let iy = g.index_of(y).expect("validated at construction");
                if !visited[iy] {
                    visited[iy] = true;
                    stack.push((iy, 0));
                }
            }
        }),
        Traversal::ShortestPath => {
            let mut rank = 0usize;
            // (component rank, near distance, near id, far id, edge index)
            let mut keyed: Vec<(usize, u64, NodeId, NodeId, usize)> = Vec::with_capacity(g.edge_count());
            component_roots(g, root_idx, |r, visited| {
                let dist = dijkstra(g, r);
                for (i, d) in dist.iter().enumerate() {
                    if d.is_some() {
                        visited[i] = true;
                    }
                }
                for (idx, e) in g.edges().iter().enumerate() {
                    let du = dist[g.index_of(e.u).expect("validated")];
                    let dv = dist[g.index_of(e.v).expect("validated")];
                    if let (Some(du), Some(dv)) = (du, dv) {
                        let (near, far) = if (du, e.u) <= (dv, e.v) { ((du, e.u), e.v) } else { ((dv, e.v), e.u) };
                        keyed.push((rank, near.0, near.1, far, idx));
                    }
                }
                rank += 1;
            });
            keyed.sort_unstable();
            order.extend(keyed.into_iter().map(|k| k.4));
        }
    }

    debug_assert_eq!(order.len(), g.edge_count());
    Ok(DescriptionSequence::from_order(g, order))
}

fn dijkstra(g: &Graph, source: usize) -> Vec<Option<u64>> {
    let mut dist: Vec<Option<u64>> = vec![None; g.node_count()];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(0);
    heap.push(Reverse((0u64, source)));
    while let Some(Reverse((d, x))) = heap.pop() {
        if dist[x].is_some_and(|best| d > best) {
            continue;
        }
        for &(y, e) in g.incident_at(x) {
            let iy = g.index_of(y).expect("validated at construction");
            let nd = d + u64::from(g.edges()[e].w);
            if dist[iy].is_none_or(|cur| nd < cur) {
                dist[iy] = Some(nd);
                heap.push(Reverse((nd, iy)));
            }
        }
    }
    dist
}

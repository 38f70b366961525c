//! Dense-matrix reference answers for small graphs, written without the
//! incidence lists, union-find or BFS the library uses.

use std::collections::BTreeSet;

use graphinsight_core::answer::{canonical_pair, canonical_triple, TypedAnswer};
use graphinsight_core::oracle::{CompositeQuery, MacroQuery, MicroQuery, Query};
use graphinsight_core::Graph;

pub struct Brute {
    ids: Vec<u32>,
    /// Edge multiplicity, symmetric (undirected view).
    count: Vec<Vec<usize>>,
    /// Smallest weight between two nodes, 0 if none.
    min_w: Vec<Vec<u32>>,
    degree: Vec<usize>,
    /// Hop distance, `usize::MAX` if unreachable.
    dist: Vec<Vec<usize>>,
    directed_cycle: bool,
    edge_count: usize,
    max_w: Option<u32>,
}

impl Brute {
    pub fn new(g: &Graph) -> Self {
        let ids = g.nodes().to_vec();
        let n = ids.len();
        let at = |v: u32| ids.iter().position(|&x| x == v).unwrap();
        let mut count = vec![vec![0; n]; n];
        let mut min_w = vec![vec![0u32; n]; n];
        let mut degree = vec![0; n];
        let mut arc = vec![vec![false; n]; n];
        for e in g.edges() {
            let (a, b) = (at(e.u), at(e.v));
            degree[a] += 1;
            degree[b] += 1;
            arc[a][b] = true;
            let sides: &[(usize, usize)] = if a == b { &[(a, a)] } else { &[(a, b), (b, a)] };
            for &(x, y) in sides {
                count[x][y] += 1;
                min_w[x][y] = if min_w[x][y] == 0 { e.w } else { min_w[x][y].min(e.w) };
            }
        }
        let inf = usize::MAX;
        let mut dist = vec![vec![inf; n]; n];
        for i in 0..n {
            for j in 0..n {
                if count[i][j] > 0 {
                    dist[i][j] = 1;
                }
            }
            dist[i][i] = 0;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if dist[i][k] != inf && dist[k][j] != inf && dist[i][k] + dist[k][j] < dist[i][j] {
                        dist[i][j] = dist[i][k] + dist[k][j];
                    }
                }
            }
        }
        // directed reachability closure over arcs
        let mut reach = arc.clone();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    reach[i][j] |= reach[i][k] && reach[k][j];
                }
            }
        }
        let directed_cycle = g.is_directed() && (0..n).any(|i| reach[i][i]);
        let max_w = g.edges().iter().map(|e| e.w).max();
        Self { ids, count, min_w, degree, dist, directed_cycle, edge_count: g.edge_count(), max_w }
    }

    fn at(&self, v: u32) -> Option<usize> {
        self.ids.iter().position(|&x| x == v)
    }

    fn nbrs(&self, i: usize) -> BTreeSet<u32> {
        (0..self.ids.len()).filter(|&j| self.count[i][j] > 0).map(|j| self.ids[j]).collect()
    }

    fn components(&self) -> usize {
        let n = self.ids.len();
        (0..n).filter(|&i| (0..i).all(|j| self.dist[j][i] == usize::MAX)).count()
    }

    /// `None` where the question has no answer on this graph.
    pub fn answer(&self, q: &Query, directed: bool) -> Option<TypedAnswer> {
        let n = self.ids.len();
        Some(match q {
            Query::Macro(m) => match *m {
                MacroQuery::NodeCount => TypedAnswer::number(n as f64),
                MacroQuery::IsConnected => {
                    if n == 0 {
                        return None;
                    }
                    TypedAnswer::Boolean(self.components() == 1)
                }
                MacroQuery::HasCycle => TypedAnswer::Boolean(if directed {
                    self.directed_cycle
                } else {
                    self.edge_count + self.components() > n
                }),
                MacroQuery::MaxEdgeWeight => TypedAnswer::number(self.max_w?),
                MacroQuery::TopKDegrees(k) => {
                    if k == 0 || k > n {
                        return None;
                    }
                    let mut all: Vec<(u32, u64)> = (0..n).map(|i| (self.ids[i], self.degree[i] as u64)).collect();
                    // selection: repeatedly take the best remaining
                    let mut out = Vec::new();
                    for _ in 0..k {
                        let best = (0..all.len())
                            .max_by(|&a, &b| all[a].1.cmp(&all[b].1).then(all[b].0.cmp(&all[a].0)))
                            .unwrap();
                        out.push(all.remove(best));
                    }
                    TypedAnswer::ScoredPairList(out)
                }
            },
            Query::Micro(m) => match *m {
                MicroQuery::DirectConnection(u, v) => TypedAnswer::Boolean(self.count[self.at(u)?][self.at(v)?] > 0),
                MicroQuery::Degree(v) => TypedAnswer::number(self.degree[self.at(v)?] as f64),
                MicroQuery::IsLeaf(v) => TypedAnswer::Boolean(self.degree[self.at(v)?] == 1),
                MicroQuery::EvenDegree(v) => TypedAnswer::Boolean(self.degree[self.at(v)?].is_multiple_of(2)),
                MicroQuery::Neighbors(v) => TypedAnswer::NodeSet(self.nbrs(self.at(v)?)),
                MicroQuery::CommonNeighbors(u, v) => {
                    let (a, b) = (self.at(u)?, self.at(v)?);
                    TypedAnswer::NodeSet(
                        (0..n).filter(|&x| self.count[a][x] > 0 && self.count[b][x] > 0).map(|x| self.ids[x]).collect(),
                    )
                }
                MicroQuery::DegreeGreater(u, v) => {
                    TypedAnswer::Boolean(self.degree[self.at(u)?] > self.degree[self.at(v)?])
                }
                MicroQuery::EdgeWeight(u, v) => {
                    let w = self.min_w[self.at(u)?][self.at(v)?];
                    if w == 0 {
                        return None;
                    }
                    TypedAnswer::number(w)
                }
            },
            Query::Composite(c) => match c {
                &CompositeQuery::ConnectedEdges(u, v) => {
                    let (a, b) = (self.at(u)?, self.at(v)?);
                    if self.count[a][b] == 0 {
                        return None;
                    }
                    let mut out = BTreeSet::new();
                    for (x, id) in [(a, u), (b, v)] {
                        for y in 0..n {
                            if self.count[x][y] > 0 {
                                out.insert((id, self.ids[y]));
                            }
                        }
                    }
                    TypedAnswer::AnchoredPairSet(out)
                }
                CompositeQuery::CompleteSubgraph(nodes) => {
                    let idx: Vec<usize> = nodes.iter().map(|&v| self.at(v)).collect::<Option<_>>()?;
                    let ok = idx.iter().all(|&a| idx.iter().all(|&b| a == b || self.count[a][b] > 0));
                    TypedAnswer::Boolean(ok)
                }
                &CompositeQuery::HighestDegreeNeighborOfNeighbor(v) => {
                    let a = self.at(v)?;
                    let mut best: Option<(usize, u32)> = None;
                    for x in 0..n {
                        if self.count[a][x] == 0 {
                            continue;
                        }
                        for y in 0..n {
                            if self.count[x][y] == 0 || y == a {
                                continue;
                            }
                            if best.is_none_or(|(d, _)| self.degree[y] > d) {
                                best = Some((self.degree[y], self.ids[y]));
                            }
                        }
                    }
                    TypedAnswer::number(best?.1)
                }
                &CompositeQuery::KOrderNeighbors { node, k } => {
                    if k == 0 {
                        return None;
                    }
                    let a = self.at(node)?;
                    TypedAnswer::NodeSet((0..n).filter(|&x| self.dist[a][x] == k).map(|x| self.ids[x]).collect())
                }
                &CompositeQuery::NeighborsConnectedTo { node, target } => {
                    let (a, t) = (self.at(node)?, self.at(target)?);
                    TypedAnswer::NodeSet(
                        (0..n).filter(|&x| self.count[a][x] > 0 && self.count[x][t] > 0).map(|x| self.ids[x]).collect(),
                    )
                }
                &CompositeQuery::NeighborPairs(v) => {
                    let a = self.at(v)?;
                    let mut out = BTreeSet::new();
                    for x in 0..n {
                        for y in 0..n {
                            if x != a
                                && y != a
                                && x != y
                                && self.count[a][x] > 0
                                && self.count[a][y] > 0
                                && self.count[x][y] > 0
                            {
                                out.insert(canonical_pair((self.ids[x], self.ids[y])));
                            }
                        }
                    }
                    TypedAnswer::PairSet(out)
                }
                &CompositeQuery::EdgeCommonNeighbors(u, v) => {
                    let (a, b) = (self.at(u)?, self.at(v)?);
                    if self.count[a][b] == 0 {
                        return None;
                    }
                    TypedAnswer::NodeSet(
                        (0..n).filter(|&x| self.count[a][x] > 0 && self.count[b][x] > 0).map(|x| self.ids[x]).collect(),
                    )
                }
                &CompositeQuery::Triangles(v) => {
                    let a = self.at(v)?;
                    let mut out = BTreeSet::new();
                    for x in 0..n {
                        for y in 0..n {
                            for z in 0..n {
                                let distinct = x != y && y != z && x != z;
                                if distinct
                                    && [x, y, z].contains(&a)
                                    && self.count[x][y] > 0
                                    && self.count[y][z] > 0
                                    && self.count[x][z] > 0
                                {
                                    out.insert(canonical_triple((self.ids[x], self.ids[y], self.ids[z])));
                                }
                            }
                        }
                    }
                    TypedAnswer::TripleSet(out)
                }
                &CompositeQuery::CommonKOrderNeighbors { u, v, k } => {
                    if k == 0 {
                        return None;
                    }
                    let (a, b) = (self.at(u)?, self.at(v)?);
                    TypedAnswer::NodeSet(
                        (0..n).filter(|&x| self.dist[a][x] == k && self.dist[b][x] == k).map(|x| self.ids[x]).collect(),
                    )
                }
            },
        })
    }

    /// Every question the benchmark can ask on this graph, with all node,
    /// pair and edge parameters and `k` in 1..=3.
    pub fn all_queries(&self, g: &Graph) -> Vec<Query> {
        let ids = &self.ids;
        let mut qs = vec![
            Query::Macro(MacroQuery::NodeCount),
            Query::Macro(MacroQuery::IsConnected),
            Query::Macro(MacroQuery::HasCycle),
            Query::Macro(MacroQuery::MaxEdgeWeight),
        ];
        for k in 1..=ids.len().min(5) {
            qs.push(Query::Macro(MacroQuery::TopKDegrees(k)));
        }
        for &v in ids {
            qs.push(Query::Micro(MicroQuery::Degree(v)));
            qs.push(Query::Micro(MicroQuery::IsLeaf(v)));
            qs.push(Query::Micro(MicroQuery::EvenDegree(v)));
            qs.push(Query::Micro(MicroQuery::Neighbors(v)));
            qs.push(Query::Composite(CompositeQuery::HighestDegreeNeighborOfNeighbor(v)));
            qs.push(Query::Composite(CompositeQuery::NeighborPairs(v)));
            qs.push(Query::Composite(CompositeQuery::Triangles(v)));
            for k in 1..=3 {
                qs.push(Query::Composite(CompositeQuery::KOrderNeighbors { node: v, k }));
            }
            for &u in ids {
                qs.push(Query::Micro(MicroQuery::DirectConnection(v, u)));
                qs.push(Query::Micro(MicroQuery::CommonNeighbors(v, u)));
                qs.push(Query::Micro(MicroQuery::DegreeGreater(v, u)));
                qs.push(Query::Micro(MicroQuery::EdgeWeight(v, u)));
                qs.push(Query::Composite(CompositeQuery::NeighborsConnectedTo { node: v, target: u }));
                qs.push(Query::Composite(CompositeQuery::CommonKOrderNeighbors { u: v, v: u, k: 2 }));
            }
        }
        for e in g.edges() {
            qs.push(Query::Composite(CompositeQuery::ConnectedEdges(e.u, e.v)));
            qs.push(Query::Composite(CompositeQuery::EdgeCommonNeighbors(e.u, e.v)));
        }
        for w in ids.windows(3) {
            qs.push(Query::Composite(CompositeQuery::CompleteSubgraph(w.to_vec())));
        }
        qs
    }
}

/// Dense power iteration, run well past the library tolerance.
pub fn dense_pagerank(g: &Graph, d: f64) -> Vec<f64> {
    let n = g.node_count();
    let idx = |v: u32| g.nodes().iter().position(|&x| x == v).unwrap();
    let mut m = vec![vec![0.0; n]; n];
    let mut out = vec![0.0; n];
    for e in g.edges() {
        let (a, b) = (idx(e.u), idx(e.v));
        m[b][a] += 1.0;
        out[a] += 1.0;
        if !g.is_directed() {
            m[a][b] += 1.0;
            out[b] += 1.0;
        }
    }
    let mut p = vec![1.0 / n as f64; n];
    for _ in 0..3000 {
        let mut next = vec![0.0; n];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut s = 0.0;
            for j in 0..n {
                s += if out[j] > 0.0 { m[i][j] / out[j] * p[j] } else { p[j] / n as f64 };
            }
            *slot = (1.0 - d) / n as f64 + d * s;
        }
        p = next;
    }
    p
}

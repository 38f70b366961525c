//! Seeded random graphs and benchmark tasks.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, NodeId};
use crate::oracle::{CompositeQuery, MacroQuery, MicroQuery, Query};
use crate::task::{Level, Task, TaskKind};

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub min_nodes: usize,
    pub max_nodes: usize,
    pub min_components: usize,
    pub max_components: usize,
    /// Target edges per node before multi-edges and self-loops are added.
    pub edge_density: f64,
    pub min_weight: u32,
    pub max_weight: u32,
    /// Per node.
    pub self_loop_prob: f64,
    /// Per edge: chance of one parallel duplicate.
    pub multi_edge_prob: f64,
    pub directed: bool,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            min_nodes: 15,
            max_nodes: 200,
            min_components: 1,
            max_components: 2,
            edge_density: 2.0,
            min_weight: 1,
            max_weight: 5,
            self_loop_prob: 0.02,
            multi_edge_prob: 0.02,
            directed: false,
            seed: 0,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.min_nodes < 2 || self.min_nodes > self.max_nodes {
            return bad(format!("node range {}..={} is empty or below 2", self.min_nodes, self.max_nodes));
        }
        if self.min_components == 0 || self.min_components > self.max_components {
            return bad(format!("component range {}..={} is empty", self.min_components, self.max_components));
        }
        if self.min_weight == 0 || self.min_weight > self.max_weight {
            return bad(format!("weight range {}..={} is empty or contains 0", self.min_weight, self.max_weight));
        }
        for (name, p) in [("self_loop_prob", self.self_loop_prob), ("multi_edge_prob", self.multi_edge_prob)] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} must be in [0, 1], got {p}"));
            }
        }
        if !(self.edge_density >= 0.0) {
            return bad(format!("edge_density must be non-negative, got {}", self.edge_density));
        }
        Ok(())
    }
}

/// splitmix64 finalizer, used to derive independent child seeds.
pub fn mix_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed.wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Every component has at least two nodes and is internally connected by a
/// random spanning tree; extra edges are uniform intra-component pairs.
pub fn generate_graph(cfg: &GenConfig) -> Result<Graph> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = rng.random_range(cfg.min_nodes..=cfg.max_nodes);
    let max_c = cfg.max_components.min(n / 2).max(1);
    let c = rng.random_range(cfg.min_components.min(max_c)..=max_c);

    let target = libm::round(cfg.edge_density * n as f64) as usize;
    if target < n - c {
        return Err(Error::InvalidConfig(format!(
            "edge density {} gives {target} edges, below the {} needed to connect {c} components",
            cfg.edge_density,
            n - c
        )));
    }

    let mut order: Vec<NodeId> = (0..n as NodeId).collect();
    order.shuffle(&mut rng);
    let mut sizes = vec![2usize; c];
    for _ in 0..n - 2 * c {
        let i = rng.random_range(0..c);
        sizes[i] += 1;
    }

    let weight = |rng: &mut ChaCha8Rng| rng.random_range(cfg.min_weight..=cfg.max_weight);
    let mut pairs: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
    let mut edges: Vec<Edge> = Vec::with_capacity(target + 8);
    let mut components: Vec<&[NodeId]> = Vec::with_capacity(c);
    let mut start = 0;
    for &s in &sizes {
        let comp = &order[start..start + s];
        start += s;
        components.push(comp);
        for i in 1..s {
            let j = rng.random_range(0..i);
            let (a, b) = ordered(comp[i], comp[j]);
            pairs.insert((a, b));
            edges.push(Edge::new(a, b, weight(&mut rng)));
        }
    }

    let capacity: usize = sizes.iter().map(|s| s * (s - 1) / 2).sum();
    let extra = (target - (n - c)).min(capacity - (n - c));
    // pick a component proportionally to its free pair count, then a pair
    let mut added = 0;
    let mut attempts = 0;
    while added < extra && attempts < extra * 50 + 100 {
        attempts += 1;
        let mut pick = rng.random_range(0..capacity);
        let comp = components
            .iter()
            .find(|comp| {
                let cap = comp.len() * (comp.len() - 1) / 2;
                if pick < cap {
                    true
                } else {
                    pick -= cap;
                    false
                }
            })
            .expect("pick < capacity");
        let i = rng.random_range(0..comp.len());
        let j = rng.random_range(0..comp.len());
        if i == j {
            continue;
        }
        let (a, b) = ordered(comp[i], comp[j]);
        if pairs.insert((a, b)) {
            edges.push(Edge::new(a, b, weight(&mut rng)));
            added += 1;
        }
    }

    let base = edges.len();
    for i in 0..base {
        if rng.random_bool(cfg.multi_edge_prob) {
            let e = edges[i];
            edges.push(Edge::new(e.u, e.v, weight(&mut rng)));
        }
    }
    for v in 0..n as NodeId {
        if rng.random_bool(cfg.self_loop_prob) {
            edges.push(Edge::new(v, v, weight(&mut rng)));
        }
    }
    if cfg.directed {
        for e in &mut edges {
            if rng.random_bool(0.5) {
                core::mem::swap(&mut e.u, &mut e.v);
            }
        }
    }
    edges.sort_by_key(|e| (e.canonical_pair(), e.u, e.w));
    Graph::new(cfg.directed, 0..n as NodeId, edges)
}

fn ordered(a: NodeId, b: NodeId) -> (NodeId, NodeId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A kind that could not be sampled on a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkipRecord {
    pub graph_id: usize,
    pub kind: TaskKind,
    pub reason: String,
}

const MAX_ATTEMPTS: usize = 64;

fn sample_query(kind: TaskKind, g: &Graph, rng: &mut ChaCha8Rng) -> Option<Query> {
    let nodes = g.nodes();
    let node = |rng: &mut ChaCha8Rng| nodes.choose(rng).copied();
    let two = |rng: &mut ChaCha8Rng| -> Option<(NodeId, NodeId)> {
        if nodes.len() < 2 {
            return None;
        }
        let picked: Vec<NodeId> = nodes.choose_multiple(rng, 2).copied().collect();
        Some((picked[0], picked[1]))
    };
    let edge = |rng: &mut ChaCha8Rng| -> Option<(NodeId, NodeId)> {
        let proper: Vec<&Edge> = g.edges().iter().filter(|e| !e.is_self_loop()).collect();
        proper.choose(rng).map(|e| (e.u, e.v))
    };
    let k = |rng: &mut ChaCha8Rng| rng.random_range(2..=3usize);
    use TaskKind::*;
    Some(match kind {
        NodeCount => Query::Macro(MacroQuery::NodeCount),
        IsConnected => Query::Macro(MacroQuery::IsConnected),
        HasCycle => Query::Macro(MacroQuery::HasCycle),
        MaxEdgeWeight => Query::Macro(MacroQuery::MaxEdgeWeight),
        TopKDegrees => Query::Macro(MacroQuery::TopKDegrees(rng.random_range(3..=5usize).min(nodes.len()))),
        DirectConnection => {
            let (u, v) = two(rng)?;
            Query::Micro(MicroQuery::DirectConnection(u, v))
        }
        Degree => Query::Micro(MicroQuery::Degree(node(rng)?)),
        IsLeaf => Query::Micro(MicroQuery::IsLeaf(node(rng)?)),
        EvenDegree => Query::Micro(MicroQuery::EvenDegree(node(rng)?)),
        Neighbors => Query::Micro(MicroQuery::Neighbors(node(rng)?)),
        CommonNeighbors => {
            let (u, v) = two(rng)?;
            Query::Micro(MicroQuery::CommonNeighbors(u, v))
        }
        DegreeGreater => {
            let (u, v) = two(rng)?;
            Query::Micro(MicroQuery::DegreeGreater(u, v))
        }
        EdgeWeight => {
            let (u, v) = edge(rng)?;
            Query::Micro(MicroQuery::EdgeWeight(u, v))
        }
        ConnectedEdges => {
            let (u, v) = edge(rng)?;
            Query::Composite(CompositeQuery::ConnectedEdges(u, v))
        }
        CompleteSubgraph => {
            if nodes.len() < 3 {
                return None;
            }
            Query::Composite(CompositeQuery::CompleteSubgraph(nodes.choose_multiple(rng, 3).copied().collect()))
        }
        HighestDegreeNeighborOfNeighbor => {
            Query::Composite(CompositeQuery::HighestDegreeNeighborOfNeighbor(node(rng)?))
        }
        KOrderNeighbors => {
            let node = node(rng)?;
            Query::Composite(CompositeQuery::KOrderNeighbors { node, k: k(rng) })
        }
        NeighborsConnectedTo => {
            let (node, target) = two(rng)?;
            Query::Composite(CompositeQuery::NeighborsConnectedTo { node, target })
        }
        NeighborPairs => Query::Composite(CompositeQuery::NeighborPairs(node(rng)?)),
        EdgeCommonNeighbors => {
            let (u, v) = edge(rng)?;
            Query::Composite(CompositeQuery::EdgeCommonNeighbors(u, v))
        }
        Triangles => Query::Composite(CompositeQuery::Triangles(node(rng)?)),
        CommonKOrderNeighbors => {
            let (u, v) = two(rng)?;
            Query::Composite(CompositeQuery::CommonKOrderNeighbors { u, v, k: k(rng) })
        }
    })
}

/// `per_kind` tasks for each kind. Parameters are drawn uniformly; a draw
/// whose oracle rejects it (e.g. no neighbor-of-neighbor candidate) is
/// redrawn, and a kind that keeps failing is skipped and reported.
pub fn generate_tasks(
    g: &Graph,
    kinds: &[TaskKind],
    per_kind: usize,
    seed: u64,
    graph_id: usize,
) -> (Vec<Task>, Vec<SkipRecord>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tasks = Vec::with_capacity(kinds.len() * per_kind);
    let mut skipped = Vec::new();
    for &kind in kinds {
        for i in 0..per_kind {
            let mut last_err = String::from("no parameters available");
            let found = (0..MAX_ATTEMPTS).find_map(|_| {
                let q = sample_query(kind, g, &mut rng)?;
                match q.answer(g) {
                    Ok(truth) => Some((q, truth)),
                    Err(e) => {
                        last_err = format!("{e}");
                        None
                    }
                }
            });
            match found {
                Some((query, truth)) => tasks.push(Task {
                    id: format!("g{graph_id}-{kind}-{i}"),
                    graph_id,
                    question: query.question(),
                    query,
                    truth,
                }),
                None => {
                    skipped.push(SkipRecord { graph_id, kind, reason: last_err });
                    break;
                }
            }
        }
    }
    (tasks, skipped)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Benchmark {
    pub seed: u64,
    pub graphs: Vec<Graph>,
    pub tasks: Vec<Task>,
    pub skipped: Vec<SkipRecord>,
}

impl Benchmark {
    pub fn level_count(&self, level: Level) -> usize {
        self.tasks.iter().filter(|t| t.level() == level).count()
    }

    pub fn macro_count(&self) -> usize {
        self.level_count(Level::Macro)
    }

    /// Micro plus composite.
    pub fn micro_count(&self) -> usize {
        self.tasks.len() - self.macro_count()
    }

    pub fn tasks_for(&self, graph_id: usize) -> impl Iterator<Item = &Task> {
        self.tasks.iter().filter(move |t| t.graph_id == graph_id)
    }

    /// Recomputes every truth with its oracle.
    pub fn validate(&self) -> Result<()> {
        for t in &self.tasks {
            let g = self.graphs.get(t.graph_id).ok_or_else(|| {
                Error::InvalidConfig(format!("task {} references missing graph {}", t.id, t.graph_id))
            })?;
            if t.query.answer(g)? != t.truth {
                return Err(Error::InvalidConfig(format!("task {} has stale ground truth", t.id)));
            }
        }
        Ok(())
    }
}

/// `graph_count` graphs, graph `i` seeded from `mix_seed(cfg.seed, i)`.
pub fn generate_benchmark(
    cfg: &GenConfig,
    graph_count: usize,
    kinds: &[TaskKind],
    per_kind: usize,
) -> Result<Benchmark> {
    let mut graphs = Vec::with_capacity(graph_count);
    let mut tasks = Vec::new();
    let mut skipped = Vec::new();
    for i in 0..graph_count {
        let graph_seed = mix_seed(cfg.seed, 2 * i as u64);
        let g = generate_graph(&GenConfig { seed: graph_seed, ..cfg.clone() })?;
        let (t, s) = generate_tasks(&g, kinds, per_kind, mix_seed(cfg.seed, 2 * i as u64 + 1), i);
        tasks.extend(t);
        skipped.extend(s);
        graphs.push(g);
    }
    Ok(Benchmark { seed: cfg.seed, graphs, tasks, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::is_connected;

    fn small(seed: u64) -> GenConfig {
        GenConfig { min_nodes: 15, max_nodes: 40, seed, ..GenConfig::default() }
    }

    #[test]
    fn deterministic() {
        assert_eq!(generate_graph(&small(7)).unwrap(), generate_graph(&small(7)).unwrap());
        assert_ne!(generate_graph(&small(7)).unwrap(), generate_graph(&small(8)).unwrap());
    }

    #[test]
    fn two_components_disconnected() {
        for seed in 0..20 {
            let cfg = GenConfig { min_components: 2, max_components: 2, ..small(seed) };
            assert!(!is_connected(&generate_graph(&cfg).unwrap()).unwrap());
        }
    }

    #[test]
    fn simple_when_probabilities_zero() {
        for seed in 0..20 {
            let cfg = GenConfig { self_loop_prob: 0.0, multi_edge_prob: 0.0, ..small(seed) };
            let g = generate_graph(&cfg).unwrap();
            let e = g.edges();
            for i in 0..e.len() {
                assert!(!e[i].is_self_loop());
                for j in i + 1..e.len() {
                    assert_ne!(e[i].canonical_pair(), e[j].canonical_pair());
                }
            }
        }
    }

    #[test]
    fn no_isolated_nodes() {
        for seed in 0..20 {
            let g = generate_graph(&small(seed)).unwrap();
            assert!(g.nodes().iter().all(|&v| g.degree(v).unwrap() > 0));
        }
    }

    #[test]
    fn infeasible_density() {
        let cfg = GenConfig { edge_density: 0.1, ..small(1) };
        assert!(matches!(generate_graph(&cfg), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn tasks_match_oracles() {
        let g = generate_graph(&small(3)).unwrap();
        let (tasks, skipped) = generate_tasks(&g, TaskKind::ALL, 2, 11, 0);
        assert!(skipped.is_empty(), "{skipped:?}");
        assert_eq!(tasks.len(), 2 * TaskKind::ALL.len());
        for t in &tasks {
            assert_eq!(t.query.answer(&g).unwrap(), t.truth);
            assert_eq!(Query::from_question(&t.question).as_ref(), Some(&t.query));
        }
        let (none, _) = generate_tasks(&g, TaskKind::ALL, 0, 11, 0);
        assert!(none.is_empty());
    }

    #[test]
    fn benchmark_counts() {
        let b = generate_benchmark(&small(5), 4, TaskKind::STANDARD, 1).unwrap();
        assert_eq!(b.tasks.len() + b.skipped.len(), 80);
        assert_eq!(b.macro_count() + b.micro_count(), b.tasks.len());
        b.validate().unwrap();
    }
}

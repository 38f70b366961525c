//! Importance-based description reorganization.
//!
//! 1. Rank nodes by PageRank (descending, ties by ascending id).
//! 2. Walk the ranking; each node claims every incident edge nobody has
//!    claimed yet. A node that claims at least one edge becomes the center of
//!    a [`SubgraphBlock`] whose importance is the center's PageRank.
//! 3. Place blocks, most important first, into the head region until it is
//!    full, then into the tail region; the rest fill the middle. Blocks are
//!    atomic: a block that does not fit closes the region it was offered to.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::bias::PositionalBiasModel;
use crate::description::{DescriptionSequence, EdgeClause};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::pagerank::{rank_key, PageRankVector};

#[derive(Debug, Clone, PartialEq)]
pub struct SubgraphBlock {
    pub center: NodeId,
    /// Indices into `Graph::edges`, in claim order.
    pub edges: Vec<usize>,
    pub nodes: BTreeSet<NodeId>,
    pub importance: f64,
    pub clauses: Vec<EdgeClause>,
}

impl SubgraphBlock {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

pub fn decompose(g: &Graph, pr: &PageRankVector) -> Result<Vec<SubgraphBlock>> {
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut used = vec![false; g.edge_count()];
    let mut blocks = Vec::new();
    for center in pr.ranked() {
        let importance = pr.score(center).ok_or(Error::UnknownNode(center))?;
        let mut incident: Vec<usize> = g.incident(center)?.iter().map(|&(_, e)| e).collect();
        incident.sort_unstable();
        let mut edges = Vec::new();
        let mut nodes = BTreeSet::from([center]);
        for e in incident {
            if !used[e] {
                used[e] = true;
                edges.push(e);
                nodes.insert(g.edges()[e].other(center));
            }
        }
        if edges.is_empty() {
            continue;
        }
        let clauses = edges.iter().map(|&e| EdgeClause::new(g.edges()[e])).collect();
        blocks.push(SubgraphBlock { center, edges, nodes, importance, clauses });
    }
    Ok(blocks)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Head,
    Middle,
    Tail,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionLayout {
    pub alpha_pct: f64,
    pub beta_pct: f64,
    pub head_capacity: usize,
    pub tail_capacity: usize,
    pub blocks: Vec<SubgraphBlock>,
    /// Indices into `blocks`, in output order within each region.
    pub head: Vec<usize>,
    pub middle: Vec<usize>,
    pub tail: Vec<usize>,
}

impl RegionLayout {
    pub fn edge_count(&self) -> usize {
        self.blocks.iter().map(SubgraphBlock::len).sum()
    }

    pub fn region_blocks(&self, region: Region) -> impl Iterator<Item = &SubgraphBlock> {
        let ids = match region {
            Region::Head => &self.head,
            Region::Middle => &self.middle,
            Region::Tail => &self.tail,
        };
        ids.iter().map(move |&i| &self.blocks[i])
    }

    pub fn region_edges(&self, region: Region) -> usize {
        self.region_blocks(region).map(SubgraphBlock::len).sum()
    }

    /// Block indices in sequence order: head, middle, tail.
    pub fn sequence_order(&self) -> impl Iterator<Item = usize> + '_ {
        self.head.iter().chain(&self.middle).chain(&self.tail).copied()
    }

    /// Per-clause importance in sequence order, normalized to sum 1.
    pub fn importance_profile(&self) -> ImportanceProfile {
        ImportanceProfile::from_weights(
            self.sequence_order().flat_map(|b| core::iter::repeat_n(self.blocks[b].importance, self.blocks[b].len())),
        )
    }
}

fn capacity(pct: f64, edges: usize) -> usize {
    libm::round(pct / 100.0 * edges as f64) as usize
}

/// `blocks` must already be in descending importance (as [`decompose`]
/// returns them). Capacities are `round(pct · |E|)` edges.
pub fn reorganize(
    blocks: Vec<SubgraphBlock>,
    alpha_pct: f64,
    beta_pct: f64,
) -> Result<(DescriptionSequence, RegionLayout)> {
    for p in [alpha_pct, beta_pct] {
        if !(0.0..=100.0).contains(&p) {
            return Err(Error::InvalidPercentage(p));
        }
    }
    if alpha_pct + beta_pct > 100.0 {
        return Err(Error::RegionsExceedSequence);
    }
    let total: usize = blocks.iter().map(SubgraphBlock::len).sum();
    let head_capacity = capacity(alpha_pct, total);
    let tail_capacity = capacity(beta_pct, total);

    let mut head = Vec::new();
    let mut middle = Vec::new();
    let mut tail = Vec::new();
    let (mut head_used, mut tail_used) = (0usize, 0usize);
    let mut head_open = head_capacity > 0;
    let mut tail_open = tail_capacity > 0;
    for (i, b) in blocks.iter().enumerate() {
        let n = b.len();
        if head_open {
            if head_used + n <= head_capacity {
                head.push(i);
                head_used += n;
                head_open = head_used < head_capacity;
                continue;
            }
            head_open = false;
        }
        if tail_open {
            if tail_used + n <= tail_capacity {
                tail.push(i);
                tail_used += n;
                tail_open = tail_used < tail_capacity;
                continue;
            }
            tail_open = false;
        }
        middle.push(i);
    }

    let layout = RegionLayout { alpha_pct, beta_pct, head_capacity, tail_capacity, blocks, head, middle, tail };
    let mut clauses = Vec::with_capacity(total);
    let mut position_map = Vec::with_capacity(total);
    for b in layout.sequence_order() {
        let block = &layout.blocks[b];
        clauses.extend(block.clauses.iter().cloned());
        position_map.extend(block.edges.iter().copied());
    }
    // blocks carry no direction flag; reorganize_graph sets the real preamble
    let header = alloc::string::String::from(crate::description::UNDIRECTED_PREAMBLE);
    let seq = DescriptionSequence { header, clauses, position_map };
    Ok((seq, layout))
}

/// PageRank, decomposition and placement in one call.
pub fn reorganize_graph(
    g: &Graph,
    pr: &PageRankVector,
    alpha_pct: f64,
    beta_pct: f64,
) -> Result<(DescriptionSequence, RegionLayout)> {
    let blocks = decompose(g, pr)?;
    let (mut seq, layout) = reorganize(blocks, alpha_pct, beta_pct)?;
    seq.header = alloc::string::String::from(crate::description::preamble(g.is_directed()));
    Ok((seq, layout))
}

/// Per-clause importance, non-negative and summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ImportanceProfile(pub Vec<f64>);

impl ImportanceProfile {
    pub fn from_weights<I: IntoIterator<Item = f64>>(weights: I) -> Self {
        let raw: Vec<f64> = weights.into_iter().collect();
        let total: f64 = raw.iter().sum();
        if total > 0.0 {
            Self(raw.into_iter().map(|w| w / total).collect())
        } else {
            Self(raw)
        }
    }

    /// Importance of each clause of `seq`, taken from the block that owns the
    /// clause's edge.
    pub fn for_sequence(seq: &DescriptionSequence, blocks: &[SubgraphBlock]) -> Self {
        let owner_importance: alloc::collections::BTreeMap<usize, f64> =
            blocks.iter().flat_map(|b| b.edges.iter().map(move |&e| (e, b.importance))).collect();
        Self::from_weights(seq.position_map.iter().map(|e| owner_importance.get(e).copied().unwrap_or(0.0)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `D_KL(profile ‖ curve)` where `curve` is the positional model evaluated at
/// each clause midpoint and normalized. Zero-mass profile entries contribute 0.
pub fn kl_diagnostic(profile: &ImportanceProfile, psi: &PositionalBiasModel) -> Result<f64> {
    let curve = psi.discretize(profile.len());
    kl_divergence(&profile.0, &curve)
}

pub fn kl_divergence(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    let mut total = 0.0;
    for (i, (&pi, &qi)) in p.iter().zip(q).enumerate() {
        if pi <= 0.0 {
            continue;
        }
        if qi <= 0.0 {
            return Err(Error::SupportMismatch(i));
        }
        total += pi * libm::log(pi / qi);
    }
    Ok(total.max(0.0))
}

/// Block-level ranking of `blocks` by importance with the same tie rule as
/// node ranking. Used to check that callers pass sorted input.
pub fn is_sorted_by_importance(blocks: &[SubgraphBlock]) -> bool {
    blocks.windows(2).all(|w| {
        let (a, b) = (rank_key(w[0].importance), rank_key(w[1].importance));
        a > b || (a == b && w[0].center < w[1].center)
    })
}

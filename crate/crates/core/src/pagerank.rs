//! Power-iteration PageRank.
//!
//! Undirected edges act as two opposite arcs (a self-loop as two arcs onto
//! itself). Mass sitting on nodes without outgoing arcs is spread uniformly
//! over all nodes each step, so the vector stays a probability distribution.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankConfig {
    pub damping: f64,
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        Self { damping: 0.85, max_iter: 100, tol: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PageRankVector {
    /// One entry per node, ascending by id.
    pub scores: Vec<(NodeId, f64)>,
    pub damping: f64,
    pub iterations_run: usize,
}

impl PageRankVector {
    pub fn score(&self, v: NodeId) -> Option<f64> {
        self.scores.binary_search_by_key(&v, |&(n, _)| n).ok().map(|i| self.scores[i].1)
    }

    pub fn total(&self) -> f64 {
        self.scores.iter().map(|&(_, s)| s).sum()
    }

    /// Node ids by descending score; equal scores (to 1e-12) fall back to
    /// ascending id. Quantizing keeps the order total even when symmetric
    /// nodes pick up rounding noise of a few ulps.
    pub fn ranked(&self) -> Vec<NodeId> {
        let mut keyed: Vec<(i64, NodeId)> = self.scores.iter().map(|&(n, s)| (rank_key(s), n)).collect();
        keyed.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        keyed.into_iter().map(|(_, n)| n).collect()
    }
}

pub(crate) fn rank_key(score: f64) -> i64 {
    libm::round(score * 1e12) as i64
}

pub fn pagerank(g: &Graph, damping: f64, max_iter: usize, tol: f64) -> Result<PageRankVector> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(damping > 0.0 && damping < 1.0) {
        return Err(Error::InvalidDamping(damping));
    }

    // incoming arcs per node index, listed by source index
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut out_deg = vec![0usize; n];
    for e in g.edges() {
        let iu = g.index_of(e.u)?;
        let iv = g.index_of(e.v)?;
        incoming[iv].push(iu);
        out_deg[iu] += 1;
        if !g.is_directed() {
            incoming[iu].push(iv);
            out_deg[iv] += 1;
        }
    }

    let nf = n as f64;
    let mut pr = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    let mut iterations_run = 0;
    while iterations_run < max_iter {
        let dangling: f64 = (0..n).filter(|&i| out_deg[i] == 0).map(|i| pr[i]).sum();
        let base = (1.0 - damping) / nf + damping * dangling / nf;
        for (v, slot) in next.iter_mut().enumerate() {
            let inflow: f64 = incoming[v].iter().map(|&u| pr[u] / out_deg[u] as f64).sum();
            *slot = base + damping * inflow;
        }
        let delta: f64 = pr.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        core::mem::swap(&mut pr, &mut next);
        iterations_run += 1;
        if delta < tol {
            break;
        }
    }

    Ok(PageRankVector { scores: g.nodes().iter().copied().zip(pr).collect(), damping, iterations_run })
}

pub fn pagerank_with(g: &Graph, cfg: &PageRankConfig) -> Result<PageRankVector> {
    pagerank(g, cfg.damping, cfg.max_iter, cfg.tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    /// Dense transition-matrix power iteration, run far past convergence.
    fn dense_oracle(g: &Graph, damping: f64) -> Vec<f64> {
        let n = g.node_count();
        let mut m = vec![vec![0.0f64; n]; n]; // m[to][from]
        let mut out = vec![0.0f64; n];
        for e in g.edges() {
            let a = g.index_of(e.u).unwrap();
            let b = g.index_of(e.v).unwrap();
            m[b][a] += 1.0;
            out[a] += 1.0;
            if !g.is_directed() {
                m[a][b] += 1.0;
                out[b] += 1.0;
            }
        }
        for from in 0..n {
            for to in 0..n {
                m[to][from] = if out[from] == 0.0 { 1.0 / n as f64 } else { m[to][from] / out[from] };
            }
        }
        let mut x = vec![1.0 / n as f64; n];
        for _ in 0..5000 {
            let y: Vec<f64> = (0..n)
                .map(|to| (1.0 - damping) / n as f64 + damping * (0..n).map(|from| m[to][from] * x[from]).sum::<f64>())
                .collect();
            x = y;
        }
        x
    }

    #[test]
    fn single_node() {
        let g = Graph::undirected([0], vec![]).unwrap();
        let pr = pagerank(&g, 0.85, 100, 1e-8).unwrap();
        assert!((pr.score(0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_nodes_symmetric() {
        let g = Graph::from_edges(false, &[(0, 1, 3)]).unwrap();
        let pr = pagerank(&g, 0.85, 100, 1e-8).unwrap();
        assert!((pr.score(0).unwrap() - 0.5).abs() < 1e-15);
        assert!((pr.score(1).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn path_matches_dense_oracle() {
        let g = Graph::from_edges(false, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let pr = pagerank(&g, 0.85, 10_000, 0.0).unwrap();
        let oracle = dense_oracle(&g, 0.85);
        for (i, &(_, s)) in pr.scores.iter().enumerate() {
            assert!((s - oracle[i]).abs() < 1e-12, "{s} vs {}", oracle[i]);
        }
        // the middle node outranks the ends
        assert_eq!(pr.ranked(), vec![1, 0, 2]);
    }

    #[test]
    fn directed_with_dangling() {
        let g = Graph::new(true, [0, 1, 2], vec![Edge::new(0, 1, 1), Edge::new(1, 2, 1)]).unwrap();
        let pr = pagerank(&g, 0.85, 10_000, 0.0).unwrap();
        let oracle = dense_oracle(&g, 0.85);
        for (i, &(_, s)) in pr.scores.iter().enumerate() {
            assert!((s - oracle[i]).abs() < 1e-12);
        }
        assert!((pr.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let empty = Graph::undirected([], vec![]).unwrap();
        assert_eq!(pagerank(&empty, 0.85, 100, 1e-8), Err(Error::EmptyGraph));
        let g = Graph::undirected([0], vec![]).unwrap();
        assert!(matches!(pagerank(&g, 1.0, 100, 1e-8), Err(Error::InvalidDamping(_))));
    }

    #[test]
    fn stops_on_tolerance() {
        let g = Graph::from_edges(false, &[(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let pr = pagerank(&g, 0.85, 100, 1e-8).unwrap();
        assert!(pr.iterations_run < 100);
        let zero = pagerank(&g, 0.85, 0, 1e-8).unwrap();
        assert_eq!(zero.iterations_run, 0);
        assert!(zero.scores.iter().all(|&(_, s)| s == 0.25));
    }
}

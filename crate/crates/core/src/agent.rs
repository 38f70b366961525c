//! Composite questions answered as a chain of simple questions.
//!
//! Each step asks one micro-level question (neighbors, adjacency or degree)
//! with retrieval for the nodes it names, and carries the previous step's
//! answers forward in the prompt. The agent combines step answers with plain
//! set operations.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::mem;

use crate::answer::{canonical_pair, canonical_triple, TypedAnswer};
use crate::graph::NodeId;
use crate::method::{MethodSpec, PreparedGraph};
use crate::model::{CompletionError, LanguageModel};
use crate::oracle::{CompositeQuery, MicroQuery, Query};
use crate::prompt::wrap_prompt;
use crate::ragbase::render_prompt;
use crate::scoring::parse_answer;
use crate::task::{Level, Task};

pub const CHAIN_FAILURE: &str = "A step of the reasoning chain could not be answered.";

struct Chain<'a, M: ?Sized> {
    prepared: &'a PreparedGraph,
    spec: &'a MethodSpec,
    model: &'a M,
    previous: Vec<String>,
    current: Vec<String>,
    prompts: Vec<String>,
}

/// `Ok(None)` is a step whose answer did not parse.
type Step<T> = Result<Option<T>, CompletionError>;

macro_rules! step {
    ($e:expr) => {
        match $e? {
            Some(v) => v,
            None => return Ok(None),
        }
    };
}

impl<M: LanguageModel + ?Sized> Chain<'_, M> {
    fn ask(&mut self, q: Query) -> Step<TypedAnswer> {
        let question = q.question();
        let retrieval = self.prepared.retrieval_for(&question, Level::Micro);
        let prompt = render_prompt(
            &self.prepared.description,
            &retrieval.fact_lines(),
            &self.previous,
            &question,
            q.answer_type(),
        );
        let prompt = wrap_prompt(&prompt, self.spec.wrapper);
        let text = self.model.complete(&prompt)?;
        self.prompts.push(prompt);
        let parsed = parse_answer(&text, q.answer_type());
        if let Some(a) = &parsed {
            self.current.push(format!("{question} {a}"));
        }
        Ok(parsed)
    }

    fn next_step(&mut self) {
        self.previous = mem::take(&mut self.current);
    }

    fn neighbors(&mut self, v: NodeId) -> Step<BTreeSet<NodeId>> {
        Ok(self.ask(Query::Micro(MicroQuery::Neighbors(v)))?.and_then(|a| a.as_node_set().cloned()))
    }

    fn adjacent(&mut self, u: NodeId, v: NodeId) -> Step<bool> {
        Ok(self.ask(Query::Micro(MicroQuery::DirectConnection(u, v)))?.and_then(|a| a.as_bool()))
    }

    fn degree(&mut self, v: NodeId) -> Step<f64> {
        Ok(self.ask(Query::Micro(MicroQuery::Degree(v)))?.and_then(|a| a.as_number()))
    }

    /// Nodes at exactly `k` hops, one neighbor expansion per step.
    fn k_order(&mut self, v: NodeId, k: usize) -> Step<BTreeSet<NodeId>> {
        let mut visited = BTreeSet::from([v]);
        let mut frontier = BTreeSet::from([v]);
        for _ in 0..k {
            let mut next = BTreeSet::new();
            for f in frontier {
                next.extend(step!(self.neighbors(f)));
            }
            next.retain(|x| !visited.contains(x));
            visited.extend(next.iter().copied());
            frontier = next;
            self.next_step();
        }
        Ok(Some(frontier))
    }

    /// Adjacent pairs among the neighbors of `v`, excluding `v`.
    fn neighbor_pairs(&mut self, v: NodeId) -> Step<BTreeSet<(NodeId, NodeId)>> {
        let mut around = step!(self.neighbors(v));
        around.remove(&v);
        self.next_step();
        let mut pairs = BTreeSet::new();
        for &a in &around {
            for b in step!(self.neighbors(a)) {
                if b != a && around.contains(&b) {
                    pairs.insert(canonical_pair((a, b)));
                }
            }
        }
        Ok(Some(pairs))
    }

    fn solve(&mut self, q: &CompositeQuery) -> Step<TypedAnswer> {
        Ok(Some(match *q {
            CompositeQuery::ConnectedEdges(u, v) => {
                let nu = step!(self.neighbors(u));
                let nv = step!(self.neighbors(v));
                let pairs = nu.into_iter().map(|x| (u, x)).chain(nv.into_iter().map(|y| (v, y)));
                TypedAnswer::anchored_pairs(pairs)
            }
            CompositeQuery::CompleteSubgraph(ref nodes) => {
                let distinct: Vec<NodeId> = nodes.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
                let mut complete = true;
                for (i, &a) in distinct.iter().enumerate() {
                    for &b in &distinct[i + 1..] {
                        complete &= step!(self.adjacent(a, b));
                    }
                }
                TypedAnswer::Boolean(complete)
            }
            CompositeQuery::HighestDegreeNeighborOfNeighbor(v) => {
                let first = step!(self.neighbors(v));
                self.next_step();
                let mut scan = Vec::new();
                for n in first {
                    scan.extend(step!(self.neighbors(n)).into_iter().filter(|&m| m != v));
                }
                self.next_step();
                let mut best: Option<(f64, NodeId)> = None;
                let mut seen = BTreeSet::new();
                for m in scan {
                    if !seen.insert(m) {
                        continue;
                    }
                    let d = step!(self.degree(m));
                    if best.is_none_or(|(bd, _)| d > bd) {
                        best = Some((d, m));
                    }
                }
                match best {
                    Some((_, m)) => TypedAnswer::number(m),
                    None => return Ok(None),
                }
            }
            CompositeQuery::KOrderNeighbors { node, k } => TypedAnswer::NodeSet(step!(self.k_order(node, k))),
            CompositeQuery::NeighborsConnectedTo { node, target } => {
                let around = step!(self.neighbors(node));
                self.next_step();
                let mut out = BTreeSet::new();
                for x in around {
                    if step!(self.adjacent(x, target)) {
                        out.insert(x);
                    }
                }
                TypedAnswer::NodeSet(out)
            }
            CompositeQuery::NeighborPairs(v) => TypedAnswer::PairSet(step!(self.neighbor_pairs(v))),
            CompositeQuery::EdgeCommonNeighbors(u, v) => {
                let nu = step!(self.neighbors(u));
                let nv = step!(self.neighbors(v));
                TypedAnswer::NodeSet(nu.intersection(&nv).copied().collect())
            }
            CompositeQuery::Triangles(v) => {
                let pairs = step!(self.neighbor_pairs(v));
                TypedAnswer::TripleSet(pairs.into_iter().map(|(a, b)| canonical_triple((v, a, b))).collect())
            }
            CompositeQuery::CommonKOrderNeighbors { u, v, k } => {
                let a = step!(self.k_order(u, k));
                let b = step!(self.k_order(v, k));
                TypedAnswer::NodeSet(a.intersection(&b).copied().collect())
            }
        }))
    }
}

/// Rendered final answer, or [`CHAIN_FAILURE`] when a step's answer did not
/// parse. Non-composite tasks are asked directly.
pub fn run_agent<M: LanguageModel + ?Sized>(
    task: &Task,
    prepared: &PreparedGraph,
    spec: &MethodSpec,
    model: &M,
) -> Result<String, CompletionError> {
    run_agent_traced(task, prepared, spec, model).map(|(text, _)| text)
}

/// [`run_agent`] plus every step prompt in order.
pub fn run_agent_traced<M: LanguageModel + ?Sized>(
    task: &Task,
    prepared: &PreparedGraph,
    spec: &MethodSpec,
    model: &M,
) -> Result<(String, Vec<String>), CompletionError> {
    let Query::Composite(q) = &task.query else {
        let prompt = prepared.prompt_for(spec, task);
        let text = model.complete(&prompt)?;
        return Ok((text, alloc::vec![prompt]));
    };
    let mut chain = Chain { prepared, spec, model, previous: Vec::new(), current: Vec::new(), prompts: Vec::new() };
    let text = match chain.solve(q)? {
        Some(answer) => format!("The answer is {answer}."),
        None => String::from(CHAIN_FAILURE),
    };
    Ok((text, chain.prompts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bias::PositionalBiasModel;
    use crate::graph::Graph;
    use crate::method::{prepare, Hyperparameters};
    use crate::simulator::Simulator;

    fn path() -> Graph {
        Graph::from_edges(false, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (1, 5, 2)]).unwrap()
    }

    fn task(g: &Graph, q: CompositeQuery) -> Task {
        let query = Query::Composite(q);
        Task { id: String::from("t"), graph_id: 0, question: query.question(), truth: query.answer(g).unwrap(), query }
    }

    #[test]
    fn perfect_recall_matches_oracle() {
        let g = path();
        let spec = MethodSpec::named("graphinsight", Hyperparameters::default()).unwrap();
        let prepared = prepare(&spec, &g).unwrap();
        let sim = Simulator::new(PositionalBiasModel::uniform(1.0), 1);
        for q in [
            CompositeQuery::KOrderNeighbors { node: 0, k: 2 },
            CompositeQuery::KOrderNeighbors { node: 0, k: 3 },
            CompositeQuery::ConnectedEdges(1, 2),
            CompositeQuery::CompleteSubgraph(alloc::vec![0, 1, 5]),
            CompositeQuery::HighestDegreeNeighborOfNeighbor(3),
            CompositeQuery::NeighborsConnectedTo { node: 1, target: 3 },
            CompositeQuery::NeighborPairs(1),
            CompositeQuery::EdgeCommonNeighbors(1, 2),
            CompositeQuery::Triangles(2),
            CompositeQuery::CommonKOrderNeighbors { u: 0, v: 4, k: 2 },
        ] {
            let t = task(&g, q);
            let text = run_agent(&t, &prepared, &spec, &sim).unwrap();
            assert_eq!(parse_answer(&text, t.answer_type()), Some(t.truth.clone()), "{:?}", t.query);
        }
    }

    #[test]
    fn single_step_and_forwarding() {
        let g = path();
        let spec = MethodSpec::named("graphinsight", Hyperparameters::default()).unwrap();
        let prepared = prepare(&spec, &g).unwrap();
        let sim = Simulator::new(PositionalBiasModel::uniform(1.0), 1);
        let one = task(&g, CompositeQuery::KOrderNeighbors { node: 1, k: 1 });
        let (_, prompts) = run_agent_traced(&one, &prepared, &spec, &sim).unwrap();
        assert_eq!(prompts.len(), 1);
        assert!(prompts[0].contains("Q: Who are the neighbors of node 1?"));

        let two = task(&g, CompositeQuery::KOrderNeighbors { node: 0, k: 2 });
        let (_, prompts) = run_agent_traced(&two, &prepared, &spec, &sim).unwrap();
        assert_eq!(prompts.len(), 2);
        assert!(prompts[1].contains("Previous step results:\nWho are the neighbors of node 0? [1]"));
    }

    #[test]
    fn unparseable_step_fails_chain() {
        struct Mute;
        impl LanguageModel for Mute {
            fn name(&self) -> String {
                String::from("mute")
            }
            fn complete(&self, _: &str) -> Result<String, CompletionError> {
                Ok(String::from("hmm"))
            }
        }
        let g = path();
        let spec = MethodSpec::named("graphinsight", Hyperparameters::default()).unwrap();
        let prepared = prepare(&spec, &g).unwrap();
        let t = task(&g, CompositeQuery::NeighborPairs(1));
        assert_eq!(run_agent(&t, &prepared, &spec, &Mute).unwrap(), CHAIN_FAILURE);
    }
}

//! A deterministic stand-in for a language model with positional bias.
//!
//! The simulator reads a prompt produced by this crate, keeps each line of the
//! graph description with probability `Ψ(position)`, keeps every retrieved
//! fact, and answers the question exactly on what it kept. Randomness is
//! seeded from the prompt bytes and the simulator seed, so a prompt always
//! gets the same response.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::answer::TypedAnswer;
use crate::bias::PositionalBiasModel;
use crate::description::{
    adjacency_list_header, parse_adjacency_line, parse_matrix_header, parse_matrix_row, EdgeClause, DIRECTED_PREAMBLE,
    UNDIRECTED_PREAMBLE,
};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, NodeId};
use crate::model::{CompletionError, LanguageModel};
use crate::oracle::{CompositeQuery, MacroQuery, MicroQuery, Query};
use crate::ragbase::{parse_fact, Fact, FACTS_HEADER, QUESTION_PREFIX};
use crate::text::fnv1a;

pub const REFUSAL: &str = "I cannot answer this question from the given description.";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Simulator {
    pub bias: PositionalBiasModel,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Edges,
    AdjacencyList,
    AdjacencyMatrix,
}

/// What the simulator took away from a prompt.
#[derive(Debug, Clone, PartialEq)]
pub struct Recollection {
    pub graph: Graph,
    pub degree_facts: BTreeMap<NodeId, usize>,
    pub query: Query,
}

type EdgeKey = (NodeId, NodeId, u32);

fn key(directed: bool, u: NodeId, v: NodeId, w: u32) -> EdgeKey {
    if directed || u <= v {
        (u, v, w)
    } else {
        (v, u, w)
    }
}

fn merge_max(into: &mut BTreeMap<EdgeKey, usize>, from: BTreeMap<EdgeKey, usize>) {
    for (k, c) in from {
        let slot = into.entry(k).or_insert(0);
        *slot = (*slot).max(c);
    }
}

impl Simulator {
    pub fn new(bias: PositionalBiasModel, seed: u64) -> Self {
        Self { bias, seed }
    }

    /// Recalls the description and facts of `prompt` and parses its question.
    /// `None` when the prompt carries no recognizable question.
    pub fn recollect(&self, prompt: &str) -> Option<Recollection> {
        let lines: Vec<&str> = prompt.lines().collect();
        let query = lines.iter().rev().find_map(|l| l.strip_prefix(QUESTION_PREFIX)).and_then(Query::from_question)?;

        let al_headers = [adjacency_list_header(false), adjacency_list_header(true)];
        let mut header = None;
        for (i, l) in lines.iter().enumerate().rev() {
            let l = l.trim();
            let found = if l == UNDIRECTED_PREAMBLE {
                Some((Format::Edges, false, Vec::new()))
            } else if l == DIRECTED_PREAMBLE {
                Some((Format::Edges, true, Vec::new()))
            } else if l == al_headers[0] {
                Some((Format::AdjacencyList, false, Vec::new()))
            } else if l == al_headers[1] {
                Some((Format::AdjacencyList, true, Vec::new()))
            } else {
                parse_matrix_header(l).map(|(d, nodes)| (Format::AdjacencyMatrix, d, nodes))
            };
            if let Some(f) = found {
                header = Some((i, f));
                break;
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(fnv1a(prompt.as_bytes()) ^ self.seed);
        let mut nodes: BTreeSet<NodeId> = query.mentioned_nodes().into_iter().collect();
        let mut edges: BTreeMap<EdgeKey, usize> = BTreeMap::new();
        let mut directed = false;
        let mut facts_from = 0;

        if let Some((h, (format, dir, matrix_nodes))) = header {
            directed = dir;
            let body: Vec<&str> = lines[h + 1..].iter().copied().take_while(|l| !l.trim().is_empty()).collect();
            facts_from = h + 1 + body.len();
            nodes.extend(matrix_nodes.iter().copied());
            let n = body.len();
            for (i, line) in body.iter().enumerate() {
                let p = self.bias.at_index(i, n);
                if rng.random::<f64>() >= p {
                    continue;
                }
                let mut from_line: BTreeMap<EdgeKey, usize> = BTreeMap::new();
                match format {
                    Format::Edges => {
                        if let Some(e) = EdgeClause::parse(line) {
                            *from_line.entry(key(directed, e.u, e.v, e.w)).or_insert(0) += 1;
                        }
                    }
                    Format::AdjacencyList => {
                        if let Some((v, entries)) = parse_adjacency_line(line) {
                            nodes.insert(v);
                            for (nb, w) in entries {
                                *from_line.entry(key(directed, v, nb, w)).or_insert(0) += 1;
                            }
                        }
                    }
                    Format::AdjacencyMatrix => {
                        if let (Some(row), Some(&v)) = (parse_matrix_row(line), matrix_nodes.get(i)) {
                            for (j, &w) in row.iter().enumerate() {
                                if let (true, Some(&nb)) = (w > 0, matrix_nodes.get(j)) {
                                    *from_line.entry(key(directed, v, nb, w)).or_insert(0) += 1;
                                }
                            }
                        }
                    }
                }
                if format == Format::Edges {
                    // one clause per edge: repeated clauses are parallel edges
                    for (k, c) in from_line {
                        *edges.entry(k).or_insert(0) += c;
                    }
                } else {
                    // every edge shows up in both endpoint rows
                    merge_max(&mut edges, from_line);
                }
            }
        }

        let mut degree_facts = BTreeMap::new();
        let mut fact_edges: BTreeMap<EdgeKey, usize> = BTreeMap::new();
        if let Some(f) = lines[facts_from..].iter().rposition(|l| l.trim() == FACTS_HEADER) {
            for line in lines[facts_from + f + 1..].iter().take_while(|l| !l.trim().is_empty()) {
                match parse_fact(line) {
                    Some(Fact::Degree(v, d)) => {
                        nodes.insert(v);
                        degree_facts.insert(v, d);
                    }
                    Some(Fact::Edge(e)) => *fact_edges.entry(key(directed, e.u, e.v, e.w)).or_insert(0) += 1,
                    None => {}
                }
            }
        }
        merge_max(&mut edges, fact_edges);

        let edge_list: Vec<Edge> =
            edges.iter().flat_map(|(&(u, v, w), &c)| core::iter::repeat_n(Edge::new(u, v, w), c)).collect();
        nodes.extend(edge_list.iter().flat_map(|e| [e.u, e.v]));
        let graph = Graph::new(directed, nodes, edge_list).ok()?;
        Some(Recollection { graph, degree_facts, query })
    }

    /// Answer to `query` on the recalled graph, with stated degrees taking
    /// precedence over counted ones.
    pub fn answer(r: &Recollection) -> Result<TypedAnswer> {
        let g = &r.graph;
        let deg = |v: NodeId| -> Result<usize> {
            match r.degree_facts.get(&v) {
                Some(&d) => Ok(d),
                None => g.degree(v),
            }
        };
        match &r.query {
            Query::Micro(MicroQuery::Degree(v)) => Ok(TypedAnswer::number(deg(*v)? as f64)),
            Query::Micro(MicroQuery::IsLeaf(v)) => Ok(TypedAnswer::Boolean(deg(*v)? == 1)),
            Query::Micro(MicroQuery::EvenDegree(v)) => Ok(TypedAnswer::Boolean(deg(*v)? % 2 == 0)),
            Query::Micro(MicroQuery::DegreeGreater(u, v)) => Ok(TypedAnswer::Boolean(deg(*u)? > deg(*v)?)),
            Query::Macro(MacroQuery::TopKDegrees(k)) => {
                if *k == 0 || *k > g.node_count() {
                    return Err(Error::InvalidK { k: *k, max: g.node_count() });
                }
                let mut all = g.nodes().iter().map(|&v| Ok((v, deg(v)? as u64))).collect::<Result<Vec<_>>>()?;
                all.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
                all.truncate(*k);
                Ok(TypedAnswer::ScoredPairList(all))
            }
            Query::Composite(CompositeQuery::HighestDegreeNeighborOfNeighbor(v)) => {
                let mut best: Option<(usize, NodeId)> = None;
                for n in g.neighbors(*v)? {
                    for m in g.neighbors(n)? {
                        if m == *v {
                            continue;
                        }
                        let d = deg(m)?;
                        if best.is_none_or(|(bd, _)| d > bd) {
                            best = Some((d, m));
                        }
                    }
                }
                best.map(|(_, m)| TypedAnswer::number(m)).ok_or(Error::NoCandidate(*v))
            }
            q => q.answer(g),
        }
    }

    pub fn respond(&self, prompt: &str) -> String {
        match self.recollect(prompt).map(|r| Self::answer(&r)) {
            Some(Ok(answer)) => format!("The answer is {answer}."),
            _ => String::from(REFUSAL),
        }
    }
}

impl LanguageModel for Simulator {
    fn name(&self) -> String {
        format!(
            "simulator(psi={},{},{};head={};tail={};seed={})",
            self.bias.head,
            self.bias.middle,
            self.bias.tail,
            self.bias.head_fraction,
            self.bias.tail_fraction,
            self.seed
        )
    }

    fn complete(&self, prompt: &str) -> core::result::Result<String, CompletionError> {
        Ok(self.respond(prompt))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::answer::AnswerType;
    use crate::description::{render_raw, render_structural, StructuralFormat};
    use crate::ragbase::{assemble_prompt, Retrieval};
    use crate::scoring::parse_answer;

    fn g() -> Graph {
        Graph::from_edges(false, &[(0, 1, 2), (1, 2, 3), (2, 0, 1), (2, 3, 4), (3, 3, 1), (1, 2, 5)]).unwrap()
    }

    fn ask(sim: &Simulator, description: &str, q: &Query, r: &Retrieval) -> Option<TypedAnswer> {
        let p = assemble_prompt(description, r, &q.question(), q.answer_type());
        parse_answer(&sim.respond(&p), q.answer_type())
    }

    fn queries() -> Vec<Query> {
        alloc::vec![
            Query::Macro(MacroQuery::NodeCount),
            Query::Macro(MacroQuery::HasCycle),
            Query::Macro(MacroQuery::TopKDegrees(3)),
            Query::Micro(MicroQuery::Degree(2)),
            Query::Micro(MicroQuery::Neighbors(3)),
            Query::Micro(MicroQuery::EdgeWeight(2, 1)),
            Query::Composite(CompositeQuery::NeighborPairs(2)),
            Query::Composite(CompositeQuery::HighestDegreeNeighborOfNeighbor(3)),
        ]
    }

    #[test]
    fn full_recall_is_oracle() {
        let sim = Simulator::new(PositionalBiasModel::uniform(1.0), 3);
        let g = g();
        let descriptions = [render_raw(&g).text(), render_structural(&g, StructuralFormat::AdjacencyList).unwrap()];
        for d in &descriptions {
            for q in queries() {
                assert_eq!(ask(&sim, d, &q, &Retrieval::default()), Some(q.answer(&g).unwrap()), "{q:?}");
            }
        }
        let simple = Graph::from_edges(false, &[(0, 1, 2), (1, 2, 3), (2, 0, 1), (2, 3, 4)]).unwrap();
        let am = render_structural(&simple, StructuralFormat::AdjacencyMatrix).unwrap();
        for q in queries() {
            assert_eq!(ask(&sim, &am, &q, &Retrieval::default()), Some(q.answer(&simple).unwrap()));
        }
    }

    #[test]
    fn zero_recall_sees_nothing() {
        let sim = Simulator::new(PositionalBiasModel::uniform(0.0), 3);
        let d = render_raw(&g()).text();
        let q = Query::Micro(MicroQuery::Neighbors(3));
        assert_eq!(ask(&sim, &d, &q, &Retrieval::default()), Some(TypedAnswer::nodes([])));
        let q = Query::Micro(MicroQuery::Degree(12));
        let mut r = Retrieval::default();
        r.node_hits.insert(12, 6);
        assert_eq!(ask(&sim, &d, &q, &r), Some(TypedAnswer::number(6)));
        let w = Query::Micro(MicroQuery::EdgeWeight(0, 1));
        let p = assemble_prompt(&d, &Retrieval::default(), &w.question(), AnswerType::Number);
        assert_eq!(sim.respond(&p), REFUSAL);
    }

    #[test]
    fn deterministic_per_prompt() {
        let sim = Simulator::new(PositionalBiasModel::uniform(0.5), 9);
        let p = assemble_prompt(
            &render_raw(&g()).text(),
            &Retrieval::default(),
            "Who are the neighbors of node 2?",
            AnswerType::NodeSet,
        );
        assert_eq!(sim.respond(&p), sim.respond(&p));
        assert_eq!(sim.respond("no question here"), REFUSAL);
    }
}

//! Method matrix: how a graph is described and how a task is put to a model.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use crate::answer::TypedAnswer;
use crate::description::{render_raw, render_structural, reorder, StructuralFormat, Traversal};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::model::LanguageModel;
use crate::pagerank::{pagerank_with, PageRankConfig};
use crate::prompt::{wrap_prompt, Wrapper};
use crate::ragbase::{assemble_prompt, build_rag_base, extract_entities, retrieve, RagBase, Retrieval};
use crate::reorganizer::{reorganize_graph, RegionLayout};
use crate::scoring::{parse_answer, score};
use crate::task::{Level, Task};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ordering {
    Raw,
    Bfs,
    Dfs,
    ShortestPath,
    Importance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DescriptionFormat {
    Sequential,
    AdjacencyList,
    AdjacencyMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodSpec {
    pub name: String,
    pub ordering: Ordering,
    pub format: DescriptionFormat,
    pub wrapper: Wrapper,
    pub rag: bool,
    /// Composite tasks go through the step-by-step agent.
    pub agent: bool,
    pub alpha_pct: f64,
    pub beta_pct: f64,
    pub gamma_pct: f64,
    pub pagerank: PageRankConfig,
}

/// Region and retrieval parameters shared by every method in a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperparameters {
    pub alpha_pct: f64,
    pub beta_pct: f64,
    pub gamma_pct: f64,
    pub pagerank: PageRankConfig,
}

impl Default for Hyperparameters {
    fn default() -> Self {
        Self { alpha_pct: 4.5, beta_pct: 10.5, gamma_pct: 80.0, pagerank: PageRankConfig::default() }
    }
}

/// Names accepted by [`MethodSpec::named`].
pub const METHOD_NAMES: &[&str] = &[
    "raw",
    "bfs",
    "dfs",
    "sp",
    "adjacency_list",
    "adjacency_matrix",
    "cot",
    "few_shot",
    "bag",
    "importance",
    "graphinsight",
];

impl MethodSpec {
    pub fn new(name: &str, ordering: Ordering, hp: Hyperparameters) -> Self {
        Self {
            name: name.to_string(),
            ordering,
            format: DescriptionFormat::Sequential,
            wrapper: Wrapper::None,
            rag: false,
            agent: false,
            alpha_pct: hp.alpha_pct,
            beta_pct: hp.beta_pct,
            gamma_pct: hp.gamma_pct,
            pagerank: hp.pagerank,
        }
    }

    /// Baselines use raw edge order with one change each; `graphinsight` is
    /// importance ordering with retrieval and the composite-task agent.
    pub fn named(name: &str, hp: Hyperparameters) -> Result<Self> {
        let base = |ordering| Self::new(name, ordering, hp);
        let spec = match name {
            "raw" => base(Ordering::Raw),
            "bfs" => base(Ordering::Bfs),
            "dfs" => base(Ordering::Dfs),
            "sp" => base(Ordering::ShortestPath),
            "adjacency_list" => Self { format: DescriptionFormat::AdjacencyList, ..base(Ordering::Raw) },
            "adjacency_matrix" => Self { format: DescriptionFormat::AdjacencyMatrix, ..base(Ordering::Raw) },
            "cot" => Self { wrapper: Wrapper::Cot, ..base(Ordering::Raw) },
            "few_shot" => Self { wrapper: Wrapper::FewShot(2), ..base(Ordering::Raw) },
            "bag" => Self { wrapper: Wrapper::Bag, ..base(Ordering::Raw) },
            "importance" => base(Ordering::Importance),
            "graphinsight" => Self { rag: true, agent: true, ..base(Ordering::Importance) },
            other => {
                return Err(Error::InvalidConfig(format!(
                    "unknown method '{other}' (expected one of {})",
                    METHOD_NAMES.join(", ")
                )))
            }
        };
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ordering == Ordering::Importance && self.format != DescriptionFormat::Sequential {
            return Err(Error::InvalidConfig(format!(
                "method '{}': importance ordering requires the sequential format",
                self.name
            )));
        }
        if self.rag && self.ordering != Ordering::Importance {
            return Err(Error::InvalidConfig(format!(
                "method '{}': retrieval requires importance ordering",
                self.name
            )));
        }
        if self.format != DescriptionFormat::Sequential && self.ordering != Ordering::Raw {
            return Err(Error::InvalidConfig(format!(
                "method '{}': structural formats have a fixed node order",
                self.name
            )));
        }
        for p in [self.alpha_pct, self.beta_pct, self.gamma_pct] {
            if !(0.0..=100.0).contains(&p) {
                return Err(Error::InvalidPercentage(p));
            }
        }
        if self.alpha_pct + self.beta_pct > 100.0 {
            return Err(Error::RegionsExceedSequence);
        }
        Ok(())
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ordering::Raw => "raw",
            Ordering::Bfs => "bfs",
            Ordering::Dfs => "dfs",
            Ordering::ShortestPath => "sp",
            Ordering::Importance => "importance",
        })
    }
}

impl FromStr for Ordering {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        Ok(match s {
            "raw" => Ordering::Raw,
            "bfs" => Ordering::Bfs,
            "dfs" => Ordering::Dfs,
            "sp" => Ordering::ShortestPath,
            "importance" => Ordering::Importance,
            _ => return Err(format!("unknown ordering '{s}'")),
        })
    }
}

impl fmt::Display for DescriptionFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DescriptionFormat::Sequential => "sequential",
            DescriptionFormat::AdjacencyList => "adjacency_list",
            DescriptionFormat::AdjacencyMatrix => "adjacency_matrix",
        })
    }
}

impl FromStr for DescriptionFormat {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        Ok(match s {
            "sequential" => DescriptionFormat::Sequential,
            "adjacency_list" => DescriptionFormat::AdjacencyList,
            "adjacency_matrix" => DescriptionFormat::AdjacencyMatrix,
            _ => return Err(format!("unknown format '{s}'")),
        })
    }
}

/// A graph described once for a method, reused by all of its tasks.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedGraph {
    pub description: String,
    pub layout: Option<RegionLayout>,
    pub rag: Option<RagBase>,
    pub known_nodes: BTreeSet<NodeId>,
}

pub fn prepare(spec: &MethodSpec, g: &Graph) -> Result<PreparedGraph> {
    spec.validate()?;
    let root = *g.nodes().first().ok_or(Error::EmptyGraph)?;
    let mut layout = None;
    let mut rag = None;
    let description = match (spec.format, spec.ordering) {
        (DescriptionFormat::AdjacencyList, _) => render_structural(g, StructuralFormat::AdjacencyList)?,
        (DescriptionFormat::AdjacencyMatrix, _) => render_structural(g, StructuralFormat::AdjacencyMatrix)?,
        (_, Ordering::Raw) => render_raw(g).text(),
        (_, Ordering::Bfs) => reorder(g, Traversal::Bfs, root)?.text(),
        (_, Ordering::Dfs) => reorder(g, Traversal::Dfs, root)?.text(),
        (_, Ordering::ShortestPath) => reorder(g, Traversal::ShortestPath, root)?.text(),
        (_, Ordering::Importance) => {
            let pr = pagerank_with(g, &spec.pagerank)?;
            let (seq, l) = reorganize_graph(g, &pr, spec.alpha_pct, spec.beta_pct)?;
            if spec.rag {
                rag = Some(build_rag_base(&l, g, spec.gamma_pct)?);
            }
            layout = Some(l);
            seq.text()
        }
    };
    Ok(PreparedGraph { description, layout, rag, known_nodes: g.nodes().iter().copied().collect() })
}

impl PreparedGraph {
    /// Retrieval for a question; macro questions and methods without a
    /// base get none.
    pub fn retrieval_for(&self, question: &str, level: Level) -> Retrieval {
        match (&self.rag, level) {
            (Some(base), Level::Micro | Level::Composite) => {
                retrieve(base, &extract_entities(question, &self.known_nodes))
            }
            _ => Retrieval::default(),
        }
    }

    pub fn prompt_for(&self, spec: &MethodSpec, task: &Task) -> String {
        let r = self.retrieval_for(&task.question, task.level());
        wrap_prompt(&assemble_prompt(&self.description, &r, &task.question, task.answer_type()), spec.wrapper)
    }
}

/// One model answer, parsed and scored.
#[derive(Debug, Clone, PartialEq)]
pub struct TaskOutcome {
    pub task_id: String,
    pub raw_text: String,
    pub parsed: Option<TypedAnswer>,
    pub score: f64,
    /// Set when the model call itself failed.
    pub error: Option<String>,
}

pub fn run_task<M: LanguageModel + ?Sized>(
    spec: &MethodSpec,
    prepared: &PreparedGraph,
    task: &Task,
    model: &M,
) -> Result<TaskOutcome> {
    let response = if spec.agent && task.level() == Level::Composite {
        crate::agent::run_agent(task, prepared, spec, model)
    } else {
        model.complete(&prepared.prompt_for(spec, task))
    };
    let (raw_text, error) = match response {
        Ok(text) => (text, None),
        Err(e) => (String::new(), Some(e.message)),
    };
    let parsed = if error.is_none() { parse_answer(&raw_text, task.answer_type()) } else { None };
    let score = score(parsed.as_ref(), &task.truth)?;
    Ok(TaskOutcome { task_id: task.id.clone(), raw_text, parsed, score, error })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants() {
        let hp = Hyperparameters::default();
        for name in METHOD_NAMES {
            MethodSpec::named(name, hp).unwrap().validate().unwrap();
        }
        let mut bad = MethodSpec::named("importance", hp).unwrap();
        bad.format = DescriptionFormat::AdjacencyList;
        assert!(bad.validate().is_err());
        let mut bad = MethodSpec::named("raw", hp).unwrap();
        bad.rag = true;
        assert!(bad.validate().is_err());
        assert!(MethodSpec::named("nope", hp).is_err());
    }
}

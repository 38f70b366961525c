//! On-disk formats: graphs, benchmark tasks, retrieval bases, layouts, run
//! results and reports.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use graphinsight_core::answer::{AnswerType, TypedAnswer};
use graphinsight_core::generate::Benchmark;
use graphinsight_core::graph::{Edge, Graph};
use graphinsight_core::oracle::Query;
use graphinsight_core::ragbase::RagBase;
use graphinsight_core::reorganizer::RegionLayout;
use graphinsight_core::scoring::{Mean, ScoreReport, TaskScore};
use graphinsight_core::task::{Task, TaskKind};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },
    #[error("{path}:{line}: {message}")]
    Line { path: String, line: usize, message: String },
    #[error("{path}: {message}")]
    Format { path: String, message: String },
}

pub type IoResult<T> = Result<T, IoError>;

fn file_err(path: &Path) -> impl FnOnce(std::io::Error) -> IoError + '_ {
    move |source| IoError::File { path: path.display().to_string(), source }
}

fn format_err(path: &Path, message: impl ToString) -> IoError {
    IoError::Format { path: path.display().to_string(), message: message.to_string() }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub directed: bool,
    pub nodes: Vec<u32>,
    pub edges: Vec<[u32; 3]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        Self {
            directed: g.is_directed(),
            nodes: g.nodes().to_vec(),
            edges: g.edges().iter().map(|e| [e.u, e.v, e.w]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = graphinsight_core::Error;

    fn try_from(g: GraphJson) -> Result<Self, Self::Error> {
        Graph::new(g.directed, g.nodes, g.edges.into_iter().map(|[u, v, w]| Edge::new(u, v, w)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphsFile {
    pub seed: u64,
    pub graphs: Vec<GraphJson>,
}

pub fn read_graph(path: &Path) -> IoResult<Graph> {
    let text = fs::read_to_string(path).map_err(file_err(path))?;
    let g: GraphJson = serde_json::from_str(&text).map_err(|e| format_err(path, e))?;
    Graph::try_from(g).map_err(|e| format_err(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> IoResult<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| format_err(path, e))?;
    text.push('\n');
    fs::write(path, text).map_err(file_err(path))
}

pub fn read_graphs(path: &Path) -> IoResult<(u64, Vec<Graph>)> {
    let text = fs::read_to_string(path).map_err(file_err(path))?;
    let file: GraphsFile = serde_json::from_str(&text).map_err(|e| format_err(path, e))?;
    let graphs = file
        .graphs
        .into_iter()
        .enumerate()
        .map(|(i, g)| Graph::try_from(g).map_err(|e| format_err(path, format!("graph {i}: {e}"))))
        .collect::<IoResult<Vec<_>>>()?;
    Ok((file.seed, graphs))
}

/// JSON form of a typed answer: booleans and numbers as themselves, sets as
/// arrays of ids or arrays of tuples.
pub fn answer_to_json(a: &TypedAnswer) -> Value {
    match a {
        TypedAnswer::Boolean(b) => json!(b),
        TypedAnswer::Number(x) => {
            if x.fract() == 0.0 && x.abs() < 9.0e15 {
                json!(*x as i64)
            } else {
                json!(x)
            }
        }
        TypedAnswer::NodeSet(s) => json!(s),
        TypedAnswer::PairSet(s) | TypedAnswer::AnchoredPairSet(s) => {
            json!(s.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>())
        }
        TypedAnswer::TripleSet(s) => json!(s.iter().map(|&(a, b, c)| [a, b, c]).collect::<Vec<_>>()),
        TypedAnswer::ScoredPairList(l) => json!(l.iter().map(|&(a, b)| [a as u64, b]).collect::<Vec<_>>()),
    }
}

pub fn answer_from_json(v: &Value, t: AnswerType) -> Option<TypedAnswer> {
    fn tuples<const N: usize>(v: &Value) -> Option<Vec<[u64; N]>> {
        v.as_array()?
            .iter()
            .map(|item| {
                let arr = item.as_array().filter(|a| a.len() == N)?;
                let mut out = [0u64; N];
                for (o, x) in out.iter_mut().zip(arr) {
                    *o = x.as_u64()?;
                }
                Some(out)
            })
            .collect()
    }
    let id = |x: u64| u32::try_from(x).ok();
    Some(match t {
        AnswerType::Boolean => TypedAnswer::Boolean(v.as_bool()?),
        AnswerType::Number => TypedAnswer::Number(v.as_f64()?),
        AnswerType::NodeSet => {
            TypedAnswer::nodes(v.as_array()?.iter().map(|x| x.as_u64().and_then(id)).collect::<Option<Vec<_>>>()?)
        }
        AnswerType::PairSet => TypedAnswer::pairs(
            tuples::<2>(v)?.into_iter().map(|[a, b]| Some((id(a)?, id(b)?))).collect::<Option<Vec<_>>>()?,
        ),
        AnswerType::AnchoredPairSet => TypedAnswer::anchored_pairs(
            tuples::<2>(v)?.into_iter().map(|[a, b]| Some((id(a)?, id(b)?))).collect::<Option<Vec<_>>>()?,
        ),
        AnswerType::TripleSet => TypedAnswer::triples(
            tuples::<3>(v)?.into_iter().map(|[a, b, c]| Some((id(a)?, id(b)?, id(c)?))).collect::<Option<Vec<_>>>()?,
        ),
        AnswerType::ScoredPairList => TypedAnswer::ScoredPairList(
            tuples::<2>(v)?.into_iter().map(|[a, b]| Some((id(a)?, b))).collect::<Option<Vec<_>>>()?,
        ),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskRecord {
    pub graph_id: usize,
    pub task_id: String,
    pub kind: String,
    pub question: String,
    pub answer_type: String,
    pub truth: Value,
    pub params: Value,
}

fn params(q: &Query) -> Value {
    use graphinsight_core::oracle::{CompositeQuery, MacroQuery};
    match q {
        Query::Macro(MacroQuery::TopKDegrees(k)) => json!({ "k": k }),
        Query::Composite(CompositeQuery::KOrderNeighbors { node, k }) => json!({ "nodes": [node], "k": k }),
        Query::Composite(CompositeQuery::CommonKOrderNeighbors { u, v, k }) => json!({ "nodes": [u, v], "k": k }),
        other => json!({ "nodes": other.mentioned_nodes() }),
    }
}

impl From<&Task> for TaskRecord {
    fn from(t: &Task) -> Self {
        Self {
            graph_id: t.graph_id,
            task_id: t.id.clone(),
            kind: t.kind().to_string(),
            question: t.question.clone(),
            answer_type: t.answer_type().to_string(),
            truth: answer_to_json(&t.truth),
            params: params(&t.query),
        }
    }
}

impl TaskRecord {
    /// Rebuilds the task, re-deriving its query from the question and
    /// checking the stored truth against the oracle.
    pub fn into_task(self, graphs: &[Graph]) -> Result<Task, String> {
        let kind: TaskKind = self.kind.parse()?;
        let query = Query::from_question(&self.question).ok_or("question does not match any template")?;
        if query.kind() != kind {
            return Err(format!("question is a {} question, record says {kind}", query.kind()));
        }
        let answer_type: AnswerType = self.answer_type.parse()?;
        if answer_type != query.answer_type() {
            return Err(format!("answer_type {answer_type} does not fit kind {kind}"));
        }
        let truth = answer_from_json(&self.truth, answer_type).ok_or("truth does not match its answer_type")?;
        let g = graphs.get(self.graph_id).ok_or_else(|| format!("graph {} does not exist", self.graph_id))?;
        let fresh = query.answer(g).map_err(|e| format!("oracle failed: {e}"))?;
        if fresh != truth {
            return Err(format!("stale truth: stored {truth}, oracle gives {fresh}"));
        }
        Ok(Task { id: self.task_id, graph_id: self.graph_id, query, question: self.question, truth })
    }
}

pub const GRAPHS_FILE: &str = "graphs.json";
pub const TASKS_FILE: &str = "tasks.jsonl";

pub fn save_benchmark(dir: &Path, b: &Benchmark) -> IoResult<()> {
    fs::create_dir_all(dir).map_err(file_err(dir))?;
    let graphs = GraphsFile { seed: b.seed, graphs: b.graphs.iter().map(GraphJson::from).collect() };
    write_json(&dir.join(GRAPHS_FILE), &graphs)?;
    write_jsonl(&dir.join(TASKS_FILE), b.tasks.iter().map(TaskRecord::from))
}

pub fn write_jsonl<T: Serialize>(path: &Path, records: impl IntoIterator<Item = T>) -> IoResult<()> {
    let file = File::create(path).map_err(file_err(path))?;
    let mut w = BufWriter::new(file);
    for r in records {
        serde_json::to_writer(&mut w, &r).map_err(|e| format_err(path, e))?;
        w.write_all(b"\n").map_err(file_err(path))?;
    }
    w.flush().map_err(file_err(path))
}

/// Records of a JSONL file, with 1-based line numbers in errors. Blank lines
/// are skipped.
pub fn read_jsonl<T: for<'de> Deserialize<'de>>(path: &Path) -> IoResult<Vec<(usize, T)>> {
    let file = File::open(path).map_err(file_err(path))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(file_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(&line).map_err(|e| IoError::Line {
            path: path.display().to_string(),
            line: i + 1,
            message: e.to_string(),
        })?;
        out.push((i + 1, rec));
    }
    Ok(out)
}

pub fn load_benchmark(dir: &Path) -> IoResult<Benchmark> {
    let (seed, graphs) = read_graphs(&dir.join(GRAPHS_FILE))?;
    let path = dir.join(TASKS_FILE);
    let mut tasks = Vec::new();
    for (line, rec) in read_jsonl::<TaskRecord>(&path)? {
        let task = rec.into_task(&graphs).map_err(|message| IoError::Line {
            path: path.display().to_string(),
            line,
            message,
        })?;
        tasks.push(task);
    }
    Ok(Benchmark { seed, graphs, tasks, skipped: Vec::new() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RagBaseJson {
    pub gamma: f64,
    pub nodes: Vec<[u64; 2]>,
    pub edges: Vec<[u32; 3]>,
}

impl From<&RagBase> for RagBaseJson {
    fn from(b: &RagBase) -> Self {
        Self {
            gamma: b.gamma_pct,
            nodes: b.node_store.iter().map(|(&v, &d)| [v as u64, d as u64]).collect(),
            edges: b.edge_store.iter().map(|e| [e.u, e.v, e.w]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockJson {
    pub center: u32,
    pub importance: f64,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutJson {
    pub alpha: f64,
    pub beta: f64,
    pub head_capacity: usize,
    pub tail_capacity: usize,
    pub blocks: Vec<BlockJson>,
    pub head: Vec<usize>,
    pub middle: Vec<usize>,
    pub tail: Vec<usize>,
}

impl From<&RegionLayout> for LayoutJson {
    fn from(l: &RegionLayout) -> Self {
        Self {
            alpha: l.alpha_pct,
            beta: l.beta_pct,
            head_capacity: l.head_capacity,
            tail_capacity: l.tail_capacity,
            blocks: l
                .blocks
                .iter()
                .map(|b| BlockJson { center: b.center, importance: b.importance, edges: b.edges.clone() })
                .collect(),
            head: l.head.clone(),
            middle: l.middle.clone(),
            tail: l.tail.clone(),
        }
    }
}

/// One line of a results file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub task_id: String,
    pub kind: String,
    pub method: String,
    pub model: String,
    pub seed: u64,
    pub raw_text: String,
    pub parsed: Option<Value>,
    pub score: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ResultRecord {
    pub fn task_score(&self) -> Result<TaskScore, String> {
        Ok(TaskScore { task_id: self.task_id.clone(), kind: self.kind.parse()?, score: self.score })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanJson {
    pub mean: f64,
    pub count: usize,
}

impl From<Mean> for MeanJson {
    fn from(m: Mean) -> Self {
        Self { mean: m.mean, count: m.count }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub method: String,
    pub model: String,
    pub seed: u64,
    pub overall: MeanJson,
    #[serde(rename = "macro")]
    pub macro_level: Option<MeanJson>,
    #[serde(rename = "micro")]
    pub micro_level: Option<MeanJson>,
    pub per_kind: BTreeMap<String, MeanJson>,
}

impl From<&ScoreReport> for ReportJson {
    fn from(r: &ScoreReport) -> Self {
        Self {
            method: r.metadata.method.clone(),
            model: r.metadata.model.clone(),
            seed: r.metadata.seed,
            overall: r.overall.into(),
            macro_level: r.macro_level.map(Into::into),
            micro_level: r.micro_level.map(Into::into),
            per_kind: r.per_kind.iter().map(|(k, m)| (k.to_string(), (*m).into())).collect(),
        }
    }
}

//! Exact retrieval base over middle-region blocks.
//!
//! The base keeps, for the top `γ%` of middle-region blocks, every edge and
//! every endpoint with its degree in the full graph. Questions are matched
//! against it by node id and the hits become plain-text facts in the prompt.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::answer::AnswerType;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, NodeId};
use crate::reorganizer::RegionLayout;
use crate::text::parse_u32;

pub const FACTS_HEADER: &str = "Relevant facts:";
pub const PREVIOUS_HEADER: &str = "Previous step results:";
pub const QUESTION_PREFIX: &str = "Q: ";

#[derive(Debug, Clone, PartialEq)]
pub struct RagBase {
    pub gamma_pct: f64,
    /// Node → degree in the full graph.
    pub node_store: BTreeMap<NodeId, usize>,
    /// Stored edges in block order.
    pub edge_store: Vec<Edge>,
    /// Indices into `RegionLayout::blocks` that were retained.
    pub source_blocks: Vec<usize>,
}

impl RagBase {
    pub fn is_empty(&self) -> bool {
        self.node_store.is_empty() && self.edge_store.is_empty()
    }
}

/// Retains the first `ceil(γ% · |middle|)` middle blocks (the middle is
/// already in descending importance).
pub fn build_rag_base(layout: &RegionLayout, g: &Graph, gamma_pct: f64) -> Result<RagBase> {
    if !(0.0..=100.0).contains(&gamma_pct) {
        return Err(Error::InvalidPercentage(gamma_pct));
    }
    let keep = libm::ceil(gamma_pct / 100.0 * layout.middle.len() as f64) as usize;
    let source_blocks: Vec<usize> = layout.middle.iter().copied().take(keep).collect();
    let mut node_store = BTreeMap::new();
    let mut edge_store = Vec::new();
    for &b in &source_blocks {
        for &e in &layout.blocks[b].edges {
            let edge = *g.edges().get(e).ok_or(Error::InvalidConfig(format!("layout edge {e} not in graph")))?;
            for v in [edge.u, edge.v] {
                if let alloc::collections::btree_map::Entry::Vacant(e) = node_store.entry(v) {
                    e.insert(g.degree(v)?);
                }
            }
            edge_store.push(edge);
        }
    }
    Ok(RagBase { gamma_pct, node_store, edge_store, source_blocks })
}

/// Removes `'...'` spans. A quote directly after a letter or digit is an
/// apostrophe and does not open a span.
fn strip_quoted(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut chars = text.char_indices().peekable();
    let mut prev_alnum = false;
    while let Some((i, c)) = chars.next() {
        if c == '\'' && !prev_alnum {
            if let Some(close) = text[i + 1..].find('\'') {
                let end = i + 1 + close;
                while chars.peek().is_some_and(|&(j, _)| j <= end) {
                    chars.next();
                }
                out.push(' ');
                prev_alnum = false;
                continue;
            }
        }
        prev_alnum = c.is_alphanumeric();
        out.push(c);
    }
    out
}

fn ints_in(span: &str) -> Option<Vec<NodeId>> {
    let inner = span.trim();
    if inner.is_empty() {
        return Some(Vec::new());
    }
    inner.split(',').map(parse_u32).collect()
}

/// Node ids named in a question: `node N`, `nodes N and M`, bracketed lists
/// and parenthesized tuples, restricted to `known`. Quoted format examples
/// are ignored.
pub fn extract_entities(question: &str, known: &BTreeSet<NodeId>) -> BTreeSet<NodeId> {
    let text = strip_quoted(question);
    let mut found = BTreeSet::new();

    for (open, close) in [('[', ']'), ('(', ')')] {
        let mut rest = text.as_str();
        while let Some(start) = rest.find(open) {
            let after = &rest[start + 1..];
            let Some(end) = after.find(close) else { break };
            if let Some(ids) = ints_in(&after[..end]) {
                found.extend(ids);
            }
            rest = &after[end + 1..];
        }
    }

    let words: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == ',' || c == '?' || c == '.' || c == ';')
        .filter(|w| !w.is_empty())
        .collect();
    let mut i = 0;
    while i < words.len() {
        if words[i].eq_ignore_ascii_case("node") || words[i].eq_ignore_ascii_case("nodes") {
            let mut j = i + 1;
            while let Some(v) = words.get(j).and_then(|w| parse_u32(w)) {
                found.insert(v);
                j += 1;
                if words.get(j).is_some_and(|w| w.eq_ignore_ascii_case("and")) {
                    j += 1;
                }
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    found.retain(|v| known.contains(v));
    found
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Retrieval {
    pub query_nodes: BTreeSet<NodeId>,
    pub node_hits: BTreeMap<NodeId, usize>,
    /// Sorted by `(u, v, w)`; parallel edges are kept.
    pub edge_hits: Vec<Edge>,
}

impl Retrieval {
    pub fn is_empty(&self) -> bool {
        self.node_hits.is_empty() && self.edge_hits.is_empty()
    }

    /// `Node v has degree d.` lines, then `Edge (u, v) has weight w.` lines.
    pub fn fact_lines(&self) -> Vec<String> {
        let nodes = self.node_hits.iter().map(|(v, d)| format!("Node {v} has degree {d}."));
        let edges = self.edge_hits.iter().map(|e| format!("Edge ({}, {}) has weight {}.", e.u, e.v, e.w));
        nodes.chain(edges).collect()
    }
}

pub fn retrieve(base: &RagBase, query_nodes: &BTreeSet<NodeId>) -> Retrieval {
    let node_hits = query_nodes.iter().filter_map(|v| base.node_store.get(v).map(|&d| (*v, d))).collect();
    let mut edge_hits: Vec<Edge> =
        base.edge_store.iter().filter(|e| query_nodes.contains(&e.u) || query_nodes.contains(&e.v)).copied().collect();
    edge_hits.sort_by_key(|e| (e.u, e.v, e.w));
    Retrieval { query_nodes: query_nodes.clone(), node_hits, edge_hits }
}

/// Parses one fact line back into a node degree or an edge.
pub fn parse_fact(line: &str) -> Option<Fact> {
    let line = line.trim();
    if let Some(caps) = crate::text::match_template("Node {} has degree {}.", line) {
        return Some(Fact::Degree(parse_u32(caps[0])?, parse_u32(caps[1])? as usize));
    }
    let caps = crate::text::match_template("Edge ({}, {}) has weight {}.", line)?;
    Some(Fact::Edge(Edge::new(parse_u32(caps[0])?, parse_u32(caps[1])?, parse_u32(caps[2])?)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fact {
    Degree(NodeId, usize),
    Edge(Edge),
}

/// Description, optional facts and prior results, then the question and its
/// answer-format instruction. Sections are separated by blank lines.
pub fn render_prompt(
    description: &str,
    facts: &[String],
    previous: &[String],
    question: &str,
    answer_type: AnswerType,
) -> String {
    let mut out = String::with_capacity(description.len() + question.len() + 64 * (facts.len() + 2));
    out.push_str(description);
    for (header, lines) in [(FACTS_HEADER, facts), (PREVIOUS_HEADER, previous)] {
        if lines.is_empty() {
            continue;
        }
        out.push_str("\n\n");
        out.push_str(header);
        for l in lines {
            out.push('\n');
            out.push_str(l);
        }
    }
    out.push_str("\n\n");
    out.push_str(QUESTION_PREFIX);
    out.push_str(question);
    out.push('\n');
    out.push_str(answer_type.format_instruction());
    out
}

pub fn assemble_prompt(description: &str, retrieval: &Retrieval, question: &str, answer_type: AnswerType) -> String {
    render_prompt(description, &retrieval.fact_lines(), &[], question, answer_type)
}

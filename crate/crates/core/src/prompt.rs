//! Prompting baselines: chain-of-thought, few-shot and build-a-graph.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::description::render_raw;
use crate::graph::Graph;
use crate::oracle::{MacroQuery, MicroQuery, Query};
use crate::ragbase::render_prompt;

pub const COT_INSTRUCTION: &str = "Let's think step by step.";
pub const BAG_INSTRUCTION: &str = "Let's construct a graph with the nodes and edges first.";

/// Edges of the pinned five-node exemplar graph.
pub const EXEMPLAR_EDGES: [(u32, u32, u32); 5] = [(0, 1, 3), (0, 2, 1), (1, 2, 4), (2, 3, 2), (3, 4, 5)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Wrapper {
    #[default]
    None,
    Cot,
    FewShot(usize),
    Bag,
}

impl fmt::Display for Wrapper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Wrapper::None => f.write_str("none"),
            Wrapper::Cot => f.write_str("cot"),
            Wrapper::FewShot(k) => write!(f, "few_shot:{k}"),
            Wrapper::Bag => f.write_str("bag"),
        }
    }
}

impl FromStr for Wrapper {
    type Err = String;

    /// `none`, `cot`, `bag`, `few_shot` (two exemplars) or `few_shot:K`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Wrapper::None),
            "cot" => Ok(Wrapper::Cot),
            "bag" => Ok(Wrapper::Bag),
            "few_shot" => Ok(Wrapper::FewShot(2)),
            _ => s
                .strip_prefix("few_shot:")
                .and_then(|k| k.parse().ok())
                .map(Wrapper::FewShot)
                .ok_or_else(|| format!("unknown prompt wrapper '{s}'")),
        }
    }
}

fn exemplar_graph() -> Graph {
    Graph::from_edges(false, &EXEMPLAR_EDGES).expect("exemplar graph is valid")
}

fn exemplar_queries() -> [Query; 5] {
    [
        Query::Micro(MicroQuery::Degree(2)),
        Query::Micro(MicroQuery::DirectConnection(0, 3)),
        Query::Micro(MicroQuery::Neighbors(2)),
        Query::Micro(MicroQuery::EdgeWeight(3, 4)),
        Query::Macro(MacroQuery::HasCycle),
    ]
}

/// The solved examples, each a full description, question and answer.
pub fn exemplars() -> Vec<String> {
    let g = exemplar_graph();
    let description = render_raw(&g).text();
    exemplar_queries()
        .iter()
        .map(|q| {
            let answer = q.answer(&g).expect("exemplar queries are answerable");
            let prompt = render_prompt(&description, &[], &[], &q.question(), q.answer_type());
            format!("{prompt}\nA: {answer}")
        })
        .collect()
}

pub fn wrap_prompt(base: &str, wrapper: Wrapper) -> String {
    match wrapper {
        Wrapper::None => String::from(base),
        Wrapper::Cot => format!("{base}\n{COT_INSTRUCTION}"),
        Wrapper::Bag => format!("{BAG_INSTRUCTION}\n{base}"),
        Wrapper::FewShot(k) => {
            let mut out = String::new();
            for ex in exemplars().into_iter().take(k) {
                out.push_str(&ex);
                out.push_str("\n\n");
            }
            out.push_str(base);
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn wrappers() {
        let base =
            "This is an undirected graph with the following edges:\nFrom node 0 to node 1 with weight 1;\n\nQ: x";
        assert_eq!(wrap_prompt(base, Wrapper::None), base);
        let cot = wrap_prompt(base, Wrapper::Cot);
        assert_eq!(cot.lines().count(), base.lines().count() + 1);
        assert_eq!(cot.lines().last(), Some(COT_INSTRUCTION));
        assert!(wrap_prompt(base, Wrapper::Bag).starts_with(BAG_INSTRUCTION));
        let fs = wrap_prompt(base, Wrapper::FewShot(2));
        let ex = exemplars();
        assert!(fs.contains(&ex[0]) && fs.contains(&ex[1]) && !fs.contains(&ex[2]));
        assert!(fs.ends_with(base));
    }

    #[test]
    fn exemplar_answers() {
        let ex = exemplars();
        assert!(ex[0].ends_with("Q: What is the degree of node 2?\nAnswer directly with a single number.\nA: 3"));
        assert!(ex[2].ends_with("A: [0, 1, 3]"));
        assert!(ex[4].ends_with("A: Yes"));
    }

    #[test]
    fn parse_names() {
        for w in [Wrapper::None, Wrapper::Cot, Wrapper::Bag, Wrapper::FewShot(3)] {
            assert_eq!(w.to_string().parse::<Wrapper>(), Ok(w));
        }
        assert_eq!("few_shot".parse::<Wrapper>(), Ok(Wrapper::FewShot(2)));
    }
}

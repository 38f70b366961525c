//! Typed ground-truth / predicted answers.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::graph::NodeId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnswerType {
    Boolean,
    Number,
    NodeSet,
    /// Unordered node pairs, stored smaller id first.
    PairSet,
    /// Ordered pairs whose first element is the anchor endpoint; `(8, 11)` and
    /// `(11, 8)` are distinct members.
    AnchoredPairSet,
    TripleSet,
    /// `(node, degree)` entries.
    ScoredPairList,
}

impl AnswerType {
    pub const ALL: [AnswerType; 7] = [
        AnswerType::Boolean,
        AnswerType::Number,
        AnswerType::NodeSet,
        AnswerType::PairSet,
        AnswerType::AnchoredPairSet,
        AnswerType::TripleSet,
        AnswerType::ScoredPairList,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AnswerType::Boolean => "boolean",
            AnswerType::Number => "number",
            AnswerType::NodeSet => "node_set",
            AnswerType::PairSet => "pair_set",
            AnswerType::AnchoredPairSet => "anchored_pair_set",
            AnswerType::TripleSet => "triple_set",
            AnswerType::ScoredPairList => "scored_pair_list",
        }
    }

    /// Answer-format instruction appended to prompts.
    pub fn format_instruction(self) -> &'static str {
        match self {
            AnswerType::Boolean => "Answer directly with 'Yes' or 'No'.",
            AnswerType::Number => "Answer directly with a single number.",
            AnswerType::NodeSet => "Answer in the format of '[1, 2, ...]'.",
            AnswerType::PairSet | AnswerType::AnchoredPairSet => "Answer in the format of '[(1, 2), (3, 4), ...]'.",
            AnswerType::TripleSet => "Answer in the format of '[(1, 2, 3), (4, 5, 6), ...]'.",
            AnswerType::ScoredPairList => "Answer in the format of '[(node, degree), ...]'.",
        }
    }
}

impl fmt::Display for AnswerType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AnswerType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|t| t.as_str() == s).ok_or_else(|| format!("unknown answer type '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TypedAnswer {
    Boolean(bool),
    Number(f64),
    NodeSet(BTreeSet<NodeId>),
    PairSet(BTreeSet<(NodeId, NodeId)>),
    AnchoredPairSet(BTreeSet<(NodeId, NodeId)>),
    TripleSet(BTreeSet<(NodeId, NodeId, NodeId)>),
    ScoredPairList(Vec<(NodeId, u64)>),
}

impl TypedAnswer {
    pub fn answer_type(&self) -> AnswerType {
        match self {
            TypedAnswer::Boolean(_) => AnswerType::Boolean,
            TypedAnswer::Number(_) => AnswerType::Number,
            TypedAnswer::NodeSet(_) => AnswerType::NodeSet,
            TypedAnswer::PairSet(_) => AnswerType::PairSet,
            TypedAnswer::AnchoredPairSet(_) => AnswerType::AnchoredPairSet,
            TypedAnswer::TripleSet(_) => AnswerType::TripleSet,
            TypedAnswer::ScoredPairList(_) => AnswerType::ScoredPairList,
        }
    }

    pub fn nodes<I: IntoIterator<Item = NodeId>>(it: I) -> Self {
        TypedAnswer::NodeSet(it.into_iter().collect())
    }

    /// Canonicalizes each pair to `(min, max)`.
    pub fn pairs<I: IntoIterator<Item = (NodeId, NodeId)>>(it: I) -> Self {
        TypedAnswer::PairSet(it.into_iter().map(canonical_pair).collect())
    }

    pub fn anchored_pairs<I: IntoIterator<Item = (NodeId, NodeId)>>(it: I) -> Self {
        TypedAnswer::AnchoredPairSet(it.into_iter().collect())
    }

    /// Canonicalizes each triple to ascending order.
    pub fn triples<I: IntoIterator<Item = (NodeId, NodeId, NodeId)>>(it: I) -> Self {
        TypedAnswer::TripleSet(it.into_iter().map(canonical_triple).collect())
    }

    pub fn number<N: Into<f64>>(n: N) -> Self {
        TypedAnswer::Number(n.into())
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            TypedAnswer::Boolean(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_number(&self) -> Option<f64> {
        match self {
            TypedAnswer::Number(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_node_set(&self) -> Option<&BTreeSet<NodeId>> {
        match self {
            TypedAnswer::NodeSet(s) => Some(s),
            _ => None,
        }
    }
}

pub fn canonical_pair((a, b): (NodeId, NodeId)) -> (NodeId, NodeId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn canonical_triple((a, b, c): (NodeId, NodeId, NodeId)) -> (NodeId, NodeId, NodeId) {
    let mut t = [a, b, c];
    t.sort_unstable();
    (t[0], t[1], t[2])
}

fn write_number(f: &mut fmt::Formatter<'_>, n: f64) -> fmt::Result {
    if n.is_finite() && n == libm::trunc(n) && n.abs() < 1e15 {
        write!(f, "{}", n as i64)
    } else {
        write!(f, "{n}")
    }
}

/// Renders in the same surface form as the reference answers:
/// `Yes`, `14`, `[7, 8]`, `[(0, 6), (1, 6)]`.
impl fmt::Display for TypedAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list<T, F>(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = T>, mut item: F) -> fmt::Result
        where
            F: FnMut(&mut fmt::Formatter<'_>, T) -> fmt::Result,
        {
            f.write_str("[")?;
            for (i, x) in items.enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                item(f, x)?;
            }
            f.write_str("]")
        }
        match self {
            TypedAnswer::Boolean(true) => f.write_str("Yes"),
            TypedAnswer::Boolean(false) => f.write_str("No"),
            TypedAnswer::Number(n) => write_number(f, *n),
            TypedAnswer::NodeSet(s) => list(f, s.iter(), |f, n| write!(f, "{n}")),
            TypedAnswer::PairSet(s) | TypedAnswer::AnchoredPairSet(s) => {
                list(f, s.iter(), |f, (a, b)| write!(f, "({a}, {b})"))
            }
            TypedAnswer::TripleSet(s) => list(f, s.iter(), |f, (a, b, c)| write!(f, "({a}, {b}, {c})")),
            TypedAnswer::ScoredPairList(s) => list(f, s.iter(), |f, (a, b)| write!(f, "({a}, {b})")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn display_forms() {
        assert_eq!(TypedAnswer::Boolean(true).to_string(), "Yes");
        assert_eq!(TypedAnswer::number(14u32).to_string(), "14");
        assert_eq!(TypedAnswer::number(0.5).to_string(), "0.5");
        assert_eq!(TypedAnswer::nodes([13, 7, 8]).to_string(), "[7, 8, 13]");
        assert_eq!(TypedAnswer::pairs([(4, 3), (1, 2)]).to_string(), "[(1, 2), (3, 4)]");
        assert_eq!(TypedAnswer::anchored_pairs([(11, 8), (8, 11)]).to_string(), "[(8, 11), (11, 8)]");
        assert_eq!(TypedAnswer::triples([(3, 1, 2)]).to_string(), "[(1, 2, 3)]");
        assert_eq!(TypedAnswer::ScoredPairList(vec![(0, 6), (1, 6)]).to_string(), "[(0, 6), (1, 6)]");
        assert_eq!(TypedAnswer::nodes([]).to_string(), "[]");
    }

    #[test]
    fn answer_type_names_round_trip() {
        for t in AnswerType::ALL {
            assert_eq!(t.as_str().parse::<AnswerType>().unwrap(), t);
        }
    }
}

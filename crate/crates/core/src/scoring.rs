//! Answer parsing, per-task metrics and aggregation.
//!
//! * boolean: exact match
//! * number: `1 - |pred - truth| / max(pred, truth)`, clamped to `[0, 1]`
//! * set-valued: Jaccard similarity
//!
//! A response that cannot be parsed scores 0.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::answer::{canonical_pair, canonical_triple, AnswerType, TypedAnswer};
use crate::error::{Error, Result};
use crate::task::{Level, TaskKind};
use crate::text::{parse_id_list, parse_tuple_list};

/// `None` is a parse failure.
pub fn parse_answer(text: &str, answer_type: AnswerType) -> Option<TypedAnswer> {
    match answer_type {
        AnswerType::Boolean => last_yes_no(text).map(TypedAnswer::Boolean),
        AnswerType::Number => last_number(text).map(TypedAnswer::Number),
        AnswerType::NodeSet => {
            let list = last_bracketed(text)?;
            Some(TypedAnswer::nodes(parse_id_list(list)?))
        }
        AnswerType::PairSet | AnswerType::AnchoredPairSet | AnswerType::ScoredPairList => {
            let tuples = parse_tuple_list(last_bracketed(text)?, 2)?;
            let mut pairs = Vec::with_capacity(tuples.len());
            for t in tuples {
                pairs.push((u32::try_from(t[0]).ok()?, t[1]));
            }
            Some(match answer_type {
                AnswerType::PairSet => TypedAnswer::PairSet(
                    pairs
                        .into_iter()
                        .map(|(a, b)| Some(canonical_pair((a, u32::try_from(b).ok()?))))
                        .collect::<Option<_>>()?,
                ),
                AnswerType::AnchoredPairSet => TypedAnswer::AnchoredPairSet(
                    pairs.into_iter().map(|(a, b)| Some((a, u32::try_from(b).ok()?))).collect::<Option<_>>()?,
                ),
                _ => TypedAnswer::ScoredPairList(pairs),
            })
        }
        AnswerType::TripleSet => {
            let tuples = parse_tuple_list(last_bracketed(text)?, 3)?;
            let set = tuples
                .into_iter()
                .map(|t| {
                    Some(canonical_triple((
                        u32::try_from(t[0]).ok()?,
                        u32::try_from(t[1]).ok()?,
                        u32::try_from(t[2]).ok()?,
                    )))
                })
                .collect::<Option<BTreeSet<_>>>()?;
            Some(TypedAnswer::TripleSet(set))
        }
    }
}

fn last_yes_no(text: &str) -> Option<bool> {
    text.split(|c: char| !c.is_ascii_alphanumeric()).rev().find_map(|tok| {
        if tok.eq_ignore_ascii_case("yes") {
            Some(true)
        } else if tok.eq_ignore_ascii_case("no") {
            Some(false)
        } else {
            None
        }
    })
}

fn last_number(text: &str) -> Option<f64> {
    let bytes = text.as_bytes();
    let mut end = bytes.len();
    while end > 0 && !bytes[end - 1].is_ascii_digit() {
        end -= 1;
    }
    if end == 0 {
        return None;
    }
    let mut start = end;
    while start > 0 && bytes[start - 1].is_ascii_digit() {
        start -= 1;
    }
    // fractional part: digits '.' digits
    if start >= 2 && bytes[start - 1] == b'.' && bytes[start - 2].is_ascii_digit() {
        start -= 1;
        while start > 0 && bytes[start - 1].is_ascii_digit() {
            start -= 1;
        }
    }
    text[start..end].parse().ok()
}

fn last_bracketed(text: &str) -> Option<&str> {
    let close = text.rfind(']')?;
    let open = text[..close].rfind('[')?;
    Some(&text[open..=close])
}

fn jaccard<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> f64 {
    let union = a.union(b).count();
    if union == 0 {
        return 1.0;
    }
    a.intersection(b).count() as f64 / union as f64
}

pub fn numeric_score(pred: f64, truth: f64) -> f64 {
    if pred == truth {
        return 1.0;
    }
    let denom = pred.max(truth);
    if !(denom > 0.0) {
        return 0.0;
    }
    (1.0 - (pred - truth).abs() / denom).clamp(0.0, 1.0)
}

/// Score in `[0, 1]`; `pred = None` (parse failure) scores 0.
pub fn score(pred: Option<&TypedAnswer>, truth: &TypedAnswer) -> Result<f64> {
    let Some(pred) = pred else {
        return Ok(0.0);
    };
    Ok(match (pred, truth) {
        (TypedAnswer::Boolean(a), TypedAnswer::Boolean(b)) => f64::from(u8::from(a == b)),
        (TypedAnswer::Number(a), TypedAnswer::Number(b)) => numeric_score(*a, *b),
        (TypedAnswer::NodeSet(a), TypedAnswer::NodeSet(b)) => jaccard(a, b),
        (TypedAnswer::PairSet(a), TypedAnswer::PairSet(b))
        | (TypedAnswer::AnchoredPairSet(a), TypedAnswer::AnchoredPairSet(b)) => jaccard(a, b),
        (TypedAnswer::TripleSet(a), TypedAnswer::TripleSet(b)) => jaccard(a, b),
        (TypedAnswer::ScoredPairList(a), TypedAnswer::ScoredPairList(b)) => {
            jaccard(&a.iter().collect(), &b.iter().collect())
        }
        _ => return Err(Error::IncomparableAnswers),
    })
}

/// One scored task, as fed to [`aggregate`].
#[derive(Debug, Clone, PartialEq)]
pub struct TaskScore {
    pub task_id: String,
    pub kind: TaskKind,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunMetadata {
    pub method: String,
    pub model: String,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mean {
    pub mean: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreReport {
    pub metadata: RunMetadata,
    pub per_task: Vec<TaskScore>,
    pub per_kind: BTreeMap<TaskKind, Mean>,
    pub macro_level: Option<Mean>,
    pub micro_level: Option<Mean>,
    pub overall: Mean,
}

fn mean_of(scores: impl Iterator<Item = f64>) -> Option<Mean> {
    let (sum, count) = scores.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    (count > 0).then(|| Mean { mean: sum / count as f64, count })
}

pub fn aggregate(scores: Vec<TaskScore>, metadata: RunMetadata) -> Result<ScoreReport> {
    if scores.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut by_kind: BTreeMap<TaskKind, Vec<f64>> = BTreeMap::new();
    for s in &scores {
        by_kind.entry(s.kind).or_default().push(s.score);
    }
    let per_kind = by_kind.into_iter().filter_map(|(k, v)| mean_of(v.into_iter()).map(|m| (k, m))).collect();
    let macro_level = mean_of(scores.iter().filter(|s| s.kind.level() == Level::Macro).map(|s| s.score));
    let micro_level = mean_of(scores.iter().filter(|s| s.kind.level() != Level::Macro).map(|s| s.score));
    let overall = mean_of(scores.iter().map(|s| s.score)).ok_or(Error::EmptyInput)?;
    Ok(ScoreReport { metadata, per_task: scores, per_kind, macro_level, micro_level, overall })
}

impl ScoreReport {
    /// Overall / Macro / Micro rows followed by one row per task kind.
    pub fn to_table(&self) -> String {
        comparison_table(core::slice::from_ref(self))
    }
}

fn fmt_mean(m: Option<Mean>) -> String {
    m.map_or_else(|| String::from("-"), |m| format!("{:.4}", m.mean))
}

/// Side-by-side table, one column per report.
pub fn comparison_table(reports: &[ScoreReport]) -> String {
    let mut kinds: BTreeSet<TaskKind> = BTreeSet::new();
    for r in reports {
        kinds.extend(r.per_kind.keys().copied());
    }
    let mut rows: Vec<(String, Vec<String>)> = Vec::new();
    rows.push((String::from("Overall"), reports.iter().map(|r| fmt_mean(Some(r.overall))).collect()));
    rows.push((String::from("Macro"), reports.iter().map(|r| fmt_mean(r.macro_level)).collect()));
    rows.push((String::from("Micro"), reports.iter().map(|r| fmt_mean(r.micro_level)).collect()));
    for k in kinds {
        rows.push((String::from(k.as_str()), reports.iter().map(|r| fmt_mean(r.per_kind.get(&k).copied())).collect()));
    }
    let headers: Vec<&str> = reports.iter().map(|r| r.metadata.method.as_str()).collect();
    let label_w = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max("Tasks".len());
    let col_w: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| rows.iter().map(|r| r.1[i].len()).max().unwrap_or(0).max(h.len()))
        .collect();

    let mut out = String::new();
    let _ = write!(out, "{:<label_w$}", "Tasks");
    for (h, w) in headers.iter().zip(&col_w) {
        let _ = write!(out, "  {h:>w$}");
    }
    for (label, cells) in &rows {
        let _ = write!(out, "\n{label:<label_w$}");
        for (c, w) in cells.iter().zip(&col_w) {
            let _ = write!(out, "  {c:>w$}");
        }
    }
    out.push('\n');
    out
}

//! Evaluation runner: every method on every task, with bounded concurrency.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;

use anyhow::{Context, Result};
use graphinsight_core::generate::Benchmark;
use graphinsight_core::method::{prepare, run_task, MethodSpec, PreparedGraph};
use graphinsight_core::model::LanguageModel;
use graphinsight_core::scoring::{aggregate, RunMetadata, ScoreReport};

use crate::io::{answer_to_json, ResultRecord};

#[derive(Debug, Clone)]
pub struct MethodRun {
    pub spec: MethodSpec,
    pub records: Vec<ResultRecord>,
    pub report: ScoreReport,
}

/// Results come back in (method, task) order regardless of `parallelism`.
/// A graph a method cannot describe (an adjacency matrix of a multigraph,
/// say) fails each of its tasks with score 0.
pub fn run_evaluation(
    bench: &Benchmark,
    methods: &[MethodSpec],
    model: &dyn LanguageModel,
    parallelism: usize,
    seed: u64,
) -> Result<Vec<MethodRun>> {
    for m in methods {
        m.validate().with_context(|| format!("method '{}'", m.name))?;
    }
    let prepared: Vec<Vec<Result<PreparedGraph, String>>> = methods
        .iter()
        .map(|m| bench.graphs.iter().map(|g| prepare(m, g).map_err(|e| e.to_string())).collect())
        .collect();

    let model_name = model.name();
    let jobs: Vec<(usize, usize)> =
        (0..methods.len()).flat_map(|m| (0..bench.tasks.len()).map(move |t| (m, t))).collect();
    let run_job = |&(m, t): &(usize, usize)| -> ResultRecord {
        let spec = &methods[m];
        let task = &bench.tasks[t];
        let base = ResultRecord {
            task_id: task.id.clone(),
            kind: task.kind().to_string(),
            method: spec.name.clone(),
            model: model_name.clone(),
            seed,
            raw_text: String::new(),
            parsed: None,
            score: 0.0,
            error: None,
        };
        let prep = match prepared[m].get(task.graph_id) {
            Some(Ok(p)) => p,
            Some(Err(e)) => return ResultRecord { error: Some(e.clone()), ..base },
            None => return ResultRecord { error: Some(format!("graph {} missing", task.graph_id)), ..base },
        };
        match run_task(spec, prep, task, model) {
            Ok(o) => ResultRecord {
                raw_text: o.raw_text,
                parsed: o.parsed.as_ref().map(answer_to_json),
                score: o.score,
                error: o.error,
                ..base
            },
            Err(e) => ResultRecord { error: Some(e.to_string()), ..base },
        }
    };

    let workers = parallelism.clamp(1, jobs.len().max(1));
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<ResultRecord>> = vec![None; jobs.len()];
    thread::scope(|s| {
        let (tx, rx) = mpsc::channel::<(usize, ResultRecord)>();
        for _ in 0..workers {
            let tx = tx.clone();
            let (jobs, next, run_job) = (&jobs, &next, &run_job);
            s.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else { break };
                if tx.send((i, run_job(job))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        for (i, rec) in rx {
            slots[i] = Some(rec);
        }
    });

    let mut records = slots.into_iter().map(|r| r.expect("every job reports"));
    let mut runs = Vec::with_capacity(methods.len());
    for spec in methods {
        let recs: Vec<ResultRecord> = records.by_ref().take(bench.tasks.len()).collect();
        let scores = recs.iter().map(|r| r.task_score().map_err(anyhow::Error::msg)).collect::<Result<Vec<_>>>()?;
        let meta = RunMetadata { method: spec.name.clone(), model: model_name.clone(), seed };
        let report = aggregate(scores, meta).context("no tasks to score")?;
        runs.push(MethodRun { spec: spec.clone(), records: recs, report });
    }
    Ok(runs)
}

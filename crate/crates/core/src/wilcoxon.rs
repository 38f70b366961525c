//! Wilcoxon signed-rank test for paired samples.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest sample size for which the null distribution is enumerated exactly.
pub const EXACT_LIMIT: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WilcoxonResult {
    /// `min(W+, W-)`.
    pub statistic: f64,
    pub w_plus: f64,
    pub w_minus: f64,
    /// Nonzero differences used.
    pub n: usize,
    pub one_sided_p: f64,
    pub two_sided_p: f64,
    pub exact: bool,
}

/// Midranks (1-based) of `values`, returned doubled so ties stay integral.
fn doubled_midranks(values: &[f64]) -> Vec<u64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0u64; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        // positions i..=j share rank ((i+1) + (j+1)) / 2
        let doubled = (i + j + 2) as u64;
        for &k in &idx[i..=j] {
            ranks[k] = doubled;
        }
        i = j + 1;
    }
    ranks
}

/// Differences are `b - a`. Zero differences are dropped.
pub fn wilcoxon_signed_rank(pairs: &[(f64, f64)]) -> Result<WilcoxonResult> {
    let diffs: Vec<f64> = pairs.iter().map(|&(a, b)| b - a).filter(|d| *d != 0.0).collect();
    if diffs.is_empty() {
        return Err(Error::DegenerateSample);
    }
    let n = diffs.len();
    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let ranks = doubled_midranks(&abs);
    let plus2: u64 = diffs.iter().zip(&ranks).filter(|(d, _)| **d > 0.0).map(|(_, r)| *r).sum();
    let total2: u64 = ranks.iter().sum();
    let minus2 = total2 - plus2;
    let w2 = plus2.min(minus2);

    let (one, exact) = if n <= EXACT_LIMIT {
        (exact_lower_tail(&ranks, w2), true)
    } else {
        (normal_lower_tail(&abs, n, w2 as f64 / 2.0)?, false)
    };
    Ok(WilcoxonResult {
        statistic: w2 as f64 / 2.0,
        w_plus: plus2 as f64 / 2.0,
        w_minus: minus2 as f64 / 2.0,
        n,
        one_sided_p: one,
        two_sided_p: (2.0 * one).min(1.0),
        exact,
    })
}

/// `P(T <= w2/2)` where `T` is the positive-rank sum under random signs.
fn exact_lower_tail(doubled_ranks: &[u64], w2: u64) -> f64 {
    let max: usize = doubled_ranks.iter().sum::<u64>() as usize;
    let mut counts = vec![0f64; max + 1];
    counts[0] = 1.0;
    let mut reach = 0usize;
    for &r in doubled_ranks {
        let r = r as usize;
        for s in (0..=reach).rev() {
            if counts[s] != 0.0 {
                counts[s + r] += counts[s];
            }
        }
        reach += r;
    }
    let hits: f64 = counts[..=(w2 as usize).min(max)].iter().sum();
    hits / libm::pow(2.0, doubled_ranks.len() as f64)
}

fn normal_lower_tail(abs: &[f64], n: usize, w: f64) -> Result<f64> {
    let nf = n as f64;
    let mean = nf * (nf + 1.0) / 4.0;
    let mut var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0;
    let mut sorted = abs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        var -= (t * t * t - t) / 48.0;
        i = j + 1;
    }
    if !(var > 0.0) {
        return Err(Error::DegenerateSample);
    }
    let z = (w - mean + 0.5) / libm::sqrt(var);
    Ok((0.5 * libm::erfc(-z / core::f64::consts::SQRT_2)).min(1.0))
}

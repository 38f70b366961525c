//! Three-plateau positional recall curve.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Recall probability as a function of relative position `p ∈ [0, 1)` in a
/// description: `head` below `head_fraction`, `tail` at or above
/// `1 - tail_fraction`, `middle` elsewhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionalBiasModel {
    pub head: f64,
    pub middle: f64,
    pub tail: f64,
    pub head_fraction: f64,
    pub tail_fraction: f64,
}

impl PositionalBiasModel {
    pub fn new(head: f64, middle: f64, tail: f64, head_fraction: f64, tail_fraction: f64) -> Result<Self> {
        let m = Self { head, middle, tail, head_fraction, tail_fraction };
        m.validate()?;
        Ok(m)
    }

    /// Flat curve; `uniform(1.0)` recalls everything.
    pub fn uniform(p: f64) -> Self {
        Self { head: p, middle: p, tail: p, head_fraction: 0.0, tail_fraction: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("head", self.head),
            ("middle", self.middle),
            ("tail", self.tail),
            ("head_fraction", self.head_fraction),
            ("tail_fraction", self.tail_fraction),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidConfig(format!("{name} must be in [0, 1], got {v}")));
            }
        }
        if self.head < self.middle || self.tail < self.middle {
            return Err(Error::InvalidConfig(format!(
                "curve must be U-shaped: head {} and tail {} must be >= middle {}",
                self.head, self.tail, self.middle
            )));
        }
        if self.head_fraction + self.tail_fraction > 1.0 {
            return Err(Error::InvalidConfig(format!(
                "head_fraction + tail_fraction exceeds 1 ({} + {})",
                self.head_fraction, self.tail_fraction
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self, p: f64) -> f64 {
        if p < self.head_fraction {
            self.head
        } else if p >= 1.0 - self.tail_fraction {
            self.tail
        } else {
            self.middle
        }
    }

    /// Recall probability of item `i` out of `n`, evaluated at its midpoint.
    pub fn at_index(&self, i: usize, n: usize) -> f64 {
        self.evaluate((i as f64 + 0.5) / n as f64)
    }

    /// Curve sampled at `n` midpoints and normalized to sum 1 (all zeros if
    /// the curve has no mass).
    pub fn discretize(&self, n: usize) -> Vec<f64> {
        let raw: Vec<f64> = (0..n).map(|i| self.at_index(i, n)).collect();
        let total: f64 = raw.iter().sum();
        if total > 0.0 {
            raw.into_iter().map(|x| x / total).collect()
        } else {
            raw
        }
    }

    /// Mean recall over `n` positions.
    pub fn mean_recall(&self, n: usize) -> f64 {
        if n == 0 {
            return 0.0;
        }
        (0..n).map(|i| self.at_index(i, n)).sum::<f64>() / n as f64
    }
}

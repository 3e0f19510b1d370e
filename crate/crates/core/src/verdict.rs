//! Three-valued verdicts for infinitary conditions evaluated at finite
//! truncation.
//!
//! Sup-, limit- and series-type conditions are sampled along an increasing
//! ladder of cutoffs. The evidence trend over the last `stabilization_window`
//! ladder steps decides between `Holds`, `Fails` and `Inconclusive`; the
//! trace that produced the call is kept in the verdict.

use serde::{Deserialize, Serialize};

/// Outcome of a truncated check of an infinitary condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

impl Status {
    /// Conjunction with `Fails` dominant and `Inconclusive` propagation.
    pub fn and(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Fails, _) | (_, Fails) => Fails,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Holds,
        }
    }

    pub fn all<I: IntoIterator<Item = Status>>(items: I) -> Status {
        items.into_iter().fold(Status::Holds, Status::and)
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Status::Holds => "Holds",
            Status::Fails => "Fails",
            Status::Inconclusive => "Inconclusive",
        };
        f.write_str(s)
    }
}

/// Ladder of cutoffs plus stabilization parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    /// Strictly increasing truncation cutoffs.
    pub ladder: Vec<u64>,
    /// Threshold below which evidence counts as stabilized.
    pub tol: f64,
    /// Number of consecutive ladder steps the trend is judged on.
    pub stabilization_window: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            ladder: vec![16, 32, 64, 128, 256, 512, 1024],
            tol: 1e-8,
            stabilization_window: 3,
        }
    }
}

impl TruncationPolicy {
    pub fn new(ladder: Vec<u64>, tol: f64, stabilization_window: usize) -> crate::error::Result<Self> {
        if ladder.is_empty() || ladder.windows(2).any(|w| w[0] >= w[1]) {
            return Err(crate::Error::Domain(
                "ladder must be non-empty and strictly increasing".into(),
            ));
        }
        if !(tol > 0.0) {
            return Err(crate::Error::Domain("tol must be positive".into()));
        }
        Ok(TruncationPolicy { ladder, tol, stabilization_window })
    }

    pub fn max_cutoff(&self) -> u64 {
        *self.ladder.last().expect("ladder is non-empty")
    }

    /// Same policy with the ladder continued by doubling up to at least `max`.
    pub fn extended_to(&self, max: u64) -> Self {
        let mut ladder = self.ladder.clone();
        let mut top = self.max_cutoff();
        while top < max {
            top = (top * 2).min(max);
            ladder.push(top);
        }
        TruncationPolicy { ladder, ..self.clone() }
    }
}

/// One sampled point of the evidence trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderPoint {
    pub cutoff: u64,
    pub value: f64,
}

/// Concrete index/value pair backing a `Fails` verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub index: u64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Evidence {
    /// Value of the tracked quantity at each ladder cutoff.
    pub ladder: Vec<LadderPoint>,
    pub witness: Option<Witness>,
    /// Estimated limit (limit-type checks) or final value (sup-type checks).
    pub estimate: Option<f64>,
    /// What the ladder values measure.
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub evidence: Evidence,
    pub tol: f64,
    pub stabilization_window: usize,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn fails(&self) -> bool {
        self.status == Status::Fails
    }
}

/// Trend of a non-negative evidence series that should either die out
/// (convergence) or persist/grow (divergence).
#[derive(Debug, Clone, Copy, PartialEq)]
enum Trend {
    Stable,
    Decaying,
    Persistent,
    Mixed,
}

/// Geometric decay below this per-step ratio counts as convergence evidence.
const DECAY_RATIO: f64 = 0.90;
/// Per-step ratio at or above this counts as non-decaying evidence.
const PERSIST_RATIO: f64 = 0.98;

fn classify(values: &[f64], tol: f64, window: usize) -> Trend {
    let w = window.max(2).min(values.len());
    if w < 2 {
        return Trend::Mixed;
    }
    let tail = &values[values.len() - w..];
    if tail.iter().all(|&v| v.abs() < tol) {
        return Trend::Stable;
    }
    let first = tail[0];
    let last = tail[w - 1];
    let gm = if first.abs() > f64::MIN_POSITIVE {
        (last / first).abs().powf(1.0 / (w as f64 - 1.0))
    } else if last.abs() < tol {
        0.0
    } else {
        f64::INFINITY
    };
    let monotone_down = tail.windows(2).all(|p| p[1] <= p[0] * 1.1 + tol);
    if gm <= DECAY_RATIO && monotone_down {
        Trend::Decaying
    } else if gm >= PERSIST_RATIO && tail.iter().all(|&v| v >= tol) {
        Trend::Persistent
    } else {
        Trend::Mixed
    }
}

/// Sup-type condition `sup_k f(k) < inf`, with `f` evaluated at every index
/// up to the top of the ladder. The running sup is recorded at each cutoff
/// and its increments decide the verdict.
pub fn sup_ladder<F: FnMut(u64) -> f64>(policy: &TruncationPolicy, mut f: F) -> (f64, Verdict) {
    let mut points = Vec::with_capacity(policy.ladder.len());
    let mut sup = f64::NEG_INFINITY;
    let mut arg = 1u64;
    let mut k = 1u64;
    for &cutoff in &policy.ladder {
        while k <= cutoff {
            let v = f(k);
            if v > sup {
                sup = v;
                arg = k;
            }
            k += 1;
        }
        points.push(LadderPoint { cutoff, value: sup });
    }
    finish_monotone(points, sup, arg, policy, "running sup at each cutoff")
}

/// Series-type condition `sum_k f(k) < inf` for non-negative terms; the
/// partial sums are monotone, so increments are analyzed like a running sup.
pub fn series_ladder<F: FnMut(u64) -> f64>(policy: &TruncationPolicy, mut f: F) -> (f64, Verdict) {
    let mut points = Vec::with_capacity(policy.ladder.len());
    let mut sum = 0.0f64;
    let mut k = 1u64;
    for &cutoff in &policy.ladder {
        while k <= cutoff {
            sum += f(k);
            k += 1;
        }
        points.push(LadderPoint { cutoff, value: sum });
    }
    let top = policy.max_cutoff();
    finish_monotone(points, sum, top, policy, "partial sum at each cutoff")
}

fn finish_monotone(
    points: Vec<LadderPoint>,
    value: f64,
    witness_index: u64,
    policy: &TruncationPolicy,
    note: &str,
) -> (f64, Verdict) {
    let increments: Vec<f64> = points
        .windows(2)
        .map(|p| (p[1].value - p[0].value).max(0.0))
        .collect();
    let status = match classify(&increments, policy.tol, policy.stabilization_window) {
        Trend::Stable | Trend::Decaying => Status::Holds,
        Trend::Persistent => Status::Fails,
        Trend::Mixed => Status::Inconclusive,
    };
    let witness = match status {
        Status::Fails => Some(Witness { index: witness_index, value }),
        _ => None,
    };
    let verdict = Verdict {
        status,
        evidence: Evidence {
            ladder: points,
            witness,
            estimate: Some(value),
            note: note.to_string(),
        },
        tol: policy.tol,
        stabilization_window: policy.stabilization_window,
    };
    (value, verdict)
}

/// Block statistics used by the limit-type analyzers.
struct Blocks {
    /// deviation measure per block (within-block oscillation and drift)
    deviation: Vec<f64>,
    /// mean over the last block
    last_mean: f64,
    /// index and value of the largest deviation in the last block
    witness: Witness,
}

fn block_stats<F: FnMut(u64) -> f64>(policy: &TruncationPolicy, mut f: F, target: Option<f64>) -> Blocks {
    let mut deviation = Vec::with_capacity(policy.ladder.len());
    let mut prev_mean: Option<f64> = None;
    let mut last_mean = 0.0;
    let mut witness = Witness { index: 1, value: 0.0 };
    let mut start = 1u64;
    for &cutoff in &policy.ladder {
        let values: Vec<(u64, f64)> = (start..=cutoff).map(|k| (k, f(k))).collect();
        let mean = match target {
            Some(t) => t,
            None => values.iter().map(|&(_, v)| v).sum::<f64>() / values.len() as f64,
        };
        let (&(arg, _), osc) = values
            .iter()
            .map(|kv @ (_, v)| (kv, (v - mean).abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("block is non-empty");
        let drift = prev_mean.map_or(0.0, |p| (mean - p).abs());
        deviation.push(osc.max(drift));
        if osc >= witness.value {
            witness = Witness { index: arg, value: osc };
        }
        prev_mean = Some(mean);
        last_mean = mean;
        start = cutoff + 1;
    }
    Blocks { deviation, last_mean, witness }
}

/// Limit-type condition `lim_k f(k)` exists. The candidate limit is the mean
/// of the last ladder block; the verdict tracks within-block oscillation and
/// block-to-block drift.
pub fn limit_ladder<F: FnMut(u64) -> f64>(
    policy: &TruncationPolicy,
    f: F,
) -> (Verdict, Option<f64>) {
    let blocks = block_stats(policy, f, None);
    limit_verdict(blocks, policy, "max deviation from block mean, incl. drift")
}

/// Limit-type condition `lim_k f(k) = 0`: deviations are measured from zero.
pub fn vanishing_ladder<F: FnMut(u64) -> f64>(policy: &TruncationPolicy, f: F) -> Verdict {
    let blocks = block_stats(policy, f, Some(0.0));
    let (mut verdict, _) = limit_verdict(blocks, policy, "max |value| per block");
    verdict.evidence.estimate = Some(0.0);
    verdict
}

fn limit_verdict(blocks: Blocks, policy: &TruncationPolicy, note: &str) -> (Verdict, Option<f64>) {
    let points: Vec<LadderPoint> = policy
        .ladder
        .iter()
        .zip(&blocks.deviation)
        .map(|(&cutoff, &value)| LadderPoint { cutoff, value })
        .collect();
    let status = match classify(&blocks.deviation, policy.tol, policy.stabilization_window) {
        Trend::Stable | Trend::Decaying => Status::Holds,
        Trend::Persistent => Status::Fails,
        Trend::Mixed => Status::Inconclusive,
    };
    let (estimate, witness) = match status {
        Status::Holds => (Some(blocks.last_mean), None),
        Status::Fails => (None, Some(blocks.witness)),
        Status::Inconclusive => (Some(blocks.last_mean), None),
    };
    let verdict = Verdict {
        status,
        evidence: Evidence {
            ladder: points,
            witness,
            estimate,
            note: note.to_string(),
        },
        tol: policy.tol,
        stabilization_window: policy.stabilization_window,
    };
    let est = if status == Status::Holds { estimate } else { None };
    (verdict, est)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    #[test]
    fn policy_validation() {
        assert!(TruncationPolicy::new(vec![], 1e-8, 3).is_err());
        assert!(TruncationPolicy::new(vec![8, 8], 1e-8, 3).is_err());
        assert!(TruncationPolicy::new(vec![8, 16], 0.0, 3).is_err());
        assert!(TruncationPolicy::new(vec![8, 16], 1e-8, 3).is_ok());
    }

    #[test]
    fn extended_ladder_doubles() {
        let p = policy().extended_to(1 << 16);
        assert_eq!(p.max_cutoff(), 1 << 16);
        assert!(p.ladder.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn sup_of_bounded_sequence_holds() {
        let (value, v) = sup_ladder(&policy(), |k| 1.0 / k as f64);
        assert_eq!(value, 1.0);
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn sup_of_unbounded_sequence_fails() {
        let (_, v) = sup_ladder(&policy(), |k| k as f64);
        assert_eq!(v.status, Status::Fails);
        let w = v.evidence.witness.unwrap();
        assert_eq!(w.index, 1024);
        assert_eq!(w.value, 1024.0);
    }

    #[test]
    fn series_convergent_vs_divergent() {
        let (_, conv) = series_ladder(&policy(), |k| 1.0 / (k * k) as f64);
        assert_eq!(conv.status, Status::Holds);
        let (_, div) = series_ladder(&policy(), |_| 1.0);
        assert_eq!(div.status, Status::Fails);
        // harmonic series: log-slow growth keeps increments persistent
        let (_, slow) = series_ladder(&policy(), |k| 1.0 / k as f64);
        assert_eq!(slow.status, Status::Fails);
    }

    #[test]
    fn limit_of_convergent_sequence() {
        let (v, est) = limit_ladder(&policy(), |k| 3.0 + 1.0 / k as f64);
        assert_eq!(v.status, Status::Holds);
        assert!((est.unwrap() - 3.0).abs() < 0.05);
    }

    #[test]
    fn limit_of_oscillating_sequence_fails() {
        let (v, est) = limit_ladder(&policy(), |k| if k % 2 == 0 { 1.0 } else { -1.0 });
        assert_eq!(v.status, Status::Fails);
        assert!(est.is_none());
        assert!(v.evidence.witness.is_some());
    }

    #[test]
    fn slowly_growing_sequence_fails_limit() {
        // harmonic numbers: bounded oscillation never dies out
        let mut h = 0.0;
        let mut last = 0;
        let (v, _) = limit_ladder(&policy(), move |k| {
            debug_assert_eq!(k, last + 1);
            last = k;
            h += 1.0 / k as f64;
            h
        });
        assert_eq!(v.status, Status::Fails);
    }

    #[test]
    fn vanishing_examples() {
        assert_eq!(vanishing_ladder(&policy(), |k| 1.0 / k as f64).status, Status::Holds);
        assert_eq!(vanishing_ladder(&policy(), |_| 5.0).status, Status::Fails);
        assert_eq!(vanishing_ladder(&policy(), |_| 0.0).status, Status::Holds);
    }

    #[test]
    fn status_conjunction() {
        use Status::*;
        assert_eq!(Holds.and(Holds), Holds);
        assert_eq!(Holds.and(Inconclusive), Inconclusive);
        assert_eq!(Inconclusive.and(Fails), Fails);
        assert_eq!(Status::all([Holds, Holds, Fails]), Fails);
    }
}

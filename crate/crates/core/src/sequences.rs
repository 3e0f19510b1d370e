//! Fuzzy sequences over a shared spread pair and truncation-based membership
//! tests for the bounded, convergent, null, p-summable and series spaces.
//!
//! Index origin is 1 throughout.

use std::sync::Arc;

use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{SpreadPair, TriangularFuzzyNumber};
use crate::verdict::{
    limit_ladder, series_ladder, sup_ladder, vanishing_ladder, Evidence, LadderPoint, Status,
    TruncationPolicy, Verdict, Witness,
};

/// Backing of a fuzzy sequence: the rule producing the center at index `k`.
#[derive(Clone)]
pub enum Generator {
    Constant(f64),
    /// `r^k`
    Geometric(f64),
    /// `1/k`
    Harmonic,
    /// `k^p`
    Power(f64),
    /// `c0 + c1*k + c2*k^2 + ...`
    Polynomial(Vec<f64>),
    /// Finite list of centers, zero-extended beyond its end.
    Explicit(Vec<f64>),
    Custom(Arc<dyn Fn(u64) -> f64 + Send + Sync>),
}

impl std::fmt::Debug for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Generator::Constant(c) => write!(f, "Constant({c})"),
            Generator::Geometric(r) => write!(f, "Geometric({r})"),
            Generator::Harmonic => write!(f, "Harmonic"),
            Generator::Power(p) => write!(f, "Power({p})"),
            Generator::Polynomial(c) => write!(f, "Polynomial({c:?})"),
            Generator::Explicit(v) => write!(f, "Explicit({} terms)", v.len()),
            Generator::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl Generator {
    fn eval(&self, k: u64) -> f64 {
        match self {
            Generator::Constant(c) => *c,
            Generator::Geometric(r) => r.powi(k.min(i32::MAX as u64) as i32),
            Generator::Harmonic => 1.0 / k as f64,
            Generator::Power(p) => (k as f64).powf(*p),
            Generator::Polynomial(coeffs) => {
                let x = k as f64;
                coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
            }
            Generator::Explicit(v) => v.get((k - 1) as usize).copied().unwrap_or(0.0),
            Generator::Custom(f) => f(k),
        }
    }
}

/// Anything that yields triangular fuzzy terms over one spread pair.
pub trait SequenceTerms {
    fn spreads(&self) -> SpreadPair;

    fn center(&self, k: u64) -> Result<f64>;

    fn term(&self, k: u64) -> Result<TriangularFuzzyNumber> {
        Ok(TriangularFuzzyNumber::new(self.center(k)?, self.spreads()))
    }
}

/// A lazily generated sequence of triangular fuzzy numbers sharing one
/// spread pair.
#[derive(Debug, Clone)]
pub struct FuzzySequence {
    spreads: SpreadPair,
    generator: Generator,
}

impl FuzzySequence {
    pub fn new(spreads: SpreadPair, generator: Generator) -> Self {
        FuzzySequence { spreads, generator }
    }

    /// The zero sequence of a spread family.
    pub fn zero(spreads: SpreadPair) -> Self {
        FuzzySequence::new(spreads, Generator::Constant(0.0))
    }

    pub fn constant(spreads: SpreadPair, c: f64) -> Self {
        FuzzySequence::new(spreads, Generator::Constant(c))
    }

    pub fn explicit(spreads: SpreadPair, centers: Vec<f64>) -> Self {
        FuzzySequence::new(spreads, Generator::Explicit(centers))
    }

    pub fn from_fn<F: Fn(u64) -> f64 + Send + Sync + 'static>(spreads: SpreadPair, f: F) -> Self {
        FuzzySequence::new(spreads, Generator::Custom(Arc::new(f)))
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }
}

impl SequenceTerms for FuzzySequence {
    fn spreads(&self) -> SpreadPair {
        self.spreads
    }

    fn center(&self, k: u64) -> Result<f64> {
        if k == 0 {
            return Err(Error::Domain("sequence indices start at 1".into()));
        }
        let v = self.generator.eval(k);
        if !v.is_finite() {
            return Err(Error::Generator {
                index: k,
                message: format!("generator produced non-finite value {v}"),
            });
        }
        Ok(v)
    }
}

impl<T: SequenceTerms + ?Sized> SequenceTerms for &T {
    fn spreads(&self) -> SpreadPair {
        (**self).spreads()
    }
    fn center(&self, k: u64) -> Result<f64> {
        (**self).center(k)
    }
}

fn check_spreads(a: &impl SequenceTerms, b: &impl SequenceTerms) -> Result<()> {
    let (sa, sb) = (a.spreads(), b.spreads());
    if sa != sb {
        return Err(Error::SpreadMismatch(sa.t1(), sa.t2(), sb.t1(), sb.t2()));
    }
    Ok(())
}

fn collect<F: FnMut(u64) -> Result<f64>>(max: u64, mut f: F) -> Result<Vec<f64>> {
    (1..=max).map(&mut f).collect()
}

/// Sup over the ladder of the termwise metric between two sequences
/// (the sup-max norm, evaluated against an explicit second sequence).
pub fn sup_norm(
    s: &impl SequenceTerms,
    against: &impl SequenceTerms,
    policy: &TruncationPolicy,
) -> Result<(f64, Verdict)> {
    check_spreads(s, against)?;
    let values = collect(policy.max_cutoff(), |k| {
        Ok(s.term(k)?.metric(&against.term(k)?)?)
    })?;
    Ok(sup_ladder(policy, |k| values[(k - 1) as usize]))
}

/// Bounded-sequence test: `sup_k d(u_k, theta) < inf`.
pub fn in_linf(s: &impl SequenceTerms, policy: &TruncationPolicy) -> Result<Verdict> {
    let values = collect(policy.max_cutoff(), |k| Ok(s.term(k)?.metric_to_zero()))?;
    Ok(sup_ladder(policy, |k| values[(k - 1) as usize]).1)
}

/// A `Fails` verdict carried by the metric floor `max(t1, t2)`: the literal
/// limit condition cannot reach zero for a non-crisp spread pair.
fn spread_floor_failure(spreads: SpreadPair, policy: &TruncationPolicy) -> Verdict {
    Verdict {
        status: Status::Fails,
        evidence: Evidence {
            ladder: vec![],
            witness: Some(Witness { index: 1, value: spreads.metric_floor() }),
            estimate: None,
            note: "metric between same-spread terms never drops below max(t1, t2)".into(),
        },
        tol: policy.tol,
        stabilization_window: policy.stabilization_window,
    }
}

/// Convergence test: `lim_k d(u_k, u0) = 0` for some limit `u0`. The limit
/// candidate is estimated from the tail and returned alongside the verdict.
pub fn in_c(
    s: &impl SequenceTerms,
    policy: &TruncationPolicy,
) -> Result<(Verdict, Option<TriangularFuzzyNumber>)> {
    let spreads = s.spreads();
    if spreads.metric_floor() > policy.tol {
        return Ok((spread_floor_failure(spreads, policy), None));
    }
    let values = collect(policy.max_cutoff(), |k| s.center(k))?;
    let (verdict, est) = limit_ladder(policy, |k| values[(k - 1) as usize]);
    Ok((verdict, est.map(|c| TriangularFuzzyNumber::new(c, spreads))))
}

/// Null-sequence test: `lim_k d(u_k, theta) = 0`.
pub fn in_c0(s: &impl SequenceTerms, policy: &TruncationPolicy) -> Result<Verdict> {
    let values = collect(policy.max_cutoff(), |k| Ok(s.term(k)?.metric_to_zero()))?;
    Ok(vanishing_ladder(policy, |k| values[(k - 1) as usize]))
}

/// Absolute p-summability: `sum_k d(u_k, theta)^p < inf`, `p >= 1`.
pub fn in_lp(s: &impl SequenceTerms, p: f64, policy: &TruncationPolicy) -> Result<Verdict> {
    if !(p >= 1.0) {
        return Err(Error::Domain(format!("p must be >= 1, got {p}")));
    }
    let values = collect(policy.max_cutoff(), |k| {
        Ok(s.term(k)?.metric_to_zero().powf(p))
    })?;
    Ok(series_ladder(policy, |k| values[(k - 1) as usize]).1)
}

fn partial_sums(s: &impl SequenceTerms, max: u64) -> Result<Vec<f64>> {
    let mut acc = 0.0;
    collect(max, |k| {
        acc += s.center(k)?;
        Ok(acc)
    })
}

/// Convergent-series test: the partial-sum sequence converges.
pub fn in_cs(s: &impl SequenceTerms, policy: &TruncationPolicy) -> Result<Verdict> {
    let spreads = s.spreads();
    if spreads.metric_floor() > policy.tol {
        return Ok(spread_floor_failure(spreads, policy));
    }
    let sums = partial_sums(s, policy.max_cutoff())?;
    Ok(limit_ladder(policy, |k| sums[(k - 1) as usize]).0)
}

/// Bounded-series test: the partial-sum sequence is bounded.
pub fn in_bs(s: &impl SequenceTerms, policy: &TruncationPolicy) -> Result<Verdict> {
    let spreads = s.spreads();
    let sums = partial_sums(s, policy.max_cutoff())?;
    let values: Vec<f64> = sums
        .iter()
        .map(|&c| TriangularFuzzyNumber::new(c, spreads).metric_to_zero())
        .collect();
    Ok(sup_ladder(policy, |k| values[(k - 1) as usize]).1)
}

/// Convenience: evidence ladder of the running sup of the termwise metric,
/// used when two norm computations must agree ladder-for-ladder.
pub fn sup_norm_ladder(
    s: &impl SequenceTerms,
    against: &impl SequenceTerms,
    policy: &TruncationPolicy,
) -> Result<Vec<LadderPoint>> {
    Ok(sup_norm(s, against, policy)?.1.evidence.ladder)
}

// ---- JSON document form -------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SeqDoc {
    spreads: SpreadPair,
    kind: String,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    params: serde_json::Value,
}

impl Serialize for FuzzySequence {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let (kind, params) = match &self.generator {
            Generator::Constant(c) => ("constant", serde_json::json!(c)),
            Generator::Geometric(r) => ("geometric", serde_json::json!(r)),
            Generator::Harmonic => ("harmonic", serde_json::Value::Null),
            Generator::Power(p) => ("power", serde_json::json!(p)),
            Generator::Polynomial(c) => ("polynomial", serde_json::json!(c)),
            Generator::Explicit(v) => ("explicit", serde_json::json!(v)),
            Generator::Custom(_) => {
                return Err(S::Error::custom("custom generators have no document form"))
            }
        };
        SeqDoc { spreads: self.spreads, kind: kind.into(), params }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FuzzySequence {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let doc = SeqDoc::deserialize(de)?;
        let number = |v: &serde_json::Value, what: &str| -> std::result::Result<f64, D::Error> {
            v.as_f64()
                .ok_or_else(|| D::Error::custom(format!("{what} expects a numeric params field")))
        };
        let list = |v: &serde_json::Value, what: &str| -> std::result::Result<Vec<f64>, D::Error> {
            serde_json::from_value(v.clone())
                .map_err(|_| D::Error::custom(format!("{what} expects an array params field")))
        };
        let generator = match doc.kind.as_str() {
            "constant" => Generator::Constant(number(&doc.params, "constant")?),
            "geometric" => Generator::Geometric(number(&doc.params, "geometric")?),
            "harmonic" => Generator::Harmonic,
            "power" => Generator::Power(number(&doc.params, "power")?),
            "polynomial" => Generator::Polynomial(list(&doc.params, "polynomial")?),
            "explicit" => Generator::Explicit(list(&doc.params, "explicit")?),
            other => return Err(D::Error::custom(format!("unknown sequence kind `{other}`"))),
        };
        Ok(FuzzySequence::new(doc.spreads, generator))
    }
}

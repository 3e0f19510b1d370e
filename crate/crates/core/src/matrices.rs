//! Row-finite infinite real matrices given by entry generators.
//!
//! Entries are exact rationals so that inverse identities can be verified
//! with zero tolerance; the float view is derived from the rational one.
//! Rows and columns are indexed from 1, matching the weight matrices:
//! the integrated weights `a(n,k) = k` and the differentiated weights
//! `b(n,k) = 1/k` for `k <= n`, with their bidiagonal inverses.

use std::sync::Arc;

use num::rational::BigRational;
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::TriangularFuzzyNumber;
use crate::sequences::SequenceTerms;
use crate::verdict::{
    limit_ladder, sup_ladder, vanishing_ladder, Status, TruncationPolicy, Verdict,
};

type EntryFn = Arc<dyn Fn(u64, u64) -> BigRational + Send + Sync>;
type SupportFn = Arc<dyn Fn(u64) -> u64 + Send + Sync>;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn q_div(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational form of an `f64` (its binary expansion).
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}

#[derive(Clone)]
pub struct InfiniteMatrix {
    name: String,
    entry: EntryFn,
    row_support: SupportFn,
}

impl std::fmt::Debug for InfiniteMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "InfiniteMatrix({})", self.name)
    }
}

impl InfiniteMatrix {
    pub fn new<E, S>(name: impl Into<String>, row_support: S, entry: E) -> Self
    where
        E: Fn(u64, u64) -> BigRational + Send + Sync + 'static,
        S: Fn(u64) -> u64 + Send + Sync + 'static,
    {
        InfiniteMatrix {
            name: name.into(),
            entry: Arc::new(entry),
            row_support: Arc::new(row_support),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Entry at row `n`, column `k` (1-based); zero beyond the row support.
    pub fn entry(&self, n: u64, k: u64) -> BigRational {
        if n == 0 || k == 0 || k > self.row_support(n) {
            return BigRational::zero();
        }
        (self.entry)(n, k)
    }

    pub fn entry_f64(&self, n: u64, k: u64) -> f64 {
        self.entry(n, k).to_f64().unwrap_or(f64::NAN)
    }

    /// Largest column that may be nonzero in row `n`.
    pub fn row_support(&self, n: u64) -> u64 {
        (self.row_support)(n)
    }

    /// Integrated weight matrix: `entry(n, k) = k` for `k <= n`.
    pub fn omega() -> Self {
        Self::new("omega", |n| n, |_, k| q(k as i64))
    }

    /// Differentiated weight matrix: `entry(n, k) = 1/k` for `k <= n`.
    pub fn gamma() -> Self {
        Self::new("gamma", |n| n, |_, k| q_div(1, k as i64))
    }

    /// Bidiagonal inverse of the integrated weights: `1/n` on the diagonal,
    /// `-1/n` just below it.
    pub fn omega_inv() -> Self {
        Self::new(
            "omega_inv",
            |n| n,
            |n, k| {
                if k == n {
                    q_div(1, n as i64)
                } else if k + 1 == n {
                    q_div(-1, n as i64)
                } else {
                    BigRational::zero()
                }
            },
        )
    }

    /// Bidiagonal inverse of the differentiated weights: `n` on the
    /// diagonal, `-n` just below it.
    pub fn gamma_inv() -> Self {
        Self::new(
            "gamma_inv",
            |n| n,
            |n, k| {
                if k == n {
                    q(n as i64)
                } else if k + 1 == n {
                    q(-(n as i64))
                } else {
                    BigRational::zero()
                }
            },
        )
    }

    pub fn identity() -> Self {
        Self::new(
            "identity",
            |n| n,
            |n, k| if n == k { BigRational::one() } else { BigRational::zero() },
        )
    }

    pub fn zero() -> Self {
        Self::new("zero", |_| 0, |_, _| BigRational::zero())
    }

    /// Arithmetic-mean matrix: `entry(n, k) = 1/n` for `k <= n`.
    pub fn cesaro() -> Self {
        Self::new("cesaro", |n| n, |n, _| q_div(1, n as i64))
    }

    /// Finite list of rows, zero-extended in both directions.
    pub fn explicit(rows: Vec<Vec<f64>>) -> Self {
        let rows: Arc<Vec<Vec<BigRational>>> = Arc::new(
            rows.into_iter()
                .map(|r| r.into_iter().map(rational_from_f64).collect())
                .collect(),
        );
        let support_rows = Arc::clone(&rows);
        Self::new(
            "explicit",
            move |n| {
                support_rows
                    .get((n - 1) as usize)
                    .map_or(0, |r| r.len() as u64)
            },
            move |n, k| {
                rows.get((n - 1) as usize)
                    .and_then(|r| r.get((k - 1) as usize))
                    .cloned()
                    .unwrap_or_else(BigRational::zero)
            },
        )
    }

    /// Matrix product; finite sums by row-finiteness of the left factor.
    pub fn compose(&self, rhs: &InfiniteMatrix) -> InfiniteMatrix {
        let a = self.clone();
        let b = rhs.clone();
        let a_support = self.row_support.clone();
        let b_for_support = rhs.clone();
        InfiniteMatrix::new(
            format!("{}*{}", self.name, rhs.name),
            move |n| {
                (1..=a_support(n))
                    .map(|j| b_for_support.row_support(j))
                    .max()
                    .unwrap_or(0)
            },
            move |n, k| {
                let mut sum = BigRational::zero();
                for j in 1..=a.row_support(n) {
                    let bj = b.entry(j, k);
                    if !bj.is_zero() {
                        sum += a.entry(n, j) * bj;
                    }
                }
                sum
            },
        )
    }

    /// Leading `n x n` block, exact.
    pub fn truncate(&self, n: u64) -> Vec<Vec<BigRational>> {
        (1..=n)
            .map(|row| (1..=n).map(|col| self.entry(row, col)).collect())
            .collect()
    }

    pub fn truncate_f64(&self, n: u64) -> Vec<Vec<f64>> {
        (1..=n)
            .map(|row| (1..=n).map(|col| self.entry_f64(row, col)).collect())
            .collect()
    }

    /// Exact equality of leading blocks.
    pub fn block_equals(&self, other: &InfiniteMatrix, n: u64) -> bool {
        (1..=n).all(|row| (1..=n).all(|col| self.entry(row, col) == other.entry(row, col)))
    }

    /// Row sum `sum_k entry(n, k)` as a float.
    pub fn row_sum_f64(&self, n: u64) -> f64 {
        (1..=self.row_support(n)).map(|k| self.entry_f64(n, k)).sum()
    }

    /// Absolute row sum `sum_k |entry(n, k)|` as a float.
    pub fn abs_row_sum_f64(&self, n: u64) -> f64 {
        (1..=self.row_support(n))
            .map(|k| self.entry_f64(n, k).abs())
            .sum()
    }

    /// Row-n image of a fuzzy sequence: centers combine through the row,
    /// spreads ride along unchanged.
    pub fn apply(&self, s: &impl SequenceTerms, n: u64) -> Result<TriangularFuzzyNumber> {
        if n == 0 {
            return Err(Error::Domain("matrix rows are indexed from 1".into()));
        }
        let mut center = 0.0;
        for k in 1..=self.row_support(n) {
            let a = self.entry_f64(n, k);
            if a != 0.0 {
                center += a * s.center(k)?;
            }
        }
        Ok(TriangularFuzzyNumber::new(center, s.spreads()))
    }
}

/// Number of leading columns whose limits the audit examines.
const AUDIT_COLUMNS: u64 = 8;

#[derive(Debug, Clone, Serialize)]
pub struct ToeplitzAudit {
    /// Verdict on `lim_n sum_k a(n,k)` existing, with the estimated limit.
    pub row_sum_limit: Verdict,
    pub row_sum_estimate: Option<f64>,
    /// Per-column verdicts on `lim_n a(n,k) = 0`.
    pub column_limits: Vec<(u64, Verdict)>,
    pub sup_abs_row_sums: f64,
    pub sup_abs_verdict: Verdict,
    /// Conjunction of the classical regularity conditions, with the row-sum
    /// limit required to be 1.
    pub regular: Status,
}

/// Audit a matrix against the classical regularity conditions: bounded
/// absolute row sums, row sums tending to 1, columns tending to 0.
pub fn toeplitz_audit(a: &InfiniteMatrix, policy: &TruncationPolicy) -> ToeplitzAudit {
    let (row_sum_limit, row_sum_estimate) = limit_ladder(policy, |n| a.row_sum_f64(n));
    let column_limits: Vec<(u64, Verdict)> = (1..=AUDIT_COLUMNS)
        .map(|k| (k, vanishing_ladder(policy, |n| a.entry_f64(n, k))))
        .collect();
    let (sup_abs_row_sums, sup_abs_verdict) = sup_ladder(policy, |n| a.abs_row_sum_f64(n));

    let limit_is_one = row_sum_estimate.is_some_and(|l| (l - 1.0).abs() < 1e-6);
    let mut regular = Status::all([
        row_sum_limit.status,
        sup_abs_verdict.status,
        Status::all(column_limits.iter().map(|(_, v)| v.status)),
    ]);
    if regular == Status::Holds && !limit_is_one {
        regular = Status::Fails;
    }

    ToeplitzAudit {
        row_sum_limit,
        row_sum_estimate,
        column_limits,
        sup_abs_row_sums,
        sup_abs_verdict,
        regular,
    }
}

// ---- JSON document form -------------------------------------------------

#[derive(Deserialize)]
struct MatrixDoc {
    kind: String,
    #[serde(default)]
    params: serde_json::Value,
}

/// Parse a builtin matrix name.
pub fn builtin(name: &str) -> Option<InfiniteMatrix> {
    match name {
        "omega" => Some(InfiniteMatrix::omega()),
        "gamma" => Some(InfiniteMatrix::gamma()),
        "omega_inv" => Some(InfiniteMatrix::omega_inv()),
        "gamma_inv" => Some(InfiniteMatrix::gamma_inv()),
        "identity" => Some(InfiniteMatrix::identity()),
        "cesaro" => Some(InfiniteMatrix::cesaro()),
        "zero" => Some(InfiniteMatrix::zero()),
        _ => None,
    }
}

impl<'de> Deserialize<'de> for InfiniteMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let doc = MatrixDoc::deserialize(de)?;
        if let Some(m) = builtin(&doc.kind) {
            return Ok(m);
        }
        match doc.kind.as_str() {
            "explicit" => {
                let rows: Vec<Vec<f64>> = if doc.params.is_array() {
                    serde_json::from_value(doc.params).map_err(D::Error::custom)?
                } else {
                    #[derive(Deserialize)]
                    struct ExplicitParams {
                        rows: Vec<Vec<f64>>,
                    }
                    serde_json::from_value::<ExplicitParams>(doc.params)
                        .map_err(D::Error::custom)?
                        .rows
                };
                Ok(InfiniteMatrix::explicit(rows))
            }
            "derived" => {
                #[derive(Deserialize)]
                struct DerivedParams {
                    op: String,
                    #[serde(default)]
                    base: Option<InfiniteMatrix>,
                    #[serde(default)]
                    left: Option<InfiniteMatrix>,
                    #[serde(default)]
                    right: Option<InfiniteMatrix>,
                    #[serde(default)]
                    a: Option<crate::sequences::FuzzySequence>,
                }
                let p: DerivedParams =
                    serde_json::from_value(doc.params).map_err(D::Error::custom)?;
                let need_base = |b: Option<InfiniteMatrix>, op: &str| {
                    b.ok_or_else(|| D::Error::custom(format!("derived `{op}` needs a `base` matrix")))
                };
                match p.op.as_str() {
                    "tilde" => Ok(crate::duals::derived_tilde(&need_base(p.base, "tilde")?)),
                    "hat" => Ok(crate::duals::derived_hat(&need_base(p.base, "hat")?)),
                    "lambda" => Ok(crate::duals::derived_lambda(&need_base(p.base, "lambda")?)),
                    "sigma" => Ok(crate::duals::derived_sigma(&need_base(p.base, "sigma")?)),
                    "compose" => {
                        let l = p.left.ok_or_else(|| D::Error::custom("compose needs `left`"))?;
                        let r = p.right.ok_or_else(|| D::Error::custom("compose needs `right`"))?;
                        Ok(l.compose(&r))
                    }
                    "g" | "h" => {
                        let a = p
                            .a
                            .ok_or_else(|| D::Error::custom("builder matrices need an `a` sequence"))?;
                        if p.op == "g" {
                            Ok(crate::duals::build_g(&a))
                        } else {
                            Ok(crate::duals::build_h(&a))
                        }
                    }
                    other => Err(D::Error::custom(format!("unknown derived op `{other}`"))),
                }
            }
            other => Err(D::Error::custom(format!("unknown matrix kind `{other}`"))),
        }
    }
}

/// Render a block with rational entries (`p/q`) for display.
pub fn format_block_rational(block: &[Vec<BigRational>]) -> Vec<Vec<String>> {
    block
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| {
                    if e.denom().is_one() {
                        e.numer().to_string()
                    } else {
                        format!("{}/{}", e.numer(), e.denom())
                    }
                })
                .collect()
        })
        .collect()
}

/// `true` when every entry of `a`'s leading block dominates `b`'s in
/// absolute value.
pub fn dominates_abs(a: &InfiniteMatrix, b: &InfiniteMatrix, n: u64) -> bool {
    (1..=n).all(|row| (1..=n).all(|col| a.entry(row, col).abs() >= b.entry(row, col).abs()))
}

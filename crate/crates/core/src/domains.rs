//! Integrated and differentiated matrix domains.
//!
//! A sequence belongs to the integrated space over `X` when its weighted
//! transform `v(n) = sum_{k<=n} k u(k)` lands in `X`, and to the
//! differentiated space when `y(n) = sum_{k<=n} u(k)/k` does. Two readings
//! of the transform coexist: the `Abs` form sums `|k u(k)|` termwise (the
//! isometry transform), the `Raw` form applies the weight matrix directly
//! (the set definition); membership uses `Raw`, norms default to `Abs`.

use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::fuzzy::{SpreadPair, TriangularFuzzyNumber};
use crate::matrices::InfiniteMatrix;
use crate::sequences::{self, FuzzySequence, SequenceTerms};
use crate::verdict::{Status, TruncationPolicy, Verdict};

/// Classical base space the transform is tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseSpace {
    Linf,
    C,
    C0,
}

/// Which weight sequence the transform uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    /// integrated weights `k`
    Omega,
    /// differentiated weights `1/k`
    Gamma,
}

impl TransformKind {
    pub fn weight(&self, k: u64) -> f64 {
        match self {
            TransformKind::Omega => k as f64,
            TransformKind::Gamma => 1.0 / k as f64,
        }
    }

    pub fn matrix(&self) -> InfiniteMatrix {
        match self {
            TransformKind::Omega => InfiniteMatrix::omega(),
            TransformKind::Gamma => InfiniteMatrix::gamma(),
        }
    }
}

/// Whether transform terms pass through an absolute value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TransformMode {
    #[default]
    Abs,
    Raw,
}

/// A matrix domain: base space plus transform matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DomainSpace {
    pub base: BaseSpace,
    pub transform: TransformKind,
}

impl DomainSpace {
    pub const ALL: [DomainSpace; 6] = [
        DomainSpace { base: BaseSpace::Linf, transform: TransformKind::Omega },
        DomainSpace { base: BaseSpace::C, transform: TransformKind::Omega },
        DomainSpace { base: BaseSpace::C0, transform: TransformKind::Omega },
        DomainSpace { base: BaseSpace::Linf, transform: TransformKind::Gamma },
        DomainSpace { base: BaseSpace::C, transform: TransformKind::Gamma },
        DomainSpace { base: BaseSpace::C0, transform: TransformKind::Gamma },
    ];

    /// Parse a CLI-visible name such as `int-linf` or `diff-c0`.
    pub fn parse(name: &str) -> Result<Self> {
        let (prefix, base) = name
            .split_once('-')
            .ok_or_else(|| Error::Parse(format!("bad space name `{name}`")))?;
        let transform = match prefix {
            "int" => TransformKind::Omega,
            "diff" => TransformKind::Gamma,
            _ => return Err(Error::Parse(format!("bad space prefix `{prefix}`"))),
        };
        let base = match base {
            "linf" => BaseSpace::Linf,
            "c" => BaseSpace::C,
            "c0" => BaseSpace::C0,
            _ => return Err(Error::Parse(format!("bad base space `{base}`"))),
        };
        Ok(DomainSpace { base, transform })
    }

    pub fn name(&self) -> String {
        let prefix = match self.transform {
            TransformKind::Omega => "int",
            TransformKind::Gamma => "diff",
        };
        let base = match self.base {
            BaseSpace::Linf => "linf",
            BaseSpace::C => "c",
            BaseSpace::C0 => "c0",
        };
        format!("{prefix}-{base}")
    }
}

/// The full weighted transform of a sequence, memoized via prefix sums so
/// that evaluating every index up to a ladder top stays linear.
#[derive(Debug, Clone)]
pub struct TransformedSequence {
    source: FuzzySequence,
    kind: TransformKind,
    mode: TransformMode,
    prefix: Arc<Mutex<Vec<f64>>>,
}

impl TransformedSequence {
    pub fn new(source: FuzzySequence, kind: TransformKind, mode: TransformMode) -> Self {
        TransformedSequence {
            source,
            kind,
            mode,
            prefix: Arc::new(Mutex::new(Vec::new())),
        }
    }

    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    pub fn mode(&self) -> TransformMode {
        self.mode
    }

    pub fn source(&self) -> &FuzzySequence {
        &self.source
    }

    fn prefix_at(&self, n: u64) -> Result<f64> {
        let mut cache = self.prefix.lock().expect("prefix cache poisoned");
        while (cache.len() as u64) < n {
            let k = cache.len() as u64 + 1;
            let raw = self.kind.weight(k) * self.source.center(k)?;
            let term = match self.mode {
                TransformMode::Abs => raw.abs(),
                TransformMode::Raw => raw,
            };
            let prev = cache.last().copied().unwrap_or(0.0);
            cache.push(prev + term);
        }
        Ok(cache[(n - 1) as usize])
    }
}

impl SequenceTerms for TransformedSequence {
    fn spreads(&self) -> SpreadPair {
        self.source.spreads()
    }

    fn center(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::Domain("transform indices start at 1".into()));
        }
        self.prefix_at(n)
    }
}

/// Integrated transform term: `sum_{k<=n} |k u(k)|`, spreads carried.
pub fn omega_transform(s: &FuzzySequence, n: u64) -> Result<TriangularFuzzyNumber> {
    phi(s).term(n)
}

/// Differentiated transform term: `sum_{k<=n} |u(k)/k|`, spreads carried.
pub fn gamma_transform(s: &FuzzySequence, n: u64) -> Result<TriangularFuzzyNumber> {
    psi(s).term(n)
}

/// The isometry transform into the integrated space image.
pub fn phi(s: &FuzzySequence) -> TransformedSequence {
    TransformedSequence::new(s.clone(), TransformKind::Omega, TransformMode::Abs)
}

/// The isometry transform into the differentiated space image.
pub fn psi(s: &FuzzySequence) -> TransformedSequence {
    TransformedSequence::new(s.clone(), TransformKind::Gamma, TransformMode::Abs)
}

/// Ladder cap for the slow-divergence retry (harmonic-type growth).
const EXTENDED_MAX: u64 = 1 << 16;

fn base_membership(
    t: &TransformedSequence,
    base: BaseSpace,
    policy: &TruncationPolicy,
) -> Result<Verdict> {
    match base {
        BaseSpace::Linf => sequences::in_linf(t, policy),
        BaseSpace::C => Ok(sequences::in_c(t, policy)?.0),
        BaseSpace::C0 => sequences::in_c0(t, policy),
    }
}

/// Membership in a matrix domain: transform with the raw weight matrix, then
/// classify in the base space. An inconclusive verdict at the given ladder is
/// retried once with the ladder extended by doubling.
pub fn in_domain(s: &FuzzySequence, space: DomainSpace, policy: &TruncationPolicy) -> Result<Verdict> {
    let t = TransformedSequence::new(s.clone(), space.transform, TransformMode::Raw);
    let verdict = base_membership(&t, space.base, policy)?;
    if verdict.status == Status::Inconclusive && policy.max_cutoff() < EXTENDED_MAX {
        return base_membership(&t, space.base, &policy.extended_to(EXTENDED_MAX));
    }
    Ok(verdict)
}

/// Domain norm: sup over the ladder of the metric between the transforms of
/// `s` and `against` (the zero sequence when `None`), using `mode` for the
/// transform reading.
pub fn domain_norm(
    s: &FuzzySequence,
    space: DomainSpace,
    against: Option<&FuzzySequence>,
    mode: TransformMode,
    policy: &TruncationPolicy,
) -> Result<(f64, Verdict)> {
    let zero = FuzzySequence::zero(s.spreads());
    let against = against.unwrap_or(&zero);
    let ts = TransformedSequence::new(s.clone(), space.transform, mode);
    let ta = TransformedSequence::new(against.clone(), space.transform, mode);
    sequences::sup_norm(&ts, &ta, policy)
}

//! Triangular fuzzy numbers and their arithmetic.
//!
//! A triangular fuzzy number is a tent-shaped membership function encoded as
//! `(center - t1, center, center + t2)`: a crisp center plus a left/right
//! spread pair shared by every number of the same family. All binary
//! operators combine centers and carry the spread pair through unchanged;
//! mixing distinct spread pairs is an error, not a guess.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bounded closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo <= hi) {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// `true` when `self` is contained in `other`.
    pub fn subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }
}

/// Sup-distance between interval endpoints: `max(|a- - b-|, |a+ - b+|)`.
pub fn interval_metric(a: &Interval, b: &Interval) -> f64 {
    f64::max((a.lo - b.lo).abs(), (a.hi - b.hi).abs())
}

/// Left and right spread of a tent, with `0 <= t1 <= t2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpreads", into = "RawSpreads")]
pub struct SpreadPair {
    t1: f64,
    t2: f64,
}

#[derive(Serialize, Deserialize)]
struct RawSpreads {
    t1: f64,
    t2: f64,
}

impl TryFrom<RawSpreads> for SpreadPair {
    type Error = Error;
    fn try_from(raw: RawSpreads) -> Result<Self> {
        SpreadPair::new(raw.t1, raw.t2)
    }
}

impl From<SpreadPair> for RawSpreads {
    fn from(s: SpreadPair) -> Self {
        RawSpreads { t1: s.t1, t2: s.t2 }
    }
}

impl SpreadPair {
    pub fn new(t1: f64, t2: f64) -> Result<Self> {
        if !(0.0 <= t1 && t1 <= t2) || !t1.is_finite() || !t2.is_finite() {
            return Err(Error::InvalidSpreads { t1, t2 });
        }
        Ok(SpreadPair { t1, t2 })
    }

    /// The fully crisp spread pair `(0, 0)`.
    pub fn crisp() -> Self {
        SpreadPair { t1: 0.0, t2: 0.0 }
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn t2(&self) -> f64 {
        self.t2
    }

    pub fn is_crisp(&self) -> bool {
        self.t1 == 0.0 && self.t2 == 0.0
    }

    /// `max(t1, t2)`; the floor of the metric between same-spread numbers.
    pub fn metric_floor(&self) -> f64 {
        f64::max(self.t1, self.t2)
    }

    fn check_match(&self, other: &SpreadPair) -> Result<()> {
        if self != other {
            return Err(Error::SpreadMismatch(self.t1, self.t2, other.t1, other.t2));
        }
        Ok(())
    }
}

/// The tent `(center - t1, center, center + t2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangularFuzzyNumber {
    center: f64,
    spreads: SpreadPair,
}

impl TriangularFuzzyNumber {
    pub fn new(center: f64, spreads: SpreadPair) -> Self {
        TriangularFuzzyNumber { center, spreads }
    }

    /// The fuzzy zero of a spread family: center 0, given spreads.
    pub fn zero(spreads: SpreadPair) -> Self {
        TriangularFuzzyNumber { center: 0.0, spreads }
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn spreads(&self) -> SpreadPair {
        self.spreads
    }

    pub fn first_point(&self) -> f64 {
        self.center - self.spreads.t1
    }

    pub fn end_point(&self) -> f64 {
        self.center + self.spreads.t2
    }

    pub fn is_fuzzy_zero(&self) -> bool {
        self.center == 0.0
    }

    /// Tent membership. Piecewise linear: rises on `[c - t1, c]`, falls on
    /// `[c, c + t2]`, zero outside. In the fully crisp case it is the
    /// indicator of the center; a half-degenerate spread is rejected.
    pub fn membership_at(&self, x: f64) -> Result<f64> {
        let SpreadPair { t1, t2 } = self.spreads;
        if self.spreads.is_crisp() {
            return Ok(if x == self.center { 1.0 } else { 0.0 });
        }
        if t1 == 0.0 || t2 == 0.0 {
            return Err(Error::DegenerateSpread { t1, t2 });
        }
        let c = self.center;
        if x >= c - t1 && x <= c {
            Ok((x - (c - t1)) / t1)
        } else if x > c && x <= c + t2 {
            Ok(((c + t2) - x) / t2)
        } else {
            Ok(0.0)
        }
    }

    /// The alpha-level interval `[c - (1 - alpha) t1, c + (1 - alpha) t2]`
    /// for `alpha` in `(0, 1]`.
    pub fn alpha_cut(&self, alpha: f64) -> Result<Interval> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Domain(format!(
                "alpha must lie in (0, 1], got {alpha}"
            )));
        }
        let SpreadPair { t1, t2 } = self.spreads;
        if !self.spreads.is_crisp() && (t1 == 0.0 || t2 == 0.0) {
            return Err(Error::DegenerateSpread { t1, t2 });
        }
        Interval::new(
            self.center - (1.0 - alpha) * t1,
            self.center + (1.0 - alpha) * t2,
        )
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.spreads.check_match(&rhs.spreads)?;
        Ok(Self::new(self.center + rhs.center, self.spreads))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.spreads.check_match(&rhs.spreads)?;
        Ok(Self::new(self.center - rhs.center, self.spreads))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.spreads.check_match(&rhs.spreads)?;
        Ok(Self::new(self.center * rhs.center, self.spreads))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        self.spreads.check_match(&rhs.spreads)?;
        if rhs.center == 0.0 {
            return Err(Error::DivisionByFuzzyZero);
        }
        Ok(Self::new(self.center / rhs.center, self.spreads))
    }

    /// Scalar multiplication scales the center only; spreads ride along.
    pub fn scalar_mul(&self, alpha: f64) -> Self {
        Self::new(alpha * self.center, self.spreads)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.center, self.spreads)
    }

    pub fn fuzzy_abs(&self) -> Self {
        Self::new(self.center.abs(), self.spreads)
    }

    /// The distance `max(|d - t1|, |d|, |d + t2|)` with `d` the center
    /// difference. Note this is `max(t1, t2)` at `d = 0`, so it vanishes on
    /// identical arguments only in the crisp case.
    pub fn metric(&self, rhs: &Self) -> Result<f64> {
        self.spreads.check_match(&rhs.spreads)?;
        // the center offset enters as a magnitude: this is what makes the
        // expression symmetric and keeps it >= max(t1, t2)
        let d = (self.center - rhs.center).abs();
        let SpreadPair { t1, t2 } = self.spreads;
        Ok((d - t1).abs().max(d).max(d + t2))
    }

    /// Distance to the fuzzy zero of the same spread family.
    pub fn metric_to_zero(&self) -> f64 {
        let d = self.center.abs();
        let SpreadPair { t1, t2 } = self.spreads;
        (d - t1).abs().max(d).max(d + t2)
    }
}

impl Serialize for TriangularFuzzyNumber {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        RawTfn {
            center: self.center,
            t1: self.spreads.t1,
            t2: self.spreads.t2,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for TriangularFuzzyNumber {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = RawTfn::deserialize(de)?;
        let spreads = SpreadPair::new(raw.t1, raw.t2).map_err(serde::de::Error::custom)?;
        Ok(TriangularFuzzyNumber::new(raw.center, spreads))
    }
}

/// Wire form: `{"center": c, "t1": t1, "t2": t2}`.
#[derive(Serialize, Deserialize)]
struct RawTfn {
    center: f64,
    t1: f64,
    t2: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sp(t1: f64, t2: f64) -> SpreadPair {
        SpreadPair::new(t1, t2).unwrap()
    }

    fn tfn(c: f64, t1: f64, t2: f64) -> TriangularFuzzyNumber {
        TriangularFuzzyNumber::new(c, sp(t1, t2))
    }

    #[test]
    fn interval_metric_examples() {
        let a = Interval::new(0.0, 1.0).unwrap();
        assert_eq!(interval_metric(&a, &a), 0.0);
        let b = Interval::new(0.0, 2.0).unwrap();
        let c = Interval::new(1.0, 5.0).unwrap();
        assert_eq!(interval_metric(&b, &c), 3.0);
        assert_eq!(interval_metric(&c, &b), 3.0);
        assert!(Interval::new(1.0, -1.0).is_err());
    }

    #[test]
    fn membership_tent() {
        let u = tfn(5.0, 1.0, 1.0);
        assert_eq!(u.membership_at(5.0).unwrap(), 1.0);
        let u = tfn(5.0, 2.0, 4.0);
        assert_relative_eq!(u.membership_at(4.0).unwrap(), 0.5);
        assert_eq!(u.membership_at(10.0).unwrap(), 0.0);
        assert_eq!(u.membership_at(2.9).unwrap(), 0.0);
    }

    #[test]
    fn membership_degenerate() {
        // fully crisp: indicator of the center
        let crisp = tfn(3.0, 0.0, 0.0);
        assert_eq!(crisp.membership_at(3.0).unwrap(), 1.0);
        assert_eq!(crisp.membership_at(3.1).unwrap(), 0.0);
        // half-degenerate: rejected
        let half = tfn(3.0, 0.0, 1.0);
        assert!(matches!(
            half.membership_at(3.0),
            Err(Error::DegenerateSpread { .. })
        ));
        assert!(half.alpha_cut(0.5).is_err());
    }

    #[test]
    fn alpha_cut_examples() {
        let u = tfn(5.0, 2.0, 4.0);
        let core = u.alpha_cut(1.0).unwrap();
        assert_eq!((core.lo(), core.hi()), (5.0, 5.0));
        let half = u.alpha_cut(0.5).unwrap();
        assert_eq!((half.lo(), half.hi()), (4.0, 7.0));
        let v = tfn(0.0, 1.0, 1.0);
        let cut = v.alpha_cut(0.25).unwrap();
        assert_eq!((cut.lo(), cut.hi()), (-0.75, 0.75));
        assert!(u.alpha_cut(0.0).is_err());
        assert!(u.alpha_cut(1.5).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let a = tfn(2.0, 1.0, 1.0);
        let b = tfn(3.0, 1.0, 1.0);
        assert_eq!(a.add(&b).unwrap(), tfn(5.0, 1.0, 1.0));

        let theta = TriangularFuzzyNumber::zero(sp(1.0, 1.0));
        assert_eq!(a.add(&theta).unwrap(), a);
        assert!(matches!(
            a.add(&tfn(3.0, 0.0, 2.0)),
            Err(Error::SpreadMismatch(..))
        ));

        let x = tfn(2.0, 1.0, 2.0);
        assert_eq!(x.sub(&x).unwrap(), TriangularFuzzyNumber::zero(sp(1.0, 2.0)));
        assert_eq!(
            tfn(3.0, 1.0, 2.0).mul(&tfn(4.0, 1.0, 2.0)).unwrap(),
            tfn(12.0, 1.0, 2.0)
        );
        assert!(matches!(
            tfn(6.0, 0.0, 1.0).div(&tfn(0.0, 0.0, 1.0)),
            Err(Error::DivisionByFuzzyZero)
        ));
        assert_eq!(
            tfn(6.0, 0.0, 1.0).div(&tfn(4.0, 0.0, 1.0)).unwrap(),
            tfn(1.5, 0.0, 1.0)
        );
    }

    #[test]
    fn scalar_neg_abs() {
        let u = tfn(3.0, 1.0, 2.0);
        assert_eq!(u.scalar_mul(1.0), u);
        assert_eq!(u.scalar_mul(-2.0), tfn(-6.0, 1.0, 2.0));
        assert_eq!(u.scalar_mul(0.0), TriangularFuzzyNumber::zero(sp(1.0, 2.0)));
        assert_eq!(tfn(5.0, 1.0, 2.0).neg(), tfn(-5.0, 1.0, 2.0));
        let theta = TriangularFuzzyNumber::zero(sp(1.0, 2.0));
        assert_eq!(theta.neg(), theta);
        assert_eq!(u.add(&u.neg()).unwrap(), theta);
        assert_eq!(tfn(-3.0, 1.0, 2.0).fuzzy_abs(), tfn(3.0, 1.0, 2.0));
        assert_eq!(tfn(3.0, 1.0, 2.0).fuzzy_abs(), tfn(3.0, 1.0, 2.0));
        assert_eq!(tfn(0.0, 1.0, 2.0).fuzzy_abs(), tfn(0.0, 1.0, 2.0));
    }

    #[test]
    fn metric_examples() {
        let crisp = tfn(4.0, 0.0, 0.0);
        assert_eq!(crisp.metric(&crisp).unwrap(), 0.0);
        let u = tfn(4.0, 1.0, 2.0);
        // identical arguments still sit at the spread floor
        assert_eq!(u.metric(&u).unwrap(), 2.0);
        let a = tfn(5.0, 1.0, 2.0);
        let b = tfn(2.0, 1.0, 2.0);
        assert_eq!(a.metric(&b).unwrap(), 5.0);
        assert_eq!(b.metric(&a).unwrap(), 5.0);
        assert_eq!(a.metric_to_zero(), a.metric(&TriangularFuzzyNumber::zero(sp(1.0, 2.0))).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let u = tfn(2.5, 0.25, 0.75);
        let text = serde_json::to_string(&u).unwrap();
        assert_eq!(text, r#"{"center":2.5,"t1":0.25,"t2":0.75}"#);
        let back: TriangularFuzzyNumber = serde_json::from_str(&text).unwrap();
        assert_eq!(back, u);
        // invariant enforced on the wire
        assert!(serde_json::from_str::<TriangularFuzzyNumber>(
            r#"{"center":0.0,"t1":2.0,"t2":1.0}"#
        )
        .is_err());
    }
}

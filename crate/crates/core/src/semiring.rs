//! Weight algebras.
//!
//! Every machine is generic over a [`Semiring`] `(K, ⊕, ⊗, 0̄, 1̄)`: `⊗` combines
//! weights along a path and `⊕` combines the weights of alternative paths.
//! Four instances are provided:
//!
//! | name       | carrier            | ⊕              | ⊗   | 0̄   | 1̄ |
//! |------------|--------------------|----------------|-----|-----|---|
//! | `boolean`  | {false, true}      | or             | and | 0   | 1 |
//! | `tropical` | ℝ ∪ {+∞}           | min            | +   | +∞  | 0 |
//! | `real`     | ℝ                  | +              | ×   | 0   | 1 |
//! | `log`      | ℝ ∪ {+∞} (−ln p)   | −ln(e⁻ᵃ + e⁻ᵇ) | +   | +∞  | 0 |
//!
//! Boolean and tropical weights also carry a natural order (`a ≤ b` iff
//! `a ⊕ b = a`) which the search module relies on.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Relative tolerance used by [`Semiring::approx_eq`] for the floating semirings.
pub const RELATIVE_TOLERANCE: f64 = 1e-9;

/// A weight semiring.
pub trait Semiring: Copy + fmt::Debug + fmt::Display + PartialEq + Send + Sync + 'static {
    /// Name used in file headers and on the command line.
    const NAME: &'static str;
    /// `w ⊕ w = w` for every `w`.
    const IDEMPOTENT: bool;
    /// Whether [`Semiring::natural_cmp`] returns an order.
    const NATURALLY_ORDERED: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Exact comparison for boolean/tropical, relative tolerance for real/log.
    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    /// Total order used only to sort transitions deterministically.
    fn sort_cmp(&self, other: &Self) -> Ordering;

    /// `Less` means "better": `a ⊕ b == a` whenever `a.natural_cmp(b) != Greater`.
    fn natural_cmp(&self, _other: &Self) -> Option<Ordering> {
        None
    }

    /// Parses the text produced by `Display`.
    fn parse_weight(text: &str) -> Option<Self>;
}

fn parse_real(text: &str) -> Option<f64> {
    let v = f64::from_str(text).ok()?;
    (!v.is_nan()).then_some(v)
}

/// Shortest decimal that reparses to the same `f64`.
fn fmt_real(v: f64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let a = v.abs();
    if v.is_finite() && a != 0.0 && !(1e-5..1e16).contains(&a) {
        write!(f, "{v:e}")
    } else {
        write!(f, "{v}")
    }
}

fn rel_eq(a: f64, b: f64) -> bool {
    if a == b {
        return true;
    }
    if !a.is_finite() || !b.is_finite() {
        return false;
    }
    (a - b).abs() <= RELATIVE_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// The boolean semiring `({0,1}, ∨, ∧, 0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BooleanWeight(pub bool);

impl fmt::Display for BooleanWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

impl Semiring for BooleanWeight {
    const NAME: &'static str = "boolean";
    const IDEMPOTENT: bool = true;
    const NATURALLY_ORDERED: bool = true;

    fn zero() -> Self {
        BooleanWeight(false)
    }
    fn one() -> Self {
        BooleanWeight(true)
    }
    fn plus(&self, rhs: &Self) -> Self {
        BooleanWeight(self.0 || rhs.0)
    }
    fn times(&self, rhs: &Self) -> Self {
        BooleanWeight(self.0 && rhs.0)
    }
    fn sort_cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
    fn natural_cmp(&self, other: &Self) -> Option<Ordering> {
        // true is the better (smaller) element
        Some(other.0.cmp(&self.0))
    }
    fn parse_weight(text: &str) -> Option<Self> {
        match text {
            "1" | "true" => Some(BooleanWeight(true)),
            "0" | "false" => Some(BooleanWeight(false)),
            _ => None,
        }
    }
}

/// The tropical semiring `(ℝ ∪ {+∞}, min, +, +∞, 0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TropicalWeight(pub f64);

impl TropicalWeight {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for TropicalWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_real(self.0, f)
    }
}

impl Semiring for TropicalWeight {
    const NAME: &'static str = "tropical";
    const IDEMPOTENT: bool = true;
    const NATURALLY_ORDERED: bool = true;

    fn zero() -> Self {
        TropicalWeight(f64::INFINITY)
    }
    fn one() -> Self {
        TropicalWeight(0.0)
    }
    fn plus(&self, rhs: &Self) -> Self {
        TropicalWeight(self.0.min(rhs.0))
    }
    fn times(&self, rhs: &Self) -> Self {
        TropicalWeight(self.0 + rhs.0)
    }
    fn is_one(&self) -> bool {
        self.0 == 0.0
    }
    fn sort_cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
    fn natural_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
    fn parse_weight(text: &str) -> Option<Self> {
        parse_real(text)
            .filter(|v| *v != f64::NEG_INFINITY)
            .map(TropicalWeight)
    }
}

/// The real (probability) semiring `(ℝ, +, ×, 0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealWeight(pub f64);

impl RealWeight {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for RealWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_real(self.0, f)
    }
}

impl Semiring for RealWeight {
    const NAME: &'static str = "real";
    const IDEMPOTENT: bool = false;
    const NATURALLY_ORDERED: bool = false;

    fn zero() -> Self {
        RealWeight(0.0)
    }
    fn one() -> Self {
        RealWeight(1.0)
    }
    fn plus(&self, rhs: &Self) -> Self {
        RealWeight(self.0 + rhs.0)
    }
    fn times(&self, rhs: &Self) -> Self {
        RealWeight(self.0 * rhs.0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0.0
    }
    fn approx_eq(&self, other: &Self) -> bool {
        rel_eq(self.0, other.0)
    }
    fn sort_cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
    fn parse_weight(text: &str) -> Option<Self> {
        parse_real(text).filter(|v| v.is_finite()).map(RealWeight)
    }
}

/// The log semiring over negated natural logarithms: `a ⊕ b = −ln(e⁻ᵃ + e⁻ᵇ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogWeight(pub f64);

impl LogWeight {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for LogWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_real(self.0, f)
    }
}

impl Semiring for LogWeight {
    const NAME: &'static str = "log";
    const IDEMPOTENT: bool = false;
    const NATURALLY_ORDERED: bool = false;

    fn zero() -> Self {
        LogWeight(f64::INFINITY)
    }
    fn one() -> Self {
        LogWeight(0.0)
    }
    fn plus(&self, rhs: &Self) -> Self {
        let (lo, hi) = if self.0 <= rhs.0 {
            (self.0, rhs.0)
        } else {
            (rhs.0, self.0)
        };
        if hi == f64::INFINITY {
            return LogWeight(lo);
        }
        LogWeight(lo - (-(hi - lo)).exp().ln_1p())
    }
    fn times(&self, rhs: &Self) -> Self {
        LogWeight(self.0 + rhs.0)
    }
    fn is_one(&self) -> bool {
        self.0 == 0.0
    }
    fn approx_eq(&self, other: &Self) -> bool {
        rel_eq(self.0, other.0)
    }
    fn sort_cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
    fn parse_weight(text: &str) -> Option<Self> {
        parse_real(text)
            .filter(|v| *v != f64::NEG_INFINITY)
            .map(LogWeight)
    }
}

/// Runtime tag naming one of the four semirings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SemiringKind {
    Boolean,
    #[default]
    Tropical,
    Real,
    Log,
}

impl SemiringKind {
    pub const ALL: [SemiringKind; 4] = [
        SemiringKind::Boolean,
        SemiringKind::Tropical,
        SemiringKind::Real,
        SemiringKind::Log,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemiringKind::Boolean => BooleanWeight::NAME,
            SemiringKind::Tropical => TropicalWeight::NAME,
            SemiringKind::Real => RealWeight::NAME,
            SemiringKind::Log => LogWeight::NAME,
        }
    }
}

impl fmt::Display for SemiringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemiringKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SemiringKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownSemiring(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tropical_plus_is_min() {
        let w = TropicalWeight(3.0).plus(&TropicalWeight(5.0));
        assert_eq!(w, TropicalWeight(3.0));
        let w = TropicalWeight(4.5).plus(&TropicalWeight::zero());
        assert_eq!(w, TropicalWeight(4.5));
    }

    #[test]
    fn tropical_times_is_sum() {
        assert_eq!(
            TropicalWeight(3.0).times(&TropicalWeight(5.0)),
            TropicalWeight(8.0)
        );
    }

    #[test]
    fn real_arithmetic() {
        assert_eq!(RealWeight(0.25).plus(&RealWeight(0.5)), RealWeight(0.75));
        assert_eq!(RealWeight(0.25).times(&RealWeight(0.5)), RealWeight(0.125));
    }

    #[test]
    fn one_is_times_identity() {
        assert_eq!(
            TropicalWeight(2.5).times(&TropicalWeight::one()),
            TropicalWeight(2.5)
        );
        assert_eq!(RealWeight(2.5).times(&RealWeight::one()), RealWeight(2.5));
        assert_eq!(LogWeight(2.5).times(&LogWeight::one()), LogWeight(2.5));
        assert_eq!(
            BooleanWeight(true).times(&BooleanWeight::one()),
            BooleanWeight(true)
        );
    }

    #[test]
    fn log_plus_matches_naive_form() {
        let (a, b) = (0.7_f64, 1.9_f64);
        let naive = -((-a).exp() + (-b).exp()).ln();
        assert!(LogWeight(a)
            .plus(&LogWeight(b))
            .approx_eq(&LogWeight(naive)));
        // naive form underflows to +inf here
        let big = LogWeight(800.0).plus(&LogWeight(800.0));
        assert!(big.approx_eq(&LogWeight(800.0 - 2f64.ln())));
        assert_eq!(LogWeight(1.0).plus(&LogWeight::zero()), LogWeight(1.0));
    }

    #[test]
    fn natural_order_agrees_with_plus() {
        let t = [
            TropicalWeight(1.0),
            TropicalWeight(-2.0),
            TropicalWeight::zero(),
        ];
        for a in t {
            for b in t {
                let best = if a.natural_cmp(&b) != Some(Ordering::Greater) {
                    a
                } else {
                    b
                };
                assert_eq!(a.plus(&b), best);
            }
        }
        for a in [true, false] {
            for b in [true, false] {
                let (a, b) = (BooleanWeight(a), BooleanWeight(b));
                let best = if a.natural_cmp(&b) != Some(Ordering::Greater) {
                    a
                } else {
                    b
                };
                assert_eq!(a.plus(&b), best);
            }
        }
        assert_eq!(RealWeight(1.0).natural_cmp(&RealWeight(2.0)), None);
    }

    #[test]
    fn weight_text_round_trip() {
        for v in [0.0, -0.0, 3.0, 0.1, 1.0 / 3.0, 1e-300, 6.02e23, -17.25] {
            let text = TropicalWeight(v).to_string();
            assert_eq!(
                TropicalWeight::parse_weight(&text),
                Some(TropicalWeight(v)),
                "{text}"
            );
        }
        assert_eq!(TropicalWeight(3.0).to_string(), "3");
        assert_eq!(BooleanWeight(true).to_string(), "1");
        assert!(TropicalWeight::parse_weight("NaN").is_none());
        assert!(RealWeight::parse_weight("inf").is_none());
        assert!(BooleanWeight::parse_weight("2").is_none());
    }

    #[test]
    fn kind_names() {
        for k in SemiringKind::ALL {
            assert_eq!(k.name().parse::<SemiringKind>().unwrap(), k);
        }
        assert!("max-plus".parse::<SemiringKind>().is_err());
    }
}

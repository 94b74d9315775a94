//! Convex subsets of the real line with exact rational, possibly strict or
//! infinite, endpoints.
//!
//! These sets are the components of endpoint roles and the edge labels of the
//! simple temporal networks built by the reasoner. All arithmetic is exact so
//! that a cycle of total length zero through a strict edge is detected.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::SyntaxError;

pub type Rational = BigRational;

/// Parse `p/q`, or an integer, into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.strip_prefix('+').unwrap_or(text);
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.parse().ok()?;
            let den: BigInt = den.parse().ok()?;
            if den.is_zero() || den.is_negative() {
                return None;
            }
            Some(Rational::new(num, den))
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Integers print without a denominator, everything else as `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A rational extended with both infinities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Finite(Rational::zero())
    }

    pub fn int(v: i64) -> Self {
        ExtRational::Finite(Rational::from_integer(v.into()))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            _ => None,
        }
    }

    fn neg(&self) -> Self {
        match self {
            ExtRational::NegInf => ExtRational::PosInf,
            ExtRational::PosInf => ExtRational::NegInf,
            ExtRational::Finite(q) => ExtRational::Finite(-q),
        }
    }

    /// Sum where infinities absorb finite values. Mixed infinities never
    /// arise here: lower bounds are only added to lower bounds.
    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            (ExtRational::NegInf, _) | (_, ExtRational::NegInf) => ExtRational::NegInf,
            _ => ExtRational::PosInf,
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtRational::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::NegInf => f.write_str("-inf"),
            ExtRational::PosInf => f.write_str("+inf"),
            ExtRational::Finite(q) => f.write_str(&format_rational(q)),
        }
    }
}

/// One end of a convex set. Infinite bounds are always strict.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bound {
    pub value: ExtRational,
    pub strict: bool,
}

impl Bound {
    pub fn new(value: ExtRational, strict: bool) -> Self {
        let strict = strict || !value.is_finite();
        Bound { value, strict }
    }

    pub fn closed(v: i64) -> Self {
        Bound::new(ExtRational::int(v), false)
    }

    pub fn open(v: i64) -> Self {
        Bound::new(ExtRational::int(v), true)
    }

    pub fn neg_inf() -> Self {
        Bound::new(ExtRational::NegInf, true)
    }

    pub fn pos_inf() -> Self {
        Bound::new(ExtRational::PosInf, true)
    }

    fn add(&self, other: &Bound) -> Bound {
        Bound::new(self.value.add(&other.value), self.strict || other.strict)
    }

    fn neg(&self) -> Bound {
        Bound::new(self.value.neg(), self.strict)
    }
}

/// A convex subset of the reals, canonicalized so that every empty set is
/// [`ConvexSet::Empty`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConvexSet {
    Empty,
    Range { lo: Bound, hi: Bound },
}

impl ConvexSet {
    /// Builds a set from two bounds, collapsing to `Empty` when no real lies between them.
    pub fn new(lo: Bound, hi: Bound) -> Self {
        let nonempty = match lo.value.cmp(&hi.value) {
            Ordering::Less => true,
            Ordering::Equal => !lo.strict && !hi.strict && lo.value.is_finite(),
            Ordering::Greater => false,
        };
        if nonempty {
            ConvexSet::Range { lo, hi }
        } else {
            ConvexSet::Empty
        }
    }

    /// The whole real line.
    pub fn universal() -> Self {
        ConvexSet::new(Bound::neg_inf(), Bound::pos_inf())
    }

    /// `{v}`.
    pub fn point(v: Rational) -> Self {
        let b = Bound::new(ExtRational::Finite(v), false);
        ConvexSet::new(b.clone(), b)
    }

    pub fn zero() -> Self {
        ConvexSet::point(Rational::zero())
    }

    /// `(0, +inf)`
    pub fn positive() -> Self {
        ConvexSet::new(Bound::open(0), Bound::pos_inf())
    }

    /// `(-inf, 0)`
    pub fn negative() -> Self {
        ConvexSet::new(Bound::neg_inf(), Bound::open(0))
    }

    /// `[0, +inf)`
    pub fn non_negative() -> Self {
        ConvexSet::new(Bound::closed(0), Bound::pos_inf())
    }

    /// `(-inf, 0]`
    pub fn non_positive() -> Self {
        ConvexSet::new(Bound::neg_inf(), Bound::closed(0))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ConvexSet::Empty)
    }

    pub fn is_universal(&self) -> bool {
        match self {
            ConvexSet::Range { lo, hi } => {
                lo.value == ExtRational::NegInf && hi.value == ExtRational::PosInf
            }
            ConvexSet::Empty => false,
        }
    }

    pub fn bounds(&self) -> Option<(&Bound, &Bound)> {
        match self {
            ConvexSet::Range { lo, hi } => Some((lo, hi)),
            ConvexSet::Empty => None,
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let Some((lo, hi)) = self.bounds() else {
            return false;
        };
        let x = ExtRational::Finite(x.clone());
        let above = match lo.value.cmp(&x) {
            Ordering::Less => true,
            Ordering::Equal => !lo.strict,
            Ordering::Greater => false,
        };
        let below = match x.cmp(&hi.value) {
            Ordering::Less => true,
            Ordering::Equal => !hi.strict,
            Ordering::Greater => false,
        };
        above && below
    }

    pub fn intersect(&self, other: &ConvexSet) -> ConvexSet {
        let (Some((alo, ahi)), Some((blo, bhi))) = (self.bounds(), other.bounds()) else {
            return ConvexSet::Empty;
        };
        let lo = tighter_lower(alo, blo);
        let hi = tighter_upper(ahi, bhi);
        ConvexSet::new(lo.clone(), hi.clone())
    }

    /// Minkowski sum. Both operands must be non-empty.
    pub fn sum(&self, other: &ConvexSet) -> ConvexSet {
        let (Some((alo, ahi)), Some((blo, bhi))) = (self.bounds(), other.bounds()) else {
            panic!("ConvexSet::sum called with an empty operand");
        };
        ConvexSet::new(alo.add(blo), ahi.add(bhi))
    }

    pub fn negate(&self) -> ConvexSet {
        match self {
            ConvexSet::Empty => ConvexSet::Empty,
            ConvexSet::Range { lo, hi } => ConvexSet::new(hi.neg(), lo.neg()),
        }
    }

    pub fn subset_of(&self, other: &ConvexSet) -> bool {
        let Some((alo, ahi)) = self.bounds() else {
            return true;
        };
        let Some((blo, bhi)) = other.bounds() else {
            return false;
        };
        tighter_lower(alo, blo) == alo && tighter_upper(ahi, bhi) == ahi
    }

    /// A deterministic member of the set, preferring interior points.
    ///
    /// Bounded sets give their midpoint; half-lines step one unit inside the
    /// finite end; the whole line gives `fallback`.
    pub fn interior_point(&self, fallback: &Rational) -> Option<Rational> {
        let (lo, hi) = self.bounds()?;
        Some(match (&lo.value, &hi.value) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => {
                (a + b) / Rational::from_integer(2.into())
            }
            (ExtRational::Finite(a), _) => a + Rational::one(),
            (_, ExtRational::Finite(b)) => b - Rational::one(),
            _ => fallback.clone(),
        })
    }
}

fn tighter_lower<'a>(a: &'a Bound, b: &'a Bound) -> &'a Bound {
    match a.value.cmp(&b.value) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => {
            if a.strict {
                a
            } else {
                b
            }
        }
    }
}

fn tighter_upper<'a>(a: &'a Bound, b: &'a Bound) -> &'a Bound {
    match a.value.cmp(&b.value) {
        Ordering::Less => a,
        Ordering::Greater => b,
        Ordering::Equal => {
            if a.strict {
                a
            } else {
                b
            }
        }
    }
}

impl fmt::Display for ConvexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // No textual form denotes the empty set canonically; an open
            // degenerate interval parses back to Empty.
            ConvexSet::Empty => f.write_str("(0,0)"),
            ConvexSet::Range { lo, hi } => write!(
                f,
                "{}{},{}{}",
                if lo.strict { '(' } else { '[' },
                lo.value,
                hi.value,
                if hi.strict { ')' } else { ']' }
            ),
        }
    }
}

/// Parses a bound token: `-inf`, `+inf`, an integer, or `p/q`.
pub fn parse_ext_rational(text: &str) -> Option<ExtRational> {
    match text {
        "-inf" => Some(ExtRational::NegInf),
        "+inf" | "inf" => Some(ExtRational::PosInf),
        _ => parse_rational(text).map(ExtRational::Finite),
    }
}

impl FromStr for ConvexSet {
    type Err = SyntaxError;

    /// Accepts `[a,b]`, `(a,b)`, `[a,b)`, `(a,b]` and the sugar `{0}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || SyntaxError::new(1, 1, format!("malformed convex set `{s}`"));
        if compact == "{0}" {
            return Ok(ConvexSet::zero());
        }
        let mut chars = compact.chars();
        let open = chars.next().ok_or_else(err)?;
        let close = chars.next_back().ok_or_else(err)?;
        let lo_strict = match open {
            '[' => false,
            '(' => true,
            _ => return Err(err()),
        };
        let hi_strict = match close {
            ']' => false,
            ')' => true,
            _ => return Err(err()),
        };
        let (a, b) = chars.as_str().split_once(',').ok_or_else(err)?;
        let lo = parse_ext_rational(a).ok_or_else(err)?;
        let hi = parse_ext_rational(b).ok_or_else(err)?;
        Ok(ConvexSet::new(
            Bound::new(lo, lo_strict),
            Bound::new(hi, hi_strict),
        ))
    }
}

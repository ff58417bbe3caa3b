//! Finite area, boundedness, total boundedness and finite analytic type.
//!
//! For the stack-of-boxes family the verdicts follow from the exponents of
//! `h_n = c_h n^p_h` and `w_n = c_w n^p_w`: the surface is bounded iff `H` is
//! bounded, totally bounded iff `H` tends to zero, and has finite area iff
//! `sum h_n w_n` converges. Finite analytic type is never computed from
//! geometry; it is "no" for every stack (infinite genus), "yes" for finite
//! surfaces, and taken from the table for the presets.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use serde::Serialize;

use crate::builders::SequenceSpec;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::surface::TranslationSurface;

/// Terms summed exactly (up to fixed-point rounding) in area enclosures.
pub const AREA_PARTIAL_TERMS: u64 = 10_000;

/// Fixed-point bits used for irrational powers `n^p`.
const POWER_BITS: u64 = 64;

/// Relative precision of rational square-root upper bounds.
const SQRT_BITS: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Yes,
    No,
    NotComputed,
}

impl Verdict {
    fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    SymbolicCriterion,
    FiniteSurface,
    PresetTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Field<T> {
    pub value: T,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AreaValue {
    Exact { value: Scalar },
    Divergent,
    /// `partial_lower <= sum_{n <= terms} a_n <= partial_upper` and the tail
    /// `sum_{n > terms} a_n` lies in `[0, tail_bound]`.
    PartialSumWithTailBound { terms: u64, partial_lower: Scalar, partial_upper: Scalar, tail_bound: Scalar },
}

impl AreaValue {
    /// Certified lower and upper bounds, when the area is finite.
    pub fn bounds(&self) -> Option<(Scalar, Scalar)> {
        match self {
            AreaValue::Exact { value } => Some((value.clone(), value.clone())),
            AreaValue::Divergent => None,
            AreaValue::PartialSumWithTailBound { partial_lower, partial_upper, tail_bound, .. } => {
                Some((partial_lower.clone(), partial_upper + tail_bound))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DiameterBound {
    Bounded { value: Scalar },
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinitenessReport {
    pub finite_area: Field<Verdict>,
    pub bounded: Field<Verdict>,
    pub totally_bounded: Field<Verdict>,
    pub finite_analytic_type: Field<Verdict>,
    pub area_value: Field<AreaValue>,
    pub diameter_upper_bound: Field<DiameterBound>,
}

impl FinitenessReport {
    /// Total boundedness implies boundedness.
    pub fn is_consistent(&self) -> bool {
        !(self.totally_bounded.value == Verdict::Yes && self.bounded.value == Verdict::No)
    }

    fn verdicts(&self) -> [Verdict; 4] {
        [self.finite_area.value, self.bounded.value, self.totally_bounded.value, self.finite_analytic_type.value]
    }

    /// Same four verdicts, ignoring values and provenance.
    pub fn same_verdicts(&self, other: &FinitenessReport) -> bool {
        self.verdicts() == other.verdicts()
    }

    fn retag(mut self, p: Provenance) -> Self {
        self.finite_area.provenance = p;
        self.bounded.provenance = p;
        self.totally_bounded.provenance = p;
        self.finite_analytic_type.provenance = p;
        self.area_value.provenance = p;
        self.diameter_upper_bound.provenance = p;
        self
    }
}

fn field<T>(value: T, provenance: Provenance) -> Field<T> {
    Field { value, provenance }
}

/// Verdicts for the infinite stack of boxes with the given height and width
/// sequences.
pub fn classify_stack(h: &SequenceSpec, w: &SequenceSpec) -> Result<FinitenessReport> {
    if !w.exponent().is_negative() {
        return Err(Error::SpecOutOfScope(format!("widths {w} do not tend to zero")));
    }
    let sym = Provenance::SymbolicCriterion;
    let ph = h.exponent();
    let p = ph + w.exponent();
    let bounded = !ph.is_positive();
    let totally_bounded = ph.is_negative();
    let finite_area = p < Scalar::from_int(-1);

    let area_value = if finite_area {
        let c = h.coefficient() * w.coefficient();
        power_series_enclosure(&c, &p, AREA_PARTIAL_TERMS)
    } else {
        AreaValue::Divergent
    };
    let diameter = if bounded {
        // every point of a box is within sqrt(M_H^2 + M_W^2) of a corner, and
        // all corners are one point; sup h_n = c_h, sup w_n = c_w
        let m_sq = h.coefficient().square() + w.coefficient().square();
        DiameterBound::Bounded { value: Scalar::from_int(2) * m_sq.sqrt_upper(SQRT_BITS) }
    } else {
        DiameterBound::Unbounded
    };
    Ok(FinitenessReport {
        finite_area: field(Verdict::from_bool(finite_area), sym),
        bounded: field(Verdict::from_bool(bounded), sym),
        totally_bounded: field(Verdict::from_bool(totally_bounded), sym),
        finite_analytic_type: field(Verdict::No, sym),
        area_value: field(area_value, sym),
        diameter_upper_bound: field(diameter, sym),
    })
}

/// Enclosure of `sum_{n >= 1} c n^p` for `p < -1`: the first `terms` terms
/// summed in fixed point with outward rounding, plus the integral-test tail
/// `c N^(p+1) / (-p-1)`.
pub fn power_series_enclosure(c: &Scalar, p: &Scalar, terms: u64) -> AreaValue {
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    for n in 1..=terms {
        let (a, b) = fixed_power(n, p);
        lo += a;
        hi += b;
    }
    let den = BigInt::one() << POWER_BITS as usize;
    let fixed = |x: BigInt| Scalar::from_bigints(x, den.clone()).expect("nonzero denominator");
    let q = p + Scalar::one();
    let (_, tail_pow) = power_bounds(terms, &q);
    let tail_bound = c * tail_pow / (-q);
    AreaValue::PartialSumWithTailBound {
        terms,
        partial_lower: c * fixed(lo),
        partial_upper: c * fixed(hi),
        tail_bound,
    }
}

/// Floor and ceiling of `2^POWER_BITS * n^p`.
fn fixed_power(n: u64, p: &Scalar) -> (BigInt, BigInt) {
    // n^(a/b) 2^K is the b-th root of n^a 2^(K b) (a >= 0) or of
    // 2^(K b) / n^|a| (a < 0); the floor of the b-th root of the floored
    // radicand is the floor of the true root.
    let a = p.numer();
    let b: u32 = p.denom().try_into().expect("exponent denominator fits in u32");
    let mag: usize = a.abs().try_into().expect("exponent numerator fits in usize");
    let scale = BigInt::one() << (POWER_BITS as usize * b as usize);
    let base = num::pow(BigInt::from(n), mag);
    let (radicand, divided_exactly) = if a.is_negative() {
        let (q, r) = scale.div_rem(&base);
        (q, r.is_zero())
    } else {
        (&base * &scale, true)
    };
    let floor = radicand.nth_root(b);
    let exact = divided_exactly && num::pow(floor.clone(), b as usize) == radicand;
    let ceil = if exact { floor.clone() } else { &floor + BigInt::one() };
    (floor, ceil)
}

/// Rational bounds `lo <= n^p <= hi`, equal when `n^p` is rational.
pub(crate) fn power_bounds(n: u64, p: &Scalar) -> (Scalar, Scalar) {
    if let Some(exact) = crate::builders::sequence_power(n, p) {
        return (exact.clone(), exact);
    }
    let (floor, ceil) = fixed_power(n, p);
    let den = BigInt::one() << POWER_BITS as usize;
    let lo = Scalar::from_bigints(floor, den.clone()).expect("nonzero denominator");
    let hi = Scalar::from_bigints(ceil, den).expect("nonzero denominator");
    (lo, hi)
}

/// Verdicts for a finite (compact) surface: all four conditions hold.
///
/// The diameter bound uses that every point of a convex polygon is within
/// the polygon's diameter of each of its vertices. With a single vertex
/// class any two points are within twice the largest polygon diameter;
/// otherwise a chain of adjacent polygons gives the sum of all diameters.
pub fn classify_finite_surface(s: &TranslationSurface) -> Result<FinitenessReport> {
    s.check_valid()?;
    let fin = Provenance::FiniteSurface;
    let diams: Vec<Scalar> = s.polygons().iter().map(|p| p.diameter_sq().sqrt_upper(SQRT_BITS)).collect();
    let single_class = s.cone_points_unchecked().len() == 1;
    let diameter = if single_class {
        let max = diams.iter().max().cloned().unwrap_or_else(Scalar::zero);
        Scalar::from_int(2) * max
    } else {
        diams.into_iter().sum()
    };
    Ok(FinitenessReport {
        finite_area: field(Verdict::Yes, fin),
        bounded: field(Verdict::Yes, fin),
        totally_bounded: field(Verdict::Yes, fin),
        finite_analytic_type: field(Verdict::Yes, fin),
        area_value: field(AreaValue::Exact { value: s.area() }, fin),
        diameter_upper_bound: field(DiameterBound::Bounded { value: diameter }, fin),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresetEntry {
    pub name: &'static str,
    /// Height and width sequences for stack presets.
    pub h: Option<SequenceSpec>,
    pub w: Option<SequenceSpec>,
    /// Non-implications between the four conditions this example witnesses.
    pub witnesses: Vec<&'static str>,
    pub report: FinitenessReport,
}

/// Verdict table for the named examples.
pub fn preset_table() -> Vec<PresetEntry> {
    let stack = |name, h: &str, w: &str, witnesses: Vec<&'static str>| {
        let (h, w): (SequenceSpec, SequenceSpec) = (h.parse().expect("preset spec"), w.parse().expect("preset spec"));
        let report = classify_stack(&h, &w).expect("preset in scope").retag(Provenance::PresetTable);
        PresetEntry { name, h: Some(h), w: Some(w), witnesses, report }
    };
    let table = Provenance::PresetTable;
    let cylinder = PresetEntry {
        name: "infinite-cylinder",
        h: None,
        w: None,
        witnesses: vec!["finite analytic type does not imply finite area or bounded"],
        report: FinitenessReport {
            finite_area: field(Verdict::No, table),
            bounded: field(Verdict::No, table),
            totally_bounded: field(Verdict::No, table),
            finite_analytic_type: field(Verdict::Yes, table),
            area_value: field(AreaValue::Divergent, table),
            diameter_upper_bound: field(DiameterBound::Unbounded, table),
        },
    };
    vec![
        stack(
            "aran",
            "n^-1",
            "n^-1",
            vec![
                "finite area does not imply finite analytic type",
                "bounded does not imply finite analytic type",
                "totally bounded does not imply finite analytic type",
                "finite area and totally bounded do not imply finite analytic type",
            ],
        ),
        stack("arid", "n^1", "n^-3", vec!["finite area does not imply bounded"]),
        stack(
            "artb",
            "n^0",
            "n^-2",
            vec![
                "finite area does not imply totally bounded",
                "bounded does not imply finite analytic type",
                "bounded does not imply totally bounded",
                "finite area and bounded do not imply totally bounded",
            ],
        ),
        stack(
            "bdar",
            "n^0",
            "n^-1",
            vec!["bounded does not imply finite area", "bounded does not imply totally bounded"],
        ),
        stack("tbar", "n^-1/2", "n^-1/2", vec!["totally bounded does not imply finite area"]),
        cylinder,
    ]
}

pub fn preset(name: &str) -> Option<PresetEntry> {
    preset_table().into_iter().find(|e| e.name == name)
}

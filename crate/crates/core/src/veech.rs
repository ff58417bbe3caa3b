//! Veech-group membership, cylinder twists, and rotation orbits of the
//! rhombus.

use serde::Serialize;

use crate::approx::ApproxScalar;
use crate::cylinders::decompose;
use crate::error::{Error, Result};
use crate::scalar::{rational_lcm, Scalar};
use crate::surface::{Equivalence, MatchWitness, TranslationSurface};
use crate::vector::{Mat2, Vec2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    Member,
    NotMember,
    RejectedDeterminant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VeechVerdict {
    pub matrix: Mat2,
    pub verdict: Membership,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<MatchWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl VeechVerdict {
    pub fn is_member(&self) -> bool {
        self.verdict == Membership::Member
    }
}

/// Whether `m` is the derivative of an affine automorphism of `s`.
pub fn is_veech(s: &TranslationSurface, m: &Mat2) -> Result<VeechVerdict> {
    s.require_exact()?;
    s.check_valid()?;
    if m.det() != &Scalar::one() {
        return Ok(VeechVerdict {
            matrix: m.clone(),
            verdict: Membership::RejectedDeterminant,
            witness: None,
            reason: Some(format!("determinant {} changes the area", m.det())),
        });
    }
    let image = s.apply_matrix(m)?;
    Ok(match image.equivalence(s)? {
        Equivalence::Equivalent { witness } => {
            VeechVerdict { matrix: m.clone(), verdict: Membership::Member, witness: Some(witness), reason: None }
        }
        Equivalence::NotEquivalent { reason } => {
            VeechVerdict { matrix: m.clone(), verdict: Membership::NotMember, witness: None, reason: Some(reason) }
        }
    })
}

/// The least positive multi-twist along the cylinders in `direction`:
/// `I + (t / |d|^2) d (-d_y, d_x)` for the primitive `d` and the least `t`
/// that is an integer multiple of every inverse modulus.
pub fn twist_matrix(s: &TranslationSurface, direction: &Vec2) -> Result<Mat2> {
    let cylinders = decompose(s, direction)?;
    let inverse: Vec<Scalar> = cylinders.iter().map(|c| c.modulus.recip()).collect::<Result<_>>()?;
    let t = rational_lcm(&inverse).ok_or(Error::NotCommensurable)?;
    let d = direction.primitive()?;
    let k = t / d.norm_sq();
    let one = Scalar::one();
    Mat2::new(
        &one - &(&k * &d.x * &d.y),
        &k * &d.x * &d.x,
        -(&k * &d.y * &d.y),
        &one + &(&k * &d.x * &d.y),
    )
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapRecord {
    pub k: u64,
    pub gap: ApproxScalar,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RotationOrbitReport {
    pub theta: ApproxScalar,
    pub k_max: u64,
    /// First `k` with `k * 2 theta` indistinguishable from a full turn.
    pub finite_order: Option<u64>,
    /// Smallest distance to the identity among powers before any finite order.
    pub min_gap: Option<ApproxScalar>,
    /// Running minima: each record improves on the previous one.
    pub gap_sequence: Vec<GapRecord>,
    pub pigeonhole_bound: f64,
    pub pigeonhole_holds: bool,
}

/// Angular distance to the identity of the powers `1..=k_max` of the
/// rotation by `2 theta`.
pub fn rotation_orbit_gap(theta: &ApproxScalar, k_max: u64) -> Result<RotationOrbitReport> {
    if !(theta.value > 0.0 && theta.value < std::f64::consts::FRAC_PI_2) {
        return Err(Error::AngleOutOfRange);
    }
    if k_max < 2 {
        return Err(Error::Domain("K must be at least 2".into()));
    }
    let bits = theta.precision_bits();
    let two_pi = ApproxScalar::pi(bits).scale_int(2);
    let mut finite_order = None;
    let mut best: Option<ApproxScalar> = None;
    let mut gap_sequence = Vec::new();
    for k in 1..=k_max {
        let x = theta.scale_int(2 * k as i64);
        let turns = (x.value / two_pi.value).round() as i64;
        let gap = (x - two_pi.scale_int(turns)).abs();
        if gap.may_be_zero() {
            finite_order = Some(k);
            break;
        }
        if best.is_none_or(|b| gap.value < b.value) {
            best = Some(gap);
            gap_sequence.push(GapRecord { k, gap });
        }
    }
    let pigeonhole_bound = two_pi.upper() / k_max as f64;
    let pigeonhole_holds = finite_order.is_some() || best.is_some_and(|b| b.lower() <= pigeonhole_bound);
    Ok(RotationOrbitReport {
        theta: *theta,
        k_max,
        finite_order,
        min_gap: best,
        gap_sequence,
        pigeonhole_bound,
        pigeonhole_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{l_surface, square_torus};

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn torus_membership() {
        let t = square_torus();
        assert!(is_veech(&t, &Mat2::ints(1, 1, 0, 1).unwrap()).unwrap().is_member());
        assert_eq!(is_veech(&t, &Mat2::ints(2, 0, 0, 1).unwrap()).unwrap().verdict, Membership::RejectedDeterminant);
        let squeeze = Mat2::new(q("2"), q("0"), q("0"), q("1/2")).unwrap();
        assert_eq!(is_veech(&t, &squeeze).unwrap().verdict, Membership::NotMember);
        assert!(is_veech(&t, &Mat2::identity()).unwrap().is_member());
    }

    #[test]
    fn twists() {
        let t = square_torus();
        assert_eq!(twist_matrix(&t, &Vec2::ints(1, 0)).unwrap(), Mat2::ints(1, 1, 0, 1).unwrap());
        assert_eq!(twist_matrix(&t, &Vec2::ints(0, 1)).unwrap(), Mat2::ints(1, 0, -1, 1).unwrap());
        let l = l_surface();
        let m = twist_matrix(&l, &Vec2::ints(1, 0)).unwrap();
        assert_eq!(m, Mat2::ints(1, 2, 0, 1).unwrap());
        assert!(is_veech(&l, &m).unwrap().is_member());
        for d in [Vec2::ints(0, 1), Vec2::ints(1, 1), Vec2::ints(2, -1)] {
            let m = twist_matrix(&l, &d).unwrap();
            assert_eq!(m.trace(), q("2"));
            assert!(!m.is_identity());
            assert_eq!(m.apply(&d), d);
            assert!(is_veech(&l, &m).unwrap().is_member());
        }
    }

    #[test]
    fn rotation_orbits() {
        let seventh = ApproxScalar::pi(64) / ApproxScalar::exact(7.0);
        assert_eq!(rotation_orbit_gap(&seventh, 100).unwrap().finite_order, Some(7));
        let one = ApproxScalar::exact(1.0);
        let big = rotation_orbit_gap(&one, 10_000).unwrap();
        let small = rotation_orbit_gap(&one, 100).unwrap();
        assert!(big.finite_order.is_none());
        assert!(big.pigeonhole_holds);
        assert!(big.min_gap.unwrap().value <= small.min_gap.unwrap().value);
        assert_eq!(rotation_orbit_gap(&ApproxScalar::exact(2.0), 10), Err(Error::AngleOutOfRange));
    }
}

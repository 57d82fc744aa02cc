//! Closed-form counts of cyclic subgroups, evaluated in exact arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::alpha::AlphaValue;
use crate::error::{GroupError, Result};
use crate::shape::AbelianShape;

fn pow(p: u64, e: u64) -> BigUint {
    Pow::pow(BigUint::from(p), e)
}

fn inconsistent(msg: String) -> GroupError {
    GroupError::InternalInconsistency(msg)
}

/// Number of solutions of `x^(p^i) = 1` in the group formed by the first
/// `k - 1` factors of `shape`, evaluated region by region. Adjacent regions
/// overlap at the breakpoints and must agree there.
pub fn h_value(shape: &AbelianShape, i: u64) -> Result<BigUint> {
    let p = shape.p();
    let d: Vec<u64> = shape.parts().iter().map(|&x| x as u64).collect();
    let k = d.len();
    // region j covers d_j <= i <= d_{j+1} (d_0 = 0, last region unbounded)
    let mut value: Option<BigUint> = None;
    let mut prefix = 0u64;
    for j in 0..k {
        if j > 0 {
            prefix += d[j - 1];
        }
        let lower = if j == 0 { 0 } else { d[j - 1] };
        let upper = if j + 1 < k { Some(d[j]) } else { None };
        if i < lower || upper.is_some_and(|u| i > u) {
            continue;
        }
        let v = pow(p, (k - 1 - j) as u64 * i + prefix);
        match &value {
            Some(prev) if *prev != v => {
                return Err(inconsistent(format!(
                    "h regions disagree at i={i} for {shape}: {prev} vs {v}"
                )))
            }
            _ => value = Some(v),
        }
    }
    value.ok_or_else(|| inconsistent(format!("no region of h contains i={i} for {shape}")))
}

/// Number of cyclic subgroups of order `p^i`.
pub fn g_count(shape: &AbelianShape, i: u64) -> Result<BigUint> {
    let top = *shape.parts().last().expect("nonempty") as u64;
    if i == 0 || i > top {
        return Err(GroupError::InvalidParameter(format!(
            "i={i} outside 1..={top}"
        )));
    }
    let p = shape.p();
    let numerator = pow(p, i) * h_value(shape, i)? - pow(p, i - 1) * h_value(shape, i - 1)?;
    let denominator = pow(p, i) - pow(p, i - 1);
    let (q, r) = numerator.div_rem(&denominator);
    if !r.is_zero() {
        return Err(inconsistent(format!(
            "g({i}) division is inexact for {shape}"
        )));
    }
    Ok(q)
}

/// The single displayed sum for the total number of cyclic subgroups,
/// evaluated over the rationals.
fn l1_abelian_direct(shape: &AbelianShape) -> Result<BigUint> {
    let p = shape.p();
    let mut d: Vec<u64> = vec![0];
    d.extend(shape.parts().iter().map(|&x| x as u64));
    let k = d.len() - 1;
    let big = |x: BigUint| BigRational::from_integer(BigInt::from(x));
    let mut sum = BigRational::zero();
    let mut prefix = 0u64;
    for i in 0..k.saturating_sub(1) {
        prefix += d[i];
        let span = (k - i - 1) as u64;
        let ratio = BigRational::new(
            BigInt::from(pow(p, span + 1)) - 1,
            BigInt::from(pow(p, span)) - 1,
        );
        let diff = big(pow(p, span * d[i + 1])) - big(pow(p, span * d[i]));
        sum += big(pow(p, prefix)) * ratio * diff;
    }
    sum /= BigRational::from_integer(BigInt::from(p - 1));
    let tail_prefix: u64 = d[..k].iter().sum();
    let tail = big(pow(p, tail_prefix)) * BigRational::from_integer(BigInt::from(d[k] - d[k - 1]));
    let total = BigRational::one() + sum + tail;
    if !total.is_integer() {
        return Err(inconsistent(format!(
            "closed form for {shape} is not an integer: {total}"
        )));
    }
    total
        .to_integer()
        .to_biguint()
        .ok_or_else(|| inconsistent(format!("closed form for {shape} is negative")))
}

/// `1 + sum_i g_count(shape, i)`.
pub fn l1_abelian_by_orders(shape: &AbelianShape) -> Result<BigUint> {
    let top = *shape.parts().last().expect("nonempty") as u64;
    let mut total = BigUint::one();
    for i in 1..=top {
        total += g_count(shape, i)?;
    }
    Ok(total)
}

/// Total number of cyclic subgroups of the abelian p-group with this shape.
/// Both closed forms are evaluated; a disagreement is an error.
pub fn l1_abelian(shape: &AbelianShape) -> Result<BigUint> {
    let direct = l1_abelian_direct(shape)?;
    let by_orders = l1_abelian_by_orders(shape)?;
    if direct != by_orders {
        return Err(inconsistent(format!(
            "closed forms disagree for {shape}: {direct} vs {by_orders}"
        )));
    }
    Ok(direct)
}

/// `alpha` of an abelian p-group from its shape.
pub fn alpha_abelian(shape: &AbelianShape) -> Result<AlphaValue> {
    let order = pow(shape.p(), shape.exponent_of_order() as u64);
    AlphaValue::new(l1_abelian(shape)?, order)
}

/// `alpha(Z_p^n)` for the elementary abelian group of rank `n`.
pub fn alpha_elementary(p: u64, n: u32) -> Result<AlphaValue> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("rank must be positive".into()));
    }
    let order = pow(p, n as u64);
    let l1 = BigUint::one() + (&order - 1u32) / (p - 1);
    AlphaValue::new(l1, order)
}

/// The non-abelian 2-groups with a cyclic maximal subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Modular,
    Dihedral,
    GeneralizedQuaternion,
    QuasiDihedral,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::Modular,
        FamilyKind::Dihedral,
        FamilyKind::GeneralizedQuaternion,
        FamilyKind::QuasiDihedral,
    ];

    /// Smallest `n` for which the group of order `2^n` belongs to the family.
    pub fn min_n(self) -> u32 {
        match self {
            FamilyKind::Modular | FamilyKind::QuasiDihedral => 4,
            FamilyKind::Dihedral | FamilyKind::GeneralizedQuaternion => 3,
        }
    }

    /// Descriptor atom name.
    pub fn atom(self) -> &'static str {
        match self {
            FamilyKind::Modular => "M",
            FamilyKind::Dihedral => "D",
            FamilyKind::GeneralizedQuaternion => "Q",
            FamilyKind::QuasiDihedral => "SD",
        }
    }

    /// `|L1|` as a rational function of `n`, defined for every `n >= 1`
    /// even where no group exists.
    pub fn l1_expression(self, n: u32) -> BigRational {
        let two_pow = |e: i64| -> BigRational {
            if e >= 0 {
                BigRational::from_integer(BigInt::from(2u32).pow(e as u32))
            } else {
                BigRational::new(BigInt::one(), BigInt::from(2u32).pow((-e) as u32))
            }
        };
        let n_big = BigRational::from_integer(BigInt::from(n));
        let n_i = n as i64;
        match self {
            FamilyKind::Modular => n_big * BigRational::from_integer(BigInt::from(2)),
            FamilyKind::Dihedral => two_pow(n_i - 1) + n_big,
            FamilyKind::GeneralizedQuaternion => two_pow(n_i - 2) + n_big,
            FamilyKind::QuasiDihedral => {
                BigRational::from_integer(BigInt::from(3)) * two_pow(n_i - 3) + n_big
            }
        }
    }

    /// `l1_expression(n) / 2^n`.
    pub fn alpha_expression(self, n: u32) -> BigRational {
        self.l1_expression(n) / BigRational::from_integer(BigInt::from(2u32).pow(n))
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Modular => "modular",
            FamilyKind::Dihedral => "dihedral",
            FamilyKind::GeneralizedQuaternion => "generalized-quaternion",
            FamilyKind::QuasiDihedral => "quasi-dihedral",
        })
    }
}

impl FromStr for FamilyKind {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "modular" => Ok(FamilyKind::Modular),
            "dihedral" => Ok(FamilyKind::Dihedral),
            "generalized-quaternion" => Ok(FamilyKind::GeneralizedQuaternion),
            "quasi-dihedral" => Ok(FamilyKind::QuasiDihedral),
            _ => Err(GroupError::InvalidParameter(format!(
                "unknown family {s:?}"
            ))),
        }
    }
}

/// `|L1|` for the member of order `2^n`.
pub fn l1_maximal_cyclic(kind: FamilyKind, n: u32) -> Result<BigUint> {
    if n < kind.min_n() || n > 63 {
        return Err(GroupError::InvalidParameter(format!(
            "n={n} outside the valid range for the {kind} family"
        )));
    }
    let v = kind.l1_expression(n);
    debug_assert!(v.is_integer());
    Ok(v.to_integer().to_biguint().expect("positive"))
}

/// `(n_2, n_4)` of `D8 * G1` of order `2^n`, given `n_2(G1)`.
pub fn central_product_counts(n: u32, n2_of_g1: u64) -> Result<(BigUint, BigUint)> {
    if n < 4 {
        return Err(GroupError::InvalidParameter(format!(
            "n={n} must be at least 4"
        )));
    }
    let n2_g1 = BigUint::from(n2_of_g1);
    let n2 = pow(2, n as u64 - 2) + 2u32 * &n2_g1 + 1u32;
    let positive = BigUint::from(3u32) * pow(2, n as u64 - 3);
    let subtract = &n2_g1 + 1u32;
    if subtract > positive {
        return Err(GroupError::InvalidParameter(format!(
            "n2(G1)={n2_of_g1} is too large for order 2^{n}"
        )));
    }
    Ok((n2, positive - subtract))
}

/// `|L1(Dic(A))| = |L1(A)| + 2^(n-2)` where the dicyclic group has order `2^n`.
pub fn l1_dicyclic(l1_a: u64, n: u32) -> Result<BigUint> {
    if l1_a == 0 || n < 2 {
        return Err(GroupError::InvalidParameter(format!("l1={l1_a}, n={n}")));
    }
    Ok(BigUint::from(l1_a) + pow(2, n as u64 - 2))
}

/// `|L1(D(G))| = |L1(G)| + |G|`.
pub fn l1_gen_dihedral(l1_g: u64, order_g: u64) -> Result<BigUint> {
    if l1_g == 0 || order_g == 0 {
        return Err(GroupError::InvalidParameter(format!(
            "l1={l1_g}, order={order_g}"
        )));
    }
    Ok(BigUint::from(l1_g) + order_g)
}

/// `(n_2, n_8)` of `Z_2^n x Z_4^a x Z_8^b`.
pub fn special_profile_n2_n8(n: u32, a: u32, b: u32) -> Result<(BigUint, BigUint)> {
    if a == 0 && b == 0 {
        return Err(GroupError::InvalidParameter(
            "a and b cannot both be zero".into(),
        ));
    }
    let (n, a, b) = (n as u64, a as u64, b as u64);
    let n2 = pow(2, n + a + b) - 1u32;
    let n8 = pow(2, n + 2 * a + 2 * b - 2) * (pow(2, b) - 1u32);
    Ok((n2, n8))
}

pub fn alpha_of(l1: impl Into<BigUint>, order: impl Into<BigUint>) -> Result<AlphaValue> {
    let order = order.into();
    if order.is_zero() {
        return Err(GroupError::InvalidParameter(
            "order must be positive".into(),
        ));
    }
    AlphaValue::new(l1, order)
}

pub fn alpha_product(values: &[AlphaValue]) -> AlphaValue {
    AlphaValue::product(values)
}

/// Small convenience for callers holding machine integers.
pub fn to_u64(v: &BigUint) -> Option<u64> {
    v.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(p: u64, parts: &[u32]) -> AbelianShape {
        AbelianShape::new(p, parts.to_vec()).unwrap()
    }

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn h_values() {
        assert_eq!(h_value(&shape(2, &[1, 2]), 0).unwrap(), b(1));
        assert_eq!(h_value(&shape(2, &[1, 2]), 1).unwrap(), b(2));
        assert_eq!(h_value(&shape(2, &[2, 2]), 2).unwrap(), b(4));
        // single factor: the empty product group
        assert_eq!(h_value(&shape(3, &[4]), 3).unwrap(), b(1));
    }

    #[test]
    fn g_counts() {
        assert_eq!(g_count(&shape(2, &[1, 2]), 1).unwrap(), b(3));
        assert_eq!(g_count(&shape(2, &[1, 2]), 2).unwrap(), b(2));
        assert_eq!(g_count(&shape(2, &[1, 1, 1]), 1).unwrap(), b(7));
        assert!(matches!(
            g_count(&shape(2, &[1, 2]), 0),
            Err(GroupError::InvalidParameter(_))
        ));
        assert!(matches!(
            g_count(&shape(2, &[1, 2]), 3),
            Err(GroupError::InvalidParameter(_))
        ));
    }

    #[test]
    fn l1_values() {
        assert_eq!(l1_abelian(&shape(2, &[1, 2])).unwrap(), b(6));
        assert_eq!(
            alpha_abelian(&shape(2, &[1, 2])).unwrap(),
            AlphaValue::ratio(3, 4)
        );
        assert_eq!(l1_abelian(&shape(2, &[2, 2])).unwrap(), b(10));
        assert_eq!(
            alpha_abelian(&shape(2, &[2, 2])).unwrap(),
            AlphaValue::ratio(5, 8)
        );
        for p in [2, 3, 5, 7] {
            for n in 1..=6u32 {
                let ones = shape(p, &vec![1; n as usize]);
                let expected = 1 + (p.pow(n) - 1) / (p - 1);
                assert_eq!(l1_abelian(&ones).unwrap(), b(expected));
            }
        }
    }

    #[test]
    fn single_factor_collapses_to_cyclic_count() {
        for p in [2, 3, 5] {
            for d in 1..=12u32 {
                assert_eq!(l1_abelian(&shape(p, &[d])).unwrap(), b(d as u64 + 1));
            }
        }
    }

    #[test]
    fn maximal_cyclic_values() {
        assert_eq!(l1_maximal_cyclic(FamilyKind::Dihedral, 4).unwrap(), b(12));
        assert_eq!(
            l1_maximal_cyclic(FamilyKind::QuasiDihedral, 4).unwrap(),
            b(10)
        );
        assert_eq!(
            l1_maximal_cyclic(FamilyKind::GeneralizedQuaternion, 3).unwrap(),
            b(5)
        );
        assert_eq!(l1_maximal_cyclic(FamilyKind::Modular, 4).unwrap(), b(8));
        assert!(l1_maximal_cyclic(FamilyKind::Modular, 3).is_err());
        assert!(l1_maximal_cyclic(FamilyKind::Dihedral, 2).is_err());
        assert_eq!(
            FamilyKind::GeneralizedQuaternion.alpha_expression(1),
            BigRational::new(BigInt::from(3), BigInt::from(4))
        );
    }

    #[test]
    fn central_product_count_values() {
        assert_eq!(central_product_counts(5, 1).unwrap(), (b(11), b(10)));
        assert_eq!(central_product_counts(5, 5).unwrap(), (b(19), b(6)));
        assert_eq!(central_product_counts(4, 1).unwrap(), (b(7), b(4)));
        assert!(central_product_counts(3, 1).is_err());
        assert!(central_product_counts(4, 10).is_err());
    }

    #[test]
    fn extension_sums() {
        assert_eq!(l1_dicyclic(8, 4).unwrap(), b(12));
        assert_eq!(l1_gen_dihedral(4, 8).unwrap(), b(12));
        for n in 1..=6u32 {
            let order = 1u64 << n;
            assert_eq!(l1_gen_dihedral(order, order).unwrap(), b(2 * order));
        }
        assert!(l1_dicyclic(0, 4).is_err());
        assert!(l1_gen_dihedral(1, 0).is_err());
    }

    #[test]
    fn special_profiles() {
        assert_eq!(special_profile_n2_n8(0, 0, 1).unwrap(), (b(1), b(1)));
        assert_eq!(special_profile_n2_n8(1, 0, 1).unwrap(), (b(3), b(2)));
        assert_eq!(special_profile_n2_n8(0, 1, 1).unwrap(), (b(3), b(4)));
        assert!(special_profile_n2_n8(3, 0, 0).is_err());
    }

    #[test]
    fn alpha_helpers() {
        assert_eq!(alpha_of(12u32, 16u32).unwrap(), AlphaValue::ratio(3, 4));
        assert_eq!(alpha_of(4u32, 8u32).unwrap(), AlphaValue::ratio(1, 2));
        assert!(alpha_of(1u32, 0u32).is_err());
        assert_eq!(
            alpha_product(&[AlphaValue::ratio(3, 4), AlphaValue::ratio(2, 3)]),
            AlphaValue::one_half()
        );
    }

    #[test]
    fn elementary_alpha_strictly_decreases_for_odd_primes() {
        for p in [3, 5, 7] {
            let values: Vec<AlphaValue> =
                (1..=12).map(|n| alpha_elementary(p, n).unwrap()).collect();
            assert!(values.windows(2).all(|w| w[1] < w[0]), "p={p}");
        }
        // for p = 2 the elementary abelian groups all have ratio 1
        assert!((1..=12).all(|n| alpha_elementary(2, n).unwrap().is_one()));
    }

    #[test]
    fn cyclic_alpha_strictly_decreases() {
        for p in [2, 3, 5] {
            let values: Vec<AlphaValue> = (1..=12)
                .map(|n| alpha_abelian(&shape(p, &[n])).unwrap())
                .collect();
            assert!(values.windows(2).all(|w| w[1] < w[0]), "p={p}");
        }
    }
}

//! Isomorphism types of abelian p-groups.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GroupError, Result};
use crate::group::{self, Group};

/// `Z_{p^d1} x ... x Z_{p^dk}` with `1 <= d1 <= ... <= dk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianShape {
    p: u64,
    parts: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Prime factorization as `(p, multiplicity)` pairs in increasing `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut k = 0;
        while n.is_multiple_of(d) {
            n /= d;
            k += 1;
        }
        if k > 0 {
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl AbelianShape {
    pub fn new(p: u64, parts: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(GroupError::InvalidParameter(format!("{p} is not prime")));
        }
        if parts.is_empty() {
            return Err(GroupError::InvalidParameter("empty partition".into()));
        }
        if parts.contains(&0) {
            return Err(GroupError::InvalidParameter(
                "partition parts must be >= 1".into(),
            ));
        }
        if parts.windows(2).any(|w| w[0] > w[1]) {
            return Err(GroupError::InvalidParameter(format!(
                "partition {parts:?} is not nondecreasing"
            )));
        }
        Ok(Self { p, parts })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    /// `n` with `|G| = p^n`.
    pub fn exponent_of_order(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.exponent_of_order())
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.parts.iter().map(|&d| self.p.pow(d)).collect()
    }

    pub fn build(&self) -> Result<Group> {
        group::abelian(&self.moduli())
    }

    pub fn is_elementary(&self) -> bool {
        self.parts.iter().all(|&d| d == 1)
    }

    /// `(1, ..., 1, top)` with any number (possibly zero) of leading ones.
    pub fn is_ones_then(&self, top: u32) -> bool {
        match self.parts.split_last() {
            Some((&last, rest)) => last == top && rest.iter().all(|&d| d == 1),
            None => false,
        }
    }
}

impl fmt::Display for AbelianShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} (", self.p)?;
        for (i, d) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// All partitions of `n`, each as a nondecreasing list.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(remaining: u32, min: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in min..=remaining {
            if part < remaining && remaining - part < part {
                continue;
            }
            current.push(part);
            go(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, 1, &mut Vec::new(), &mut out);
    }
    out
}

/// Every abelian p-group shape with `1 < p^n <= max_order`.
pub fn shapes_up_to(p: u64, max_order: u64) -> Vec<AbelianShape> {
    let mut out = Vec::new();
    let mut n = 1u32;
    while (p as u128).pow(n) <= max_order as u128 {
        for parts in partitions(n) {
            out.push(AbelianShape { p, parts });
        }
        n += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert!(partitions(0).is_empty());
        for p in partitions(8) {
            assert_eq!(p.iter().sum::<u32>(), 8);
            assert!(p.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn shape_validation() {
        assert!(AbelianShape::new(4, vec![1]).is_err());
        assert!(AbelianShape::new(2, vec![]).is_err());
        assert!(AbelianShape::new(2, vec![2, 1]).is_err());
        assert!(AbelianShape::new(2, vec![0, 1]).is_err());
        let s = AbelianShape::new(2, vec![1, 1, 2]).unwrap();
        assert!(s.is_ones_then(2));
        assert!(!s.is_ones_then(3));
        assert_eq!(s.order(), 16);
        assert_eq!(s.moduli(), vec![2, 2, 4]);
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert!(is_prime(97) && !is_prime(91) && !is_prime(1));
    }

    #[test]
    fn shapes_enumeration() {
        assert_eq!(shapes_up_to(2, 16).len(), 1 + 2 + 3 + 5);
        assert_eq!(shapes_up_to(3, 26).len(), 1 + 2);
    }
}

//! Brute-force structural analysis of constructed groups.
//!
//! Cyclic subgroups are counted through element orders: a cyclic subgroup
//! of order `d` has exactly `phi(d)` generators, so `n_d = c_d / phi(d)`.
//! [`cyclic_census_bruteforce`] materializes every `<g>` instead and is kept
//! as an independent witness.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::alpha::AlphaValue;
use crate::error::{GroupError, Result};
use crate::group::{Element, ElementSet, Group};
use crate::shape::{factorize, AbelianShape};

/// Order caps for the exhaustive algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub census: u64,
    pub bruteforce: u64,
    pub associativity: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            census: 1 << 12,
            bruteforce: 1 << 10,
            associativity: 1 << 8,
        }
    }
}

impl Limits {
    fn check(order: u64, cap: u64) -> Result<()> {
        if order > cap {
            Err(GroupError::CapExceeded {
                order: order as u128,
                cap,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_census(&self, g: &Group) -> Result<()> {
        Self::check(g.order(), self.census)
    }

    pub fn check_bruteforce(&self, g: &Group) -> Result<()> {
        Self::check(g.order(), self.bruteforce)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderProfile {
    /// element order `d` -> number of elements of order `d`
    pub counts: BTreeMap<u64, u64>,
    pub exponent: u64,
    pub involutions: u64,
}

impl OrderProfile {
    pub fn from_counts(counts: BTreeMap<u64, u64>) -> Self {
        let exponent = counts.keys().copied().max().unwrap_or(1);
        let involutions = counts.get(&2).copied().unwrap_or(0);
        OrderProfile {
            counts,
            exponent,
            involutions,
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, d: u64) -> u64 {
        self.counts.get(&d).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicCensus {
    /// subgroup order `d` -> number of cyclic subgroups of order `d`
    pub counts: BTreeMap<u64, u64>,
    pub l1: u64,
    pub alpha: AlphaValue,
}

impl CyclicCensus {
    pub fn count(&self, d: u64) -> u64 {
        self.counts.get(&d).copied().unwrap_or(0)
    }

    fn from_counts(counts: BTreeMap<u64, u64>, order: u64) -> Self {
        let l1 = counts.values().sum();
        CyclicCensus {
            counts,
            l1,
            alpha: AlphaValue::ratio(l1, order),
        }
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn order_profile(g: &Group) -> Result<OrderProfile> {
    order_profile_with(g, &Limits::default())
}

pub fn order_profile_with(g: &Group, limits: &Limits) -> Result<OrderProfile> {
    limits.check_census(g)?;
    let mut counts = BTreeMap::new();
    for x in g.elements() {
        *counts.entry(g.order_of_member(&x)).or_insert(0) += 1;
    }
    Ok(OrderProfile::from_counts(counts))
}

/// Cyclic subgroup counts derived from an order profile.
pub fn census_from_profile(profile: &OrderProfile) -> Result<CyclicCensus> {
    let mut counts = BTreeMap::new();
    for (&d, &c) in &profile.counts {
        let phi = euler_phi(d);
        if c % phi != 0 {
            return Err(GroupError::InternalInconsistency(format!(
                "{c} elements of order {d} is not a multiple of phi({d}) = {phi}"
            )));
        }
        counts.insert(d, c / phi);
    }
    Ok(CyclicCensus::from_counts(counts, profile.total()))
}

pub fn cyclic_census(g: &Group) -> Result<CyclicCensus> {
    cyclic_census_with(g, &Limits::default())
}

pub fn cyclic_census_with(g: &Group, limits: &Limits) -> Result<CyclicCensus> {
    census_from_profile(&order_profile_with(g, limits)?)
}

/// Independent census: build `<g>` for every element and deduplicate the
/// resulting element sets.
pub fn cyclic_census_bruteforce(g: &Group) -> Result<CyclicCensus> {
    cyclic_census_bruteforce_with(g, &Limits::default())
}

pub fn cyclic_census_bruteforce_with(g: &Group, limits: &Limits) -> Result<CyclicCensus> {
    limits.check_bruteforce(g)?;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for x in g.elements() {
        let mut members = Vec::new();
        let mut acc = g.identity();
        loop {
            members.push(g.index_of(&acc).expect("power of a member"));
            acc = g.multiply(&acc, &x);
            if g.is_identity(&acc) {
                break;
            }
        }
        members.sort_unstable();
        seen.insert(members);
    }
    let mut counts = BTreeMap::new();
    for s in &seen {
        *counts.entry(s.len() as u64).or_insert(0) += 1;
    }
    Ok(CyclicCensus::from_counts(counts, g.order()))
}

/// Least subgroup containing `gens`, by closure under right multiplication.
pub fn generated_subgroup(g: &Group, gens: &[Element]) -> Result<ElementSet> {
    if let Some(bad) = gens.iter().find(|x| !g.contains(x)) {
        return Err(GroupError::InvalidElement(bad.to_string()));
    }
    let mut gens: Vec<&Element> = gens.iter().filter(|x| !g.is_identity(x)).collect();
    gens.sort();
    gens.dedup();
    let id = g.identity();
    let mut seen: HashSet<Element> = HashSet::from([id.clone()]);
    let mut work = vec![id];
    while let Some(x) = work.pop() {
        for s in &gens {
            let y = g.multiply(&x, s);
            if seen.insert(y.clone()) {
                work.push(y);
            }
        }
    }
    Ok(ElementSet::new(seen))
}

fn all_commutators(g: &Group) -> Vec<Element> {
    let elems: Vec<Element> = g.elements().collect();
    let mut out: HashSet<Element> = HashSet::new();
    for a in &elems {
        for b in &elems {
            out.insert(g.commutator(a, b));
        }
    }
    out.into_iter().collect()
}

pub fn commutator_subgroup(g: &Group) -> Result<ElementSet> {
    Limits::default().check_census(g)?;
    generated_subgroup(g, &all_commutators(g))
}

/// `Phi(G) = G' G^p` for a p-group.
pub fn frattini_pgroup(g: &Group, p: u64) -> Result<ElementSet> {
    Limits::default().check_census(g)?;
    let f = factorize(g.order());
    if g.order() > 1 && (f.len() != 1 || f[0].0 != p) {
        return Err(GroupError::InvalidParameter(format!(
            "order {} is not a power of {p}",
            g.order()
        )));
    }
    let mut gens = all_commutators(g);
    gens.extend(g.elements().map(|x| g.power(&x, p)));
    generated_subgroup(g, &gens)
}

pub fn center(g: &Group) -> Result<ElementSet> {
    Limits::default().check_census(g)?;
    Ok(ElementSet::new(g.elements().filter(|z| g.is_central(z))))
}

/// Upper central series reaches the whole group.
pub fn is_nilpotent(g: &Group) -> Result<bool> {
    Limits::default().check_census(g)?;
    let n = g.order() as usize;
    let elems: Vec<Element> = g.elements().collect();
    let index = |x: &Element| g.index_of(x).expect("member");
    let mut layer = vec![false; n];
    layer[index(&g.identity())] = true;
    let mut size = 1;
    loop {
        let next: Vec<bool> = elems
            .iter()
            .enumerate()
            .map(|(i, x)| layer[i] || elems.iter().all(|y| layer[index(&g.commutator(x, y))]))
            .collect();
        let next_size = next.iter().filter(|&&b| b).count();
        if next_size == size {
            return Ok(size == n);
        }
        layer = next;
        size = next_size;
    }
}

/// Invariant factors of an abelian group, one shape per prime divisor of
/// the order, recovered from `s_i = #{g : g^(p^i) = 1}`.
pub fn abelian_invariants(a: &Group) -> Result<Vec<AbelianShape>> {
    if !a.is_abelian() {
        return Err(GroupError::InvalidParameter(
            "abelian invariants need an abelian group".into(),
        ));
    }
    let orders: Vec<u64> = a.elements().map(|x| a.order_of_member(&x)).collect();
    let mut shapes = Vec::new();
    for (p, full) in factorize(a.order()) {
        // s_i counts elements whose order divides p^i
        let p_part = |o: u64| {
            let mut k = 0u32;
            let mut o = o;
            while o.is_multiple_of(p) {
                o /= p;
                k += 1;
            }
            (o, k)
        };
        let mut s = vec![1u64];
        let target = p.pow(full);
        let mut i = 1u32;
        while *s.last().expect("nonempty") < target {
            let c = orders
                .iter()
                .filter(|&&o| {
                    let (rest, k) = p_part(o);
                    rest == 1 && k <= i
                })
                .count() as u64;
            s.push(c);
            i += 1;
        }
        // e_i = log_p(s_i / s_{i-1}) counts factors of exponent >= i
        let mut e = Vec::new();
        for w in s.windows(2) {
            let mut q = w[1] / w[0];
            let mut k = 0u32;
            while q > 1 {
                if q % p != 0 {
                    return Err(GroupError::InternalInconsistency(format!(
                        "s-ratio {q} is not a power of {p}"
                    )));
                }
                q /= p;
                k += 1;
            }
            e.push(k);
        }
        e.push(0);
        let mut parts = Vec::new();
        for (idx, w) in e.windows(2).enumerate() {
            let exact = w[0].checked_sub(w[1]).ok_or_else(|| {
                GroupError::InternalInconsistency("s-ratios are not nonincreasing".into())
            })?;
            parts.extend(std::iter::repeat_n(idx as u32 + 1, exact as usize));
        }
        shapes.push(AbelianShape::new(p, parts)?);
    }
    Ok(shapes)
}

/// Every non-identity element of the set has order 2 (the trivial group
/// included).
pub fn is_elementary_abelian_2(g: &Group, set: &ElementSet) -> bool {
    set.iter().all(|x| g.is_identity(&g.multiply(x, x)))
}

//! Verification campaigns over the constructible families.
//!
//! A campaign enumerates group descriptors, evaluates each one (in parallel
//! on the current rayon pool) and tallies named checks. Every failure is
//! recorded with the canonical descriptor of the offending group so that it
//! can be rebuilt and examined on its own.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alpha::AlphaValue;
use crate::census::{
    abelian_invariants, center, commutator_subgroup, cyclic_census, cyclic_census_bruteforce,
    frattini_pgroup, generated_subgroup, is_elementary_abelian_2, is_nilpotent, order_profile,
    CyclicCensus, Limits, OrderProfile,
};
use crate::descriptor::Descriptor;
use crate::error::{GroupError, Result};
use crate::formulas::{self, FamilyKind};
use crate::group::{self, ElementSet, Group};
use crate::shape::{partitions, shapes_up_to, AbelianShape};

/// Membership in the class: nilpotent with ratio exactly 3/4.
pub fn is_in_class(g: &Group) -> Result<bool> {
    let census = cyclic_census(g)?;
    Ok(census.alpha == AlphaValue::three_quarters() && is_nilpotent(g)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub name: String,
    pub evaluated: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub descriptor: String,
    pub check: String,
    pub detail: String,
}

impl Counterexample {
    /// Rebuild the group the failure was observed on.
    pub fn reproduce(&self) -> Result<Group> {
        let d: Descriptor =
            self.descriptor
                .parse()
                .map_err(|e: crate::descriptor::ParseError| {
                    GroupError::InvalidParameter(e.to_string())
                })?;
        d.build()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub campaign: String,
    pub parameters: BTreeMap<String, String>,
    pub groups_examined: usize,
    pub checks: Vec<CheckTally>,
    pub counterexamples: Vec<Counterexample>,
    /// Canonical descriptors of the class members encountered.
    pub members: Vec<String>,
    pub observations: Vec<String>,
    pub wall_time_ms: u64,
    pub status: Status,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn check(&self, name: &str) -> Option<&CheckTally> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Default)]
struct Tally {
    examined: usize,
    checks: Vec<CheckTally>,
    counterexamples: Vec<Counterexample>,
    members: Vec<String>,
    observations: Vec<String>,
}

impl Tally {
    fn check(&mut self, name: &str, descriptor: &str, ok: bool, detail: impl FnOnce() -> String) {
        let slot = match self.checks.iter_mut().position(|c| c.name == name) {
            Some(i) => i,
            None => {
                self.checks.push(CheckTally {
                    name: name.to_string(),
                    evaluated: 0,
                    failed: 0,
                });
                self.checks.len() - 1
            }
        };
        self.checks[slot].evaluated += 1;
        if !ok {
            self.checks[slot].failed += 1;
            self.counterexamples.push(Counterexample {
                descriptor: descriptor.to_string(),
                check: name.to_string(),
                detail: detail(),
            });
        }
    }

    fn error(&mut self, descriptor: &str, err: &GroupError) {
        self.check("evaluation", descriptor, false, || err.to_string());
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.examined += other.examined;
        for c in other.checks {
            match self.checks.iter_mut().find(|x| x.name == c.name) {
                Some(x) => {
                    x.evaluated += c.evaluated;
                    x.failed += c.failed;
                }
                None => self.checks.push(c),
            }
        }
        self.counterexamples.extend(other.counterexamples);
        self.members.extend(other.members);
        self.observations.extend(other.observations);
        self
    }

    fn finish(
        mut self,
        campaign: &str,
        parameters: BTreeMap<String, String>,
        started: Instant,
    ) -> CampaignReport {
        self.members.sort();
        self.members.dedup();
        let status = if self.counterexamples.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        CampaignReport {
            campaign: campaign.to_string(),
            parameters,
            groups_examined: self.examined,
            checks: self.checks,
            counterexamples: self.counterexamples,
            members: self.members,
            observations: self.observations,
            wall_time_ms: started.elapsed().as_millis() as u64,
            status,
        }
    }
}

/// Evaluate `work` over `items` on the rayon pool and merge the tallies in
/// input order.
fn parallel<T: Sync>(items: &[T], work: impl Fn(&T, &mut Tally) + Sync) -> Tally {
    items
        .par_iter()
        .map(|item| {
            let mut t = Tally::default();
            work(item, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

/// A built group with its exhaustive census.
struct Sample {
    name: String,
    group: Group,
    profile: OrderProfile,
    census: CyclicCensus,
}

impl Sample {
    fn new(d: &Descriptor) -> Result<Sample> {
        let group = d.build()?;
        let profile = order_profile(&group)?;
        let census = crate::census::census_from_profile(&profile)?;
        Ok(Sample {
            name: d.canonical_string(),
            group,
            profile,
            census,
        })
    }

    fn in_class(&self) -> Result<bool> {
        Ok(self.census.alpha == AlphaValue::three_quarters() && is_nilpotent(&self.group)?)
    }

    fn log2_order(&self) -> u32 {
        self.group.order().trailing_zeros()
    }
}

fn shape_descriptor(shape: &AbelianShape) -> Descriptor {
    let mut ops = Vec::new();
    let parts = shape.parts();
    let mut i = 0;
    while i < parts.len() {
        let d = parts[i];
        let run = parts[i..].iter().take_while(|&&x| x == d).count();
        let m = shape.p().pow(d);
        ops.push(if run == 1 {
            Descriptor::Cyclic(m)
        } else {
            Descriptor::CyclicPower(m, run as u32)
        });
        i += run;
    }
    if ops.len() == 1 {
        ops.pop().expect("one factor")
    } else {
        Descriptor::Direct(ops).canonical()
    }
}

/// Descriptor of `Z_p^{d1} x ... ` for the given shape.
pub fn descriptor_for_shape(shape: &AbelianShape) -> Descriptor {
    shape_descriptor(shape)
}

fn elementary_times(base: Descriptor, rank: u32) -> Descriptor {
    match rank {
        0 => base,
        1 => Descriptor::Direct(vec![base, Descriptor::Cyclic(2)]).canonical(),
        k => Descriptor::Direct(vec![base, Descriptor::CyclicPower(2, k)]).canonical(),
    }
}

fn single_2_shape(g: &Group) -> Result<Option<AbelianShape>> {
    let shapes = abelian_invariants(g)?;
    Ok(match shapes.as_slice() {
        [s] if s.p() == 2 => Some(s.clone()),
        _ => None,
    })
}

/// The campaigns known to [`run_campaign`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Campaign {
    AbelianClassification,
    Extraspecial,
    AlmostExtraspecial,
    Dicyclic,
    GenDihedral,
    MaximalCyclic,
    Involutions,
    Structure,
    Properties,
}

impl Campaign {
    pub const ALL: [Campaign; 9] = [
        Campaign::AbelianClassification,
        Campaign::Extraspecial,
        Campaign::AlmostExtraspecial,
        Campaign::Dicyclic,
        Campaign::GenDihedral,
        Campaign::MaximalCyclic,
        Campaign::Involutions,
        Campaign::Structure,
        Campaign::Properties,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Campaign::AbelianClassification => "abelian",
            Campaign::Extraspecial => "extraspecial",
            Campaign::AlmostExtraspecial => "almost-extraspecial",
            Campaign::Dicyclic => "dicyclic",
            Campaign::GenDihedral => "gen-dihedral",
            Campaign::MaximalCyclic => "maximal-cyclic",
            Campaign::Involutions => "involutions",
            Campaign::Structure => "structure",
            Campaign::Properties => "properties",
        }
    }

    /// Order bound used when the caller gives none.
    pub fn default_cap(self) -> u64 {
        match self {
            Campaign::AbelianClassification => 1 << 10,
            Campaign::Extraspecial => 1 << 7,
            Campaign::Dicyclic => 1 << 7,
            Campaign::MaximalCyclic => 1 << 12,
            _ => 1 << 8,
        }
    }
}

impl fmt::Display for Campaign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Campaign {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        Campaign::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Campaign::ALL.iter().map(|c| c.name()).collect();
                GroupError::InvalidParameter(format!(
                    "unknown campaign {s:?}; known: {}",
                    names.join(", ")
                ))
            })
    }
}

pub fn run_campaign(campaign: Campaign, cap: Option<u64>) -> Result<CampaignReport> {
    let cap = cap.unwrap_or(campaign.default_cap());
    match campaign {
        Campaign::AbelianClassification => {
            if cap < 2 {
                return Err(GroupError::InvalidParameter(format!(
                    "cap {cap} is below 2"
                )));
            }
            verify_abelian_classification(63 - cap.leading_zeros())
        }
        Campaign::Extraspecial => verify_extraspecial(cap),
        Campaign::AlmostExtraspecial => verify_almost_extraspecial(cap),
        Campaign::Dicyclic => verify_dicyclic(cap),
        Campaign::GenDihedral => verify_gen_dihedral(cap),
        Campaign::MaximalCyclic => verify_maximal_cyclic(cap),
        Campaign::Involutions => verify_involution_corpus(cap),
        Campaign::Structure => verify_structure_corpus(cap),
        Campaign::Properties => verify_basic_properties(cap),
    }
}

fn check_cap_within(cap: u64, limit: u64) -> Result<()> {
    if cap > limit {
        Err(GroupError::CapExceeded {
            order: cap as u128,
            cap: limit,
        })
    } else {
        Ok(())
    }
}

/// Abelian 2-groups of order up to `2^max_exponent`: ratio 3/4 exactly for
/// `(1,...,1,2)` and ratio 1/2 exactly for `(1,...,1,3)`.
pub fn verify_abelian_classification(max_exponent: u32) -> Result<CampaignReport> {
    let started = Instant::now();
    if max_exponent == 0 || max_exponent > 40 {
        return Err(GroupError::InvalidParameter(format!(
            "max exponent {max_exponent} outside 1..=40"
        )));
    }
    let limits = Limits::default();
    let shapes: Vec<AbelianShape> = (1..=max_exponent)
        .flat_map(|n| {
            partitions(n)
                .into_iter()
                .map(|p| AbelianShape::new(2, p).expect("valid"))
        })
        .collect();
    let mut tally = parallel(&shapes, |shape, t| {
        t.examined += 1;
        let name = shape_descriptor(shape).to_string();
        let alpha = match formulas::alpha_abelian(shape) {
            Ok(a) => a,
            Err(e) => return t.error(&name, &e),
        };
        let in_class = alpha == AlphaValue::three_quarters();
        t.check(
            "alpha = 3/4 iff Z2^n x Z4",
            &name,
            in_class == shape.is_ones_then(2),
            || format!("alpha = {alpha}"),
        );
        t.check(
            "alpha = 1/2 iff Z2^n x Z8",
            &name,
            (alpha == AlphaValue::one_half()) == shape.is_ones_then(3),
            || format!("alpha = {alpha}"),
        );
        t.check(
            "alpha = 1 iff elementary abelian",
            &name,
            alpha.is_one() == shape.is_elementary(),
            || format!("alpha = {alpha}"),
        );
        if in_class {
            t.members.push(name.clone());
        }
        if shape.order() <= limits.bruteforce as u128 {
            let brute = shape.build().and_then(|g| cyclic_census_bruteforce(&g));
            match brute {
                Ok(c) => t.check(
                    "closed form matches brute force",
                    &name,
                    alpha == c.alpha,
                    || format!("closed form {alpha}, brute force {}", c.alpha),
                ),
                Err(e) => t.error(&name, &e),
            }
        }
    });
    tally.observations.push(format!(
        "partitions at order 2^{max_exponent}: {}",
        partitions(max_exponent).len()
    ));
    Ok(tally.finish(
        "abelian",
        params(&[("max_exponent", max_exponent.to_string())]),
        started,
    ))
}

/// Structural alternative satisfied by a class member: `G' = Phi(G)`, or
/// `G/G'` is `Z2^n x Z4` with `G'` elementary abelian.
pub fn verify_structure(g: &Group, name: &str) -> Result<CampaignReport> {
    let started = Instant::now();
    if !is_in_class(g)? {
        return Err(GroupError::InvalidParameter(format!(
            "{name} is not in the class"
        )));
    }
    let mut t = Tally {
        examined: 1,
        ..Tally::default()
    };
    check_structure(g, name, &mut t)?;
    Ok(t.finish("structure", params(&[("group", name.to_string())]), started))
}

fn check_structure(g: &Group, name: &str, t: &mut Tally) -> Result<()> {
    t.check(
        "order is a power of 2",
        name,
        g.order().is_power_of_two(),
        || format!("order {}", g.order()),
    );
    if !g.order().is_power_of_two() {
        return Ok(());
    }
    let derived = commutator_subgroup(g)?;
    let frattini = frattini_pgroup(g, 2)?;
    let first = derived == frattini;
    let second = if first {
        false
    } else {
        let abelianization = group::quotient(g, &derived)?;
        let shape = single_2_shape(&abelianization)?;
        shape.is_some_and(|s| s.is_ones_then(2)) && is_elementary_abelian_2(g, &derived)
    };
    t.check(
        "G' = Phi(G) or G/G' = Z2^n x Z4 with G' elementary",
        name,
        first || second,
        || format!("|G'| = {}, |Phi| = {}", derived.len(), frattini.len()),
    );
    Ok(())
}

/// For a 2-group of exponent 4: membership iff `I(G) = 2^(n-1) - 1`, and
/// iff `n_4(G) = 2^(n-2)`.
pub fn verify_involution_criterion(g: &Group, name: &str) -> Result<CampaignReport> {
    let started = Instant::now();
    let sample = Sample {
        name: name.to_string(),
        group: g.clone(),
        profile: order_profile(g)?,
        census: cyclic_census(g)?,
    };
    if sample.profile.exponent != 4 || !g.order().is_power_of_two() {
        return Err(GroupError::InvalidParameter(format!(
            "{name} is not a 2-group of exponent 4"
        )));
    }
    let mut t = Tally {
        examined: 1,
        ..Tally::default()
    };
    check_involutions(&sample, &mut t)?;
    Ok(t.finish(
        "involutions",
        params(&[("group", name.to_string())]),
        started,
    ))
}

fn check_involutions(s: &Sample, t: &mut Tally) -> Result<()> {
    let n = s.log2_order();
    let in_class = s.in_class()?;
    let inv = s.profile.involutions;
    let n4 = s.census.count(4);
    let name = &s.name;
    t.check(
        "in class iff I(G) = 2^(n-1) - 1",
        name,
        in_class == (inv == (1 << (n - 1)) - 1),
        || format!("I(G) = {inv}, in class = {in_class}"),
    );
    t.check(
        "in class iff n4 = 2^(n-2)",
        name,
        in_class == (n4 == 1 << (n - 2)),
        || format!("n4 = {n4}, in class = {in_class}"),
    );
    t.check(
        "2^n = 1 + n2 + 2 n4",
        name,
        1u64 << n == 1 + s.census.count(2) + 2 * n4,
        || format!("n2 = {}, n4 = {n4}", s.census.count(2)),
    );
    if in_class {
        t.members.push(name.clone());
    }
    Ok(())
}

fn central_product_counts_check(s: &Sample, g1: &Descriptor, t: &mut Tally) -> Result<()> {
    let inner = Sample::new(g1)?;
    let n = s.log2_order();
    let (n2, n4) = formulas::central_product_counts(n, inner.census.count(2))?;
    let got = (
        BigUint::from(s.census.count(2)),
        BigUint::from(s.census.count(4)),
    );
    t.check(
        "(n2, n4) of D8*G1 match the counting formula",
        &s.name,
        got == (n2.clone(), n4.clone()),
        || format!("brute force {got:?}, formula ({n2}, {n4}) with G1 = {g1}"),
    );
    Ok(())
}

fn extraspecial_orders(cap: u64) -> Vec<u64> {
    (1..)
        .map(|r| 1u64 << (2 * r + 1))
        .take_while(|&o| o <= cap)
        .collect()
}

fn almost_extraspecial_orders(cap: u64) -> Vec<u64> {
    (1..)
        .map(|r| 1u64 << (2 * r + 2))
        .take_while(|&o| o <= cap)
        .collect()
}

fn check_special_structure(s: &Sample, center_order: usize, t: &mut Tally) -> Result<()> {
    let derived = commutator_subgroup(&s.group)?;
    let frattini = frattini_pgroup(&s.group, 2)?;
    let z = center(&s.group)?;
    let cyclic_center = z.len() == center_order
        && generated_subgroup(&s.group, z.as_slice())?.len() == center_order
        && z.iter()
            .any(|x| s.group.order_of_member(x) == center_order as u64);
    t.check(
        "G' = Phi(G) of order 2 with the expected cyclic center",
        &s.name,
        derived.len() == 2 && derived == frattini && cyclic_center,
        || {
            format!(
                "|G'| = {}, |Phi| = {}, |Z| = {}",
                derived.len(),
                frattini.len(),
                z.len()
            )
        },
    );
    t.check("exponent 4", &s.name, s.profile.exponent == 4, || {
        format!("exponent {}", s.profile.exponent)
    });
    Ok(())
}

/// No extraspecial 2-group of order at most `cap` (either type) is in the class.
pub fn verify_extraspecial(cap: u64) -> Result<CampaignReport> {
    let started = Instant::now();
    check_cap_within(cap, Limits::default().census)?;
    let mut items = Vec::new();
    for order in extraspecial_orders(cap) {
        items.push(Descriptor::ExtraspecialPlus(order));
        items.push(Descriptor::ExtraspecialMinus(order));
    }
    let tally = parallel(&items, |d, t| {
        t.examined += 1;
        let result = (|| -> Result<()> {
            let s = Sample::new(d)?;
            let in_class = s.in_class()?;
            t.check(
                "extraspecial groups are not in the class",
                &s.name,
                !in_class,
                || format!("alpha = {}", s.census.alpha),
            );
            check_special_structure(&s, 2, t)?;
            check_involutions(&s, t)?;
            let order = s.group.order();
            if order >= 32 {
                let g1 = match d {
                    Descriptor::ExtraspecialPlus(_) => Descriptor::ExtraspecialPlus(order / 4),
                    _ => Descriptor::ExtraspecialMinus(order / 4),
                };
                central_product_counts_check(&s, &g1, t)?;
            }
            t.observations
                .push(format!("{}: alpha = {}", s.name, s.census.alpha));
            Ok(())
        })();
        if let Err(e) = result {
            t.error(&d.to_string(), &e);
        }
    });
    Ok(tally.finish("extraspecial", params(&[("cap", cap.to_string())]), started))
}

/// Every almost extraspecial 2-group of order at most `cap` has ratio
/// exactly 3/4.
pub fn verify_almost_extraspecial(cap: u64) -> Result<CampaignReport> {
    let started = Instant::now();
    check_cap_within(cap, Limits::default().census)?;
    let items: Vec<Descriptor> = almost_extraspecial_orders(cap)
        .into_iter()
        .map(Descriptor::AlmostExtraspecial)
        .collect();
    let tally = parallel(&items, |d, t| {
        t.examined += 1;
        let result = (|| -> Result<()> {
            let s = Sample::new(d)?;
            t.check(
                "almost extraspecial groups have alpha = 3/4",
                &s.name,
                s.census.alpha == AlphaValue::three_quarters(),
                || format!("alpha = {}", s.census.alpha),
            );
            check_special_structure(&s, 4, t)?;
            check_involutions(&s, t)?;
            let order = s.group.order();
            let g1 = if order == 16 {
                Descriptor::Cyclic(4)
            } else {
                Descriptor::AlmostExtraspecial(order / 4)
            };
            central_product_counts_check(&s, &g1, t)?;
            Ok(())
        })();
        if let Err(e) = result {
            t.error(&d.to_string(), &e);
        }
    });
    Ok(tally.finish(
        "almost-extraspecial",
        params(&[("cap", cap.to_string())]),
        started,
    ))
}

/// `Dic(A, z)` for every abelian 2-group `A` with `2|A| <= cap` and every
/// involution `z` of `A`.
pub fn verify_dicyclic(cap: u64) -> Result<CampaignReport> {
    let started = Instant::now();
    check_cap_within(cap, Limits::default().census)?;
    let bases = shapes_up_to(2, cap / 2);
    let mut tally = parallel(&bases, |shape, t| {
        let base_desc = shape_descriptor(shape);
        let result = (|| -> Result<()> {
            let base = Sample::new(&base_desc)?;
            let involutions = (1u64 << shape.rank()) - 1;
            let elementary = shape.is_elementary();
            t.check(
                "A elementary abelian iff |L1(A)| = |A|",
                &base.name,
                elementary == (base.census.l1 == base.group.order()),
                || format!("|L1(A)| = {}", base.census.l1),
            );
            let mut l1_values = BTreeSet::new();
            for k in 0..involutions as usize {
                t.examined += 1;
                let d = Descriptor::GenDicyclic(Box::new(base_desc.clone()), Some(k));
                let s = Sample::new(&d)?;
                let twisted_ok = s
                    .group
                    .elements()
                    .filter(|g| g.residues().last() == Some(&1))
                    .all(|g| s.group.order_of_member(&g) == 4);
                t.check(
                    "twisted elements have order 4",
                    &s.name,
                    twisted_ok,
                    String::new,
                );
                let predicted = formulas::l1_dicyclic(base.census.l1, s.log2_order())?;
                t.check(
                    "|L1(Dic(A))| = |L1(A)| + 2^(n-2)",
                    &s.name,
                    predicted == BigUint::from(s.census.l1),
                    || format!("brute force {}, formula {predicted}", s.census.l1),
                );
                let in_class = s.in_class()?;
                t.check(
                    "Dic(A) in class iff A elementary abelian",
                    &s.name,
                    in_class == elementary,
                    || format!("alpha = {}", s.census.alpha),
                );
                if elementary {
                    let shape_ok = single_2_shape(&s.group)?.is_some_and(|sh| sh.is_ones_then(2));
                    t.check(
                        "Dic over elementary A is Z2^n x Z4",
                        &s.name,
                        shape_ok,
                        String::new,
                    );
                }
                if in_class {
                    t.members.push(s.name.clone());
                }
                l1_values.insert(s.census.l1);
            }
            if l1_values.len() > 1 {
                t.observations.push(format!(
                    "{}: |L1| depends on gamma^2: {l1_values:?}",
                    base.name
                ));
            }
            Ok(())
        })();
        if let Err(e) = result {
            t.error(&base_desc.to_string(), &e);
        }
    });
    if !tally.observations.iter().any(|o| o.contains("depends")) {
        tally.observations.push(format!(
            "|L1(Dic(A, z))| is independent of z for all {} bases",
            bases.len()
        ));
    }
    Ok(tally.finish("dicyclic", params(&[("cap", cap.to_string())]), started))
}

/// `D(G)` for every abelian 2-group `G` with `2|G| <= cap`.
pub fn verify_gen_dihedral(cap: u64) -> Result<CampaignReport> {
    let started = Instant::now();
    check_cap_within(cap, Limits::default().census)?;
    let bases = shapes_up_to(2, cap / 2);
    let tally = parallel(&bases, |shape, t| {
        t.examined += 1;
        let base_desc = shape_descriptor(shape);
        let d = Descriptor::GenDihedral(Box::new(base_desc.clone()));
        let result = (|| -> Result<()> {
            let base = Sample::new(&base_desc)?;
            let s = Sample::new(&d)?;
            let half = base.census.alpha == AlphaValue::one_half();
            t.check(
                "alpha(G) = 1/2 iff G = Z2^n x Z8",
                &base.name,
                half == shape.is_ones_then(3),
                || format!("alpha = {}", base.census.alpha),
            );
            special_profile_check(shape, &base, t)?;
            let predicted = formulas::l1_gen_dihedral(base.census.l1, base.group.order())?;
            t.check(
                "|L1(D(G))| = |L1(G)| + |G|",
                &s.name,
                predicted == BigUint::from(s.census.l1),
                || format!("brute force {}, formula {predicted}", s.census.l1),
            );
            let in_class = s.in_class()?;
            t.check(
                "D(G) in class iff alpha(G) = 1/2",
                &s.name,
                in_class == half,
                || {
                    format!(
                        "alpha(D(G)) = {}, alpha(G) = {}",
                        s.census.alpha, base.census.alpha
                    )
                },
            );
            if in_class {
                t.members.push(s.name.clone());
                let rank = shape.rank() as u32 - 1;
                let model = Sample::new(&elementary_times(Descriptor::Dihedral(16), rank))?;
                t.check(
                    "members match Z2^n x D16",
                    &s.name,
                    model.profile == s.profile && model.census == s.census,
                    || format!("compared with {}", model.name),
                );
            }
            Ok(())
        })();
        if let Err(e) = result {
            t.error(&d.to_string(), &e);
        }
    });
    Ok(tally.finish("gen-dihedral", params(&[("cap", cap.to_string())]), started))
}

/// `(n2, n8)` of `Z2^n x Z4^a x Z8^b` against the brute-force census.
fn special_profile_check(shape: &AbelianShape, base: &Sample, t: &mut Tally) -> Result<()> {
    if shape.parts().iter().any(|&d| d > 3) {
        return Ok(());
    }
    let count = |d: u32| shape.parts().iter().filter(|&&x| x == d).count() as u32;
    let (n, a, b) = (count(1), count(2), count(3));
    if a + b == 0 {
        return Ok(());
    }
    let (n2, n8) = formulas::special_profile_n2_n8(n, a, b)?;
    let got = (
        BigUint::from(base.census.count(2)),
        BigUint::from(base.census.count(8)),
    );
    t.check(
        "(n2, n8) of Z2^n x Z4^a x Z8^b",
        &base.name,
        got == (n2.clone(), n8.clone()),
        || format!("brute force {got:?}, formula ({n2}, {n8})"),
    );
    Ok(())
}

/// The four families with a cyclic maximal subgroup: closed-form scan up to
/// `cap`, brute-force cross-check up to order 256.
pub fn verify_maximal_cyclic(cap: u64) -> Result<CampaignReport> {
    let started = Instant::now();
    if cap < 8 {
        return Err(GroupError::InvalidParameter(format!(
            "cap {cap} is below 8"
        )));
    }
    let max_n = 63 - cap.leading_zeros();
    let three_quarters = BigRational::new(3.into(), 4.into());
    let mut t = Tally::default();
    for kind in FamilyKind::ALL {
        let expected: &[u32] = match kind {
            FamilyKind::Modular => &[3],
            FamilyKind::Dihedral => &[4],
            FamilyKind::GeneralizedQuaternion => &[1, 2],
            FamilyKind::QuasiDihedral => &[3],
        };
        let solutions: Vec<u32> = (1..=max_n)
            .filter(|&n| kind.alpha_expression(n) == three_quarters)
            .collect();
        let expected_in_range: Vec<u32> =
            expected.iter().copied().filter(|&n| n <= max_n).collect();
        t.check(
            "solutions of alpha = 3/4 over positive n",
            &kind.to_string(),
            solutions == expected_in_range,
            || format!("solutions {solutions:?}, expected {expected_in_range:?}"),
        );
        for n in kind.min_n()..=max_n {
            t.examined += 1;
            let order = 1u64 << n;
            let name = format!("{}{order}", kind.atom());
            let l1 = formulas::l1_maximal_cyclic(kind, n)?;
            let alpha = AlphaValue::new(l1.clone(), BigUint::from(order))?;
            let in_class = alpha == AlphaValue::three_quarters();
            let expect = kind == FamilyKind::Dihedral && n == 4;
            t.check(
                "only D16 is in the class",
                &name,
                in_class == expect,
                || format!("alpha = {alpha}"),
            );
            if in_class {
                t.members.push(name.clone());
            }
            if order <= cap.min(1 << 8) {
                let d: Descriptor = name.parse().map_err(|e: crate::descriptor::ParseError| {
                    GroupError::InternalInconsistency(e.to_string())
                })?;
                let s = Sample::new(&d)?;
                t.check(
                    "closed form matches brute force",
                    &name,
                    BigUint::from(s.census.l1) == l1,
                    || format!("brute force {}, formula {l1}", s.census.l1),
                );
                t.check(
                    "brute-force membership agrees",
                    &name,
                    s.in_class()? == expect,
                    String::new,
                );
            }
        }
    }
    // the abelian groups Z2 x Z_{2^(n-1)} also have a cyclic maximal subgroup
    for n in 3..=max_n {
        let shape = AbelianShape::new(2, vec![1, n - 1])?;
        let alpha = formulas::alpha_abelian(&shape)?;
        let name = shape_descriptor(&shape).to_string();
        t.check(
            "Z2 x Z_(2^(n-1)) in class iff n = 3",
            &name,
            (alpha == AlphaValue::three_quarters()) == (n == 3),
            || format!("alpha = {alpha}"),
        );
    }
    Ok(t.finish(
        "maximal-cyclic",
        params(&[("cap", cap.to_string())]),
        started,
    ))
}

/// Descriptors for every constructible family member of order at most
/// `cap`, including all `Dic(A, z)` choices.
pub fn corpus(cap: u64) -> Vec<Descriptor> {
    let mut out = Vec::new();
    for shape in shapes_up_to(2, cap) {
        out.push(shape_descriptor(&shape));
    }
    for n in 2..=(63 - cap.max(1).leading_zeros()) {
        let order = 1u64 << n;
        if order >= 8 {
            out.push(Descriptor::Dihedral(order));
            out.push(Descriptor::Quaternion(order));
        } else {
            out.push(Descriptor::Dihedral(order));
        }
        if order >= 16 {
            out.push(Descriptor::QuasiDihedral(order));
            out.push(Descriptor::Modular(order));
        }
    }
    for order in extraspecial_orders(cap) {
        out.push(Descriptor::ExtraspecialPlus(order));
        out.push(Descriptor::ExtraspecialMinus(order));
    }
    out.extend(
        almost_extraspecial_orders(cap)
            .into_iter()
            .map(Descriptor::AlmostExtraspecial),
    );
    for shape in shapes_up_to(2, cap / 2) {
        let base = shape_descriptor(&shape);
        out.push(Descriptor::GenDihedral(Box::new(base.clone())));
        for k in 0..((1usize << shape.rank()) - 1) {
            out.push(Descriptor::GenDicyclic(Box::new(base.clone()), Some(k)));
        }
    }
    for (base, order) in [
        (Descriptor::Dihedral(16), 16u64),
        (Descriptor::Dihedral(8), 8),
        (Descriptor::Quaternion(8), 8),
    ] {
        let mut rank = 1;
        while order << rank <= cap {
            out.push(elementary_times(base.clone(), rank));
            rank += 1;
        }
    }
    out
}

fn corpus_samples(cap: u64, keep: impl Fn(&Sample) -> bool + Sync, t: &mut Tally) -> Vec<Sample> {
    let items = corpus(cap);
    let results: Vec<std::result::Result<Sample, (String, GroupError)>> = items
        .par_iter()
        .map(|d| Sample::new(d).map_err(|e| (d.to_string(), e)))
        .collect();
    let mut out = Vec::new();
    for r in results {
        match r {
            Ok(s) if keep(&s) => out.push(s),
            Ok(_) => {}
            Err((name, e)) => t.error(&name, &e),
        }
    }
    out
}

/// The exponent-4 members of the corpus up to `cap`.
pub fn verify_involution_corpus(cap: u64) -> Result<CampaignReport> {
    let started = Instant::now();
    check_cap_within(cap, Limits::default().census)?;
    let mut pre = Tally::default();
    let samples = corpus_samples(
        cap,
        |s| s.profile.exponent == 4 && s.group.order().is_power_of_two(),
        &mut pre,
    );
    let tally = parallel(&samples, |s, t| {
        t.examined += 1;
        if let Err(e) = check_involutions(s, t) {
            t.error(&s.name, &e);
        }
    });
    Ok(pre
        .merge(tally)
        .finish("involutions", params(&[("cap", cap.to_string())]), started))
}

/// Structure check on every class member found in the corpus up to `cap`.
pub fn verify_structure_corpus(cap: u64) -> Result<CampaignReport> {
    let started = Instant::now();
    check_cap_within(cap, Limits::default().census)?;
    let mut pre = Tally::default();
    let samples = corpus_samples(
        cap,
        |s| s.census.alpha == AlphaValue::three_quarters(),
        &mut pre,
    );
    let tally = parallel(&samples, |s, t| {
        t.examined += 1;
        let result = (|| -> Result<()> {
            if s.in_class()? {
                t.members.push(s.name.clone());
                check_structure(&s.group, &s.name, t)?;
            }
            Ok(())
        })();
        if let Err(e) = result {
            t.error(&s.name, &e);
        }
    });
    Ok(pre
        .merge(tally)
        .finish("structure", params(&[("cap", cap.to_string())]), started))
}

/// Normal subgroups worth testing quotients against: the center, the
/// derived and Frattini subgroups, and every normal cyclic subgroup.
fn normal_subgroups(g: &Group) -> Result<Vec<ElementSet>> {
    let mut out: BTreeSet<Vec<crate::group::Element>> = BTreeSet::new();
    out.insert(center(g)?.as_slice().to_vec());
    out.insert(commutator_subgroup(g)?.as_slice().to_vec());
    let factors = crate::shape::factorize(g.order());
    if let [(p, _)] = factors.as_slice() {
        out.insert(frattini_pgroup(g, *p)?.as_slice().to_vec());
    }
    for x in g.elements() {
        let h = generated_subgroup(g, std::slice::from_ref(&x))?;
        if group::is_normal(g, &h) {
            out.insert(h.as_slice().to_vec());
        }
    }
    Ok(out.into_iter().map(ElementSet::new).collect())
}

fn basic_property_corpus(cap: u64) -> Vec<Descriptor> {
    let mut out: Vec<Descriptor> = corpus(cap)
        .into_iter()
        .filter(|d| !matches!(d, Descriptor::GenDicyclic(_, Some(k)) if *k > 0))
        .collect();
    for text in [
        "Z3", "Z9", "Z3^2", "Z5", "Z3 x Z5", "Dih(Z3)", "Dih(Z5)", "Q8 x Z3", "Z27", "Z3^3",
        "Z9 x Z3", "Z25", "Z5^2",
    ] {
        let d: Descriptor = text.parse().expect("fixed descriptor");
        if d.predicted_order() <= cap as u128 {
            out.push(d);
        }
    }
    out
}

/// Basic properties of the ratio over the corpus up to `cap`:
/// ratio 1 exactly for elementary abelian 2-groups, multiplicativity over
/// coprime orders, invariance under `x Z2^n`, monotonicity under quotients,
/// and the bounds for abelian p-groups.
pub fn verify_basic_properties(cap: u64) -> Result<CampaignReport> {
    let started = Instant::now();
    check_cap_within(cap, Limits::default().census)?;
    let items = basic_property_corpus(cap);
    let mut tally = parallel(&items, |d, t| {
        t.examined += 1;
        let result = (|| -> Result<()> {
            let s = Sample::new(d)?;
            let elementary = s.profile.exponent <= 2 && s.group.order().is_power_of_two();
            t.check(
                "alpha = 1 iff elementary abelian 2-group",
                &s.name,
                s.census.alpha.is_one() == elementary,
                || format!("alpha = {}", s.census.alpha),
            );
            t.check(
                "0 < alpha <= 1",
                &s.name,
                s.census.alpha <= AlphaValue::one() && s.census.l1 > 0,
                String::new,
            );
            let mut rank = 1;
            while s.group.order() << rank <= cap && rank <= 4 {
                let prod = Sample::new(&elementary_times(d.clone(), rank))?;
                t.check(
                    "alpha(G x Z2^n) = alpha(G)",
                    &prod.name,
                    prod.census.alpha == s.census.alpha,
                    || format!("{} vs {}", prod.census.alpha, s.census.alpha),
                );
                rank += 1;
            }
            for n in normal_subgroups(&s.group)? {
                let q = group::quotient(&s.group, &n)?;
                let qa = cyclic_census(&q)?.alpha;
                t.check(
                    "alpha(G) <= alpha(G/N)",
                    &s.name,
                    s.census.alpha <= qa,
                    || {
                        format!(
                            "alpha(G) = {}, alpha(G/N) = {qa}, |N| = {}",
                            s.census.alpha,
                            n.len()
                        )
                    },
                );
                if qa == s.census.alpha {
                    let ok = n.len().is_power_of_two() && is_elementary_abelian_2(&s.group, &n);
                    t.check(
                        "equality forces N elementary abelian 2-group",
                        &s.name,
                        ok,
                        || format!("|N| = {}", n.len()),
                    );
                }
            }
            Ok(())
        })();
        if let Err(e) = result {
            t.error(&d.to_string(), &e);
        }
    });

    let twos = [
        "Z2", "Z4", "Z2^2", "Z8", "Z2 x Z4", "D8", "Q8", "D16", "AES(16)",
    ];
    let odds = [
        "Z3", "Z9", "Z3^2", "Z5", "Z25", "Z3 x Z5", "Z27", "Dih(Z5)", "Dih(Z3)",
    ];
    let mut pairs = Vec::new();
    for a in twos.iter().chain(&odds) {
        for b in &odds {
            let (da, db): (Descriptor, Descriptor) =
                (a.parse().expect("fixed"), b.parse().expect("fixed"));
            let (oa, ob) = (da.predicted_order(), db.predicted_order());
            if num_integer::gcd(oa, ob) == 1 && oa * ob <= cap as u128 {
                pairs.push((da, db));
            }
        }
    }
    let multiplicative = parallel(&pairs, |(a, b), t| {
        t.examined += 1;
        let prod = Descriptor::Direct(vec![a.clone(), b.clone()]);
        let result = (|| -> Result<()> {
            let (sa, sb, sp) = (Sample::new(a)?, Sample::new(b)?, Sample::new(&prod)?);
            let expected = &sa.census.alpha * &sb.census.alpha;
            t.check(
                "alpha multiplicative over coprime orders",
                &sp.name,
                sp.census.alpha == expected,
                || format!("{} vs {expected}", sp.census.alpha),
            );
            Ok(())
        })();
        if let Err(e) = result {
            t.error(&prod.to_string(), &e);
        }
    });
    tally = tally.merge(multiplicative);

    let mut shapes = Vec::new();
    for p in [2u64, 3, 5] {
        shapes.extend(shapes_up_to(p, cap));
    }
    let bounds = parallel(&shapes, |shape, t| {
        t.examined += 1;
        let name = shape_descriptor(shape).to_string();
        let result = (|| -> Result<()> {
            let alpha = formulas::alpha_abelian(shape)?;
            let bound = formulas::alpha_elementary(shape.p(), shape.exponent_of_order())?;
            t.check("alpha(G) <= alpha(Z_p^n)", &name, alpha <= bound, || {
                format!("{alpha} > {bound}")
            });
            if shape.p() > 2 {
                t.check(
                    "alpha(G) < 3/4 for odd p",
                    &name,
                    alpha < AlphaValue::three_quarters(),
                    || format!("alpha = {alpha}"),
                );
            }
            let brute = cyclic_census(&shape.build()?)?;
            t.check(
                "closed form matches census",
                &name,
                brute.alpha == alpha,
                || format!("census {}, closed form {alpha}", brute.alpha),
            );
            Ok(())
        })();
        if let Err(e) = result {
            t.error(&name, &e);
        }
    });
    tally = tally.merge(bounds);
    Ok(tally.finish("properties", params(&[("cap", cap.to_string())]), started))
}

/// Largest `n` accepted by [`alpha_injectivity_scan`].
pub const MAX_SCAN_EXPONENT: u32 = 40;

/// Scan every abelian group of order `p^n` for two distinct shapes with the
/// same number of cyclic subgroups. Collisions are reported as
/// observations; only internal disagreements fail the campaign.
pub fn alpha_injectivity_scan(p: u64, n: u32) -> Result<CampaignReport> {
    let started = Instant::now();
    if !crate::shape::is_prime(p) {
        return Err(GroupError::InvalidParameter(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(GroupError::InvalidParameter("n must be positive".into()));
    }
    if n > MAX_SCAN_EXPONENT {
        return Err(GroupError::CapExceeded {
            order: n as u128,
            cap: MAX_SCAN_EXPONENT as u64,
        });
    }
    let shapes: Vec<AbelianShape> = partitions(n)
        .into_iter()
        .map(|parts| AbelianShape::new(p, parts).expect("valid shape"))
        .collect();
    let values: Vec<Result<BigUint>> = shapes.par_iter().map(formulas::l1_abelian).collect();
    let mut t = Tally {
        examined: shapes.len(),
        ..Tally::default()
    };
    let mut by_value: BTreeMap<BigUint, Vec<String>> = BTreeMap::new();
    for (shape, v) in shapes.iter().zip(values) {
        let name = shape_descriptor(shape).to_string();
        match v {
            Ok(v) => {
                t.check("closed-form routes agree", &name, true, String::new);
                by_value.entry(v).or_default().push(name);
            }
            Err(e) => t.error(&name, &e),
        }
    }
    let brute_limit = Limits::default().bruteforce as u128;
    if (p as u128).checked_pow(n).is_some_and(|o| o <= brute_limit) {
        let brute = parallel(&shapes, |shape, t| {
            let name = shape_descriptor(shape).to_string();
            let result = (|| -> Result<()> {
                let closed = formulas::l1_abelian(shape)?;
                let census = cyclic_census_bruteforce(&shape.build()?)?;
                t.check(
                    "closed form matches brute force",
                    &name,
                    closed == BigUint::from(census.l1),
                    || format!("brute force {}, formula {closed}", census.l1),
                );
                Ok(())
            })();
            if let Err(e) = result {
                t.error(&name, &e);
            }
        });
        t = t.merge(brute);
    }
    let collisions: Vec<(&BigUint, &Vec<String>)> =
        by_value.iter().filter(|(_, v)| v.len() > 1).collect();
    if collisions.is_empty() {
        t.observations.push(format!(
            "no collision: {} shapes, {} distinct values of |L1|",
            shapes.len(),
            by_value.len()
        ));
    }
    for (value, names) in collisions {
        t.observations.push(format!(
            "collision: |L1| = {value} for {}",
            names.join(", ")
        ));
    }
    Ok(t.finish(
        "injectivity",
        params(&[("p", p.to_string()), ("n", n.to_string())]),
        started,
    ))
}

/// True when the scan found two shapes sharing a value.
pub fn has_collision(report: &CampaignReport) -> bool {
    report
        .observations
        .iter()
        .any(|o| o.starts_with("collision"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub descriptor: String,
    pub order: u64,
    pub alpha: AlphaValue,
    pub in_class: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumCaps {
    /// Order bound for abelian p-groups, evaluated in closed form.
    pub abelian: u64,
    /// Order bound for the non-abelian families, evaluated by census.
    pub families: u64,
}

impl Default for SpectrumCaps {
    fn default() -> Self {
        SpectrumCaps {
            abelian: 1 << 12,
            families: 1 << 8,
        }
    }
}

/// Ratios of every group in the scanned families. All scanned groups are
/// p-groups, hence nilpotent.
pub fn alpha_spectrum(caps: SpectrumCaps) -> Result<Vec<SpectrumRecord>> {
    check_cap_within(caps.families, Limits::default().census)?;
    let mut shapes = Vec::new();
    for p in [2u64, 3, 5] {
        shapes.extend(shapes_up_to(p, caps.abelian));
    }
    let mut records: Vec<SpectrumRecord> = shapes
        .par_iter()
        .map(|shape| {
            let alpha = formulas::alpha_abelian(shape)?;
            Ok(SpectrumRecord {
                descriptor: shape_descriptor(shape).to_string(),
                order: shape.order() as u64,
                in_class: alpha == AlphaValue::three_quarters(),
                alpha,
            })
        })
        .collect::<Result<_>>()?;
    for kind in FamilyKind::ALL {
        let mut n = kind.min_n();
        while (1u64 << n) <= caps.abelian.max(caps.families) {
            let order = 1u64 << n;
            let alpha =
                AlphaValue::new(formulas::l1_maximal_cyclic(kind, n)?, BigUint::from(order))?;
            records.push(SpectrumRecord {
                descriptor: format!("{}{order}", kind.atom()),
                order,
                in_class: alpha == AlphaValue::three_quarters(),
                alpha,
            });
            n += 1;
        }
    }
    let mut families: Vec<Descriptor> = Vec::new();
    for order in extraspecial_orders(caps.families) {
        families.push(Descriptor::ExtraspecialPlus(order));
        families.push(Descriptor::ExtraspecialMinus(order));
    }
    families.extend(
        almost_extraspecial_orders(caps.families)
            .into_iter()
            .map(Descriptor::AlmostExtraspecial),
    );
    for shape in shapes_up_to(2, caps.families / 2) {
        let base = shape_descriptor(&shape);
        families.push(Descriptor::GenDihedral(Box::new(base.clone())));
        families.push(Descriptor::GenDicyclic(Box::new(base), None));
    }
    let more: Vec<SpectrumRecord> = families
        .par_iter()
        .map(|d| {
            let s = Sample::new(d)?;
            let in_class = s.in_class()?;
            Ok(SpectrumRecord {
                descriptor: s.name,
                order: s.group.order(),
                alpha: s.census.alpha,
                in_class,
            })
        })
        .collect::<Result<_>>()?;
    records.extend(more);
    records.sort_by(|a, b| {
        a.alpha
            .cmp(&b.alpha)
            .then(a.order.cmp(&b.order))
            .then(a.descriptor.cmp(&b.descriptor))
    });
    Ok(records)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    /// Distinct ratios in increasing order with the number of groups
    /// attaining each.
    pub distinct: Vec<(AlphaValue, usize)>,
    /// Records within `eps` of 3/4, excluding 3/4 itself.
    pub near_three_quarters: Vec<SpectrumRecord>,
    pub eps: AlphaValue,
    pub class_members: usize,
}

pub fn summarize_spectrum(records: &[SpectrumRecord], eps: &AlphaValue) -> SpectrumSummary {
    let mut distinct: BTreeMap<AlphaValue, usize> = BTreeMap::new();
    for r in records {
        *distinct.entry(r.alpha.clone()).or_insert(0) += 1;
    }
    let target = AlphaValue::three_quarters();
    let near = records
        .iter()
        .filter(|r| r.alpha != target && r.alpha.distance(&target) <= *eps.as_rational())
        .cloned()
        .collect();
    SpectrumSummary {
        distinct: distinct.into_iter().collect(),
        near_three_quarters: near,
        eps: eps.clone(),
        class_members: records.iter().filter(|r| r.in_class).count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> Group {
        s.parse::<Descriptor>().unwrap().build().unwrap()
    }

    #[test]
    fn class_membership() {
        assert!(is_in_class(&build("Z2^3 x Z4")).unwrap());
        assert!(!is_in_class(&build("Q8")).unwrap());
        assert!(is_in_class(&build("D8*Z4")).unwrap());
        assert!(is_in_class(&build("D16")).unwrap());
        assert!(!is_in_class(&build("Z8")).unwrap());
    }

    #[test]
    fn structure_examples() {
        for s in ["D16", "D8*Z4", "Z2^2 x Z4", "Z4"] {
            let r = verify_structure(&build(s), s).unwrap();
            assert!(r.passed(), "{s}: {r:?}");
        }
        assert!(matches!(
            verify_structure(&build("Q8"), "Q8"),
            Err(GroupError::InvalidParameter(_))
        ));
    }

    #[test]
    fn involution_criterion_examples() {
        let r = verify_involution_criterion(&build("D8*Z4"), "D8*Z4").unwrap();
        assert!(r.passed());
        assert_eq!(r.members, vec!["D8*Z4".to_string()]);
        let r = verify_involution_criterion(&build("D8*D8"), "D8*D8").unwrap();
        assert!(r.passed() && r.members.is_empty());
        assert!(verify_involution_criterion(&build("Z4 x Z4"), "Z4 x Z4")
            .unwrap()
            .passed());
        assert!(verify_involution_criterion(&build("Z8"), "Z8").is_err());
    }

    #[test]
    fn abelian_campaign_small() {
        let r = verify_abelian_classification(6).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.members.contains(&"Z4".to_string()));
        assert!(r.members.contains(&"Z2 x Z4".to_string()));
        assert!(!r.members.iter().any(|m| m == "Z4^2"));
        assert!(verify_abelian_classification(0).is_err());
    }

    #[test]
    fn extraspecial_alpha_observation() {
        let r = verify_extraspecial(32).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(
            r.observations.iter().any(|o| o == "ES+(32): alpha = 13/16"),
            "{:?}",
            r.observations
        );
    }

    #[test]
    fn injectivity_small() {
        let r = alpha_injectivity_scan(2, 6).unwrap();
        assert!(r.passed());
        assert!(!has_collision(&r));
        assert_eq!(r.groups_examined, 11);
        let one = alpha_injectivity_scan(2, 1).unwrap();
        assert_eq!(one.groups_examined, 1);
        assert!(matches!(
            alpha_injectivity_scan(2, 41),
            Err(GroupError::CapExceeded { .. })
        ));
        assert!(alpha_injectivity_scan(4, 3).is_err());
    }

    #[test]
    fn spectrum_contains_quoted_values() {
        let recs = alpha_spectrum(SpectrumCaps {
            abelian: 1 << 8,
            families: 1 << 5,
        })
        .unwrap();
        let values: BTreeSet<AlphaValue> = recs
            .iter()
            .filter(|r| r.descriptor.starts_with('Z') && r.order.is_power_of_two())
            .map(|r| r.alpha.clone())
            .collect();
        for v in [
            AlphaValue::one(),
            AlphaValue::ratio(3, 4),
            AlphaValue::ratio(5, 8),
            AlphaValue::ratio(1, 2),
        ] {
            assert!(values.contains(&v), "missing {v}");
        }
        assert!(recs
            .iter()
            .all(|r| r.in_class == (r.alpha == AlphaValue::three_quarters())));
        let summary = summarize_spectrum(&recs, &AlphaValue::ratio(1, 100));
        assert!(summary
            .near_three_quarters
            .iter()
            .all(|r| r.alpha != AlphaValue::three_quarters()));
        assert!(summary.class_members > 0);
    }

    #[test]
    fn campaign_names_round_trip() {
        for c in Campaign::ALL {
            assert_eq!(c.name().parse::<Campaign>().unwrap(), c);
        }
        assert!("nope".parse::<Campaign>().is_err());
    }

    #[test]
    fn counterexamples_reproduce() {
        let c = Counterexample {
            descriptor: "Dic(Z2 x Z4, 1)".into(),
            check: "x".into(),
            detail: String::new(),
        };
        assert_eq!(c.reproduce().unwrap().order(), 16);
    }

    #[test]
    fn corpus_descriptors_are_canonical_and_buildable() {
        for d in corpus(64) {
            let text = d.to_string();
            let back: Descriptor = text.parse().unwrap();
            assert_eq!(back.canonical_string(), d.canonical_string(), "{text}");
            assert_eq!(back.build().unwrap().order() as u128, d.predicted_order());
        }
    }
}

//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use twogroups::cache::{compute_record, Cache};
use twogroups::census::{cyclic_census, cyclic_census_bruteforce};
use twogroups::formulas::{self, central_product_counts};
use twogroups::shape::shapes_up_to;
use twogroups::verify::{self, CampaignReport};
use twogroups::{AlphaValue, Descriptor};

type Outcome = Result<String, String>;

fn descriptor(text: &str) -> Descriptor {
    text.parse().unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn alpha_of(text: &str) -> Result<AlphaValue, String> {
    let g = descriptor(text).build().map_err(|e| e.to_string())?;
    Ok(cyclic_census(&g).map_err(|e| e.to_string())?.alpha)
}

fn campaign_ok(r: &CampaignReport) -> Result<(), String> {
    if r.passed() {
        Ok(())
    } else {
        let first = &r.counterexamples[0];
        Err(format!(
            "{}: {} counterexample(s), first {} [{}] {}",
            r.campaign,
            r.counterexamples.len(),
            first.descriptor,
            first.check,
            first.detail
        ))
    }
}

fn golden_values() -> Outcome {
    let cases = [
        ("Z4", AlphaValue::ratio(3, 4)),
        ("Z4 x Z4", AlphaValue::ratio(5, 8)),
        ("Z8", AlphaValue::ratio(1, 2)),
        ("Z2", AlphaValue::one()),
        ("Z2^2", AlphaValue::one()),
        ("Z2^5", AlphaValue::one()),
        ("Z2^8", AlphaValue::one()),
        ("D16", AlphaValue::ratio(3, 4)),
        ("Q8", AlphaValue::ratio(5, 8)),
        ("D8*Z4", AlphaValue::ratio(3, 4)),
    ];
    for (text, expected) in &cases {
        let got = alpha_of(text)?;
        if &got != expected {
            return Err(format!("alpha({text}) = {got}, expected {expected}"));
        }
    }
    Ok(format!("{} exact values", cases.len()))
}

fn abelian_oracle() -> Outcome {
    let mut total = 0;
    for (p, cap) in [(2u64, 1u64 << 10), (3, 729), (5, 625)] {
        for shape in shapes_up_to(p, cap) {
            let closed = formulas::l1_abelian(&shape).map_err(|e| format!("{shape}: {e}"))?;
            let g = shape.build().map_err(|e| e.to_string())?;
            let brute = cyclic_census_bruteforce(&g).map_err(|e| e.to_string())?;
            if closed != BigUint::from(brute.l1) {
                return Err(format!(
                    "{shape}: closed form {closed}, brute force {}",
                    brute.l1
                ));
            }
            total += 1;
        }
    }
    Ok(format!("{total} shapes agree"))
}

fn central_product_count_formula() -> Outcome {
    let cases = [
        ("D8*D8", "D8"),
        ("D8*Q8", "Q8"),
        ("D8*Z4", "Z4"),
        ("D8*D8*D8", "D8*D8"),
        ("D8*D8*Q8", "D8*Q8"),
        ("D8*D8*Z4", "D8*Z4"),
    ];
    let mut found = Vec::new();
    for (text, inner) in cases {
        let g = descriptor(text).build().map_err(|e| e.to_string())?;
        let c = cyclic_census(&g).map_err(|e| e.to_string())?;
        let g1 = cyclic_census(&descriptor(inner).build().map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let n = g.order().trailing_zeros();
        let (n2, n4) = central_product_counts(n, g1.count(2)).map_err(|e| e.to_string())?;
        if (BigUint::from(c.count(2)), BigUint::from(c.count(4))) != (n2.clone(), n4.clone()) {
            return Err(format!(
                "{text}: census ({}, {}), formula ({n2}, {n4})",
                c.count(2),
                c.count(4)
            ));
        }
        found.push((text, c.count(2), c.count(4)));
    }
    let quoted = [
        ("D8*Q8", None, Some(10)),
        ("D8*D8", None, Some(6)),
        ("D8*Z4", Some(7), Some(4)),
    ];
    for (text, n2, n4) in quoted {
        let (_, g2, g4) = found.iter().find(|f| f.0 == text).expect("computed above");
        if n2.is_some_and(|v| v != *g2) || n4.is_some_and(|v| v != *g4) {
            return Err(format!("{text}: n2 = {g2}, n4 = {g4}"));
        }
    }
    Ok(format!("{} central products", cases.len()))
}

fn extraspecial_families() -> Outcome {
    let es = verify::verify_extraspecial(1 << 7).map_err(|e| e.to_string())?;
    campaign_ok(&es)?;
    let aes = verify::verify_almost_extraspecial(1 << 8).map_err(|e| e.to_string())?;
    campaign_ok(&aes)?;
    if !es.members.is_empty() || aes.members.len() != aes.groups_examined {
        return Err(format!("members: {:?} / {:?}", es.members, aes.members));
    }
    Ok(format!(
        "{} extraspecial, {} almost extraspecial",
        es.groups_examined, aes.groups_examined
    ))
}

fn dicyclic_family() -> Outcome {
    let r = verify::verify_dicyclic(1 << 7).map_err(|e| e.to_string())?;
    campaign_ok(&r)?;
    let n = r
        .check("Dic over elementary A is Z2^n x Z4")
        .map_or(0, |c| c.evaluated);
    Ok(format!(
        "{} groups, {} over elementary bases",
        r.groups_examined, n
    ))
}

fn gen_dihedral_family() -> Outcome {
    let r = verify::verify_gen_dihedral(1 << 8).map_err(|e| e.to_string())?;
    campaign_ok(&r)?;
    let matched = r
        .check("members match Z2^n x D16")
        .map_or(0, |c| c.evaluated);
    if matched == 0 || matched != r.members.len() {
        return Err(format!(
            "{matched} model comparisons for {} members",
            r.members.len()
        ));
    }
    Ok(format!(
        "{} bases, {} members",
        r.groups_examined,
        r.members.len()
    ))
}

fn maximal_cyclic_families() -> Outcome {
    let r = verify::verify_maximal_cyclic(1 << 12).map_err(|e| e.to_string())?;
    campaign_ok(&r)?;
    if r.members != ["D16"] {
        return Err(format!("members {:?}", r.members));
    }
    let brute = r
        .check("closed form matches brute force")
        .map_or(0, |c| c.evaluated);
    Ok(format!(
        "{} groups, {brute} brute-force cross-checks",
        r.groups_examined
    ))
}

fn involution_criterion() -> Outcome {
    let r = verify::verify_involution_corpus(1 << 8).map_err(|e| e.to_string())?;
    campaign_ok(&r)?;
    Ok(format!(
        "{} exponent-4 groups, {} members",
        r.groups_examined,
        r.members.len()
    ))
}

fn structure_of_members(members: &BTreeSet<String>) -> Outcome {
    for m in members {
        let g = descriptor(m).build().map_err(|e| e.to_string())?;
        let r = verify::verify_structure(&g, m).map_err(|e| format!("{m}: {e}"))?;
        campaign_ok(&r)?;
    }
    Ok(format!("{} members", members.len()))
}

fn injectivity() -> Outcome {
    let mut collisions = Vec::new();
    for n in 1..=20 {
        let r = verify::alpha_injectivity_scan(2, n).map_err(|e| e.to_string())?;
        campaign_ok(&r)?;
        if verify::has_collision(&r) {
            collisions.extend(r.observations.clone());
        }
    }
    if collisions.is_empty() {
        Ok("no collision for p = 2, n <= 20".into())
    } else {
        Ok(format!("REPORTED collisions: {}", collisions.join("; ")))
    }
}

fn property_suite() -> Outcome {
    let r = verify::verify_basic_properties(1 << 8).map_err(|e| e.to_string())?;
    campaign_ok(&r)?;
    let evaluated: usize = r.checks.iter().map(|c| c.evaluated).sum();
    Ok(format!(
        "{evaluated} checks over {} cases",
        r.groups_examined
    ))
}

fn random_descriptor(rng: &mut StdRng, depth: u32) -> Descriptor {
    let pow2 = |rng: &mut StdRng, lo: u32, hi: u32| 1u64 << rng.gen_range(lo..=hi);
    let leaf = depth == 0 || rng.gen_bool(0.5);
    if leaf {
        match rng.gen_range(0..9) {
            0 => Descriptor::Cyclic(rng.gen_range(1..100)),
            1 => Descriptor::CyclicPower(rng.gen_range(2..20), rng.gen_range(1..5)),
            2 => Descriptor::Dihedral(2 * rng.gen_range(2..40)),
            3 => Descriptor::Quaternion(pow2(rng, 3, 8)),
            4 => Descriptor::QuasiDihedral(pow2(rng, 4, 8)),
            5 => Descriptor::Modular(pow2(rng, 4, 8)),
            6 => Descriptor::ExtraspecialPlus(1 << (2 * rng.gen_range(1..4) + 1)),
            7 => Descriptor::ExtraspecialMinus(1 << (2 * rng.gen_range(1..4) + 1)),
            _ => Descriptor::AlmostExtraspecial(1 << (2 * rng.gen_range(1..4) + 2)),
        }
    } else {
        match rng.gen_range(0..4) {
            0 => Descriptor::GenDihedral(Box::new(random_descriptor(rng, depth - 1))),
            1 => {
                let z = if rng.gen_bool(0.5) {
                    Some(rng.gen_range(0..8))
                } else {
                    None
                };
                Descriptor::GenDicyclic(Box::new(random_descriptor(rng, depth - 1)), z)
            }
            k => {
                let ops = (0..rng.gen_range(2..4))
                    .map(|_| random_descriptor(rng, depth - 1))
                    .collect();
                if k == 2 {
                    Descriptor::Direct(ops)
                } else {
                    Descriptor::Central(ops)
                }
            }
        }
    }
}

fn parser_and_cache() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x2_6f_72);
    for _ in 0..10_000 {
        let d = random_descriptor(&mut rng, 3);
        let text = d.to_string();
        let back: Descriptor = text.parse().map_err(|e| format!("{text}: {e}"))?;
        if back.canonical() != d.canonical() {
            return Err(format!("{text} reparsed as {back}"));
        }
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("records.jsonl");
    let corpus = verify::corpus(64);
    {
        let mut cache = Cache::open(&path);
        for d in &corpus {
            cache.get_or_compute(d).map_err(|e| e.to_string())?;
        }
    }
    let cache = Cache::open(&path);
    if cache.len() != corpus.len() || !cache.warnings().is_empty() {
        return Err(format!(
            "reloaded {} of {} records",
            cache.len(),
            corpus.len()
        ));
    }
    for d in &corpus {
        let hit = cache.get(d).ok_or_else(|| format!("miss for {d}"))?;
        if *hit != compute_record(d).map_err(|e| e.to_string())? {
            return Err(format!("cached record for {d} differs from recomputation"));
        }
    }
    let v = cache.revalidate();
    if !v.mismatches.is_empty() || v.checked == 0 {
        return Err(format!("revalidation: {v:?}"));
    }
    Ok(format!(
        "10000 round trips, {} records, {} revalidated",
        v.stored, v.checked
    ))
}

fn run(number: usize, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let started = Instant::now();
    let outcome = f();
    let elapsed = started.elapsed();
    let (status, detail) = match &outcome {
        Ok(d) if elapsed <= budget => ("PASS", d.clone()),
        Ok(d) => ("FAIL", format!("{d}; exceeded {budget:?}")),
        Err(e) => ("FAIL", e.clone()),
    };
    println!(
        "{status} criterion {number:>2}: {title} ({:.2}s) -- {detail}",
        elapsed.as_secs_f64()
    );
    status == "PASS"
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let mut ok = true;
    ok &= run(1, "golden alpha values", s(1), golden_values);
    ok &= run(
        2,
        "abelian closed form equals brute force",
        s(60),
        abelian_oracle,
    );
    ok &= run(
        3,
        "central product counts",
        s(10),
        central_product_count_formula,
    );
    ok &= run(
        4,
        "extraspecial and almost extraspecial groups",
        s(30),
        extraspecial_families,
    );
    ok &= run(5, "generalized dicyclic groups", s(60), dicyclic_family);
    ok &= run(6, "generalized dihedral groups", s(60), gen_dihedral_family);
    ok &= run(
        7,
        "groups with a cyclic maximal subgroup",
        s(30),
        maximal_cyclic_families,
    );
    ok &= run(8, "involution criterion", s(30), involution_criterion);

    // members found by the campaigns behind criteria 4-8
    let mut members = BTreeSet::new();
    let sources = [
        verify::verify_almost_extraspecial(1 << 8),
        verify::verify_dicyclic(1 << 7),
        verify::verify_gen_dihedral(1 << 8),
        verify::verify_maximal_cyclic(1 << 12),
        verify::verify_involution_corpus(1 << 8),
    ];
    for r in sources.into_iter().flatten() {
        members.extend(r.members);
    }
    ok &= run(9, "structure of class members", s(30), || {
        structure_of_members(&members)
    });
    ok &= run(
        10,
        "injectivity of |L1| on abelian 2-groups",
        s(60),
        injectivity,
    );
    ok &= run(11, "basic properties of alpha", s(60), property_suite);
    ok &= run(
        12,
        "descriptor round trip and cache revalidation",
        s(30),
        parser_and_cache,
    );
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

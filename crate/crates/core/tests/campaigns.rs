use twogroups::verify::{self, Campaign, CampaignReport, Status};
use twogroups::{AlphaValue, Descriptor, GroupError};

#[test]
fn every_campaign_passes_at_small_caps() {
    for c in Campaign::ALL {
        let cap = match c {
            Campaign::MaximalCyclic => 1 << 10,
            _ => 64,
        };
        let r = verify::run_campaign(c, Some(cap)).unwrap();
        assert!(r.passed(), "{c}: {:?}", r.counterexamples);
        assert!(r.groups_examined > 0, "{c}");
        assert!(
            r.checks.iter().all(|t| t.evaluated > 0 && t.failed == 0),
            "{c}"
        );
        assert_eq!(r.campaign, c.name());
    }
}

#[test]
fn dicyclic_members_are_over_elementary_bases() {
    let r = verify::verify_dicyclic(32).unwrap();
    // bases Z2, Z2^2, Z2^3, Z2^4 contribute 1 + 3 + 7 + 15 groups
    assert_eq!(r.members.len(), 26);
    for m in &r.members {
        let d: Descriptor = m.parse().unwrap();
        let Descriptor::GenDicyclic(base, Some(_)) = d else {
            panic!("{m}")
        };
        assert!(
            matches!(*base, Descriptor::Cyclic(2) | Descriptor::CyclicPower(2, _)),
            "{m}"
        );
    }
    assert!(r
        .observations
        .iter()
        .any(|o| o.contains("independent of z")));
}

#[test]
fn gen_dihedral_members() {
    let r = verify::verify_gen_dihedral(128).unwrap();
    assert_eq!(
        r.members,
        [
            "Dih(Z2 x Z8)",
            "Dih(Z2^2 x Z8)",
            "Dih(Z2^3 x Z8)",
            "Dih(Z8)"
        ]
    );
}

#[test]
fn caps_beyond_census_limit_are_rejected() {
    for c in [
        Campaign::Extraspecial,
        Campaign::Dicyclic,
        Campaign::Properties,
    ] {
        assert!(matches!(
            verify::run_campaign(c, Some(1 << 20)),
            Err(GroupError::CapExceeded { .. })
        ));
    }
    assert!(verify::run_campaign(Campaign::MaximalCyclic, Some(4)).is_err());
}

#[test]
fn reports_serialize_round_trip() {
    let r = verify::verify_extraspecial(32).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let back: CampaignReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
    assert!(text.contains("\"status\":\"pass\""));
    assert_eq!(back.status, Status::Pass);
}

#[test]
fn spectrum_has_no_value_just_below_or_above_three_quarters() {
    let records = verify::alpha_spectrum(Default::default()).unwrap();
    let summary = verify::summarize_spectrum(&records, &AlphaValue::ratio(1, 100));
    assert!(summary.near_three_quarters.is_empty());
    let members: Vec<&str> = records
        .iter()
        .filter(|r| r.in_class)
        .map(|r| r.descriptor.as_str())
        .collect();
    assert!(members.contains(&"D16"));
    assert!(members.contains(&"AES(64)"));
    assert!(!members.iter().any(|m| m.starts_with("ES")));
}

#[test]
fn injectivity_other_primes() {
    for (p, n) in [(3, 10), (5, 8), (7, 6)] {
        let r = verify::alpha_injectivity_scan(p, n).unwrap();
        assert!(r.passed());
        assert!(!verify::has_collision(&r), "{p}^{n}: {:?}", r.observations);
    }
}

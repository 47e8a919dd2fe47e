use super::*;
use crate::blocks::block_partition;
use crate::chartable::{irr_of_central, CentralSubgroupDoc, DefectMetadata};
use crate::permgroup::{GroupDefinition, DEFAULT_ENUMERATION_CAP};

fn load(json: &str) -> PermGroup {
    let def: GroupDefinition = serde_json::from_str(json).unwrap();
    def.to_group(DEFAULT_ENUMERATION_CAP).unwrap()
}

fn normal_subgroup(json: &str, g: &PermGroup) -> PermGroup {
    let def: serde_json::Value = serde_json::from_str(json).unwrap();
    let gens: Vec<Vec<Vec<usize>>> =
        serde_json::from_value(def["normal_subgroups"][0]["generators"].clone()).unwrap();
    g.subgroup(
        gens.iter()
            .map(|c| Permutation::from_cycles(g.degree(), c).unwrap())
            .collect(),
    )
    .unwrap()
}

const GL: &str = include_str!("../../corpus/GL2x3.json");
const SL: &str = include_str!("../../corpus/SL2x3.json");

fn small_groups() -> Vec<(&'static str, PermGroup)> {
    [
        ("C4", include_str!("../../corpus/C4.json")),
        ("C2xC2", include_str!("../../corpus/C2xC2.json")),
        ("C6", include_str!("../../corpus/C6.json")),
        ("S3", include_str!("../../corpus/S3.json")),
        ("Q8", include_str!("../../corpus/Q8.json")),
        ("D8", include_str!("../../corpus/D8.json")),
        ("A4", include_str!("../../corpus/A4.json")),
        ("S4", include_str!("../../corpus/S4.json")),
        ("SL2x3", SL),
        ("GL2x3", GL),
    ]
    .into_iter()
    .map(|(n, j)| (n, load(j)))
    .collect()
}

/// `λ` on the center of `g`, faithful when `faithful` is set.
fn center_character(g: &PermGroup, faithful: bool) -> ZCharacter {
    let t = dixon_table(g).unwrap();
    let z = CentralSubgroup::from_group(&t, &g.center().unwrap(), "Z").unwrap();
    let irr = irr_of_central(&t, &z).unwrap();
    let lambda = irr.iter().find(|l| l.is_faithful() == faithful).unwrap();
    ZCharacter::from_table(&t, &z, lambda).unwrap()
}

#[test]
fn lambda_extension_examples() {
    let q8 = load(include_str!("../../corpus/Q8.json"));
    assert!(!lambda_extends_to(&q8, &center_character(&q8, true)).unwrap());
    for (_, g) in small_groups() {
        let z = g.center().unwrap();
        let one = ZCharacter::new(
            z.elements().unwrap().perms().to_vec(),
            vec![Cyclotomic::one(1); z.order_u64() as usize],
        )
        .unwrap();
        assert!(lambda_extends_to(&g, &one).unwrap());
    }
    let bogus = ZCharacter::new(
        q8.center().unwrap().elements().unwrap().perms().to_vec(),
        vec![Cyclotomic::one(1), Cyclotomic::zeta(4, 1)],
    );
    assert!(matches!(bogus, Err(Error::MalformedInput(_))));
}

#[test]
fn theta_extension_examples() {
    let gl = load(GL);
    let n = normal_subgroup(GL, &gl);
    let n_table = dixon_table(&n).unwrap();
    let theta = n_table.degrees().iter().position(|&d| d == 2).unwrap();
    let p = gl.sylow(2).unwrap();
    assert!(theta_extends_to(&p, &n_table, theta).unwrap());
    assert!(theta_extends_to(&n, &n_table, theta).unwrap());

    let q8 = load(include_str!("../../corpus/Q8.json"));
    let zt = dixon_table(&q8.center().unwrap()).unwrap();
    let faithful = (0..2).find(|&r| r != zt.trivial_row()).unwrap();
    assert!(!theta_extends_to(&q8, &zt, faithful).unwrap());

    let s3 = load(include_str!("../../corpus/S3.json"));
    let t = s3.elements().unwrap().perms().iter().find(|x| x.order() == 2).unwrap().clone();
    let h = s3.subgroup(vec![t]).unwrap();
    let ht = dixon_table(&h).unwrap();
    assert!(matches!(theta_extends_to(&s3, &ht, 0), Err(Error::Precondition(_))));
}

#[test]
fn fully_ramified_examples() {
    let q8 = load(include_str!("../../corpus/Q8.json"));
    let r = fully_ramified_check(&q8, &center_character(&q8, true)).unwrap();
    assert_eq!((r.e, r.theta_degree, r.fully_ramified), (2, 2, true));
    let r = fully_ramified_check(&q8, &center_character(&q8, false)).unwrap();
    assert_eq!(r.constituents.len(), 4);
    assert!(!r.fully_ramified);

    let z = q8.center().unwrap();
    let r = fully_ramified_check(&z, &center_character(&q8, true)).unwrap();
    assert_eq!((r.e, r.theta_degree, r.fully_ramified), (1, 1, true));
}

#[test]
fn gl2_3_at_two() {
    let gl = load(GL);
    let t = dixon_table(&gl).unwrap().with_name("GL2x3");
    let reports = check_conjecture_a(&t, 2).unwrap();
    // Z ∈ {1, Z2}, |Irr(Z)| ∈ {1, 2}, one block
    assert_eq!(reports.len(), 3);
    let r = reports
        .iter()
        .find(|r| r.z.order == 2 && r.lambda.faithful)
        .unwrap();
    assert!(r.z.full);
    let mut degrees: Vec<u64> = r.members.iter().map(|m| m.degree).collect();
    degrees.sort_unstable();
    assert_eq!(degrees, vec![2, 2, 4]);
    assert!(!r.lhs);
    assert_eq!(r.rhs.both, Some(false));
    assert_eq!(r.verdict, Some(true));
    let heights: Vec<u32> = r.members.iter().map(|m| m.height).collect();
    assert!(heights.iter().all(|&h| h > 0));
    assert!(r.witnesses.positive_height.unwrap().height > 0);
    assert!(r.witnesses.failing_clause.is_some());
    assert!(r.witnesses.commutator.is_some());
    assert_eq!(r.d_abelian, Some(false));
    assert_eq!(rhs_sanity(r), Some(true));
}

#[test]
fn conjecture_a_on_small_groups() {
    for (name, g) in small_groups() {
        let t = dixon_table(&g).unwrap().with_name(name);
        for p in [2u64, 3, 5] {
            for r in check_conjecture_a(&t, p).unwrap() {
                assert!(r.is_consistent(), "{name} p={p}: {r:?}");
                assert_eq!(r.verdict, Some(true), "{name} p={p}: {r:?}");
                assert_eq!(check_murai(&r), Some(true));
                assert_eq!(check_if_direction(&r), Some(true));
                assert_ne!(rhs_sanity(&r), Some(false));
                if g.is_abelian() {
                    assert!(r.lhs && r.rhs.both == Some(true));
                }
                if r.z.order == 1 {
                    assert_eq!(Some(r.lhs), r.d_abelian);
                }
                if r.lambda.index == 0 {
                    assert_eq!(r.rhs.lambda_extends, Some(true));
                }
            }
        }
    }
}

#[test]
fn eaton_for_gl2_3_and_sl2_3() {
    let gl = load(GL);
    let t = dixon_table(&gl).unwrap();
    let part = block_partition(&t, 2).unwrap();
    let n = normal_subgroup(GL, &gl);
    let nt = dixon_table(&n).unwrap();
    let theta = nt.degrees().iter().position(|&d| d == 2).unwrap();
    let r = check_eaton(&t, &part, "Q8", &nt, theta).unwrap();
    assert_eq!(r.blocks.len(), 1);
    let b = &r.blocks[0];
    let mut degrees: Vec<u64> = b.members.iter().map(|m| m.degree).collect();
    degrees.dedup();
    assert_eq!(degrees, vec![2, 4]);
    assert!(b.theta_extends && b.d_mod_n_abelian);
    assert_eq!(b.converse_b, Some(false));
    assert!(r.passes && r.divergences.is_empty());

    let sl = load(SL);
    let t = dixon_table(&sl).unwrap();
    let part = block_partition(&t, 2).unwrap();
    let n = normal_subgroup(SL, &sl);
    let nt = dixon_table(&n).unwrap();
    let mut skipped = 0;
    for theta in 0..nt.values().len() {
        match check_eaton(&t, &part, "Q8", &nt, theta) {
            Ok(r) => assert!(r.passes && r.divergences.is_empty()),
            Err(Error::Precondition(_)) => skipped += 1,
            Err(e) => panic!("{e}"),
        }
    }
    // the three nontrivial linear characters of Q8 are permuted
    assert_eq!(skipped, 3);
}

#[test]
fn eaton_with_trivial_normal_subgroup() {
    let s4 = load(include_str!("../../corpus/S4.json"));
    let t = dixon_table(&s4).unwrap();
    let one = PermGroup::trivial(s4.degree());
    let ot = dixon_table(&one).unwrap();
    for p in [2, 3] {
        let part = block_partition(&t, p).unwrap();
        let r = check_eaton(&t, &part, "1", &ot, 0).unwrap();
        assert_eq!(r.blocks.len(), part.blocks.len());
        for b in &r.blocks {
            // the condition is height zero; D/1 abelian iff D abelian
            assert!(b.some_satisfy && b.theta_extends);
            assert_eq!(b.part_a, Some(true));
        }
        assert!(r.passes);
    }
}

#[test]
fn quotient_sl2_3_to_a4() {
    let sl = load(SL);
    let t = dixon_table(&sl).unwrap();
    let z = sl.center().unwrap();
    let r = quotient_block_check(&t, 2, &z).unwrap();
    assert_eq!(r.quotient_order, 12);
    assert!(r.passes, "{r:?}");
    for b in &r.blocks {
        assert_eq!(b.defect_quotient + 1, b.defect);
    }
    let r = quotient_block_check(&t, 2, &PermGroup::trivial(sl.degree())).unwrap();
    assert!(r.passes);
    assert_eq!(r.quotient_order, 24);
    for b in &r.blocks {
        assert_eq!(b.members, b.inflated);
    }
    assert!(matches!(
        quotient_block_check(&t, 3, &z),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn verdict_report_and_fault_injection() {
    let gl = load(GL);
    let t = dixon_table(&gl).unwrap().with_name("GL2x3");
    let normals = vec![NamedSubgroup {
        name: "Q8".into(),
        group: normal_subgroup(GL, &gl),
    }];
    for p in [2, 3] {
        let mut v = verdict_report(&t, p, &normals).unwrap();
        assert!(v.all_pass, "{v:?}");
        v.inject_height_fault().unwrap();
        assert!(!v.all_pass);
        assert_eq!(v.conjecture_failures, 1);
    }
    let v = verdict_report(&t, 2, &normals).unwrap();
    assert_eq!(v.eaton.len() + v.eaton_skipped.len(), 5);
    assert_eq!(v.quotient.len(), 1);
    let json = serde_json::to_value(&v).unwrap();
    for key in ["group", "p", "checks", "murai", "eaton", "stats", "all_pass"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert_eq!(serde_json::to_string(&v).unwrap(), serde_json::to_string(&verdict_report(&t, 2, &normals).unwrap()).unwrap());
}

#[test]
fn table_only_mode_uses_metadata() {
    let gl = load(GL);
    let computed = dixon_table(&gl).unwrap().with_name("GL2x3");
    let central = (1..computed.num_classes())
        .find(|&k| computed.class_sizes()[k] == 1)
        .unwrap();
    let mut doc = computed.to_document();
    let bare = CharacterTable::ingest(&doc).unwrap();
    let reports = check_conjecture_a(&bare, 2).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].verdict, None);

    doc.central_subgroups.push(CentralSubgroupDoc {
        name: "Z".into(),
        class_indices: vec![0, central],
        defect_metadata: vec![DefectMetadata {
            p: 2,
            characters: (0..computed.num_classes()).collect(),
            order: 16,
            abelian: false,
            abelian_mod_z: Some(false),
        }],
    });
    let t = CharacterTable::ingest(&doc).unwrap();
    let reports = check_conjecture_a(&t, 2).unwrap();
    assert_eq!(reports.len(), 3);
    for r in &reports {
        assert_eq!(r.verdict, Some(true), "{r:?}");
        assert!(r.is_consistent());
    }
    // coprime prime: all defects zero, decidable without metadata
    for r in check_conjecture_a(&bare, 5).unwrap() {
        assert_eq!(r.verdict, Some(true));
    }
}

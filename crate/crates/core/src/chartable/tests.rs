use super::*;
use crate::permgroup::{GroupDefinition, DEFAULT_ENUMERATION_CAP};

fn load(json: &str) -> PermGroup {
    let def: GroupDefinition = serde_json::from_str(json).unwrap();
    def.to_group(DEFAULT_ENUMERATION_CAP).unwrap()
}

fn s3() -> PermGroup {
    load(include_str!("../../corpus/S3.json"))
}
fn q8() -> PermGroup {
    load(include_str!("../../corpus/Q8.json"))
}
fn sl2_3() -> PermGroup {
    load(include_str!("../../corpus/SL2x3.json"))
}
fn gl2_3() -> PermGroup {
    load(include_str!("../../corpus/GL2x3.json"))
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

#[test]
fn class_coefficients_match_pair_counting() {
    for g in [s3(), sl2_3()] {
        let els = g.elements().unwrap();
        let classes = g.conjugacy_classes().unwrap();
        let r = classes.len();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let z = classes.classes[k].rep_index;
                    let brute = classes.classes[i]
                        .members
                        .iter()
                        .flat_map(|&x| classes.classes[j].members.iter().map(move |&y| (x, y)))
                        .filter(|&(x, y)| els.mul(x as usize, y as usize) == z)
                        .count() as u64;
                    assert_eq!(class_mult_coefficients(&g, i, j, k).unwrap(), brute);
                }
            }
        }
    }
    // S3: classes are [1, transpositions, 3-cycles]
    let g = s3();
    assert_eq!(class_mult_coefficients(&g, 0, 0, 0).unwrap(), 1);
    assert_eq!(class_mult_coefficients(&g, 1, 1, 0).unwrap(), 3);
}

#[test]
fn class_coefficients_counting_identity() {
    let g = gl2_3();
    let classes = g.conjugacy_classes().unwrap();
    let r = classes.len();
    let size = |k: usize| classes.classes[k].size as u64;
    for i in 0..r {
        for j in 0..r {
            let s: u64 = (0..r)
                .map(|k| class_mult_coefficients(&g, i, j, k).unwrap() * size(k))
                .sum();
            assert_eq!(s, size(i) * size(j));
        }
    }
}

#[test]
fn dixon_degrees() {
    assert_eq!(sorted(dixon_table(&s3()).unwrap().degrees()), vec![1, 1, 2]);
    assert_eq!(sorted(dixon_table(&q8()).unwrap().degrees()), vec![1, 1, 1, 1, 2]);
    let gl = dixon_table(&gl2_3()).unwrap();
    assert_eq!(gl.degrees(), vec![1, 1, 2, 2, 2, 3, 3, 4]);
    assert_eq!(gl.degrees().iter().map(|d| d * d).sum::<u64>(), 48);
    let trivial = dixon_table(&PermGroup::trivial(1)).unwrap();
    assert_eq!(trivial.degrees(), vec![1]);
}

#[test]
fn dixon_prime_choice() {
    // 2.A8: exponent 840, 2√40320 ≈ 401.6, and 841 = 29², 1681 = 41²
    assert_eq!(dixon_prime(40320, 840, 0), 2521);
    assert_eq!(dixon_prime(6, 6, 0), 7);
    assert_eq!(dixon_prime(6, 6, 1), 13);
}

#[test]
fn dixon_is_independent_of_the_prime() {
    for g in [s3(), q8(), sl2_3(), gl2_3()] {
        let a = dixon_table_with_prime(&g, 0).unwrap();
        let b = dixon_table_with_prime(&g, 1).unwrap();
        assert_ne!(a.dixon_prime(), b.dixon_prime());
        assert_eq!(a.values(), b.values());
    }
}

#[test]
fn tables_satisfy_structural_invariants() {
    for g in [s3(), q8(), sl2_3(), gl2_3()] {
        let t = dixon_table(&g).unwrap();
        assert_eq!(t.values().len(), t.num_classes());
        for d in t.degrees() {
            assert_eq!(g.order_u64() % d, 0);
        }
        for row in t.values() {
            for v in row {
                assert_eq!(t.exponent() % v.conductor(), 0);
            }
        }
        assert!(t.values()[t.trivial_row()].iter().all(|v| *v == Cyclotomic::one(1)));
        for k in 0..t.num_classes() {
            assert_eq!(t.inverse_class(t.inverse_class(k)), k);
        }
    }
}

const S3_DOC: &str = r#"{
  "name": "S3", "order": 6, "exponent": 6,
  "class_sizes": [1, 3, 2], "element_orders": [1, 2, 3],
  "characters": [[1, 1, 1], [1, -1, 1], [2, 0, -1]]
}"#;

#[test]
fn ingest_accepts_and_rejects() {
    let t = CharacterTable::from_json(S3_DOC).unwrap();
    assert_eq!(t.degrees(), vec![1, 1, 2]);
    assert!(t.group().is_none());

    let flipped = S3_DOC.replace("[1, -1, 1]", "[1, 1, 1]");
    match CharacterTable::from_json(&flipped) {
        Err(Error::Orthogonality(msg)) => assert!(msg.contains("column"), "{msg}"),
        other => panic!("expected an orthogonality error, got {other:?}"),
    }

    let bad_sizes = S3_DOC.replace("[1, 3, 2]", "[1, 3, 3]");
    assert!(matches!(
        CharacterTable::from_json(&bad_sizes),
        Err(Error::MalformedInput(_))
    ));

    let missing_row = S3_DOC.replace(", [2, 0, -1]", "");
    assert!(CharacterTable::from_json(&missing_row).is_err());
}

#[test]
fn export_round_trip() {
    let t = dixon_table(&gl2_3()).unwrap().with_name("GL2x3");
    let back = CharacterTable::from_json(&t.to_json()).unwrap();
    assert_eq!(back.values(), t.values());
    assert_eq!(back.power_maps(), t.power_maps());
    assert_eq!(back.name(), "GL2x3");
}

#[test]
fn restriction_to_central_subgroups() {
    let g = q8();
    let t = dixon_table(&g).unwrap();
    let z = CentralSubgroup::from_group(&t, &g.center().unwrap(), "Z").unwrap();
    let triv = restrict_to_central(&t, t.trivial_row(), &z).unwrap();
    assert!(triv.is_trivial());
    let one = CentralSubgroup::trivial();
    for row in 0..t.values().len() {
        assert!(restrict_to_central(&t, row, &one).unwrap().is_trivial());
    }
    let irr = irr_of_central(&t, &z).unwrap();
    assert_eq!(irr.len(), 2);
    assert!(irr[0].is_trivial() && irr[1].is_faithful());
    let over: Vec<u64> = irr_over(&t, &z, &irr[1]).unwrap().iter().map(|c| c.degree).collect();
    assert_eq!(over, vec![2]);
    let over_trivial = irr_over(&t, &z, &irr[0]).unwrap();
    assert_eq!(over_trivial.len(), 4);

    let not_central = g.sylow(2).unwrap();
    assert!(matches!(
        CentralSubgroup::from_group(&t, &not_central, "Q8"),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn gl2_3_over_faithful_central_character() {
    let g = gl2_3();
    let t = dixon_table(&g).unwrap();
    let z = CentralSubgroup::from_group(&t, &g.center().unwrap(), "Z").unwrap();
    let irr = irr_of_central(&t, &z).unwrap();
    let faithful: Vec<u64> = irr_over(&t, &z, &irr[1]).unwrap().iter().map(|c| c.degree).collect();
    assert_eq!(faithful, vec![2, 2, 4]);
    let total: u64 = irr
        .iter()
        .flat_map(|l| irr_over(&t, &z, l).unwrap())
        .map(|c| c.degree * c.degree)
        .sum();
    assert_eq!(total, 48);
}

#[test]
fn irr_over_rejects_non_homomorphisms() {
    let g = q8();
    let t = dixon_table(&g).unwrap();
    let z = CentralSubgroup::from_group(&t, &g.center().unwrap(), "Z").unwrap();
    let bogus = LinearCharacter {
        classes: z.classes.clone(),
        values: vec![Cyclotomic::one(4), Cyclotomic::zeta(4, 1)],
    };
    assert!(matches!(irr_over(&t, &z, &bogus), Err(Error::MalformedInput(_))));
}

#[test]
fn central_degree_sums() {
    for g in [s3(), q8(), sl2_3(), gl2_3()] {
        let t = dixon_table(&g).unwrap();
        let center = g.center().unwrap();
        for p in [2u64, 3] {
            let zp = center.sylow(p).unwrap();
            for sub in zp.subgroups_of_abelian_p_group(p).unwrap() {
                let z = CentralSubgroup::from_group(&t, &sub, "Z").unwrap();
                for lambda in irr_of_central(&t, &z).unwrap() {
                    let s: u64 = irr_over(&t, &z, &lambda)
                        .unwrap()
                        .iter()
                        .map(|c| c.degree * c.degree)
                        .sum();
                    assert_eq!(s, g.order_u64() / z.order());
                }
            }
        }
    }
}

#[test]
fn restriction_multiplicities() {
    let g = s3();
    let t = dixon_table(&g).unwrap();
    let a3 = g.derived_subgroup().unwrap();
    let ta3 = dixon_table(&a3).unwrap();
    let deg2 = t.degrees().iter().position(|&d| d == 2).unwrap();
    let triv = ta3.trivial_row();
    for eta in 0..3 {
        let m = restrict_and_match(&t, deg2, &ta3, eta).unwrap();
        assert_eq!(m.multiplicity, u64::from(eta != triv));
        assert!(!m.equal);
    }
    let m = restrict_and_match(&t, t.trivial_row(), &ta3, triv).unwrap();
    assert_eq!(m, RestrictionMatch { multiplicity: 1, equal: true });

    let g = gl2_3();
    let t = dixon_table(&g).unwrap();
    let def: serde_json::Value = serde_json::from_str(include_str!("../../corpus/GL2x3.json")).unwrap();
    let ngens: Vec<Vec<Vec<usize>>> =
        serde_json::from_value(def["normal_subgroups"][0]["generators"].clone()).unwrap();
    let n = g
        .subgroup(
            ngens
                .iter()
                .map(|c| Permutation::from_cycles(g.degree(), c).unwrap())
                .collect(),
        )
        .unwrap();
    assert_eq!(n.order_u64(), 8);
    let tn = dixon_table(&n).unwrap();
    let theta = tn.degrees().iter().position(|&d| d == 2).unwrap();
    let z = CentralSubgroup::from_group(&t, &g.center().unwrap(), "Z").unwrap();
    let faithful = &irr_of_central(&t, &z).unwrap()[1];
    let over = irr_over(&t, &z, faithful).unwrap();
    for chi in over.iter().filter(|c| c.degree == 2) {
        let m = restrict_and_match(&t, chi.index, &tn, theta).unwrap();
        assert_eq!(m, RestrictionMatch { multiplicity: 1, equal: true });
    }
}

use std::collections::{BTreeSet, HashSet};

use super::*;

fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
    let c: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Permutation::from_cycles(n, &c).unwrap()
}

fn group(n: usize, gens: &[&[&[usize]]]) -> PermGroup {
    PermGroup::from_generators(n, gens.iter().map(|g| perm(n, g)).collect()).unwrap()
}

fn s3() -> PermGroup {
    group(3, &[&[&[0, 1, 2]], &[&[0, 1]]])
}

/// Q8 acting regularly: points 0..8 are 1,-1,i,-i,j,-j,k,-k; right
/// multiplication by i and j.
fn q8() -> PermGroup {
    group(
        8,
        &[
            &[&[0, 2, 1, 3], &[4, 7, 5, 6]],
            &[&[0, 4, 1, 5], &[2, 6, 3, 7]],
        ],
    )
}

fn sl2_3() -> PermGroup {
    // SL2(3) on the 8 nonzero vectors of F_3^2, as shipped in the corpus
    let def: GroupDefinition = serde_json::from_str(include_str!("../../corpus/SL2x3.json")).unwrap();
    def.to_group(DEFAULT_ENUMERATION_CAP).unwrap()
}

// --- brute-force oracles -------------------------------------------------

fn closure_oracle(g: &PermGroup) -> Vec<Permutation> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let id = Permutation::identity(g.degree());
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for s in g.generators() {
            let y = x.then(s);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let mut v: Vec<_> = seen.into_iter().collect();
    v.sort();
    v
}

fn classes_oracle(g: &PermGroup) -> Vec<usize> {
    let all = closure_oracle(g);
    let mut done: HashSet<Permutation> = HashSet::new();
    let mut sizes = Vec::new();
    for x in &all {
        if done.contains(x) {
            continue;
        }
        let orbit: BTreeSet<Permutation> = all.iter().map(|h| x.conjugate_by(h)).collect();
        sizes.push(orbit.len());
        done.extend(orbit);
    }
    sizes
}

// --- tests ---------------------------------------------------------------

#[test]
fn orders_from_generators() {
    assert_eq!(s3().order_u64(), 6);
    assert_eq!(group(4, &[&[&[0, 1], &[2, 3]], &[&[0, 2], &[1, 3]]]).order_u64(), 4);
    assert_eq!(q8().order_u64(), closure_oracle(&q8()).len() as u64);
    assert_eq!(q8().order_u64(), 8);
}

#[test]
fn rejects_mismatched_degree() {
    let err = PermGroup::from_generators(4, vec![perm(3, &[&[0, 1]])]).unwrap_err();
    assert!(matches!(err, Error::MalformedInput(_)));
}

#[test]
fn element_enumeration_is_sorted_and_complete() {
    let g = sl2_3();
    let els = g.elements().unwrap();
    assert_eq!(els.perms(), closure_oracle(&g).as_slice());
    assert!(els.perm(0).is_identity());
    for a in 0..els.len() {
        assert_eq!(els.mul(a, els.inv(a)), 0);
        for b in [0, 3, 7, 11] {
            assert_eq!(els.perm(els.mul(a, b)), &els.perm(a).then(els.perm(b)));
        }
    }
}

#[test]
fn class_sizes_match_oracle() {
    let sizes = |g: &PermGroup| {
        g.conjugacy_classes()
            .unwrap()
            .classes
            .iter()
            .map(|c| c.size)
            .collect::<Vec<_>>()
    };
    assert_eq!(sizes(&s3()), classes_oracle(&s3()));
    assert_eq!(sizes(&s3()), vec![1, 3, 2]);
    let mut q = sizes(&q8());
    assert_eq!(q, classes_oracle(&q8()));
    q.sort();
    assert_eq!(q, vec![1, 1, 2, 2, 2]);
    assert_eq!(sizes(&PermGroup::trivial(3)), vec![1]);
    assert_eq!(sizes(&sl2_3()), classes_oracle(&sl2_3()));
}

#[test]
fn class_representatives_are_least_elements() {
    let g = sl2_3();
    let classes = g.conjugacy_classes().unwrap();
    let els = g.elements().unwrap();
    for c in &classes.classes {
        let least = c.members.iter().map(|&i| els.perm(i as usize)).min().unwrap();
        assert_eq!(least, &c.representative);
    }
    assert!(classes.classes[0].representative.is_identity());
}

#[test]
fn centralizer_orders() {
    for g in [s3(), q8(), sl2_3()] {
        let n = g.order_u64();
        for c in &g.conjugacy_classes().unwrap().classes {
            let cg = g.centralizer(&c.representative).unwrap();
            assert_eq!(cg.order_u64() * c.size as u64, n);
        }
    }
}

#[test]
fn center_and_derived() {
    let z = q8().center().unwrap();
    assert_eq!(z.order_u64(), 2);
    let all = closure_oracle(&q8());
    let brute = all
        .iter()
        .filter(|x| all.iter().all(|y| x.commutes_with(y)))
        .count();
    assert_eq!(brute, 2);

    let d = s3().derived_subgroup().unwrap();
    assert_eq!(d.order_u64(), 3);
    assert!(d.is_normal_in(&s3()));
    assert!(s3().is_abelian_modulo(&d));
    assert_eq!(q8().derived_subgroup().unwrap().order_u64(), 2);
    assert_eq!(sl2_3().derived_subgroup().unwrap().order_u64(), 8);
}

#[test]
fn sylow_orders() {
    let g = sl2_3();
    assert_eq!(g.sylow(2).unwrap().order_u64(), 8);
    assert_eq!(g.sylow(3).unwrap().order_u64(), 3);
    assert_eq!(g.sylow(5).unwrap().order_u64(), 1);
    assert!(matches!(g.sylow(4), Err(Error::MalformedInput(_))));
    let gl: GroupDefinition =
        serde_json::from_str(include_str!("../../corpus/GL2x3.json")).unwrap();
    let gl = gl.to_group(DEFAULT_ENUMERATION_CAP).unwrap();
    let p = gl.sylow(2).unwrap();
    assert_eq!(p.order_u64(), 16);
    assert!(p.is_subgroup_of(&gl));
}

#[test]
fn quotients_by_central_subgroups() {
    let (q, proj) = q8().quotient_by_central(&q8().center().unwrap()).unwrap();
    assert_eq!(q.order_u64(), 4);
    assert!(q.is_abelian());
    for x in closure_oracle(&q8()) {
        assert!(q.contains(&proj.apply(&x).unwrap()));
    }

    let g = sl2_3();
    let (a4, _) = g.quotient_by_central(&g.center().unwrap()).unwrap();
    assert_eq!(a4.order_u64(), 12);
    let mut sizes: Vec<usize> = a4
        .conjugacy_classes()
        .unwrap()
        .classes
        .iter()
        .map(|c| c.size)
        .collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 3, 4, 4]);

    let (same, _) = s3().quotient_by_central(&PermGroup::trivial(3)).unwrap();
    assert_eq!(same.order_u64(), 6);
    assert_eq!(classes_oracle(&same).len(), 3);

    let not_central = s3().subgroup(vec![perm(3, &[&[0, 1]])]).unwrap();
    assert!(matches!(
        s3().quotient_by_central(&not_central),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn regular_quotient_kernel_is_k() {
    // Q8 in its regular action: K-orbits give a faithful action of Q8/Z on 4 points.
    // Force the regular route with C4 acting on itself modulo C2: orbits of
    // C2 = <(0 2)(1 3)> give the 2-point action.
    let c4 = group(4, &[&[&[0, 1, 2, 3]]]);
    let k = c4.subgroup(vec![perm(4, &[&[0, 2], &[1, 3]])]).unwrap();
    let (q, proj) = c4.quotient_by_central(&k).unwrap();
    assert_eq!(q.order_u64(), 2);
    for x in closure_oracle(&c4) {
        let img = proj.apply(&x).unwrap();
        assert_eq!(img.is_identity(), k.contains(&x));
    }
}

#[test]
fn abelian_p_subgroups() {
    let c4 = group(4, &[&[&[0, 1, 2, 3]]]);
    let subs = c4.subgroups_of_abelian_p_group(2).unwrap();
    let orders: Vec<u64> = subs.iter().map(|s| s.order_u64()).collect();
    assert_eq!(orders, vec![1, 2, 4]);

    let v4 = group(4, &[&[&[0, 1], &[2, 3]], &[&[0, 2], &[1, 3]]]);
    assert_eq!(v4.subgroups_of_abelian_p_group(2).unwrap().len(), 5);

    let c2 = group(2, &[&[&[0, 1]]]);
    assert_eq!(c2.subgroups_of_abelian_p_group(2).unwrap().len(), 2);

    assert!(matches!(
        s3().subgroups_of_abelian_p_group(2),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn enumeration_cap_is_enforced() {
    let g = PermGroup::with_cap(
        6,
        vec![perm(6, &[&[0, 1, 2, 3, 4, 5]]), perm(6, &[&[0, 1]])],
        100,
    )
    .unwrap();
    match g.elements() {
        Err(Error::ResourceExceeded { cap, .. }) => assert_eq!(cap, 100),
        other => panic!("expected cap error, got {:?}", other.map(|e| e.len())),
    }
}

#[test]
fn definition_round_trip() {
    let def = s3().to_definition("S3");
    let json = serde_json::to_string(&def).unwrap();
    let back: GroupDefinition = serde_json::from_str(&json).unwrap();
    assert_eq!(back.to_group(10).unwrap().order_u64(), 6);
}

//! Acceptance criteria, one pass/fail line each. Runs without the libtest
//! harness so the lines always reach stdout.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use phz_core::blocks::{block_partition, block_partition_with, heights};
use phz_core::chartable::{
    dixon_table, dixon_table_with_prime, irr_of_central, irr_over, CentralSubgroup, CharacterTable,
};
use phz_core::conjecture::{
    check_conjecture_a, fully_ramified_check, quotient_block_check, theta_extends_to, verdict_report,
    VerdictReport, ZCharacter,
};
use phz_core::corpus::{embedded_corpus, embedded_entry, CorpusEntry, RunConfig};
use phz_core::permgroup::DEFAULT_ENUMERATION_CAP;
use phz_core::{Cyclotomic, ModpReduction};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

struct Corpus {
    entries: Vec<CorpusEntry>,
    tables: Vec<CharacterTable>,
}

impl Corpus {
    fn load() -> Result<Corpus, String> {
        let entries = embedded_corpus(DEFAULT_ENUMERATION_CAP).map_err(err)?;
        let config = RunConfig::default();
        let tables = entries
            .iter()
            .map(|e| e.table(&config))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        Ok(Corpus { entries, tables })
    }

    fn reports(&self, primes: &[u64]) -> Result<Vec<VerdictReport>, String> {
        let mut out = Vec::new();
        for (e, t) in self.entries.iter().zip(&self.tables) {
            let normals = e.normals().map_err(err)?;
            for &p in primes {
                out.push(verdict_report(t, p, &normals).map_err(|x| format!("{} p={p}: {x}", e.name))?);
            }
        }
        Ok(out)
    }
}

fn faithful_center_character(t: &CharacterTable) -> Result<(CentralSubgroup, ZCharacter, usize), String> {
    let g = t.group().ok_or("no group")?;
    let z = CentralSubgroup::from_group(t, &g.center().map_err(err)?, "Z").map_err(err)?;
    let irr = irr_of_central(t, &z).map_err(err)?;
    let li = irr.iter().position(|l| l.is_faithful()).ok_or("no faithful λ")?;
    let zc = ZCharacter::from_table(t, &z, &irr[li]).map_err(err)?;
    Ok((z, zc, li))
}

fn criterion_1() -> Outcome {
    let e = embedded_entry("2_A8", DEFAULT_ENUMERATION_CAP).map_err(err)?;
    let t = e.table(&RunConfig::default()).map_err(err)?;
    let g = t.group().ok_or("no group")?;
    let part = block_partition(&t, 2).map_err(err)?;
    let b0 = &part.blocks[part.principal(&t)];
    ensure!(b0.defect == 7, "principal block defect {}", b0.defect);
    let (z, zc, li) = faithful_center_character(&t)?;
    let irr = irr_of_central(&t, &z).map_err(err)?;
    let hs = heights(&t, b0);
    let over: Vec<(u64, u32)> = irr_over(&t, &z, &irr[li])
        .map_err(err)?
        .into_iter()
        .filter(|c| part.block_of[c.index] == part.principal(&t))
        .map(|c| (c.degree, hs.height_of(c.index).unwrap()))
        .collect();
    let degrees: BTreeSet<u64> = over.iter().map(|&(d, _)| d).collect();
    ensure!(degrees.is_superset(&BTreeSet::from([8, 24, 48])), "degrees over λ: {degrees:?}");
    for &(d, h) in &over {
        let want = match d {
            8 | 24 => 3,
            48 => 4,
            _ => continue,
        };
        ensure!(h == want, "degree {d} has height {h}, expected {want}");
    }
    let sylow = g.sylow(2).map_err(err)?;
    ensure!(sylow.order_u64() == 128, "Sylow 2-subgroup of order {}", sylow.order_u64());
    let fr = fully_ramified_check(&sylow, &zc).map_err(err)?;
    ensure!(fr.e == 8 && fr.theta_degree == 8 && fr.fully_ramified, "λ^P: {fr:?}");
    Ok(format!(
        "2.A8 p=2: members over faithful λ in B0 {:?}, e = {}",
        over, fr.e
    ))
}

fn criterion_2() -> Outcome {
    let e = embedded_entry("GL2x3", DEFAULT_ENUMERATION_CAP).map_err(err)?;
    let t = e.table(&RunConfig::default()).map_err(err)?;
    let g = t.group().ok_or("no group")?;
    let part = block_partition(&t, 2).map_err(err)?;
    ensure!(part.blocks.len() == 1, "{} blocks", part.blocks.len());
    let d = part.blocks[0].defect_group.as_ref().ok_or("no defect group")?;
    ensure!(d.order_u64() == 16, "|D| = {}", d.order_u64());
    let n = e.normals().map_err(err)?.into_iter().find(|n| n.name == "Q8").ok_or("no Q8")?;
    let nt = dixon_table(&n.group).map_err(err)?;
    let theta = nt.degrees().iter().position(|&x| x == 2).ok_or("no θ of degree 2")?;
    let p = g.sylow(2).map_err(err)?;
    ensure!(theta_extends_to(&p, &nt, theta).map_err(err)?, "θ does not extend to P");
    ensure!(p.is_abelian_modulo(&n.group), "P/N is not abelian");
    let mut degrees = BTreeSet::new();
    for row in 0..t.values().len() {
        let m = phz_core::chartable::restrict_and_match(&t, row, &nt, theta).map_err(err)?;
        if m.multiplicity > 0 {
            degrees.insert(t.degree(row));
        }
    }
    ensure!(degrees == BTreeSet::from([2, 4]), "degrees over θ: {degrees:?}");
    Ok(format!("GL2(3) p=2: one block, |D| = 16, θ extends, P/N abelian, degrees over θ {degrees:?}"))
}

fn criterion_3(reports: &[VerdictReport]) -> Outcome {
    let mut total = 0;
    for r in reports {
        for c in &r.checks {
            total += 1;
            ensure!(
                c.verdict == Some(true),
                "{} p={} Z={} λ{} block {}: verdict {:?}",
                r.group,
                r.p,
                c.z.name,
                c.lambda.index,
                c.block,
                c.verdict
            );
        }
    }
    Ok(format!("{total} (Z, λ, B) instances over {} runs, zero failures", reports.len()))
}

fn criterion_4(reports: &[VerdictReport]) -> Outcome {
    let mut counts = [0usize; 5];
    for r in reports {
        let tag = format!("{} p={}", r.group, r.p);
        for (name, list) in [("murai", &r.murai), ("if-direction", &r.if_direction), ("rhs", &r.rhs_sanity)] {
            for e in list.iter() {
                ensure!(e.holds == Some(true), "{tag}: {name} fails at Z={} λ{} block {}", e.z, e.lambda, e.block);
            }
        }
        counts[0] += r.murai.len();
        counts[1] += r.if_direction.len();
        for tw in &r.twist {
            ensure!(tw.image.is_some(), "{tag}: twist of block {} by row {} fails", tw.block, tw.mu);
        }
        counts[2] += r.twist.len();
        for q in &r.quotient {
            ensure!(q.passes, "{tag}: quotient by K of order {} fails", q.k_order);
        }
        counts[3] += r.quotient.len();
        for e in &r.eaton {
            ensure!(e.passes, "{tag}: Eaton check over {} θ{} fails", e.n, e.theta);
        }
        counts[4] += r.eaton.len();
        ensure!(r.theorem_failures == 0, "{tag}: {} theorem failures", r.theorem_failures);
    }
    for (name, from, to) in [("SL2x3", 24, 12), ("2_A6", 720, 360)] {
        let e = embedded_entry(name, DEFAULT_ENUMERATION_CAP).map_err(err)?;
        let t = e.table(&RunConfig::default()).map_err(err)?;
        let z = e.group.as_ref().unwrap().center().map_err(err)?;
        let q = quotient_block_check(&t, 2, &z).map_err(err)?;
        ensure!(q.passes && q.quotient_order == to, "{name}: {q:?}");
        ensure!(t.order() == from, "{name} order");
        for b in &q.blocks {
            ensure!(b.defect_quotient + 1 == b.defect, "{name}: defect drop is not 1");
            ensure!(b.heights_preserved, "{name}: heights not preserved");
        }
    }
    Ok(format!(
        "murai {}, if-direction {}, twists {}, quotients {} (+ SL2(3)→A4, 2.A6→A6), Eaton reports {}; covering never empty",
        counts[0], counts[1], counts[2], counts[3], counts[4]
    ))
}

/// Whether two tables agree up to a permutation of rows and of columns
/// (columns must match in class size and element order).
fn same_up_to_permutation(a: &CharacterTable, b: &CharacterTable) -> bool {
    let r = a.num_classes();
    if r != b.num_classes() || a.order() != b.order() {
        return false;
    }
    fn search(a: &CharacterTable, b: &CharacterTable, k: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let r = a.num_classes();
        if k == r {
            let mut rows_a: Vec<Vec<Cyclotomic>> = a.values().to_vec();
            let mut rows_b: Vec<Vec<Cyclotomic>> = b
                .values()
                .iter()
                .map(|row| map.iter().map(|&j| row[j].clone()).collect())
                .collect();
            rows_a.sort();
            rows_b.sort();
            return rows_a == rows_b;
        }
        for j in 0..r {
            if !used[j]
                && a.class_sizes()[k] == b.class_sizes()[j]
                && a.element_orders()[k] == b.element_orders()[j]
            {
                used[j] = true;
                map.push(j);
                if search(a, b, k + 1, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    search(a, b, 0, &mut Vec::new(), &mut vec![false; r])
}

fn criterion_5(corpus: &Corpus) -> Outcome {
    let fixtures = [
        ("S3", include_str!("fixtures/S3.json")),
        ("S4", include_str!("fixtures/S4.json")),
        ("A5", include_str!("fixtures/A5.json")),
        ("Q8", include_str!("fixtures/Q8.json")),
        ("D8", include_str!("fixtures/D8.json")),
        ("SL2x3", include_str!("fixtures/SL2x3.json")),
    ];
    for (name, text) in fixtures {
        let fixture = CharacterTable::from_json(text).map_err(|e| format!("fixture {name}: {e}"))?;
        let i = corpus.entries.iter().position(|e| e.name == name).ok_or(name)?;
        ensure!(
            same_up_to_permutation(&fixture, &corpus.tables[i]),
            "{name}: computed table differs from the fixture"
        );
    }
    for t in &corpus.tables {
        t.verify().map_err(|e| format!("{}: {e}", t.name()))?;
        let s: u64 = t.degrees().iter().map(|d| d * d).sum();
        ensure!(s == t.order(), "{}: Σχ(1)² = {s}", t.name());
        let back = CharacterTable::from_json(&t.to_json()).map_err(|e| format!("{}: {e}", t.name()))?;
        back.verify().map_err(err)?;
    }
    Ok(format!(
        "6 fixtures match; {} computed and re-ingested tables verified",
        corpus.tables.len()
    ))
}

fn criterion_6(corpus: &Corpus) -> Outcome {
    let mut comparisons = 0;
    let mut single = 0;
    for (e, t) in corpus.entries.iter().zip(&corpus.tables) {
        let g = e.group.as_ref().ok_or("no group")?;
        let t2 = dixon_table_with_prime(g, 1).map_err(err)?;
        ensure!(t.dixon_prime() != t2.dixon_prime(), "{}: same Dixon prime", e.name);
        // rows of t2 as rows of t
        let row_map: Vec<usize> = t2
            .values()
            .iter()
            .map(|row| t.values().iter().position(|r| r == row).ok_or("tables differ"))
            .collect::<Result<_, _>>()?;
        for p in [2u64, 3] {
            let base = block_partition(t, p).map_err(err)?;
            let sets = |part: &phz_core::blocks::BlockPartition, map: &dyn Fn(usize) -> usize| {
                part.blocks
                    .iter()
                    .map(|b| b.members.iter().map(|&r| map(r)).collect::<BTreeSet<_>>())
                    .collect::<BTreeSet<_>>()
            };
            let want = sets(&base, &|r| r);
            let other_prime = block_partition(&t2, p).map_err(err)?;
            ensure!(sets(&other_prime, &|r| row_map[r]) == want, "{} p={p}: Dixon primes disagree", e.name);
            let alt = ModpReduction::alternate(t.exponent(), p).map_err(err)?;
            let distinct = alt.twist() != base.reduction.twist()
                || alt.field().modulus() != base.reduction.field().modulus()
                || alt.theta() != base.reduction.theta();
            if distinct {
                let with_alt = block_partition_with(t, p, &alt).map_err(err)?;
                ensure!(sets(&with_alt, &|r| r) == want, "{} p={p}: reduction maps disagree", e.name);
                comparisons += 1;
            } else {
                // F_q has a single defining polynomial and a single ideal
                single += 1;
            }
            comparisons += 1;
        }
    }
    Ok(format!(
        "{comparisons} partition comparisons, zero discrepancies; {single} (group, p) pairs admit one reduction only"
    ))
}

fn criterion_7(corpus: &Corpus, reports: &[VerdictReport]) -> Outcome {
    for t in &corpus.tables {
        let p = [7u64, 11, 13].into_iter().find(|&p| t.order() % p != 0).unwrap();
        let part = block_partition(t, p).map_err(err)?;
        ensure!(part.blocks.len() == t.values().len(), "{} p={p}: not all singletons", t.name());
        ensure!(part.blocks.iter().all(|b| b.defect == 0), "{} p={p}: positive defect", t.name());
        for r in check_conjecture_a(t, p).map_err(err)? {
            ensure!(r.lhs && r.rhs.both == Some(true), "{} p={p}: coprime check not trivially true", t.name());
        }
    }
    let mut z1 = 0;
    let mut trivial = 0;
    for r in reports {
        for c in &r.checks {
            if c.z.order == 1 {
                z1 += 1;
                ensure!(
                    Some(c.lhs) == c.d_abelian && c.rhs.both == c.d_abelian,
                    "{} p={} block {}: Z = 1 is not the classical statement",
                    r.group,
                    r.p,
                    c.block
                );
            }
            if c.lambda.index == 0 {
                trivial += 1;
                ensure!(c.rhs.lambda_extends == Some(true), "{} p={}: trivial λ blocked", r.group, r.p);
            }
        }
    }
    Ok(format!(
        "coprime primes give defect-zero singletons; {z1} Z = 1 checks match the classical statement; {trivial} trivial-λ checks extend"
    ))
}

fn main() -> ExitCode {
    let mut failures = 0;
    let mut report = |n: u32, budget: Duration, start: Instant, outcome: Outcome| {
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed > budget {
                Err(format!("{msg}; took {elapsed:.1?}, budget {budget:?}"))
            } else {
                Ok(msg)
            }
        });
        match outcome {
            Ok(msg) => println!("PASS criterion {n}: {msg} [{elapsed:.2?}]"),
            Err(msg) => {
                failures += 1;
                println!("FAIL criterion {n}: {msg} [{elapsed:.2?}]");
            }
        }
    };

    let s = Instant::now();
    report(1, Duration::from_secs(600), s, criterion_1());
    let s = Instant::now();
    report(2, Duration::from_secs(5), s, criterion_2());

    let s = Instant::now();
    let corpus = match Corpus::load() {
        Ok(c) => c,
        Err(e) => {
            println!("FAIL corpus load: {e}");
            return ExitCode::FAILURE;
        }
    };
    let reports = corpus.reports(&[2, 3, 5]);
    let load_time = s.elapsed();
    match &reports {
        Ok(reports) => {
            let s3 = Instant::now() - load_time;
            report(3, Duration::from_secs(1800), s3, criterion_3(reports));
            let s = Instant::now();
            report(4, Duration::from_secs(1800), s, criterion_4(reports));
        }
        Err(e) => {
            report(3, Duration::MAX, Instant::now(), Err(e.clone()));
            report(4, Duration::MAX, Instant::now(), Err(e.clone()));
        }
    }
    let s = Instant::now();
    report(5, Duration::from_secs(600), s, criterion_5(&corpus));
    let s = Instant::now();
    report(6, Duration::from_secs(600), s, criterion_6(&corpus));
    let s = Instant::now();
    let outcome = match &reports {
        Ok(r) => criterion_7(&corpus, r),
        Err(e) => Err(e.clone()),
    };
    report(7, Duration::from_secs(600), s, outcome);

    if failures == 0 {
        println!("acceptance: all 7 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria fail");
        ExitCode::FAILURE
    }
}

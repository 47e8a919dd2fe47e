use serde::Serialize;

use super::{
    central_p_subgroups, check_conjecture_a_with, check_eaton, check_if_direction, check_murai,
    quotient_block_check, rhs_sanity, ConjAReport, EatonMoretoStat, EatonReport, QuotientReport,
};
use crate::blocks::{block_partition, twist_block};
use crate::chartable::{dixon_table, CharacterTable};
use crate::error::{Error, Result};
use crate::permgroup::PermGroup;

/// A named subgroup supplied with a corpus entry.
#[derive(Clone, Debug)]
pub struct NamedSubgroup {
    pub name: String,
    pub group: PermGroup,
}

/// Outcome of a theorem-backed implication for one `(Z, λ, B)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremEntry {
    pub z: String,
    pub lambda: usize,
    pub block: usize,
    /// `None` when undecidable from the available data.
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistEntry {
    pub mu: usize,
    pub block: usize,
    /// `None` when the image fails to be a block with the same heights.
    pub image: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatEntry {
    pub z: String,
    pub lambda: usize,
    pub block: usize,
    pub stat: EatonMoretoStat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EatonSkip {
    pub n: String,
    pub theta: usize,
    pub reason: String,
}

/// Everything checked for one group at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub group: String,
    pub p: u64,
    pub checks: Vec<ConjAReport>,
    pub murai: Vec<TheoremEntry>,
    pub if_direction: Vec<TheoremEntry>,
    pub rhs_sanity: Vec<TheoremEntry>,
    pub twist: Vec<TwistEntry>,
    pub quotient: Vec<QuotientReport>,
    pub eaton: Vec<EatonReport>,
    pub eaton_skipped: Vec<EatonSkip>,
    pub stats: Vec<StatEntry>,
    /// Checks with a false verdict.
    pub conjecture_failures: usize,
    /// Checks or implications that could not be decided.
    pub conditional: usize,
    pub theorem_failures: usize,
    pub all_pass: bool,
}

fn entries(checks: &[ConjAReport], f: impl Fn(&ConjAReport) -> Option<Option<bool>>) -> Vec<TheoremEntry> {
    checks
        .iter()
        .filter_map(|r| {
            f(r).map(|holds| TheoremEntry {
                z: r.z.name.clone(),
                lambda: r.lambda.index,
                block: r.block,
                holds,
            })
        })
        .collect()
}

/// Runs every check for `table` at `p`. `normals` are candidate normal
/// subgroups for the Eaton variant; those that are not `p`-groups are
/// ignored.
pub fn verdict_report(table: &CharacterTable, p: u64, normals: &[NamedSubgroup]) -> Result<VerdictReport> {
    let partition = block_partition(table, p)?;
    let checks = check_conjecture_a_with(table, &partition)?;

    let mut twist = Vec::new();
    for mu in (0..table.values().len()).filter(|&r| table.degree(r) == 1) {
        for block in 0..partition.blocks.len() {
            let image = match twist_block(table, &partition, block, mu) {
                Ok(b) => Some(b),
                Err(Error::Internal(_)) => None,
                Err(e) => return Err(e),
            };
            twist.push(TwistEntry { mu, block, image });
        }
    }

    let mut quotient = Vec::new();
    let mut eaton = Vec::new();
    let mut eaton_skipped = Vec::new();
    if table.group().is_some() {
        for z in central_p_subgroups(table, p)? {
            if let Some(k) = z.group.as_ref().filter(|k| !k.is_trivial()) {
                quotient.push(quotient_block_check(table, p, k)?);
            }
        }
        for n in normals {
            let order = n.group.order_u64();
            if order == 1 || p.pow(crate::arith::valuation_u64(order, p)) != order {
                continue;
            }
            let n_table = dixon_table(&n.group)?.with_name(n.name.clone());
            for theta in 0..n_table.values().len() {
                match check_eaton(table, &partition, &n.name, &n_table, theta) {
                    Ok(r) => eaton.push(r),
                    Err(Error::Precondition(reason)) => eaton_skipped.push(EatonSkip {
                        n: n.name.clone(),
                        theta,
                        reason,
                    }),
                    Err(e) => return Err(e),
                }
            }
        }
    }

    let stats = checks
        .iter()
        .filter_map(|r| {
            r.stat.clone().map(|stat| StatEntry {
                z: r.z.name.clone(),
                lambda: r.lambda.index,
                block: r.block,
                stat,
            })
        })
        .collect();

    let mut report = VerdictReport {
        group: table.name().to_string(),
        p,
        checks,
        murai: Vec::new(),
        if_direction: Vec::new(),
        rhs_sanity: Vec::new(),
        twist,
        quotient,
        eaton,
        eaton_skipped,
        stats,
        conjecture_failures: 0,
        conditional: 0,
        theorem_failures: 0,
        all_pass: false,
    };
    report.refresh();
    Ok(report)
}

impl VerdictReport {
    /// Recomputes everything derived from `checks`.
    pub fn refresh(&mut self) {
        for r in &mut self.checks {
            r.recompute();
        }
        self.murai = entries(&self.checks, |r| Some(check_murai(r)));
        self.if_direction = entries(&self.checks, |r| Some(check_if_direction(r)));
        self.rhs_sanity = entries(&self.checks, |r| {
            (r.z.full && r.lambda.faithful).then(|| rhs_sanity(r))
        });
        self.conjecture_failures = self.checks.iter().filter(|r| r.verdict == Some(false)).count();
        let theorem_entries = self.murai.iter().chain(&self.if_direction).chain(&self.rhs_sanity);
        self.conditional = self.checks.iter().filter(|r| r.verdict.is_none()).count()
            + theorem_entries.clone().filter(|e| e.holds.is_none()).count();
        self.theorem_failures = theorem_entries.filter(|e| e.holds == Some(false)).count()
            + self.twist.iter().filter(|t| t.image.is_none()).count()
            + self.quotient.iter().filter(|q| !q.passes).count()
            + self.eaton.iter().filter(|e| !e.passes).count();
        self.all_pass = self.conjecture_failures == 0 && self.conditional == 0 && self.theorem_failures == 0;
    }

    /// Changes one height in memory so that exactly one verdict flips:
    /// a member of an all-height-zero check is raised to height 1, or the
    /// only positive-height member of a check is lowered to 0.
    pub fn inject_height_fault(&mut self) -> Result<()> {
        for r in &mut self.checks {
            if r.verdict != Some(true) {
                continue;
            }
            let positive: Vec<usize> = (0..r.members.len()).filter(|&i| r.members[i].height > 0).collect();
            match positive.len() {
                0 => r.members[0].height = 1,
                1 => r.members[positive[0]].height = 0,
                _ => continue,
            }
            self.refresh();
            return Ok(());
        }
        Err(Error::Precondition("no check admits a single height flip".into()))
    }
}

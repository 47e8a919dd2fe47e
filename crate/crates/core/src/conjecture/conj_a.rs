use std::cell::OnceCell;

use serde::Serialize;

use super::{cycles_of, eaton_moreto_stat, lambda_extends_with, EatonMoretoStat, ZCharacter, EXTENSION_CROSSCHECK_CAP};
use crate::arith::valuation_u64;
use crate::blocks::{block_partition, heights, Block, BlockPartition};
use crate::chartable::{dixon_table, irr_of_central, irr_over, CentralSubgroup, CharacterTable};
use crate::error::{Error, Result};
use crate::permgroup::PermGroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZInfo {
    pub name: String,
    pub order: u64,
    /// Cycle notation; empty for tables without a group.
    pub generators: Vec<Vec<Vec<usize>>>,
    pub classes: Vec<usize>,
    /// Whether `Z` is the whole `p`-part of the center.
    pub full: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaInfo {
    /// Position in `Irr(Z)`, trivial character first.
    pub index: usize,
    pub order: u64,
    pub faithful: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MemberInfo {
    pub row: usize,
    pub degree: u64,
    pub height: u32,
}

/// `None` marks a clause that cannot be decided from the available data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Rhs {
    pub d_mod_z_abelian: Option<bool>,
    pub lambda_extends: Option<bool>,
    pub both: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorWitness {
    pub a: Vec<Vec<usize>>,
    pub b: Vec<Vec<usize>>,
    pub commutator: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    /// Present exactly when the left side is false.
    pub positive_height: Option<MemberInfo>,
    /// Present exactly when the right side is false.
    pub failing_clause: Option<String>,
    /// Generators of `D` whose commutator lies outside `Z`.
    pub commutator: Option<CommutatorWitness>,
}

/// One `(Z, λ, B)` instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjAReport {
    pub group: String,
    pub p: u64,
    pub z: ZInfo,
    pub lambda: LambdaInfo,
    pub block: usize,
    pub block_members: Vec<usize>,
    pub defect: u32,
    pub defect_group_generators: Vec<Vec<Vec<usize>>>,
    pub d_abelian: Option<bool>,
    /// `Irr(B|λ)` with heights.
    pub members: Vec<MemberInfo>,
    pub lhs: bool,
    pub rhs: Rhs,
    pub verdict: Option<bool>,
    pub witnesses: Witnesses,
    pub stat: Option<EatonMoretoStat>,
}

impl ConjAReport {
    /// Recomputes the left side, verdict and witnesses from `members` and
    /// `rhs`.
    pub fn recompute(&mut self) {
        self.lhs = self.members.iter().all(|m| m.height == 0);
        self.verdict = self.rhs.both.map(|r| r == self.lhs);
        self.witnesses.positive_height = self.members.iter().copied().find(|m| m.height > 0);
        self.witnesses.failing_clause = match self.rhs.both {
            Some(false) => Some(failing_clause(&self.rhs)),
            _ => None,
        };
    }

    /// The structural invariants of a report.
    pub fn is_consistent(&self) -> bool {
        let lhs = self.members.iter().all(|m| m.height == 0);
        lhs == self.lhs
            && self.verdict == self.rhs.both.map(|r| r == lhs)
            && self.witnesses.positive_height.is_some() == !lhs
            && self.witnesses.failing_clause.is_some() == (self.rhs.both == Some(false))
            && self.rhs.both == conjunction(self.rhs.d_mod_z_abelian, self.rhs.lambda_extends)
    }
}

fn conjunction(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

fn failing_clause(rhs: &Rhs) -> String {
    match (rhs.d_mod_z_abelian, rhs.lambda_extends) {
        (Some(false), Some(false)) => "D/Z is not abelian and λ does not extend to D".into(),
        (Some(false), _) => "D/Z is not abelian".into(),
        _ => "λ does not extend to D".into(),
    }
}

/// Murai: a height-zero member of `Irr(B|λ)` forces `λ` to extend to `D`.
/// The report carries `B`, `Z` and `λ`.
pub fn check_murai(r: &ConjAReport) -> Option<bool> {
    if r.members.iter().any(|m| m.height == 0) {
        r.rhs.lambda_extends
    } else {
        Some(true)
    }
}

/// `D/Z` abelian and `λ` extends imply all heights over `λ` are zero.
pub fn check_if_direction(r: &ConjAReport) -> Option<bool> {
    match r.rhs.both {
        Some(true) => Some(r.lhs),
        Some(false) => Some(true),
        None => None,
    }
}

/// For faithful `λ` and `Z` the whole `p`-part of the center, the right
/// side must agree with `D` being abelian. `None` when not applicable.
pub fn rhs_sanity(r: &ConjAReport) -> Option<bool> {
    if !r.z.full || !r.lambda.faithful {
        return None;
    }
    match (r.rhs.both, r.d_abelian) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    }
}

/// Order of the `p`-part of the center, read off the table.
fn central_p_part(table: &CharacterTable, p: u64) -> u64 {
    (0..table.num_classes())
        .filter(|&k| {
            let o = table.element_orders()[k];
            table.class_sizes()[k] == 1 && p.pow(valuation_u64(o, p)) == o
        })
        .count() as u64
}

/// The central `p`-subgroups to range over: all subgroups of the Sylow
/// `p`-subgroup of the center when the group is known; otherwise the
/// trivial subgroup and the `p`-subgroups listed with the table.
pub fn central_p_subgroups(table: &CharacterTable, p: u64) -> Result<Vec<CentralSubgroup>> {
    match table.group() {
        Some(g) => {
            let subs = g.center()?.sylow(p)?.subgroups_of_abelian_p_group(p)?;
            let names = subgroup_names(&subs);
            subs.iter()
                .zip(names)
                .map(|(s, name)| CentralSubgroup::from_group(table, s, &name))
                .collect()
        }
        None => {
            let mut out = vec![CentralSubgroup::trivial()];
            for z in table.central_subgroups() {
                let n = z.order();
                if n > 1 && p.pow(valuation_u64(n, p)) == n {
                    out.push(z.clone());
                }
            }
            Ok(out)
        }
    }
}

/// `1`, then `Z<order>` with a letter suffix when an order repeats.
fn subgroup_names(subs: &[PermGroup]) -> Vec<String> {
    let orders: Vec<u64> = subs.iter().map(PermGroup::order_u64).collect();
    let mut names = Vec::with_capacity(subs.len());
    for (i, &n) in orders.iter().enumerate() {
        if n == 1 {
            names.push("1".to_string());
            continue;
        }
        let same = orders.iter().filter(|&&m| m == n).count();
        if same == 1 {
            names.push(format!("Z{n}"));
        } else {
            let pos = orders[..i].iter().filter(|&&m| m == n).count();
            let suffix = (b'a' + (pos % 26) as u8) as char;
            names.push(format!("Z{n}{suffix}"));
        }
    }
    names
}

pub fn check_conjecture_a(table: &CharacterTable, p: u64) -> Result<Vec<ConjAReport>> {
    let partition = block_partition(table, p)?;
    check_conjecture_a_with(table, &partition)
}

/// One report per `(Z, λ, B)`, ordered by `Z`, then `λ`, then block.
pub fn check_conjecture_a_with(table: &CharacterTable, partition: &BlockPartition) -> Result<Vec<ConjAReport>> {
    let p = partition.p;
    let full_order = central_p_part(table, p);
    let d_tables: Vec<OnceCell<Option<CharacterTable>>> =
        partition.blocks.iter().map(|_| OnceCell::new()).collect();
    let d_table = |bi: usize| -> Result<Option<&CharacterTable>> {
        if let Some(t) = d_tables[bi].get() {
            return Ok(t.as_ref());
        }
        let t = match &partition.blocks[bi].defect_group {
            Some(d) if d.order_u64() <= EXTENSION_CROSSCHECK_CAP => Some(dixon_table(d)?),
            _ => None,
        };
        Ok(d_tables[bi].get_or_init(|| t).as_ref())
    };

    let mut out = Vec::new();
    for z in central_p_subgroups(table, p)? {
        let irr = irr_of_central(table, &z)?;
        let zinfo = ZInfo {
            name: z.name.clone(),
            order: z.order(),
            generators: z.group.as_ref().map(|g| cycles_of(g.generators())).unwrap_or_default(),
            classes: z.classes.clone(),
            full: z.order() == full_order,
        };
        for (li, lambda) in irr.iter().enumerate() {
            let over = irr_over(table, &z, lambda)?;
            let zc = match table.group() {
                Some(_) => Some(ZCharacter::from_table(table, &z, lambda)?),
                None => None,
            };
            let linfo = LambdaInfo {
                index: li,
                order: lambda.order(),
                faithful: lambda.is_faithful(),
            };
            for (bi, b) in partition.blocks.iter().enumerate() {
                let hs = heights(table, b);
                let members: Vec<MemberInfo> = over
                    .iter()
                    .filter(|c| partition.block_of[c.index] == bi)
                    .map(|c| MemberInfo {
                        row: c.index,
                        degree: c.degree,
                        height: hs.height_of(c.index).expect("member of its block"),
                    })
                    .collect();
                if members.is_empty() {
                    return Err(Error::Internal(format!(
                        "{}: block {bi} at p = {p} has no character over λ{li} of {}",
                        table.name(),
                        z.name
                    )));
                }
                let mut report = match (&b.defect_group, &zc) {
                    (Some(d), Some(zc)) => {
                        group_rhs(table, p, &z, &zinfo, &linfo, bi, b, d, d_table(bi)?, zc, members)?
                    }
                    _ => metadata_rhs(table, p, &z, &zinfo, &linfo, lambda.is_trivial(), bi, b, members),
                };
                report.recompute();
                out.push(report);
            }
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn group_rhs(
    table: &CharacterTable,
    p: u64,
    z: &CentralSubgroup,
    zinfo: &ZInfo,
    linfo: &LambdaInfo,
    bi: usize,
    b: &Block,
    d: &PermGroup,
    d_table: Option<&CharacterTable>,
    zc: &ZCharacter,
    members: Vec<MemberInfo>,
) -> Result<ConjAReport> {
    let zg = z
        .group
        .as_ref()
        .ok_or_else(|| Error::Internal(format!("{} has no group", z.name)))?;
    let outside = d.commutator_outside(zg);
    let extends = lambda_extends_with(d, d_table, zc)?;
    let commutator = outside.map(|(i, j, c)| CommutatorWitness {
        a: d.generators()[i].cycles(),
        b: d.generators()[j].cycles(),
        commutator: c.cycles(),
    });
    let heights: Vec<u32> = members.iter().map(|m| m.height).collect();
    let stat = match d_table {
        Some(t) => Some(eaton_moreto_stat(p, &heights, t, zc)?),
        None => None,
    };
    let d_mod_z = commutator.is_none();
    Ok(ConjAReport {
        group: table.name().to_string(),
        p,
        z: zinfo.clone(),
        lambda: linfo.clone(),
        block: bi,
        block_members: b.members.clone(),
        defect: b.defect,
        defect_group_generators: cycles_of(d.generators()),
        d_abelian: Some(d.is_abelian()),
        members,
        lhs: false,
        rhs: Rhs {
            d_mod_z_abelian: Some(d_mod_z),
            lambda_extends: Some(extends),
            both: Some(d_mod_z && extends),
        },
        verdict: None,
        witnesses: Witnesses {
            commutator,
            ..Witnesses::default()
        },
        stat,
    })
}

/// Right side from supplied defect metadata; groups of order at most `p²`
/// are abelian, which settles small defects without metadata.
#[allow(clippy::too_many_arguments)]
fn metadata_rhs(
    table: &CharacterTable,
    p: u64,
    z: &CentralSubgroup,
    zinfo: &ZInfo,
    linfo: &LambdaInfo,
    lambda_trivial: bool,
    bi: usize,
    b: &Block,
    members: Vec<MemberInfo>,
) -> ConjAReport {
    let d_abelian = if b.defect <= 2 {
        Some(true)
    } else {
        b.metadata.values().next().map(|m| m.abelian)
    };
    let d_mod_z = if z.order() == 1 {
        d_abelian
    } else {
        b.metadata
            .get(&z.name)
            .and_then(|m| m.abelian_mod_z)
            .or(if d_abelian == Some(true) { Some(true) } else { None })
    };
    let extends = if lambda_trivial || d_abelian == Some(true) {
        Some(true)
    } else {
        None
    };
    ConjAReport {
        group: table.name().to_string(),
        p,
        z: zinfo.clone(),
        lambda: linfo.clone(),
        block: bi,
        block_members: b.members.clone(),
        defect: b.defect,
        defect_group_generators: Vec::new(),
        d_abelian,
        members,
        lhs: false,
        rhs: Rhs {
            d_mod_z_abelian: d_mod_z,
            lambda_extends: extends,
            both: conjunction(d_mod_z, extends),
        },
        verdict: None,
        witnesses: Witnesses::default(),
        stat: None,
    }
}

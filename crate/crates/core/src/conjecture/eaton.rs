use serde::Serialize;

use super::theta_extends_with;
use crate::arith::valuation_u64;
use crate::blocks::{heights, BlockPartition};
use crate::chartable::{dixon_table, restrict_and_match, CharacterTable};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EatonMember {
    pub row: usize,
    pub degree: u64,
    pub height: u32,
    /// `ν_p χ(1) = ν_p|G:D| + ν_p θ(1)`.
    pub satisfies: bool,
    /// `ht(χ) = ht(θ)`, where `θ` lies in the unique block of `N`.
    pub same_height: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EatonBlock {
    pub block: usize,
    /// `Irr(B|θ)`.
    pub members: Vec<EatonMember>,
    pub defect_group_order: u64,
    pub some_satisfy: bool,
    pub all_satisfy: bool,
    pub theta_extends: bool,
    pub d_mod_n_abelian: bool,
    /// Some member satisfies the condition, so `θ` must extend.
    /// `None` when the hypothesis fails.
    pub part_a: Option<bool>,
    /// All members satisfy the condition, so `D/N` must be abelian.
    pub part_b: Option<bool>,
    /// Recorded, never asserted: when `D/N` is abelian and `θ` extends,
    /// whether every member satisfies the condition.
    pub converse_b: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EatonReport {
    pub group: String,
    pub p: u64,
    pub n: String,
    pub n_order: u64,
    pub theta: usize,
    pub theta_degree: u64,
    pub g_invariant: bool,
    pub blocks: Vec<EatonBlock>,
    /// Members where the degree equation and the height comparison
    /// disagree; the equation decides.
    pub divergences: Vec<String>,
    pub passes: bool,
}

/// The Eaton variant for a `G`-invariant `θ` (row `theta` of the table of
/// the normal `p`-subgroup `N`). A non-invariant `θ` is a precondition
/// error.
pub fn check_eaton(
    table: &CharacterTable,
    partition: &BlockPartition,
    n_name: &str,
    n_table: &CharacterTable,
    theta: usize,
) -> Result<EatonReport> {
    let p = partition.p;
    let g = table
        .group()
        .ok_or_else(|| Error::Precondition("the Eaton check needs the group".into()))?;
    let n = n_table
        .group()
        .ok_or_else(|| Error::Precondition("the table of N has no group attached".into()))?;
    let n_order = n.order_u64();
    if !n.is_subgroup_of(g) || !n.is_normal_in(g) {
        return Err(Error::Precondition(format!("{n_name} is not a normal subgroup")));
    }
    if p.pow(valuation_u64(n_order, p)) != n_order {
        return Err(Error::Precondition(format!("{n_name} is not a {p}-group")));
    }
    let reps = n_table
        .representatives()
        .ok_or_else(|| Error::Internal("table of N without representatives".into()))?;
    for (k, rep) in reps.iter().enumerate() {
        for x in g.generators() {
            let c = n_table.class_of(&rep.conjugate_by(x))?;
            if n_table.value(theta, c) != n_table.value(theta, k) {
                return Err(Error::Precondition(format!(
                    "θ{theta} of {n_name} is not G-invariant"
                )));
            }
        }
    }

    let theta_degree = n_table.degree(theta);
    let nu_theta = valuation_u64(theta_degree, p);
    let mut over = Vec::new();
    for row in 0..table.values().len() {
        if restrict_and_match(table, row, n_table, theta)?.multiplicity > 0 {
            over.push(row);
        }
    }

    let mut blocks = Vec::new();
    let mut divergences = Vec::new();
    for (bi, b) in partition.blocks.iter().enumerate() {
        let rows: Vec<usize> = over
            .iter()
            .copied()
            .filter(|&r| partition.block_of[r] == bi)
            .collect();
        if rows.is_empty() {
            continue;
        }
        let d = b
            .defect_group
            .as_ref()
            .ok_or_else(|| Error::Internal("block without a defect group".into()))?;
        if !n.is_subgroup_of(d) {
            return Err(Error::Internal(format!(
                "{n_name} is not contained in the defect group of block {bi}"
            )));
        }
        let d_order = d.order_u64();
        let nu_index = valuation_u64(g.order_u64() / d_order, p);
        let hs = heights(table, b);
        let members: Vec<EatonMember> = rows
            .iter()
            .map(|&r| {
                let height = hs.height_of(r).expect("member of its block");
                EatonMember {
                    row: r,
                    degree: table.degree(r),
                    height,
                    satisfies: valuation_u64(table.degree(r), p) == nu_index + nu_theta,
                    same_height: height == nu_theta,
                }
            })
            .collect();
        for m in members.iter().filter(|m| m.satisfies != m.same_height) {
            divergences.push(format!(
                "block {bi}, row {}: equation {} but height comparison {}",
                m.row, m.satisfies, m.same_height
            ));
        }
        let d_table = dixon_table(d)?;
        let theta_extends = theta_extends_with(&d_table, n_table, theta)?;
        let d_mod_n_abelian = d.is_abelian_modulo(n);
        let some_satisfy = members.iter().any(|m| m.satisfies);
        let all_satisfy = members.iter().all(|m| m.satisfies);
        blocks.push(EatonBlock {
            block: bi,
            members,
            defect_group_order: d_order,
            some_satisfy,
            all_satisfy,
            theta_extends,
            d_mod_n_abelian,
            part_a: some_satisfy.then_some(theta_extends),
            part_b: all_satisfy.then_some(d_mod_n_abelian),
            converse_b: (d_mod_n_abelian && theta_extends).then_some(all_satisfy),
        });
    }
    let passes = blocks
        .iter()
        .all(|b| b.part_a != Some(false) && b.part_b != Some(false));
    Ok(EatonReport {
        group: table.name().to_string(),
        p,
        n: n_name.to_string(),
        n_order,
        theta,
        theta_degree,
        g_invariant: true,
        blocks,
        divergences,
        passes,
    })
}

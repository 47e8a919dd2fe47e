use serde::Serialize;

use crate::arith::valuation_u64;
use crate::blocks::{block_partition, heights, BlockPartition};
use crate::chartable::{dixon_table, CharacterTable};
use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientBlock {
    pub quotient_block: usize,
    /// Rows of the table of `G/K`.
    pub members: Vec<usize>,
    /// Their inflations, as rows of the table of `G`.
    pub inflated: Vec<usize>,
    /// The block of `G` containing every inflated member, if there is one.
    pub group_block: Option<usize>,
    pub defect_quotient: u32,
    pub defect: u32,
    pub k_in_defect_group: bool,
    pub defect_drop_ok: bool,
    pub heights_preserved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub group: String,
    pub p: u64,
    pub k_order: u64,
    pub quotient_order: u64,
    pub blocks: Vec<QuotientBlock>,
    /// Every block of `G` contains exactly one block of `G/K`.
    pub one_per_block: bool,
    pub passes: bool,
}

/// Compares the `p`-blocks of `G` and `G/K` for a central `p`-subgroup `K`
/// through inflation.
pub fn quotient_block_check(table: &CharacterTable, p: u64, k: &PermGroup) -> Result<QuotientReport> {
    let g = table
        .group()
        .ok_or_else(|| Error::Precondition("the quotient check needs the group".into()))?;
    let k_order = k.order_u64();
    if p.pow(valuation_u64(k_order, p)) != k_order {
        return Err(Error::Precondition(format!("K of order {k_order} is not a {p}-group")));
    }
    let (q, proj) = g.quotient_by_central(k)?;
    let q_table = dixon_table(&q)?;
    let part_g = block_partition(table, p)?;
    let part_q = block_partition(&q_table, p)?;
    let inflation = inflate(table, &q_table, |x| proj.apply(x))?;
    compare(table, &part_g, &q_table, &part_q, &inflation, k)
}

/// Row of `G` equal to each row of `G/K` composed with the projection.
fn inflate(
    table: &CharacterTable,
    q_table: &CharacterTable,
    project: impl Fn(&Permutation) -> Result<Permutation>,
) -> Result<Vec<usize>> {
    let reps = table
        .representatives()
        .ok_or_else(|| Error::Internal("table without representatives".into()))?;
    let image_class = reps
        .iter()
        .map(|x| q_table.class_of(&project(x)?))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(q_table.values().len());
    for qrow in q_table.values() {
        let lifted: Vec<_> = image_class.iter().map(|&c| qrow[c].clone()).collect();
        let row = table
            .values()
            .iter()
            .position(|r| *r == lifted)
            .ok_or_else(|| Error::Internal("an inflated character is not irreducible in G".into()))?;
        if out.contains(&row) {
            return Err(Error::Internal("inflation is not injective".into()));
        }
        out.push(row);
    }
    Ok(out)
}

fn compare(
    table: &CharacterTable,
    part_g: &BlockPartition,
    q_table: &CharacterTable,
    part_q: &BlockPartition,
    inflation: &[usize],
    k: &PermGroup,
) -> Result<QuotientReport> {
    let p = part_g.p;
    let k_order = k.order_u64();
    let nu_k = valuation_u64(k_order, p);
    let mut per_g_block = vec![0usize; part_g.blocks.len()];
    let mut blocks = Vec::new();
    for (qi, qb) in part_q.blocks.iter().enumerate() {
        let inflated: Vec<usize> = qb.members.iter().map(|&r| inflation[r]).collect();
        let gi = part_g.block_of[inflated[0]];
        let single = inflated.iter().all(|&r| part_g.block_of[r] == gi);
        let group_block = single.then_some(gi);
        if single {
            per_g_block[gi] += 1;
        }
        let gb = &part_g.blocks[gi];
        let k_in_defect_group = match &gb.defect_group {
            Some(d) => k.generators().iter().all(|x| d.contains(x)),
            None => false,
        };
        let defect_drop_ok = !k_in_defect_group || qb.defect + nu_k == gb.defect;
        let hq = heights(q_table, qb);
        let hg = heights(table, gb);
        let heights_preserved = single
            && qb
                .members
                .iter()
                .zip(&inflated)
                .all(|(&qr, &gr)| hq.height_of(qr) == hg.height_of(gr));
        blocks.push(QuotientBlock {
            quotient_block: qi,
            members: qb.members.clone(),
            inflated,
            group_block,
            defect_quotient: qb.defect,
            defect: gb.defect,
            k_in_defect_group,
            defect_drop_ok,
            heights_preserved,
        });
    }
    let one_per_block = per_g_block.iter().all(|&c| c == 1);
    let passes = one_per_block
        && blocks.iter().all(|b| {
            b.group_block.is_some() && b.k_in_defect_group && b.defect_drop_ok && b.heights_preserved
        });
    Ok(QuotientReport {
        group: table.name().to_string(),
        p,
        k_order,
        quotient_order: q_table.order(),
        blocks,
        one_per_block,
        passes,
    })
}

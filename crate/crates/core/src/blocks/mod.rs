//! `p`-blocks of `Irr(G)` from central characters reduced modulo a prime
//! above `p`, with defects, heights, defect classes and defect groups.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::arith::{is_prime, valuation_u64};
use crate::chartable::{CentralSubgroup, CharacterTable, DefectMetadata};
use crate::cyclo::{reduce_mod_p, Cyclotomic, Fq, ModpReduction};
use crate::error::{Error, Result};
use crate::permgroup::PermGroup;

/// One `p`-block.
#[derive(Clone, Debug)]
pub struct Block {
    pub p: u64,
    /// Row indices, ascending.
    pub members: Vec<usize>,
    pub defect: u32,
    /// Residues of the central character on [`BlockPartition::regular_classes`].
    pub residues: Vec<Fq>,
    pub defect_class: usize,
    /// Present when the table carries its group.
    pub defect_group: Option<PermGroup>,
    /// Supplied metadata for ingested tables, keyed by central subgroup name.
    pub metadata: BTreeMap<String, DefectMetadata>,
}

/// Heights of the members of one block, in member order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightAssignment {
    pub members: Vec<usize>,
    pub heights: Vec<u32>,
}

impl HeightAssignment {
    pub fn height_of(&self, row: usize) -> Option<u32> {
        self.members
            .iter()
            .position(|&r| r == row)
            .map(|i| self.heights[i])
    }
}

#[derive(Clone, Debug)]
pub struct BlockPartition {
    pub p: u64,
    pub reduction: ModpReduction,
    /// The `p`-regular classes, ascending.
    pub regular_classes: Vec<usize>,
    /// Ordered by least member.
    pub blocks: Vec<Block>,
    /// Block index of every row.
    pub block_of: Vec<usize>,
}

/// `ω_χ(K̂) = |K| χ(x_K) / χ(1)` for every class.
pub fn central_character(table: &CharacterTable, row: usize) -> Vec<Cyclotomic> {
    let d = BigRational::from_integer(BigInt::from(table.degree(row)));
    (0..table.num_classes())
        .map(|k| {
            table
                .value(row, k)
                .mul_int(table.class_sizes()[k] as i64)
                .div_rational(&d)
                .expect("degrees are nonzero")
        })
        .collect()
}

pub fn block_partition(table: &CharacterTable, p: u64) -> Result<BlockPartition> {
    let r = ModpReduction::new(table.exponent(), p)?;
    block_partition_with(table, p, &r)
}

/// Partition using a given reduction map (any maximal ideal above `p`).
pub fn block_partition_with(
    table: &CharacterTable,
    p: u64,
    reduction: &ModpReduction,
) -> Result<BlockPartition> {
    if !is_prime(p) {
        return Err(Error::MalformedInput(format!("{p} is not prime")));
    }
    if reduction.prime() != p || reduction.conductor() % table.exponent() != 0 {
        return Err(Error::Precondition(
            "reduction map does not match the table and prime".into(),
        ));
    }
    let regular = table.p_regular_classes(p);
    let nrows = table.values().len();
    let mut residues: Vec<Vec<Fq>> = Vec::with_capacity(nrows);
    for row in 0..nrows {
        let omega = central_character(table, row);
        let res = regular
            .iter()
            .map(|&k| {
                reduce_mod_p(&omega[k], reduction).map_err(|e| {
                    Error::Internal(format!("central character of row {row} at class {k}: {e}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        residues.push(res);
    }

    let group_order = table.order();
    let nu_g = valuation_u64(group_order, p);
    let mut keys: Vec<&Vec<Fq>> = Vec::new();
    let mut block_of = vec![0usize; nrows];
    for row in 0..nrows {
        block_of[row] = match keys.iter().position(|k| **k == residues[row]) {
            Some(b) => b,
            None => {
                keys.push(&residues[row]);
                keys.len() - 1
            }
        };
    }
    let mut blocks = Vec::with_capacity(keys.len());
    for (b, key) in keys.iter().enumerate() {
        let members: Vec<usize> = (0..nrows).filter(|&r| block_of[r] == b).collect();
        let min_nu = members
            .iter()
            .map(|&r| valuation_u64(table.degree(r), p))
            .min()
            .expect("blocks are nonempty");
        let defect = nu_g - min_nu;
        let defect_class = find_defect_class(table, p, &regular, key, defect)?;
        let defect_group = match table.group() {
            Some(g) => Some(defect_group_of(table, g, p, defect_class, defect)?),
            None => None,
        };
        let metadata = table
            .central_subgroups()
            .iter()
            .filter_map(|z| {
                z.defect_metadata
                    .iter()
                    .find(|m| m.p == p && sorted(m.characters.clone()) == members)
                    .map(|m| (z.name.clone(), m.clone()))
            })
            .collect();
        blocks.push(Block {
            p,
            members,
            defect,
            residues: (*key).clone(),
            defect_class,
            defect_group,
            metadata,
        });
    }
    Ok(BlockPartition {
        p,
        reduction: reduction.clone(),
        regular_classes: regular,
        blocks,
        block_of,
    })
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Least `p`-regular class with nonzero residue and `ν_p|C_G(x)| = d`.
fn find_defect_class(
    table: &CharacterTable,
    p: u64,
    regular: &[usize],
    residues: &[Fq],
    defect: u32,
) -> Result<usize> {
    regular
        .iter()
        .zip(residues)
        .find(|(&k, res)| {
            !res.is_zero() && valuation_u64(table.centralizer_order(k), p) == defect
        })
        .map(|(&k, _)| k)
        .ok_or_else(|| Error::Internal(format!("block of defect {defect} has no defect class")))
}

fn defect_group_of(
    table: &CharacterTable,
    g: &PermGroup,
    p: u64,
    class: usize,
    defect: u32,
) -> Result<PermGroup> {
    let reps = table
        .representatives()
        .ok_or_else(|| Error::Internal("group table without representatives".into()))?;
    let c = g.centralizer(&reps[class])?;
    let d = c.sylow(p)?;
    if d.order_u64() != p.pow(defect) {
        return Err(Error::Internal(format!(
            "defect group has order {}, expected {p}^{defect}",
            d.order_u64()
        )));
    }
    Ok(d)
}

impl BlockPartition {
    pub fn principal(&self, table: &CharacterTable) -> usize {
        self.block_of[table.trivial_row()]
    }

    pub fn block_of_row(&self, row: usize) -> &Block {
        &self.blocks[self.block_of[row]]
    }
}

pub fn defect(b: &Block) -> u32 {
    b.defect
}

/// `ht(χ) = ν_p(χ(1)) − ν_p(|G|) + d`.
pub fn heights(table: &CharacterTable, b: &Block) -> HeightAssignment {
    let nu_g = valuation_u64(table.order(), b.p);
    HeightAssignment {
        members: b.members.clone(),
        heights: b
            .members
            .iter()
            .map(|&r| valuation_u64(table.degree(r), b.p) + b.defect - nu_g)
            .collect(),
    }
}

pub fn defect_class(b: &Block) -> usize {
    b.defect_class
}

pub fn defect_group(b: &Block) -> Result<&PermGroup> {
    b.defect_group
        .as_ref()
        .ok_or_else(|| Error::Precondition("defect group needs the group itself".into()))
}

/// The block `{μ⁻¹χ : χ ∈ B}` for a linear character `μ` (a row of degree 1).
pub fn twist_block(
    table: &CharacterTable,
    partition: &BlockPartition,
    block: usize,
    mu: usize,
) -> Result<usize> {
    if table.degree(mu) != 1 {
        return Err(Error::Precondition(format!("row {mu} is not linear")));
    }
    let mu_inv: Vec<Cyclotomic> = table.values()[mu].iter().map(Cyclotomic::conj).collect();
    let src = &partition.blocks[block];
    let mut image = Vec::with_capacity(src.members.len());
    for &row in &src.members {
        let twisted: Vec<Cyclotomic> = table.values()[row]
            .iter()
            .zip(&mu_inv)
            .map(|(a, b)| a.mul(b))
            .collect();
        let target = table
            .values()
            .iter()
            .position(|r| *r == twisted)
            .ok_or_else(|| Error::Internal(format!("μ⁻¹χ for row {row} is not in the table")))?;
        if table.degree(target) != table.degree(row) {
            return Err(Error::Internal("twisting changed a degree".into()));
        }
        image.push(target);
    }
    image.sort_unstable();
    let b = partition.block_of[image[0]];
    if partition.blocks[b].members != image {
        return Err(Error::Internal(format!(
            "twist of block {block} by row {mu} is not a block"
        )));
    }
    let hs = heights(table, src);
    let ht = heights(table, &partition.blocks[b]);
    if sorted_heights(&hs) != sorted_heights(&ht) {
        return Err(Error::Internal("twisting changed heights".into()));
    }
    Ok(b)
}

fn sorted_heights(h: &HeightAssignment) -> Vec<u32> {
    let mut v = h.heights.clone();
    v.sort_unstable();
    v
}

/// Whether `ν_p(χ'(1)) > ν_p(χ(1))` for two members of one block.
pub fn positive_height_witness(
    table: &CharacterTable,
    partition: &BlockPartition,
    chi: usize,
    chi_prime: usize,
) -> Result<bool> {
    if partition.block_of[chi] != partition.block_of[chi_prime] {
        return Err(Error::Precondition(format!(
            "rows {chi} and {chi_prime} lie in different {}-blocks",
            partition.p
        )));
    }
    let p = partition.p;
    Ok(valuation_u64(table.degree(chi_prime), p) > valuation_u64(table.degree(chi), p))
}

// --- report fragment -----------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct DefectGroupReport {
    pub order: u64,
    pub abelian: Option<bool>,
    #[serde(rename = "abelian_mod_Z")]
    pub abelian_mod_z: BTreeMap<String, Option<bool>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockEntry {
    pub members: Vec<usize>,
    pub degrees: Vec<u64>,
    pub defect: u32,
    pub heights: Vec<u32>,
    pub defect_class: usize,
    pub defect_group: DefectGroupReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    pub p: u64,
    pub blocks: Vec<BlockEntry>,
}

pub fn block_report(
    table: &CharacterTable,
    partition: &BlockPartition,
    central: &[CentralSubgroup],
) -> BlockReport {
    let p = partition.p;
    let blocks = partition
        .blocks
        .iter()
        .map(|b| {
            let order = p.pow(b.defect);
            let (abelian, abelian_mod_z) = match &b.defect_group {
                Some(d) => (
                    Some(d.is_abelian()),
                    central
                        .iter()
                        .map(|z| {
                            let v = z.group.as_ref().map(|zg| d.is_abelian_modulo(zg));
                            (z.name.clone(), v)
                        })
                        .collect(),
                ),
                None => {
                    let abelian = b.metadata.values().next().map(|m| m.abelian);
                    let mod_z = central
                        .iter()
                        .map(|z| {
                            let v = b.metadata.get(&z.name).and_then(|m| m.abelian_mod_z);
                            (z.name.clone(), v)
                        })
                        .collect();
                    (abelian, mod_z)
                }
            };
            BlockEntry {
                members: b.members.clone(),
                degrees: b.members.iter().map(|&r| table.degree(r)).collect(),
                defect: b.defect,
                heights: heights(table, b).heights,
                defect_class: b.defect_class,
                defect_group: DefectGroupReport {
                    order,
                    abelian,
                    abelian_mod_z,
                },
            }
        })
        .collect();
    BlockReport { p, blocks }
}

//! Ordinary character tables: computed (Dixon–Schneider) or ingested, with
//! exact verification and the restriction utilities used by the block and
//! conjecture code.

mod dixon;
mod interchange;
mod restrict;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation};

pub use dixon::{class_mult_coefficients, dixon_prime, dixon_table, dixon_table_with_prime};
pub use interchange::{CentralSubgroupDoc, DefectMetadata, TableDocument, ValueDoc};
pub use restrict::{
    fusion, irr_of_central, irr_over, restrict_and_match, restrict_to_central, CentralSubgroup,
    LinearCharacter, RestrictionMatch,
};

/// An ordinary character table. Rows are irreducible characters, columns are
/// conjugacy classes; column 0 is the identity class.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    name: String,
    order: u64,
    exponent: u32,
    class_sizes: Vec<u64>,
    element_orders: Vec<u64>,
    representatives: Option<Vec<Permutation>>,
    group: Option<PermGroup>,
    power_maps: BTreeMap<u64, Vec<usize>>,
    values: Vec<Vec<Cyclotomic>>,
    central_subgroups: Vec<CentralSubgroup>,
    dixon_prime: Option<u64>,
}

/// One row of a table.
#[derive(Clone, Copy, Debug)]
pub struct Character<'t> {
    pub table: &'t CharacterTable,
    pub index: usize,
    pub degree: u64,
}

impl Character<'_> {
    pub fn values(&self) -> &[Cyclotomic] {
        &self.table.values[self.index]
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.table.values[self.index][class]
    }
}

impl CharacterTable {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    pub fn centralizer_order(&self, class: usize) -> u64 {
        self.order / self.class_sizes[class]
    }

    pub fn element_orders(&self) -> &[u64] {
        &self.element_orders
    }

    pub fn representatives(&self) -> Option<&[Permutation]> {
        self.representatives.as_deref()
    }

    /// The group the table was computed from; `None` for ingested tables.
    pub fn group(&self) -> Option<&PermGroup> {
        self.group.as_ref()
    }

    pub fn power_map(&self, p: u64) -> Option<&[usize]> {
        self.power_maps.get(&p).map(Vec::as_slice)
    }

    pub fn power_maps(&self) -> &BTreeMap<u64, Vec<usize>> {
        &self.power_maps
    }

    pub fn values(&self) -> &[Vec<Cyclotomic>] {
        &self.values
    }

    pub fn value(&self, row: usize, class: usize) -> &Cyclotomic {
        &self.values[row][class]
    }

    pub fn degree(&self, row: usize) -> u64 {
        self.values[row][0]
            .to_integer()
            .and_then(|d| d.to_u64())
            .expect("verified tables have positive integer degrees")
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.values.len()).map(|i| self.degree(i)).collect()
    }

    pub fn character(&self, row: usize) -> Character<'_> {
        Character {
            table: self,
            index: row,
            degree: self.degree(row),
        }
    }

    pub fn characters(&self) -> impl Iterator<Item = Character<'_>> {
        (0..self.values.len()).map(|i| self.character(i))
    }

    pub fn central_subgroups(&self) -> &[CentralSubgroup] {
        &self.central_subgroups
    }

    pub fn add_central_subgroup(&mut self, z: CentralSubgroup) {
        self.central_subgroups.push(z);
    }

    /// The prime used by Dixon–Schneider, if the table was computed.
    pub fn dixon_prime(&self) -> Option<u64> {
        self.dixon_prime
    }

    pub fn is_p_regular(&self, class: usize, p: u64) -> bool {
        self.element_orders[class] % p != 0
    }

    pub fn p_regular_classes(&self, p: u64) -> Vec<usize> {
        (0..self.num_classes())
            .filter(|&k| self.is_p_regular(k, p))
            .collect()
    }

    /// Row of the trivial character.
    pub fn trivial_row(&self) -> usize {
        let one = Cyclotomic::one(self.exponent);
        self.values
            .iter()
            .position(|row| row.iter().all(|v| *v == one))
            .expect("every table has a trivial character")
    }

    /// Class of `g`, when the group is known.
    pub fn class_of(&self, g: &Permutation) -> Result<usize> {
        let group = self
            .group
            .as_ref()
            .ok_or_else(|| Error::Precondition("table has no group attached".into()))?;
        group.class_of(g)
    }

    /// The class of inverses of elements of `class`, read off the table as
    /// the column of complex conjugates.
    pub fn inverse_class(&self, class: usize) -> usize {
        let conj: Vec<Cyclotomic> = self.values.iter().map(|r| r[class].conj()).collect();
        (0..self.num_classes())
            .find(|&k| self.values.iter().zip(&conj).all(|(r, c)| r[k] == *c))
            .expect("columns of a verified table are closed under conjugation")
    }

    /// For central classes `a`, `b` (size 1), the class of their product,
    /// determined by `χ(ab) = χ(a)χ(b)/χ(1)`.
    pub fn central_product(&self, a: usize, b: usize) -> Result<usize> {
        if self.class_sizes[a] != 1 || self.class_sizes[b] != 1 {
            return Err(Error::Precondition(format!(
                "classes {a} and {b} are not both central"
            )));
        }
        let want: Vec<Cyclotomic> = (0..self.values.len())
            .map(|i| {
                let d = BigRational::from_integer(BigInt::from(self.degree(i)));
                self.values[i][a]
                    .mul(&self.values[i][b])
                    .div_rational(&d)
                    .expect("degrees are nonzero")
            })
            .collect();
        (0..self.num_classes())
            .find(|&k| self.values.iter().zip(&want).all(|(r, w)| r[k] == *w))
            .ok_or_else(|| Error::Internal(format!("no class for the product of {a} and {b}")))
    }

    /// Checks both orthogonality relations exactly (columns first), the
    /// degree sum and the structural counts.
    pub fn verify(&self) -> Result<()> {
        let r = self.num_classes();
        if self.values.len() != r {
            return Err(Error::Orthogonality(format!(
                "{} characters for {r} classes",
                self.values.len()
            )));
        }
        for (i, row) in self.values.iter().enumerate() {
            if row.len() != r {
                return Err(Error::Schema(format!("row {i} has {} entries", row.len())));
            }
            let d = row[0].to_integer().and_then(|d| d.to_u64());
            match d {
                Some(d) if d > 0 && self.order % d == 0 => {}
                _ => {
                    return Err(Error::Orthogonality(format!(
                        "row {i} has degree {} which is not a positive divisor of {}",
                        row[0], self.order
                    )))
                }
            }
        }
        let e = self.exponent;
        let values: Vec<Vec<Cyclotomic>> = self
            .values
            .iter()
            .map(|row| row.iter().map(|v| v.lift(e)).collect())
            .collect();
        let conj: Vec<Vec<Cyclotomic>> = values
            .iter()
            .map(|row| row.iter().map(Cyclotomic::conj).collect())
            .collect();

        let column = |k: usize, rows: &[Vec<Cyclotomic>]| -> Vec<Cyclotomic> {
            rows.iter().map(|row| row[k].clone()).collect()
        };
        let ones = vec![1i64; r];
        for a in 0..r {
            let ca = column(a, &values);
            for b in a..r {
                let cb = column(b, &conj);
                let s = Cyclotomic::weighted_dot(&ones, &ca, &cb);
                let want = if a == b {
                    self.centralizer_order(a) as i64
                } else {
                    0
                };
                if s != Cyclotomic::from_integer(e, want) {
                    return Err(Error::Orthogonality(format!(
                        "column orthogonality fails for classes {a} and {b}: sum is {s}, expected {want}"
                    )));
                }
            }
        }
        let weights: Vec<i64> = self.class_sizes.iter().map(|&s| s as i64).collect();
        for a in 0..r {
            for b in a..r {
                let s = Cyclotomic::weighted_dot(&weights, &values[a], &conj[b]);
                let want = if a == b { self.order as i64 } else { 0 };
                if s != Cyclotomic::from_integer(e, want) {
                    return Err(Error::Orthogonality(format!(
                        "row orthogonality fails for characters {a} and {b}: |G|<χ,ψ> is {s}, expected {want}"
                    )));
                }
            }
        }
        let sum: u128 = self.degrees().iter().map(|&d| (d as u128) * (d as u128)).sum();
        if sum != self.order as u128 {
            return Err(Error::Orthogonality(format!(
                "sum of squared degrees is {sum}, group order is {}",
                self.order
            )));
        }
        Ok(())
    }

    /// The table with `ζ ↦ ζ^k` applied to every value; rows keep their
    /// positions.
    pub fn galois_conjugate(&self, k: i64) -> Result<CharacterTable> {
        let e = self.exponent as i64;
        if num_integer::gcd(k, e) != 1 {
            return Err(Error::MalformedInput(format!("{k} is not a unit modulo {e}")));
        }
        let mut t = self.clone();
        for row in t.values.iter_mut() {
            for v in row.iter_mut() {
                *v = v.galois(k);
            }
        }
        t.verify()?;
        Ok(t)
    }

    /// Sorts rows by degree, then lexicographically by values.
    fn sort_rows(&mut self) {
        self.values.sort_by(|a, b| {
            let (da, db) = (&a[0], &b[0]);
            da.cmp(db).then_with(|| a.cmp(b))
        });
    }
}


#[cfg(test)]
mod tests;

//! Central subgroups, their linear characters, and restriction to
//! subgroups.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::interchange::DefectMetadata;
use super::{Character, CharacterTable};
use crate::arith::lcm;
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::permgroup::PermGroup;

/// A central subgroup recorded by the classes (all of size 1) of its
/// elements, ascending, including the identity class.
#[derive(Clone, Debug)]
pub struct CentralSubgroup {
    pub name: String,
    pub classes: Vec<usize>,
    pub group: Option<PermGroup>,
    pub defect_metadata: Vec<DefectMetadata>,
}

impl CentralSubgroup {
    /// `z` must lie in the center of the table's group.
    pub fn from_group(table: &CharacterTable, z: &PermGroup, name: &str) -> Result<Self> {
        let els = z.elements()?;
        let mut classes = Vec::with_capacity(els.len());
        for g in els.perms() {
            let k = table.class_of(g)?;
            if table.class_sizes()[k] != 1 {
                return Err(Error::Precondition(format!(
                    "{name} is not central: {g} has {} conjugates",
                    table.class_sizes()[k]
                )));
            }
            classes.push(k);
        }
        classes.sort_unstable();
        Ok(CentralSubgroup {
            name: name.to_string(),
            classes,
            group: Some(z.clone()),
            defect_metadata: Vec::new(),
        })
    }

    /// From class indices; checks centrality and closure using the table.
    pub fn from_classes(table: &CharacterTable, name: &str, mut classes: Vec<usize>) -> Result<Self> {
        classes.sort_unstable();
        classes.dedup();
        if classes.first() != Some(&0) {
            return Err(Error::Schema(format!("{name} must contain the identity class 0")));
        }
        if let Some(&k) = classes
            .iter()
            .find(|&&k| k >= table.num_classes() || table.class_sizes()[k] != 1)
        {
            return Err(Error::Schema(format!("{name}: class {k} is not a central class")));
        }
        for &a in &classes {
            for &b in &classes {
                if !classes.contains(&table.central_product(a, b)?) {
                    return Err(Error::Schema(format!("{name} is not closed under products")));
                }
            }
        }
        Ok(CentralSubgroup {
            name: name.to_string(),
            classes,
            group: None,
            defect_metadata: Vec::new(),
        })
    }

    pub fn trivial() -> Self {
        CentralSubgroup {
            name: "1".into(),
            classes: vec![0],
            group: None,
            defect_metadata: Vec::new(),
        }
    }

    pub fn with_defect_metadata(mut self, meta: Vec<DefectMetadata>) -> Self {
        self.defect_metadata = meta;
        self
    }

    pub fn order(&self) -> u64 {
        self.classes.len() as u64
    }
}

/// A linear character of a central subgroup, as its values on the
/// subgroup's classes (in [`CentralSubgroup::classes`] order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCharacter {
    pub classes: Vec<usize>,
    pub values: Vec<Cyclotomic>,
}

impl LinearCharacter {
    pub fn trivial(z: &CentralSubgroup, e: u32) -> Self {
        LinearCharacter {
            classes: z.classes.clone(),
            values: vec![Cyclotomic::one(e); z.classes.len()],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| *v == Cyclotomic::one(v.conductor()))
    }

    /// Classes of `Z` in the kernel.
    pub fn kernel(&self) -> Vec<usize> {
        self.classes
            .iter()
            .zip(&self.values)
            .filter(|(_, v)| **v == Cyclotomic::one(v.conductor()))
            .map(|(&k, _)| k)
            .collect()
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn value_at(&self, class: usize) -> Option<&Cyclotomic> {
        self.classes
            .iter()
            .position(|&k| k == class)
            .map(|i| &self.values[i])
    }

    /// Multiplicative order of `λ`.
    pub fn order(&self) -> u64 {
        self.values
            .iter()
            .map(|v| {
                (1..=v.conductor() as u64)
                    .find(|&k| v.pow(k) == Cyclotomic::one(v.conductor()))
                    .expect("values are roots of unity")
            })
            .fold(1, lcm)
    }
}

fn check_central(table: &CharacterTable, z: &CentralSubgroup) -> Result<()> {
    match z
        .classes
        .iter()
        .find(|&&k| k >= table.num_classes() || table.class_sizes()[k] != 1)
    {
        Some(k) => Err(Error::Precondition(format!(
            "{}: class {k} is not central",
            z.name
        ))),
        None => Ok(()),
    }
}

/// `μ` with `χ_Z = χ(1)·μ`, i.e. `z ↦ χ(z)/χ(1)`.
pub fn restrict_to_central(
    table: &CharacterTable,
    row: usize,
    z: &CentralSubgroup,
) -> Result<LinearCharacter> {
    check_central(table, z)?;
    let d = BigRational::from_integer(BigInt::from(table.degree(row)));
    let values = z
        .classes
        .iter()
        .map(|&k| table.value(row, k).div_rational(&d))
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearCharacter {
        classes: z.classes.clone(),
        values,
    })
}

/// `Irr(Z)`, read off as the distinct restrictions of `Irr(G)`; the trivial
/// character first, then in value order.
pub fn irr_of_central(table: &CharacterTable, z: &CentralSubgroup) -> Result<Vec<LinearCharacter>> {
    let mut out: Vec<LinearCharacter> = Vec::new();
    for row in 0..table.values().len() {
        let mu = restrict_to_central(table, row, z)?;
        if !out.contains(&mu) {
            out.push(mu);
        }
    }
    if out.len() as u64 != z.order() {
        return Err(Error::Internal(format!(
            "found {} linear characters of {} of order {}",
            out.len(),
            z.name,
            z.order()
        )));
    }
    out.sort_by(|a, b| {
        (!a.is_trivial())
            .cmp(&!b.is_trivial())
            .then_with(|| a.values.cmp(&b.values))
    });
    Ok(out)
}

/// Checks that `λ` is a homomorphism on `Z`.
fn check_linear(table: &CharacterTable, z: &CentralSubgroup, lambda: &LinearCharacter) -> Result<()> {
    if lambda.classes != z.classes {
        return Err(Error::MalformedInput(format!(
            "character is not defined on the classes of {}",
            z.name
        )));
    }
    let e = table.exponent();
    if lambda.values[0] != Cyclotomic::one(e) {
        return Err(Error::MalformedInput("λ(1) is not 1".into()));
    }
    for (i, &a) in z.classes.iter().enumerate() {
        for (j, &b) in z.classes.iter().enumerate() {
            let ab = table.central_product(a, b)?;
            let v = lambda
                .value_at(ab)
                .ok_or_else(|| Error::MalformedInput(format!("{} is not closed", z.name)))?;
            if *v != lambda.values[i].mul(&lambda.values[j]) {
                return Err(Error::MalformedInput(format!(
                    "λ is not multiplicative on classes {a} and {b}"
                )));
            }
        }
    }
    Ok(())
}

/// `Irr(G|λ)`: the characters with `χ(z) = χ(1)λ(z)` on all of `Z`.
pub fn irr_over<'t>(
    table: &'t CharacterTable,
    z: &CentralSubgroup,
    lambda: &LinearCharacter,
) -> Result<Vec<Character<'t>>> {
    check_central(table, z)?;
    check_linear(table, z, lambda)?;
    let mut out = Vec::new();
    for chi in table.characters() {
        let d = chi.degree as i64;
        let over = z
            .classes
            .iter()
            .zip(&lambda.values)
            .all(|(&k, l)| *chi.value(k) == l.mul_int(d));
        if over {
            out.push(chi);
        }
    }
    Ok(out)
}

/// Result of restricting `χ` to `H` and comparing with `η`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RestrictionMatch {
    /// `⟨χ_H, η⟩`.
    pub multiplicity: u64,
    /// Whether `χ_H = η`.
    pub equal: bool,
}

/// Class of `G` containing each class representative of `H`.
pub fn fusion(sub: &CharacterTable, table: &CharacterTable) -> Result<Vec<usize>> {
    let reps = sub
        .representatives()
        .ok_or_else(|| Error::Precondition("subgroup table has no class representatives".into()))?;
    reps.iter()
        .map(|h| {
            table
                .class_of(h)
                .map_err(|e| Error::Internal(format!("fusion failure for {h}: {e}")))
        })
        .collect()
}

/// Restriction of row `row` of `table` to the subgroup of `sub`, matched
/// against row `eta` of `sub`.
pub fn restrict_and_match(
    table: &CharacterTable,
    row: usize,
    sub: &CharacterTable,
    eta: usize,
) -> Result<RestrictionMatch> {
    let fus = fusion(sub, table)?;
    let e = lcm(table.exponent() as u64, sub.exponent() as u64) as u32;
    let chi: Vec<Cyclotomic> = fus.iter().map(|&k| table.value(row, k).lift(e)).collect();
    let eta_conj: Vec<Cyclotomic> = sub.values()[eta].iter().map(|v| v.lift(e).conj()).collect();
    let weights: Vec<i64> = sub.class_sizes().iter().map(|&s| s as i64).collect();
    let s = Cyclotomic::weighted_dot(&weights, &chi, &eta_conj);
    let h = BigRational::from_integer(BigInt::from(sub.order()));
    let m = s
        .div_rational(&h)?
        .to_integer()
        .and_then(|m| m.to_u64())
        .ok_or_else(|| Error::Internal(format!("restriction multiplicity {s}/|H| is not a natural number")))?;
    let equal = chi.iter().zip(&sub.values()[eta]).all(|(a, b)| *a == *b);
    Ok(RestrictionMatch {
        multiplicity: m,
        equal,
    })
}

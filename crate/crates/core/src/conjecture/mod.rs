//! Conjecture A over concrete groups, together with the theorem-backed
//! checks around it: Murai's implication, the Eaton variant over normal
//! `p`-subgroups, the quotient-block correspondence, the fully ramified
//! computation and the Eaton–Moretó statistic.

mod conj_a;
mod eaton;
mod quotient;
mod report;

use serde::Serialize;

use crate::chartable::{dixon_table, restrict_and_match, CentralSubgroup, CharacterTable, LinearCharacter};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation};

pub use conj_a::{
    check_conjecture_a, check_conjecture_a_with, check_if_direction, check_murai, central_p_subgroups,
    rhs_sanity, CommutatorWitness, ConjAReport, LambdaInfo, MemberInfo, Rhs, Witnesses, ZInfo,
};
pub use eaton::{check_eaton, EatonBlock, EatonMember, EatonReport};
pub use quotient::{quotient_block_check, QuotientBlock, QuotientReport};
pub use report::{verdict_report, EatonSkip, NamedSubgroup, StatEntry, TheoremEntry, TwistEntry, VerdictReport};

/// Largest defect group whose table is computed to cross-check the kernel
/// criterion for extensions.
pub const EXTENSION_CROSSCHECK_CAP: u64 = 1 << 12;

/// A linear character of a central subgroup given on explicit elements.
#[derive(Clone, Debug)]
pub struct ZCharacter {
    pub elements: Vec<Permutation>,
    pub values: Vec<Cyclotomic>,
}

impl ZCharacter {
    /// Checks that `elements` is closed under products and that `values`
    /// is multiplicative on it.
    pub fn new(elements: Vec<Permutation>, values: Vec<Cyclotomic>) -> Result<Self> {
        if elements.len() != values.len() || elements.is_empty() {
            return Err(Error::MalformedInput(
                "λ needs exactly one value per element of Z".into(),
            ));
        }
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let ab = a.then(b);
                let k = elements
                    .iter()
                    .position(|x| *x == ab)
                    .ok_or_else(|| Error::MalformedInput("Z is not closed under products".into()))?;
                if values[k] != values[i].mul(&values[j]) {
                    return Err(Error::MalformedInput("λ is not multiplicative on Z".into()));
                }
            }
        }
        Ok(ZCharacter { elements, values })
    }

    /// `λ` on the elements of `z`, using the table's class representatives.
    pub fn from_table(table: &CharacterTable, z: &CentralSubgroup, lambda: &LinearCharacter) -> Result<Self> {
        let reps = table
            .representatives()
            .ok_or_else(|| Error::Precondition("table has no class representatives".into()))?;
        if lambda.classes != z.classes {
            return Err(Error::MalformedInput(format!(
                "λ is not defined on the classes of {}",
                z.name
            )));
        }
        let elements = z.classes.iter().map(|&k| reps[k].clone()).collect();
        ZCharacter::new(elements, lambda.values.clone())
    }

    pub fn order_of_z(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| *v == Cyclotomic::one(1))
    }
}

fn check_central_in(d: &PermGroup, lambda: &ZCharacter) -> Result<()> {
    for z in &lambda.elements {
        if !d.contains(z) || !d.generators().iter().all(|g| g.commutes_with(z)) {
            return Err(Error::Precondition(format!("{z} is not a central element of D")));
        }
    }
    Ok(())
}

/// Whether `λ` extends to `D`: `Z ∩ [D,D] ≤ ker λ`. For `|D|` up to
/// [`EXTENSION_CROSSCHECK_CAP`] this is compared against a search for a
/// linear `μ ∈ Irr(D)` with `μ_Z = λ`; disagreement is an internal error.
pub fn lambda_extends_to(d: &PermGroup, lambda: &ZCharacter) -> Result<bool> {
    let table = if d.order_u64() <= EXTENSION_CROSSCHECK_CAP {
        Some(dixon_table(d)?)
    } else {
        None
    };
    lambda_extends_with(d, table.as_ref(), lambda)
}

pub(crate) fn lambda_extends_with(
    d: &PermGroup,
    d_table: Option<&CharacterTable>,
    lambda: &ZCharacter,
) -> Result<bool> {
    check_central_in(d, lambda)?;
    let derived = d.derived_subgroup()?;
    let one = Cyclotomic::one(1);
    let kernel_ok = lambda
        .elements
        .iter()
        .zip(&lambda.values)
        .all(|(z, v)| !derived.contains(z) || *v == one);
    if let Some(t) = d_table {
        let classes = lambda
            .elements
            .iter()
            .map(|z| t.class_of(z))
            .collect::<Result<Vec<_>>>()?;
        let found = (0..t.values().len()).any(|row| {
            t.degree(row) == 1
                && classes
                    .iter()
                    .zip(&lambda.values)
                    .all(|(&k, v)| t.value(row, k) == v)
        });
        if found != kernel_ok {
            return Err(Error::Internal(format!(
                "extension of λ to D of order {}: kernel criterion says {kernel_ok}, Irr(D) says {found}",
                d.order_u64()
            )));
        }
    }
    Ok(kernel_ok)
}

/// Whether some `τ ∈ Irr(D)` restricts to `θ` (row `theta` of the table of
/// `N`).
pub fn theta_extends_to(d: &PermGroup, n_table: &CharacterTable, theta: usize) -> Result<bool> {
    let n = n_table
        .group()
        .ok_or_else(|| Error::Precondition("the table of N has no group attached".into()))?;
    if !n.is_subgroup_of(d) || !n.is_normal_in(d) {
        return Err(Error::Precondition("N is not a normal subgroup of D".into()));
    }
    let d_table = dixon_table(d)?;
    theta_extends_with(&d_table, n_table, theta)
}

pub(crate) fn theta_extends_with(d_table: &CharacterTable, n_table: &CharacterTable, theta: usize) -> Result<bool> {
    let deg = n_table.degree(theta);
    for tau in 0..d_table.values().len() {
        if d_table.degree(tau) == deg && restrict_and_match(d_table, tau, n_table, theta)?.equal {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Rows of the table of `D` lying over `λ`.
pub(crate) fn irr_over_elements(d_table: &CharacterTable, lambda: &ZCharacter) -> Result<Vec<usize>> {
    let classes = lambda
        .elements
        .iter()
        .map(|z| d_table.class_of(z))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..d_table.values().len())
        .filter(|&row| {
            let deg = d_table.degree(row) as i64;
            classes
                .iter()
                .zip(&lambda.values)
                .all(|(&k, v)| *d_table.value(row, k) == v.mul_int(deg))
        })
        .collect())
}

/// Decomposition of `λ^P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullyRamified {
    /// Multiplicity of the first constituent.
    pub e: u64,
    pub theta_degree: u64,
    /// `(row of the table of P, multiplicity)`.
    pub constituents: Vec<(usize, u64)>,
    pub fully_ramified: bool,
}

/// Decomposes `λ^P` by inner products with `Irr(P)`. `λ^P` vanishes off
/// `Z` and equals `|P:Z|λ` on it.
pub fn fully_ramified_check(p_group: &PermGroup, lambda: &ZCharacter) -> Result<FullyRamified> {
    check_central_in(p_group, lambda)?;
    let t = dixon_table(p_group)?;
    let index = p_group.order_u64() / lambda.order_of_z();
    let mut constituents = Vec::new();
    for row in 0..t.values().len() {
        let mut s = Cyclotomic::zero(1);
        for (z, v) in lambda.elements.iter().zip(&lambda.values) {
            let k = t.class_of(z)?;
            s = s.add(&v.mul(&t.value(row, k).conj()));
        }
        // ⟨λ^P, τ⟩ = |P:Z| Σ_z λ(z) τ(z)‾ / |P|
        let m = s
            .mul_int(index as i64)
            .div_rational(&num_rational::BigRational::from_integer(p_group.order_u64().into()))?
            .to_integer()
            .and_then(|m| num_traits::ToPrimitive::to_u64(&m))
            .ok_or_else(|| Error::Internal("induced multiplicity is not a natural number".into()))?;
        if m > 0 {
            constituents.push((row, m));
        }
    }
    let degree_sum: u64 = constituents.iter().map(|&(r, m)| m * t.degree(r)).sum();
    if degree_sum != index {
        return Err(Error::Internal(format!(
            "λ^P has degree {degree_sum}, expected {index}"
        )));
    }
    let (row, e) = constituents[0];
    let theta_degree = t.degree(row);
    Ok(FullyRamified {
        e,
        theta_degree,
        fully_ramified: constituents.len() == 1 && e * e == index,
        constituents,
    })
}

/// Observational comparison of `p^h` for the least positive height `h`
/// over `Irr(B|λ)` with the least non-linear degree in `Irr(D|λ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EatonMoretoStat {
    pub min_positive_height_power: Option<u64>,
    pub min_nonlinear_degree: Option<u64>,
    pub equal: bool,
}

pub fn eaton_moreto_stat(
    p: u64,
    heights_over_lambda: &[u32],
    d_table: &CharacterTable,
    lambda: &ZCharacter,
) -> Result<EatonMoretoStat> {
    let left = heights_over_lambda
        .iter()
        .copied()
        .filter(|&h| h > 0)
        .min()
        .map(|h| p.pow(h));
    let right = irr_over_elements(d_table, lambda)?
        .into_iter()
        .map(|r| d_table.degree(r))
        .filter(|&d| d > 1)
        .min();
    Ok(EatonMoretoStat {
        min_positive_height_power: left,
        min_nonlinear_degree: right,
        equal: left == right,
    })
}

pub(crate) fn cycles_of(perms: &[Permutation]) -> Vec<Vec<Vec<usize>>> {
    perms.iter().map(Permutation::cycles).collect()
}

#[cfg(test)]
mod tests;

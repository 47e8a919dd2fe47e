//! Permutation groups: construction, element enumeration, classes, and the
//! structural subgroups (centralizers, center, derived subgroup, Sylow
//! subgroups, quotients by central subgroups) the block code needs.

mod chain;
mod elements;
mod perm;
mod structure;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use chain::StabChain;

pub use elements::{ConjugacyClass, ConjugacyClasses, ElementIndex};
pub use perm::Permutation;
pub use structure::Projection;

/// Default limit on full element enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// A finite permutation group with write-once structural caches.
///
/// Cloning is cheap; clones share caches.
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<Inner>,
}

/// Subgroups are ordinary groups on the same point set; the parent
/// relationship is checked when they are created through
/// [`PermGroup::subgroup`].
pub type Subgroup = PermGroup;

struct Inner {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: BigUint,
    cap: usize,
    elements: OnceLock<Arc<ElementIndex>>,
    classes: OnceLock<Arc<ConjugacyClasses>>,
    center: OnceLock<PermGroup>,
    derived: OnceLock<PermGroup>,
}

/// The JSON group-definition document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupDefinition {
    pub name: String,
    pub degree: usize,
    /// One disjoint-cycle list per generator, points 0-based.
    pub generators: Vec<Vec<Vec<usize>>>,
}

impl GroupDefinition {
    pub fn to_group(&self, cap: usize) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|cycles| Permutation::from_cycles(self.degree, cycles))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::with_cap(self.degree, gens, cap)
    }
}

impl PermGroup {
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        Self::with_cap(degree, gens, DEFAULT_ENUMERATION_CAP)
    }

    pub fn with_cap(degree: usize, gens: Vec<Permutation>, cap: usize) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::MalformedInput(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        let chain = StabChain::new(degree, &gens);
        let order = chain.order();
        Ok(PermGroup {
            inner: Arc::new(Inner {
                degree,
                generators: gens,
                chain,
                order,
                cap,
                elements: OnceLock::new(),
                classes: OnceLock::new(),
                center: OnceLock::new(),
                derived: OnceLock::new(),
            }),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_generators(degree, Vec::new()).expect("empty generator list")
    }

    /// A subgroup of `self` generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        for g in &gens {
            if !self.contains(g) {
                return Err(Error::Precondition(format!(
                    "{g} is not an element of the parent group"
                )));
            }
        }
        Self::with_cap(self.degree(), gens, self.cap())
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn cap(&self) -> usize {
        self.inner.cap
    }

    pub fn order(&self) -> &BigUint {
        &self.inner.order
    }

    /// Order as `u64`; every enumerated group fits.
    pub fn order_u64(&self) -> u64 {
        self.inner.order.to_u64().expect("group order exceeds u64")
    }

    pub fn base(&self) -> Vec<usize> {
        self.inner.chain.base()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.inner.chain.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.generators().iter().all(|g| other.contains(g))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn is_trivial(&self) -> bool {
        self.order_u64() == 1
    }

    /// Whether `self` is normalized by every generator of `g`.
    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        g.generators().iter().all(|x| {
            self.generators()
                .iter()
                .all(|h| self.contains(&h.conjugate_by(x)))
        })
    }

    fn check_cap(&self) -> Result<()> {
        match self.inner.order.to_usize() {
            Some(n) if n <= self.inner.cap => Ok(()),
            _ => Err(Error::ResourceExceeded {
                what: format!("element enumeration of a group of order {}", self.inner.order),
                cap: self.inner.cap,
            }),
        }
    }

    /// All elements, sorted; fails if the order exceeds the enumeration cap.
    pub fn elements(&self) -> Result<Arc<ElementIndex>> {
        if let Some(e) = self.inner.elements.get() {
            return Ok(e.clone());
        }
        self.check_cap()?;
        let built = Arc::new(ElementIndex::build(self.degree(), &self.inner.chain));
        Ok(self.inner.elements.get_or_init(|| built).clone())
    }

    pub(crate) fn generator_indices(&self, els: &ElementIndex) -> Vec<usize> {
        self.generators()
            .iter()
            .filter_map(|g| els.index_of(g))
            .filter(|&i| i != 0)
            .collect()
    }

    pub fn conjugacy_classes(&self) -> Result<Arc<ConjugacyClasses>> {
        if let Some(c) = self.inner.classes.get() {
            return Ok(c.clone());
        }
        let els = self.elements()?;
        let gens = self.generator_indices(&els);
        let built = Arc::new(ConjugacyClasses::compute(&els, &gens));
        Ok(self.inner.classes.get_or_init(|| built).clone())
    }

    /// Class index of an element of the group.
    pub fn class_of(&self, g: &Permutation) -> Result<usize> {
        let els = self.elements()?;
        let i = els
            .index_of(g)
            .ok_or_else(|| Error::Precondition(format!("{g} is not a group element")))?;
        Ok(self.conjugacy_classes()?.class_of[i] as usize)
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> Result<u64> {
        let classes = self.conjugacy_classes()?;
        Ok(classes
            .classes
            .iter()
            .fold(1u64, |acc, c| crate::arith::lcm(acc, c.element_order)))
    }

    /// Builds a subgroup from a membership mask over element indices.
    pub(crate) fn subgroup_from_mask(&self, els: &ElementIndex, mask: &[bool]) -> PermGroup {
        let gens = els
            .generators_of(mask)
            .into_iter()
            .map(|i| els.perm(i).clone())
            .collect();
        let h = Self::with_cap(self.degree(), gens, self.cap()).expect("same degree");
        debug_assert_eq!(h.order_u64() as usize, mask.iter().filter(|&&m| m).count());
        h
    }

    pub fn to_definition(&self, name: &str) -> GroupDefinition {
        GroupDefinition {
            name: name.to_string(),
            degree: self.degree(),
            generators: self.generators().iter().map(|g| g.cycles()).collect(),
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree())
            .field("order", &self.order().to_string())
            .field("generators", &self.generators())
            .finish()
    }
}

#[cfg(test)]
mod tests;

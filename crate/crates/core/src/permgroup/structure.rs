use std::collections::BTreeSet;
use std::sync::Arc;

use super::elements::ElementIndex;
use super::perm::Permutation;
use super::PermGroup;
use crate::arith::{is_prime, p_part_u64, valuation_u64};
use crate::error::{Error, Result};

impl PermGroup {
    /// `C_G(g)`.
    pub fn centralizer(&self, g: &Permutation) -> Result<PermGroup> {
        let els = self.elements()?;
        let gi = els
            .index_of(g)
            .ok_or_else(|| Error::Precondition(format!("{g} is not a group element")))?;
        let mask: Vec<bool> = (0..els.len())
            .map(|x| els.mul(x, gi) == els.mul(gi, x))
            .collect();
        Ok(self.subgroup_from_mask(&els, &mask))
    }

    /// `Z(G)`: elements commuting with every generator.
    pub fn center(&self) -> Result<PermGroup> {
        if let Some(z) = self.inner.center.get() {
            return Ok(z.clone());
        }
        let els = self.elements()?;
        let gens = self.generator_indices(&els);
        let mask: Vec<bool> = (0..els.len())
            .map(|x| gens.iter().all(|&s| els.mul(x, s) == els.mul(s, x)))
            .collect();
        let z = self.subgroup_from_mask(&els, &mask);
        Ok(self.inner.center.get_or_init(|| z).clone())
    }

    /// `[G, G]`: normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        if let Some(d) = self.inner.derived.get() {
            return Ok(d.clone());
        }
        let els = self.elements()?;
        let gens = self.generator_indices(&els);
        let mut dgens: Vec<usize> = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                let c = els.mul(els.mul(els.inv(a), els.inv(b)), els.mul(a, b));
                if c != 0 && !dgens.contains(&c) {
                    dgens.push(c);
                }
            }
        }
        let mut mask = els.closure(&dgens);
        loop {
            let extra = dgens
                .iter()
                .flat_map(|&d| gens.iter().map(move |&g| (d, g)))
                .map(|(d, g)| els.conj(d, g))
                .find(|&c| !mask[c]);
            match extra {
                Some(c) => {
                    dgens.push(c);
                    mask = els.closure(&dgens);
                }
                None => break,
            }
        }
        let d = self.subgroup_from_mask(&els, &mask);
        Ok(self.inner.derived.get_or_init(|| d).clone())
    }

    /// A Sylow `p`-subgroup, by normalizer climbing from a `p`-element of
    /// largest order (first in the fixed element order).
    pub fn sylow(&self, p: u64) -> Result<PermGroup> {
        if !is_prime(p) {
            return Err(Error::MalformedInput(format!("{p} is not prime")));
        }
        let n = self.order_u64();
        let target = p_part_u64(n, p) as usize;
        if target == 1 {
            return Ok(PermGroup::with_cap(self.degree(), Vec::new(), self.cap())?);
        }
        let els = self.elements()?;
        let classes = self.conjugacy_classes()?;
        let order_of = |x: usize| classes.classes[classes.class_of[x] as usize].element_order;
        let is_p_power = |k: u64| k > 1 && p_part_u64(k, p) == k;

        let mut best: Option<(u64, usize)> = None;
        for x in 0..els.len() {
            let o = order_of(x);
            if is_p_power(o) && best.map_or(true, |(bo, _)| o > bo) {
                best = Some((o, x));
            }
        }
        let (_, start) = best.expect("p divides |G|, so p-elements exist");
        let mut gens = vec![start];
        let mut mask = els.closure(&gens);
        let mut size = mask.iter().filter(|&&m| m).count();
        while size < target {
            let next = (0..els.len()).find(|&g| {
                !mask[g]
                    && mask[els.pow(g, p)]
                    && gens.iter().all(|&h| mask[els.conj(h, g)])
            });
            let g = next.ok_or_else(|| {
                Error::Internal("normalizer climbing found no p-element in N(P)/P".into())
            })?;
            gens.push(g);
            mask = els.closure(&gens);
            size = mask.iter().filter(|&&m| m).count();
        }
        if size != target {
            return Err(Error::Internal(format!(
                "Sylow climbing overshot: {size} != {target}"
            )));
        }
        Ok(self.subgroup_from_mask(&els, &mask))
    }

    /// Whether `[a, b]` lies in `k` for all generators `a, b` of `self`,
    /// i.e. `self / k` is abelian when `k` is normal in `self`.
    pub fn is_abelian_modulo(&self, k: &PermGroup) -> bool {
        self.commutator_outside(k).is_none()
    }

    /// A pair of generator indices whose commutator is not in `k`.
    pub fn commutator_outside(&self, k: &PermGroup) -> Option<(usize, usize, Permutation)> {
        let gens = self.generators();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let c = Permutation::commutator(&gens[i], &gens[j]);
                if !k.contains(&c) {
                    return Some((i, j, c));
                }
            }
        }
        None
    }

    /// `G / K` for a central subgroup `K`, with the projection map.
    ///
    /// The action on `K`-orbits of points is used when it is faithful on
    /// `G/K`; otherwise `G/K` acts regularly on its own elements.
    pub fn quotient_by_central(&self, k: &PermGroup) -> Result<(PermGroup, Projection)> {
        for z in k.generators() {
            if !self.contains(z) || !self.generators().iter().all(|g| g.commutes_with(z)) {
                return Err(Error::Precondition(format!(
                    "{z} is not a central element of the group"
                )));
            }
        }
        let n = self.order_u64();
        let kn = k.order_u64();
        let target = n / kn;

        // K-orbits on points
        let degree = self.degree();
        let mut block_of = vec![u32::MAX; degree];
        let mut nblocks = 0u32;
        for start in 0..degree {
            if block_of[start] != u32::MAX {
                continue;
            }
            let mut stack = vec![start];
            block_of[start] = nblocks;
            while let Some(x) = stack.pop() {
                for z in k.generators() {
                    let y = z.apply(x);
                    if block_of[y] == u32::MAX {
                        block_of[y] = nblocks;
                        stack.push(y);
                    }
                }
            }
            nblocks += 1;
        }
        let proj = Projection::Blocks {
            block_of,
            nblocks: nblocks as usize,
        };
        let gens: Vec<Permutation> = self
            .generators()
            .iter()
            .map(|g| proj.apply(g))
            .collect::<Result<_>>()?;
        let q = PermGroup::with_cap(nblocks as usize, gens, self.cap())?;
        if q.order_u64() == target {
            return Ok((q, proj));
        }

        let els = self.elements()?;
        let kmask = {
            let kidx: Vec<usize> = k
                .generators()
                .iter()
                .map(|z| els.index_of(z).expect("K lies in G"))
                .collect();
            els.closure(&kidx)
        };
        let kelems: Vec<usize> = (0..els.len()).filter(|&i| kmask[i]).collect();
        let mut coset_of = vec![u32::MAX; els.len()];
        let mut reps = Vec::new();
        for x in 0..els.len() {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &z in &kelems {
                coset_of[els.mul(x, z)] = c;
            }
        }
        let proj = Projection::Cosets {
            elements: els,
            coset_of,
            reps,
        };
        let gens: Vec<Permutation> = self
            .generators()
            .iter()
            .map(|g| proj.apply(g))
            .collect::<Result<_>>()?;
        let q = PermGroup::with_cap(target as usize, gens, self.cap())?;
        if q.order_u64() != target {
            return Err(Error::Internal("regular quotient has wrong order".into()));
        }
        Ok((q, proj))
    }

    /// Every subgroup of `self`, which must be an abelian `p`-group; ordered
    /// by (order, element set).
    pub fn subgroups_of_abelian_p_group(&self, p: u64) -> Result<Vec<PermGroup>> {
        const LIMIT: usize = 4096;
        if !is_prime(p) {
            return Err(Error::MalformedInput(format!("{p} is not prime")));
        }
        let n = self.order_u64();
        if !self.is_abelian() || p.pow(valuation_u64(n, p)) != n {
            return Err(Error::Precondition(format!(
                "group of order {n} is not an abelian {p}-group"
            )));
        }
        if n as usize > LIMIT {
            return Err(Error::ResourceExceeded {
                what: "subgroup enumeration".into(),
                cap: LIMIT,
            });
        }
        let els = self.elements()?;
        let mut seen: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        let trivial: Vec<usize> = vec![0];
        seen.insert((1, trivial.clone()));
        let mut queue = vec![trivial];
        while let Some(sub) = queue.pop() {
            let member: Vec<bool> = {
                let mut m = vec![false; els.len()];
                sub.iter().for_each(|&i| m[i] = true);
                m
            };
            for a in 0..els.len() {
                if member[a] {
                    continue;
                }
                let mut gens: Vec<usize> = els.generators_of(&member);
                gens.push(a);
                let mask = els.closure(&gens);
                let set: Vec<usize> = (0..els.len()).filter(|&i| mask[i]).collect();
                if seen.insert((set.len(), set.clone())) {
                    queue.push(set);
                }
            }
        }
        Ok(seen
            .into_iter()
            .map(|(_, set)| {
                let mut mask = vec![false; els.len()];
                set.iter().for_each(|&i| mask[i] = true);
                self.subgroup_from_mask(&els, &mask)
            })
            .collect())
    }
}

/// The homomorphism `G → G/K` produced by [`PermGroup::quotient_by_central`].
pub enum Projection {
    /// Induced action on the `K`-orbits of points.
    Blocks { block_of: Vec<u32>, nblocks: usize },
    /// Regular action on cosets `xK`, numbered by least element.
    Cosets {
        elements: Arc<ElementIndex>,
        coset_of: Vec<u32>,
        reps: Vec<usize>,
    },
}

impl Projection {
    pub fn apply(&self, g: &Permutation) -> Result<Permutation> {
        match self {
            Projection::Blocks { block_of, nblocks } => {
                let mut images = vec![u32::MAX; *nblocks];
                for x in 0..g.degree() {
                    let b = block_of[x] as usize;
                    let img = block_of[g.apply(x)];
                    if images[b] == u32::MAX {
                        images[b] = img;
                    } else if images[b] != img {
                        return Err(Error::Internal("orbits of K are not blocks".into()));
                    }
                }
                Permutation::from_images(images)
            }
            Projection::Cosets {
                elements,
                coset_of,
                reps,
            } => {
                let gi = elements.index_of(g).ok_or_else(|| {
                    Error::Precondition(format!("{g} is not an element of the group"))
                })?;
                let images = reps
                    .iter()
                    .map(|&x| coset_of[elements.mul(x, gi)])
                    .collect();
                Permutation::from_images(images)
            }
        }
    }
}

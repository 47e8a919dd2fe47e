//! Full element enumeration with index arithmetic, and conjugacy classes.
//!
//! An element is determined by its images of the base points, so products,
//! inverses and conjugates are computed on base images only and looked up.

use std::collections::HashMap;

use super::chain::StabChain;
use super::perm::Permutation;

enum KeyMap {
    Packed { bits: u32, map: HashMap<u128, u32> },
    Wide(HashMap<Box<[u32]>, u32>),
}

impl KeyMap {
    fn new(degree: usize, base_len: usize) -> Self {
        let bits = usize::BITS - degree.max(2).leading_zeros();
        if bits as usize * base_len <= 128 {
            KeyMap::Packed {
                bits,
                map: HashMap::new(),
            }
        } else {
            KeyMap::Wide(HashMap::new())
        }
    }

    #[inline]
    fn pack(bits: u32, images: impl Iterator<Item = u32>) -> u128 {
        images.fold(0u128, |acc, x| (acc << bits) | x as u128)
    }

    fn insert(&mut self, images: &[u32], index: u32) {
        match self {
            KeyMap::Packed { bits, map } => {
                map.insert(Self::pack(*bits, images.iter().copied()), index);
            }
            KeyMap::Wide(map) => {
                map.insert(images.into(), index);
            }
        }
    }

    #[inline]
    fn get(&self, images: impl Iterator<Item = u32>) -> Option<u32> {
        match self {
            KeyMap::Packed { bits, map } => map.get(&Self::pack(*bits, images)).copied(),
            KeyMap::Wide(map) => {
                let key: Vec<u32> = images.collect();
                map.get(key.as_slice()).copied()
            }
        }
    }
}

/// All elements of a group, sorted in the fixed (lexicographic) order, so
/// the identity has index 0.
pub struct ElementIndex {
    base: Vec<usize>,
    perms: Vec<Permutation>,
    keys: KeyMap,
    inverse: Vec<u32>,
}

impl ElementIndex {
    pub(crate) fn build(degree: usize, chain: &StabChain) -> Self {
        let base = chain.base();
        let mut perms = chain.enumerate();
        perms.sort_unstable();
        let mut keys = KeyMap::new(degree, base.len());
        let mut scratch = vec![0u32; base.len()];
        for (i, g) in perms.iter().enumerate() {
            for (k, &b) in base.iter().enumerate() {
                scratch[k] = g.apply(b) as u32;
            }
            keys.insert(&scratch, i as u32);
        }
        let mut index = ElementIndex {
            base,
            perms,
            keys,
            inverse: Vec::new(),
        };
        let inverse: Vec<u32> = (0..index.len())
            .map(|i| {
                let g = &index.perms[i];
                // g⁻¹(b) is the point mapped onto b by g
                let imgs = index.base.iter().map(|&b| {
                    g.images().iter().position(|&x| x as usize == b).unwrap() as u32
                });
                index.keys.get(imgs).expect("inverse lies in the group")
            })
            .collect();
        index.inverse = inverse;
        index
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn perm(&self, i: usize) -> &Permutation {
        &self.perms[i]
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    /// Index of `g`, or `None` if `g` is not an element.
    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        if g.degree() != self.perms[0].degree() {
            return None;
        }
        let i = self.keys.get(self.base.iter().map(|&b| g.apply(b) as u32))? as usize;
        (self.perms[i] == *g).then_some(i)
    }

    /// `a` then `b`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (pa, pb) = (&self.perms[a], &self.perms[b]);
        self.keys
            .get(self.base.iter().map(|&x| pb.apply(pa.apply(x)) as u32))
            .expect("group is closed under multiplication") as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        let (px, pg, pgi) = (
            &self.perms[x],
            &self.perms[g],
            &self.perms[self.inverse[g] as usize],
        );
        self.keys
            .get(
                self.base
                    .iter()
                    .map(|&b| pg.apply(px.apply(pgi.apply(b))) as u32),
            )
            .expect("group is closed under conjugation") as usize
    }

    pub fn pow(&self, a: usize, exp: u64) -> usize {
        let mut acc = 0usize;
        let mut b = a;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Closure of a set of generators, as a membership mask.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.len()];
        member[0] = true;
        let mut list = vec![0usize];
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    list.push(y);
                }
            }
            head += 1;
        }
        member
    }

    /// Greedy generating set (in index order) for a subgroup given by mask.
    pub fn generators_of(&self, mask: &[bool]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut have = self.closure(&gens);
        for (i, &m) in mask.iter().enumerate() {
            if m && !have[i] {
                gens.push(i);
                have = self.closure(&gens);
            }
        }
        gens
    }
}

/// One conjugacy class: its least element is the representative.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub rep_index: usize,
    pub size: usize,
    pub element_order: u64,
    pub members: Vec<u32>,
}

/// Conjugacy classes ordered by representative, plus the element → class
/// map over element indices.
pub struct ConjugacyClasses {
    pub classes: Vec<ConjugacyClass>,
    pub class_of: Vec<u32>,
}

impl ConjugacyClasses {
    pub(crate) fn compute(elements: &ElementIndex, generators: &[usize]) -> Self {
        const UNSEEN: u32 = u32::MAX;
        let n = elements.len();
        let mut class_of = vec![UNSEEN; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != UNSEEN {
                continue;
            }
            let c = classes.len() as u32;
            class_of[start] = c;
            let mut members = vec![start as u32];
            let mut head = 0;
            while head < members.len() {
                let x = members[head] as usize;
                for &g in generators {
                    let y = elements.conj(x, g);
                    if class_of[y] == UNSEEN {
                        class_of[y] = c;
                        members.push(y as u32);
                    }
                }
                head += 1;
            }
            members.sort_unstable();
            let representative = elements.perm(start).clone();
            classes.push(ConjugacyClass {
                element_order: representative.order(),
                representative,
                rep_index: start,
                size: members.len(),
                members,
            });
        }
        ConjugacyClasses { classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

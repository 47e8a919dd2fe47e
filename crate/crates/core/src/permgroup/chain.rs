//! Base and strong generating set via deterministic Schreier–Sims.

use num_bigint::BigUint;
use num_traits::One;

use super::perm::Permutation;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    pub gens: Vec<Permutation>,
    /// Orbit of `base` in discovery order.
    pub orbit: Vec<usize>,
    /// `slot[β]` indexes `reps` for points in the orbit.
    slot: Vec<u32>,
    /// `reps[k]` maps `base` onto `orbit[k]`.
    reps: Vec<Permutation>,
    reps_inv: Vec<Permutation>,
}

const NOT_IN_ORBIT: u32 = u32::MAX;

impl Level {
    fn new(degree: usize, base: usize, gens: Vec<Permutation>) -> Self {
        let mut level = Level {
            base,
            gens,
            orbit: Vec::new(),
            slot: vec![NOT_IN_ORBIT; degree],
            reps: Vec::new(),
            reps_inv: Vec::new(),
        };
        level.rebuild_orbit();
        level
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.slot.len();
        self.slot.iter_mut().for_each(|s| *s = NOT_IN_ORBIT);
        self.orbit.clear();
        self.reps.clear();
        self.reps_inv.clear();
        let id = Permutation::identity(degree);
        self.slot[self.base] = 0;
        self.orbit.push(self.base);
        self.reps_inv.push(id.clone());
        self.reps.push(id);
        let mut head = 0;
        while head < self.orbit.len() {
            let beta = self.orbit[head];
            for s in &self.gens {
                let gamma = s.apply(beta);
                if self.slot[gamma] == NOT_IN_ORBIT {
                    let rep = self.reps[head].then(s);
                    self.slot[gamma] = self.orbit.len() as u32;
                    self.orbit.push(gamma);
                    self.reps_inv.push(rep.inverse());
                    self.reps.push(rep);
                }
            }
            head += 1;
        }
    }

    #[inline]
    fn rep_inv(&self, point: usize) -> Option<&Permutation> {
        match self.slot[point] {
            NOT_IN_ORBIT => None,
            k => Some(&self.reps_inv[k as usize]),
        }
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut base: Vec<usize> = Vec::new();
        for g in &gens {
            if base.iter().all(|&b| g.apply(b) == b) {
                let moved = (0..degree).find(|&i| g.apply(i) != i).unwrap();
                base.push(moved);
            }
        }
        let mut levels = Vec::with_capacity(base.len());
        for l in 0..base.len() {
            let fixing: Vec<Permutation> = gens
                .iter()
                .filter(|g| base[..l].iter().all(|&b| g.apply(b) == b))
                .cloned()
                .collect();
            levels.push(Level::new(degree, base[l], fixing));
        }
        let mut chain = StabChain { degree, levels };
        chain.close();
        chain
    }

    /// Schreier–Sims closure: every Schreier generator at every level sifts
    /// through the levels below it.
    fn close(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut found: Option<(Permutation, usize)> = None;
            'search: for k in 0..self.levels[lvl].orbit.len() {
                let beta = self.levels[lvl].orbit[k];
                for s in &self.levels[lvl].gens {
                    let gamma = s.apply(beta);
                    let level = &self.levels[lvl];
                    let schreier = level.reps[k]
                        .then(s)
                        .then(level.rep_inv(gamma).expect("orbit closed under generators"));
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.sift_from(schreier, lvl + 1);
                    if !h.is_identity() {
                        found = Some((h, j));
                        break 'search;
                    }
                }
            }
            match found {
                Some((h, j)) => {
                    if j == self.levels.len() {
                        let moved = (0..self.degree).find(|&x| h.apply(x) != x).unwrap();
                        self.levels.push(Level::new(self.degree, moved, Vec::new()));
                    }
                    for l in (lvl + 1)..=j {
                        self.levels[l].gens.push(h.clone());
                        self.levels[l].rebuild_orbit();
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it passed every level).
    fn sift_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = g.apply(level.base);
            match level.rep_inv(beta) {
                None => return (g, l),
                Some(u_inv) => g = g.then(u_inv),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(g.clone(), 0).0.is_identity()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Every group element, as products of transversal elements
    /// `u_{k-1} · … · u_0`.
    pub fn enumerate(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.reps().len());
            for g in &out {
                for u in level.reps() {
                    next.push(g.then(u));
                }
            }
            out = next;
        }
        out
    }
}

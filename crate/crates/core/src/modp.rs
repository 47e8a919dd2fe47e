//! Arithmetic over a prime field `F_p`: scalars, polynomials (lowest degree
//! first) and small dense matrices.

use crate::arith::pow_mod;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(crate::arith::is_prime(p));
        PrimeField { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Reduces a signed integer.
    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    // --- polynomials -----------------------------------------------------

    pub fn trim(f: &mut Vec<u64>) {
        while f.last() == Some(&0) {
            f.pop();
        }
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        Self::trim(&mut out);
        out
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                self.sub(
                    a.get(i).copied().unwrap_or(0),
                    b.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Self::trim(&mut out);
        out
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn poly_divrem(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let mut b = b.to_vec();
        Self::trim(&mut b);
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut r = a.to_vec();
        Self::trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = self.inv(*b.last().unwrap());
        let mut q = vec![0u64; r.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + b.len() - 1], lead_inv);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (i, &bi) in b.iter().enumerate() {
                r[k + i] = self.sub(r[k + i], self.mul(c, bi));
            }
        }
        r.truncate(b.len() - 1);
        Self::trim(&mut r);
        Self::trim(&mut q);
        (q, r)
    }

    pub fn poly_rem(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.poly_divrem(a, b).1
    }

    pub fn poly_monic(&self, f: &[u64]) -> Vec<u64> {
        let mut f = f.to_vec();
        Self::trim(&mut f);
        if let Some(&lead) = f.last() {
            let inv = self.inv(lead);
            f.iter_mut().for_each(|c| *c = self.mul(*c, inv));
        }
        f
    }

    pub fn poly_gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        Self::trim(&mut a);
        Self::trim(&mut b);
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.poly_monic(&a)
    }

    pub fn poly_powmod(&self, base: &[u64], mut exp: u64, modulus: &[u64]) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = self.poly_rem(base, modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.poly_rem(&self.poly_mul(&acc, &b), modulus);
            }
            b = self.poly_rem(&self.poly_mul(&b, &b), modulus);
            exp >>= 1;
        }
        self.poly_rem(&acc, modulus)
    }

    pub fn poly_eval(&self, f: &[u64], x: u64) -> u64 {
        f.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Distinct roots of `f` in `F_p`, ascending.
    pub fn roots(&self, f: &[u64]) -> Vec<u64> {
        let f = self.poly_monic(f);
        if f.len() <= 1 {
            return Vec::new();
        }
        if self.p <= 1 << 16 {
            return (0..self.p).filter(|&x| self.poly_eval(&f, x) == 0).collect();
        }
        // product of the distinct linear factors
        let xp = self.poly_powmod(&[0, 1], self.p, &f);
        let g = self.poly_gcd(&f, &self.poly_sub(&xp, &[0, 1]));
        let mut out = Vec::new();
        self.split_linear(&g, &mut out);
        out.sort_unstable();
        out
    }

    /// Equal-degree splitting of a squarefree product of linear factors,
    /// with deterministic shifts `x + a`.
    fn split_linear(&self, g: &[u64], out: &mut Vec<u64>) {
        match g.len() {
            0 | 1 => {}
            2 => out.push(self.neg(self.mul(g[0], self.inv(g[1])))),
            _ => {
                let half = (self.p - 1) / 2;
                for a in 0..self.p {
                    let h = self.poly_powmod(&[a, 1], half, g);
                    let d = self.poly_gcd(g, &self.poly_sub(&h, &[1]));
                    if d.len() > 1 && d.len() < g.len() {
                        let (q, _) = self.poly_divrem(g, &d);
                        self.split_linear(&d, out);
                        self.split_linear(&self.poly_monic(&q), out);
                        return;
                    }
                }
                unreachable!("deterministic splitting exhausted the field");
            }
        }
    }

    // --- matrices ---------------------------------------------------------

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == rows.len() {
                break;
            }
            let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, i);
            let inv = self.inv(rows[r][c]);
            rows[r].iter_mut().for_each(|x| *x = self.mul(*x, inv));
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for k in 0..ncols {
                        let t = self.mul(f, rows[r][k]);
                        rows[i][k] = self.sub(rows[i][k], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of `{v : A v = 0}` for a square or rectangular matrix `A`.
    pub fn nullspace(&self, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let ncols = a.first().map_or(0, |r| r.len());
        let mut m = a.to_vec();
        let pivots = self.rref(&mut m);
        let mut basis = Vec::new();
        for free in (0..ncols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u64; ncols];
            v[free] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = self.neg(row[free]);
            }
            basis.push(v);
        }
        basis
    }

    /// Characteristic polynomial `det(xI - A)` via reduction to Hessenberg
    /// form.
    pub fn charpoly(&self, a: &[Vec<u64>]) -> Vec<u64> {
        let n = a.len();
        let mut h = a.to_vec();
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else {
                continue;
            };
            if i != j + 1 {
                h.swap(i, j + 1);
                for row in h.iter_mut() {
                    row.swap(i, j + 1);
                }
            }
            let tinv = self.inv(h[j + 1][j]);
            for r in j + 2..n {
                let u = self.mul(h[r][j], tinv);
                if u == 0 {
                    continue;
                }
                for c in 0..n {
                    let t = self.mul(u, h[j + 1][c]);
                    h[r][c] = self.sub(h[r][c], t);
                }
                for c in 0..n {
                    let t = self.mul(u, h[c][r]);
                    h[c][j + 1] = self.add(h[c][j + 1], t);
                }
            }
        }
        // p_m(x) = (x - h_mm) p_{m-1} - sum_{i<m} h_{i,m} prod_{k=i+1..m} h_{k,k-1} p_{i-1}
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 1..=n {
            let mut pm = self.poly_mul(&[self.neg(h[m - 1][m - 1]), 1], &polys[m - 1]);
            pm.resize(m + 1, 0);
            let mut prod = 1u64;
            for i in (1..m).rev() {
                prod = self.mul(prod, h[i][i - 1]);
                let coef = self.mul(h[i - 1][m - 1], prod);
                if coef == 0 {
                    continue;
                }
                for (k, &c) in polys[i - 1].iter().enumerate() {
                    pm[k] = self.sub(pm[k], self.mul(coef, c));
                }
            }
            Self::trim(&mut pm);
            polys.push(pm);
        }
        polys.pop().unwrap()
    }
}

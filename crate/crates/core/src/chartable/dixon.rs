//! Dixon–Schneider: common eigenvectors of the class matrices over `F_ℓ`,
//! lifted to exact values through eigenvalue multiplicities.

use std::collections::BTreeMap;

use super::CharacterTable;
use crate::arith::{divisors, is_prime, isqrt, multiplicative_order, prime_divisors};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::modp::PrimeField;
use crate::permgroup::{ConjugacyClasses, ElementIndex, PermGroup};

/// `a_{ijk} = #{(x, y) ∈ K_i × K_j : xy = z_k}` for the representative `z_k`.
pub fn class_mult_coefficients(g: &PermGroup, i: usize, j: usize, k: usize) -> Result<u64> {
    let els = g.elements()?;
    let classes = g.conjugacy_classes()?;
    let r = classes.len();
    if i >= r || j >= r || k >= r {
        return Err(Error::MalformedInput(format!(
            "class index out of range (the group has {r} classes)"
        )));
    }
    let z = classes.classes[k].rep_index;
    Ok(classes.classes[j]
        .members
        .iter()
        .filter(|&&y| {
            let x = els.mul(z, els.inv(y as usize));
            classes.class_of[x] as usize == i
        })
        .count() as u64)
}

/// Column `j` of the class algebra: `M[i][k] = a_{ijk}` for all `i, k`.
fn class_matrix(els: &ElementIndex, classes: &ConjugacyClasses, j: usize) -> Vec<Vec<u64>> {
    let r = classes.len();
    let mut m = vec![vec![0u64; r]; r];
    let inv_members: Vec<usize> = classes.classes[j]
        .members
        .iter()
        .map(|&y| els.inv(y as usize))
        .collect();
    for (k, ck) in classes.classes.iter().enumerate() {
        for &yi in &inv_members {
            let x = els.mul(ck.rep_index, yi);
            m[classes.class_of[x] as usize][k] += 1;
        }
    }
    m
}

/// The `skip`-th (0-based) prime `ℓ ≡ 1 (mod e)` with `ℓ > 2√|G|`.
pub fn dixon_prime(order: u64, exponent: u64, skip: usize) -> u64 {
    let bound = 2 * isqrt(order) + 1;
    let mut l = exponent + 1;
    let mut seen = 0;
    loop {
        if l > bound && is_prime(l) {
            if seen == skip {
                return l;
            }
            seen += 1;
        }
        l += exponent;
    }
}

pub fn dixon_table(g: &PermGroup) -> Result<CharacterTable> {
    dixon_table_with_prime(g, 0)
}

/// Dixon–Schneider with the `skip`-th admissible prime.
pub fn dixon_table_with_prime(g: &PermGroup, skip: usize) -> Result<CharacterTable> {
    let els = g.elements()?;
    let classes = g.conjugacy_classes()?;
    let order = g.order_u64();
    let exponent = g.exponent()?;
    let e = u32::try_from(exponent)
        .map_err(|_| Error::ResourceExceeded {
            what: "group exponent".into(),
            cap: u32::MAX as usize,
        })?;
    let r = classes.len();
    let l = dixon_prime(order, exponent, skip);
    let f = PrimeField::new(l);
    let zl = (1..l)
        .find(|&x| multiplicative_order(x, l) == exponent)
        .expect("F_ℓ contains primitive e-th roots");

    // split F_ℓ^r into common eigenspaces, class by class
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| (0..r).map(|k| u64::from(i == k)).collect())
        .collect()];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(&els, &classes, j);
        let m: Vec<Vec<u64>> = m
            .into_iter()
            .map(|row| row.into_iter().map(|x| x % l).collect())
            .collect();
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split_space(&f, &m, space)?);
        }
        spaces = next;
    }
    if let Some(s) = spaces.iter().find(|s| s.len() > 1) {
        return Err(Error::Internal(format!(
            "class matrices leave a common eigenspace of dimension {}",
            s.len()
        )));
    }

    let sizes: Vec<u64> = classes.classes.iter().map(|c| c.size as u64).collect();
    let inverse: Vec<usize> = classes
        .classes
        .iter()
        .map(|c| classes.class_of[els.inv(c.rep_index)] as usize)
        .collect();
    let powers: Vec<Vec<usize>> = classes
        .classes
        .iter()
        .map(|c| {
            let mut x = 0usize;
            (0..c.element_order)
                .map(|_| {
                    let k = classes.class_of[x] as usize;
                    x = els.mul(x, c.rep_index);
                    k
                })
                .collect()
        })
        .collect();

    let mut values = Vec::with_capacity(r);
    for space in &spaces {
        let w = &space[0];
        if w[0] == 0 {
            return Err(Error::Internal("eigenvector vanishes on the identity".into()));
        }
        let inv0 = f.inv(w[0]);
        let omega: Vec<u64> = w.iter().map(|&x| f.mul(x, inv0)).collect();
        // |G| / d^2 = Σ_k ω_k ω_{k'} / |K_k|
        let s = (0..r).fold(0u64, |acc, k| {
            let t = f.mul(f.mul(omega[k], omega[inverse[k]]), f.inv(sizes[k] % l));
            f.add(acc, t)
        });
        if s == 0 {
            return Err(Error::Internal("degree equation has no solution".into()));
        }
        let d2 = f.mul(order % l, f.inv(s));
        let d = divisors(order)
            .into_iter()
            .find(|&d| d * d <= order && (d * d) % l == d2)
            .ok_or_else(|| Error::Internal("no admissible character degree".into()))?;
        let modl: Vec<u64> = (0..r)
            .map(|k| f.mul(f.mul(omega[k], d % l), f.inv(sizes[k] % l)))
            .collect();
        let row = (0..r)
            .map(|k| lift_value(&f, zl, e, d, &modl, &powers[k]))
            .collect::<Result<Vec<_>>>()?;
        values.push(row);
    }

    let power_maps: BTreeMap<u64, Vec<usize>> = prime_divisors(order)
        .into_iter()
        .map(|p| {
            let map = powers
                .iter()
                .map(|pw| pw[(p % pw.len() as u64) as usize])
                .collect();
            (p, map)
        })
        .collect();

    let mut table = CharacterTable {
        name: String::new(),
        order,
        exponent: e,
        class_sizes: sizes,
        element_orders: classes.classes.iter().map(|c| c.element_order).collect(),
        representatives: Some(classes.classes.iter().map(|c| c.representative.clone()).collect()),
        group: Some(g.clone()),
        power_maps,
        values,
        central_subgroups: Vec::new(),
        dixon_prime: Some(l),
    };
    table.sort_rows();
    table.verify()?;
    Ok(table)
}

/// Splits a subspace (rows in RREF) into eigenspaces of `m` restricted to it.
fn split_space(f: &PrimeField, m: &[Vec<u64>], mut basis: Vec<Vec<u64>>) -> Result<Vec<Vec<Vec<u64>>>> {
    let pivots = f.rref(&mut basis);
    let dim = basis.len();
    let r = m.len();
    // column s of `a` holds the coordinates of M b_s
    let mut a = vec![vec![0u64; dim]; dim];
    for (s, b) in basis.iter().enumerate() {
        let image: Vec<u64> = (0..r)
            .map(|i| {
                m[i].iter()
                    .zip(b)
                    .fold(0u64, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
            })
            .collect();
        for (t, &pc) in pivots.iter().enumerate() {
            a[t][s] = image[pc];
        }
    }
    let roots = f.roots(&f.charpoly(&a));
    let mut out = Vec::with_capacity(roots.len());
    let mut total = 0;
    for lambda in roots {
        let shifted: Vec<Vec<u64>> = (0..dim)
            .map(|t| {
                (0..dim)
                    .map(|s| if s == t { f.sub(a[t][s], lambda) } else { a[t][s] })
                    .collect()
            })
            .collect();
        let mut vecs: Vec<Vec<u64>> = f
            .nullspace(&shifted)
            .into_iter()
            .map(|c| {
                (0..r)
                    .map(|i| {
                        c.iter()
                            .zip(&basis)
                            .fold(0u64, |acc, (&cs, b)| f.add(acc, f.mul(cs, b[i])))
                    })
                    .collect()
            })
            .collect();
        f.rref(&mut vecs);
        total += vecs.len();
        out.push(vecs);
    }
    if total != dim {
        return Err(Error::Internal(format!(
            "class matrix is not diagonalizable over F_ℓ on a subspace of dimension {dim}"
        )));
    }
    Ok(out)
}

/// Recovers `χ(g)` from `χ(g^t) mod ℓ`, `t < n = o(g)`: the eigenvalue
/// `ζ_n^s` occurs with multiplicity `m_s = (1/n) Σ_t χ(g^t) z_n^{-st}`.
fn lift_value(
    f: &PrimeField,
    zl: u64,
    e: u32,
    degree: u64,
    modl: &[u64],
    powers: &[usize],
) -> Result<Cyclotomic> {
    let n = powers.len() as u64;
    let step = e as u64 / n;
    let zn = f.pow(zl, step);
    let zn_inv = f.inv(zn);
    let n_inv = f.inv(n % f.p);
    let mut sums = vec![0i64; e as usize];
    let mut total = 0u64;
    for s in 0..n {
        let w = f.pow(zn_inv, s);
        let mut acc = 0u64;
        let mut wt = 1u64;
        for &k in powers {
            acc = f.add(acc, f.mul(modl[k], wt));
            wt = f.mul(wt, w);
        }
        let mult = f.mul(acc, n_inv);
        if mult > degree {
            return Err(Error::Internal(format!(
                "eigenvalue multiplicity {mult} exceeds the degree {degree}"
            )));
        }
        total += mult;
        sums[(s * step) as usize] = mult as i64;
    }
    if total != degree {
        return Err(Error::Internal(format!(
            "eigenvalue multiplicities sum to {total}, not the degree {degree}"
        )));
    }
    Ok(Cyclotomic::from_exponent_sums(e, &sums))
}

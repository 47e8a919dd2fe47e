//! Cyclotomic polynomials and the per-conductor field data, cached
//! process-wide.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{divisors, euler_phi};

/// Data for `Q(ζ_e)`: the degree `φ(e)` and the nonzero lower coefficients
/// of the monic `Φ_e`.
#[derive(Debug)]
pub struct CycloField {
    pub e: u32,
    pub phi: usize,
    /// `(i, c)` with `c` the coefficient of `x^i` in `Φ_e`, `i < φ(e)`, `c ≠ 0`.
    pub lower: Vec<(usize, i64)>,
}

static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
static POLYS: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();

pub fn field(e: u32) -> Arc<CycloField> {
    assert!(e >= 1, "conductor must be positive");
    let map = FIELDS.get_or_init(Default::default);
    if let Some(f) = map.lock().unwrap().get(&e) {
        return f.clone();
    }
    let poly = cyclotomic_polynomial(e);
    let phi = poly.len() - 1;
    debug_assert_eq!(phi as u64, euler_phi(e as u64));
    let lower = poly[..phi]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect();
    let f = Arc::new(CycloField { e, phi, lower });
    map.lock().unwrap().entry(e).or_insert(f).clone()
}

/// `Φ_n`, lowest degree first, by dividing `x^n - 1` by `Φ_d` for every
/// proper divisor `d`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    let map = POLYS.get_or_init(Default::default);
    if let Some(p) = map.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n as u64) {
        if d == n as u64 {
            continue;
        }
        let div = cyclotomic_polynomial(d as u32);
        num = exact_div_monic(&num, &div);
    }
    let p = Arc::new(num);
    map.lock().unwrap().entry(n).or_insert(p).clone()
}

fn exact_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db];
        q[k] = c;
        if c == 0 {
            continue;
        }
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] = r[k + i]
                .checked_sub(c.checked_mul(bi).expect("cyclotomic coefficient overflow"))
                .expect("cyclotomic coefficient overflow");
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

//! Exact matrix rank over the coefficient field: `F_p` by modular elimination,
//! `Q` by fraction-free (Bareiss) elimination over the integers.

use num_bigint::BigInt;
use num_traits::Zero;

/// The prime field `F_p`, or `Q` when `characteristic == 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoefficientField {
    characteristic: u64,
}

impl CoefficientField {
    pub fn new(characteristic: u64) -> Self {
        CoefficientField { characteristic }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// Rank of an integer matrix read over this field. Rows may be empty.
    pub fn rank(&self, rows: &[Vec<i64>]) -> usize {
        if rows.is_empty() || rows[0].is_empty() {
            return 0;
        }
        match self.characteristic {
            0 => rank_fraction_free(rows),
            p => rank_mod_p(rows, p),
        }
    }
}

#[allow(clippy::needless_range_loop)]
fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let p128 = p as i128;
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| (x as i128).rem_euclid(p128) as u64)
                .collect()
        })
        .collect();
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = mod_pow(m[rank][c], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in c..cols {
                    let sub = mul_mod(f, m[rank][k], p);
                    m[r][k] = (m[r][k] + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Bareiss elimination: every intermediate entry is a minor of the input, so
/// the divisions are exact and no fractions appear.
fn rank_fraction_free(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let cols = m[0].len();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        if rank == m.len() {
            break;
        }
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..m.len() {
            for k in c + 1..cols {
                let v = &m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k];
                m[r][k] = v / &prev;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

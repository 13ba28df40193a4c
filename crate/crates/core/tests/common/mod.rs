//! Independent reference computations shared by the integration tests. None of
//! these call into the library's counting or homology code.
#![allow(dead_code, clippy::needless_range_loop)]

use koszul_entropy::{ExponentVector, MonomialIdeal, RingSpec};

pub fn ev(e: &[u64]) -> ExponentVector {
    ExponentVector::from_u64s(e)
}

pub fn ideal(dim: usize, gens: &[Vec<u64>]) -> MonomialIdeal {
    MonomialIdeal::minimalize(dim, gens.iter().map(|g| ev(g))).unwrap()
}

pub fn ring(p: u64, dim: usize, quotient: &[Vec<u64>]) -> RingSpec {
    RingSpec::new(p, dim, ideal(dim, quotient)).unwrap()
}

pub fn divides(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Every point of `prod [0, sides_i)`, last coordinate fastest.
pub fn box_points(sides: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &s in sides {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..s).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Standard monomials of `(gens)`: lattice points in the box divisible by no generator.
/// `sides` must contain every standard monomial.
pub fn count_standard(gens: &[Vec<u64>], sides: &[u64]) -> u64 {
    box_points(sides)
        .iter()
        .filter(|p| !gens.iter().any(|g| divides(g, p)))
        .count() as u64
}

/// Smallest box holding the standard monomials: one past the largest pure power per axis.
pub fn pure_power_box(gens: &[Vec<u64>]) -> Option<Vec<u64>> {
    let d = gens.first()?.len();
    (0..d)
        .map(|i| {
            gens.iter()
                .filter(|g| g.iter().enumerate().all(|(j, &e)| j == i || e == 0) && g[i] > 0)
                .map(|g| g[i])
                .min()
        })
        .collect()
}

/// Length of `k[X]/(gens)` by enumeration, or `None` when the ideal is not m-primary.
pub fn brute_colength(gens: &[Vec<u64>]) -> Option<u64> {
    let sides = pure_power_box(gens)?;
    Some(count_standard(gens, &sides))
}

/// Image of the exponent `v` under the map with columns `cols`: `A v`.
pub fn apply(cols: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    let d = cols[0].len();
    let mut out = vec![0; d];
    for (c, &vj) in cols.iter().zip(v) {
        for (o, a) in out.iter_mut().zip(c) {
            *o += a * vj;
        }
    }
    out
}

/// Columns of `A^n`.
pub fn power(cols: &[Vec<u64>], n: u32) -> Vec<Vec<u64>> {
    let d = cols.len();
    let mut acc: Vec<Vec<u64>> = (0..d)
        .map(|j| (0..d).map(|i| u64::from(i == j)).collect())
        .collect();
    for _ in 0..n {
        acc = acc.iter().map(|c| apply(cols, c)).collect();
    }
    acc
}

/// Rank of an integer matrix modulo a prime, by plain row reduction.
pub fn rank_mod(mut m: Vec<Vec<i64>>, p: i64) -> usize {
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x = x.rem_euclid(p);
        }
    }
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = (1..p).find(|&x| x * m[r][c] % p == 1).unwrap();
        for k in 0..cols {
            m[r][k] = m[r][k] * inv % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for k in 0..cols {
                    m[i][k] = (m[i][k] - f * m[r][k]).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank over `Q` by exact rational elimination on `(numerator, denominator)` pairs.
pub fn rank_rational(m: &[Vec<i64>]) -> usize {
    use num_rational::Rational64;
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Rational64::from(x)).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != Rational64::from(0)) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..a.len() {
            let f = a[i][c] / a[r][c];
            for k in c..cols {
                let sub = f * a[r][k];
                a[i][k] -= sub;
            }
        }
        r += 1;
    }
    r
}

//! Growth-rate arithmetic on exact integer sequences: logarithms of big
//! integers, least-squares slopes, and the dominant root of the shortest
//! linear recurrence satisfied by the sequence.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Natural logarithm of a big integer.
///
/// Uses `log x = s·log 2 + log(x >> s)` with the top 64 bits kept, so the
/// relative error is that of one `f64` rounding of the mantissa (about 1e-16).
/// Returns `-inf` for zero.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x
            .to_u64()
            .expect("fits in 64 bits")
            .to_f64()
            .expect("u64 to f64")
            .ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 leading bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Least-squares slope of `ys` against `xs`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Shortest recurrence `s_k = c_1 s_{k-1} + ... + c_L s_{k-L}` consistent with
/// every term, by Berlekamp–Massey over `Q`. Returns `(c_1, ..., c_L)`.
pub fn shortest_recurrence(terms: &[BigUint]) -> Vec<BigRational> {
    let s: Vec<BigRational> = terms
        .iter()
        .map(|t| BigRational::from_integer(BigInt::from(t.clone())))
        .collect();
    let zero = BigRational::zero();
    let one = BigRational::from_integer(BigInt::from(1));
    // Connection polynomials: s_k + Σ conn[i] s_{k-i} = 0.
    let mut conn = vec![one.clone()];
    let mut prev = vec![one.clone()];
    let mut order = 0usize;
    let mut gap = 1usize;
    let mut prev_discrepancy = one;
    for k in 0..s.len() {
        let mut discrepancy = s[k].clone();
        for (i, c) in conn.iter().enumerate().skip(1).take(k) {
            discrepancy += c * &s[k - i];
        }
        if discrepancy.is_zero() {
            gap += 1;
            continue;
        }
        let factor = &discrepancy / &prev_discrepancy;
        let mut next = conn.clone();
        if next.len() < prev.len() + gap {
            next.resize(prev.len() + gap, zero.clone());
        }
        for (i, b) in prev.iter().enumerate() {
            next[i + gap] -= &factor * b;
        }
        if 2 * order <= k {
            order = k + 1 - order;
            prev = std::mem::replace(&mut conn, next);
            prev_discrepancy = discrepancy;
            gap = 1;
        } else {
            conn = next;
            gap += 1;
        }
    }
    conn.resize(order + 1, zero);
    conn[1..].iter().map(|c| -c).collect()
}

/// Growth ratio of a sequence that provably (within the data) satisfies a
/// linear recurrence: the positive real root of largest modulus of its
/// characteristic polynomial. `None` when the recurrence is not determined by
/// the data (`2L >= len`) or the dominant root is not a simple positive real.
pub fn recurrence_growth(terms: &[BigUint]) -> Option<(f64, usize)> {
    let coeffs = shortest_recurrence(terms);
    let order = coeffs.len();
    if order == 0 || 2 * order >= terms.len() {
        return None;
    }
    // z^L - c_1 z^{L-1} - ... - c_L, highest degree first.
    let mut poly = vec![1.0f64];
    for c in &coeffs {
        poly.push(-c.to_f64()?);
    }
    let root = dominant_real_root(&poly)?;
    Some((root, order))
}

fn dominant_real_root(poly: &[f64]) -> Option<f64> {
    let degree = poly.len() - 1;
    if degree == 1 {
        let r = -poly[1];
        return (r > 0.0).then_some(r);
    }
    let roots = durand_kerner(poly)?;
    let mut by_modulus: Vec<Complex64> = roots;
    by_modulus.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    let top = by_modulus[0];
    let runner_up = by_modulus[1].norm();
    if top.re <= 0.0
        || top.im.abs() > 1e-7 * top.norm()
        || top.norm() - runner_up <= 1e-6 * top.norm()
    {
        return None;
    }
    Some(newton_polish(poly, top.re))
}

fn durand_kerner(poly: &[f64]) -> Option<Vec<Complex64>> {
    let degree = poly.len() - 1;
    let bound = 1.0 + poly[1..].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..degree)
        .map(|k| seed.powu(k as u32) * (bound / 2.0))
        .collect();
    let eval = |z: Complex64| poly.iter().fold(Complex64::zero(), |acc, &c| acc * z + c);
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..degree {
            let zi = roots[i];
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, zj) in roots.iter().enumerate() {
                if j != i {
                    denom *= zi - zj;
                }
            }
            if denom.norm() == 0.0 {
                return None;
            }
            let step = eval(zi) / denom;
            roots[i] = zi - step;
            moved = moved.max(step.norm() / zi.norm().max(1.0));
        }
        if moved < 1e-15 {
            return Some(roots);
        }
    }
    Some(roots)
}

fn newton_polish(poly: &[f64], mut x: f64) -> f64 {
    for _ in 0..20 {
        let (mut p, mut dp) = (0.0f64, 0.0f64);
        for &c in poly {
            dp = dp * x + p;
            p = p * x + c;
        }
        if dp == 0.0 {
            break;
        }
        let step = p / dp;
        x -= step;
        if step.abs() <= f64::EPSILON * x.abs() {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn ln_big_matches_f64_and_scales() {
        for x in [1u64, 2, 30, 1 << 40, u64::MAX] {
            let err = (ln_big(&BigUint::from(x)) - (x as f64).ln()).abs();
            assert!(err <= 1e-15 * (x as f64).ln().max(1.0));
        }
        let x = BigUint::from(30u32).pow(200);
        let expected = 200.0 * 30f64.ln();
        assert!((ln_big(&x) - expected).abs() / expected < 1e-13);
        assert_eq!(ln_big(&BigUint::zero()), f64::NEG_INFINITY);
    }

    #[test]
    fn recurrence_of_shifted_geometric() {
        // 2·3^n - 1 satisfies s_k = 4 s_{k-1} - 3 s_{k-2}.
        let terms: Vec<BigUint> = (1..=8u32)
            .map(|n| BigUint::from(2 * 3u64.pow(n) - 1))
            .collect();
        let c = shortest_recurrence(&terms);
        let as_i: Vec<i64> = c
            .iter()
            .map(|r| r.to_integer().try_into().unwrap())
            .collect();
        assert_eq!(as_i, vec![4, -3]);
        let (root, order) = recurrence_growth(&terms).unwrap();
        assert_eq!(order, 2);
        assert!((root - 3.0).abs() < 1e-13);
    }

    #[test]
    fn recurrence_needs_enough_terms() {
        assert_eq!(recurrence_growth(&big(&[5, 7])), None);
        let (root, order) = recurrence_growth(&big(&[30, 900, 27000])).unwrap();
        assert_eq!(order, 1);
        assert_eq!(root, 30.0);
        assert_eq!(recurrence_growth(&big(&[1, 1, 1, 1])), Some((1.0, 1)));
    }

    #[test]
    fn oscillating_dominant_root_is_refused() {
        // 2^n + (-2)^n + 3: dominant roots ±2 tie in modulus.
        let terms: Vec<BigUint> = (1..=10i64)
            .map(|n| BigUint::from((2i64.pow(n as u32) + (-2i64).pow(n as u32) + 3) as u64))
            .collect();
        assert_eq!(recurrence_growth(&terms), None);
    }

    #[test]
    fn three_distinct_roots() {
        // 5^n + 2^n + 1
        let terms: Vec<BigUint> = (1..=9u32)
            .map(|n| BigUint::from(5u64.pow(n) + 2u64.pow(n) + 1))
            .collect();
        let (root, order) = recurrence_growth(&terms).unwrap();
        assert_eq!(order, 3);
        assert!((root - 5.0).abs() < 1e-12);
    }

    #[test]
    fn slope_of_a_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [3.0, 5.0, 7.0, 9.0];
        assert!((least_squares_slope(&xs, &ys) - 2.0).abs() < 1e-15);
    }
}

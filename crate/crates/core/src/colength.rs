//! Length of `R/I` for m-primary monomial ideals: the number of standard
//! monomials of `I + J` in `k[X_1..X_d]`.
//!
//! The main route is inclusion–exclusion over the minimal generators that are
//! not pure powers; the box enumeration in [`colength_by_enumeration`] is the
//! fallback for large generator sets and the cross-check behind `--oracle`.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::monomial::{ExponentVector, MonomialIdeal, RingSpec};

/// Above this many mixed generators inclusion–exclusion is abandoned.
pub const MAX_INCLUSION_EXCLUSION_GENERATORS: usize = 20;

/// Largest box (in lattice points) the enumeration route will walk.
pub const ENUMERATION_LIMIT: u64 = 1 << 30;

/// `length_R(R / I R)` for `R = k[X]/J`.
pub fn colength(ideal: &MonomialIdeal, ring: &RingSpec) -> Result<BigUint> {
    let total = finite_length_sum(ideal, ring)?;
    let bounds = total.pure_power_bounds().expect("checked m-primary");
    let mixed: Vec<&ExponentVector> = total
        .generators()
        .iter()
        .filter(|g| g.as_pure_power().is_none())
        .collect();
    if mixed.len() > MAX_INCLUSION_EXCLUSION_GENERATORS {
        return count_by_enumeration(&total, &bounds);
    }
    Ok(inclusion_exclusion(&bounds, &mixed))
}

/// Same quantity as [`colength`], counted point by point inside the pure-power box.
pub fn colength_by_enumeration(ideal: &MonomialIdeal, ring: &RingSpec) -> Result<BigUint> {
    let total = finite_length_sum(ideal, ring)?;
    let bounds = total.pure_power_bounds().expect("checked m-primary");
    count_by_enumeration(&total, &bounds)
}

fn finite_length_sum(ideal: &MonomialIdeal, ring: &RingSpec) -> Result<MonomialIdeal> {
    let total = ideal.sum(ring.quotient())?;
    if !total.is_m_primary() {
        return Err(Error::NotFiniteLength(format!(
            "ideal {total} is not primary to the maximal ideal"
        )));
    }
    Ok(total)
}

/// Standard monomials in the box `prod [0, a_i)` minus those divisible by a
/// mixed generator. Pure-power generators sit on the box boundary and
/// contribute nothing, so only mixed generators enter the alternating sum.
fn inclusion_exclusion(bounds: &[BigUint], mixed: &[&ExponentVector]) -> BigUint {
    let volume: BigUint = bounds.iter().product();
    let mut covered = BigInt::zero();
    let mut lcm = vec![BigUint::zero(); bounds.len()];
    subsets(0, 0, bounds, mixed, &mut lcm, &mut covered);
    let volume = BigInt::from_biguint(Sign::Plus, volume);
    (volume - covered)
        .to_biguint()
        .expect("count is nonnegative")
}

fn subsets(
    start: usize,
    chosen: usize,
    bounds: &[BigUint],
    mixed: &[&ExponentVector],
    lcm: &mut Vec<BigUint>,
    covered: &mut BigInt,
) {
    for k in start..mixed.len() {
        let saved = lcm.clone();
        let mut count = BigUint::one();
        for (i, e) in mixed[k].entries().iter().enumerate() {
            if *e > lcm[i] {
                lcm[i] = e.clone();
            }
            if lcm[i] >= bounds[i] {
                count = BigUint::zero();
                break;
            }
            count *= &bounds[i] - &lcm[i];
        }
        // Supersets only enlarge the lcm, so an empty box prunes the branch.
        if !count.is_zero() {
            let count = BigInt::from_biguint(Sign::Plus, count);
            if chosen.is_multiple_of(2) {
                *covered += count;
            } else {
                *covered -= count;
            }
            subsets(k + 1, chosen + 1, bounds, mixed, lcm, covered);
        }
        *lcm = saved;
    }
}

fn count_by_enumeration(total: &MonomialIdeal, bounds: &[BigUint]) -> Result<BigUint> {
    let sides: Vec<u64> = bounds
        .iter()
        .map(|b| {
            b.to_u64()
                .ok_or_else(|| Error::Overflow(format!("box side {b}")))
        })
        .collect::<Result<_>>()?;
    let volume: BigUint = bounds.iter().product();
    if volume > BigUint::from(ENUMERATION_LIMIT) {
        return Err(Error::EnumerationTooLarge {
            volume: volume.to_string(),
            limit: ENUMERATION_LIMIT,
        });
    }
    let gens: Vec<Vec<u64>> = total
        .generators()
        .iter()
        .map(|g| g.to_u64s().expect("generators inside the box fit in u64"))
        .collect();
    let (first, rest) = sides.split_first().expect("ring has a variable");
    let count: u64 = (0..*first)
        .into_par_iter()
        .map(|x0| {
            let mut point = vec![0u64; sides.len()];
            point[0] = x0;
            let mut standard = 0u64;
            loop {
                if !gens
                    .iter()
                    .any(|g| g.iter().zip(&point).all(|(a, b)| a <= b))
                {
                    standard += 1;
                }
                if !advance(&mut point[1..], rest) {
                    break;
                }
            }
            standard
        })
        .sum();
    Ok(BigUint::from(count))
}

/// Odometer step over `prod [0, sides_i)`; false once the box is exhausted.
pub(crate) fn advance(point: &mut [u64], sides: &[u64]) -> bool {
    for (p, &s) in point.iter_mut().zip(sides) {
        *p += 1;
        if *p < s {
            return true;
        }
        *p = 0;
    }
    false
}

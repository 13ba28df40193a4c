//! Exponent vectors, monomial ideals and the monomial quotient rings
//! `k[X_1, ..., X_d] / J` that stand in for a local ring with maximal ideal
//! `m = (X_1, ..., X_d)`.
//!
//! Every ideal here is monomial, so membership and containment reduce to
//! componentwise comparisons of exponent vectors.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponent vector `v` of the monomial `X^v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<BigUint>);

impl ExponentVector {
    pub fn new(entries: Vec<BigUint>) -> Self {
        ExponentVector(entries)
    }

    pub fn from_u64s(entries: &[u64]) -> Self {
        ExponentVector(entries.iter().map(|&e| BigUint::from(e)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        ExponentVector(vec![BigUint::zero(); dim])
    }

    /// The exponent vector of `X_i^power`.
    pub fn pure(dim: usize, var: usize, power: BigUint) -> Self {
        let mut v = Self::zero(dim);
        v.0[var] = power;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Indices of the variables that occur in the monomial.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, _)| i)
    }

    /// `Some((i, a))` when the monomial is `X_i^a` with `a > 0`.
    pub fn as_pure_power(&self) -> Option<(usize, &BigUint)> {
        let mut support = self.support();
        let i = support.next()?;
        if support.next().is_some() {
            return None;
        }
        Some((i, &self.0[i]))
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// `X^self` divides `X^other`.
    pub fn divides(&self, other: &Self) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.divides_unchecked(other))
    }

    pub(crate) fn divides_unchecked(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.max(b).clone())
                .collect(),
        ))
    }

    /// Exponent vector of the product `X^self * X^other`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(ExponentVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// Entries as machine integers, or `None` if one does not fit.
    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.0.iter().map(ToPrimitive::to_u64).collect()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// A monomial ideal stored by its minimal generators in lexicographic order.
///
/// The empty generator set is the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    dim: usize,
    generators: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, keeping only minimal generators.
    ///
    /// The result does not depend on the order or multiplicity of `gens`.
    pub fn minimalize<I>(dim: usize, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = ExponentVector>,
    {
        let mut all: Vec<ExponentVector> = gens.into_iter().collect();
        if let Some(bad) = all.iter().find(|g| g.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        all.sort();
        all.dedup();
        // A proper divisor is componentwise smaller, hence lexicographically earlier.
        let mut generators: Vec<ExponentVector> = Vec::with_capacity(all.len());
        for g in all {
            if !generators.iter().any(|h| h.divides_unchecked(&g)) {
                generators.push(g);
            }
        }
        Ok(MonomialIdeal { dim, generators })
    }

    pub fn zero(dim: usize) -> Self {
        MonomialIdeal {
            dim,
            generators: Vec::new(),
        }
    }

    /// The maximal ideal `(X_1, ..., X_d)`.
    pub fn maximal(dim: usize) -> Self {
        let generators = (0..dim)
            .rev()
            .map(|i| ExponentVector::pure(dim, i, BigUint::from(1u32)))
            .collect();
        MonomialIdeal { dim, generators }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, v: &ExponentVector) -> Result<bool> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(self.generators.iter().any(|g| g.divides_unchecked(v)))
    }

    /// `self + other`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Self::minimalize(
            self.dim,
            self.generators.iter().chain(&other.generators).cloned(),
        )
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For each variable, the least `a` such that `X_i^a` is a generator.
    /// `None` if some variable has no pure power among the generators.
    pub fn pure_power_bounds(&self) -> Option<Vec<BigUint>> {
        let mut bounds: Vec<Option<BigUint>> = vec![None; self.dim];
        for g in &self.generators {
            if let Some((i, a)) = g.as_pure_power() {
                match &bounds[i] {
                    Some(b) if b <= a => {}
                    _ => bounds[i] = Some(a.clone()),
                }
            }
        }
        bounds.into_iter().collect()
    }

    /// A monomial ideal has radical `m` iff it contains a power of every variable.
    pub fn is_m_primary(&self) -> bool {
        self.dim > 0 && self.pure_power_bounds().is_some()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// The ring `k[X_1, ..., X_d] / J` localized at the origin, with `char k`
/// equal to `characteristic` (0 or a prime).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    characteristic: u64,
    dim: usize,
    quotient: MonomialIdeal,
}

impl RingSpec {
    pub fn new(characteristic: u64, dim: usize, quotient: MonomialIdeal) -> Result<Self> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::InvalidRing(format!(
                "characteristic {characteristic} is neither 0 nor prime"
            )));
        }
        if dim == 0 {
            return Err(Error::InvalidRing(
                "at least one variable is required".into(),
            ));
        }
        if quotient.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: quotient.dim(),
            });
        }
        if quotient.generators().iter().any(ExponentVector::is_zero) {
            return Err(Error::InvalidRing(
                "quotient contains the unit ideal (a generator is the constant 1)".into(),
            ));
        }
        Ok(RingSpec {
            characteristic,
            dim,
            quotient,
        })
    }

    /// The polynomial (power series) ring in `dim` variables.
    pub fn regular(characteristic: u64, dim: usize) -> Result<Self> {
        Self::new(characteristic, dim, MonomialIdeal::zero(dim))
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim
    }

    pub fn quotient(&self) -> &MonomialIdeal {
        &self.quotient
    }

    pub fn is_regular(&self) -> bool {
        self.quotient.is_zero()
    }

    pub fn maximal_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::maximal(self.dim)
    }

    pub fn krull_dimension(&self) -> usize {
        krull_dimension(&self.quotient, self.dim)
    }
}

/// Dimension of `k[X_1..X_d]/J`: the largest set `C` of variables such that
/// no generator of `J` is supported inside `C`.
pub fn krull_dimension(quotient: &MonomialIdeal, dim: usize) -> usize {
    if quotient.is_zero() {
        return dim;
    }
    let supports: Vec<Vec<usize>> = quotient
        .generators()
        .iter()
        .map(|g| g.support().collect())
        .collect();
    let mut best = 0;
    let mut chosen = vec![false; dim];
    largest_free_subset(0, 0, &mut chosen, &supports, &mut best);
    best
}

fn largest_free_subset(
    next: usize,
    size: usize,
    chosen: &mut [bool],
    supports: &[Vec<usize>],
    best: &mut usize,
) {
    if size + (chosen.len() - next) <= *best {
        return;
    }
    if next == chosen.len() {
        *best = size;
        return;
    }
    chosen[next] = true;
    let blocked = supports.iter().any(|s| s.iter().all(|&i| chosen[i]));
    if !blocked {
        largest_free_subset(next + 1, size + 1, chosen, supports, best);
    }
    chosen[next] = false;
    largest_free_subset(next + 1, size, chosen, supports, best);
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

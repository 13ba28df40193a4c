//! Koszul complexes on monomial sequences over a [`RingSpec`], their pullback
//! along monomial maps, and exact cohomology lengths.
//!
//! Cohomological degree `k = -j` holds the free module with basis `e_S`,
//! `|S| = j`, shifted to multidegree `Σ_{i∈S} deg x_i`. The differential sends
//! `e_S` to `Σ_{i∈S} (-1)^{pos(i,S)} x_i e_{S∖{i}}`, where `pos(i,S)` is the
//! index of `i` in the sorted subset. `H^0 = R/(x)` and everything else sits
//! in degrees `-m..=-1`.
//!
//! Cohomology is computed one multidegree at a time: the graded piece of each
//! term is spanned by the standard monomials (mod `J`) that fit under `v`, so
//! the differentials become small signed 0/±1 matrices.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::colength::{advance, colength};
use crate::endo::MonomialMap;
use crate::error::{Error, Result};
use crate::linalg::CoefficientField;
use crate::monomial::{ExponentVector, MonomialIdeal, RingSpec};

/// Side length beyond which the homology search gives up.
pub const DEFAULT_SEARCH_CAP: u64 = 512;

/// Longest sequence accepted (basis subsets are stored as bitmasks).
pub const MAX_SEQUENCE_LENGTH: usize = 16;

/// One nonzero entry of a differential `C^{-j} → C^{-j+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DifferentialEntry {
    /// Index of `e_S` in the basis of degree `-j`.
    pub source: usize,
    /// Index of `e_{S∖{i}}` in the basis of degree `-j+1`.
    pub target: usize,
    /// `(-1)^{pos(i,S)}`.
    pub sign: i8,
    /// The element `i`; the entry is `sign · x_i`.
    pub element: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulComplex {
    ring: RingSpec,
    sequence: Vec<ExponentVector>,
    /// `bases[j]`: the `j`-subsets of `{0..m}` as bitmasks, in lexicographic order.
    bases: Vec<Vec<u32>>,
}

impl KoszulComplex {
    /// The Koszul complex on `sequence`, which must lie in `m` and generate an
    /// m-primary ideal together with `J`.
    pub fn build(ring: &RingSpec, sequence: Vec<ExponentVector>) -> Result<Self> {
        let d = ring.dim_ambient();
        if sequence.len() > MAX_SEQUENCE_LENGTH {
            return Err(Error::InvalidMap(format!(
                "sequence of length {} exceeds the supported {MAX_SEQUENCE_LENGTH}",
                sequence.len()
            )));
        }
        for (i, x) in sequence.iter().enumerate() {
            if x.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: x.dim(),
                });
            }
            if x.is_zero() {
                return Err(Error::NotFiniteLength(format!(
                    "sequence element {} is a unit, not in the maximal ideal",
                    i + 1
                )));
            }
        }
        let generated = MonomialIdeal::minimalize(d, sequence.iter().cloned())?;
        let total = generated.sum(ring.quotient())?;
        if !total.is_m_primary() {
            return Err(Error::NotFiniteLength(format!(
                "sequence generates {total} with the quotient, which is not m-primary; \
                 the complex would not have finite-length cohomology"
            )));
        }
        let m = sequence.len();
        let mut bases: Vec<Vec<u32>> = vec![Vec::new(); m + 1];
        for mask in 0u32..(1u32 << m) {
            bases[mask.count_ones() as usize].push(mask);
        }
        for basis in &mut bases {
            basis.sort_by_key(|&mask| subset_elements(mask));
        }
        let complex = KoszulComplex {
            ring: ring.clone(),
            sequence,
            bases,
        };
        complex.verify_differentials()?;
        Ok(complex)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn sequence(&self) -> &[ExponentVector] {
        &self.sequence
    }

    /// Number of elements `m`; the complex lives in degrees `-m..=0`.
    pub fn length(&self) -> usize {
        self.sequence.len()
    }

    /// Rank of the free module in cohomological degree `k`.
    pub fn rank(&self, k: i64) -> usize {
        if k > 0 || (-k) as usize > self.length() {
            return 0;
        }
        self.bases[(-k) as usize].len()
    }

    /// Basis subsets of degree `-j`, each as the sorted list of its elements.
    pub fn basis(&self, j: usize) -> Vec<Vec<usize>> {
        self.bases[j]
            .iter()
            .map(|&mask| subset_elements(mask))
            .collect()
    }

    /// Multidegree shift `Σ_{i∈S} deg x_i` of the basis element `e_S`.
    pub fn shift(&self, subset: &[usize]) -> ExponentVector {
        let d = self.ring.dim_ambient();
        subset.iter().fold(ExponentVector::zero(d), |acc, &i| {
            acc.add(&self.sequence[i]).expect("same dimension")
        })
    }

    /// Entries of the differential from degree `-j` to `-j+1`, for `1 <= j <= m`.
    pub fn differential(&self, j: usize) -> Vec<DifferentialEntry> {
        let target_index: BTreeMap<u32, usize> = self.bases[j - 1]
            .iter()
            .enumerate()
            .map(|(idx, &mask)| (mask, idx))
            .collect();
        let mut entries = Vec::new();
        for (source, &mask) in self.bases[j].iter().enumerate() {
            for (pos, i) in subset_elements(mask).into_iter().enumerate() {
                entries.push(DifferentialEntry {
                    source,
                    target: target_index[&(mask & !(1 << i))],
                    sign: if pos % 2 == 0 { 1 } else { -1 },
                    element: i,
                });
            }
        }
        entries
    }

    /// Checks `d ∘ d = 0` symbolically over the polynomial ring.
    pub fn verify_differentials(&self) -> Result<()> {
        for j in 2..=self.length() {
            let outer = self.differential(j - 1);
            let inner = self.differential(j);
            for source in 0..self.bases[j].len() {
                let mut composite: BTreeMap<(usize, ExponentVector), i64> = BTreeMap::new();
                for a in inner.iter().filter(|e| e.source == source) {
                    for b in outer.iter().filter(|e| e.source == a.target) {
                        let monomial = self.sequence[a.element]
                            .add(&self.sequence[b.element])
                            .expect("same dimension");
                        *composite.entry((b.target, monomial)).or_insert(0) +=
                            i64::from(a.sign) * i64::from(b.sign);
                    }
                }
                if composite.values().any(|&c| c != 0) {
                    return Err(Error::NotAComplex { degree: j });
                }
            }
        }
        Ok(())
    }

    /// The inverse image along `φ`: the Koszul complex on `φ(x_1), ..., φ(x_m)`.
    pub fn pullback(&self, phi: &MonomialMap) -> Result<Self> {
        if phi.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if !phi.is_finite_length() {
            return Err(Error::NotFiniteLength(
                "pullback along a map of infinite length".into(),
            ));
        }
        let images = self
            .sequence
            .iter()
            .map(|x| phi.apply(x))
            .collect::<Result<Vec<_>>>()?;
        Self::build(&self.ring, images)
    }

    /// `length H^0 = length R/(x)R`, computed by colength.
    pub fn h0_length(&self) -> Result<BigUint> {
        let ideal =
            MonomialIdeal::minimalize(self.ring.dim_ambient(), self.sequence.iter().cloned())?;
        colength(&ideal, &self.ring)
    }

    /// The pure-power box of `(x) + J`, widened by the largest basis shift.
    /// Nonzero cohomology is searched for starting from this box.
    pub fn default_search_box(&self) -> Result<Vec<u64>> {
        let ideal =
            MonomialIdeal::minimalize(self.ring.dim_ambient(), self.sequence.iter().cloned())?
                .sum(self.ring.quotient())?;
        let bounds = ideal
            .pure_power_bounds()
            .expect("m-primary by construction");
        let full: Vec<usize> = (0..self.length()).collect();
        let widest = self.shift(&full);
        bounds
            .iter()
            .zip(widest.entries())
            .map(|(a, s)| {
                (a + s)
                    .to_u64()
                    .ok_or_else(|| Error::Overflow(format!("search side {}", a + s)))
            })
            .collect()
    }

    pub fn homology_lengths(&self) -> Result<HomologyLengths> {
        self.homology_lengths_with_cap(DEFAULT_SEARCH_CAP)
    }

    /// Sums cohomology over the default box, then over unit shells around it
    /// until two consecutive shells contribute nothing in any degree.
    pub fn homology_lengths_with_cap(&self, cap: u64) -> Result<HomologyLengths> {
        let graded = GradedPieces::new(self)?;
        let mut sides = self.default_search_box()?;
        if sides.iter().any(|&s| s > cap) {
            return Err(Error::SearchRegionExceeded { cap });
        }
        let mut totals = graded.sum_over(&sides, None);
        let mut quiet_shells = 0;
        while quiet_shells < 2 {
            let grown: Vec<u64> = sides.iter().map(|s| s + 1).collect();
            if grown.iter().any(|&s| s > cap) {
                return Err(Error::SearchRegionExceeded { cap });
            }
            let shell = graded.sum_over(&grown, Some(&sides));
            if shell.iter().all(|&h| h == 0) {
                quiet_shells += 1;
            } else {
                quiet_shells = 0;
                for (t, s) in totals.iter_mut().zip(&shell) {
                    *t += s;
                }
            }
            sides = grown;
        }
        Ok(HomologyLengths::from_homological(&totals))
    }

    /// Cohomology lengths summed over the multidegrees of `prod [0, sides_i)` only.
    pub fn homology_in_box(&self, sides: &[u64]) -> Result<HomologyLengths> {
        if sides.len() != self.ring.dim_ambient() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.dim_ambient(),
                found: sides.len(),
            });
        }
        let graded = GradedPieces::new(self)?;
        Ok(HomologyLengths::from_homological(
            &graded.sum_over(sides, None),
        ))
    }

    /// Dimension of each `H^{-j}` in the single multidegree `v`, indexed by `j`.
    pub fn homology_at(&self, v: &[u64]) -> Result<Vec<u64>> {
        Ok(GradedPieces::new(self)?.dims_at(v))
    }

    pub fn generator_profile(&self) -> Result<GeneratorProfile> {
        self.homology_lengths()?.profile()
    }
}

fn subset_elements(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// Machine-integer view of a complex used by the per-multidegree kernels.
struct GradedPieces<'a> {
    complex: &'a KoszulComplex,
    quotient: Vec<Vec<u64>>,
    /// Shift of `e_S`, indexed by the bitmask of `S`.
    shifts: Vec<Vec<u64>>,
    field: CoefficientField,
}

impl<'a> GradedPieces<'a> {
    fn new(complex: &'a KoszulComplex) -> Result<Self> {
        let to_u64 = |v: &ExponentVector| {
            v.to_u64s()
                .ok_or_else(|| Error::Overflow(format!("exponent vector {v}")))
        };
        let sequence: Vec<Vec<u64>> = complex.sequence.iter().map(to_u64).collect::<Result<_>>()?;
        let quotient = complex
            .ring
            .quotient()
            .generators()
            .iter()
            .map(to_u64)
            .collect::<Result<_>>()?;
        let d = complex.ring.dim_ambient();
        let m = complex.length();
        let shifts = (0u32..(1u32 << m))
            .map(|mask| {
                let mut s = vec![0u64; d];
                for i in subset_elements(mask) {
                    for (acc, e) in s.iter_mut().zip(&sequence[i]) {
                        *acc += e;
                    }
                }
                s
            })
            .collect();
        Ok(GradedPieces {
            complex,
            quotient,
            shifts,
            field: CoefficientField::new(complex.ring.characteristic()),
        })
    }

    /// `X^{v - shift(S)}` is a nonzero standard monomial of `R`.
    fn survives(&self, v: &[u64], mask: u32) -> bool {
        let shift = &self.shifts[mask as usize];
        if shift.iter().zip(v).any(|(s, x)| s > x) {
            return false;
        }
        !self
            .quotient
            .iter()
            .any(|g| g.iter().zip(shift).zip(v).all(|((a, s), x)| *a <= x - s))
    }

    fn dims_at(&self, v: &[u64]) -> Vec<u64> {
        let m = self.complex.length();
        let live: Vec<Vec<u32>> = self
            .complex
            .bases
            .iter()
            .map(|basis| {
                basis
                    .iter()
                    .copied()
                    .filter(|&mask| self.survives(v, mask))
                    .collect()
            })
            .collect();
        // ranks[j]: rank of the differential out of degree -j; zero for j = 0.
        let mut ranks = vec![0usize; m + 2];
        for j in 1..=m {
            if live[j].is_empty() || live[j - 1].is_empty() {
                continue;
            }
            let mut matrix = vec![vec![0i64; live[j].len()]; live[j - 1].len()];
            for (col, &mask) in live[j].iter().enumerate() {
                for (pos, i) in subset_elements(mask).into_iter().enumerate() {
                    let face = mask & !(1 << i);
                    if let Some(row) = live[j - 1].iter().position(|&t| t == face) {
                        matrix[row][col] = if pos % 2 == 0 { 1 } else { -1 };
                    }
                }
            }
            ranks[j] = self.field.rank(&matrix);
        }
        (0..=m)
            .map(|j| (live[j].len() - ranks[j] - ranks[j + 1]) as u64)
            .collect()
    }

    /// Per-degree totals over the box `sides`, skipping the points of `inner`.
    fn sum_over(&self, sides: &[u64], inner: Option<&[u64]>) -> Vec<u64> {
        let m = self.complex.length();
        let (first, rest) = sides.split_first().expect("ring has a variable");
        (0..*first)
            .into_par_iter()
            .map(|x0| {
                let mut acc = vec![0u64; m + 1];
                let mut point = vec![0u64; sides.len()];
                point[0] = x0;
                loop {
                    let skip = inner.is_some_and(|b| point.iter().zip(b).all(|(p, s)| p < s));
                    if !skip {
                        for (a, h) in acc.iter_mut().zip(self.dims_at(&point)) {
                            *a += h;
                        }
                    }
                    if !advance(&mut point[1..], rest) {
                        break;
                    }
                }
                acc
            })
            .reduce(
                || vec![0u64; m + 1],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    }
}

/// `length H^k` for every cohomological degree `k` of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyLengths {
    lengths: BTreeMap<i64, BigUint>,
}

impl HomologyLengths {
    /// From totals indexed by homological degree `j` (cohomological `-j`).
    fn from_homological(totals: &[u64]) -> Self {
        let lengths = totals
            .iter()
            .enumerate()
            .map(|(j, &h)| (-(j as i64), BigUint::from(h)))
            .collect();
        HomologyLengths { lengths }
    }

    /// `length H^k`, zero outside the complex.
    pub fn get(&self, k: i64) -> BigUint {
        self.lengths.get(&k).cloned().unwrap_or_default()
    }

    /// Degrees in ascending order with their lengths.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigUint)> {
        self.lengths.iter().map(|(k, l)| (*k, l))
    }

    pub fn profile(&self) -> Result<GeneratorProfile> {
        let max_length = self.lengths.values().max().cloned().unwrap_or_default();
        if max_length.is_zero() {
            return Err(Error::ZeroComplex);
        }
        let width = self
            .lengths
            .iter()
            .filter(|(_, l)| !l.is_zero())
            .map(|(k, _)| k.unsigned_abs())
            .max()
            .unwrap_or(0);
        Ok(GeneratorProfile { max_length, width })
    }
}

/// `B`, the largest cohomology length, and `N`, the least width with
/// `H^k = 0` for `|k| > N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorProfile {
    pub max_length: BigUint,
    pub width: u64,
}

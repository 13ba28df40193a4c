//! Local entropy sequences, limit estimates, the lower and upper bounds on the
//! complexity of `L(φ^n)^*(G)` relative to a Koszul generator `G`, closed-form
//! predictions, and the transfer of entropy along a commuting square.
//!
//! Entropies are limits; everything here is reported at finite `n` together
//! with the error envelope that applies at that `n`.

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::colength::colength;
use crate::endo::{MonomialMap, TransferSquare};
use crate::error::{Error, Result};
use crate::growth::{least_squares_slope, ln_big, recurrence_growth};
use crate::koszul::{GeneratorProfile, KoszulComplex};
use crate::monomial::{ExponentVector, MonomialIdeal, RingSpec};

/// Default agreement tolerance for two entropy estimates.
pub const TRANSFER_TOLERANCE: f64 = 1e-6;

/// Slack for comparing log-averages that are equal in exact arithmetic.
const LOG_SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyRow {
    pub n: u64,
    /// `length_R(R / φ^n(q)R)`.
    pub length: BigUint,
    pub log_length: f64,
    /// `log_length / n`.
    pub a_n: f64,
}

/// `a_n = (1/n) log length(R/φ^n(q)R)` for `n = 1..=n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropySequence {
    pub rows: Vec<EntropyRow>,
    pub ideal: MonomialIdeal,
    pub map: MonomialMap,
}

impl EntropySequence {
    pub fn lengths(&self) -> Vec<BigUint> {
        self.rows.iter().map(|r| r.length.clone()).collect()
    }
}

pub fn local_entropy_sequence(
    map: &MonomialMap,
    ideal: &MonomialIdeal,
    n_max: u64,
) -> Result<EntropySequence> {
    let ring = map.ring();
    if n_max < 1 {
        return Err(Error::TooFewRows {
            needed: 1,
            found: 0,
        });
    }
    if !map.is_finite_length() {
        return Err(Error::NotFiniteLength(
            "the map does not send the maximal ideal to an m-primary ideal".into(),
        ));
    }
    if !ideal.sum(ring.quotient())?.is_m_primary() {
        return Err(Error::NotFiniteLength(format!(
            "ideal {ideal} is not m-primary"
        )));
    }
    let mut iterates = Vec::with_capacity(n_max as usize);
    iterates.push(map.clone());
    for _ in 1..n_max {
        let next = map.compose(iterates.last().expect("nonempty"))?;
        iterates.push(next);
    }
    let rows = iterates
        .par_iter()
        .enumerate()
        .map(|(i, phi_n)| {
            let n = i as u64 + 1;
            let length = colength(&phi_n.image_ideal(ideal)?, ring)?;
            let log_length = ln_big(&length);
            Ok(EntropyRow {
                n,
                length,
                log_length,
                a_n: log_length / n as f64,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EntropySequence {
        rows,
        ideal: ideal.clone(),
        map: map.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EstimateMethod {
    /// Log of the dominant root of a linear recurrence of this order that the
    /// exact lengths satisfy.
    Recurrence { order: usize },
    /// Least-squares slope of `log length_n` over the final half of the rows.
    Slope,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitEstimate {
    /// Headline estimate of the limit of `a_n`.
    pub estimate: f64,
    pub method: EstimateMethod,
    /// Least-squares slope of `log length_n` against `n` over the final half.
    pub slope: f64,
    /// The last `a_n`.
    pub last_term: f64,
    /// `slope - last_term`.
    pub slope_minus_last: f64,
}

/// Estimates `lim a_n` from at least three consecutive rows starting at `n = 1`.
pub fn estimate_limit(seq: &EntropySequence) -> Result<LimitEstimate> {
    estimate_from_lengths(&seq.lengths())
}

/// [`estimate_limit`] on raw lengths `length_1, length_2, ...`.
///
/// When the exact integers satisfy a linear recurrence that the data
/// determine (order `L` with `2L < rows`), the estimate is the log of its
/// dominant root; that root is the limit of `length_{n+1}/length_n`.
/// Otherwise the estimate falls back to the least-squares slope, which is
/// always reported alongside.
pub fn estimate_from_lengths(lengths: &[BigUint]) -> Result<LimitEstimate> {
    if lengths.len() < 3 {
        return Err(Error::TooFewRows {
            needed: 3,
            found: lengths.len(),
        });
    }
    if lengths.iter().any(Zero::is_zero) {
        return Err(Error::NotFiniteLength(
            "a length of zero cannot be logged".into(),
        ));
    }
    let logs: Vec<f64> = lengths.iter().map(ln_big).collect();
    let ns: Vec<f64> = (1..=lengths.len()).map(|n| n as f64).collect();
    let half = lengths.len() / 2;
    let slope = least_squares_slope(&ns[half..], &logs[half..]);
    let last_term = logs[logs.len() - 1] / lengths.len() as f64;

    let recurrence = recurrence_growth(lengths).or_else(|| recurrence_growth(&lengths[half..]));
    let (estimate, method) = match recurrence {
        Some((root, order)) => (root.ln(), EstimateMethod::Recurrence { order }),
        None => (slope, EstimateMethod::Slope),
    };
    Ok(LimitEstimate {
        estimate,
        method,
        slope,
        last_term,
        slope_minus_last: slope - last_term,
    })
}

/// Length of `R/φ^n(m)R`: a composition series of that length builds
/// `L(φ^n)^*(G)` from copies of the Koszul generator on a regular system of
/// parameters, so this bounds the complexity from above for every `t`.
pub fn delta_upper(map: &MonomialMap, n: u64) -> Result<BigUint> {
    let ring = map.ring();
    if !ring.is_regular() {
        return Err(Error::NotRegular("the composition-series upper bound"));
    }
    if !map.is_finite_length() {
        return Err(Error::NotFiniteLength("map is not of finite length".into()));
    }
    colength(&map.iterate(n)?.image_ideal(&ring.maximal_ideal())?, ring)
}

/// `length H^0(L(φ^n)^* G) / (B e^{N|t|})`, a lower bound on the complexity.
pub fn delta_lower(profile: &GeneratorProfile, h0_length: &BigUint, t: f64) -> f64 {
    log_delta_lower(profile, h0_length, t).exp()
}

/// Logarithm of [`delta_lower`], which stays finite for huge lengths.
pub fn log_delta_lower(profile: &GeneratorProfile, h0_length: &BigUint, t: f64) -> f64 {
    ln_big(h0_length) - ln_big(&profile.max_length) - profile.width as f64 * t.abs()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SandwichRow {
    pub n: u64,
    /// `(1/n) log δ_lower`.
    pub lower_logavg: f64,
    /// `(1/n) log δ_upper`.
    pub upper_logavg: f64,
    /// `(log B + N|t|)/n`.
    pub gap_bound: f64,
}

impl SandwichRow {
    /// `lower <= upper` and `upper - lower <= gap_bound`, up to rounding.
    pub fn holds(&self) -> bool {
        let slack = LOG_SLACK
            * self
                .upper_logavg
                .abs()
                .max(self.lower_logavg.abs())
                .max(1.0);
        self.lower_logavg <= self.upper_logavg + slack
            && self.upper_logavg - self.lower_logavg <= self.gap_bound + slack
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SandwichReport {
    pub t: f64,
    pub rows: Vec<SandwichRow>,
    pub profile: GeneratorProfile,
    /// Estimated local entropy (from `length R/φ^n(m)R`), when `n_max >= 3`.
    pub h_loc_reference: Option<f64>,
}

impl SandwichReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(SandwichRow::holds)
    }
}

/// Lower bound only, for rings where the upper bound is not available.
#[derive(Clone, Debug, PartialEq)]
pub struct LowerBoundRow {
    pub n: u64,
    pub lower_logavg: f64,
    /// `a_n` of the local entropy sequence, which the lower bound dominates in the limit.
    pub h0_logavg: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LowerBoundReport {
    pub t: f64,
    pub rows: Vec<LowerBoundRow>,
    pub profile: GeneratorProfile,
    pub h_loc_reference: Option<f64>,
}

struct PulledBack {
    profile: GeneratorProfile,
    /// `(n, length H^0(L(φ^n)^* G))` for `n = 1..=n_max`.
    h0: Vec<(u64, BigUint)>,
    h_loc_reference: Option<f64>,
}

fn pull_back_generator(
    map: &MonomialMap,
    sequence: &[ExponentVector],
    n_max: u64,
) -> Result<PulledBack> {
    if n_max < 1 {
        return Err(Error::TooFewRows {
            needed: 1,
            found: 0,
        });
    }
    let generator = KoszulComplex::build(map.ring(), sequence.to_vec())?;
    let profile = generator.generator_profile()?;
    let h0 = (1..=n_max)
        .into_par_iter()
        .map(|n| Ok((n, generator.pullback(&map.iterate(n)?)?.h0_length()?)))
        .collect::<Result<Vec<_>>>()?;
    let h_loc_reference = if n_max >= 3 {
        let seq = local_entropy_sequence(map, &map.ring().maximal_ideal(), n_max)?;
        Some(estimate_limit(&seq)?.estimate)
    } else {
        None
    };
    Ok(PulledBack {
        profile,
        h0,
        h_loc_reference,
    })
}

/// Lower and upper bounds on `(1/n) log δ_t(G, L(φ^n)^* G)` for the Koszul
/// generator `G` on `sequence`, one report per `t`. Requires a regular ring.
pub fn sandwich(
    map: &MonomialMap,
    sequence: &[ExponentVector],
    t_values: &[f64],
    n_max: u64,
) -> Result<Vec<SandwichReport>> {
    if !map.ring().is_regular() {
        return Err(Error::NotRegular("the complexity sandwich"));
    }
    let pulled = pull_back_generator(map, sequence, n_max)?;
    let uppers = (1..=n_max)
        .into_par_iter()
        .map(|n| delta_upper(map, n))
        .collect::<Result<Vec<_>>>()?;
    let log_b = ln_big(&pulled.profile.max_length);
    let width = pulled.profile.width as f64;
    Ok(t_values
        .iter()
        .map(|&t| {
            let rows = pulled
                .h0
                .iter()
                .zip(&uppers)
                .map(|((n, h0), upper)| {
                    let nf = *n as f64;
                    SandwichRow {
                        n: *n,
                        lower_logavg: log_delta_lower(&pulled.profile, h0, t) / nf,
                        upper_logavg: ln_big(upper) / nf,
                        gap_bound: (log_b + width * t.abs()) / nf,
                    }
                })
                .collect();
            SandwichReport {
                t,
                rows,
                profile: pulled.profile.clone(),
                h_loc_reference: pulled.h_loc_reference,
            }
        })
        .collect())
}

/// The lower bound alone; valid on any ring. In the limit it gives
/// `h_loc(φ) <= h_t(Lφ^*)`.
pub fn lower_bounds(
    map: &MonomialMap,
    sequence: &[ExponentVector],
    t_values: &[f64],
    n_max: u64,
) -> Result<Vec<LowerBoundReport>> {
    let pulled = pull_back_generator(map, sequence, n_max)?;
    Ok(t_values
        .iter()
        .map(|&t| LowerBoundReport {
            t,
            rows: pulled
                .h0
                .iter()
                .map(|(n, h0)| LowerBoundRow {
                    n: *n,
                    lower_logavg: log_delta_lower(&pulled.profile, h0, t) / *n as f64,
                    h0_logavg: ln_big(h0) / *n as f64,
                })
                .collect(),
            profile: pulled.profile.clone(),
            h_loc_reference: pulled.h_loc_reference,
        })
        .collect())
}

/// `Σ log ξ_i`, the entropy of `X_i ↦ X_i^{ξ_i}` on a regular ring.
pub fn closed_form_diagonal(xi: &[BigUint]) -> Result<f64> {
    if xi.iter().any(Zero::is_zero) {
        return Err(Error::InvalidMap(
            "diagonal exponents must be positive".into(),
        ));
    }
    Ok(xi.iter().map(ln_big).sum())
}

/// `dim R · log p`, the entropy of the Frobenius endomorphism.
pub fn frobenius_prediction(ring: &RingSpec, p: u64) -> Result<f64> {
    if ring.characteristic() != p || p == 0 {
        return Err(Error::CharacteristicMismatch {
            ring: ring.characteristic(),
            requested: p,
        });
    }
    Ok(ring.krull_dimension() as f64 * (p as f64).ln())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    /// `X_i ↦ X_i^{ξ_i}` on a regular ring: `Σ log ξ_i`.
    Diagonal,
    /// One nonzero entry per row and column on a regular ring: `log |det A|`.
    MonomialMatrix,
    /// `x ↦ x^p`: `dim R · log p`, on any ring of characteristic `p`.
    Frobenius,
}

impl ClosedForm {
    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::Diagonal => "diagonal",
            ClosedForm::MonomialMatrix => "monomial-matrix",
            ClosedForm::Frobenius => "frobenius",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Prediction {
    pub kind: ClosedForm,
    pub value: f64,
}

/// The exact local entropy of `map` when it belongs to a family with a known
/// closed form. Frobenius takes precedence, then diagonal, then monomial matrix.
pub fn closed_form(map: &MonomialMap) -> Option<Prediction> {
    let ring = map.ring();
    if map.is_frobenius() {
        let value = frobenius_prediction(ring, ring.characteristic()).ok()?;
        return Some(Prediction {
            kind: ClosedForm::Frobenius,
            value,
        });
    }
    if !ring.is_regular() {
        return None;
    }
    if let Some(xi) = map.diagonal_exponents() {
        let value = closed_form_diagonal(&xi).ok()?;
        return Some(Prediction {
            kind: ClosedForm::Diagonal,
            value,
        });
    }
    let det = map.monomial_matrix_abs_det()?;
    Some(Prediction {
        kind: ClosedForm::MonomialMatrix,
        value: ln_big(&det),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum TransferConclusion {
    /// The two local entropies agree, so `h_t(Lφ^*)` is constant and equal to this value.
    Constant { value: f64 },
    /// Only `h_loc(φ) <= h_t(Lφ^*) <= h_loc(ψ)` is known.
    OneSided { lower: f64, upper: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransferReport {
    pub psi_sequence: EntropySequence,
    pub phi_sequence: EntropySequence,
    pub phi: LimitEstimate,
    pub psi: LimitEstimate,
    pub agree: bool,
    pub conclusion: TransferConclusion,
}

pub fn transfer_check(
    square: &TransferSquare,
    n_max: u64,
    tolerance: f64,
) -> Result<TransferReport> {
    if let Some(j) = square.first_mismatch() {
        return Err(Error::SquareDoesNotCommute { variable: j + 1 });
    }
    if !square.xi_is_finite_length() {
        return Err(Error::NotFiniteLength(
            "xi is not a homomorphism of finite length".into(),
        ));
    }
    let psi_seq = local_entropy_sequence(square.psi(), &square.source().maximal_ideal(), n_max)?;
    let phi_seq = local_entropy_sequence(square.phi(), &square.target().maximal_ideal(), n_max)?;
    let psi = estimate_limit(&psi_seq)?;
    let phi = estimate_limit(&phi_seq)?;
    let agree = (psi.estimate - phi.estimate).abs() <= tolerance;
    let conclusion = if agree {
        TransferConclusion::Constant {
            value: phi.estimate,
        }
    } else {
        TransferConclusion::OneSided {
            lower: phi.estimate,
            upper: psi.estimate,
        }
    };
    Ok(TransferReport {
        psi_sequence: psi_seq,
        phi_sequence: phi_seq,
        phi,
        psi,
        agree,
        conclusion,
    })
}

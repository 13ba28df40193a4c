//! Monomial endomorphisms `X_j ↦ X^{A e_j}` of a [`RingSpec`] and commuting
//! squares between two such rings.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::{ExponentVector, MonomialIdeal, RingSpec};

/// A local monomial endomorphism, stored by the columns of its exponent matrix:
/// `columns[j]` is the exponent vector of the image of `X_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialMap {
    ring: RingSpec,
    columns: Vec<ExponentVector>,
}

impl MonomialMap {
    /// Checks that the map is local (no column is zero) and well defined on the
    /// quotient (every generator of `J` is sent into `J`).
    pub fn new(ring: RingSpec, columns: Vec<ExponentVector>) -> Result<Self> {
        let d = ring.dim_ambient();
        if columns.len() != d {
            return Err(Error::InvalidMap(format!(
                "map has {} columns but the ring has {d} variables",
                columns.len()
            )));
        }
        for (j, c) in columns.iter().enumerate() {
            if c.dim() != d {
                return Err(Error::InvalidMap(format!(
                    "map column {} has {} entries, expected {d}",
                    j + 1,
                    c.dim()
                )));
            }
            if c.is_zero() {
                return Err(Error::InvalidMap(format!(
                    "map column {} is zero (not a local endomorphism)",
                    j + 1
                )));
            }
        }
        let map = MonomialMap { ring, columns };
        for g in map.ring.quotient().generators() {
            let image = map.apply_unchecked(g);
            if !map.ring.quotient().contains(&image)? {
                return Err(Error::InvalidMap(format!(
                    "map is not well defined on the quotient: generator {g} goes to {image}, \
                     which is not in the quotient ideal"
                )));
            }
        }
        Ok(map)
    }

    pub fn identity(ring: RingSpec) -> Self {
        let d = ring.dim_ambient();
        let columns = (0..d)
            .map(|j| ExponentVector::pure(d, j, BigUint::one()))
            .collect();
        MonomialMap { ring, columns }
    }

    /// `X_i ↦ X_i^{xi_i}`.
    pub fn diagonal(ring: RingSpec, xi: &[BigUint]) -> Result<Self> {
        let d = ring.dim_ambient();
        let columns = xi
            .iter()
            .enumerate()
            .map(|(j, x)| ExponentVector::pure(d, j, x.clone()));
        Self::new(ring, columns.collect())
    }

    /// The Frobenius endomorphism `x ↦ x^p`, exponent matrix `p·I`.
    pub fn frobenius(ring: RingSpec) -> Result<Self> {
        let p = ring.characteristic();
        if p == 0 {
            return Err(Error::CharacteristicMismatch {
                ring: 0,
                requested: 0,
            });
        }
        let xi = vec![BigUint::from(p); ring.dim_ambient()];
        Self::diagonal(ring, &xi)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn columns(&self) -> &[ExponentVector] {
        &self.columns
    }

    /// Entry `A[i][j]`: the exponent of `X_i` in the image of `X_j`.
    pub fn entry(&self, i: usize, j: usize) -> &BigUint {
        &self.columns[j].entries()[i]
    }

    /// `A·v`, the exponent vector of the image of `X^v`.
    pub fn apply(&self, v: &ExponentVector) -> Result<ExponentVector> {
        if v.dim() != self.ring.dim_ambient() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.dim_ambient(),
                found: v.dim(),
            });
        }
        Ok(self.apply_unchecked(v))
    }

    fn apply_unchecked(&self, v: &ExponentVector) -> ExponentVector {
        let d = self.ring.dim_ambient();
        let mut out = vec![BigUint::zero(); d];
        for (col, vj) in self.columns.iter().zip(v.entries()) {
            if vj.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(col.entries()) {
                *o += a * vj;
            }
        }
        ExponentVector::new(out)
    }

    /// `self ∘ other`, with exponent matrix `A_self · A_other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let columns = other
            .columns
            .iter()
            .map(|c| self.apply_unchecked(c))
            .collect();
        Ok(MonomialMap {
            ring: self.ring.clone(),
            columns,
        })
    }

    /// The `n`-th iterate, by binary exponentiation of the exponent matrix.
    pub fn iterate(&self, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroIterate);
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut n = n;
        loop {
            if n & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.compose(&base)?,
                });
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            base = base.compose(&base)?;
        }
        Ok(result.expect("n >= 1"))
    }

    /// The extended ideal `φ(q)R`, generated by the images of the generators of `q`.
    pub fn image_ideal(&self, q: &MonomialIdeal) -> Result<MonomialIdeal> {
        let images = q
            .generators()
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::minimalize(self.ring.dim_ambient(), images)
    }

    /// The closed fiber is zero-dimensional: `J + φ(m)` is m-primary.
    pub fn is_finite_length(&self) -> bool {
        let image = self
            .image_ideal(&self.ring.maximal_ideal())
            .expect("maximal ideal matches ring dimension");
        image
            .sum(self.ring.quotient())
            .expect("same dimension")
            .is_m_primary()
    }

    /// Exactly one positive entry in every row and every column.
    pub fn is_monomial_matrix(&self) -> bool {
        let d = self.ring.dim_ambient();
        let mut row_hits = vec![0usize; d];
        for c in &self.columns {
            let support: Vec<usize> = c.support().collect();
            if support.len() != 1 {
                return false;
            }
            row_hits[support[0]] += 1;
        }
        row_hits.iter().all(|&h| h == 1)
    }

    /// `|det A|` for a monomial matrix, the product of its nonzero entries.
    pub fn monomial_matrix_abs_det(&self) -> Option<BigUint> {
        if !self.is_monomial_matrix() {
            return None;
        }
        Some(
            self.columns
                .iter()
                .map(|c| c.as_pure_power().expect("monomial column").1.clone())
                .product(),
        )
    }

    /// The exponents `(ξ_1..ξ_d)` when the map is `X_i ↦ X_i^{ξ_i}`.
    pub fn diagonal_exponents(&self) -> Option<Vec<BigUint>> {
        self.columns
            .iter()
            .enumerate()
            .map(|(j, c)| match c.as_pure_power() {
                Some((i, a)) if i == j => Some(a.clone()),
                _ => None,
            })
            .collect()
    }

    /// The map is `x ↦ x^p` with `p` the (positive) characteristic.
    pub fn is_frobenius(&self) -> bool {
        let p = self.ring.characteristic();
        p != 0
            && self
                .diagonal_exponents()
                .is_some_and(|xi| xi.iter().all(|x| *x == BigUint::from(p)))
    }
}

/// A square `ξ∘ψ = φ∘ξ` with `ψ` on a regular ring `S`, `φ` on `R`, and
/// `ξ: S → R` given by the monomial images of the variables of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferSquare {
    source: RingSpec,
    target: RingSpec,
    xi_images: Vec<ExponentVector>,
    psi: MonomialMap,
    phi: MonomialMap,
}

impl TransferSquare {
    pub fn new(xi_images: Vec<ExponentVector>, psi: MonomialMap, phi: MonomialMap) -> Result<Self> {
        let source = psi.ring().clone();
        let target = phi.ring().clone();
        if !source.is_regular() {
            return Err(Error::InvalidSquare("source ring must be regular".into()));
        }
        if source.characteristic() != target.characteristic() {
            return Err(Error::InvalidSquare(format!(
                "source characteristic {} differs from target characteristic {}",
                source.characteristic(),
                target.characteristic()
            )));
        }
        if xi_images.len() != source.dim_ambient() {
            return Err(Error::InvalidSquare(format!(
                "xi needs {} images, found {}",
                source.dim_ambient(),
                xi_images.len()
            )));
        }
        for (j, x) in xi_images.iter().enumerate() {
            if x.dim() != target.dim_ambient() {
                return Err(Error::InvalidSquare(format!(
                    "xi image {} has {} entries, expected {}",
                    j + 1,
                    x.dim(),
                    target.dim_ambient()
                )));
            }
            if x.is_zero() {
                return Err(Error::InvalidSquare(format!(
                    "xi image {} is a unit",
                    j + 1
                )));
            }
        }
        Ok(TransferSquare {
            source,
            target,
            xi_images,
            psi,
            phi,
        })
    }

    /// `ξ` has finite length: `J_R + (ξ(X_1), ..., ξ(X_e))` is m-primary.
    pub fn xi_is_finite_length(&self) -> bool {
        MonomialIdeal::minimalize(self.target.dim_ambient(), self.xi_images.iter().cloned())
            .and_then(|xi| xi.sum(self.target.quotient()))
            .is_ok_and(|sum| sum.is_m_primary())
    }

    pub fn source(&self) -> &RingSpec {
        &self.source
    }

    pub fn target(&self) -> &RingSpec {
        &self.target
    }

    pub fn xi_images(&self) -> &[ExponentVector] {
        &self.xi_images
    }

    pub fn psi(&self) -> &MonomialMap {
        &self.psi
    }

    pub fn phi(&self) -> &MonomialMap {
        &self.phi
    }

    /// Exponent of `ξ(X^v)` in the target.
    fn xi_apply(&self, v: &ExponentVector) -> ExponentVector {
        let mut out = vec![BigUint::zero(); self.target.dim_ambient()];
        for (img, vj) in self.xi_images.iter().zip(v.entries()) {
            for (o, a) in out.iter_mut().zip(img.entries()) {
                *o += a * vj;
            }
        }
        ExponentVector::new(out)
    }

    /// The first source variable on which `ξ∘ψ` and `φ∘ξ` differ, if any.
    pub fn first_mismatch(&self) -> Option<usize> {
        (0..self.source.dim_ambient()).find(|&j| {
            let left = self.xi_apply(&self.psi.columns()[j]);
            let right = self.phi.apply_unchecked(&self.xi_images[j]);
            left != right
        })
    }

    pub fn check_square(&self) -> bool {
        self.first_mismatch().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    fn ev(e: &[u64]) -> ExponentVector {
        ExponentVector::from_u64s(e)
    }

    fn map(ring: &RingSpec, cols: &[&[u64]]) -> MonomialMap {
        MonomialMap::new(ring.clone(), cols.iter().map(|c| ev(c)).collect()).unwrap()
    }

    fn swap32(ring: &RingSpec) -> MonomialMap {
        // X ↦ Y^2, Y ↦ X^3: matrix [[0,3],[2,0]].
        map(ring, &[&[0, 2], &[3, 0]])
    }

    #[test]
    fn apply_examples() {
        let r = RingSpec::regular(0, 2).unwrap();
        let d = MonomialMap::diagonal(r.clone(), &big(&[2, 3])).unwrap();
        assert_eq!(d.apply(&ev(&[1, 1])).unwrap(), ev(&[2, 3]));
        assert_eq!(
            MonomialMap::identity(r.clone())
                .apply(&ev(&[4, 7]))
                .unwrap(),
            ev(&[4, 7])
        );
        assert_eq!(swap32(&r).apply(&ev(&[1, 0])).unwrap(), ev(&[0, 2]));
        assert_eq!(*swap32(&r).entry(0, 1), BigUint::from(3u32));
        assert!(d.apply(&ev(&[1])).is_err());
    }

    #[test]
    fn compose_and_iterate_examples() {
        let r = RingSpec::regular(0, 2).unwrap();
        let d = MonomialMap::diagonal(r.clone(), &big(&[2, 3])).unwrap();
        let d2 = MonomialMap::diagonal(r.clone(), &big(&[4, 9])).unwrap();
        assert_eq!(d.compose(&d).unwrap(), d2);
        assert_eq!(d.compose(&MonomialMap::identity(r.clone())).unwrap(), d);
        let six = MonomialMap::diagonal(r.clone(), &big(&[6, 6])).unwrap();
        assert_eq!(swap32(&r).compose(&swap32(&r)).unwrap(), six);
        assert_eq!(swap32(&r).iterate(2).unwrap(), six);
        assert_eq!(
            d.iterate(5).unwrap(),
            MonomialMap::diagonal(r.clone(), &big(&[32, 243])).unwrap()
        );
        let frob = MonomialMap::frobenius(RingSpec::regular(2, 2).unwrap()).unwrap();
        assert_eq!(
            frob.iterate(3).unwrap().diagonal_exponents(),
            Some(big(&[8, 8]))
        );
        assert_eq!(d.iterate(0), Err(Error::ZeroIterate));
        let other = MonomialMap::identity(RingSpec::regular(3, 2).unwrap());
        assert_eq!(d.compose(&other), Err(Error::RingMismatch));
    }

    #[test]
    fn image_ideal_examples() {
        let r = RingSpec::regular(0, 3).unwrap();
        let d = MonomialMap::diagonal(r.clone(), &big(&[2, 3, 5])).unwrap();
        let expected =
            MonomialIdeal::minimalize(3, vec![ev(&[2, 0, 0]), ev(&[0, 3, 0]), ev(&[0, 0, 5])])
                .unwrap();
        assert_eq!(d.image_ideal(&r.maximal_ideal()).unwrap(), expected);
        let q = MonomialIdeal::minimalize(3, vec![ev(&[1, 1, 0]), ev(&[0, 0, 2])]).unwrap();
        assert_eq!(MonomialMap::identity(r).image_ideal(&q).unwrap(), q);
        let r2 = RingSpec::regular(0, 2).unwrap();
        let expected = MonomialIdeal::minimalize(2, vec![ev(&[0, 2]), ev(&[3, 0])]).unwrap();
        assert_eq!(
            swap32(&r2).image_ideal(&r2.maximal_ideal()).unwrap(),
            expected
        );
    }

    #[test]
    fn finite_length_examples() {
        let r = RingSpec::regular(0, 2).unwrap();
        assert!(!map(&r, &[&[1, 1], &[1, 1]]).is_finite_length());
        assert!(MonomialMap::diagonal(r.clone(), &big(&[2, 3]))
            .unwrap()
            .is_finite_length());
        let j = MonomialIdeal::minimalize(2, vec![ev(&[1, 1])]).unwrap();
        let xy = RingSpec::new(3, 2, j).unwrap();
        assert!(MonomialMap::frobenius(xy).unwrap().is_finite_length());
    }

    #[test]
    fn construction_rejects_bad_maps() {
        let r = RingSpec::regular(0, 2).unwrap();
        let err = MonomialMap::new(r.clone(), vec![ev(&[1, 0]), ev(&[0, 0])]).unwrap_err();
        assert_eq!(
            err.to_string(),
            "map column 2 is zero (not a local endomorphism)"
        );
        assert!(MonomialMap::new(r.clone(), vec![ev(&[1, 0])]).is_err());
        // On k[X,Y]/(X), Y ↦ ... fine, but X ↦ Y is not well defined.
        let j = MonomialIdeal::minimalize(2, vec![ev(&[1, 0])]).unwrap();
        let rx = RingSpec::new(0, 2, j).unwrap();
        assert!(MonomialMap::new(rx.clone(), vec![ev(&[0, 1]), ev(&[0, 1])]).is_err());
        assert!(MonomialMap::new(rx, vec![ev(&[2, 0]), ev(&[0, 1])]).is_ok());
        assert!(MonomialMap::frobenius(r).is_err());
    }

    #[test]
    fn classification_helpers() {
        let r = RingSpec::regular(0, 2).unwrap();
        assert!(swap32(&r).is_monomial_matrix());
        assert_eq!(
            swap32(&r).monomial_matrix_abs_det(),
            Some(BigUint::from(6u32))
        );
        assert_eq!(swap32(&r).diagonal_exponents(), None);
        assert!(!map(&r, &[&[1, 1], &[0, 1]]).is_monomial_matrix());
        assert!(!map(&r, &[&[2, 0], &[3, 0]]).is_monomial_matrix());
        let f = MonomialMap::frobenius(RingSpec::regular(5, 3).unwrap()).unwrap();
        assert!(f.is_frobenius());
        assert!(!MonomialMap::identity(RingSpec::regular(5, 3).unwrap()).is_frobenius());
    }

    #[test]
    fn square_examples() {
        let r = RingSpec::regular(0, 2).unwrap();
        let phi = MonomialMap::diagonal(r.clone(), &big(&[2, 3])).unwrap();
        let same =
            TransferSquare::new(vec![ev(&[1, 0]), ev(&[0, 1])], phi.clone(), phi.clone()).unwrap();
        assert!(same.check_square());

        // S = k[Y] → k[X_1, X_2], Y ↦ X_2, with ψ(Y) = Y^3 and φ = diag(2, 3).
        let s = RingSpec::regular(0, 1).unwrap();
        let psi = MonomialMap::diagonal(s.clone(), &big(&[3])).unwrap();
        let sq = TransferSquare::new(vec![ev(&[0, 1])], psi.clone(), phi.clone()).unwrap();
        assert!(sq.check_square());
        assert!(!sq.xi_is_finite_length());
        let bent = MonomialMap::diagonal(r.clone(), &big(&[2, 4])).unwrap();
        let sq = TransferSquare::new(vec![ev(&[0, 1])], psi.clone(), bent).unwrap();
        assert!(!sq.check_square());

        // Y ↦ X_1 into k[X_1, X_2]/(X_1 X_2).
        let j = MonomialIdeal::minimalize(2, vec![ev(&[1, 1])]).unwrap();
        let xy = RingSpec::new(0, 2, j).unwrap();
        let phi_xy = MonomialMap::diagonal(xy.clone(), &big(&[3, 3])).unwrap();
        let sq = TransferSquare::new(vec![ev(&[1, 0])], psi.clone(), phi_xy).unwrap();
        assert!(sq.check_square());
        assert!(!sq.xi_is_finite_length());
        let bent = MonomialMap::diagonal(xy, &big(&[4, 3])).unwrap();
        let sq = TransferSquare::new(vec![ev(&[1, 0])], psi, bent).unwrap();
        assert_eq!(sq.first_mismatch(), Some(0));
    }
}

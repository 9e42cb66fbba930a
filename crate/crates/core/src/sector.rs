//! Sector labels, commutator matrices and their Pfaffians.
//!
//! Phase-space variables are ordered `(X, Y, Pi_x, Pi_y)` for NCQM
//! quadruples and `(x, y, p_x, p_y)` for CCR quadruples. A commutator matrix
//! `Omega` encodes `[eta_a, eta_b] = i Omega_ab`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{serde_rational, Rational};

/// The physical triple `(hbar, theta, b_in)` labelling an irreducible sector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SectorLabel {
    #[serde(with = "serde_rational")]
    pub hbar: Rational,
    #[serde(with = "serde_rational")]
    pub theta: Rational,
    #[serde(with = "serde_rational")]
    pub b_in: Rational,
}

impl SectorLabel {
    pub fn new(hbar: Rational, theta: Rational, b_in: Rational) -> Self {
        SectorLabel { hbar, theta, b_in }
    }

    /// `kappa = hbar - theta * b_in`.
    pub fn kappa(&self) -> Rational {
        &self.hbar - &self.theta * &self.b_in
    }

    /// `hbar != 0` and `kappa != 0`.
    pub fn is_regular(&self) -> bool {
        !self.hbar.is_zero() && !self.kappa().is_zero()
    }

    /// The ordinary-QM label `(hbar, 0, 0)` with the same `hbar`.
    pub fn quotient_sector(&self) -> SectorLabel {
        SectorLabel::new(self.hbar.clone(), Rational::zero(), Rational::zero())
    }

    pub fn is_quotient_sector(&self) -> bool {
        !self.hbar.is_zero() && self.theta.is_zero() && self.b_in.is_zero()
    }
}

/// Scalars `(alpha1, alpha2, alpha3)` by which `Z1, Z2, Z3` act.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CentralCharacterVector {
    #[serde(with = "serde_rational")]
    pub alpha1: Rational,
    #[serde(with = "serde_rational")]
    pub alpha2: Rational,
    #[serde(with = "serde_rational")]
    pub alpha3: Rational,
}

/// An exactly antisymmetric, even-dimensional commutator matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CommutatorMatrix(Matrix);

impl CommutatorMatrix {
    pub fn new(entries: Matrix) -> Result<Self> {
        if entries.dim() == 0 || !entries.dim().is_multiple_of(2) {
            return Err(Error::UnsupportedDimension(entries.dim()));
        }
        if !entries.is_antisymmetric() {
            return Err(Error::NotAntisymmetric);
        }
        Ok(CommutatorMatrix(entries))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn entries(&self) -> &Matrix {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.0[(i, j)]
    }

    /// Symplectic pairing `u^T Omega v`.
    pub fn pairing(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, ui) in u.iter().enumerate().take(self.dim()) {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate().take(self.dim()) {
                let w = &self.0[(i, j)];
                if !vj.is_zero() && !w.is_zero() {
                    acc += ui * w * vj;
                }
            }
        }
        acc
    }
}

impl<'de> Deserialize<'de> for CommutatorMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = Matrix::deserialize(d)?;
        CommutatorMatrix::new(m).map_err(serde::de::Error::custom)
    }
}

/// An invertible linear recombination of phase-space variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct RealizationMatrix(Matrix);

impl RealizationMatrix {
    pub fn new(entries: Matrix) -> Result<Self> {
        if entries.dim() == 0 || !entries.dim().is_multiple_of(2) {
            return Err(Error::UnsupportedDimension(entries.dim()));
        }
        if entries.determinant().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(RealizationMatrix(entries))
    }

    pub fn identity(dim: usize) -> Self {
        RealizationMatrix(Matrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn entries(&self) -> &Matrix {
        &self.0
    }

    pub fn determinant(&self) -> Rational {
        self.0.determinant()
    }

    pub fn inverse(&self) -> RealizationMatrix {
        RealizationMatrix(self.0.inverse().expect("realization matrices are invertible"))
    }

    pub fn compose(&self, rhs: &RealizationMatrix) -> Result<RealizationMatrix> {
        Ok(RealizationMatrix(self.0.checked_mul(&rhs.0)?))
    }
}

impl<'de> Deserialize<'de> for RealizationMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = Matrix::deserialize(d)?;
        RealizationMatrix::new(m).map_err(serde::de::Error::custom)
    }
}

/// Commutator matrix of an NCQM quadruple in the basis `(X, Y, Pi_x, Pi_y)`.
pub fn omega_nc(label: &SectorLabel) -> CommutatorMatrix {
    let mut m = Matrix::zeros(4);
    let hb = &label.hbar * &label.b_in;
    let mut set = |i: usize, j: usize, v: Rational| {
        m[(j, i)] = -v.clone();
        m[(i, j)] = v;
    };
    set(0, 1, label.theta.clone());
    set(0, 2, label.hbar.clone());
    set(1, 3, label.hbar.clone());
    set(2, 3, hb);
    CommutatorMatrix(m)
}

/// `hbar * J` on `2 * degrees` variables ordered positions first, then momenta.
pub fn omega_ccr(hbar: &Rational, degrees: usize) -> CommutatorMatrix {
    let n = 2 * degrees;
    let mut m = Matrix::zeros(n);
    for k in 0..degrees {
        m[(k, k + degrees)] = hbar.clone();
        m[(k + degrees, k)] = -hbar.clone();
    }
    CommutatorMatrix(m)
}

/// Pfaffian by cofactor expansion along the first row; dims 2 through 8.
pub fn pfaffian(omega: &CommutatorMatrix) -> Result<Rational> {
    let n = omega.dim();
    if n > 8 {
        return Err(Error::UnsupportedDimension(n));
    }
    let indices: Vec<usize> = (0..n).collect();
    Ok(pfaffian_on(omega.entries(), &indices))
}

fn pfaffian_on(m: &Matrix, idx: &[usize]) -> Rational {
    if idx.is_empty() {
        return Rational::one();
    }
    let first = idx[0];
    let mut acc = Rational::zero();
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let a = &m[(first, j)];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != 0 && p != pos)
            .map(|(_, &k)| k)
            .collect();
        let term = a * pfaffian_on(m, &rest);
        // pos is 1-based within the remaining list: sign (-1)^(pos+1)
        if pos % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `S Omega S^T`.
pub fn push_commutators(s: &RealizationMatrix, omega: &CommutatorMatrix) -> Result<CommutatorMatrix> {
    if s.dim() != omega.dim() {
        return Err(Error::DimensionMismatch {
            expected: omega.dim(),
            found: s.dim(),
        });
    }
    let pushed = &(s.entries() * omega.entries()) * &s.entries().transpose();
    debug_assert!(pushed.is_antisymmetric());
    Ok(CommutatorMatrix(pushed))
}

/// `(alpha1, alpha2, alpha3) = (hbar, theta, hbar * b_in)`.
pub fn central_character(label: &SectorLabel) -> CentralCharacterVector {
    CentralCharacterVector {
        alpha1: label.hbar.clone(),
        alpha2: label.theta.clone(),
        alpha3: &label.hbar * &label.b_in,
    }
}

/// Equal commutator matrices are necessary for a componentwise unitary
/// conjugation between two quadruples.
pub fn conjugation_compatible(a: &CommutatorMatrix, b: &CommutatorMatrix) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(a == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn label(h: Rational, t: Rational, b: Rational) -> SectorLabel {
        SectorLabel::new(h, t, b)
    }

    fn reference() -> SectorLabel {
        label(int(1), rat(1, 2), rat(1, 3))
    }

    #[test]
    fn omega_nc_examples() {
        let pure = omega_nc(&label(int(1), int(0), int(0)));
        assert_eq!(pure, omega_ccr(&int(1), 2));

        let om = omega_nc(&reference());
        assert_eq!(om.entries().row(0), &[int(0), rat(1, 2), int(1), int(0)]);
        assert_eq!(om.get(2, 3), &rat(1, 3));
        assert_eq!(om.get(3, 2), &rat(-1, 3));

        let om = omega_nc(&label(int(0), int(1), int(1)));
        assert_eq!(om.get(0, 1), &int(1));
        assert_eq!(om.get(2, 3), &int(0));
        assert_eq!(om.get(0, 2), &int(0));
        assert_eq!(om.get(1, 3), &int(0));
    }

    #[test]
    fn omega_ccr_examples() {
        let j = omega_ccr(&int(1), 2);
        assert_eq!(j.get(0, 2), &int(1));
        assert_eq!(j.get(1, 3), &int(1));
        assert_eq!(omega_ccr(&rat(1, 2), 2).entries(), &j.entries().scale(&rat(1, 2)));
        let one = omega_ccr(&int(1), 1);
        assert_eq!(one.entries().rows(), vec![vec![int(0), int(1)], vec![int(-1), int(0)]]);
    }

    #[test]
    fn pfaffian_examples() {
        assert_eq!(pfaffian(&omega_nc(&reference())).unwrap(), rat(-5, 6));
        // positions-then-momenta ordering: Pf(J) = -Omega_13 Omega_24 = -1
        assert_eq!(pfaffian(&omega_ccr(&int(1), 2)).unwrap(), int(-1));
        assert_eq!(pfaffian(&omega_nc(&label(int(1), int(1), int(1)))).unwrap(), int(0));
        assert_eq!(
            pfaffian(&omega_ccr(&int(1), 5)),
            Err(Error::UnsupportedDimension(10))
        );
    }

    #[test]
    fn pfaffian_of_ccr_is_signed_hbar_power() {
        for d in 1..=4 {
            let pf = pfaffian(&omega_ccr(&rat(3, 2), d)).unwrap();
            let sign = if (d * (d - 1) / 2) % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(pf, sign * num_traits::pow(rat(3, 2), d));
        }
    }

    #[test]
    fn push_examples() {
        let om = omega_nc(&reference());
        assert_eq!(push_commutators(&RealizationMatrix::identity(4), &om).unwrap(), om);

        let two = RealizationMatrix::new(Matrix::diagonal(&[int(2), int(2), int(2), int(2)])).unwrap();
        let pushed = push_commutators(&two, &omega_ccr(&int(1), 2)).unwrap();
        assert_eq!(pushed, omega_ccr(&int(4), 2));

        assert!(matches!(
            push_commutators(&RealizationMatrix::identity(2), &om),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn central_character_examples() {
        let c = central_character(&reference());
        assert_eq!((c.alpha1, c.alpha2, c.alpha3), (int(1), rat(1, 2), rat(1, 3)));
        let c = central_character(&label(int(1), int(0), int(0)));
        assert_eq!((c.alpha1, c.alpha2, c.alpha3), (int(1), int(0), int(0)));
        let c = central_character(&label(int(2), int(1), rat(1, 4)));
        assert_eq!((c.alpha1, c.alpha2, c.alpha3), (int(2), int(1), rat(1, 2)));
    }

    #[test]
    fn conjugation_compatibility_examples() {
        let nc = omega_nc(&reference());
        let ccr = omega_ccr(&int(1), 2);
        assert!(conjugation_compatible(&nc, &nc).unwrap());
        assert!(!conjugation_compatible(&nc, &ccr).unwrap());
        assert!(conjugation_compatible(&ccr, &ccr).unwrap());
        assert!(conjugation_compatible(&ccr, &omega_ccr(&int(1), 1)).is_err());
    }

    #[test]
    fn constructors_validate() {
        let not_anti = Matrix::identity(2);
        assert_eq!(CommutatorMatrix::new(not_anti), Err(Error::NotAntisymmetric));
        assert_eq!(
            CommutatorMatrix::new(Matrix::zeros(3)),
            Err(Error::UnsupportedDimension(3))
        );
        assert_eq!(RealizationMatrix::new(Matrix::zeros(2)), Err(Error::SingularMatrix));
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
    }

    fn realization4() -> impl Strategy<Value = RealizationMatrix> {
        proptest::collection::vec(small(), 16).prop_filter_map("singular", |v| {
            let rows = v.chunks(4).map(|c| c.to_vec()).collect();
            RealizationMatrix::new(Matrix::from_rows(rows).unwrap()).ok()
        })
    }

    proptest! {
        #[test]
        fn pfaffian_formula(h in small(), t in small(), b in small()) {
            let l = label(h.clone(), t.clone(), b.clone());
            let expected = -h.clone() * (h - t * b);
            prop_assert_eq!(pfaffian(&omega_nc(&l)).unwrap(), expected);
        }

        #[test]
        fn pfaffian_squared_is_determinant(h in small(), t in small(), b in small()) {
            let om = omega_nc(&label(h, t, b));
            let pf = pfaffian(&om).unwrap();
            prop_assert_eq!(&pf * &pf, om.entries().determinant());
        }

        #[test]
        fn push_is_functorial(s1 in realization4(), s2 in realization4(), h in small(), t in small(), b in small()) {
            let om = omega_nc(&label(h, t, b));
            let composed = push_commutators(&s1.compose(&s2).unwrap(), &om).unwrap();
            let nested = push_commutators(&s1, &push_commutators(&s2, &om).unwrap()).unwrap();
            prop_assert!(composed.entries().is_antisymmetric());
            prop_assert_eq!(composed, nested);
        }

        #[test]
        fn pfaffian_scales_by_determinant(s in realization4(), h in small(), t in small(), b in small()) {
            let om = omega_nc(&label(h, t, b));
            let pushed = push_commutators(&s, &om).unwrap();
            prop_assert_eq!(pfaffian(&pushed).unwrap(), s.determinant() * pfaffian(&om).unwrap());
        }

        #[test]
        fn central_character_injective_for_nonzero_hbar(
            a in (small(), small(), small()), b in (small(), small(), small())
        ) {
            prop_assume!(!a.0.is_zero() && !b.0.is_zero());
            let la = label(a.0, a.1, a.2);
            let lb = label(b.0, b.1, b.2);
            prop_assert_eq!(central_character(&la) == central_character(&lb), la == lb);
        }

        #[test]
        fn quotient_sector_is_ccr(h in small()) {
            prop_assert_eq!(omega_nc(&label(h.clone(), int(0), int(0))), omega_ccr(&h, 2));
        }
    }
}

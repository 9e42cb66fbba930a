//! The generalized Bopp-shift family `S(r, s)`.
//!
//! `S(r, s)` expresses an NCQM quadruple `eta_{r,s} = S(r,s) xi` in terms of a
//! CCR quadruple `xi = (x, y, p_x, p_y)`. Every admissible member realizes the
//! same sector label; the family differs only in the concrete realization.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{serde_rational, Rational};
use crate::sector::{omega_ccr, omega_nc, push_commutators, RealizationMatrix, SectorLabel};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoppParams {
    #[serde(with = "serde_rational")]
    pub r: Rational,
    #[serde(with = "serde_rational")]
    pub s: Rational,
}

impl BoppParams {
    pub fn new(r: Rational, s: Rational) -> Self {
        BoppParams { r, s }
    }

    /// `hbar - r * theta * b_in != 0`.
    pub fn is_admissible(&self, label: &SectorLabel) -> bool {
        !admissibility_gap(label, &self.r).is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoppRealization {
    pub label: SectorLabel,
    #[serde(with = "serde_rational")]
    pub r: Rational,
    #[serde(with = "serde_rational")]
    pub s: Rational,
    pub matrix: RealizationMatrix,
}

impl BoppRealization {
    pub fn params(&self) -> BoppParams {
        BoppParams::new(self.r.clone(), self.s.clone())
    }
}

fn admissibility_gap(label: &SectorLabel, r: &Rational) -> Rational {
    &label.hbar - r * &label.theta * &label.b_in
}

/// `a = (1 - r) hbar b_in / (hbar - r theta b_in)`.
pub fn a_coefficient(label: &SectorLabel, r: &Rational) -> Result<Rational> {
    let gap = admissibility_gap(label, r);
    if gap.is_zero() {
        return Err(Error::InadmissibleParams);
    }
    Ok((Rational::one() - r) * &label.hbar * &label.b_in / gap)
}

pub fn bopp_matrix(label: &SectorLabel, params: &BoppParams) -> Result<BoppRealization> {
    if label.hbar.is_zero() {
        return Err(Error::ZeroHbar);
    }
    if label.kappa().is_zero() {
        return Err(Error::DegenerateLabel);
    }
    let a = a_coefficient(label, &params.r)?;
    let (r, s) = (&params.r, &params.s);
    let one = Rational::one();
    let t_over_h = &label.theta / &label.hbar;
    let b = &label.b_in;
    let zero = Rational::zero;

    let rows = vec![
        vec![one.clone(), zero(), zero(), -(s * &t_over_h)],
        vec![zero(), one.clone(), (&one - s) * &t_over_h, zero()],
        vec![zero(), a.clone(), &one - &a * s * &t_over_h, zero()],
        vec![-(r * b), zero(), zero(), &one - r * b * (&one - s) * &t_over_h],
    ];
    // det S = kappa / hbar, nonzero past the guards above
    let matrix = RealizationMatrix::new(Matrix::from_rows(rows)?)?;
    Ok(BoppRealization {
        label: label.clone(),
        r: r.clone(),
        s: s.clone(),
        matrix,
    })
}

/// True iff the realization pushes `hbar J` onto `Omega_NC(label)` exactly.
pub fn verify_sector_invariance(realization: &BoppRealization) -> bool {
    if realization.matrix.dim() != 4 {
        return false;
    }
    let ccr = omega_ccr(&realization.label.hbar, 2);
    push_commutators(&realization.matrix, &ccr)
        .map(|pushed| pushed == omega_nc(&realization.label))
        .unwrap_or(false)
}

/// `G = S(r', s') S(r, s)^{-1}`, relating two realizations of one sector:
/// `eta_{r',s'} = G eta_{r,s}`.
pub fn realization_transfer(from: &BoppRealization, to: &BoppParams) -> Result<RealizationMatrix> {
    let from = bopp_matrix(&from.label, &from.params())?;
    let target = bopp_matrix(&from.label, to)?;
    target.matrix.compose(&from.matrix.inverse())
}

/// Like [`realization_transfer`] for two built realizations, which must share
/// a label.
pub fn transfer_between(from: &BoppRealization, to: &BoppRealization) -> Result<RealizationMatrix> {
    if from.label != to.label {
        return Err(Error::LabelMismatch);
    }
    realization_transfer(from, &to.params())
}

//! Darboux canonicalization of constant commutator matrices.
//!
//! A Darboux map is an invertible `T` with `T Omega T^T = hbar J`, so that
//! `zeta = T eta` satisfies the canonical commutation relations. It is an
//! auxiliary computational frame: the sector data of `Omega` moves into the
//! coefficients of `T`, and the sector label itself is unchanged.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{decide_equivalence, EquivalenceStatus};
use crate::matrix::Matrix;
use crate::rational::{serde_rational, Rational};
use crate::sector::{
    conjugation_compatible, omega_ccr, omega_nc, pfaffian, push_commutators, CommutatorMatrix,
    RealizationMatrix, SectorLabel,
};

/// Absolute tolerance on the `+-i omega` pairing of spectra.
pub const SPECTRUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DarbouxMap {
    pub source: CommutatorMatrix,
    #[serde(with = "serde_rational")]
    pub hbar: Rational,
    pub matrix: RealizationMatrix,
}

/// Symmetric coefficient matrix `M` of `H = 1/2 eta^T M eta`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct QuadraticForm(Matrix);

impl QuadraticForm {
    pub fn new(entries: Matrix) -> Result<Self> {
        if entries.dim() == 0 || !entries.dim().is_multiple_of(2) {
            return Err(Error::UnsupportedDimension(entries.dim()));
        }
        if !entries.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(QuadraticForm(entries))
    }

    pub fn identity(dim: usize) -> Self {
        QuadraticForm(Matrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn entries(&self) -> &Matrix {
        &self.0
    }

    /// Sylvester's criterion, evaluated exactly.
    pub fn is_positive_definite(&self) -> bool {
        (1..=self.dim()).all(|k| self.0.leading_minor(k) > Rational::zero())
    }
}

impl<'de> Deserialize<'de> for QuadraticForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = Matrix::deserialize(d)?;
        QuadraticForm::new(m).map_err(serde::de::Error::custom)
    }
}

/// Normal-mode frequencies, ascending, one per degree of freedom.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub frequencies: Vec<f64>,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionVerdict {
    pub darboux_exists: bool,
    pub conjugation_possible: bool,
    pub sectors_equivalent: bool,
    pub narrative: String,
}

/// Symplectic Gram–Schmidt over the rationals.
///
/// Starting from the standard basis, repeatedly take the lowest-index unpaired
/// vector `u` and the lowest-index `v` with `Omega(u, v) != 0`, rescale `v` so
/// that `Omega(u, v) = hbar`, and project the rest off `span{u, v}`. The `u`s
/// become position rows of `T` and the `v`s momentum rows, so an input already
/// equal to `hbar J` yields the identity.
pub fn canonicalize(omega: &CommutatorMatrix, hbar: &Rational) -> Result<DarbouxMap> {
    if hbar.is_zero() {
        return Err(Error::ZeroHbar);
    }
    if pfaffian(omega)?.is_zero() {
        return Err(Error::DegenerateOmega);
    }
    let n = omega.dim();
    let mut pending: Vec<Vec<Rational>> = Matrix::identity(n).rows();
    let mut positions = Vec::with_capacity(n / 2);
    let mut momenta = Vec::with_capacity(n / 2);

    while !pending.is_empty() {
        let u = pending.remove(0);
        let idx = pending
            .iter()
            .position(|v| !omega.pairing(&u, v).is_zero())
            .ok_or(Error::DegenerateOmega)?;
        let v = pending.remove(idx);
        let scale = hbar / omega.pairing(&u, &v);
        let v: Vec<Rational> = v.iter().map(|x| x * &scale).collect();

        for w in pending.iter_mut() {
            let beta = omega.pairing(w, &u) / hbar;
            let alpha = -(omega.pairing(w, &v) / hbar);
            for k in 0..n {
                let shift = &alpha * &u[k] + &beta * &v[k];
                w[k] += shift;
            }
        }
        positions.push(u);
        momenta.push(v);
    }

    positions.extend(momenta);
    let matrix = RealizationMatrix::new(Matrix::from_rows(positions)?)?;
    debug_assert!(is_darboux_map(&matrix, omega, hbar).unwrap_or(false));
    Ok(DarbouxMap {
        source: omega.clone(),
        hbar: hbar.clone(),
        matrix,
    })
}

/// The explicit map `x' = X`, `y' = Y - (theta/hbar) Pi_x`,
/// `p'_x = (hbar/kappa)(Pi_x - b_in Y)`, `p'_y = (hbar/kappa) Pi_y`.
pub fn intrinsic_canonicalization(label: &SectorLabel) -> Result<DarbouxMap> {
    if !label.is_regular() {
        return Err(Error::DegenerateLabel);
    }
    let zero = Rational::zero;
    let one = Rational::one;
    let h_over_k = &label.hbar / label.kappa();
    let rows = vec![
        vec![one(), zero(), zero(), zero()],
        vec![zero(), one(), -(&label.theta / &label.hbar), zero()],
        vec![zero(), -(&h_over_k * &label.b_in), h_over_k.clone(), zero()],
        vec![zero(), zero(), zero(), h_over_k],
    ];
    Ok(DarbouxMap {
        source: omega_nc(label),
        hbar: label.hbar.clone(),
        matrix: RealizationMatrix::new(Matrix::from_rows(rows)?)?,
    })
}

/// True iff `T Omega T^T = hbar J` exactly.
pub fn is_darboux_map(t: &RealizationMatrix, omega: &CommutatorMatrix, hbar: &Rational) -> Result<bool> {
    let pushed = push_commutators(t, omega)?;
    Ok(pushed == omega_ccr(hbar, omega.dim() / 2))
}

/// `M' = T^{-T} M T^{-1}`, so that `1/2 eta^T M eta = 1/2 zeta^T M' zeta`.
pub fn transform_quadratic(m: &QuadraticForm, t: &DarbouxMap) -> Result<QuadraticForm> {
    if m.dim() != t.matrix.dim() {
        return Err(Error::DimensionMismatch {
            expected: t.matrix.dim(),
            found: m.dim(),
        });
    }
    let inv = t.matrix.inverse();
    let out = &(&inv.entries().transpose() * m.entries()) * inv.entries();
    QuadraticForm::new(out)
}

/// Frequencies `omega_k` from the eigenvalues `+-i omega_k` of `Omega M`.
///
/// `Omega` already carries `hbar`; no further factor is applied.
pub fn williamson_frequencies(m: &QuadraticForm, omega: &CommutatorMatrix) -> Result<SpectrumResult> {
    if m.dim() != omega.dim() {
        return Err(Error::DimensionMismatch {
            expected: omega.dim(),
            found: m.dim(),
        });
    }
    if !m.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    if pfaffian(omega)?.is_zero() {
        return Err(Error::DegenerateOmega);
    }
    let product = (omega.entries() * m.entries()).to_f64();
    let eigen = product.complex_eigenvalues();
    let scale = eigen.iter().map(|z| z.norm()).fold(1.0_f64, f64::max);
    let tol = SPECTRUM_TOLERANCE * scale;

    if eigen.iter().any(|z| z.re.abs() > tol) {
        return Err(Error::SpectrumPairing);
    }
    let mut upper: Vec<f64> = eigen.iter().filter(|z| z.im > 0.0).map(|z| z.im).collect();
    let mut lower: Vec<f64> = eigen.iter().filter(|z| z.im < 0.0).map(|z| -z.im).collect();
    if upper.len() != m.dim() / 2 || lower.len() != upper.len() {
        return Err(Error::SpectrumPairing);
    }
    upper.sort_by(f64::total_cmp);
    lower.sort_by(f64::total_cmp);
    let mut frequencies = Vec::with_capacity(upper.len());
    for (a, b) in upper.iter().zip(&lower) {
        if (a - b).abs() > tol {
            return Err(Error::SpectrumPairing);
        }
        frequencies.push(0.5 * (a + b));
    }
    Ok(SpectrumResult {
        frequencies,
        tolerance: SPECTRUM_TOLERANCE,
    })
}

/// `sum_k omega_k (n_k + 1/2)`.
pub fn quadratic_spectrum(freqs: &SpectrumResult, quanta: &[u64]) -> Result<f64> {
    if quanta.len() != freqs.frequencies.len() {
        return Err(Error::LengthMismatch {
            expected: freqs.frequencies.len(),
            found: quanta.len(),
        });
    }
    Ok(freqs
        .frequencies
        .iter()
        .zip(quanta)
        .map(|(w, &n)| w * (n as f64 + 0.5))
        .sum())
}

/// Separates the existence of a CCR frame from sector reduction.
pub fn reduction_verdict(label: &SectorLabel) -> Result<ReductionVerdict> {
    if label.hbar.is_zero() {
        return Err(Error::ZeroHbar);
    }
    let quotient = label.quotient_sector();
    let darboux_exists = !label.kappa().is_zero();
    let conjugation_possible = conjugation_compatible(&omega_nc(label), &omega_nc(&quotient))?;
    let sectors_equivalent =
        decide_equivalence(label, &quotient).status == EquivalenceStatus::Equivalent;

    let frame = if darboux_exists {
        "a Darboux map to a CCR frame exists"
    } else {
        "no Darboux map exists (hbar - theta*b_in = 0, off the regular stratum)"
    };
    let conj = if conjugation_possible {
        "the commutator matrices agree, so componentwise conjugation is not excluded"
    } else {
        "the commutator matrices differ, so no componentwise unitary conjugation onto the CCR quadruple exists"
    };
    let equiv = if sectors_equivalent {
        "the central characters coincide and the sector is the quotient sector"
    } else {
        "the central characters differ, so the sector is not equivalent to the quotient sector"
    };
    let narrative = format!(
        "Label (hbar, theta, b_in) = ({}, {}, {}): {frame}; {conj}; {equiv}.",
        label.hbar, label.theta, label.b_in
    );
    Ok(ReductionVerdict {
        darboux_exists,
        conjugation_possible,
        sectors_equivalent,
        narrative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bopp::{bopp_matrix, BoppParams};
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn reference() -> SectorLabel {
        SectorLabel::new(int(1), rat(1, 2), rat(1, 3))
    }

    fn m(rows: Vec<Vec<Rational>>) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn canonicalize_fixes_canonical_input() {
        let map = canonicalize(&omega_ccr(&int(1), 2), &int(1)).unwrap();
        assert_eq!(map.matrix, RealizationMatrix::identity(4));
        let map = canonicalize(&omega_ccr(&rat(2, 3), 3), &rat(2, 3)).unwrap();
        assert_eq!(map.matrix, RealizationMatrix::identity(6));
    }

    #[test]
    fn canonicalize_reference_sector() {
        let om = omega_nc(&reference());
        let map = canonicalize(&om, &int(1)).unwrap();
        assert!(is_darboux_map(&map.matrix, &om, &int(1)).unwrap());
        let map = canonicalize(&om, &rat(-7, 2)).unwrap();
        assert!(is_darboux_map(&map.matrix, &om, &rat(-7, 2)).unwrap());
    }

    #[test]
    fn canonicalize_guards() {
        let degenerate = omega_nc(&SectorLabel::new(int(1), int(1), int(1)));
        assert_eq!(canonicalize(&degenerate, &int(1)), Err(Error::DegenerateOmega));
        assert_eq!(canonicalize(&omega_ccr(&int(1), 2), &int(0)), Err(Error::ZeroHbar));
        assert_eq!(
            canonicalize(&omega_ccr(&int(1), 5), &int(1)),
            Err(Error::UnsupportedDimension(10))
        );
    }

    #[test]
    fn intrinsic_examples() {
        let map = intrinsic_canonicalization(&reference()).unwrap();
        let expected = vec![
            vec![int(1), int(0), int(0), int(0)],
            vec![int(0), int(1), rat(-1, 2), int(0)],
            vec![int(0), rat(-2, 5), rat(6, 5), int(0)],
            vec![int(0), int(0), int(0), rat(6, 5)],
        ];
        assert_eq!(map.matrix.entries().rows(), expected);
        assert!(is_darboux_map(&map.matrix, &omega_nc(&reference()), &int(1)).unwrap());

        let pure = intrinsic_canonicalization(&SectorLabel::new(int(1), int(0), int(0))).unwrap();
        assert_eq!(pure.matrix, RealizationMatrix::identity(4));

        let degenerate = SectorLabel::new(int(1), int(2), rat(1, 2));
        assert_eq!(intrinsic_canonicalization(&degenerate), Err(Error::DegenerateLabel));
    }

    #[test]
    fn darboux_map_checks() {
        let om = omega_nc(&reference());
        assert!(!is_darboux_map(&RealizationMatrix::identity(4), &om, &int(1)).unwrap());

        // quarter turn in the (x, p_x) plane
        let rot = RealizationMatrix::new(m(vec![
            vec![int(0), int(0), int(1), int(0)],
            vec![int(0), int(1), int(0), int(0)],
            vec![int(-1), int(0), int(0), int(0)],
            vec![int(0), int(0), int(0), int(1)],
        ]))
        .unwrap();
        assert!(is_darboux_map(&rot, &omega_ccr(&int(1), 2), &int(1)).unwrap());
        let t = intrinsic_canonicalization(&reference()).unwrap().matrix;
        assert!(is_darboux_map(&rot.compose(&t).unwrap(), &om, &int(1)).unwrap());

        assert!(is_darboux_map(&RealizationMatrix::identity(2), &om, &int(1)).is_err());
    }

    #[test]
    fn inverse_bopp_is_darboux() {
        for (r, s) in [(int(0), int(0)), (int(2), int(1)), (rat(-1, 3), rat(7, 2))] {
            let real = bopp_matrix(&reference(), &BoppParams::new(r, s)).unwrap();
            let t = real.matrix.inverse();
            assert!(is_darboux_map(&t, &omega_nc(&reference()), &int(1)).unwrap());
        }
    }

    #[test]
    fn transform_examples() {
        let id = DarbouxMap {
            source: omega_ccr(&int(1), 2),
            hbar: int(1),
            matrix: RealizationMatrix::identity(4),
        };
        assert_eq!(transform_quadratic(&QuadraticForm::identity(4), &id).unwrap(), QuadraticForm::identity(4));

        let scaled = DarbouxMap {
            matrix: RealizationMatrix::new(Matrix::diagonal(&[int(2), int(2), rat(1, 2), rat(1, 2)])).unwrap(),
            ..id
        };
        let out = transform_quadratic(&QuadraticForm::identity(4), &scaled).unwrap();
        assert_eq!(out.entries(), &Matrix::diagonal(&[rat(1, 4), rat(1, 4), int(4), int(4)]));

        let t = intrinsic_canonicalization(&reference()).unwrap();
        let out = transform_quadratic(&QuadraticForm::identity(4), &t).unwrap();
        assert!(out.entries().is_symmetric());
        let before = williamson_frequencies(&QuadraticForm::identity(4), &omega_nc(&reference())).unwrap();
        let after = williamson_frequencies(&out, &omega_ccr(&int(1), 2)).unwrap();
        for (a, b) in before.frequencies.iter().zip(&after.frequencies) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn frequency_examples() {
        let id = QuadraticForm::identity(4);
        let f = williamson_frequencies(&id, &omega_ccr(&int(1), 2)).unwrap();
        assert_eq!(f.frequencies.len(), 2);
        assert!(f.frequencies.iter().all(|w| (w - 1.0).abs() < 1e-9));

        let f = williamson_frequencies(&id, &omega_ccr(&int(2), 2)).unwrap();
        assert!(f.frequencies.iter().all(|w| (w - 2.0).abs() < 1e-9));

        let f = williamson_frequencies(&id, &omega_nc(&reference())).unwrap();
        assert!((f.frequencies[0] - 0.586_799_548_232_691_2).abs() < 1e-9);
        assert!((f.frequencies[1] - 1.420_132_881_566_024_4).abs() < 1e-9);
        assert_eq!(f.tolerance, SPECTRUM_TOLERANCE);
    }

    #[test]
    fn frequency_guards() {
        let indefinite = QuadraticForm::new(Matrix::diagonal(&[int(1), int(-1), int(1), int(1)])).unwrap();
        assert_eq!(
            williamson_frequencies(&indefinite, &omega_ccr(&int(1), 2)),
            Err(Error::NotPositiveDefinite)
        );
        let degenerate = omega_nc(&SectorLabel::new(int(1), int(1), int(1)));
        assert_eq!(
            williamson_frequencies(&QuadraticForm::identity(4), &degenerate),
            Err(Error::DegenerateOmega)
        );
        assert_eq!(QuadraticForm::new(omega_ccr(&int(1), 1).entries().clone()), Err(Error::NotSymmetric));
    }

    #[test]
    fn spectrum_energies() {
        let unit = SpectrumResult {
            frequencies: vec![1.0, 1.0],
            tolerance: SPECTRUM_TOLERANCE,
        };
        assert_eq!(quadratic_spectrum(&unit, &[0, 0]).unwrap(), 1.0);
        assert_eq!(quadratic_spectrum(&unit, &[1, 0]).unwrap(), 2.0);
        assert!(matches!(quadratic_spectrum(&unit, &[1]), Err(Error::LengthMismatch { .. })));

        let f = williamson_frequencies(&QuadraticForm::identity(4), &omega_nc(&reference())).unwrap();
        let ground = quadratic_spectrum(&f, &[0, 0]).unwrap();
        assert!((ground - 0.5 * (0.586_799_548_232_691_2 + 1.420_132_881_566_024_4)).abs() < 1e-9);
        assert!((ground - 1.00345).abs() < 1e-4);
    }

    #[test]
    fn verdict_examples() {
        let v = reduction_verdict(&reference()).unwrap();
        assert_eq!((v.darboux_exists, v.conjugation_possible, v.sectors_equivalent), (true, false, false));

        let v = reduction_verdict(&SectorLabel::new(int(1), int(0), int(0))).unwrap();
        assert_eq!((v.darboux_exists, v.conjugation_possible, v.sectors_equivalent), (true, true, true));

        let v = reduction_verdict(&SectorLabel::new(int(1), int(2), rat(1, 2))).unwrap();
        assert!(!v.darboux_exists);
        assert!(!v.sectors_equivalent);

        assert_eq!(reduction_verdict(&SectorLabel::new(int(0), int(1), int(1))), Err(Error::ZeroHbar));
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-5i64..=5, 1i64..=3).prop_map(|(n, d)| rat(n, d))
    }

    fn omega_strategy() -> impl Strategy<Value = CommutatorMatrix> {
        (1usize..=4).prop_flat_map(|deg| {
            let n = 2 * deg;
            proptest::collection::vec(small(), n * (n - 1) / 2).prop_filter_map("degenerate", move |upper| {
                let mut mat = Matrix::zeros(n);
                let mut it = upper.into_iter();
                for i in 0..n {
                    for j in i + 1..n {
                        let v = it.next().unwrap();
                        mat[(j, i)] = -v.clone();
                        mat[(i, j)] = v;
                    }
                }
                let om = CommutatorMatrix::new(mat).unwrap();
                (!pfaffian(&om).unwrap().is_zero()).then_some(om)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn canonicalize_is_darboux(om in omega_strategy(), h in small()) {
            prop_assume!(!h.is_zero());
            let map = canonicalize(&om, &h).unwrap();
            prop_assert!(is_darboux_map(&map.matrix, &om, &h).unwrap());
        }

        #[test]
        fn intrinsic_is_darboux(h in small(), t in small(), b in small()) {
            let label = SectorLabel::new(h, t, b);
            prop_assume!(label.is_regular());
            let map = intrinsic_canonicalization(&label).unwrap();
            prop_assert!(is_darboux_map(&map.matrix, &omega_nc(&label), &label.hbar).unwrap());
        }

        #[test]
        fn verdict_separates_generic_labels(h in small(), t in small(), b in small()) {
            let label = SectorLabel::new(h, t.clone(), b.clone());
            prop_assume!(label.is_regular() && !t.is_zero() && !b.is_zero());
            let v = reduction_verdict(&label).unwrap();
            prop_assert_eq!((v.darboux_exists, v.conjugation_possible, v.sectors_equivalent), (true, false, false));
        }
    }
}

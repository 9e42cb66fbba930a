//! Fixed inputs shared by the kernel benchmarks.

use ncqm_core::rational::rat;
use ncqm_core::{CommutatorMatrix, GaussianRational, GroupElement, Matrix, PolySymbol, SectorLabel};

pub fn reference_label() -> SectorLabel {
    SectorLabel::new(rat(1, 1), rat(1, 2), rat(1, 3))
}

/// A dense nondegenerate commutator matrix of even dimension `dim <= 8`.
pub fn dense_omega(dim: usize) -> CommutatorMatrix {
    let m = Matrix::from_fn(dim, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => rat((i + 2 * j + 1) as i64, (j - i + 1) as i64),
        std::cmp::Ordering::Greater => -rat((j + 2 * i + 1) as i64, (i - j + 1) as i64),
        std::cmp::Ordering::Equal => rat(0, 1),
    });
    CommutatorMatrix::new(m).expect("antisymmetric by construction")
}

/// A cubic symbol with a handful of mixed terms.
pub fn cubic_symbol(shift: i64) -> PolySymbol {
    PolySymbol::from_terms([
        ([1, 0, 1, 0], GaussianRational::new(rat(1 + shift, 2), rat(0, 1))),
        ([0, 2, 0, 1], GaussianRational::new(rat(-1, 3), rat(shift, 1))),
        ([1, 1, 0, 0], GaussianRational::new(rat(2, 1), rat(0, 1))),
        ([0, 0, 0, 1], GaussianRational::new(rat(0, 1), rat(1, 5))),
    ])
}

pub fn group_element(seed: i64) -> GroupElement {
    GroupElement {
        theta: rat(seed, 3),
        phi: rat(-seed, 5),
        psi: rat(7, seed.abs() + 1),
        q: [rat(1, 2), rat(seed, 7)],
        p: [rat(-3, 4), rat(2 * seed + 1, 9)],
    }
}

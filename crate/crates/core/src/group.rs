//! The step-two nilpotent kinematical group in exponential coordinates.
//!
//! The Lie algebra has basis `X1, X2, P1, P2, Z1, Z2, Z3` with the only
//! nonzero brackets
//!
//! ```text
//! [X1, P1] = [X2, P2] = Z1,   [X1, X2] = Z2,   [P1, P2] = Z3
//! ```
//!
//! and a representation with label `(hbar, theta, b_in)` sends
//! `Z1, Z2, Z3` to `i hbar, i theta, i hbar b_in`. Because every bracket is
//! central, `exp(X) exp(Y) = exp(X + Y + [X, Y] / 2)` exactly.
//!
//! Forgetting the `Z2, Z3` coordinates is a homomorphism onto the
//! Weyl–Heisenberg group; the representations that factor through it are the
//! ordinary-QM sector `(hbar, 0, 0)`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::Matrix;
use crate::rational::{serde_rational, Rational};
use crate::sector::{central_character, CommutatorMatrix, SectorLabel};

/// A Lie-algebra element in the basis `(Z1, Z2, Z3, X1, X2, P1, P2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LieElement {
    #[serde(with = "serde_rational")]
    pub z1: Rational,
    #[serde(with = "serde_rational")]
    pub z2: Rational,
    #[serde(with = "serde_rational")]
    pub z3: Rational,
    #[serde(with = "serde_rational")]
    pub q1: Rational,
    #[serde(with = "serde_rational")]
    pub q2: Rational,
    #[serde(with = "serde_rational")]
    pub p1: Rational,
    #[serde(with = "serde_rational")]
    pub p2: Rational,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The seven basis vectors in the order `Z1, Z2, Z3, X1, X2, P1, P2`.
    pub fn basis() -> [LieElement; 7] {
        std::array::from_fn(|i| {
            let mut c: [Rational; 7] = Default::default();
            c[i] = Rational::one();
            LieElement::from_coords(c)
        })
    }

    pub fn from_coords(c: [Rational; 7]) -> Self {
        let [z1, z2, z3, q1, q2, p1, p2] = c;
        LieElement { z1, z2, z3, q1, q2, p1, p2 }
    }

    pub fn coords(&self) -> [&Rational; 7] {
        [&self.z1, &self.z2, &self.z3, &self.q1, &self.q2, &self.p1, &self.p2]
    }

    pub fn is_central(&self) -> bool {
        self.q1.is_zero() && self.q2.is_zero() && self.p1.is_zero() && self.p2.is_zero()
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let a = self.coords();
        let b = other.coords();
        LieElement::from_coords(std::array::from_fn(|i| a[i] + b[i]))
    }

    pub fn scale(&self, c: &Rational) -> LieElement {
        let a = self.coords();
        LieElement::from_coords(std::array::from_fn(|i| a[i] * c))
    }
}

/// Group element in exponential coordinates `exp(theta Z1 + phi Z2 + psi Z3 + q.X + p.P)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupElement {
    pub theta: Rational,
    pub phi: Rational,
    pub psi: Rational,
    pub q: [Rational; 2],
    pub p: [Rational; 2],
}

#[derive(Serialize, Deserialize)]
struct FlatGroupElement {
    #[serde(with = "serde_rational")]
    theta: Rational,
    #[serde(with = "serde_rational")]
    phi: Rational,
    #[serde(with = "serde_rational")]
    psi: Rational,
    #[serde(with = "serde_rational")]
    q1: Rational,
    #[serde(with = "serde_rational")]
    q2: Rational,
    #[serde(with = "serde_rational")]
    p1: Rational,
    #[serde(with = "serde_rational")]
    p2: Rational,
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let [q1, q2] = self.q.clone();
        let [p1, p2] = self.p.clone();
        FlatGroupElement {
            theta: self.theta.clone(),
            phi: self.phi.clone(),
            psi: self.psi.clone(),
            q1,
            q2,
            p1,
            p2,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let f = FlatGroupElement::deserialize(d)?;
        Ok(GroupElement {
            theta: f.theta,
            phi: f.phi,
            psi: f.psi,
            q: [f.q1, f.q2],
            p: [f.p1, f.p2],
        })
    }
}

impl GroupElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn exp(x: &LieElement) -> Self {
        GroupElement {
            theta: x.z1.clone(),
            phi: x.z2.clone(),
            psi: x.z3.clone(),
            q: [x.q1.clone(), x.q2.clone()],
            p: [x.p1.clone(), x.p2.clone()],
        }
    }

    pub fn log(&self) -> LieElement {
        LieElement {
            z1: self.theta.clone(),
            z2: self.phi.clone(),
            z3: self.psi.clone(),
            q1: self.q[0].clone(),
            q2: self.q[1].clone(),
            p1: self.p[0].clone(),
            p2: self.p[1].clone(),
        }
    }

    /// Negation of every coordinate.
    pub fn inverse(&self) -> Self {
        GroupElement::exp(&self.log().scale(&-Rational::one()))
    }
}

/// The Weyl–Heisenberg group `(theta, q, p)` with cocycle `(q.p' - p.q') / 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct WeylHeisenbergElement {
    #[serde(with = "serde_rational")]
    pub theta: Rational,
    #[serde(with = "crate::group::serde_pair")]
    pub q: [Rational; 2],
    #[serde(with = "crate::group::serde_pair")]
    pub p: [Rational; 2],
}

impl WeylHeisenbergElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn multiply(&self, other: &Self) -> Self {
        WeylHeisenbergElement {
            theta: &self.theta
                + &other.theta
                + half() * symplectic_pairing(&self.q, &self.p, &other.q, &other.p),
            q: add_pair(&self.q, &other.q),
            p: add_pair(&self.p, &other.p),
        }
    }
}

/// Values of a linear functional on `(Z1, Z2, Z3, X1, X2, P1, P2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Functional {
    #[serde(with = "serde_rational")]
    pub a1: Rational,
    #[serde(with = "serde_rational")]
    pub a2: Rational,
    #[serde(with = "serde_rational")]
    pub a3: Rational,
    #[serde(with = "serde_rational")]
    pub b1: Rational,
    #[serde(with = "serde_rational")]
    pub b2: Rational,
    #[serde(with = "serde_rational")]
    pub c1: Rational,
    #[serde(with = "serde_rational")]
    pub c2: Rational,
}

impl Functional {
    pub fn eval(&self, x: &LieElement) -> Rational {
        &self.a1 * &x.z1
            + &self.a2 * &x.z2
            + &self.a3 * &x.z3
            + &self.b1 * &x.q1
            + &self.b2 * &x.q2
            + &self.c1 * &x.p1
            + &self.c2 * &x.p2
    }

    pub fn central_values(&self) -> [&Rational; 3] {
        [&self.a1, &self.a2, &self.a3]
    }
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

fn add_pair(a: &[Rational; 2], b: &[Rational; 2]) -> [Rational; 2] {
    [&a[0] + &b[0], &a[1] + &b[1]]
}

/// `q.p' - p.q'`.
fn symplectic_pairing(q: &[Rational; 2], p: &[Rational; 2], q2: &[Rational; 2], p2: &[Rational; 2]) -> Rational {
    &q[0] * &p2[0] - &p[0] * &q2[0] + &q[1] * &p2[1] - &p[1] * &q2[1]
}

fn cross(a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

pub fn bracket(u: &LieElement, v: &LieElement) -> LieElement {
    let uq = [u.q1.clone(), u.q2.clone()];
    let up = [u.p1.clone(), u.p2.clone()];
    let vq = [v.q1.clone(), v.q2.clone()];
    let vp = [v.p1.clone(), v.p2.clone()];
    LieElement {
        z1: symplectic_pairing(&uq, &up, &vq, &vp),
        z2: cross(&uq, &vq),
        z3: cross(&up, &vp),
        ..LieElement::zero()
    }
}

/// `exp(X) exp(Y) = exp(X + Y + [X, Y] / 2)`.
pub fn bch_multiply(g: &GroupElement, h: &GroupElement) -> GroupElement {
    let x = g.log();
    let y = h.log();
    GroupElement::exp(&x.add(&y).add(&bracket(&x, &y).scale(&half())))
}

/// Forgets the `Z2, Z3` coordinates.
pub fn quotient_project(g: &GroupElement) -> WeylHeisenbergElement {
    WeylHeisenbergElement {
        theta: g.theta.clone(),
        q: g.q.clone(),
        p: g.p.clone(),
    }
}

/// `Ad*_g l = l o Ad_{g^-1}`, with `Ad_{exp x} Y = Y + [x, Y]`.
pub fn coadjoint_act(g: &GroupElement, l: &Functional) -> Functional {
    let x = g.log();
    let [_, _, _, x1, x2, p1, p2] = LieElement::basis();
    // l(Y - [x, Y]) on each noncentral basis vector
    let shifted = |y: &LieElement| &l.eval(y) - l.eval(&bracket(&x, y));
    Functional {
        a1: l.a1.clone(),
        a2: l.a2.clone(),
        a3: l.a3.clone(),
        b1: shifted(&x1),
        b2: shifted(&x2),
        c1: shifted(&p1),
        c2: shifted(&p2),
    }
}

/// The sector label read off a functional, when its orbit is a regular one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitLabel {
    Sector(SectorLabel),
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitData {
    pub rank: usize,
    pub kirillov: CommutatorMatrix,
    pub label: OrbitLabel,
}

/// `B_l(u, v) = l([u, v])` on the noncentral basis `(X1, X2, P1, P2)`.
pub fn kirillov_form(l: &Functional) -> CommutatorMatrix {
    let [_, _, _, x1, x2, p1, p2] = LieElement::basis();
    let basis = [x1, x2, p1, p2];
    let m = Matrix::from_fn(4, |i, j| l.eval(&bracket(&basis[i], &basis[j])));
    CommutatorMatrix::new(m).expect("brackets are antisymmetric")
}

pub fn orbit_data(l: &Functional) -> OrbitData {
    let kirillov = kirillov_form(l);
    let rank = kirillov.entries().rank();
    let label = if l.a1.is_zero() {
        OrbitLabel::Degenerate
    } else {
        OrbitLabel::Sector(SectorLabel::new(l.a1.clone(), l.a2.clone(), &l.a3 / &l.a1))
    };
    OrbitData { rank, kirillov, label }
}

/// A group element carrying `from` to `to` under the coadjoint action, if one
/// exists. On a rank-4 orbit this succeeds for every `to` with the same central
/// values, so the orbit is the full affine 4-plane over those values.
pub fn connecting_element(from: &Functional, to: &Functional) -> Option<GroupElement> {
    if from.central_values() != to.central_values() {
        return None;
    }
    // Ad*_{exp x} l - l = -B_l(x, .) on the noncentral part: solve B_l^T x = -(to - from).
    let b = kirillov_form(from);
    let delta = [
        &to.b1 - &from.b1,
        &to.b2 - &from.b2,
        &to.c1 - &from.c1,
        &to.c2 - &from.c2,
    ];
    // B_l(x, e_j) = sum_i x_i B_ij = -delta_j, and B^T = -B, so B x = delta.
    let inv = b.entries().inverse()?;
    let x: Vec<Rational> = (0..4)
        .map(|i| (0..4).map(|j| &inv[(i, j)] * &delta[j]).sum())
        .collect();
    let g = GroupElement {
        q: [x[0].clone(), x[1].clone()],
        p: [x[2].clone(), x[3].clone()],
        ..GroupElement::identity()
    };
    (coadjoint_act(&g, from) == *to).then_some(g)
}

/// True iff the sector's extra central directions act trivially, i.e. the
/// representation factors through the Weyl–Heisenberg quotient.
pub fn factors_through_quotient(label: &SectorLabel) -> bool {
    let c = central_character(label);
    c.alpha2.is_zero() && c.alpha3.is_zero()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EquivalenceStatus {
    Equivalent,
    Inequivalent,
    Unsupported,
}

impl fmt::Display for EquivalenceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EquivalenceStatus::Equivalent => "Equivalent",
            EquivalenceStatus::Inequivalent => "Inequivalent",
            EquivalenceStatus::Unsupported => "Unsupported",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceVerdict {
    pub status: EquivalenceStatus,
    pub reason: String,
}

/// Labels on the regular stratum (which contains the quotient sector).
pub fn is_supported(label: &SectorLabel) -> bool {
    label.is_regular() || label.is_quotient_sector()
}

/// Decides unitary equivalence of two sectors from their central characters.
pub fn decide_equivalence(a: &SectorLabel, b: &SectorLabel) -> EquivalenceVerdict {
    for (name, l) in [("first", a), ("second", b)] {
        if !is_supported(l) {
            return EquivalenceVerdict {
                status: EquivalenceStatus::Unsupported,
                reason: format!(
                    "{name} label has hbar = 0 or hbar - theta*b_in = 0; only the regular stratum is classified"
                ),
            };
        }
    }
    let (ca, cb) = (central_character(a), central_character(b));
    if ca == cb {
        EquivalenceVerdict {
            status: EquivalenceStatus::Equivalent,
            reason: "central characters coincide".to_string(),
        }
    } else {
        let differing: Vec<&str> = [
            ("alpha1", ca.alpha1 != cb.alpha1),
            ("alpha2", ca.alpha2 != cb.alpha2),
            ("alpha3", ca.alpha3 != cb.alpha3),
        ]
        .into_iter()
        .filter_map(|(n, d)| d.then_some(n))
        .collect();
        EquivalenceVerdict {
            status: EquivalenceStatus::Inequivalent,
            reason: format!("central characters differ in {}", differing.join(", ")),
        }
    }
}

pub(crate) mod serde_pair {
    use crate::rational::{format_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &[Rational; 2], s: S) -> Result<S::Ok, S::Error> {
        [format_rational(&x[0]), format_rational(&x[1])].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Rational; 2], D::Error> {
        let [a, b] = <[String; 2]>::deserialize(d)?;
        Ok([
            parse_rational(&a).map_err(D::Error::custom)?,
            parse_rational(&b).map_err(D::Error::custom)?,
        ])
    }
}

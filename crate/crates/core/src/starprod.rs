//! Moyal products for constant `Omega` on polynomial phase-space symbols.
//!
//! With `[x_a, x_b]_* = i Omega_ab`,
//!
//! ```text
//! f * g = sum_k (1/k!) (i/2)^k Omega^{a1 b1} ... Omega^{ak bk}
//!         (d_a1 ... d_ak f)(d_b1 ... d_bk g)
//! ```
//!
//! which terminates at `k = min(deg f, deg g)` for polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::decide_equivalence;
use crate::group::EquivalenceStatus;
use crate::matrix::Matrix;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::sector::{omega_nc, push_commutators, CommutatorMatrix, RealizationMatrix, SectorLabel};
use crate::darboux::intrinsic_canonicalization;

/// Display names of the four phase-space variables, in basis order.
pub const VARIABLES: [&str; 4] = ["x", "y", "p_x", "p_y"];

pub type Exponents = [u32; 4];

/// `re + i im` with rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        GaussianRational::new(&self.re * c, &self.im * c)
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        (!norm.is_zero()).then(|| self.conj().scale(&norm.recip()))
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::real(Rational::one())
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.re)),
            (true, false) => write!(f, "{}i", format_rational(&self.im)),
            (false, false) => write!(f, "({} + {}i)", format_rational(&self.re), format_rational(&self.im)),
        }
    }
}

/// A polynomial in `(x, y, p_x, p_y)` with Gaussian-rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolySymbol {
    terms: BTreeMap<Exponents, GaussianRational>,
}

impl PolySymbol {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    /// The coordinate function of variable `index` (0..4).
    pub fn variable(index: usize) -> Self {
        let mut e = [0; 4];
        e[index] = 1;
        Self::monomial(e, GaussianRational::one())
    }

    pub fn monomial(exponents: Exponents, c: GaussianRational) -> Self {
        let mut p = Self::zero();
        p.add_term(exponents, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, GaussianRational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot = std::mem::take(slot) + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponents) -> GaussianRational {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-GaussianRational::one()))
    }

    /// Pointwise (commutative) product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(std::array::from_fn(|i| ea[i] + eb[i]), ca * cb);
            }
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = *e;
            d[var] -= 1;
            out.add_term(d, c.scale(&Rational::from_integer(e[var].into())));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Terms in graded-lexicographic order: by total degree, then exponents
    /// lexicographically.
    pub fn graded_terms(&self) -> Vec<(Exponents, GaussianRational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        v.sort_by_key(|(e, _)| (e.iter().sum::<u32>(), *e));
        v
    }
}

impl fmt::Display for PolySymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .graded_terms()
            .into_iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .zip(VARIABLES)
                    .filter(|(k, _)| **k > 0)
                    .map(|(k, v)| if *k == 1 { v.to_string() } else { format!("{v}^{k}") })
                    .collect();
                if vars.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", vars.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    exponents: Exponents,
    re: String,
    im: String,
}

impl Serialize for PolySymbol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .graded_terms()
            .into_iter()
            .map(|(exponents, c)| TermRecord {
                exponents,
                re: format_rational(&c.re),
                im: format_rational(&c.im),
            })
            .collect();
        records.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolySymbol {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        let mut terms = Vec::with_capacity(records.len());
        for r in records {
            let re = parse_rational(&r.re).map_err(D::Error::custom)?;
            let im = parse_rational(&r.im).map_err(D::Error::custom)?;
            terms.push((r.exponents, GaussianRational::new(re, im)));
        }
        Ok(PolySymbol::from_terms(terms))
    }
}

fn check_four(omega: &CommutatorMatrix) -> Result<()> {
    if omega.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: omega.dim(),
        });
    }
    Ok(())
}

/// `f (x) g` as a map from monomial pairs to coefficients.
type Tensor = BTreeMap<(Exponents, Exponents), GaussianRational>;

fn tensor_of(f: &PolySymbol, g: &PolySymbol) -> Tensor {
    let mut t = Tensor::new();
    for (ef, cf) in f.terms() {
        for (eg, cg) in g.terms() {
            t.insert((*ef, *eg), cf * cg);
        }
    }
    t
}

/// One application of the bidifferential operator `Omega^{ab} d_a (x) d_b`.
fn apply_poisson_bivector(tensor: &Tensor, omega: &CommutatorMatrix) -> Tensor {
    let mut out = Tensor::new();
    for ((ef, eg), c) in tensor {
        for a in 0..4 {
            if ef[a] == 0 {
                continue;
            }
            for b in 0..4 {
                let w = omega.get(a, b);
                if w.is_zero() || eg[b] == 0 {
                    continue;
                }
                let mut df = *ef;
                let mut dg = *eg;
                df[a] -= 1;
                dg[b] -= 1;
                let factor = w * Rational::from_integer((ef[a] * eg[b]).into());
                let slot = out.entry((df, dg)).or_default();
                *slot = std::mem::take(slot) + c.scale(&factor);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn contract(tensor: &Tensor) -> PolySymbol {
    PolySymbol::from_terms(
        tensor
            .iter()
            .map(|((ef, eg), c)| (std::array::from_fn(|i| ef[i] + eg[i]), c.clone())),
    )
}

/// The order-by-order terms `B_k(f, g)` of the Moyal series, coefficients
/// `(i/2)^k / k!` included; entry `k` is the order-`k` contribution.
pub fn moyal_orders(f: &PolySymbol, g: &PolySymbol, omega: &CommutatorMatrix) -> Result<Vec<PolySymbol>> {
    check_four(omega)?;
    let mut tensor = tensor_of(f, g);
    let mut orders = vec![contract(&tensor)];
    let half_i = GaussianRational::new(Rational::zero(), Rational::new(1.into(), 2.into()));
    let mut coeff = GaussianRational::one();
    let mut k: u32 = 0;
    loop {
        tensor = apply_poisson_bivector(&tensor, omega);
        if tensor.is_empty() {
            break;
        }
        k += 1;
        coeff = (&coeff * &half_i).scale(&Rational::new(1.into(), k.into()));
        orders.push(contract(&tensor).scale(&coeff));
    }
    Ok(orders)
}

pub fn moyal_star(f: &PolySymbol, g: &PolySymbol, omega: &CommutatorMatrix) -> Result<PolySymbol> {
    Ok(moyal_orders(f, g, omega)?
        .iter()
        .fold(PolySymbol::zero(), |acc, term| acc.add(term)))
}

/// `{f, g} = Omega^{ab} d_a f d_b g`.
pub fn poisson_bracket(f: &PolySymbol, g: &PolySymbol, omega: &CommutatorMatrix) -> Result<PolySymbol> {
    check_four(omega)?;
    Ok(contract(&apply_poisson_bivector(&tensor_of(f, g), omega)))
}

/// `f * g - g * f`.
pub fn star_commutator(f: &PolySymbol, g: &PolySymbol, omega: &CommutatorMatrix) -> Result<PolySymbol> {
    Ok(moyal_star(f, g, omega)?.sub(&moyal_star(g, f, omega)?))
}

/// `f o T`: each variable `v_i` is replaced by `sum_j T_ij v_j`.
pub fn pullback_linear(f: &PolySymbol, t: &RealizationMatrix) -> Result<PolySymbol> {
    if t.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: t.dim(),
        });
    }
    if t.determinant().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let images: Vec<PolySymbol> = (0..4)
        .map(|i| {
            PolySymbol::from_terms((0..4).map(|j| {
                let mut e = [0; 4];
                e[j] = 1;
                (e, GaussianRational::real(t.entries()[(i, j)].clone()))
            }))
        })
        .collect();
    let mut out = PolySymbol::zero();
    for (e, c) in f.terms() {
        let mut term = PolySymbol::constant(c.clone());
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                term = term.mul(&images[i].pow(k));
            }
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Checks `pullback(f *' g, T) = pullback(f, T) * pullback(g, T)`, where `*'`
/// uses `T Omega T^T` and `*` uses `Omega`.
pub fn intertwines(
    f: &PolySymbol,
    g: &PolySymbol,
    omega: &CommutatorMatrix,
    t: &RealizationMatrix,
) -> Result<bool> {
    let pushed = push_commutators(t, omega)?;
    let lhs = pullback_linear(&moyal_star(f, g, &pushed)?, t)?;
    let rhs = moyal_star(&pullback_linear(f, t)?, &pullback_linear(g, t)?, omega)?;
    Ok(lhs == rhs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowReport {
    pub label: SectorLabel,
    pub darboux_matrix: Matrix,
    pub pushed_is_canonical: bool,
    pub samples_checked: usize,
    pub intertwining_verified: bool,
    pub equivalence: EquivalenceStatus,
    pub sectors_equivalent: bool,
    pub narrative: String,
}

/// Fixed probe symbols for the intertwining check, up to degree 3.
pub fn probe_symbols() -> Vec<PolySymbol> {
    let v = PolySymbol::variable;
    let r = |n, d| GaussianRational::real(Rational::new(Into::into(n), Into::into(d)));
    vec![
        v(0),
        v(1),
        v(2),
        v(3),
        v(0).mul(&v(2)),
        v(1).mul(&v(1)).add(&v(3).scale(&r(-3, 2))),
        v(0).mul(&v(1)).mul(&v(3)).add(&PolySymbol::constant(r(2, 5))),
        v(2).pow(3).add(&v(0).mul(&v(3)).scale(&GaussianRational::i())),
    ]
}

/// Contrasts the linear isomorphism of constant star products with the
/// sector distinction.
pub fn shadow_report(label: &SectorLabel) -> Result<ShadowReport> {
    let map = intrinsic_canonicalization(label)?;
    let omega = omega_nc(label);
    let pushed = push_commutators(&map.matrix, &omega)?;
    let pushed_is_canonical = pushed == crate::sector::omega_ccr(&label.hbar, 2);

    let probes = probe_symbols();
    let mut samples_checked = 0;
    let mut intertwining_verified = pushed_is_canonical;
    for f in &probes {
        for g in &probes {
            intertwining_verified &= intertwines(f, g, &omega, &map.matrix)?;
            samples_checked += 1;
        }
    }

    let verdict = decide_equivalence(label, &label.quotient_sector());
    let sectors_equivalent = verdict.status == EquivalenceStatus::Equivalent;
    let narrative = format!(
        "The linear Darboux map intertwines the constant star product of Omega_NC with the Moyal product of hbar*J \
         ({} symbol pairs checked: {}). The star algebras are isomorphic, yet the sector ({}, {}, {}) is {} to the \
         quotient sector: {}.",
        samples_checked,
        if intertwining_verified { "all agree" } else { "MISMATCH" },
        label.hbar,
        label.theta,
        label.b_in,
        if sectors_equivalent { "equivalent" } else { "inequivalent" },
        verdict.reason,
    );
    Ok(ShadowReport {
        label: label.clone(),
        darboux_matrix: map.matrix.entries().clone(),
        pushed_is_canonical,
        samples_checked,
        intertwining_verified,
        equivalence: verdict.status,
        sectors_equivalent,
        narrative,
    })
}

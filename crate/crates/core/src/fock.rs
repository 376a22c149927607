//! Restricted q-Fock spaces.
//!
//! `F1` has basis `f(r1, r2) = a1+^(r1) a2+^(r2) |0>` and carries the first
//! realization; `F2` has basis `g(r1, r2) = a1+^(r1) a2+^r2 |0>` and carries
//! the second. Vectors are finitely supported and generic over the scalar
//! ring, so the same closed-form action serves `Z[q, q^-1]` and `Q(eps)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{
    q_binom_at_root, q_binomial, q_binomial_at_eps, specialize, CyclotomicField, CyclotomicNumber, LaurentPoly,
    RootOrder,
};
use crate::boson::{multiply, BosonElement, BosonError, Form, PbwMonomial};
use crate::uq::{BosonImage, Realization, UGenerator, UqError, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error("realization {realization} acts on {expected}, got a vector in {got}")]
    SpaceMismatch { realization: Realization, expected: FockSpace, got: FockSpace },
    #[error("[K;0;{requested}] requested on vectors specialized at p = {field}")]
    RootMismatch { requested: RootOrder, field: RootOrder },
    #[error(transparent)]
    Uq(#[from] UqError),
    #[error(transparent)]
    Boson(#[from] BosonError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FockSpace {
    F1,
    F2,
}

impl fmt::Display for FockSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FockSpace::F1 => "F1",
            FockSpace::F2 => "F2",
        })
    }
}

/// A basis vector `f(r1, r2)` of `F1` or `g(r1, r2)` of `F2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FockLabel {
    pub space: FockSpace,
    pub r1: u32,
    pub r2: u32,
}

impl FockLabel {
    pub fn new(space: FockSpace, r1: u32, r2: u32) -> Self {
        FockLabel { space, r1, r2 }
    }

    pub fn f(r1: u32, r2: u32) -> Self {
        Self::new(FockSpace::F1, r1, r2)
    }

    pub fn g(r1: u32, r2: u32) -> Self {
        Self::new(FockSpace::F2, r1, r2)
    }

    /// The integer weight: `r1 - r2` on `F1`, `-(r1 + r2 + 1)` on `F2`.
    pub fn weight_value(&self) -> i64 {
        match self.space {
            FockSpace::F1 => self.r1 as i64 - self.r2 as i64,
            FockSpace::F2 => -(self.r1 as i64 + self.r2 as i64 + 1),
        }
    }

    /// The creator monomial over the vacuum, as a boson algebra element.
    fn creator_element(&self) -> BosonElement {
        let form = match self.space {
            FockSpace::F1 => Form::Res1,
            FockSpace::F2 => Form::Res2,
        };
        let mut m = PbwMonomial::unit(form);
        m.r1 = self.r1;
        m.r2 = self.r2;
        BosonElement::monomial(m, LaurentPoly::one())
    }
}

impl fmt::Display for FockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.space {
            FockSpace::F1 => "f",
            FockSpace::F2 => "g",
        };
        write!(f, "{name}({},{})", self.r1, self.r2)
    }
}

/// Weight of a basis vector with digits taken for the root order `p`.
pub fn weight_of(label: &FockLabel, p: RootOrder) -> Weight {
    Weight::new(label.weight_value(), p)
}

/// Scalars a Fock vector can carry: the ring operations the closed-form
/// actions need, plus `q`-powers and Gaussian binomials in that ring.
pub trait ScalarRing: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn int(&self, n: i64) -> Self::Elem;
    fn q_pow(&self, k: i64) -> Self::Elem;
    fn q_binomial(&self, n: i64, k: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Eigenvalue of `[K;0;p]` on a vector of the given weight.
    fn k_binomial(&self, weight: i64, p: RootOrder) -> Result<Self::Elem, FockError>;
}

/// `Z[q, q^-1]`, the generic parameter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GenericQ;

impl ScalarRing for GenericQ {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn int(&self, n: i64) -> LaurentPoly {
        LaurentPoly::constant(n)
    }
    fn q_pow(&self, k: i64) -> LaurentPoly {
        LaurentPoly::q_pow(k)
    }
    fn q_binomial(&self, n: i64, k: i64) -> LaurentPoly {
        q_binomial(n, k)
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a + b
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a * b
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        -a
    }
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
    fn k_binomial(&self, weight: i64, p: RootOrder) -> Result<LaurentPoly, FockError> {
        Ok(q_binomial(weight, p.get() as i64))
    }
}

/// `Q(eps)` for a primitive `p`-th root of unity `eps`.
#[derive(Clone, Debug)]
pub struct AtRoot {
    field: Arc<CyclotomicField>,
}

impl AtRoot {
    pub fn new(p: RootOrder) -> Self {
        AtRoot { field: CyclotomicField::new(p) }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> RootOrder {
        self.field.order()
    }
}

impl ScalarRing for AtRoot {
    type Elem = CyclotomicNumber;

    fn zero(&self) -> CyclotomicNumber {
        CyclotomicNumber::zero(&self.field)
    }
    fn int(&self, n: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_int(&self.field, n)
    }
    fn q_pow(&self, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::eps_pow(&self.field, k)
    }
    fn q_binomial(&self, n: i64, k: i64) -> CyclotomicNumber {
        q_binomial_at_eps(&self.field, n, k)
    }
    fn add(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        a + b
    }
    fn mul(&self, a: &CyclotomicNumber, b: &CyclotomicNumber) -> CyclotomicNumber {
        a * b
    }
    fn neg(&self, a: &CyclotomicNumber) -> CyclotomicNumber {
        -a
    }
    fn is_zero(&self, a: &CyclotomicNumber) -> bool {
        a.is_zero()
    }
    fn k_binomial(&self, weight: i64, p: RootOrder) -> Result<CyclotomicNumber, FockError> {
        if p != self.order() {
            return Err(FockError::RootMismatch { requested: p, field: self.order() });
        }
        Ok(self.int(q_binom_at_root(weight, p)))
    }
}

/// A finitely supported vector of `F1` or `F2` over the ring `R`.
#[derive(Clone, Debug)]
pub struct FockVector<R: ScalarRing> {
    space: FockSpace,
    ring: R,
    terms: BTreeMap<(u32, u32), R::Elem>,
}

impl<R: ScalarRing> PartialEq for FockVector<R> {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.terms == other.terms
    }
}

impl<R: ScalarRing> FockVector<R> {
    pub fn zero(space: FockSpace, ring: R) -> Self {
        FockVector { space, ring, terms: BTreeMap::new() }
    }

    pub fn basis(label: FockLabel, ring: R) -> Self {
        let one = ring.int(1);
        let mut v = Self::zero(label.space, ring);
        v.add_term(label.r1, label.r2, one);
        v
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(r1, r2)` order.
    pub fn terms(&self) -> impl Iterator<Item = (FockLabel, &R::Elem)> {
        let space = self.space;
        self.terms.iter().map(move |(&(r1, r2), c)| (FockLabel { space, r1, r2 }, c))
    }

    pub fn coeff(&self, label: &FockLabel) -> R::Elem {
        if label.space != self.space {
            return self.ring.zero();
        }
        self.terms.get(&(label.r1, label.r2)).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn add_term(&mut self, r1: u32, r2: u32, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        let next = match self.terms.get(&(r1, r2)) {
            Some(x) => self.ring.add(x, &c),
            None => c,
        };
        if self.ring.is_zero(&next) {
            self.terms.remove(&(r1, r2));
        } else {
            self.terms.insert((r1, r2), next);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &R::Elem) {
        assert_eq!(self.space, other.space);
        for (&(r1, r2), x) in other.terms.iter() {
            let y = self.ring.mul(x, c);
            self.add_term(r1, r2, y);
        }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(self.space, self.ring.clone());
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &self.ring.int(-1));
        out
    }
}

impl<R: ScalarRing> fmt::Display for FockVector<R> {
    /// `c · f(r1,r2) + ...`, ascending labels.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().map(|(l, c)| format!("({c}) · {l}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Closed-form action of `g` on one basis vector, as `(r1, r2, coeff)`.
/// Targets with a negative index are the zero vector and are omitted.
pub fn act_on_label<R: ScalarRing>(
    ring: &R,
    g: &UGenerator,
    label: &FockLabel,
) -> Result<Vec<(u32, u32, R::Elem)>, FockError> {
    g.validate()?;
    let (r1, r2) = (label.r1 as i64, label.r2 as i64);
    let w = label.weight_value();
    let out = match (label.space, *g) {
        (_, UGenerator::K) => vec![(r1, r2, ring.q_pow(w))],
        (_, UGenerator::KInv) => vec![(r1, r2, ring.q_pow(-w))],
        (_, UGenerator::KBinomial(p)) => vec![(r1, r2, ring.k_binomial(w, p)?)],
        (FockSpace::F1, UGenerator::E(r)) => {
            let r = r as i64;
            vec![(r1 + r, r2 - r, ring.q_binomial(r + r1, r))]
        }
        (FockSpace::F1, UGenerator::F(r)) => {
            let r = r as i64;
            vec![(r1 - r, r2 + r, ring.q_binomial(r + r2, r))]
        }
        (FockSpace::F2, UGenerator::E(r)) => {
            let r = r as i64;
            vec![(r1 - r, r2 - r, ring.q_binomial(r2, r2 - r))]
        }
        (FockSpace::F2, UGenerator::F(r)) => {
            let r = r as i64;
            let c = ring.q_binomial(r + r1, r);
            let c = if r % 2 == 1 { ring.neg(&c) } else { c };
            vec![(r1 + r, r2 + r, c)]
        }
    };
    Ok(out
        .into_iter()
        .filter(|(a, b, c)| *a >= 0 && *b >= 0 && !ring.is_zero(c))
        .map(|(a, b, c)| (a as u32, b as u32, c))
        .collect())
}

/// Action of `g` on `v` under the given realization, by the closed forms.
pub fn act<R: ScalarRing>(g: &UGenerator, v: &FockVector<R>, which: Realization) -> Result<FockVector<R>, FockError> {
    check_space(which, v.space)?;
    let ring = v.ring();
    let mut out = FockVector::zero(v.space, ring.clone());
    for (label, c) in v.terms() {
        for (a, b, x) in act_on_label(ring, g, &label)? {
            out.add_term(a, b, ring.mul(&x, c));
        }
    }
    Ok(out)
}

fn check_space(which: Realization, space: FockSpace) -> Result<(), FockError> {
    if which.space() == space {
        Ok(())
    } else {
        Err(FockError::SpaceMismatch { realization: which, expected: which.space(), got: space })
    }
}

/// The action computed from the definition: multiply the boson image of
/// `g` into the label's creator monomial, normal order, and let the result
/// hit the vacuum (annihilators kill it, `K_i` fix it).
pub fn act_oracle(g: &UGenerator, label: &FockLabel, which: Realization) -> Result<FockVector<GenericQ>, FockError> {
    oracle_with(&BosonImage::new(which), g, label)
}

/// [`act_oracle`] for an arbitrary (possibly corrupted) boson image.
pub fn oracle_with(image: &BosonImage, g: &UGenerator, label: &FockLabel) -> Result<FockVector<GenericQ>, FockError> {
    check_space(image.realization(), label.space)?;
    let product = multiply(&image.image(g)?, &label.creator_element())?;
    Ok(vacuum_projection(&product, label.space))
}

fn vacuum_projection(x: &BosonElement, space: FockSpace) -> FockVector<GenericQ> {
    let mut out = FockVector::zero(space, GenericQ);
    for (m, c) in x.terms() {
        if m.s1 == 0 && m.s2 == 0 {
            out.add_term(m.r1, m.r2, c.clone());
        }
    }
    out
}

/// Coefficient-wise image under `q -> eps`.
pub fn specialize_vector(v: &FockVector<GenericQ>, ring: &AtRoot) -> FockVector<AtRoot> {
    let mut out = FockVector::zero(v.space, ring.clone());
    for (label, c) in v.terms() {
        out.add_term(label.r1, label.r2, specialize(c, ring.field()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn p(n: i64) -> RootOrder {
        RootOrder::new(n).unwrap()
    }

    #[test]
    fn e_on_f11() {
        let v = FockVector::basis(FockLabel::f(1, 1), GenericQ);
        let w = act(&UGenerator::E(1), &v, Realization::First).unwrap();
        let mut expected = FockVector::zero(FockSpace::F1, GenericQ);
        expected.add_term(2, 0, lp(&[(1, 1), (-1, 1)]));
        assert_eq!(w, expected);
        let oracle = act_oracle(&UGenerator::E(1), &FockLabel::f(1, 1), Realization::First).unwrap();
        assert_eq!(oracle, expected);
    }

    #[test]
    fn f_divided_p_on_weyl_vector() {
        // p = 3, m = 10, v_1 = f(9, 1): f^(3) v_1 = (1_1 + 1) v_4 = v_4
        let ring = AtRoot::new(p(3));
        let v = FockVector::basis(FockLabel::f(9, 1), ring.clone());
        let w = act(&UGenerator::F(3), &v, Realization::First).unwrap();
        assert_eq!(w, FockVector::basis(FockLabel::f(6, 4), ring));
    }

    #[test]
    fn e_kills_g_with_no_second_mode() {
        for r1 in 0..4 {
            let v = FockVector::basis(FockLabel::g(r1, 0), GenericQ);
            assert!(act(&UGenerator::E(1), &v, Realization::Second).unwrap().is_zero());
        }
    }

    #[test]
    fn oracle_second_realization() {
        let f = act_oracle(&UGenerator::F(1), &FockLabel::g(0, 0), Realization::Second).unwrap();
        let mut expected = FockVector::zero(FockSpace::F2, GenericQ);
        expected.add_term(1, 1, LaurentPoly::constant(-1));
        assert_eq!(f, expected);
        let k = act_oracle(&UGenerator::K, &FockLabel::g(2, 3), Realization::Second).unwrap();
        assert_eq!(k.coeff(&FockLabel::g(2, 3)), LaurentPoly::q_pow(-6));
    }

    #[test]
    fn space_mismatch() {
        let v = FockVector::basis(FockLabel::g(0, 0), GenericQ);
        assert!(matches!(act(&UGenerator::K, &v, Realization::First), Err(FockError::SpaceMismatch { .. })));
        assert!(act_oracle(&UGenerator::K, &FockLabel::f(0, 0), Realization::Second).is_err());
    }

    #[test]
    fn weights() {
        let w = weight_of(&FockLabel::f(3, 1), p(5));
        assert_eq!((w.lambda, w.digits.n0, w.digits.n1), (2, 2, 0));
        let w = weight_of(&FockLabel::g(0, 3), p(3));
        assert_eq!((w.lambda, w.digits.n0, w.digits.n1), (-4, 2, -2));
        let w = weight_of(&FockLabel::g(0, 0), p(5));
        assert_eq!((w.lambda, w.digits.n0, w.digits.n1), (-1, 4, -1));
    }

    #[test]
    fn specialization_of_vectors() {
        let ring = AtRoot::new(p(3));
        let mut v = FockVector::zero(FockSpace::F1, GenericQ);
        v.add_term(0, 0, crate::arith::q_int(3));
        assert!(specialize_vector(&v, &ring).is_zero());

        let mut v = FockVector::zero(FockSpace::F1, GenericQ);
        v.add_term(1, 2, LaurentPoly::one());
        v.add_term(0, 0, LaurentPoly::q_pow(3));
        let s = specialize_vector(&v, &ring);
        assert!(s.coeff(&FockLabel::f(0, 0)).is_one());
        assert!(s.coeff(&FockLabel::f(1, 2)).is_one());

        let mut v = FockVector::zero(FockSpace::F2, GenericQ);
        v.add_term(1, 1, q_binomial(4, 2));
        let s = specialize_vector(&v, &ring);
        assert_eq!(s.coeff(&FockLabel::g(1, 1)), q_binomial_at_eps(ring.field(), 4, 2));
    }

    #[test]
    fn k_binomial_eigenvalue() {
        let ring = AtRoot::new(p(5));
        let v = FockVector::basis(FockLabel::g(0, 0), ring.clone());
        let w = act(&UGenerator::KBinomial(p(5)), &v, Realization::Second).unwrap();
        assert_eq!(w, v.scale(&ring.int(-1)));
        assert!(matches!(
            act(&UGenerator::KBinomial(p(3)), &v, Realization::Second),
            Err(FockError::RootMismatch { .. })
        ));
        let g = act(&UGenerator::KBinomial(p(5)), &FockVector::basis(FockLabel::f(7, 0), GenericQ), Realization::First)
            .unwrap();
        assert_eq!(g.coeff(&FockLabel::f(7, 0)), q_binomial(7, 5));
    }

    fn generators(max_r: u32) -> Vec<UGenerator> {
        let mut gens = vec![UGenerator::K, UGenerator::KInv];
        for r in 1..=max_r {
            gens.push(UGenerator::E(r));
            gens.push(UGenerator::F(r));
        }
        gens
    }

    #[test]
    fn closed_form_matches_oracle_p3() {
        for which in [Realization::First, Realization::Second] {
            for g in generators(4) {
                for r1 in 0..=5 {
                    for r2 in 0..=5 {
                        let label = FockLabel::new(which.space(), r1, r2);
                        let v = FockVector::basis(label, GenericQ);
                        assert_eq!(
                            act(&g, &v, which).unwrap(),
                            act_oracle(&g, &label, which).unwrap(),
                            "{g} on {label}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn weight_shift_and_sector() {
        for which in [Realization::First, Realization::Second] {
            for g in generators(7) {
                let shift = match g {
                    UGenerator::E(r) => 2 * r as i64,
                    UGenerator::F(r) => -2 * r as i64,
                    _ => 0,
                };
                for r1 in 0..=9 {
                    for r2 in 0..=9 {
                        let label = FockLabel::new(which.space(), r1, r2);
                        for (a, b, _) in act_on_label(&GenericQ, &g, &label).unwrap() {
                            let target = FockLabel::new(which.space(), a, b);
                            assert_eq!(target.weight_value(), label.weight_value() + shift);
                            match which {
                                Realization::First => assert_eq!(a + b, r1 + r2),
                                Realization::Second => {
                                    assert_eq!(b as i64 - a as i64, r2 as i64 - r1 as i64)
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn k_has_order_p_at_root() {
        for pp in [3, 5, 7] {
            let ring = AtRoot::new(p(pp));
            for which in [Realization::First, Realization::Second] {
                for r1 in 0..8 {
                    for r2 in 0..8 {
                        let v = FockVector::basis(FockLabel::new(which.space(), r1, r2), ring.clone());
                        let mut w = v.clone();
                        for _ in 0..pp {
                            w = act(&UGenerator::K, &w, which).unwrap();
                        }
                        assert_eq!(w, v);
                    }
                }
            }
        }
    }
}

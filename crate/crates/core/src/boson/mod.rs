//! The rank-2 q-boson algebra `B_q(2)`:
//!
//! ```text
//! a_i a_i+ - q^2 a_i+ a_i = 1,   [a_i, a_j+] = 0 (i != j),
//! K_i a_j+ K_i^-1 = q^(delta_ij) a_j+,   K_i a_j K_i^-1 = q^(-delta_ij) a_j,
//! ```
//!
//! together with its two restricted integral forms over `Z[q, q^-1]` and PBW
//! normal ordering of arbitrary generator words.

pub mod reorder;
mod rewrite;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{q_factorial, LaurentPoly};

use rewrite::{normalize, Letter};
pub use rewrite::{DividedKey, Frac, FractionalElement, Strategy};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BosonError {
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("cannot combine elements of forms {left} and {right}")]
    FormMismatch { left: Form, right: Form },
    #[error("coefficient of {monomial} is not integral: ({numerator}) / ({denominator})")]
    NotIntegral { monomial: String, numerator: String, denominator: String },
}

/// Which restricted integral form a PBW basis belongs to.
///
/// * `Res1`: `a1+^(r1) a2+^(r2) a1^s1 a2^s2 K1^t1 K2^t2`
/// * `Res2`: `a1+^(r1) a2+^r2 a1^s1 a2^(s2) K1^t1 K2^t2`
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Form {
    Res1,
    Res2,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Res1 => "res1",
            Form::Res2 => "res2",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GenKind {
    /// `a^n`
    A,
    /// `a+^n`
    APlus,
    /// `a^(n)`
    ADivided,
    /// `a+^(n)`
    APlusDivided,
    /// `K^n`
    K,
    /// `K^-n`
    KInv,
}

/// A power of one generator of `B_q(2)` on site 1 or 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    kind: GenKind,
    site: u8,
    power: u32,
}

impl Generator {
    pub fn new(kind: GenKind, site: u8, power: u32) -> Result<Self, BosonError> {
        if !(1..=2).contains(&site) {
            return Err(BosonError::InvalidGenerator(format!("site {site} not in {{1, 2}}")));
        }
        if power == 0 {
            return Err(BosonError::InvalidGenerator("power must be at least 1".into()));
        }
        Ok(Generator { kind, site, power })
    }

    fn make(kind: GenKind, site: u8, power: u32) -> Self {
        Self::new(kind, site, power).expect("valid generator")
    }

    pub fn a(site: u8, n: u32) -> Self {
        Self::make(GenKind::A, site, n)
    }

    pub fn a_plus(site: u8, n: u32) -> Self {
        Self::make(GenKind::APlus, site, n)
    }

    pub fn a_divided(site: u8, n: u32) -> Self {
        Self::make(GenKind::ADivided, site, n)
    }

    pub fn a_plus_divided(site: u8, n: u32) -> Self {
        Self::make(GenKind::APlusDivided, site, n)
    }

    pub fn k(site: u8, n: u32) -> Self {
        Self::make(GenKind::K, site, n)
    }

    pub fn k_inv(site: u8, n: u32) -> Self {
        Self::make(GenKind::KInv, site, n)
    }

    pub fn kind(&self) -> GenKind {
        self.kind
    }

    pub fn site(&self) -> u8 {
        self.site
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    fn letter(&self) -> Letter {
        let (site, n) = (self.site, self.power);
        match self.kind {
            GenKind::A => Letter::Ann { site, divided: false, n },
            GenKind::ADivided => Letter::Ann { site, divided: true, n },
            GenKind::APlus => Letter::Cre { site, divided: false, n },
            GenKind::APlusDivided => Letter::Cre { site, divided: true, n },
            GenKind::K => Letter::K { site, exp: n as i64 },
            GenKind::KInv => Letter::K { site, exp: -(n as i64) },
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, n) = (self.site, self.power);
        match self.kind {
            GenKind::A => write!(f, "a{i}^{n}"),
            GenKind::APlus => write!(f, "a{i}+^{n}"),
            GenKind::ADivided => write!(f, "a{i}^({n})"),
            GenKind::APlusDivided => write!(f, "a{i}+^({n})"),
            GenKind::K => write!(f, "K{i}^{n}"),
            GenKind::KInv => write!(f, "K{i}^-{n}"),
        }
    }
}

/// A PBW basis monomial of one of the restricted forms.
///
/// Field order gives the lexicographic order on `(r1, r2, s1, s2, t1, t2)`
/// used for printing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PbwMonomial {
    pub r1: u32,
    pub r2: u32,
    pub s1: u32,
    pub s2: u32,
    pub t1: i64,
    pub t2: i64,
    pub form: Form,
}

impl PbwMonomial {
    pub fn unit(form: Form) -> Self {
        PbwMonomial { r1: 0, r2: 0, s1: 0, s2: 0, t1: 0, t2: 0, form }
    }

    fn key(&self) -> DividedKey {
        DividedKey { r1: self.r1, r2: self.r2, s1: self.s1, s2: self.s2, t1: self.t1, t2: self.t2 }
    }

    fn from_key(k: &DividedKey, form: Form) -> Self {
        PbwMonomial { r1: k.r1, r2: k.r2, s1: k.s1, s2: k.s2, t1: k.t1, t2: k.t2, form }
    }

    /// Product of the factorials relating this monomial to the fully divided
    /// one: `monomial = factor * divided monomial`.
    fn divided_factor(&self) -> LaurentPoly {
        let f = |n: u32| q_factorial(n as i64).expect("nonnegative");
        match self.form {
            Form::Res1 => &f(self.s1) * &f(self.s2),
            Form::Res2 => &f(self.r2) * &f(self.s1),
        }
    }

    fn letters(&self) -> Vec<Letter> {
        let res2 = self.form == Form::Res2;
        vec![
            Letter::Cre { site: 1, divided: true, n: self.r1 },
            Letter::Cre { site: 2, divided: !res2, n: self.r2 },
            Letter::Ann { site: 1, divided: false, n: self.s1 },
            Letter::Ann { site: 2, divided: res2, n: self.s2 },
            Letter::K { site: 1, exp: self.t1 },
            Letter::K { site: 2, exp: self.t2 },
        ]
    }
}

impl fmt::Display for PbwMonomial {
    /// `a1+^(r1) a2+^(r2) a1^s1 a2^s2 K1^t1 K2^t2` with zero exponents
    /// omitted; `res2` prints `a2+^r2` and `a2^(s2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let res2 = self.form == Form::Res2;
        let mut parts = Vec::new();
        if self.r1 > 0 {
            parts.push(format!("a1+^({})", self.r1));
        }
        if self.r2 > 0 {
            parts.push(if res2 { format!("a2+^{}", self.r2) } else { format!("a2+^({})", self.r2) });
        }
        if self.s1 > 0 {
            parts.push(format!("a1^{}", self.s1));
        }
        if self.s2 > 0 {
            parts.push(if res2 { format!("a2^({})", self.s2) } else { format!("a2^{}", self.s2) });
        }
        if self.t1 != 0 {
            parts.push(format!("K1^{}", self.t1));
        }
        if self.t2 != 0 {
            parts.push(format!("K2^{}", self.t2));
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// An element of `B_q^res1(2)` or `B_q^res2(2)`: a finite combination of PBW
/// monomials of one form with Laurent polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BosonElement {
    form: Form,
    terms: BTreeMap<PbwMonomial, LaurentPoly>,
}

impl BosonElement {
    pub fn zero(form: Form) -> Self {
        BosonElement { form, terms: BTreeMap::new() }
    }

    pub fn one(form: Form) -> Self {
        Self::monomial(PbwMonomial::unit(form), LaurentPoly::one())
    }

    pub fn monomial(m: PbwMonomial, coeff: LaurentPoly) -> Self {
        let mut out = Self::zero(m.form);
        out.add_term(m, coeff);
        out
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> LaurentPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: PbwMonomial, c: LaurentPoly) {
        assert_eq!(m.form, self.form);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.form);
        for (m, x) in self.terms.iter() {
            out.add_term(*m, x * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, BosonError> {
        self.check_form(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, BosonError> {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    fn check_form(&self, other: &Self) -> Result<(), BosonError> {
        if self.form == other.form {
            Ok(())
        } else {
            Err(BosonError::FormMismatch { left: self.form, right: other.form })
        }
    }

    /// The same element over `Q(q)` in the fully divided basis.
    pub fn to_fractional(&self) -> FractionalElement {
        let mut out = FractionalElement::default();
        for (m, c) in self.terms.iter() {
            out.add_term(m.key(), Frac::from_poly(c * &m.divided_factor()));
        }
        out
    }

    /// Coordinates of a `Q(q)` element in the basis of `form`, if integral.
    pub fn from_fractional(x: &FractionalElement, form: Form) -> Result<Self, BosonError> {
        let mut out = Self::zero(form);
        for (k, c) in x.terms() {
            let m = PbwMonomial::from_key(k, form);
            let den = &c.den * &m.divided_factor();
            let coeff = c.num.div_exact(&den).map_err(|_| BosonError::NotIntegral {
                monomial: m.to_string(),
                numerator: c.num.to_string(),
                denominator: den.to_string(),
            })?;
            out.add_term(m, coeff);
        }
        Ok(out)
    }

    fn letters(&self) -> impl Iterator<Item = (Vec<Letter>, &LaurentPoly)> {
        self.terms.iter().map(|(m, c)| (m.letters(), c))
    }
}

impl fmt::Display for BosonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let unit = PbwMonomial::unit(m.form);
                match (c.is_one(), *m == unit) {
                    (_, true) => format!("({c})"),
                    (true, false) => m.to_string(),
                    (false, false) => format!("({c}) {m}"),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Normal form of a word over `Q(q)`, independent of any integral form.
pub fn normal_form(word: &[Generator], strategy: Strategy) -> FractionalElement {
    normalize(word.iter().map(Generator::letter).collect(), strategy)
}

/// PBW expansion of a generator word in the basis of `form`.
pub fn normal_order(word: &[Generator], form: Form) -> Result<BosonElement, BosonError> {
    normal_order_with(word, form, Strategy::Leftmost)
}

pub fn normal_order_with(word: &[Generator], form: Form, strategy: Strategy) -> Result<BosonElement, BosonError> {
    BosonElement::from_fractional(&normal_form(word, strategy), form)
}

/// Product in PBW normal form.
pub fn multiply(x: &BosonElement, y: &BosonElement) -> Result<BosonElement, BosonError> {
    x.check_form(y)?;
    let mut acc = FractionalElement::default();
    for (wx, cx) in x.letters() {
        for (wy, cy) in y.letters() {
            let mut word = wx.clone();
            word.extend(wy);
            acc.add_scaled(&normalize(word, Strategy::Leftmost), &(cx * cy));
        }
    }
    BosonElement::from_fractional(&acc, x.form)
}

/// Rewrites `x` in the basis of `target`; fails when `x` does not lie in
/// that integral form.
pub fn convert_basis(x: &BosonElement, target: Form) -> Result<BosonElement, BosonError> {
    BosonElement::from_fractional(&x.to_fractional(), target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn mono(form: Form, r1: u32, r2: u32, s1: u32, s2: u32, t1: i64, t2: i64) -> PbwMonomial {
        PbwMonomial { r1, r2, s1, s2, t1, t2, form }
    }

    #[test]
    fn defining_relation_res1() {
        let x = normal_order(&[Generator::a(1, 1), Generator::a_plus(1, 1)], Form::Res1).unwrap();
        let mut expected = BosonElement::monomial(mono(Form::Res1, 1, 0, 1, 0, 0, 0), lp(&[(2, 1)]));
        expected = expected.add(&BosonElement::one(Form::Res1)).unwrap();
        assert_eq!(x, expected);
    }

    #[test]
    fn k_conjugates_divided_creator() {
        let w = [Generator::k(1, 1), Generator::a_plus_divided(1, 3), Generator::k_inv(1, 1)];
        let x = normal_order(&w, Form::Res1).unwrap();
        assert_eq!(x, BosonElement::monomial(mono(Form::Res1, 3, 0, 0, 0, 0, 0), lp(&[(3, 1)])));
    }

    #[test]
    fn divided_annihilator_past_two_creators() {
        // a a+ a+ = q^4 a+^2 a + (q^2 + 1) a+; in res2 site 1 creators are divided
        let w = [Generator::a_divided(1, 1), Generator::a_plus(1, 2)];
        let x = normal_order(&w, Form::Res2).unwrap();
        let expected = BosonElement::monomial(mono(Form::Res2, 2, 0, 1, 0, 0, 0), lp(&[(5, 1), (3, 1)]))
            .add(&BosonElement::monomial(mono(Form::Res2, 1, 0, 0, 0, 0, 0), lp(&[(2, 1), (0, 1)])))
            .unwrap();
        assert_eq!(x, expected);
        // same word on site 2, where res2 keeps ordinary creators
        let w = [Generator::a_divided(2, 1), Generator::a_plus(2, 2)];
        let x = normal_order(&w, Form::Res2).unwrap();
        assert_eq!(x.coeff(&mono(Form::Res2, 0, 2, 0, 1, 0, 0)), lp(&[(4, 1)]));
        assert_eq!(x.coeff(&mono(Form::Res2, 0, 1, 0, 0, 0, 0)), lp(&[(2, 1), (0, 1)]));
    }

    #[test]
    fn unit_and_noncommutativity() {
        let ap = normal_order(&[Generator::a_plus(1, 1)], Form::Res1).unwrap();
        let a = normal_order(&[Generator::a(1, 1)], Form::Res1).unwrap();
        assert_eq!(multiply(&BosonElement::one(Form::Res1), &ap).unwrap(), ap);
        let lhs = multiply(&a, &ap).unwrap();
        let rhs = multiply(&ap, &a).unwrap().scale(&lp(&[(2, 1)]));
        assert_eq!(lhs.sub(&rhs).unwrap(), BosonElement::one(Form::Res1));
        assert!(multiply(&a, &BosonElement::one(Form::Res2)).is_err());
    }

    #[test]
    fn basis_conversion() {
        let x = normal_order(&[Generator::a_plus(2, 2)], Form::Res2).unwrap();
        assert_eq!(x, BosonElement::monomial(mono(Form::Res2, 0, 2, 0, 0, 0, 0), LaurentPoly::one()));
        let y = convert_basis(&x, Form::Res1).unwrap();
        assert_eq!(y, BosonElement::monomial(mono(Form::Res1, 0, 2, 0, 0, 0, 0), lp(&[(1, 1), (-1, 1)])));
        let div = BosonElement::monomial(mono(Form::Res1, 0, 2, 0, 0, 0, 0), LaurentPoly::one());
        assert!(matches!(convert_basis(&div, Form::Res2), Err(BosonError::NotIntegral { .. })));
        let a1 = BosonElement::monomial(mono(Form::Res1, 1, 0, 0, 0, 0, 0), LaurentPoly::one());
        assert_eq!(convert_basis(&convert_basis(&a1, Form::Res2).unwrap(), Form::Res1).unwrap(), a1);
    }

    #[test]
    fn divided_square_is_not_in_res1() {
        let w = [Generator::a_divided(1, 2), Generator::a_plus_divided(1, 2)];
        assert!(matches!(normal_order(&w, Form::Res1), Err(BosonError::NotIntegral { .. })));
    }

    #[test]
    fn merge_rule_is_associative() {
        for l in 1..=6 {
            for m in 1..=6 {
                for n in 1..=6 {
                    let g = |k| BosonElement::monomial(mono(Form::Res1, k, 0, 0, 0, 0, 0), LaurentPoly::one());
                    let left = multiply(&multiply(&g(l), &g(m)).unwrap(), &g(n)).unwrap();
                    let right = multiply(&g(l), &multiply(&g(m), &g(n)).unwrap()).unwrap();
                    assert_eq!(left, right);
                    // q-multinomial [l+m+n]! / ([l]! [m]! [n]!)
                    let f = |k: u32| q_factorial(k as i64).unwrap();
                    let multinom = f(l + m + n).div_exact(&(&(&f(l) * &f(m)) * &f(n))).unwrap();
                    assert_eq!(left.coeff(&mono(Form::Res1, l + m + n, 0, 0, 0, 0, 0)), multinom);
                }
            }
        }
    }

    #[test]
    fn rendering() {
        let m = mono(Form::Res2, 1, 2, 0, 3, -1, 0);
        assert_eq!(m.to_string(), "a1+^(1) a2+^2 a2^(3) K1^-1");
        assert_eq!(PbwMonomial::unit(Form::Res1).to_string(), "1");
    }
}

//! Rewriting of generator words into PBW normal form.
//!
//! Words are rewritten over `Q(q)`: coefficients are kept as
//! numerator/denominator pairs of Laurent polynomials because a product such
//! as `a^(2) a+^(2)` leaves every integral form. Normal monomials are
//! collected in the fully divided basis `a1+^(r1) a2+^(r2) a1^(s1) a2^(s2)
//! K1^t1 K2^t2`, which contains both restricted bases up to factorials.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{q_binomial, q_factorial, LaurentPoly};

use super::reorder::{divided_past_ordinary, ordinary_past_divided};

/// Which reducible adjacent pair the rewriter contracts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Internal word letter: a power of one creator, annihilator or `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Letter {
    Cre { site: u8, divided: bool, n: u32 },
    Ann { site: u8, divided: bool, n: u32 },
    K { site: u8, exp: i64 },
}

impl Letter {
    /// Position in the normal order `a1+ a2+ a1 a2 K1 K2`.
    fn rank(&self) -> u8 {
        match *self {
            Letter::Cre { site, .. } => site - 1,
            Letter::Ann { site, .. } => 1 + site,
            Letter::K { site, .. } => 3 + site,
        }
    }

    fn is_unit(&self) -> bool {
        match *self {
            Letter::Cre { n, .. } | Letter::Ann { n, .. } => n == 0,
            Letter::K { exp, .. } => exp == 0,
        }
    }

    fn site(&self) -> u8 {
        match *self {
            Letter::Cre { site, .. } | Letter::Ann { site, .. } | Letter::K { site, .. } => site,
        }
    }

    /// Exponent `w` with `K_i X K_i^-1 = q^w X` on the letter's own site.
    fn charge(&self) -> i64 {
        match *self {
            Letter::Cre { n, .. } => n as i64,
            Letter::Ann { n, .. } => -(n as i64),
            Letter::K { .. } => 0,
        }
    }
}

/// Element of `Q(q)` as an unreduced fraction of Laurent polynomials.
#[derive(Clone)]
pub struct Frac {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl Frac {
    pub fn from_poly(num: LaurentPoly) -> Self {
        Frac { num, den: LaurentPoly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn scale(&self, c: &LaurentPoly) -> Frac {
        Frac { num: &self.num * c, den: self.den.clone() }
    }

    fn divide(&self, c: &LaurentPoly) -> Frac {
        Frac { num: self.num.clone(), den: &self.den * c }
    }

    fn mul(&self, other: &Frac) -> Frac {
        Frac { num: &self.num * &other.num, den: &self.den * &other.den }
    }

    fn add_assign(&mut self, other: &Frac) {
        if self.den == other.den {
            self.num += &other.num;
        } else {
            self.num = &(&self.num * &other.den) + &(&other.num * &self.den);
            self.den = &self.den * &other.den;
        }
    }

    /// Tries to write the fraction as a Laurent polynomial.
    pub fn to_poly(&self) -> Option<LaurentPoly> {
        self.num.div_exact(&self.den).ok()
    }
}

impl PartialEq for Frac {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Debug for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_poly() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({}) / ({})", self.num, self.den),
        }
    }
}

/// Exponents of a monomial in the fully divided basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DividedKey {
    pub r1: u32,
    pub r2: u32,
    pub s1: u32,
    pub s2: u32,
    pub t1: i64,
    pub t2: i64,
}

/// An element of `B_q(2)` over `Q(q)` in the fully divided PBW basis.
#[derive(Clone, Debug, Default)]
pub struct FractionalElement {
    pub(crate) terms: BTreeMap<DividedKey, Frac>,
}

impl FractionalElement {
    pub fn terms(&self) -> impl Iterator<Item = (&DividedKey, &Frac)> {
        self.terms.iter()
    }

    pub(crate) fn add_term(&mut self, key: DividedKey, c: Frac) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(x) => {
                x.add_assign(&c);
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &FractionalElement, c: &LaurentPoly) {
        for (k, v) in other.terms.iter() {
            self.add_term(*k, v.scale(c));
        }
    }
}

impl PartialEq for FractionalElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().all(|(k, v)| other.terms.get(k).is_some_and(|w| v == w))
    }
}

fn factorial(n: u32) -> LaurentPoly {
    q_factorial(n as i64).expect("nonnegative")
}

fn to_divided(divided: bool, n: u32) -> LaurentPoly {
    if divided {
        LaurentPoly::one()
    } else {
        factorial(n)
    }
}

/// Pairs `(x, y)` adjacent in a word that are out of order or mergeable.
fn reducible(x: &Letter, y: &Letter) -> bool {
    x.rank() >= y.rank()
}

/// Rewrites the reducible pair `(x, y)` into a sum of shorter-or-sorted
/// replacements.
fn rewrite_pair(x: Letter, y: Letter) -> Vec<(Frac, Vec<Letter>)> {
    use Letter::*;
    let one = || Frac::from_poly(LaurentPoly::one());
    match (x, y) {
        (K { site: i, exp: a }, K { site: j, exp: b }) if i == j => {
            vec![(one(), vec![K { site: i, exp: a + b }])]
        }
        (K { .. }, K { .. }) => vec![(one(), vec![y, x])],
        (K { site, exp }, other) => {
            let w = if other.site() == site { exp * other.charge() } else { 0 };
            vec![(Frac::from_poly(LaurentPoly::q_pow(w)), vec![other, x])]
        }
        (Cre { site, divided: d1, n: a }, Cre { divided: d2, n: b, .. })
        | (Ann { site, divided: d1, n: a }, Ann { divided: d2, n: b, .. })
            if x.rank() == y.rank() =>
        {
            let make = |divided, n| match x {
                Cre { .. } => Cre { site, divided, n },
                _ => Ann { site, divided, n },
            };
            if !d1 && !d2 {
                vec![(one(), vec![make(false, a + b)])]
            } else {
                let c = &(&to_divided(d1, a) * &to_divided(d2, b)) * &q_binomial((a + b) as i64, a as i64);
                vec![(Frac::from_poly(c), vec![make(true, a + b)])]
            }
        }
        (Ann { site: i, divided: da, n }, Cre { site: j, divided: dc, n: m }) if i == j => {
            reorder_same_site(i, da, n, dc, m)
        }
        // creators/annihilators on different sites commute
        _ => vec![(one(), vec![y, x])],
    }
}

/// `Ann_i Cre_i` via the closed forms, converting flavors as needed.
fn reorder_same_site(site: u8, da: bool, n: u32, dc: bool, m: u32) -> Vec<(Frac, Vec<Letter>)> {
    let build = |terms: Vec<super::reorder::ReorderTerm>, cre_div: bool, ann_div: bool, pre: Frac| {
        terms
            .into_iter()
            .map(|t| {
                (
                    pre.scale(&t.coeff),
                    vec![
                        Letter::Cre { site, divided: cre_div, n: t.creator },
                        Letter::Ann { site, divided: ann_div, n: t.annihilator },
                    ],
                )
            })
            .collect()
    };
    let unit = Frac::from_poly(LaurentPoly::one());
    match (da, dc) {
        (false, true) => build(ordinary_past_divided(n, m), true, false, unit),
        (true, false) => build(divided_past_ordinary(n, m), false, true, unit),
        // a+^m = [m]! a+^(m)
        (false, false) => build(ordinary_past_divided(n, m), true, false, Frac::from_poly(factorial(m))),
        // a+^(m) = a+^m / [m]!
        (true, true) => build(divided_past_ordinary(n, m), false, true, unit.divide(&factorial(m))),
    }
}

fn find_pair(word: &[Letter], strategy: Strategy) -> Option<usize> {
    let mut idx = (0..word.len().saturating_sub(1)).filter(|&i| reducible(&word[i], &word[i + 1]));
    match strategy {
        Strategy::Leftmost => idx.next(),
        Strategy::Rightmost => idx.next_back(),
    }
}

/// Normal form of a sorted word with no repeated letter kinds.
fn collect(word: &[Letter]) -> (DividedKey, LaurentPoly) {
    let mut key = DividedKey { r1: 0, r2: 0, s1: 0, s2: 0, t1: 0, t2: 0 };
    let mut scale = LaurentPoly::one();
    for l in word {
        match *l {
            Letter::Cre { site, divided, n } => {
                scale = &scale * &to_divided(divided, n);
                if site == 1 {
                    key.r1 = n
                } else {
                    key.r2 = n
                }
            }
            Letter::Ann { site, divided, n } => {
                scale = &scale * &to_divided(divided, n);
                if site == 1 {
                    key.s1 = n
                } else {
                    key.s2 = n
                }
            }
            Letter::K { site, exp } => {
                if site == 1 {
                    key.t1 = exp
                } else {
                    key.t2 = exp
                }
            }
        }
    }
    (key, scale)
}

/// Rewrites `coeff * word` until every term is a normal monomial.
pub(crate) fn normalize(word: Vec<Letter>, strategy: Strategy) -> FractionalElement {
    let mut out = FractionalElement::default();
    let mut pending = vec![(Frac::from_poly(LaurentPoly::one()), strip(word))];
    while let Some((c, word)) = pending.pop() {
        match find_pair(&word, strategy) {
            None => {
                let (key, scale) = collect(&word);
                out.add_term(key, c.scale(&scale));
            }
            Some(i) => {
                for (d, mid) in rewrite_pair(word[i], word[i + 1]) {
                    if d.is_zero() {
                        continue;
                    }
                    let mut next = Vec::with_capacity(word.len() + 1);
                    next.extend_from_slice(&word[..i]);
                    next.extend(mid);
                    next.extend_from_slice(&word[i + 2..]);
                    pending.push((c.mul(&d), strip(next)));
                }
            }
        }
    }
    out
}

fn strip(mut word: Vec<Letter>) -> Vec<Letter> {
    word.retain(|l| !l.is_unit());
    word
}

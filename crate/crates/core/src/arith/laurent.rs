//! Sparse Laurent polynomials in `q` with arbitrary-precision integer
//! coefficients, i.e. elements of `Z[q, q^-1]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ArithError;

/// An element of `Z[q, q^-1]`.
///
/// Stored as a map from exponent to coefficient. Zero coefficients are never
/// stored, so the zero polynomial is the empty map and structural equality is
/// ring equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^exp`.
    pub fn monomial<C: Into<BigInt>>(c: C, exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale<C: Into<BigInt>>(&self, c: C) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, x)| (*e, x * &c)).collect() }
    }

    /// Image under the bar involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Integer power, `n >= 0`.
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division in `Z[q, q^-1]`.
    ///
    /// Long division from the top degree down; the divisor's leading
    /// coefficient must divide every intermediate leading coefficient. Any
    /// nonzero remainder is reported, so `Ok` means `self = quotient * divisor`
    /// exactly.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, ArithError> {
        let (&d_top, d_lc) = divisor.terms.iter().next_back().ok_or(ArithError::DivisionByZero)?;
        let d_low = divisor.min_exp().unwrap();
        let inexact = |rem: String| ArithError::InexactDivision {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
            remainder: rem,
        };
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        if d_top == d_low {
            let mut out = BTreeMap::new();
            for (e, c) in &self.terms {
                let (qc, r) = c.div_rem(d_lc);
                if !r.is_zero() {
                    return Err(inexact(format!("nonzero remainder at q^{e}")));
                }
                out.insert(e - d_top, qc);
            }
            return Ok(LaurentPoly { terms: out });
        }
        let low = self.min_exp().unwrap();
        let top = self.max_exp().unwrap();
        if top - d_top < low - d_low {
            return Err(inexact(self.to_string()));
        }
        let dvec: Vec<BigInt> = (d_low..=d_top).map(|e| divisor.terms.get(&e).cloned().unwrap_or_default()).collect();
        let mut rem: Vec<BigInt> = (low..=top).map(|e| self.terms.get(&e).cloned().unwrap_or_default()).collect();
        let qlen = ((top - d_top) - (low - d_low) + 1) as usize;
        let dl = dvec.len();
        let mut quot = vec![BigInt::zero(); qlen];
        for qi in (0..qlen).rev() {
            let lead = qi + dl - 1;
            if rem[lead].is_zero() {
                continue;
            }
            let (qc, r) = rem[lead].div_rem(d_lc);
            if !r.is_zero() {
                return Err(inexact(format!("nonzero remainder at q^{}", low + lead as i64)));
            }
            for (j, c) in dvec.iter().enumerate() {
                if !c.is_zero() {
                    rem[qi + j] -= c * &qc;
                }
            }
            quot[qi] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            let r = LaurentPoly::from_dense(low, rem);
            return Err(inexact(r.to_string()));
        }
        Ok(LaurentPoly::from_dense(low - d_low, quot))
    }

    fn from_dense(offset: i64, coeffs: Vec<BigInt>) -> LaurentPoly {
        LaurentPoly {
            terms: coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (offset + i as i64, c))
                .collect(),
        }
    }

    /// Evaluates at an integer point `q = x` (`x` must be nonzero when
    /// negative exponents are present); used for cheap sanity checks.
    pub fn eval_rational(&self, x: &num_rational::BigRational) -> num_rational::BigRational {
        let mut acc = num_rational::BigRational::zero();
        for (e, c) in self.terms() {
            let xp =
                if e >= 0 { num_traits::pow(x.clone(), e as usize) } else { num_traits::pow(x.recip(), (-e) as usize) };
            acc += xp * num_rational::BigRational::from_integer(c.clone());
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents, `c*q^k` terms, coefficient 1 and exponent 0
    /// omitted: `q^2 + 1 + q^-2`, `-q - q^-1`, `2*q^3 - 5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let var = match *e {
                0 => String::new(),
                1 => "q".to_string(),
                k => format!("q^{k}"),
            };
            if var.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{abs}*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms.iter() {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms.iter() {
            self.add_term(*e, -c);
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -(self.clone())
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (short, long) = if self.terms.len() <= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let Some((&e, c)) = short.terms.iter().next() else {
            return LaurentPoly::zero();
        };
        if short.terms.len() == 1 {
            return if c.is_one() { long.shift(e) } else { long.scale(c.clone()).shift(e) };
        }
        // dense accumulation over the exponent range of the product
        let lo = short.terms.keys().next().unwrap() + long.terms.keys().next().unwrap();
        let hi = short.terms.keys().next_back().unwrap() + long.terms.keys().next_back().unwrap();
        let mut acc = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e1, c1) in short.terms.iter() {
            for (e2, c2) in long.terms.iter() {
                acc[(e1 + e2 - lo) as usize] += c1 * c2;
            }
        }
        LaurentPoly {
            terms: acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (lo + i as i64, c)).collect(),
        }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn zero_is_canonical() {
        let a = lp(&[(2, 1), (-1, 3)]);
        assert!((&a - &a).is_zero());
        assert_eq!(&a - &a, LaurentPoly::zero());
        assert_eq!(lp(&[(3, 0)]), LaurentPoly::zero());
    }

    #[test]
    fn rendering() {
        assert_eq!(lp(&[(2, 1), (0, 1), (-2, 1)]).to_string(), "q^2 + 1 + q^-2");
        assert_eq!(lp(&[(1, -1), (-1, -1)]).to_string(), "-q - q^-1");
        assert_eq!(lp(&[(3, 2), (0, -5)]).to_string(), "2*q^3 - 5");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn exact_division_and_remainder() {
        // (q^2 - q^-2) / (q - q^-1) = q + q^-1
        let num = lp(&[(2, 1), (-2, -1)]);
        let den = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(num.div_exact(&den).unwrap(), lp(&[(1, 1), (-1, 1)]));
        // 1 / (q + q^-1) is not a Laurent polynomial
        let two = lp(&[(1, 1), (-1, 1)]);
        assert!(matches!(LaurentPoly::one().div_exact(&two), Err(ArithError::InexactDivision { .. })));
        // integer content must divide too
        assert!(lp(&[(0, 3)]).div_exact(&lp(&[(0, 2)])).is_err());
        assert!(LaurentPoly::one().div_exact(&LaurentPoly::zero()).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i64..6, -20i64..20), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!(!a.terms().any(|(_, c)| c.is_zero()));
        }

        #[test]
        fn product_divides_back(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
        }
    }
}

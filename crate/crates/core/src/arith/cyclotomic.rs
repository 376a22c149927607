//! The cyclotomic field `Q(eps)` for `eps` a primitive `p`-th root of unity,
//! `p` odd.
//!
//! Elements are rational polynomials in `eps` of degree below `phi(p)`,
//! reduced modulo the cyclotomic polynomial `Phi_p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{q_binomial, ArithError, LaurentPoly, RootOrder};

/// `Phi_p(q)`, computed as `(q^p - 1) / prod_{d | p, d < p} Phi_d(q)`.
pub fn cyclotomic_polynomial(p: RootOrder) -> LaurentPoly {
    cyclotomic_any(p.get() as i64)
}

fn cyclotomic_any(n: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::from_terms([(n, 1i64), (0, -1)]);
    for d in (1..n).filter(|d| n % d == 0) {
        acc = acc.div_exact(&cyclotomic_any(d)).expect("cyclotomic recursion divides exactly");
    }
    acc
}

/// Dense rational polynomial helpers, low degree first.
mod dense {
    use super::*;

    pub fn trim(v: &mut Vec<BigRational>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    pub fn sub_scaled_shifted(a: &mut Vec<BigRational>, b: &[BigRational], c: &BigRational, shift: usize) {
        if a.len() < b.len() + shift {
            a.resize(b.len() + shift, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            a[i + shift] -= bi * c;
        }
        trim(a);
    }

    /// Quotient and remainder; `b` must be nonzero (trimmed).
    pub fn divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem = a.to_vec();
        trim(&mut rem);
        let db = b.len() - 1;
        let lead = b[db].clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(db).max(1)];
        while rem.len() > db {
            let shift = rem.len() - 1 - db;
            let c = rem.last().unwrap() / &lead;
            sub_scaled_shifted(&mut rem, b, &c, shift);
            quot[shift] = c;
        }
        trim(&mut quot);
        (quot, rem)
    }

    pub fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        let mut out: Vec<BigRational> = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
                let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
                x - y
            })
            .collect();
        trim(&mut out);
        out
    }
}

/// Arithmetic context for `Q(eps)`: the modulus and precomputed reductions of
/// `eps^k`, `0 <= k < p`.
#[derive(Debug)]
pub struct CyclotomicField {
    p: RootOrder,
    modulus: Vec<BigRational>,
    powers: Vec<Vec<BigRational>>,
    small_binomials: Vec<Vec<Vec<BigRational>>>,
}

impl CyclotomicField {
    pub fn new(p: RootOrder) -> Arc<Self> {
        let phi = cyclotomic_polynomial(p);
        let degree = phi.max_exp().unwrap() as usize;
        let modulus: Vec<BigRational> = (0..=degree as i64).map(|e| BigRational::from_integer(phi.coeff(e))).collect();
        let pu = p.get() as usize;
        let powers = (0..pu)
            .map(|k| {
                let mut x = vec![BigRational::zero(); k + 1];
                x[k] = BigRational::one();
                let mut r = dense::divmod(&x, &modulus).1;
                r.resize(degree, BigRational::zero());
                r
            })
            .collect();
        let mut field = CyclotomicField { p, modulus, powers, small_binomials: Vec::new() };
        // eps has exact multiplicative order p
        let mut one = vec![BigRational::zero(); degree];
        one[0] = BigRational::one();
        for k in 1..pu {
            assert_ne!(field.powers[k], one, "eps^{k} = 1 for a primitive {pu}-th root");
        }
        let mut x = vec![BigRational::zero(); pu + 1];
        x[pu] = BigRational::one();
        assert_eq!(dense::divmod(&x, &field.modulus).1, vec![BigRational::one()], "eps^p must be 1");

        field.small_binomials =
            (0..pu as i64).map(|a| (0..=a).map(|b| field.reduce_laurent(&q_binomial(a, b))).collect()).collect();
        Arc::new(field)
    }

    pub fn try_new(p: i64) -> Result<Arc<Self>, ArithError> {
        Ok(Self::new(RootOrder::new(p)?))
    }

    pub fn order(&self) -> RootOrder {
        self.p
    }

    /// `phi(p)`, the dimension of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce_laurent(&self, poly: &LaurentPoly) -> Vec<BigRational> {
        let p = self.p.get() as i64;
        let mut out = vec![BigRational::zero(); self.degree()];
        for (e, c) in poly.terms() {
            let c = BigRational::from_integer(c.clone());
            for (i, x) in self.powers[e.rem_euclid(p) as usize].iter().enumerate() {
                out[i] += x * &c;
            }
        }
        out
    }

    fn reduce_dense(&self, v: &[BigRational]) -> Vec<BigRational> {
        let d = self.degree();
        let p = self.p.get() as usize;
        let mut out = vec![BigRational::zero(); d];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j < d {
                out[j] += c;
            } else {
                for (i, x) in self.powers[j % p].iter().enumerate() {
                    out[i] += x * c;
                }
            }
        }
        out
    }
}

/// Image of `poly` under `q -> eps`.
pub fn specialize(poly: &LaurentPoly, field: &Arc<CyclotomicField>) -> CyclotomicNumber {
    CyclotomicNumber { field: Arc::clone(field), coeffs: field.reduce_laurent(poly) }
}

/// Gaussian binomial at `eps` by the q-Lucas rule
/// `[n over k] = C(n1, k1) [n0 over k0]` for `n, k >= 0`.
///
/// Negative `n` falls back to specializing the generic polynomial.
pub fn q_binomial_at_eps(field: &Arc<CyclotomicField>, n: i64, k: i64) -> CyclotomicNumber {
    if k < 0 {
        return CyclotomicNumber::zero(field);
    }
    if n < 0 {
        return specialize(&q_binomial(n, k), field);
    }
    let p = field.p.get() as i64;
    let (n0, n1) = (n % p, n / p);
    let (k0, k1) = (k % p, k / p);
    if k0 > n0 || k1 > n1 {
        return CyclotomicNumber::zero(field);
    }
    let lucas = binomial(n1, k1);
    let coeffs = field.small_binomials[n0 as usize][k0 as usize]
        .iter()
        .map(|c| c * BigRational::from_integer(lucas.clone()))
        .collect();
    CyclotomicNumber { field: Arc::clone(field), coeffs }
}

fn binomial(n: i64, k: i64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// An element of `Q(eps)`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        CyclotomicNumber { field: Arc::clone(field), coeffs: vec![BigRational::zero(); field.degree()] }
    }

    pub fn from_int<C: Into<BigInt>>(field: &Arc<CyclotomicField>, c: C) -> Self {
        Self::from_rational(field, BigRational::from_integer(c.into()))
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, c: BigRational) -> Self {
        let mut out = Self::zero(field);
        out.coeffs[0] = c;
        out
    }

    /// `eps^k` for any integer `k`.
    pub fn eps_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let p = field.p.get() as i64;
        CyclotomicNumber { field: Arc::clone(field), coeffs: field.powers[k.rem_euclid(p) as usize].clone() }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Coefficients of `1, eps, ..., eps^(phi(p)-1)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(|c| c.is_zero()).then(|| &self.coeffs[0])
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Phi_p`; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        let mut a = self.coeffs.clone();
        dense::trim(&mut a);
        if a.is_empty() {
            return None;
        }
        let (mut r0, mut r1) = (self.field.modulus.clone(), a);
        let (mut s0, mut s1) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = dense::divmod(&r0, &r1);
            let s2 = dense::sub(&s0, &dense::mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because Phi_p is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let scaled: Vec<BigRational> = s0.iter().map(|x| x * &c).collect();
        Some(CyclotomicNumber {
            coeffs: self.field.reduce_dense(&dense::divmod(&scaled, &self.field.modulus).1),
            field: Arc::clone(&self.field),
        })
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(self.field.p, other.field.p, "mixing elements of different cyclotomic fields");
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.p == other.field.p && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_field(rhs);
        CyclotomicNumber {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_field(rhs);
        CyclotomicNumber {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_field(rhs);
        let mut prod = vec![BigRational::zero(); 2 * self.coeffs.len()];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        CyclotomicNumber { coeffs: self.field.reduce_dense(&prod), field: Arc::clone(&self.field) }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber { field: Arc::clone(&self.field), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for CyclotomicNumber {
    /// Descending powers of `eps`, e.g. `-eps^3 - eps^2 + 1/2*eps - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "eps".to_string(),
                k => format!("eps^{k}"),
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

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo<{}>({self})", self.field.p.get())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{digits, q_int};
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn field(p: i64) -> Arc<CyclotomicField> {
        CyclotomicField::try_new(p).unwrap()
    }

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn cyclotomic_polynomials() {
        let cp = |p| cyclotomic_polynomial(RootOrder::new(p).unwrap());
        assert_eq!(cp(3), lp(&[(2, 1), (1, 1), (0, 1)]));
        assert_eq!(cp(5), lp(&[(4, 1), (3, 1), (2, 1), (1, 1), (0, 1)]));
        assert_eq!(cp(9), lp(&[(6, 1), (3, 1), (0, 1)]));
        assert_eq!(cp(15).max_exp(), Some(8));
        assert!(RootOrder::new(4).is_err());
        assert!(RootOrder::new(1).is_err());
    }

    #[test]
    fn specialization() {
        for p in [3, 5, 7, 9, 15] {
            let f = field(p);
            assert!(specialize(&q_int(p), &f).is_zero(), "[p] at eps, p = {p}");
        }
        let f5 = field(5);
        assert_eq!(specialize(&LaurentPoly::q_pow(6), &f5), CyclotomicNumber::eps_pow(&f5, 1));
        // q^-1 maps to eps^(p-1)
        assert_eq!(specialize(&LaurentPoly::q_pow(-1), &f5), CyclotomicNumber::eps_pow(&f5, 4));
    }

    #[test]
    fn four_choose_two_two_routes() {
        let f = field(3);
        let direct = specialize(&q_binomial(4, 2), &f);
        // [4][3]/([2][1]) evaluated in the field
        let num = &specialize(&q_int(4), &f) * &specialize(&q_int(3), &f);
        let den = specialize(&q_int(2), &f);
        // [3]_eps = 0 at p = 3, so the product route is the Lucas value C(1,0)[1 over 2] = 0
        assert!(num.is_zero());
        assert!(!den.is_zero());
        assert!(direct.is_zero());
        let f5 = field(5);
        let direct = specialize(&q_binomial(4, 2), &f5);
        let num = &specialize(&q_int(4), &f5) * &specialize(&q_int(3), &f5);
        let den = &specialize(&q_int(2), &f5) * &specialize(&q_int(1), &f5);
        assert_eq!(&direct * &den, num);
        assert_eq!(direct, &num * &den.inverse().unwrap());
    }

    #[test]
    fn lucas_matches_specialization() {
        for p in [3, 5, 7, 9] {
            let f = field(p);
            for n in 0..4 * p {
                for k in 0..=n + 1 {
                    assert_eq!(q_binomial_at_eps(&f, n, k), specialize(&q_binomial(n, k), &f), "p={p} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn binomial_at_root_is_high_digit() {
        for p in [3i64, 5, 7, 9] {
            let f = field(p);
            let rp = RootOrder::new(p).unwrap();
            for n in -50..=50 {
                let lhs = specialize(&q_binomial(n, p), &f);
                assert_eq!(lhs, CyclotomicNumber::from_int(&f, digits(n, rp).n1), "p={p} n={n}");
            }
        }
    }

    #[test]
    fn inverses() {
        let mut rng = StdRng::seed_from_u64(7);
        for p in [3, 5, 9] {
            let f = field(p);
            let mut done = 0;
            while done < 100 {
                let terms: Vec<(i64, i64)> = (0..4).map(|_| (rng.gen_range(-p..p), rng.gen_range(-9..10))).collect();
                let x = specialize(&LaurentPoly::from_terms(terms), &f);
                if x.is_zero() {
                    continue;
                }
                let inv = x.inverse().unwrap();
                assert!((&x * &inv).is_one(), "p={p} x={x}");
                done += 1;
            }
            assert!(CyclotomicNumber::zero(&f).inverse().is_none());
        }
    }

    #[test]
    fn rendering() {
        let f = field(5);
        let x = specialize(&lp(&[(1, 1), (-1, 1)]), &f);
        // eps + eps^4 = eps - (1 + eps + eps^2 + eps^3)
        assert_eq!(x.to_string(), "-eps^3 - eps^2 - 1");
        assert_eq!(CyclotomicNumber::from_int(&f, 2).to_string(), "2");
    }
}

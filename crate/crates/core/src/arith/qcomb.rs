//! Quantum integers, factorials and Gaussian binomials over `Z[q, q^-1]`.

use std::cell::RefCell;
use std::collections::HashMap;

use super::{ArithError, LaurentPoly};

/// Arguments up to this size are memoized per thread.
const CACHE_LIMIT: i64 = 256;

thread_local! {
    static FACTORIALS: RefCell<Vec<LaurentPoly>> = RefCell::new(vec![LaurentPoly::one()]);
    static BINOMIALS: RefCell<HashMap<(i64, i64), LaurentPoly>> = RefCell::new(HashMap::new());
}

/// `q^a - q^-a`.
fn q_diff(a: i64) -> LaurentPoly {
    LaurentPoly::from_terms([(a, 1i64), (-a, -1)])
}

/// The quantum integer `[n]_q = (q^n - q^-n) / (q - q^-1)`.
///
/// `[0] = 0` and `[-n] = -[n]`.
pub fn q_int(n: i64) -> LaurentPoly {
    let sign = n.signum();
    let k = n.abs();
    LaurentPoly::from_terms((0..k).map(|i| (k - 1 - 2 * i, sign)))
}

/// `[m]_q! = [m][m-1]...[1]`, with `[0]! = 1`.
pub fn q_factorial(m: i64) -> Result<LaurentPoly, ArithError> {
    if m < 0 {
        return Err(ArithError::NegativeFactorial(m));
    }
    if m > CACHE_LIMIT {
        return Ok((1..=m).fold(LaurentPoly::one(), |acc, k| &acc * &q_int(k)));
    }
    Ok(FACTORIALS.with(|cache| {
        let mut cache = cache.borrow_mut();
        while cache.len() <= m as usize {
            let k = cache.len() as i64;
            let next = &cache[k as usize - 1] * &q_int(k);
            cache.push(next);
        }
        cache[m as usize].clone()
    }))
}

/// Gaussian binomial `[n over m]_q = [n][n-1]...[n-m+1] / [m]!`.
///
/// Zero for `m < 0`. Any integer `n` is accepted. The product is built one
/// factor at a time as `B(n, k) = B(n, k-1) * [n-k+1] / [k]`; every
/// intermediate value is itself a Gaussian binomial, so each exact division
/// must succeed. The `(q - q^-1)` denominators cancel, so each step is a
/// multiplication by `q^a - q^-a` and an exact division by `q^k - q^-k`.
pub fn q_binomial(n: i64, m: i64) -> LaurentPoly {
    try_q_binomial(n, m).expect("Gaussian binomial division must be exact")
}

/// Fallible form of [`q_binomial`]; an `Err` means an arithmetic bug.
pub fn try_q_binomial(n: i64, m: i64) -> Result<LaurentPoly, ArithError> {
    if m < 0 {
        return Ok(LaurentPoly::zero());
    }
    if n.abs() > CACHE_LIMIT || m > CACHE_LIMIT {
        return binomial_uncached(n, m);
    }
    if let Some(b) = BINOMIALS.with(|c| c.borrow().get(&(n, m)).cloned()) {
        return Ok(b);
    }
    let b = binomial_uncached(n, m)?;
    BINOMIALS.with(|c| c.borrow_mut().insert((n, m), b.clone()));
    Ok(b)
}

fn binomial_uncached(n: i64, m: i64) -> Result<LaurentPoly, ArithError> {
    let mut acc = LaurentPoly::one();
    for k in 1..=m {
        let top = n - k + 1;
        if top == 0 {
            return Ok(LaurentPoly::zero());
        }
        acc = (&acc * &q_diff(top)).div_exact(&q_diff(k))?;
    }
    Ok(acc)
}

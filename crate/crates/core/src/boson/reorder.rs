//! Closed forms for moving a power of the annihilator past a power of the
//! creator on one site:
//!
//! ```text
//! a^n a+^(m)  = sum_{s=0}^{m} q^{n(s+m) + (s-m)(s+m+1)/2} [n over m-s] a+^(s) a^(n-m+s)
//! a^(n) a+^m  = sum_{s=0}^{m} q^{n(s+m) + (s-m)(s+m+1)/2} [m over s]   a+^s   a^(n-m+s)
//! ```

use crate::arith::{q_binomial, LaurentPoly};

/// One term `coeff * a+^{creator} a^{annihilator}` of a reordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReorderTerm {
    pub creator: u32,
    pub annihilator: u32,
    pub coeff: LaurentPoly,
}

fn exponent(n: i64, m: i64, s: i64) -> i64 {
    n * (s + m) + (s - m) * (s + m + 1) / 2
}

/// `a^n a+^(m)` as `sum coeff * a+^(s) a^(n-m+s)`.
///
/// Terms whose annihilator power would be negative carry a vanishing
/// binomial `[n over m-s]` with `m - s > n`; this is asserted.
pub fn ordinary_past_divided(n: u32, m: u32) -> Vec<ReorderTerm> {
    let (n, m) = (n as i64, m as i64);
    let mut out = Vec::new();
    for s in 0..=m {
        let binom = q_binomial(n, m - s);
        let ann = n - m + s;
        if ann < 0 {
            assert!(binom.is_zero(), "[{n} over {}] must vanish", m - s);
            continue;
        }
        if binom.is_zero() {
            continue;
        }
        out.push(ReorderTerm { creator: s as u32, annihilator: ann as u32, coeff: binom.shift(exponent(n, m, s)) });
    }
    out
}

/// `a^(n) a+^m` as `sum coeff * a+^s a^(n-m+s)`; terms with a negative
/// divided annihilator order are zero and dropped.
pub fn divided_past_ordinary(n: u32, m: u32) -> Vec<ReorderTerm> {
    let (n, m) = (n as i64, m as i64);
    (0..=m)
        .filter(|s| n - m + s >= 0)
        .map(|s| ReorderTerm {
            creator: s as u32,
            annihilator: (n - m + s) as u32,
            coeff: q_binomial(m, s).shift(exponent(n, m, s)),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn defining_relation() {
        // a a+ = q^2 a+ a + 1
        let t = ordinary_past_divided(1, 1);
        assert_eq!(t.len(), 2);
        assert!(t.contains(&ReorderTerm { creator: 1, annihilator: 1, coeff: lp(&[(2, 1)]) }));
        assert!(t.contains(&ReorderTerm { creator: 0, annihilator: 0, coeff: LaurentPoly::one() }));
        assert_eq!(t, divided_past_ordinary(1, 1));
    }

    #[test]
    fn a_past_two_creators() {
        // a a+ a+ = q^4 a+^2 a + (q^2 + 1) a+
        let t = divided_past_ordinary(1, 2);
        assert_eq!(
            t,
            vec![
                ReorderTerm { creator: 1, annihilator: 0, coeff: lp(&[(2, 1), (0, 1)]) },
                ReorderTerm { creator: 2, annihilator: 1, coeff: lp(&[(4, 1)]) },
            ]
        );
    }
}

//! Exact scalars: Laurent polynomials over the integers, q-combinatorics,
//! base-`p` digits, and the cyclotomic field the integral forms specialize to.

mod cyclotomic;
mod digits;
mod laurent;
mod qcomb;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cyclotomic::{cyclotomic_polynomial, q_binomial_at_eps, specialize, CyclotomicField, CyclotomicNumber};
pub use digits::{digits, q_binom_at_root, root_order, Digits};
pub use laurent::LaurentPoly;
pub use qcomb::{q_binomial, q_factorial, q_int, try_q_binomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("root order must be an odd integer greater than 1, got {0}")]
    InvalidRootOrder(i64),
    #[error("factorial of negative integer {0}")]
    NegativeFactorial(i64),
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("({dividend}) / ({divisor}) is not a Laurent polynomial: remainder {remainder}")]
    InexactDivision { dividend: String, divisor: String, remainder: String },
}

/// The order `p` of the root of unity: odd and greater than 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct RootOrder(u32);

impl RootOrder {
    pub fn new(p: i64) -> Result<Self, ArithError> {
        if p > 1 && p % 2 == 1 && p <= u32::MAX as i64 {
            Ok(RootOrder(p as u32))
        } else {
            Err(ArithError::InvalidRootOrder(p))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<i64> for RootOrder {
    type Error = ArithError;
    fn try_from(p: i64) -> Result<Self, Self::Error> {
        RootOrder::new(p)
    }
}

impl From<RootOrder> for i64 {
    fn from(p: RootOrder) -> i64 {
        p.0 as i64
    }
}

impl fmt::Display for RootOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

use serde::{Deserialize, Serialize};

use super::{ArithError, RootOrder};

/// Base-`p` split `n = n0 + p * n1` with `0 <= n0 < p`.
///
/// Negative `n` uses floor division, which is the convention under which
/// `[n over p]` at a primitive `p`-th root of unity equals `n1` for every
/// integer `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Digits {
    pub n0: i64,
    pub n1: i64,
}

impl Digits {
    pub fn of(n: i64, p: RootOrder) -> Self {
        let p = p.get() as i64;
        Digits { n0: n.rem_euclid(p), n1: n.div_euclid(p) }
    }

    pub fn value(&self, p: RootOrder) -> i64 {
        self.n0 + p.get() as i64 * self.n1
    }
}

/// Free-function form of [`Digits::of`].
pub fn digits(n: i64, p: RootOrder) -> Digits {
    Digits::of(n, p)
}

/// `[n over p]` evaluated at a primitive `p`-th root of unity, which is the
/// high digit `n1`.
pub fn q_binom_at_root(n: i64, p: RootOrder) -> i64 {
    Digits::of(n, p).n1
}

/// Validates a root order given as a plain integer.
pub fn root_order(p: i64) -> Result<RootOrder, ArithError> {
    RootOrder::new(p)
}

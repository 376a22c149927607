//! `U_q(sl2)` and its restricted form: divided-power generators, weights,
//! and the two boson realizations
//!
//! ```text
//! first:  e = K2^-1 a1+ a2,          f = K1^-1 a1 a2+,   K = K1 K2^-1
//! second: e = K1^-1 K2^-1 a1 a2,     f = -a1+ a2+,       K = q^-1 K1^-1 K2^-1
//! ```

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{q_factorial, CyclotomicNumber, Digits, LaurentPoly, RootOrder};
use crate::boson::{normal_order, BosonElement, BosonError, Form, Generator};
use crate::fock::{oracle_with, FockError, FockLabel, FockSpace, FockVector, GenericQ};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UqError {
    #[error("divided power order must be at least 1")]
    ZeroOrder,
    #[error("[K;0;{0}] has no boson image; it acts diagonally on weight vectors only")]
    Unsupported(RootOrder),
    #[error("realization index must be 1 or 2, got {0}")]
    BadRealization(i64),
}

/// Generators of `U_A^res(sl2)`: `e^(r)`, `f^(r)`, `K^(+-1)` and the
/// diagonal element `[K;0;p]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UGenerator {
    E(u32),
    F(u32),
    K,
    KInv,
    KBinomial(RootOrder),
}

impl UGenerator {
    pub fn validate(&self) -> Result<(), UqError> {
        match self {
            UGenerator::E(0) | UGenerator::F(0) => Err(UqError::ZeroOrder),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for UGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UGenerator::E(1) => f.write_str("e"),
            UGenerator::F(1) => f.write_str("f"),
            UGenerator::E(r) => write!(f, "e^({r})"),
            UGenerator::F(r) => write!(f, "f^({r})"),
            UGenerator::K => f.write_str("K"),
            UGenerator::KInv => f.write_str("K^-1"),
            UGenerator::KBinomial(p) => write!(f, "[K;0;{p}]"),
        }
    }
}

impl std::str::FromStr for UGenerator {
    type Err = String;

    /// Inverse of the `Display` rendering.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("unknown generator '{s}'; expected e, f, e^(r), f^(r), K, K^-1 or [K;0;p]");
        let g = match s.trim() {
            "e" => UGenerator::E(1),
            "f" => UGenerator::F(1),
            "K" => UGenerator::K,
            "K^-1" => UGenerator::KInv,
            t => {
                if let Some(p) = t.strip_prefix("[K;0;").and_then(|r| r.strip_suffix(']')) {
                    let p: i64 = p.parse().map_err(|_| bad())?;
                    UGenerator::KBinomial(RootOrder::new(p).map_err(|e| e.to_string())?)
                } else {
                    let (head, r) = t.split_once("^(").ok_or_else(bad)?;
                    let r: u32 = r.strip_suffix(')').and_then(|r| r.parse().ok()).ok_or_else(bad)?;
                    match head {
                        "e" => UGenerator::E(r),
                        "f" => UGenerator::F(r),
                        _ => return Err(bad()),
                    }
                }
            }
        };
        g.validate().map_err(|e| e.to_string())?;
        Ok(g)
    }
}

/// Which boson realization: the first lives on `F1`, the second on `F2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Realization {
    First,
    Second,
}

impl Realization {
    pub fn from_index(which: i64) -> Result<Self, UqError> {
        match which {
            1 => Ok(Realization::First),
            2 => Ok(Realization::Second),
            other => Err(UqError::BadRealization(other)),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Realization::First => 1,
            Realization::Second => 2,
        }
    }

    pub fn space(self) -> FockSpace {
        match self {
            Realization::First => FockSpace::F1,
            Realization::Second => FockSpace::F2,
        }
    }

    pub fn form(self) -> Form {
        match self {
            Realization::First => Form::Res1,
            Realization::Second => Form::Res2,
        }
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// A map from `U` generators to boson algebra elements.
///
/// [`BosonImage::new`] is the genuine realization; [`BosonImage::with_negated_f`]
/// flips the sign of every `f^(r)` and exists to exercise the relation
/// checker on a map that is not a homomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BosonImage {
    realization: Realization,
    negate_f: bool,
}

impl BosonImage {
    pub fn new(realization: Realization) -> Self {
        BosonImage { realization, negate_f: false }
    }

    pub fn with_negated_f(self) -> Self {
        BosonImage { negate_f: true, ..self }
    }

    pub fn realization(&self) -> Realization {
        self.realization
    }

    pub fn image(&self, g: &UGenerator) -> Result<BosonElement, FockError> {
        g.validate()?;
        let form = self.realization.form();
        let (scalar, word) = match (self.realization, *g) {
            (_, UGenerator::KBinomial(p)) => return Err(UqError::Unsupported(p).into()),
            (Realization::First, UGenerator::E(r)) => (
                q_pow(-(r as i64) * (r as i64 - 1) / 2),
                vec![Generator::k_inv(2, r), Generator::a_plus_divided(1, r), Generator::a(2, r)],
            ),
            (Realization::First, UGenerator::F(r)) => (
                q_pow(-(r as i64) * (r as i64 - 1) / 2),
                vec![Generator::k_inv(1, r), Generator::a_plus_divided(2, r), Generator::a(1, r)],
            ),
            (Realization::First, UGenerator::K) => {
                (LaurentPoly::one(), vec![Generator::k(1, 1), Generator::k_inv(2, 1)])
            }
            (Realization::First, UGenerator::KInv) => {
                (LaurentPoly::one(), vec![Generator::k_inv(1, 1), Generator::k(2, 1)])
            }
            (Realization::Second, UGenerator::E(r)) => (
                q_pow(-(r as i64) * (r as i64 - 1)),
                vec![Generator::k_inv(1, r), Generator::k_inv(2, r), Generator::a(1, r), Generator::a_divided(2, r)],
            ),
            (Realization::Second, UGenerator::F(r)) => (
                LaurentPoly::constant(if r % 2 == 0 { 1 } else { -1 }),
                vec![Generator::a_plus_divided(1, r), Generator::a_plus(2, r)],
            ),
            (Realization::Second, UGenerator::K) => (q_pow(-1), vec![Generator::k_inv(1, 1), Generator::k_inv(2, 1)]),
            (Realization::Second, UGenerator::KInv) => (q_pow(1), vec![Generator::k(1, 1), Generator::k(2, 1)]),
        };
        let scalar = match g {
            UGenerator::F(_) if self.negate_f => -scalar,
            _ => scalar,
        };
        Ok(normal_order(&word, form)?.scale(&scalar))
    }
}

fn q_pow(k: i64) -> LaurentPoly {
    LaurentPoly::q_pow(k)
}

/// Boson image of `g` under the first (`F1`, res1) or second (`F2`, res2)
/// realization.
pub fn realize(g: &UGenerator, which: Realization) -> Result<BosonElement, FockError> {
    BosonImage::new(which).image(g)
}

/// An integral weight `lambda = lambda0 + p * lambda1`.
///
/// A weight vector of weight `lambda` has `K`-eigenvalue `eps^lambda0` and
/// `[K;0;p]`-eigenvalue `lambda1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub lambda: i64,
    pub digits: Digits,
}

impl Weight {
    pub fn new(lambda: i64, p: RootOrder) -> Self {
        Weight { lambda, digits: Digits::of(lambda, p) }
    }

    pub fn k_eigenvalue(&self, field: &std::sync::Arc<crate::arith::CyclotomicField>) -> CyclotomicNumber {
        CyclotomicNumber::eps_pow(field, self.digits.n0)
    }

    pub fn k_binomial_eigenvalue(&self) -> i64 {
        self.digits.n1
    }
}

/// Free-function form of [`Weight::new`].
pub fn weight_digits(m: i64, p: RootOrder) -> Weight {
    Weight::new(m, p)
}

/// `[K;0;p]` evaluated on a `K`-eigenvector with eigenvalue `q^m`, straight
/// from its product definition
/// `prod_{s=1}^{p} (K q^(1-s) - K^-1 q^(s-1)) / (q^s - q^-s)`.
pub fn k_binomial_product(m: i64, p: RootOrder) -> LaurentPoly {
    let p = p.get() as i64;
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for s in 1..=p {
        num = &num * &LaurentPoly::from_terms([(m + 1 - s, 1i64), (-(m + 1 - s), -1)]);
        den = &den * &LaurentPoly::from_terms([(s, 1i64), (-s, -1)]);
    }
    num.div_exact(&den).expect("[K;0;p] eigenvalue is a Laurent polynomial")
}

/// The first relation that failed, with both sides rendered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFailure {
    pub relation: String,
    pub label: FockLabel,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub realization: Realization,
    pub bound: u32,
    pub checks: usize,
    pub failure: Option<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Generator actions on `F1`/`F2` computed through a boson image, memoized
/// per basis vector.
struct OracleOperators<'a> {
    image: &'a BosonImage,
    cache: HashMap<(UGenerator, FockLabel), FockVector<GenericQ>>,
}

impl<'a> OracleOperators<'a> {
    fn apply(&mut self, g: UGenerator, v: &FockVector<GenericQ>) -> Result<FockVector<GenericQ>, FockError> {
        let mut out = FockVector::zero(v.space(), GenericQ);
        for (label, c) in v.terms() {
            let key = (g, label);
            if !self.cache.contains_key(&key) {
                let w = oracle_with(self.image, &g, &label)?;
                self.cache.insert(key, w);
            }
            out.add_scaled(&self.cache[&key], c);
        }
        Ok(out)
    }

    fn chain(&mut self, gens: &[UGenerator], v: &FockVector<GenericQ>) -> Result<FockVector<GenericQ>, FockError> {
        // rightmost generator acts first
        let mut w = v.clone();
        for g in gens.iter().rev() {
            w = self.apply(*g, &w)?;
        }
        Ok(w)
    }
}

/// Checks `KK^-1 = K^-1K = 1`, `KeK^-1 = q^2 e`, `KfK^-1 = q^-2 f`,
/// `(q - q^-1)[e, f] = K - K^-1` and `[r]! x^(r) = x^r` (`x = e, f`,
/// `r <= bound`) as operator identities on every basis vector with
/// `r1, r2 <= bound`, exactly in `q`. Stops at the first failure.
pub fn verify_defining_relations(image: &BosonImage, bound: u32) -> Result<RelationReport, FockError> {
    use UGenerator::{KInv, E, F, K};
    let mut ops = OracleOperators { image, cache: HashMap::new() };
    let space = image.realization().space();
    let mut checks = 0;
    let report = |checks, failure| RelationReport { realization: image.realization(), bound, checks, failure };
    for r1 in 0..=bound {
        for r2 in 0..=bound {
            let label = FockLabel::new(space, r1, r2);
            let v = FockVector::basis(label, GenericQ);
            let mut relations: Vec<(String, FockVector<GenericQ>, FockVector<GenericQ>)> = vec![
                ("K K^-1 = 1".into(), ops.chain(&[K, KInv], &v)?, v.clone()),
                ("K^-1 K = 1".into(), ops.chain(&[KInv, K], &v)?, v.clone()),
                ("K e K^-1 = q^2 e".into(), ops.chain(&[K, E(1), KInv], &v)?, ops.chain(&[E(1)], &v)?.scale(&q_pow(2))),
                (
                    "K f K^-1 = q^-2 f".into(),
                    ops.chain(&[K, F(1), KInv], &v)?,
                    ops.chain(&[F(1)], &v)?.scale(&q_pow(-2)),
                ),
                (
                    "(q - q^-1)[e, f] = K - K^-1".into(),
                    ops.chain(&[E(1), F(1)], &v)?
                        .sub(&ops.chain(&[F(1), E(1)], &v)?)
                        .scale(&LaurentPoly::from_terms([(1, 1i64), (-1, -1)])),
                    ops.chain(&[K], &v)?.sub(&ops.chain(&[KInv], &v)?),
                ),
            ];
            for r in 1..=bound {
                let fact = q_factorial(r as i64).expect("nonnegative");
                for (name, div, single) in [("e", E(r), E(1)), ("f", F(r), F(1))] {
                    let lhs = ops.chain(&[div], &v)?.scale(&fact);
                    let rhs = ops.chain(&vec![single; r as usize], &v)?;
                    relations.push((format!("[{r}]! {name}^({r}) = {name}^{r}"), lhs, rhs));
                }
            }
            for (relation, lhs, rhs) in relations {
                checks += 1;
                if lhs != rhs {
                    return Ok(report(
                        checks,
                        Some(RelationFailure { relation, label, lhs: lhs.to_string(), rhs: rhs.to_string() }),
                    ));
                }
            }
        }
    }
    Ok(report(checks, None))
}

/// Images of `e^(r)` and `f^(r)` must lie in the realization's integral form.
pub fn image_is_integral(which: Realization, r: u32) -> Result<bool, BosonError> {
    for g in [UGenerator::E(r), UGenerator::F(r)] {
        let x = match realize(&g, which) {
            Ok(x) => x,
            Err(FockError::Boson(BosonError::NotIntegral { .. })) => return Ok(false),
            Err(e) => panic!("unexpected realization failure: {e}"),
        };
        if crate::boson::convert_basis(&x, which.form()).is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}

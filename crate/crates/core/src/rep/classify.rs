//! Which constructed module realizes the simple module `V(lambda)`.

use serde::{Deserialize, Serialize};

use crate::arith::{Digits, RootOrder};

use super::{check_window, infinite_module, quotient_report, submodule_report, weyl_module, ModuleReport, RepError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Construction {
    /// Top quotient of the Weyl module `V_m`.
    WeylHead { m: u32 },
    /// The whole sector `V^s`.
    Infinite { s: i64 },
    /// The proper submodule of `V^s` (`V'` for `s > 0`, `W'` for `s < 0`).
    InfiniteSubmodule { s: i64 },
    /// `V^s` modulo that submodule.
    InfiniteQuotient { s: i64 },
}

impl Construction {
    pub fn describe(&self, p: RootOrder) -> String {
        let sub = |s: i64| if s > 0 { "V'" } else { "W'" };
        match *self {
            Construction::WeylHead { m } => format!("head of weyl(p={p}, m={m})"),
            Construction::Infinite { s } => format!("infinite(p={p}, s={s})"),
            Construction::InfiniteSubmodule { s } => format!("submodule {} of infinite(p={p}, s={s})", sub(s)),
            Construction::InfiniteQuotient { s } => format!("quotient of infinite(p={p}, s={s}) by {}", sub(s)),
        }
    }
}

/// A construction together with what building it produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecipeEntry {
    pub construction: Construction,
    pub description: String,
    /// Weight of the top highest weight vector of the built module.
    pub realized_lambda: Option<i64>,
    pub irreducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recipe {
    pub p: RootOrder,
    pub lambda: i64,
    pub window: u32,
    pub primary: RecipeEntry,
    pub alternates: Vec<RecipeEntry>,
}

impl Recipe {
    /// Every listed construction was built and is simple of highest weight `lambda`.
    pub fn verified(&self) -> bool {
        std::iter::once(&self.primary)
            .chain(&self.alternates)
            .all(|e| e.irreducible && e.realized_lambda == Some(self.lambda))
    }
}

/// Builds the module a construction describes.
pub fn realize_construction(p: RootOrder, c: Construction, window: u32) -> Result<ModuleReport, RepError> {
    match c {
        Construction::WeylHead { m } => {
            let w = weyl_module(p, m)?;
            if w.maximal_submodule.is_empty() {
                Ok(w)
            } else {
                quotient_report(&w, &w.maximal_submodule)
            }
        }
        Construction::Infinite { s } => infinite_module(p, s, window),
        Construction::InfiniteSubmodule { s } => {
            let r = infinite_module(p, s, window)?;
            submodule_report(&r, &r.maximal_submodule)
        }
        Construction::InfiniteQuotient { s } => {
            let r = infinite_module(p, s, window)?;
            quotient_report(&r, &r.maximal_submodule)
        }
    }
}

fn constructions(p: RootOrder, lambda: i64) -> (Construction, Vec<Construction>) {
    if lambda >= 0 {
        return (Construction::WeylHead { m: lambda as u32 }, Vec::new());
    }
    let k = -lambda - 1;
    let d = Digits::of(k, p);
    let pp = p.get() as i64;
    if d.n0 == 0 {
        let alternates = if k > 0 { vec![Construction::Infinite { s: -k }] } else { Vec::new() };
        return (Construction::Infinite { s: k }, alternates);
    }
    let mut alternates = vec![Construction::InfiniteSubmodule { s: -k }];
    if d.n1 >= 1 {
        let s = pp - d.n0 + pp * (d.n1 - 1);
        alternates.push(Construction::InfiniteSubmodule { s });
        alternates.push(Construction::InfiniteQuotient { s: -s });
    }
    (Construction::InfiniteQuotient { s: k }, alternates)
}

/// The construction realizing `V(lambda)`, plus alternates, each built and
/// checked: `lambda >= 0` is the head of `V_lambda`; `lambda = -(k+1)` is
/// `V^k` when `k0 = 0` and `V^k / V'` otherwise.
pub fn classify(p: RootOrder, lambda: i64, window: u32) -> Result<Recipe, RepError> {
    check_window(p, window)?;
    let (primary, alternates) = constructions(p, lambda);
    let entry = |c: Construction| -> Result<RecipeEntry, RepError> {
        let m = realize_construction(p, c, window)?;
        Ok(RecipeEntry {
            construction: c,
            description: c.describe(p),
            realized_lambda: m.top().map(|h| h.weight.lambda),
            irreducible: m.irreducible,
        })
    };
    Ok(Recipe {
        p,
        lambda,
        window,
        primary: entry(primary)?,
        alternates: alternates.into_iter().map(entry).collect::<Result<_, _>>()?,
    })
}

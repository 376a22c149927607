//! Modules of the restricted specialization `U_eps^res(sl2)` built inside the
//! Fock spaces: Weyl modules `V_m` in `F1`, the infinite sectors `V^s` of
//! `F2` (truncated to a window), their submodules and quotients, and the
//! classification of the simple modules `V(lambda)`.
//!
//! Every module here has one-dimensional weight spaces spanned by Fock basis
//! vectors, so submodules of interest are coordinate subspaces; the linear
//! algebra is nonetheless general.

mod classify;
pub mod linalg;

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{q_binomial_at_eps, CyclotomicField, CyclotomicNumber, Digits, RootOrder};
use crate::fock::{act_on_label, AtRoot, FockError, FockLabel, ScalarRing};
use crate::uq::{Realization, UGenerator, Weight};

pub use classify::{classify, realize_construction, Construction, Recipe, RecipeEntry};
pub use linalg::{kernel, SparseVector, SubspaceBasis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("window {window} is too small: need at least 4p = {min}")]
    WindowTooSmall { window: u32, min: u32 },
    #[error("closed-form entry of {generator} on {label} disagrees with the Fock action")]
    ActionMismatch { generator: UGenerator, label: FockLabel },
    #[error("index set {indices:?} of {module} is not closed under the action")]
    NotClosed { module: String, indices: Vec<usize> },
    #[error(transparent)]
    Fock(#[from] FockError),
}

/// How a module was built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ModuleKind {
    Weyl { m: u32 },
    Infinite { s: i64, window: u32 },
    Quotient { parent: Box<ModuleKind>, submodule: Vec<usize> },
    Submodule { parent: Box<ModuleKind>, indices: Vec<usize> },
}

impl ModuleKind {
    pub fn describe(&self, p: RootOrder) -> String {
        match self {
            ModuleKind::Weyl { m } => format!("weyl(p={p}, m={m})"),
            ModuleKind::Infinite { s, window } => format!("infinite(p={p}, s={s}, window={window})"),
            ModuleKind::Quotient { parent, submodule } => {
                format!("{} / <{}>", parent.describe(p), join(submodule))
            }
            ModuleKind::Submodule { parent, indices } => {
                format!("<{}> in {}", join(indices), parent.describe(p))
            }
        }
    }

    /// The window of the underlying infinite module, if any.
    pub fn window(&self) -> Option<u32> {
        match self {
            ModuleKind::Weyl { .. } => None,
            ModuleKind::Infinite { window, .. } => Some(*window),
            ModuleKind::Quotient { parent, .. } | ModuleKind::Submodule { parent, .. } => parent.window(),
        }
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// One nonzero matrix entry: `value * basis[to]` is a term of `g(basis[from])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixEntry {
    pub from: usize,
    pub to: usize,
    pub value: CyclotomicNumber,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeightVector {
    pub vector: SparseVector,
    pub weight: Weight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    /// The module itself is simple.
    Whole,
    /// The simple top quotient of a Weyl module.
    Head,
    Submodule,
    Quotient,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Whole => "whole",
            Role::Head => "head",
            Role::Submodule => "submodule",
            Role::Quotient => "quotient",
        })
    }
}

/// A composition factor identified as `V(lambda)` through its highest
/// weight vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identification {
    pub role: Role,
    pub lambda: i64,
    pub highest_weight_vector: FockLabel,
    pub irreducible: bool,
}

/// Result of a closure computation.
#[derive(Clone, Debug)]
pub struct Closure {
    pub basis: SubspaceBasis,
    /// Some generator image left the window and was discarded.
    pub window_truncated: bool,
}

impl Closure {
    pub fn dim(&self) -> usize {
        self.basis.rank()
    }
}

/// Image of one basis vector under one generator.
#[derive(Clone, Debug, Default)]
struct Image {
    entries: SparseVector,
    escaped: bool,
}

/// How the module's basis sits inside its Fock space.
#[derive(Clone, Debug)]
struct Embedding {
    index: HashMap<FockLabel, usize>,
    /// Labels spanning the submodule a quotient is taken by.
    killed: HashSet<FockLabel>,
    /// Window labels of an infinite parent; `None` for finite modules.
    window: Option<Arc<HashSet<FockLabel>>>,
}

/// A module together with its action data.
#[derive(Clone, Debug)]
pub struct ModuleReport {
    pub kind: ModuleKind,
    pub p: RootOrder,
    pub realization: Realization,
    pub basis: Vec<FockLabel>,
    /// Matrices of `e`, `f`, `e^(p)`, `f^(p)`, `K`, in that order.
    pub actions: Vec<(UGenerator, Vec<MatrixEntry>)>,
    pub weights: Vec<Weight>,
    pub highest_weight_vectors: Vec<HighestWeightVector>,
    pub maximal_submodule: Vec<usize>,
    pub classification: Vec<Identification>,
    pub boundary_flags: Vec<usize>,
    pub irreducible: bool,
    ring: AtRoot,
    embedding: Embedding,
    generators: Vec<UGenerator>,
    table: Arc<Vec<Vec<Image>>>,
}

impl ModuleReport {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        self.ring.field()
    }

    pub fn is_windowed(&self) -> bool {
        self.embedding.window.is_some()
    }

    /// Generators used for closure: `e^(r)`, `f^(r)` for `r <= R`, `K`, `[K;0;p]`.
    pub fn closure_generators(&self) -> &[UGenerator] {
        &self.generators
    }

    pub fn index_of(&self, label: &FockLabel) -> Option<usize> {
        self.embedding.index.get(label).copied()
    }

    fn image(&self, g: &UGenerator, i: usize) -> Result<Image, RepError> {
        if let Some(k) = self.generators.iter().position(|h| h == g) {
            return Ok(self.table[k][i].clone());
        }
        compute_image(&self.ring, &self.embedding, g, &self.basis[i])
    }

    /// `g` applied to a coordinate vector; the flag reports window escapes.
    pub fn apply(&self, g: &UGenerator, v: &SparseVector) -> Result<(SparseVector, bool), RepError> {
        let mut out = SparseVector::new();
        let mut escaped = false;
        for (i, c) in v {
            let img = self.image(g, *i)?;
            escaped |= img.escaped;
            linalg::axpy(&mut out, c, &img.entries);
        }
        Ok((out, escaped))
    }

    pub fn unit(&self, i: usize) -> SparseVector {
        SparseVector::from([(i, CyclotomicNumber::from_int(self.field(), 1))])
    }

    /// Least subspace containing `seeds` and stable under the closure
    /// generators, by fixed-point iteration with exact row reduction.
    pub fn closure(&self, seeds: &[SparseVector]) -> Closure {
        let mut basis = SubspaceBasis::new();
        let mut queue: VecDeque<SparseVector> = seeds.iter().filter_map(|s| basis.insert(s)).collect();
        let mut window_truncated = false;
        while let Some(v) = queue.pop_front() {
            for k in 0..self.generators.len() {
                let mut w = SparseVector::new();
                for (i, c) in &v {
                    let img = &self.table[k][*i];
                    window_truncated |= img.escaped;
                    linalg::axpy(&mut w, c, &img.entries);
                }
                if let Some(r) = basis.insert(&w) {
                    queue.push_back(r);
                }
            }
        }
        Closure { basis, window_truncated }
    }

    /// True when no closure generator maps the coordinate span of `indices`
    /// outside itself, window escapes excepted.
    pub fn is_closed(&self, indices: &[usize]) -> bool {
        let set: HashSet<usize> = indices.iter().copied().collect();
        indices.iter().all(|&i| self.table.iter().all(|row| row[i].entries.keys().all(|t| set.contains(t))))
    }

    fn matrix(&self, g: &UGenerator) -> Result<Vec<MatrixEntry>, RepError> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for (j, c) in self.image(g, i)?.entries {
                out.push(MatrixEntry { from: i, to: j, value: c });
            }
        }
        Ok(out)
    }

    pub fn action(&self, g: &UGenerator) -> Option<&[MatrixEntry]> {
        self.actions.iter().find(|(h, _)| h == g).map(|(_, m)| m.as_slice())
    }

    /// The highest weight vector of largest weight.
    pub fn top(&self) -> Option<&HighestWeightVector> {
        self.highest_weight_vectors.first()
    }

    fn identify(&self, role: Role) -> Option<Identification> {
        let top = self.top()?;
        let (&i, _) = top.vector.iter().next()?;
        Some(Identification {
            role,
            lambda: top.weight.lambda,
            highest_weight_vector: self.basis[i],
            irreducible: self.irreducible,
        })
    }
}

fn compute_image(ring: &AtRoot, emb: &Embedding, g: &UGenerator, label: &FockLabel) -> Result<Image, RepError> {
    let mut img = Image::default();
    for (a, b, c) in act_on_label(ring, g, label)? {
        let t = FockLabel::new(label.space, a, b);
        if let Some(&j) = emb.index.get(&t) {
            linalg::axpy(&mut img.entries, &c, &SparseVector::from([(j, ring.int(1))]));
        } else if emb.killed.contains(&t) {
            continue;
        } else if emb.window.as_ref().is_some_and(|w| !w.contains(&t)) {
            img.escaped = true;
        } else {
            panic!("{g} maps {label} to {t}, outside a module validated as closed");
        }
    }
    Ok(img)
}

fn generator_set(p: RootOrder, bound: u32) -> Vec<UGenerator> {
    let mut gens = Vec::new();
    for r in 1..=bound.max(p.get()) {
        gens.push(UGenerator::E(r));
        gens.push(UGenerator::F(r));
    }
    gens.push(UGenerator::K);
    gens.push(UGenerator::KBinomial(p));
    gens
}

fn listed_generators(p: RootOrder) -> [UGenerator; 5] {
    [UGenerator::E(1), UGenerator::F(1), UGenerator::E(p.get()), UGenerator::F(p.get()), UGenerator::K]
}

/// Builds the generic parts of a report; role-specific fields start empty.
fn assemble(
    kind: ModuleKind,
    ring: AtRoot,
    realization: Realization,
    basis: Vec<FockLabel>,
    killed: HashSet<FockLabel>,
    window: Option<Arc<HashSet<FockLabel>>>,
    generators: Vec<UGenerator>,
) -> Result<ModuleReport, RepError> {
    let p = ring.order();
    let index = basis.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let embedding = Embedding { index, killed, window };
    let table = generators
        .par_iter()
        .map(|g| basis.iter().map(|l| compute_image(&ring, &embedding, g, l)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let weights = basis.iter().map(|l| Weight::new(l.weight_value(), p)).collect();
    let mut report = ModuleReport {
        kind,
        p,
        realization,
        basis,
        actions: Vec::new(),
        weights,
        highest_weight_vectors: Vec::new(),
        maximal_submodule: Vec::new(),
        classification: Vec::new(),
        boundary_flags: Vec::new(),
        irreducible: false,
        ring,
        embedding,
        generators,
        table: Arc::new(table),
    };
    for g in listed_generators(p) {
        let m = report.matrix(&g)?;
        report.actions.push((g, m));
    }
    report.highest_weight_vectors = find_highest_weight_vectors(&report)?;
    if report.is_windowed() {
        let (f, fp) = (UGenerator::F(1), UGenerator::F(p.get()));
        for i in 0..report.dim() {
            if report.image(&f, i)?.escaped || report.image(&fp, i)?.escaped {
                report.boundary_flags.push(i);
            }
        }
    }
    Ok(report)
}

/// All weight vectors killed by `e` and `e^(p)`, found per weight space as
/// the kernel of the stacked map; sorted by decreasing weight.
pub fn find_highest_weight_vectors(report: &ModuleReport) -> Result<Vec<HighestWeightVector>, RepError> {
    let mut spaces: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, w) in report.weights.iter().enumerate() {
        spaces.entry(w.lambda).or_default().push(i);
    }
    let n = report.dim();
    let (e, ep) = (UGenerator::E(1), UGenerator::E(report.p.get()));
    let mut out = Vec::new();
    for (&lambda, members) in spaces.iter().rev() {
        let mut images = Vec::with_capacity(members.len());
        for &i in members {
            let mut img = report.image(&e, i)?.entries;
            for (j, c) in report.image(&ep, i)?.entries {
                img.insert(n + j, c);
            }
            images.push(img);
        }
        for v in kernel(report.field(), &images) {
            let vector = v.into_iter().map(|(k, c)| (members[k], c)).collect();
            out.push(HighestWeightVector { vector, weight: Weight::new(lambda, report.p) });
        }
    }
    Ok(out)
}

/// Operational irreducibility.
///
/// Finite modules: the closure of every basis vector is the whole module.
/// Windowed modules: there is a single highest weight vector, every basis
/// vector reaches it through nonzero `e^(r)` entries, and it reaches every
/// basis vector through nonzero `f^(r)` entries inside the window.
pub fn is_irreducible(report: &ModuleReport) -> Result<bool, RepError> {
    if let Some(window) = report.kind.window() {
        check_window(report.p, window)?;
        return Ok(windowed_irreducible(report));
    }
    let n = report.dim();
    Ok((0..n).into_par_iter().all(|i| report.closure(&[report.unit(i)]).dim() == n))
}

fn windowed_irreducible(report: &ModuleReport) -> bool {
    let [top] = report.highest_weight_vectors.as_slice() else {
        return false;
    };
    let Some((&h, _)) = top.vector.iter().next() else {
        return false;
    };
    if top.vector.len() != 1 {
        return false;
    }
    let raising: Vec<usize> =
        (0..report.generators.len()).filter(|&k| matches!(report.generators[k], UGenerator::E(_))).collect();
    let lowering: Vec<usize> =
        (0..report.generators.len()).filter(|&k| matches!(report.generators[k], UGenerator::F(_))).collect();
    let from_top = reachable(report, h, &lowering, false);
    if from_top.len() != report.dim() {
        return false;
    }
    // every vector reaches the top iff the top is reachable backwards
    // along raising edges from every vector; search along reversed edges
    reachable(report, h, &raising, true).len() == report.dim()
}

fn reachable(report: &ModuleReport, start: usize, gens: &[usize], reversed: bool) -> HashSet<usize> {
    let mut edges: HashMap<usize, Vec<usize>> = HashMap::new();
    for &k in gens {
        for (i, img) in report.table[k].iter().enumerate() {
            for &j in img.entries.keys() {
                let (a, b) = if reversed { (j, i) } else { (i, j) };
                edges.entry(a).or_default().push(b);
            }
        }
    }
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        for &j in edges.get(&i).into_iter().flatten() {
            if seen.insert(j) {
                queue.push_back(j);
            }
        }
    }
    seen
}

fn check_window(p: RootOrder, window: u32) -> Result<(), RepError> {
    let min = 4 * p.get();
    if window < min {
        Err(RepError::WindowTooSmall { window, min })
    } else {
        Ok(())
    }
}

/// Window used when none is given: `6p`.
pub fn default_window(p: RootOrder) -> u32 {
    6 * p.get()
}

fn validated(report: &ModuleReport, indices: Vec<usize>) -> Result<Vec<usize>, RepError> {
    if report.is_closed(&indices) {
        Ok(indices)
    } else {
        Err(RepError::NotClosed { module: report.kind.describe(report.p), indices })
    }
}

/// The submodule spanned by the basis vectors at `indices`.
pub fn submodule_report(parent: &ModuleReport, indices: &[usize]) -> Result<ModuleReport, RepError> {
    let indices = validated(parent, indices.to_vec())?;
    let mut report = assemble(
        ModuleKind::Submodule { parent: Box::new(parent.kind.clone()), indices: indices.clone() },
        parent.ring.clone(),
        parent.realization,
        indices.iter().map(|&i| parent.basis[i]).collect(),
        parent.embedding.killed.clone(),
        parent.embedding.window.clone(),
        parent.generators.clone(),
    )?;
    report.irreducible = is_irreducible(&report)?;
    Ok(report)
}

/// The quotient by the submodule spanned by the basis vectors at `indices`.
pub fn quotient_report(parent: &ModuleReport, indices: &[usize]) -> Result<ModuleReport, RepError> {
    let indices = validated(parent, indices.to_vec())?;
    let drop: HashSet<usize> = indices.iter().copied().collect();
    let mut killed = parent.embedding.killed.clone();
    killed.extend(indices.iter().map(|&i| parent.basis[i]));
    let mut report = assemble(
        ModuleKind::Quotient { parent: Box::new(parent.kind.clone()), submodule: indices.clone() },
        parent.ring.clone(),
        parent.realization,
        (0..parent.dim()).filter(|i| !drop.contains(i)).map(|i| parent.basis[i]).collect(),
        killed,
        parent.embedding.window.clone(),
        parent.generators.clone(),
    )?;
    report.irreducible = is_irreducible(&report)?;
    Ok(report)
}

/// `V_m = span{ v_r = f(m - r, r) : 0 <= r <= m }` inside `F1`.
pub fn weyl_module(p: RootOrder, m: u32) -> Result<ModuleReport, RepError> {
    let ring = AtRoot::new(p);
    let basis = (0..=m).map(|r| FockLabel::f(m - r, r)).collect();
    let mut report =
        assemble(ModuleKind::Weyl { m }, ring, Realization::First, basis, HashSet::new(), None, generator_set(p, m))?;
    check_weyl_entries(&report, m)?;
    report.maximal_submodule = validated(&report, weyl_maximal_submodule(p, m))?;
    report.irreducible = is_irreducible(&report)?;
    let head = if report.maximal_submodule.is_empty() {
        report.identify(Role::Whole)
    } else {
        quotient_report(&report, &report.maximal_submodule)?.identify(Role::Head)
    };
    report.classification.extend(head);
    Ok(report)
}

/// `{ r in [0, m] : m0 < r0 < p and r1 < m1 }`.
pub fn weyl_maximal_submodule(p: RootOrder, m: u32) -> Vec<usize> {
    let md = Digits::of(m as i64, p);
    (0..=m as i64)
        .filter(|&r| {
            let rd = Digits::of(r, p);
            md.n0 < rd.n0 && rd.n1 < md.n1
        })
        .map(|r| r as usize)
        .collect()
}

/// Prop-style predicate: `m < p` or `m0 = p - 1`.
pub fn weyl_irreducible_predicate(p: RootOrder, m: u32) -> bool {
    let pp = p.get() as i64;
    (m as i64) < pp || Digits::of(m as i64, p).n0 == pp - 1
}

/// Closed-form Weyl entries: `e v_r = [m-r+1] v_(r-1)`, `f v_r = [r+1] v_(r+1)`,
/// `e^(p) v_r = ((m-r)_1 + 1) v_(r-p)`, `f^(p) v_r = (r_1 + 1) v_(r+p)`,
/// `K v_r = eps^(m-2r) v_r`.
fn check_weyl_entries(report: &ModuleReport, m: u32) -> Result<(), RepError> {
    let p = report.p;
    let pp = p.get() as i64;
    let field = report.field().clone();
    let m = m as i64;
    let int = |n: i64| CyclotomicNumber::from_int(&field, n);
    let digit1 = |n: i64| Digits::of(n, p).n1;
    for r in 0..=m {
        let expected: [(UGenerator, i64, CyclotomicNumber); 5] = [
            (UGenerator::E(1), r - 1, q_binomial_at_eps(&field, m - r + 1, 1)),
            (UGenerator::F(1), r + 1, q_binomial_at_eps(&field, r + 1, 1)),
            (UGenerator::E(p.get()), r - pp, int(digit1(m - r) + 1)),
            (UGenerator::F(p.get()), r + pp, int(digit1(r) + 1)),
            (UGenerator::K, r, CyclotomicNumber::eps_pow(&field, m - 2 * r)),
        ];
        for (g, target, value) in expected {
            let mut want = SparseVector::new();
            if (0..=m).contains(&target) && !value.is_zero() {
                want.insert(target as usize, value);
            }
            if report.image(&g, r as usize)?.entries != want {
                return Err(RepError::ActionMismatch { generator: g, label: report.basis[r as usize] });
            }
        }
    }
    Ok(())
}

/// Parameter `m` of the `m`-th basis vector of `V^s`:
/// `g(m, m + s)` for `s >= 0`, `g(m + |s|, m)` for `s < 0`.
pub fn infinite_label(s: i64, m: u32) -> FockLabel {
    if s >= 0 {
        FockLabel::g(m, m + s as u32)
    } else {
        FockLabel::g(m + s.unsigned_abs() as u32, m)
    }
}

/// The proper submodule of `V^s` named by its digit description:
/// `{ m : m0 >= p - s0 }` for `s > 0`, `{ m : m0 < p - |s|0 }` for `s < 0`,
/// empty when the relevant low digit vanishes.
pub fn infinite_submodule_indices(p: RootOrder, s: i64, window: u32) -> Vec<usize> {
    let pp = p.get() as i64;
    let a0 = s.unsigned_abs() as i64 % pp;
    if a0 == 0 {
        return Vec::new();
    }
    (0..=window as i64)
        .filter(|m| {
            let m0 = m % pp;
            if s > 0 {
                m0 >= pp - a0
            } else {
                m0 < pp - a0
            }
        })
        .map(|m| m as usize)
        .collect()
}

/// The sector `V^s` of `F2` truncated to `m <= window`.
pub fn infinite_module(p: RootOrder, s: i64, window: u32) -> Result<ModuleReport, RepError> {
    check_window(p, window)?;
    let basis: Vec<FockLabel> = (0..=window).map(|m| infinite_label(s, m)).collect();
    let window_set = Arc::new(basis.iter().copied().collect());
    let mut report = assemble(
        ModuleKind::Infinite { s, window },
        AtRoot::new(p),
        Realization::Second,
        basis,
        HashSet::new(),
        Some(window_set),
        generator_set(p, window),
    )?;
    report.maximal_submodule = validated(&report, infinite_submodule_indices(p, s, window))?;
    report.irreducible = is_irreducible(&report)?;
    if report.maximal_submodule.is_empty() {
        report.classification.extend(report.identify(Role::Whole));
    } else {
        let sub = submodule_report(&report, &report.maximal_submodule)?;
        let quot = quotient_report(&report, &report.maximal_submodule)?;
        report.classification.extend(sub.identify(Role::Submodule));
        report.classification.extend(quot.identify(Role::Quotient));
    }
    Ok(report)
}

/// Free-function form of [`ModuleReport::closure`].
pub fn closure(seeds: &[SparseVector], report: &ModuleReport) -> Closure {
    report.closure(seeds)
}

//! Named identity families and the kernel pipeline.
//!
//! [`compute_kernel`] evaluates every comb of the arity-3 basis in the free
//! multi-differential algebra on `{x, y, z}` and returns the exact nullspace
//! of the evaluation matrix: the space of all binary quadratic identities
//! satisfied by the induced products. [`verify`] compares it with the
//! S3-span of a named family.

use crate::diffalg::{AlgebraError, DiffPoly, ModelConfig, Monomial};
use crate::exprspace::{
    enumerate_basis, evaluate, evaluate_elem, ExprBasisElem, ExprError, ExprVec, Mode, OpSymbol,
    Perm,
};
use crate::linalg::{LinalgError, RatMatrix, Subspace};
use crate::par::Execution;
use crate::rational::Rational;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("family `{family}` is defined for a single operator, got n = {n}")]
    SingleOperatorFamily { family: FamilyId, n: usize },
}

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    /// Left-symmetry and right-commutativity of one product.
    Novikov,
    /// Left-symmetry of one product.
    PreLie,
    /// All three multi-Novikov schemes over ordered operator pairs.
    MultiNovikov,
    /// Multi-Novikov without the mixed-operator scheme.
    NcMultiNovikov,
    /// Right-commutativity over ordered operator pairs.
    RightCommutativity,
}

impl FamilyId {
    pub const ALL: [FamilyId; 5] = [
        FamilyId::Novikov,
        FamilyId::PreLie,
        FamilyId::MultiNovikov,
        FamilyId::NcMultiNovikov,
        FamilyId::RightCommutativity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::Novikov => "novikov",
            FamilyId::PreLie => "prelie",
            FamilyId::MultiNovikov => "multinovikov",
            FamilyId::NcMultiNovikov => "ncmultinovikov",
            FamilyId::RightCommutativity => "rightcomm",
        }
    }

    pub fn single_operator(self) -> bool {
        matches!(self, FamilyId::Novikov | FamilyId::PreLie)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyId::ALL
            .iter()
            .copied()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| {
                format!(
                    "unknown family `{s}` (expected one of {})",
                    FamilyId::ALL.map(|f| f.as_str()).join(", ")
                )
            })
    }
}

fn d(w: usize) -> OpSymbol {
    OpSymbol::Derived(w)
}

fn left(a: usize, i: usize, b: usize, o: usize, c: usize) -> ExprVec {
    ExprBasisElem::left(a, d(i), b, d(o), c).into()
}

fn right(a: usize, o: usize, b: usize, i: usize, c: usize) -> ExprVec {
    ExprBasisElem::right(a, d(o), b, d(i), c).into()
}

/// `(x ▷_ω y) ▷_τ z − x ▷_ω (y ▷_τ z) − (y ▷_ω x) ▷_τ z + y ▷_ω (x ▷_τ z)`
pub fn left_symmetry(w: usize, t: usize) -> ExprVec {
    left(X, w, Y, t, Z) - right(X, w, Y, t, Z) - left(Y, w, X, t, Z) + right(Y, w, X, t, Z)
}

/// `(x ▷_ω y) ▷_τ z − x ▷_ω (y ▷_τ z) − (x ▷_τ y) ▷_ω z + x ▷_τ (y ▷_ω z)`
///
/// Holds only when the derivations commute.
pub fn mixed_associator_symmetry(w: usize, t: usize) -> ExprVec {
    left(X, w, Y, t, Z) - right(X, w, Y, t, Z) - left(X, t, Y, w, Z) + right(X, t, Y, w, Z)
}

/// `(x ▷_ω y) ▷_τ z − (x ▷_τ z) ▷_ω y`
pub fn right_commutativity(w: usize, t: usize) -> ExprVec {
    left(X, w, Y, t, Z) - left(X, t, Z, w, Y)
}

/// The three ternary relations read off from the free parameters of the
/// commuting kernel, as functions of `(ω, τ)`.
pub mod ternary {
    use super::*;

    /// Same as [`left_symmetry`].
    pub fn first(w: usize, t: usize) -> ExprVec {
        left_symmetry(w, t)
    }

    /// `(x ▷_ω y) ▷_τ z − x ▷_ω (y ▷_τ z) − (x ▷_ω z) ▷_τ y + x ▷_τ (y ▷_ω z)`
    pub fn second(w: usize, t: usize) -> ExprVec {
        left(X, w, Y, t, Z) - right(X, w, Y, t, Z) - left(X, w, Z, t, Y) + right(X, t, Y, w, Z)
    }

    /// `(x ▷_τ y) ▷_ω z − (x ▷_ω z) ▷_τ y`
    pub fn third(w: usize, t: usize) -> ExprVec {
        left(X, t, Y, w, Z) - left(X, w, Z, t, Y)
    }
}

/// The defining relators of a family, one per scheme per ordered operator
/// pair `(α, β)`, schemes outermost. S3-images are not included.
pub fn relators(
    family: FamilyId,
    model: &ModelConfig,
    _mode: Mode,
) -> Result<Vec<ExprVec>, CatalogError> {
    let n = model.num_operators();
    if family.single_operator() && n != 1 {
        return Err(CatalogError::SingleOperatorFamily { family, n });
    }
    let schemes: &[fn(usize, usize) -> ExprVec] = match family {
        FamilyId::Novikov => &[left_symmetry, right_commutativity],
        FamilyId::PreLie => &[left_symmetry],
        FamilyId::MultiNovikov => &[
            left_symmetry,
            mixed_associator_symmetry,
            right_commutativity,
        ],
        FamilyId::NcMultiNovikov => &[left_symmetry, right_commutativity],
        FamilyId::RightCommutativity => &[right_commutativity],
    };
    let mut out = Vec::with_capacity(schemes.len() * n * n);
    for scheme in schemes {
        for a in 0..n {
            for b in 0..n {
                out.push(scheme(a, b));
            }
        }
    }
    Ok(out)
}

/// Span of the S3-orbits of `vectors`, in coordinates of `basis`.
pub fn orbit_span(
    vectors: &[ExprVec],
    basis: &[ExprBasisElem],
    exec: Execution,
) -> Result<Subspace, CatalogError> {
    let rows: Vec<Result<Vec<Vec<Rational>>, ExprError>> = exec.map(vectors, |v| {
        v.s3_orbit().iter().map(|o| o.to_dense(basis)).collect()
    });
    let mut dense = Vec::with_capacity(vectors.len() * 6);
    for r in rows {
        dense.extend(r?);
    }
    Ok(Subspace::span(&dense, basis.len())?)
}

/// Span of `vectors` without S3-closure.
pub fn plain_span(vectors: &[ExprVec], basis: &[ExprBasisElem]) -> Result<Subspace, CatalogError> {
    let dense = vectors
        .iter()
        .map(|v| v.to_dense(basis))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Subspace::span(&dense, basis.len())?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyVerdicts {
    pub family: FamilyId,
    pub relator_count: usize,
    /// Dimension of the S3-span of the relators.
    pub span_dim: usize,
    /// Every relator lies in the kernel.
    pub contains_all: bool,
    /// span ⊆ kernel
    pub leq: bool,
    /// kernel ⊆ span
    pub geq: bool,
    pub eq: bool,
}

#[derive(Debug, Clone)]
pub struct KernelReport {
    pub mode: Mode,
    /// The `{x, y, z}` model the pipeline ran on.
    pub model: Arc<ModelConfig>,
    pub basis: Vec<ExprBasisElem>,
    /// Distinct differential monomials hit by the evaluation, in monomial
    /// order. These index the rows of the evaluation matrix.
    pub monomials: Vec<Monomial>,
    pub rank: usize,
    pub kernel: Subspace,
    pub kernel_basis: Vec<ExprVec>,
    /// Arity-2 generators with identical images, which the comb basis
    /// already merges.
    pub degenerate_identifications: Vec<String>,
    /// Post-mode kernels carry no reference result.
    pub exploratory: bool,
    pub verdicts: Option<FamilyVerdicts>,
    pub wall_time: Duration,
}

impl KernelReport {
    pub fn basis_size(&self) -> usize {
        self.basis.len()
    }

    pub fn column_count(&self) -> usize {
        self.monomials.len()
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.dim()
    }
}

fn pipeline_model(model: &ModelConfig) -> Arc<ModelConfig> {
    Arc::new(
        ModelConfig::xyz(model.commuting(), model.num_operators())
            .expect("operator count already validated"),
    )
}

/// The evaluation matrix: one row per differential monomial, one column per
/// basis element.
pub fn evaluation_matrix(
    basis: &[ExprBasisElem],
    model: &Arc<ModelConfig>,
    exec: Execution,
) -> Result<(RatMatrix, Vec<Monomial>), CatalogError> {
    let images = exec.map(basis, |e| evaluate_elem(e, model));
    let images = images.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in &images {
        for (m, _) in p.terms() {
            index.entry(m.clone()).or_insert(0);
        }
    }
    for (i, slot) in index.values_mut().enumerate() {
        *slot = i;
    }
    let mut mat = RatMatrix::zeros(index.len(), basis.len());
    for (j, p) in images.iter().enumerate() {
        for (m, c) in p.terms() {
            mat[(index[m], j)] = c.clone();
        }
    }
    Ok((mat, index.into_keys().collect()))
}

pub fn compute_kernel(model: &ModelConfig, mode: Mode) -> KernelReport {
    compute_kernel_with(model, mode, Execution::default())
}

pub fn compute_kernel_with(model: &ModelConfig, mode: Mode, exec: Execution) -> KernelReport {
    let start = Instant::now();
    let model = pipeline_model(model);
    let basis = enumerate_basis(mode, &model);
    let (mat, monomials) =
        evaluation_matrix(&basis, &model, exec).expect("basis is valid for its own model");
    let kernel = mat.nullspace();
    let rank = basis.len() - kernel.dim();
    let kernel_basis = kernel
        .basis_vectors()
        .iter()
        .map(|v| ExprVec::from_dense(&basis, v).expect("kernel vectors have basis length"))
        .collect();
    KernelReport {
        mode,
        degenerate_identifications: degenerate_identifications(&model, mode),
        exploratory: mode == Mode::Post,
        model,
        basis,
        monomials,
        rank,
        kernel,
        kernel_basis,
        verdicts: None,
        wall_time: start.elapsed(),
    }
}

/// Compares the kernel with the S3-span of a family's relators.
pub fn verify(
    family: FamilyId,
    model: &ModelConfig,
    mode: Mode,
) -> Result<KernelReport, CatalogError> {
    verify_with(family, model, mode, Execution::default())
}

pub fn verify_with(
    family: FamilyId,
    model: &ModelConfig,
    mode: Mode,
    exec: Execution,
) -> Result<KernelReport, CatalogError> {
    let start = Instant::now();
    let rels = relators(family, model, mode)?;
    let mut report = compute_kernel_with(model, mode, exec);
    let span = orbit_span(&rels, &report.basis, exec)?;
    let mut contains_all = true;
    for r in &rels {
        if !report.kernel.contains(&r.to_dense(&report.basis)?)? {
            contains_all = false;
            break;
        }
    }
    let leq = span.leq(&report.kernel)?;
    let geq = report.kernel.leq(&span)?;
    report.verdicts = Some(FamilyVerdicts {
        family,
        relator_count: rels.len(),
        span_dim: span.dim(),
        contains_all,
        leq,
        geq,
        eq: span.eq_subspace(&report.kernel)?,
    });
    report.wall_time = start.elapsed();
    Ok(report)
}

/// Relators of `family` (by index) whose image under the induced products
/// is nonzero, with that image.
pub fn gelfand_residues(
    family: FamilyId,
    model: &ModelConfig,
) -> Result<Vec<(usize, DiffPoly)>, CatalogError> {
    let xyz = pipeline_model(model);
    let mut out = Vec::new();
    for (i, r) in relators(family, model, Mode::Pre)?.iter().enumerate() {
        let p = evaluate(r, &xyz)?;
        if !p.is_zero() {
            out.push((i, p));
        }
    }
    Ok(out)
}

/// True iff every relator of `family` vanishes under `a ▷_ω b = a·D_ω(b)`.
pub fn gelfand_check(family: FamilyId, model: &ModelConfig) -> Result<bool, CatalogError> {
    Ok(gelfand_residues(family, model)?.is_empty())
}

/// Every kernel basis vector evaluates to zero.
pub fn kernel_vectors_vanish(report: &KernelReport) -> Result<bool, CatalogError> {
    for v in &report.kernel_basis {
        if !evaluate(v, &report.model)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The kernel is closed under relabelling the leaves.
pub fn kernel_is_s3_stable(report: &KernelReport) -> Result<bool, CatalogError> {
    for v in &report.kernel_basis {
        for sigma in Perm::ALL {
            if !report
                .kernel
                .contains(&v.act_s3(sigma).to_dense(&report.basis)?)?
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Groups the raw arity-2 generators by their image on `(x, y)`.
///
/// The raw generators are `≺_{ω,θ}: (a,b) ↦ θ(a, D_ω b)` and
/// `≻_{ω,θ}: (a,b) ↦ θ(D_ω a, b)` for `θ ∈ {μ, μ′}`, plus `⊻_θ` in post
/// mode. Because the target product is commutative the pairs over `μ` and
/// `μ′` coincide; each class of size > 1 is reported as one line.
pub fn degenerate_identifications(model: &Arc<ModelConfig>, mode: Mode) -> Vec<String> {
    let x = DiffPoly::var(model, X).expect("xyz model");
    let y = DiffPoly::var(model, Y).expect("xyz model");
    // θ(a, b) for θ = μ is a·b, for θ = μ′ it is b·a; both are built
    // literally so the coincidence is computed rather than assumed.
    let theta = |primed: bool, a: &DiffPoly, b: &DiffPoly| {
        if primed {
            b.mul(a).expect("same model")
        } else {
            a.mul(b).expect("same model")
        }
    };
    let mut gens: Vec<(String, DiffPoly)> = Vec::new();
    for w in 0..model.num_operators() {
        for (primed, tag) in [(false, "μ"), (true, "μ′")] {
            let dy = y.derive(w).expect("valid operator");
            gens.push((format!("≺_{{{w},{tag}}}"), theta(primed, &x, &dy)));
        }
        for (primed, tag) in [(false, "μ"), (true, "μ′")] {
            let dx = x.derive(w).expect("valid operator");
            gens.push((format!("≻_{{{w},{tag}}}"), theta(primed, &dx, &y)));
        }
    }
    if mode == Mode::Post {
        for (primed, tag) in [(false, "μ"), (true, "μ′")] {
            gens.push((format!("⊻_{tag}"), theta(primed, &x, &y)));
        }
    }
    let mut classes: Vec<(DiffPoly, Vec<String>)> = Vec::new();
    for (name, image) in gens {
        match classes.iter_mut().find(|(p, _)| *p == image) {
            Some((_, names)) => names.push(name),
            None => classes.push((image, vec![name])),
        }
    }
    classes
        .into_iter()
        .filter(|(_, names)| names.len() > 1)
        .map(|(image, names)| format!("{} ↦ {}", names.join(" ≡ "), image))
        .collect()
}

/// Embeds a pre-mode vector into the post basis: the combs are the same.
pub fn embed_pre_in_post(v: &ExprVec) -> ExprVec {
    v.clone()
}

/// `(x ⊻ y) ⊻ z − x ⊻ (y ⊻ z)`
pub fn plain_associativity() -> ExprVec {
    let p = OpSymbol::Plain;
    ExprVec::from(ExprBasisElem::left(X, p, Y, p, Z))
        - ExprVec::from(ExprBasisElem::right(X, p, Y, p, Z))
}

/// `(x ⊻ y) ⊻ z − (y ⊻ x) ⊻ z`
pub fn plain_commutativity() -> ExprVec {
    let p = OpSymbol::Plain;
    ExprVec::from(ExprBasisElem::left(X, p, Y, p, Z))
        - ExprVec::from(ExprBasisElem::left(Y, p, X, p, Z))
}

/// Dense coordinates, treating absent basis elements as an error.
pub fn coords(v: &ExprVec, report: &KernelReport) -> Result<Vec<Rational>, CatalogError> {
    Ok(v.to_dense(&report.basis)?)
}

/// Whether `v` lies in the report's kernel.
pub fn kernel_contains(report: &KernelReport, v: &ExprVec) -> Result<bool, CatalogError> {
    Ok(report.kernel.contains(&coords(v, report)?)?)
}

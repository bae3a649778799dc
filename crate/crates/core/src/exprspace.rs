//! Arity-3 expressions in the induced products and their evaluation.
//!
//! The generators are the products `a ▷_ω b := a · D_ω(b)` (one per
//! derivation) and, in [`Mode::Post`], the plain product `a ⊻ b := a · b`.
//! Opposite products are never stored: `a ▷'_ω b = b ▷_ω a`, so every
//! arity-3 tree monomial is a *comb* `(a ∘ b) ∘ c` or `a ∘ (b ∘ c)` on a
//! permutation of the leaves `x, y, z`. With `s` symbols this gives a basis
//! of `12·s²` elements.
//!
//! The twelve classical compositions of a single product `μ` and its
//! opposite `μ'` map onto the comb basis as follows (see
//! [`COMPOSITION_TABLE`] and [`compose`]):
//!
//! | row | composition | comb     | row | composition | comb     |
//! |-----|-------------|----------|-----|-------------|----------|
//! | 1   | μ ∘_I μ     | (xy)z    | 7   | μ' ∘_I μ'   | z(yx)    |
//! | 2   | μ' ∘_II μ   | x(yz)    | 8   | μ ∘_II μ'   | (zy)x    |
//! | 3   | μ' ∘_II μ'  | x(zy)    | 9   | μ ∘_II μ    | (yz)x    |
//! | 4   | μ ∘_III μ'  | (xz)y    | 10  | μ' ∘_III μ  | y(zx)    |
//! | 5   | μ ∘_III μ   | (zx)y    | 11  | μ' ∘_III μ' | y(xz)    |
//! | 6   | μ' ∘_I μ    | z(xy)    | 12  | μ ∘_I μ'    | (yx)z    |

use crate::diffalg::{AlgebraError, DiffPoly, ModelConfig};
use crate::rational::{self, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("evaluation needs at least 3 variables, model has {0}")]
    TooFewVariables(usize),
    #[error("the plain product only exists in post mode")]
    PlainInPreMode,
    #[error("term `{0}` is not in the basis")]
    NotInBasis(String),
    #[error("cannot parse term `{0}`")]
    Parse(String),
    #[error("vector has length {got}, basis has {expected} elements")]
    LengthMismatch { expected: usize, got: usize },
}

/// Which induced generators are present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    /// Only the derived products `▷_ω`.
    Pre,
    /// The derived products plus the plain product `⊻`.
    Post,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Pre => "pre",
            Mode::Post => "post",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pre" => Ok(Mode::Pre),
            "post" => Ok(Mode::Post),
            other => Err(format!("unknown mode `{other}` (expected pre|post)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpSymbol {
    /// `a ▷_ω b = a · D_ω(b)`
    Derived(usize),
    /// `a ⊻ b = a · b`
    Plain,
}

impl OpSymbol {
    /// The symbol set of a mode, in basis order.
    pub fn all(mode: Mode, num_operators: usize) -> Vec<OpSymbol> {
        let mut out: Vec<OpSymbol> = (0..num_operators).map(OpSymbol::Derived).collect();
        if mode == Mode::Post {
            out.push(OpSymbol::Plain);
        }
        out
    }

    fn render(self, style: TermStyle) -> String {
        match (self, style) {
            (OpSymbol::Derived(w), TermStyle::Text) => format!("▷_{w}"),
            (OpSymbol::Plain, TermStyle::Text) => "⊻".to_string(),
            (OpSymbol::Derived(w), TermStyle::Json) => format!("r{w}"),
            (OpSymbol::Plain, TermStyle::Json) => "m".to_string(),
        }
    }

    fn parse(s: &str) -> Option<OpSymbol> {
        match s {
            "⊻" | "m" => Some(OpSymbol::Plain),
            _ => {
                let idx = s
                    .strip_prefix("▷_")
                    .or_else(|| s.strip_prefix('r'))?;
                let idx = idx.trim_start_matches('{').trim_end_matches('}');
                idx.parse().ok().map(OpSymbol::Derived)
            }
        }
    }
}

/// A permutation of the three leaves, stored by images: the comb built from
/// `p` has leaves `(x_{p(0)}, x_{p(1)}, x_{p(2)})`.
///
/// Permutations are ordered by their position in [`Perm::ALL`], which is
/// also the order they appear in the basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Perm([usize; 3]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2]);

    /// `id, (xy), (xz), (yz), (xyz), (xzy)`
    pub const ALL: [Perm; 6] = [
        Perm([0, 1, 2]),
        Perm([1, 0, 2]),
        Perm([2, 1, 0]),
        Perm([0, 2, 1]),
        Perm([1, 2, 0]),
        Perm([2, 0, 1]),
    ];

    const NAMES: [&'static str; 6] = ["id", "(xy)", "(xz)", "(yz)", "(xyz)", "(xzy)"];

    pub fn from_images(images: [usize; 3]) -> Option<Perm> {
        Self::ALL.iter().copied().find(|p| p.0 == images)
    }

    pub fn images(self) -> [usize; 3] {
        self.0
    }

    pub fn apply(self, i: usize) -> usize {
        self.0[i]
    }

    pub fn index(self) -> usize {
        Self::ALL.iter().position(|p| *p == self).expect("valid permutation")
    }

    pub fn name(self) -> &'static str {
        Self::NAMES[self.index()]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm) -> Perm {
        Perm([self.0[other.0[0]], self.0[other.0[1]], self.0[other.0[2]]])
    }

    pub fn inverse(self) -> Perm {
        let mut inv = [0; 3];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }
}

impl Ord for Perm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index().cmp(&other.index())
    }
}

impl PartialOrd for Perm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    /// `(a ∘ b) ∘ c`
    Left,
    /// `a ∘ (b ∘ c)`
    Right,
}

/// One comb. Field order is the basis order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExprBasisElem {
    pub perm: Perm,
    pub shape: Shape,
    pub inner: OpSymbol,
    pub outer: OpSymbol,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermStyle {
    /// `(x ▷_0 y) ▷_1 z`
    Text,
    /// `(x r0 y) r1 z`
    Json,
}

fn perm_of(leaves: [usize; 3]) -> Perm {
    Perm::from_images(leaves)
        .unwrap_or_else(|| panic!("leaves {leaves:?} are not a permutation of x, y, z"))
}

impl ExprBasisElem {
    /// `(a inner b) outer c`. Panics unless `a, b, c` is a permutation of
    /// `0, 1, 2`.
    pub fn left(a: usize, inner: OpSymbol, b: usize, outer: OpSymbol, c: usize) -> Self {
        ExprBasisElem {
            perm: perm_of([a, b, c]),
            shape: Shape::Left,
            inner,
            outer,
        }
    }

    /// `a outer (b inner c)`. Panics unless `a, b, c` is a permutation of
    /// `0, 1, 2`.
    pub fn right(a: usize, outer: OpSymbol, b: usize, inner: OpSymbol, c: usize) -> Self {
        ExprBasisElem {
            perm: perm_of([a, b, c]),
            shape: Shape::Right,
            inner,
            outer,
        }
    }

    pub fn leaves(&self) -> [usize; 3] {
        self.perm.images()
    }

    pub fn act(&self, sigma: Perm) -> Self {
        ExprBasisElem {
            perm: sigma.compose(self.perm),
            ..*self
        }
    }

    pub fn symbols(&self) -> [OpSymbol; 2] {
        [self.inner, self.outer]
    }

    pub fn render(&self, names: &[String], style: TermStyle) -> String {
        let [a, b, c] = self.leaves().map(|i| names[i].as_str());
        let inner = self.inner.render(style);
        let outer = self.outer.render(style);
        match self.shape {
            Shape::Left => format!("({a} {inner} {b}) {outer} {c}"),
            Shape::Right => format!("{a} {outer} ({b} {inner} {c})"),
        }
    }

    /// Inverse of [`ExprBasisElem::render`] for either style.
    pub fn parse(s: &str, names: &[String]) -> Result<Self, ExprError> {
        let err = || ExprError::Parse(s.to_string());
        let var = |t: &str| names.iter().position(|n| n == t).ok_or_else(err);
        let op = |t: &str| OpSymbol::parse(t).ok_or_else(err);
        let t = s.trim();
        if let Some(rest) = t.strip_prefix('(') {
            // (a i b) o c
            let (inside, tail) = rest.split_once(')').ok_or_else(err)?;
            let ins: Vec<&str> = inside.split_whitespace().collect();
            let tl: Vec<&str> = tail.split_whitespace().collect();
            if ins.len() != 3 || tl.len() != 2 {
                return Err(err());
            }
            let leaves = [var(ins[0])?, var(ins[2])?, var(tl[1])?];
            let perm = Perm::from_images(leaves).ok_or_else(err)?;
            Ok(ExprBasisElem {
                perm,
                shape: Shape::Left,
                inner: op(ins[1])?,
                outer: op(tl[0])?,
            })
        } else {
            // a o (b i c)
            let (head, rest) = t.split_once('(').ok_or_else(err)?;
            let inside = rest.strip_suffix(')').ok_or_else(err)?;
            let hd: Vec<&str> = head.split_whitespace().collect();
            let ins: Vec<&str> = inside.split_whitespace().collect();
            if hd.len() != 2 || ins.len() != 3 {
                return Err(err());
            }
            let leaves = [var(hd[0])?, var(ins[0])?, var(ins[2])?];
            let perm = Perm::from_images(leaves).ok_or_else(err)?;
            Ok(ExprBasisElem {
                perm,
                shape: Shape::Right,
                inner: op(ins[1])?,
                outer: op(hd[1])?,
            })
        }
    }

    pub fn check(&self, model: &ModelConfig, mode: Mode) -> Result<(), ExprError> {
        for s in self.symbols() {
            match s {
                OpSymbol::Derived(w) => model.check_operator(w)?,
                OpSymbol::Plain if mode == Mode::Pre => return Err(ExprError::PlainInPreMode),
                OpSymbol::Plain => {}
            }
        }
        Ok(())
    }
}

/// Slots of the partial compositions `μ ∘_I ν`, `μ ∘_II ν`, `μ ∘_III ν`:
/// `μ(ν(x,y),z)`, `μ(ν(y,z),x)` and `μ(ν(z,x),y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    I,
    II,
    III,
}

/// A generator of the free operad: a symbol, possibly in its opposite
/// (primed) form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Generator {
    pub symbol: OpSymbol,
    pub primed: bool,
}

impl Generator {
    pub fn plain(symbol: OpSymbol) -> Self {
        Generator {
            symbol,
            primed: false,
        }
    }

    pub fn primed(symbol: OpSymbol) -> Self {
        Generator {
            symbol,
            primed: true,
        }
    }
}

/// Rewrites the composition `outer ∘_slot inner` as a comb.
pub fn compose(outer: Generator, slot: Slot, inner: Generator) -> ExprBasisElem {
    let (p, q, r) = match slot {
        Slot::I => (0, 1, 2),
        Slot::II => (1, 2, 0),
        Slot::III => (2, 0, 1),
    };
    let (p, q) = if inner.primed { (q, p) } else { (p, q) };
    if outer.primed {
        ExprBasisElem::right(r, outer.symbol, p, inner.symbol, q)
    } else {
        ExprBasisElem::left(p, inner.symbol, q, outer.symbol, r)
    }
}

/// Rows of the classical composition table for one product `μ`:
/// `(row, outer primed, slot, inner primed, comb)`.
pub const COMPOSITION_TABLE: [(usize, bool, Slot, bool, &str); 12] = [
    (1, false, Slot::I, false, "(xy)z"),
    (2, true, Slot::II, false, "x(yz)"),
    (3, true, Slot::II, true, "x(zy)"),
    (4, false, Slot::III, true, "(xz)y"),
    (5, false, Slot::III, false, "(zx)y"),
    (6, true, Slot::I, false, "z(xy)"),
    (7, true, Slot::I, true, "z(yx)"),
    (8, false, Slot::II, true, "(zy)x"),
    (9, false, Slot::II, false, "(yz)x"),
    (10, true, Slot::III, false, "y(zx)"),
    (11, true, Slot::III, true, "y(xz)"),
    (12, false, Slot::I, true, "(yx)z"),
];

/// The ordered comb basis of a mode: permutations in [`Perm::ALL`] order,
/// then shape, then inner symbol, then outer symbol. Sorted under the
/// derived `Ord` of [`ExprBasisElem`].
pub fn enumerate_basis(mode: Mode, model: &ModelConfig) -> Vec<ExprBasisElem> {
    let symbols = OpSymbol::all(mode, model.num_operators());
    let mut out = Vec::with_capacity(12 * symbols.len() * symbols.len());
    for perm in Perm::ALL {
        for shape in [Shape::Left, Shape::Right] {
            for &inner in &symbols {
                for &outer in &symbols {
                    out.push(ExprBasisElem {
                        perm,
                        shape,
                        inner,
                        outer,
                    });
                }
            }
        }
    }
    out
}

/// A ℚ-combination of combs with no zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ExprVec {
    terms: BTreeMap<ExprBasisElem, Rational>,
}

impl ExprVec {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(e: ExprBasisElem) -> Self {
        Self::from_terms([(e, Rational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ExprBasisElem, Rational)>) -> Self {
        let mut v = Self::zero();
        for (e, c) in terms {
            v.add_term(e, c);
        }
        v
    }

    fn add_term(&mut self, e: ExprBasisElem, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExprBasisElem, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExprBasisElem) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a * c)))
    }

    /// Relabels the leaves of every term by `sigma`.
    pub fn act_s3(&self, sigma: Perm) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e.act(sigma), c.clone())))
    }

    /// The six images of `self` under S3, in [`Perm::ALL`] order.
    pub fn s3_orbit(&self) -> Vec<ExprVec> {
        Perm::ALL.iter().map(|&p| self.act_s3(p)).collect()
    }

    /// Coordinates against a sorted basis.
    pub fn to_dense(&self, basis: &[ExprBasisElem]) -> Result<Vec<Rational>, ExprError> {
        let mut out = vec![Rational::zero(); basis.len()];
        for (e, c) in &self.terms {
            let i = basis.binary_search(e).map_err(|_| {
                ExprError::NotInBasis(e.render(&default_names(), TermStyle::Text))
            })?;
            out[i] = c.clone();
        }
        Ok(out)
    }

    pub fn from_dense(basis: &[ExprBasisElem], coords: &[Rational]) -> Result<Self, ExprError> {
        if basis.len() != coords.len() {
            return Err(ExprError::LengthMismatch {
                expected: basis.len(),
                got: coords.len(),
            });
        }
        Ok(Self::from_terms(
            basis.iter().copied().zip(coords.iter().cloned()),
        ))
    }

    /// Renders the vector as a signed sum, in basis order.
    pub fn pretty(&self, names: &[String], style: TermStyle) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => out.push('−'),
                (0, false) => {}
                (_, true) => out.push_str(" − "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&rational::abs_prefix(c));
            out.push_str(&e.render(names, style));
        }
        out
    }

    /// Renders `LHS = RHS` with negative terms moved to the right. The
    /// vector is negated first if its leading coefficient is negative; this
    /// is a presentation choice only.
    pub fn pretty_identity(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0 = 0".to_string();
        }
        let v = match self.terms.values().next() {
            Some(c) if c.is_negative() => -self.clone(),
            _ => self.clone(),
        };
        let side = |positive: bool| {
            let parts: Vec<String> = v
                .terms
                .iter()
                .filter(|(_, c)| c.is_positive() == positive)
                .map(|(e, c)| {
                    format!(
                        "{}{}",
                        rational::abs_prefix(c),
                        e.render(names, TermStyle::Text)
                    )
                })
                .collect();
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            }
        };
        format!("{} = {}", side(true), side(false))
    }
}

pub(crate) fn default_names() -> Vec<String> {
    ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
}

impl fmt::Display for ExprVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty(&default_names(), TermStyle::Text))
    }
}

impl Add for ExprVec {
    type Output = ExprVec;

    fn add(mut self, rhs: ExprVec) -> ExprVec {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for ExprVec {
    type Output = ExprVec;

    fn sub(self, rhs: ExprVec) -> ExprVec {
        self + (-rhs)
    }
}

impl Neg for ExprVec {
    type Output = ExprVec;

    fn neg(self) -> ExprVec {
        ExprVec {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul<&Rational> for ExprVec {
    type Output = ExprVec;

    fn mul(self, rhs: &Rational) -> ExprVec {
        self.scale(rhs)
    }
}

impl From<ExprBasisElem> for ExprVec {
    fn from(e: ExprBasisElem) -> Self {
        ExprVec::term(e)
    }
}

fn apply(op: OpSymbol, a: &DiffPoly, b: &DiffPoly) -> Result<DiffPoly, AlgebraError> {
    match op {
        OpSymbol::Derived(w) => a.mul(&b.derive(w)?),
        OpSymbol::Plain => a.mul(b),
    }
}

/// Evaluates one comb on the first three variables of `model`.
pub fn evaluate_elem(e: &ExprBasisElem, model: &Arc<ModelConfig>) -> Result<DiffPoly, ExprError> {
    if model.num_variables() < 3 {
        return Err(ExprError::TooFewVariables(model.num_variables()));
    }
    let [a, b, c] = e.leaves().map(|i| DiffPoly::var(model, i));
    let (a, b, c) = (a?, b?, c?);
    Ok(match e.shape {
        Shape::Left => apply(e.outer, &apply(e.inner, &a, &b)?, &c)?,
        Shape::Right => apply(e.outer, &a, &apply(e.inner, &b, &c)?)?,
    })
}

/// The evaluation map into the free multi-differential algebra; linear in
/// `r`.
pub fn evaluate(r: &ExprVec, model: &Arc<ModelConfig>) -> Result<DiffPoly, ExprError> {
    let mut acc = DiffPoly::zero(model);
    for (e, c) in r.terms() {
        acc = acc.add(&evaluate_elem(e, model)?.scale(c))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    const X: usize = 0;
    const Y: usize = 1;
    const Z: usize = 2;
    const D0: OpSymbol = OpSymbol::Derived(0);

    fn model(commuting: bool, n: usize) -> Arc<ModelConfig> {
        Arc::new(ModelConfig::xyz(commuting, n).unwrap())
    }

    fn novikov_prelie() -> ExprVec {
        ExprVec::term(ExprBasisElem::left(X, D0, Y, D0, Z))
            - ExprVec::term(ExprBasisElem::right(X, D0, Y, D0, Z))
            - ExprVec::term(ExprBasisElem::left(Y, D0, X, D0, Z))
            + ExprVec::term(ExprBasisElem::right(Y, D0, X, D0, Z))
    }

    #[test]
    fn basis_sizes() {
        let m1 = ModelConfig::xyz(true, 1).unwrap();
        let m2 = ModelConfig::xyz(true, 2).unwrap();
        assert_eq!(enumerate_basis(Mode::Pre, &m1).len(), 12);
        assert_eq!(enumerate_basis(Mode::Pre, &m2).len(), 48);
        assert_eq!(enumerate_basis(Mode::Post, &m1).len(), 48);
        let b = enumerate_basis(Mode::Post, &m2);
        assert_eq!(b.len(), 108);
        let mut sorted = b.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, b);
    }

    #[test]
    fn perm_group_laws() {
        for p in Perm::ALL {
            assert_eq!(p.compose(p.inverse()), Perm::IDENTITY);
            for q in Perm::ALL {
                for r in Perm::ALL {
                    assert_eq!(p.compose(q).compose(r), p.compose(q.compose(r)));
                }
            }
        }
        assert_eq!(Perm::ALL[4].name(), "(xyz)");
        assert_eq!(Perm::ALL[4].apply(X), Y);
    }

    #[test]
    fn evaluate_combs() {
        let m = model(true, 2);
        let t = OpSymbol::Derived(1);
        let x = DiffPoly::var(&m, X).unwrap();
        let y = DiffPoly::var(&m, Y).unwrap();
        let z = DiffPoly::var(&m, Z).unwrap();
        let xdydz = x
            .mul(&y.derive(0).unwrap())
            .unwrap()
            .mul(&z.derive(1).unwrap())
            .unwrap();
        let left = evaluate_elem(&ExprBasisElem::left(X, D0, Y, t, Z), &m).unwrap();
        assert_eq!(left, xdydz);
        let right = evaluate_elem(&ExprBasisElem::right(X, D0, Y, t, Z), &m).unwrap();
        let xyddz = x
            .mul(&y)
            .unwrap()
            .mul(&DiffPoly::diff_var(&m, Z, &[0, 1]).unwrap())
            .unwrap();
        assert_eq!(right, xdydz.add(&xyddz).unwrap());
    }

    #[test]
    fn novikov_relator_vanishes() {
        let m = model(true, 1);
        assert!(evaluate(&novikov_prelie(), &m).unwrap().is_zero());
    }

    #[test]
    fn plain_product_is_commutative_multiplication() {
        let m = model(true, 1);
        let e = ExprBasisElem::left(Y, OpSymbol::Plain, X, OpSymbol::Plain, Z);
        let p = evaluate_elem(&e, &m).unwrap();
        assert_eq!(p.to_string(), "x·y·z");
    }

    #[test]
    fn pretty_rendering() {
        let names = default_names();
        assert_eq!(ExprVec::zero().pretty(&names, TermStyle::Text), "0");
        assert_eq!(
            ExprVec::term(ExprBasisElem::left(X, D0, Y, D0, Z)).to_string(),
            "(x ▷_0 y) ▷_0 z"
        );
        assert_eq!(
            novikov_prelie().to_string(),
            "(x ▷_0 y) ▷_0 z − x ▷_0 (y ▷_0 z) − (y ▷_0 x) ▷_0 z + y ▷_0 (x ▷_0 z)"
        );
        assert_eq!(
            novikov_prelie().pretty_identity(&names),
            "(x ▷_0 y) ▷_0 z + y ▷_0 (x ▷_0 z) = x ▷_0 (y ▷_0 z) + (y ▷_0 x) ▷_0 z"
        );
        let v = ExprVec::term(ExprBasisElem::right(Z, D0, X, OpSymbol::Plain, Y))
            .scale(&frac(-3, 2));
        assert_eq!(v.to_string(), "−3/2 z ▷_0 (x ⊻ y)");
        assert_eq!(v.pretty_identity(&names), "3/2 z ▷_0 (x ⊻ y) = 0");
        assert_eq!(
            v.pretty(&names, TermStyle::Json),
            "−3/2 z r0 (x m y)"
        );
    }

    #[test]
    fn parse_inverts_render() {
        let names = default_names();
        let m = ModelConfig::xyz(true, 12).unwrap();
        for e in enumerate_basis(Mode::Post, &m) {
            for style in [TermStyle::Text, TermStyle::Json] {
                let s = e.render(&names, style);
                assert_eq!(ExprBasisElem::parse(&s, &names).unwrap(), e, "{s}");
            }
        }
        assert!(ExprBasisElem::parse("(x r0 x) r1 z", &names).is_err());
        assert!(ExprBasisElem::parse("x r0 y", &names).is_err());
        assert!(ExprBasisElem::parse("(x q0 y) r1 z", &names).is_err());
    }

    #[test]
    fn s3_action() {
        let r = novikov_prelie();
        assert_eq!(r.act_s3(Perm::IDENTITY), r);
        let e = ExprBasisElem::left(X, D0, Y, D0, Z);
        let swapped = ExprVec::term(e).act_s3(Perm::ALL[1]);
        assert_eq!(
            swapped,
            ExprVec::term(ExprBasisElem {
                perm: Perm::ALL[1],
                ..e
            })
        );
        for s in Perm::ALL {
            for p in Perm::ALL {
                assert_eq!(r.act_s3(s.compose(p)), r.act_s3(p).act_s3(s));
            }
        }
    }

    #[test]
    fn action_matches_variable_renaming() {
        let m = model(false, 2);
        let basis = enumerate_basis(Mode::Pre, &m);
        let r = ExprVec::from_terms(
            basis
                .iter()
                .enumerate()
                .map(|(i, e)| (*e, int(i as i64 % 5 - 2))),
        );
        let base = evaluate(&r, &m).unwrap();
        for s in Perm::ALL {
            let lhs = evaluate(&r.act_s3(s), &m).unwrap();
            assert_eq!(lhs, base.rename_vars(&s.images()).unwrap());
        }
    }

    #[test]
    fn dense_round_trip_and_errors() {
        let m = ModelConfig::xyz(true, 1).unwrap();
        let basis = enumerate_basis(Mode::Pre, &m);
        let r = novikov_prelie();
        let d = r.to_dense(&basis).unwrap();
        assert_eq!(d.iter().filter(|c| !c.is_zero()).count(), 4);
        assert_eq!(ExprVec::from_dense(&basis, &d).unwrap(), r);
        let plain = ExprVec::term(ExprBasisElem::left(X, OpSymbol::Plain, Y, D0, Z));
        assert!(matches!(
            plain.to_dense(&basis),
            Err(ExprError::NotInBasis(_))
        ));
        assert_eq!(
            ExprBasisElem::left(X, OpSymbol::Plain, Y, D0, Z).check(&m, Mode::Pre),
            Err(ExprError::PlainInPreMode)
        );
        assert!(ExprBasisElem::left(X, OpSymbol::Derived(1), Y, D0, Z)
            .check(&m, Mode::Pre)
            .is_err());
        let two = Arc::new(ModelConfig::new(true, 1, vec!["a".into(), "b".into()]).unwrap());
        assert_eq!(
            evaluate(&r, &two),
            Err(ExprError::TooFewVariables(2))
        );
    }

    /// Builds a composition directly, with `μ'(a, b) := μ(b, a)` realized
    /// as `D(a)·b` and without going through the comb encoding.
    fn direct_composition(
        outer: Generator,
        slot: Slot,
        inner: Generator,
        m: &Arc<ModelConfig>,
    ) -> DiffPoly {
        let prod = |g: Generator, a: &DiffPoly, b: &DiffPoly| -> DiffPoly {
            let OpSymbol::Derived(w) = g.symbol else {
                panic!()
            };
            if g.primed {
                a.derive(w).unwrap().mul(b).unwrap()
            } else {
                a.mul(&b.derive(w).unwrap()).unwrap()
            }
        };
        let v: Vec<DiffPoly> = (0..3).map(|i| DiffPoly::var(m, i).unwrap()).collect();
        let (p, q, r) = match slot {
            Slot::I => (&v[0], &v[1], &v[2]),
            Slot::II => (&v[1], &v[2], &v[0]),
            Slot::III => (&v[2], &v[0], &v[1]),
        };
        prod(outer, &prod(inner, p, q), r)
    }

    #[test]
    fn composition_table_matches_combs() {
        let names = default_names();
        let m = model(false, 2);
        for (row, outer_primed, slot, inner_primed, classical) in COMPOSITION_TABLE {
            let outer = Generator {
                symbol: D0,
                primed: outer_primed,
            };
            let inner = Generator {
                symbol: D0,
                primed: inner_primed,
            };
            let e = compose(outer, slot, inner);
            let juxtaposed = e
                .render(&names, TermStyle::Text)
                .replace(" ▷_0 ", "")
                .replace(' ', "");
            assert_eq!(juxtaposed, classical, "row {row}");
            assert_eq!(
                evaluate_elem(&e, &m).unwrap(),
                direct_composition(outer, slot, inner, &m),
                "row {row}"
            );
        }
        // the twelve rows hit twelve distinct combs
        let mut all: Vec<ExprBasisElem> = COMPOSITION_TABLE
            .iter()
            .map(|&(_, op, s, ip, _)| {
                compose(
                    Generator { symbol: D0, primed: op },
                    s,
                    Generator { symbol: D0, primed: ip },
                )
            })
            .collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 12);
    }

    #[test]
    fn mixed_operator_compositions_match_direct_products() {
        let m = model(false, 2);
        let d1 = OpSymbol::Derived(1);
        for slot in [Slot::I, Slot::II, Slot::III] {
            for (op, ip) in [(false, false), (false, true), (true, false), (true, true)] {
                let outer = Generator { symbol: D0, primed: op };
                let inner = Generator { symbol: d1, primed: ip };
                assert_eq!(
                    evaluate_elem(&compose(outer, slot, inner), &m).unwrap(),
                    direct_composition(outer, slot, inner, &m)
                );
            }
        }
    }
}

use super::{AlgebraError, DerWord, DiffVar, ModelConfig, Monomial};
use crate::rational::{self, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// An element of the free multi-differential commutative algebra of a model.
///
/// Terms are kept in a map ordered by [`super::monomial_order`] with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Debug, Clone)]
pub struct DiffPoly {
    model: Arc<ModelConfig>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for DiffPoly {
    fn eq(&self, other: &Self) -> bool {
        self.same_model(other) && self.terms == other.terms
    }
}

impl Eq for DiffPoly {}

impl DiffPoly {
    pub fn zero(model: &Arc<ModelConfig>) -> Self {
        DiffPoly {
            model: Arc::clone(model),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(model: &Arc<ModelConfig>, c: Rational) -> Self {
        Self::from_terms(model, [(Monomial::one(), c)])
    }

    pub fn one(model: &Arc<ModelConfig>) -> Self {
        Self::constant(model, Rational::one())
    }

    /// The base variable `i` as a polynomial.
    pub fn var(model: &Arc<ModelConfig>, i: usize) -> Result<Self, AlgebraError> {
        model.check_variable(i)?;
        Ok(Self::from_terms(
            model,
            [(
                Monomial::from_var(DiffVar::base(model.commuting(), i)),
                Rational::one(),
            )],
        ))
    }

    /// A single differential variable `D_{ops[0]} D_{ops[1]} ⋯ (x_i)`.
    pub fn diff_var(
        model: &Arc<ModelConfig>,
        i: usize,
        ops: &[usize],
    ) -> Result<Self, AlgebraError> {
        model.check_variable(i)?;
        for &op in ops {
            model.check_operator(op)?;
        }
        let v = DiffVar {
            var: i,
            word: DerWord::from_ops(model.commuting(), ops),
        };
        Ok(Self::from_terms(model, [(Monomial::from_var(v), Rational::one())]))
    }

    /// Sums duplicate monomials and drops zeros.
    pub fn from_terms(
        model: &Arc<ModelConfig>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut p = Self::zero(model);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn model(&self) -> &Arc<ModelConfig> {
        &self.model
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Drops any zero coefficients. Values built through this API are
    /// already normalized, so this is the identity on them.
    pub fn normalize(&self) -> Self {
        Self::from_terms(
            &self.model,
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    fn same_model(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.model, &other.model) || *self.model == *other.model
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.same_model(other) {
            Ok(())
        } else {
            Err(AlgebraError::ModelMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.model);
        }
        DiffPoly {
            model: Arc::clone(&self.model),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let mut out = Self::zero(&self.model);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Applies the derivation `D_op`, extended from variables to monomials
    /// by the Leibniz rule.
    pub fn derive(&self, op: usize) -> Result<Self, AlgebraError> {
        self.model.check_operator(op)?;
        let mut out = Self::zero(&self.model);
        for (m, c) in &self.terms {
            for (v, e) in m.factors() {
                let coeff = c * Rational::from_integer(e.into());
                out.add_term(m.replace_one(v, v.derive(op)), coeff);
            }
        }
        Ok(out)
    }

    /// Renames base variables: variable `i` becomes `perm[i]`.
    pub fn rename_vars(&self, perm: &[usize]) -> Result<Self, AlgebraError> {
        for &target in perm {
            self.model.check_variable(target)?;
        }
        if perm.len() != self.model.num_variables() {
            return Err(AlgebraError::VariableOutOfRange {
                index: perm.len(),
                count: self.model.num_variables(),
            });
        }
        Ok(Self::from_terms(
            &self.model,
            self.terms.iter().map(|(m, c)| {
                (
                    m.map_vars(|v| DiffVar {
                        var: perm[v.var],
                        word: v.word.clone(),
                    }),
                    c.clone(),
                )
            }),
        ))
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.model.variables();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "−" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "−")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if m.is_one() {
                write!(f, "{}", rational::to_string(&c.abs()))?;
            } else {
                write!(f, "{}{}", rational::abs_prefix(c), m.render(names))?;
            }
        }
        Ok(())
    }
}

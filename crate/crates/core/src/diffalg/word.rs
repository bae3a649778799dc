use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write;
use std::iter;

/// A word in the derivation operators.
///
/// In the commuting model the word is a multiset, stored as an exponent map
/// with no zero entries, so `D_α D_β` and `D_β D_α` are the same value. In
/// the noncommuting model it is a sequence whose first entry is the
/// outermost operator: `[α, β]` stands for `D_α D_β`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DerWord {
    Commuting(BTreeMap<usize, u32>),
    Noncommuting(Vec<usize>),
}

impl DerWord {
    pub fn empty(commuting: bool) -> Self {
        if commuting {
            DerWord::Commuting(BTreeMap::new())
        } else {
            DerWord::Noncommuting(Vec::new())
        }
    }

    /// Builds `D_{ops[0]} D_{ops[1]} ⋯`.
    pub fn from_ops(commuting: bool, ops: &[usize]) -> Self {
        ops.iter()
            .rev()
            .fold(Self::empty(commuting), |w, &op| w.apply(op))
    }

    pub fn is_commuting(&self) -> bool {
        matches!(self, DerWord::Commuting(_))
    }

    pub fn is_empty(&self) -> bool {
        self.order() == 0
    }

    /// Total number of derivations applied.
    pub fn order(&self) -> usize {
        match self {
            DerWord::Commuting(exps) => exps.values().map(|&e| e as usize).sum(),
            DerWord::Noncommuting(ops) => ops.len(),
        }
    }

    /// `D_op ∘ self`.
    pub fn apply(&self, op: usize) -> Self {
        match self {
            DerWord::Commuting(exps) => {
                let mut exps = exps.clone();
                *exps.entry(op).or_insert(0) += 1;
                DerWord::Commuting(exps)
            }
            DerWord::Noncommuting(ops) => {
                let mut out = Vec::with_capacity(ops.len() + 1);
                out.push(op);
                out.extend_from_slice(ops);
                DerWord::Noncommuting(out)
            }
        }
    }

    /// Operator indices with multiplicity: ascending for a commuting word,
    /// outermost first for a noncommuting one.
    pub fn ops(&self) -> Vec<usize> {
        match self {
            DerWord::Commuting(exps) => exps
                .iter()
                .flat_map(|(&op, &e)| iter::repeat_n(op, e as usize))
                .collect(),
            DerWord::Noncommuting(ops) => ops.clone(),
        }
    }

    fn fmt_ops(&self, out: &mut String) {
        match self {
            DerWord::Commuting(exps) => {
                for (op, e) in exps {
                    let _ = write!(out, "D_{op}");
                    if *e > 1 {
                        let _ = write!(out, "^{e}");
                    }
                }
            }
            DerWord::Noncommuting(ops) => {
                for op in ops {
                    let _ = write!(out, "D_{op}");
                }
            }
        }
    }
}

impl Ord for DerWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order().cmp(&other.order()).then_with(|| match (self, other) {
            (DerWord::Commuting(_), DerWord::Commuting(_)) => self.ops().cmp(&other.ops()),
            (DerWord::Noncommuting(a), DerWord::Noncommuting(b)) => a.cmp(b),
            (DerWord::Commuting(_), DerWord::Noncommuting(_)) => Ordering::Less,
            (DerWord::Noncommuting(_), DerWord::Commuting(_)) => Ordering::Greater,
        })
    }
}

impl PartialOrd for DerWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A differential variable `word(var)`.
///
/// Ordered by base variable, then derivative order, then word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiffVar {
    pub var: usize,
    pub word: DerWord,
}

impl DiffVar {
    pub fn base(commuting: bool, var: usize) -> Self {
        DiffVar {
            var,
            word: DerWord::empty(commuting),
        }
    }

    pub fn derive(&self, op: usize) -> Self {
        DiffVar {
            var: self.var,
            word: self.word.apply(op),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        let name = names
            .get(self.var)
            .cloned()
            .unwrap_or_else(|| format!("v{}", self.var));
        if self.word.is_empty() {
            return name;
        }
        let mut out = String::new();
        self.word.fmt_ops(&mut out);
        let _ = write!(out, "({name})");
        out
    }
}

impl Ord for DiffVar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.var
            .cmp(&other.var)
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for DiffVar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A commutative monomial in differential variables. The empty map is `1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: BTreeMap<DiffVar, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_var(v: DiffVar) -> Self {
        Self::from_factors([(v, 1)])
    }

    /// Zero exponents are dropped; repeated variables accumulate.
    pub fn from_factors(factors: impl IntoIterator<Item = (DiffVar, u32)>) -> Self {
        let mut m = Monomial::one();
        for (v, e) in factors {
            if e > 0 {
                *m.factors.entry(v).or_insert(0) += e;
            }
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.values().sum()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&DiffVar, u32)> {
        self.factors.iter().map(|(v, &e)| (v, e))
    }

    pub fn exponent(&self, v: &DiffVar) -> u32 {
        self.factors.get(v).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (v, &e) in &other.factors {
            *out.factors.entry(v.clone()).or_insert(0) += e;
        }
        out
    }

    /// Replaces one copy of `v` by `replacement`. `v` must divide `self`.
    pub(crate) fn replace_one(&self, v: &DiffVar, replacement: DiffVar) -> Monomial {
        let mut out = self.clone();
        match out.factors.get_mut(v) {
            Some(e) if *e > 1 => *e -= 1,
            Some(_) => {
                out.factors.remove(v);
            }
            None => unreachable!("replace_one on a non-dividing variable"),
        }
        *out.factors.entry(replacement).or_insert(0) += 1;
        out
    }

    pub(crate) fn map_vars(&self, f: impl Fn(&DiffVar) -> DiffVar) -> Monomial {
        Monomial::from_factors(self.factors.iter().map(|(v, &e)| (f(v), e)))
    }

    /// Factors listed with multiplicity in ascending variable order.
    fn expanded(&self) -> impl Iterator<Item = &DiffVar> {
        self.factors
            .iter()
            .flat_map(|(v, &e)| iter::repeat_n(v, e as usize))
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|(v, &e)| {
                let base = v.render(names);
                if e == 1 {
                    base
                } else if v.word.is_empty() {
                    format!("{base}^{e}")
                } else {
                    format!("({base})^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("·")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.expanded().cmp(other.expanded()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order on monomials: total degree first, then the sorted factor
/// lists compared lexicographically.
pub fn monomial_order(a: &Monomial, b: &Monomial) -> Ordering {
    a.cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(commuting: bool, var: usize, ops: &[usize]) -> DiffVar {
        DiffVar {
            var,
            word: DerWord::from_ops(commuting, ops),
        }
    }

    #[test]
    fn commuting_words_ignore_construction_order() {
        let a = DerWord::from_ops(true, &[0, 1, 0]);
        let b = DerWord::empty(true).apply(1).apply(0).apply(0);
        assert_eq!(a, b);
        assert_eq!(a.order(), 3);
        assert_eq!(a.ops(), vec![0, 0, 1]);
        let DerWord::Commuting(exps) = &a else {
            panic!()
        };
        assert!(exps.values().all(|&e| e > 0));
    }

    #[test]
    fn noncommuting_words_prepend() {
        let w = DerWord::empty(false).apply(1).apply(0);
        assert_eq!(w, DerWord::Noncommuting(vec![0, 1]));
        assert_eq!(w, DerWord::from_ops(false, &[0, 1]));
        assert_ne!(w, DerWord::from_ops(false, &[1, 0]));
    }

    #[test]
    fn diffvar_order() {
        // var index dominates derivative order
        assert!(dv(true, 0, &[0, 0]) < dv(true, 1, &[]));
        assert!(dv(true, 1, &[]) < dv(true, 1, &[1]));
        assert!(dv(true, 1, &[0]) < dv(true, 1, &[1]));
        assert!(dv(true, 1, &[1]) < dv(true, 1, &[0, 0]));
        assert!(dv(false, 2, &[0, 1]) < dv(false, 2, &[1, 0]));
    }

    #[test]
    fn monomial_order_examples() {
        let one = Monomial::one();
        let x = Monomial::from_var(dv(true, 0, &[]));
        assert_eq!(monomial_order(&one, &x), Ordering::Less);

        let xdy = x.mul(&Monomial::from_var(dv(true, 1, &[0])));
        let xdz = x.mul(&Monomial::from_var(dv(true, 2, &[0])));
        assert_eq!(monomial_order(&xdy, &xdz), Ordering::Less);
        assert_eq!(monomial_order(&xdz, &xdy), Ordering::Greater);
        assert_eq!(monomial_order(&xdz, &xdz), Ordering::Equal);
    }

    #[test]
    fn sorting_is_deterministic() {
        let c = true;
        let m = |fs: &[(usize, &[usize])]| {
            Monomial::from_factors(fs.iter().map(|(v, ops)| (dv(c, *v, ops), 1)))
        };
        let set = vec![
            m(&[(0, &[]), (1, &[0]), (2, &[0])]),
            m(&[(1, &[]), (0, &[0]), (2, &[0])]),
            m(&[(2, &[]), (0, &[0]), (1, &[0])]),
            m(&[(0, &[]), (1, &[]), (2, &[0, 0])]),
            m(&[(1, &[]), (2, &[]), (0, &[0, 0])]),
            m(&[(0, &[]), (2, &[]), (1, &[0, 0])]),
        ];
        let mut first = set.clone();
        first.sort();
        for rot in 1..6 {
            let mut again = set.clone();
            again.rotate_left(rot);
            again.reverse();
            again.sort();
            assert_eq!(again, first);
        }
        // sorted lists start with the variable x: x·y·D²z precedes x·Dy·Dz
        // because y < D(y).
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let rendered: Vec<String> = first.iter().map(|m| m.render(&names)).collect();
        assert_eq!(
            rendered,
            vec![
                "x·y·D_0^2(z)",
                "x·D_0(y)·D_0(z)",
                "x·D_0^2(y)·z",
                "D_0(x)·y·D_0(z)",
                "D_0(x)·D_0(y)·z",
                "D_0^2(x)·y·z",
            ]
        );
    }

    #[test]
    fn replace_one_keeps_other_copies() {
        let x = dv(true, 0, &[]);
        let m = Monomial::from_factors([(x.clone(), 2)]);
        let r = m.replace_one(&x, x.derive(0));
        assert_eq!(r.exponent(&x), 1);
        assert_eq!(r.exponent(&x.derive(0)), 1);
        assert_eq!(r.degree(), 2);
    }
}

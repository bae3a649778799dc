//! Report rendering. The json schema is stable and carries no timing, so
//! identical configurations give identical bytes.

use crate::config::model_name;
use induced_core::catalog::{FamilyVerdicts, KernelReport};
use induced_core::exprspace::{ExprBasisElem, ExprError, ExprVec, TermStyle};
use induced_core::rational;
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    /// e.g. `(x r0 y) r1 z`
    pub term: String,
    /// `p/q` in lowest terms, `/1` omitted
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonVerdicts {
    pub family: String,
    pub contains_all: bool,
    pub leq: bool,
    pub geq: bool,
    pub eq: bool,
    pub relator_count: usize,
    pub span_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub model: String,
    pub ops: usize,
    pub mode: String,
    pub basis_size: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub kernel_basis: Vec<Vec<JsonTerm>>,
    pub verdicts: Option<JsonVerdicts>,
    pub column_count: usize,
    pub exploratory: bool,
    pub degenerate_identifications: Vec<String>,
}

impl From<&FamilyVerdicts> for JsonVerdicts {
    fn from(v: &FamilyVerdicts) -> Self {
        JsonVerdicts {
            family: v.family.as_str().to_string(),
            contains_all: v.contains_all,
            leq: v.leq,
            geq: v.geq,
            eq: v.eq,
            relator_count: v.relator_count,
            span_dim: v.span_dim,
        }
    }
}

impl JsonReport {
    pub fn from_report(r: &KernelReport) -> Self {
        let names = r.model.variables();
        JsonReport {
            model: model_name(r.model.commuting()).to_string(),
            ops: r.model.num_operators(),
            mode: r.mode.as_str().to_string(),
            basis_size: r.basis_size(),
            rank: r.rank,
            kernel_dim: r.kernel_dim(),
            kernel_basis: r
                .kernel_basis
                .iter()
                .map(|v| {
                    v.terms()
                        .map(|(e, c)| JsonTerm {
                            term: e.render(names, TermStyle::Json),
                            coeff: rational::to_string(c),
                        })
                        .collect()
                })
                .collect(),
            verdicts: r.verdicts.as_ref().map(JsonVerdicts::from),
            column_count: r.column_count(),
            exploratory: r.exploratory,
            degenerate_identifications: r.degenerate_identifications.clone(),
        }
    }

    /// Parses the kernel basis back into expression vectors.
    pub fn kernel_vectors(&self, names: &[String]) -> Result<Vec<ExprVec>, ExprError> {
        self.kernel_basis
            .iter()
            .map(|terms| {
                let parsed = terms
                    .iter()
                    .map(|t| {
                        let e = ExprBasisElem::parse(&t.term, names)?;
                        let c = rational::parse(&t.coeff)
                            .ok_or_else(|| ExprError::Parse(format!("bad coefficient `{}`", t.coeff)))?;
                        Ok((e, c))
                    })
                    .collect::<Result<Vec<_>, ExprError>>()?;
                Ok(ExprVec::from_terms(parsed))
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_text(r: &KernelReport) -> String {
    let names = r.model.variables();
    let mut s = String::new();
    let _ = writeln!(s, "model: {}", r.model.summary());
    let _ = writeln!(s, "mode: {}", r.mode.as_str());
    if r.exploratory {
        let _ = writeln!(s, "note: post-mode kernels are exploratory");
    }
    let _ = writeln!(s, "basis size: {}", r.basis_size());
    let _ = writeln!(s, "monomials hit: {}", r.column_count());
    let _ = writeln!(s, "rank: {}", r.rank);
    let _ = writeln!(s, "kernel dimension: {}", r.kernel_dim());
    let _ = writeln!(s, "kernel basis:");
    let width = r.kernel_basis.len().to_string().len();
    for (i, v) in r.kernel_basis.iter().enumerate() {
        let _ = writeln!(s, "  [{:>width$}] {}", i + 1, v.pretty_identity(names));
    }
    if !r.degenerate_identifications.is_empty() {
        let _ = writeln!(s, "arity-2 identifications:");
        for line in &r.degenerate_identifications {
            let _ = writeln!(s, "  {line}");
        }
    }
    if let Some(v) = &r.verdicts {
        let _ = writeln!(s, "verification against {}:", v.family);
        let _ = writeln!(s, "  relators: {}, S3-span dimension: {}", v.relator_count, v.span_dim);
        let _ = writeln!(s, "  every relator in kernel: {}", yes(v.contains_all));
        let _ = writeln!(s, "  span ⊆ kernel: {}", yes(v.leq));
        let _ = writeln!(s, "  kernel ⊆ span: {}", yes(v.geq));
        let _ = writeln!(s, "  equal: {}", yes(v.eq));
    }
    let _ = writeln!(s, "wall time: {:.3} ms", r.wall_time.as_secs_f64() * 1e3);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use induced_core::catalog::{compute_kernel, verify, FamilyId};
    use induced_core::exprspace::Mode;
    use induced_core::ModelConfig;

    #[test]
    fn json_round_trip_reproduces_report() {
        for (commuting, n, mode) in [(true, 1, Mode::Pre), (false, 2, Mode::Pre), (true, 1, Mode::Post)] {
            let r = compute_kernel(&ModelConfig::xyz(commuting, n).unwrap(), mode);
            let j = JsonReport::from_report(&r);
            let back: JsonReport = serde_json::from_str(&j.to_json()).unwrap();
            assert_eq!(back, j);
            assert_eq!(back.kernel_vectors(r.model.variables()).unwrap(), r.kernel_basis);
        }
    }

    #[test]
    fn text_lists_identities_and_verdicts() {
        let r = verify(FamilyId::Novikov, &ModelConfig::xyz(true, 1).unwrap(), Mode::Pre).unwrap();
        let t = render_text(&r);
        assert!(t.contains("kernel dimension: 6"));
        assert_eq!(t.lines().filter(|l| l.contains(" = ")).count(), 6);
        assert!(t.contains("  equal: yes"));
    }
}

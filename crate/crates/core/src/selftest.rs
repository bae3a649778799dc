//! Seeded randomized property suites.
//!
//! Each case draws from its own ChaCha stream derived from the seed, the
//! property and the case index, so a run is reproducible and independent of
//! how cases are scheduled across threads.

use crate::catalog::{compute_kernel_with, kernel_is_s3_stable, kernel_vectors_vanish};
use crate::diffalg::{DerWord, DiffPoly, DiffVar, ModelConfig, Monomial};
use crate::exprspace::{enumerate_basis, evaluate, ExprBasisElem, ExprVec, Mode, Perm};
use crate::linalg::{RatMatrix, Subspace};
use crate::par::Execution;
use crate::rational::{frac, int, Rational};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

type Case = fn(&mut ChaCha8Rng) -> Result<(), String>;

/// Randomized properties, in run order.
pub const PROPERTIES: [(&str, Case); 9] = [
    ("leibniz", leibniz),
    ("derive_linearity", derive_linearity),
    ("ring_laws", ring_laws),
    ("derivation_commutation", derivation_commutation),
    ("noncommutation_witness", noncommutation_witness),
    ("evaluate_s3_equivariance", evaluate_equivariance),
    ("evaluate_linearity", evaluate_linearity),
    ("rref_idempotence_rank_nullity", rref_rank_nullity),
    ("span_canonicality", span_canonicality),
];

pub fn case_rng(seed: u64, property: usize, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (property as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(case as u64);
    rng
}

pub fn run_property(
    index: usize,
    seed: u64,
    cases: usize,
    exec: Execution,
) -> PropertyOutcome {
    let (name, case) = PROPERTIES[index];
    let results = exec.map_range(cases, |i| case(&mut case_rng(seed, index, i)));
    let mut failures = results.iter().filter(|r| r.is_err());
    let first_failure = failures.next().and_then(|r| r.clone().err());
    PropertyOutcome {
        name,
        cases,
        failures: results.iter().filter(|r| r.is_err()).count(),
        first_failure,
    }
}

/// Every randomized property with `cases` cases each, followed by the
/// kernel-report checks.
pub fn run_all(seed: u64, cases: usize, exec: Execution) -> Vec<PropertyOutcome> {
    let mut out: Vec<PropertyOutcome> = (0..PROPERTIES.len())
        .map(|i| run_property(i, seed, cases, exec))
        .collect();
    out.push(kernel_reports(exec));
    out
}

/// Kernel vectors evaluate to zero and the kernel is S3-stable, for every
/// pre-mode report with n ≤ 3 and every post-mode report with n ≤ 2.
pub fn kernel_reports(exec: Execution) -> PropertyOutcome {
    let mut configs = Vec::new();
    for commuting in [true, false] {
        for n in 1..=3 {
            configs.push((commuting, n, Mode::Pre));
        }
        for n in 1..=2 {
            configs.push((commuting, n, Mode::Post));
        }
    }
    let results = exec.map(&configs, |&(commuting, n, mode)| {
        let model = ModelConfig::xyz(commuting, n).map_err(|e| e.to_string())?;
        let report = compute_kernel_with(&model, mode, Execution::Sequential);
        let tag = format!("{} {}", model.summary(), mode.as_str());
        if !kernel_vectors_vanish(&report).map_err(|e| e.to_string())? {
            return Err(format!("{tag}: a kernel vector evaluates to nonzero"));
        }
        if !kernel_is_s3_stable(&report).map_err(|e| e.to_string())? {
            return Err(format!("{tag}: kernel not S3-stable"));
        }
        Ok(())
    });
    PropertyOutcome {
        name: "kernel_reports",
        cases: configs.len(),
        failures: results.iter().filter(|r| r.is_err()).count(),
        first_failure: results.into_iter().find_map(Result::err),
    }
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    let den = rng.gen_range(1..=4);
    frac(rng.gen_range(-6..=6), den)
}

fn random_model(rng: &mut impl Rng, max_n: usize) -> Arc<ModelConfig> {
    let n = rng.gen_range(1..=max_n);
    Arc::new(ModelConfig::xyz(rng.gen_bool(0.5), n).expect("n ≥ 1"))
}

fn random_diff_var(rng: &mut impl Rng, model: &ModelConfig, max_order: usize) -> DiffVar {
    let order = rng.gen_range(0..=max_order);
    let ops: Vec<usize> = (0..order)
        .map(|_| rng.gen_range(0..model.num_operators()))
        .collect();
    DiffVar {
        var: rng.gen_range(0..model.num_variables()),
        word: DerWord::from_ops(model.commuting(), &ops),
    }
}

/// A polynomial with up to `max_terms` terms, each of degree ≤ `max_degree`
/// in differential variables of order ≤ 2.
pub fn random_poly(
    rng: &mut impl Rng,
    model: &Arc<ModelConfig>,
    max_degree: usize,
    max_terms: usize,
) -> DiffPoly {
    let terms = rng.gen_range(0..=max_terms);
    DiffPoly::from_terms(
        model,
        (0..terms).map(|_| {
            let deg = rng.gen_range(0..=max_degree);
            let m = Monomial::from_factors((0..deg).map(|_| (random_diff_var(rng, model, 2), 1)));
            (m, random_rational(rng))
        }),
    )
}

pub fn random_exprvec(rng: &mut impl Rng, basis: &[ExprBasisElem], max_terms: usize) -> ExprVec {
    let k = rng.gen_range(0..=max_terms);
    ExprVec::from_terms(
        (0..k).map(|_| (*basis.choose(rng).expect("nonempty basis"), random_rational(rng))),
    )
}

/// A small integer matrix, with some rows forced to be combinations of
/// earlier ones so that rank deficiency is common.
pub fn random_matrix(rng: &mut impl Rng) -> RatMatrix {
    let rows = rng.gen_range(0..=6);
    let cols = rng.gen_range(1..=7);
    let mut data: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    for i in 0..rows {
        if i >= 2 && rng.gen_bool(0.4) {
            let a = random_rational(rng);
            let b = random_rational(rng);
            let (p, q) = (rng.gen_range(0..i), rng.gen_range(0..i));
            let row = (0..cols)
                .map(|j| &a * &data[p][j] + &b * &data[q][j])
                .collect();
            data.push(row);
        } else {
            data.push((0..cols).map(|_| int(rng.gen_range(-3..=3))).collect());
        }
    }
    RatMatrix::from_rows(cols, data).expect("rectangular")
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn leibniz(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let m = random_model(rng, 3);
    let p = random_poly(rng, &m, 3, 4);
    let q = random_poly(rng, &m, 3, 4);
    let w = rng.gen_range(0..m.num_operators());
    let err = |e: crate::diffalg::AlgebraError| e.to_string();
    let lhs = p.mul(&q).map_err(err)?.derive(w).map_err(err)?;
    let rhs = p
        .derive(w)
        .map_err(err)?
        .mul(&q)
        .map_err(err)?
        .add(&p.mul(&q.derive(w).map_err(err)?).map_err(err)?)
        .map_err(err)?;
    check(lhs == rhs, || format!("D_{w}(({p})·({q})) mismatch"))
}

fn derive_linearity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let m = random_model(rng, 3);
    let p = random_poly(rng, &m, 3, 4);
    let q = random_poly(rng, &m, 3, 4);
    let (a, b) = (random_rational(rng), random_rational(rng));
    let w = rng.gen_range(0..m.num_operators());
    let combo = p.scale(&a).add(&q.scale(&b)).map_err(|e| e.to_string())?;
    let lhs = combo.derive(w).map_err(|e| e.to_string())?;
    let rhs = p
        .derive(w)
        .map_err(|e| e.to_string())?
        .scale(&a)
        .add(&q.derive(w).map_err(|e| e.to_string())?.scale(&b))
        .map_err(|e| e.to_string())?;
    check(lhs == rhs, || format!("linearity of D_{w} fails on {p}, {q}"))
}

fn ring_laws(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let m = random_model(rng, 2);
    let p = random_poly(rng, &m, 2, 3);
    let q = random_poly(rng, &m, 2, 3);
    let r = random_poly(rng, &m, 2, 3);
    let e = |e: crate::diffalg::AlgebraError| e.to_string();
    check(p.mul(&q).map_err(e)? == q.mul(&p).map_err(e)?, || {
        "mul not commutative".into()
    })?;
    check(
        p.mul(&q).map_err(e)?.mul(&r).map_err(e)? == p.mul(&q.mul(&r).map_err(e)?).map_err(e)?,
        || "mul not associative".into(),
    )?;
    check(
        p.mul(&q.add(&r).map_err(e)?).map_err(e)?
            == p.mul(&q).map_err(e)?.add(&p.mul(&r).map_err(e)?).map_err(e)?,
        || "mul not distributive".into(),
    )?;
    check(p.add(&q).map_err(e)? == q.add(&p).map_err(e)?, || {
        "add not commutative".into()
    })?;
    check(p.normalize().normalize() == p.normalize() && p.normalize() == p, || {
        "normalize not idempotent".into()
    })
}

fn derivation_commutation(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let m = Arc::new(ModelConfig::xyz(true, 3).expect("valid"));
    let p = random_poly(rng, &m, 3, 4);
    for a in 0..3 {
        for b in 0..3 {
            let ab = p.derive(a).and_then(|x| x.derive(b));
            let ba = p.derive(b).and_then(|x| x.derive(a));
            check(ab == ba, || format!("D_{a} D_{b} ≠ D_{b} D_{a} on {p}"))?;
        }
    }
    Ok(())
}

fn noncommutation_witness(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(2..=3);
    let m = Arc::new(ModelConfig::xyz(false, n).expect("valid"));
    let v = DiffPoly::var(&m, rng.gen_range(0..3)).map_err(|e| e.to_string())?;
    let a = rng.gen_range(0..n);
    let b = (a + rng.gen_range(1..n)) % n;
    let ab = v.derive(a).and_then(|x| x.derive(b)).map_err(|e| e.to_string())?;
    let ba = v.derive(b).and_then(|x| x.derive(a)).map_err(|e| e.to_string())?;
    check(ab != ba, || format!("D_{a} and D_{b} commute on {v}"))
}

fn evaluate_equivariance(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let m = random_model(rng, 2);
    let mode = if rng.gen_bool(0.5) { Mode::Pre } else { Mode::Post };
    let basis = enumerate_basis(mode, &m);
    let r = random_exprvec(rng, &basis, 8);
    let sigma = *Perm::ALL.choose(rng).expect("nonempty");
    let lhs = evaluate(&r.act_s3(sigma), &m).map_err(|e| e.to_string())?;
    let rhs = evaluate(&r, &m)
        .map_err(|e| e.to_string())?
        .rename_vars(&sigma.images())
        .map_err(|e| e.to_string())?;
    check(lhs == rhs, || format!("σ = {} breaks equivariance on {r}", sigma.name()))
}

fn evaluate_linearity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let m = random_model(rng, 2);
    let basis = enumerate_basis(Mode::Post, &m);
    let r = random_exprvec(rng, &basis, 6);
    let s = random_exprvec(rng, &basis, 6);
    let (a, b) = (random_rational(rng), random_rational(rng));
    let e = |e: crate::exprspace::ExprError| e.to_string();
    let lhs = evaluate(&(r.scale(&a) + s.scale(&b)), &m).map_err(e)?;
    let rhs = evaluate(&r, &m)
        .map_err(e)?
        .scale(&a)
        .add(&evaluate(&s, &m).map_err(e)?.scale(&b))
        .map_err(|e| e.to_string())?;
    check(lhs == rhs, || format!("evaluation not linear on {r}, {s}"))
}

fn rref_rank_nullity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let m = random_matrix(rng);
    let (r, rank) = m.rref();
    check(r.rref() == (r.clone(), rank), || format!("rref not idempotent:\n{m}"))?;
    let ns = m.nullspace();
    check(rank + ns.dim() == m.cols(), || format!("rank–nullity fails:\n{m}"))?;
    for v in ns.basis_vectors() {
        let image = m.mul_vec(&v).map_err(|e| e.to_string())?;
        check(image.iter().all(Zero::is_zero), || {
            format!("nullspace vector not annihilated:\n{m}")
        })?;
    }
    Ok(())
}

fn span_canonicality(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let m = random_matrix(rng);
    let mut rows = m.row_vecs();
    let base = Subspace::span(&rows, m.cols()).map_err(|e| e.to_string())?;
    rows.shuffle(rng);
    let rescaled: Vec<Vec<Rational>> = rows
        .into_iter()
        .map(|row| {
            let mut c = random_rational(rng);
            if c.is_zero() {
                c = int(1);
            }
            row.into_iter().map(|x| x * &c).collect()
        })
        .collect();
    let other = Subspace::span(&rescaled, m.cols()).map_err(|e| e.to_string())?;
    check(
        other.eq_subspace(&base).map_err(|e| e.to_string())?,
        || format!("span not canonical:\n{m}"),
    )
}

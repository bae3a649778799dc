use induced_core::catalog::{
    self, compute_kernel, embed_pre_in_post, gelfand_check, gelfand_residues, kernel_contains,
    kernel_is_s3_stable, kernel_vectors_vanish, orbit_span, plain_associativity,
    plain_commutativity, plain_span, relators, ternary, verify, FamilyId,
};
use induced_core::exprspace::{enumerate_basis, Mode};
use induced_core::{Execution, ModelConfig};

fn model(commuting: bool, n: usize) -> ModelConfig {
    ModelConfig::xyz(commuting, n).unwrap()
}

#[test]
fn novikov_is_the_whole_single_operator_kernel() {
    let r = verify(FamilyId::Novikov, &model(true, 1), Mode::Pre).unwrap();
    let v = r.verdicts.as_ref().unwrap();
    assert_eq!(r.kernel_dim(), 6);
    assert_eq!(v.span_dim, 6);
    assert!(v.contains_all && v.leq && v.geq && v.eq);
}

#[test]
fn pre_lie_alone_is_a_proper_subspace() {
    let v = verify(FamilyId::PreLie, &model(true, 1), Mode::Pre)
        .unwrap()
        .verdicts
        .unwrap();
    assert!(v.leq);
    assert!(!v.geq);
    assert!(!v.eq);
    assert!(v.span_dim < 6);
}

#[test]
fn single_operator_models_coincide() {
    let v = verify(FamilyId::Novikov, &model(false, 1), Mode::Pre)
        .unwrap()
        .verdicts
        .unwrap();
    assert!(v.eq);
    for mode in [Mode::Pre, Mode::Post] {
        let a = compute_kernel(&model(true, 1), mode);
        let b = compute_kernel(&model(false, 1), mode);
        assert_eq!(a.kernel, b.kernel);
    }
}

#[test]
fn multi_novikov_commuting() {
    for n in 1..=3 {
        let v = verify(FamilyId::MultiNovikov, &model(true, n), Mode::Pre)
            .unwrap()
            .verdicts
            .unwrap();
        assert!(v.eq, "n = {n}");
    }
}

#[test]
fn multi_novikov_noncommuting() {
    for n in 1..=3 {
        let v = verify(FamilyId::NcMultiNovikov, &model(false, n), Mode::Pre)
            .unwrap()
            .verdicts
            .unwrap();
        assert!(v.eq, "n = {n}");
        // the commuting family is too strong for noncommuting derivations
        let strong = verify(FamilyId::MultiNovikov, &model(false, n), Mode::Pre)
            .unwrap()
            .verdicts
            .unwrap();
        assert_eq!(strong.leq, n == 1, "n = {n}");
    }
}

#[test]
fn noncommuting_kernel_sits_inside_commuting_kernel() {
    for n in 1..=3 {
        let nc = compute_kernel(&model(false, n), Mode::Pre);
        let c = compute_kernel(&model(true, n), Mode::Pre);
        assert!(nc.kernel.leq(&c.kernel).unwrap());
        assert_eq!(nc.kernel.eq_subspace(&c.kernel).unwrap(), n == 1);
    }
}

#[test]
fn gelfand_forward_inclusions() {
    assert!(gelfand_check(FamilyId::Novikov, &model(true, 1)).unwrap());
    for n in 1..=3 {
        assert!(gelfand_check(FamilyId::MultiNovikov, &model(true, n)).unwrap());
        assert!(gelfand_check(FamilyId::NcMultiNovikov, &model(false, n)).unwrap());
        assert!(gelfand_check(FamilyId::RightCommutativity, &model(false, n)).unwrap());
    }
    assert!(!gelfand_check(FamilyId::MultiNovikov, &model(false, 2)).unwrap());
    // the residue is exactly the commutator term, never a first-order one
    for (_, p) in gelfand_residues(FamilyId::MultiNovikov, &model(false, 3)).unwrap() {
        assert_eq!(p.len(), 2);
        for (m, _) in p.terms() {
            assert!(m.factors().any(|(v, _)| v.word.order() == 2));
        }
    }
}

#[test]
fn ternary_relations() {
    let m = model(true, 2);
    let report = compute_kernel(&m, Mode::Pre);
    let mut ternary_pair = Vec::new();
    let mut scheme_pair = Vec::new();
    for w in 0..2 {
        for t in 0..2 {
            for r in [ternary::first(w, t), ternary::second(w, t), ternary::third(w, t)] {
                assert!(kernel_contains(&report, &r).unwrap());
            }
            ternary_pair.push(ternary::second(w, t));
            ternary_pair.push(ternary::third(w, t));
            scheme_pair.push(catalog::mixed_associator_symmetry(w, t));
            scheme_pair.push(ternary::third(w, t));
        }
    }
    let a = plain_span(&ternary_pair, &report.basis).unwrap();
    let b = plain_span(&scheme_pair, &report.basis).unwrap();
    assert!(a.eq_subspace(&b).unwrap());
}

#[test]
fn post_mode_properties() {
    for commuting in [true, false] {
        for n in 1..=2 {
            let pre = compute_kernel(&model(commuting, n), Mode::Pre);
            let post = compute_kernel(&model(commuting, n), Mode::Post);
            assert!(post.exploratory);
            assert!(kernel_contains(&post, &plain_associativity()).unwrap());
            assert!(kernel_contains(&post, &plain_commutativity()).unwrap());
            for v in &pre.kernel_basis {
                assert!(kernel_contains(&post, &embed_pre_in_post(v)).unwrap());
            }
            assert!(kernel_vectors_vanish(&post).unwrap());
            assert!(kernel_is_s3_stable(&post).unwrap());
            let again = compute_kernel(&model(commuting, n), Mode::Post);
            assert_eq!(again.kernel_dim(), post.kernel_dim());
            assert_eq!(again.kernel, post.kernel);
        }
    }
}

#[test]
fn orbit_of_novikov_relators_has_dimension_six() {
    let m = model(true, 1);
    let basis = enumerate_basis(Mode::Pre, &m);
    let rels = relators(FamilyId::Novikov, &m, Mode::Pre).unwrap();
    assert_eq!(
        orbit_span(&rels, &basis, Execution::Sequential).unwrap().dim(),
        6
    );
}

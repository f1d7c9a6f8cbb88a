mod common;
mod strategies;

use dessin_core::pattern::{default_patterns, validate_pattern, BUILTIN_NAMES};
use dessin_core::{
    apply, apply_sequence, builtin, canonicalize_pattern, Dessin, Permutation, RolePermutation,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use strategies::*;

fn raw(p: &Permutation) -> Vec<usize> {
    p.images().into_iter().map(|v| v - 1).collect()
}

fn pattern_index() -> impl Strategy<Value = usize> {
    0..default_patterns().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn id_is_the_identity(d in dessin(1, 10)) {
        prop_assert_eq!(apply(&builtin("id").unwrap(), &d), d);
    }

    #[test]
    fn outputs_are_dessins_of_the_same_genus(d in dessin(1, 8), i in pattern_index()) {
        let p = &default_patterns()[i];
        let out = apply(p, &d);
        prop_assert_eq!(out.degree(), d.degree() * p.degree());
        prop_assert!(common::transitive(&raw(out.x()), &raw(out.y())));
        prop_assert_eq!(out.genus().unwrap(), d.genus().unwrap());
    }

    #[test]
    fn apply_respects_isomorphism((d, g) in dessin_and_relabel(1, 7), i in pattern_index()) {
        let p = &default_patterns()[i];
        let a = apply(p, &d);
        let b = apply(p, &d.relabel(&g).unwrap());
        prop_assert!(a.is_isomorphic(&b));
    }

    #[test]
    fn relabeled_patterns_are_equivalent(d in dessin(1, 6), i in pattern_index(), g in perm(6)) {
        let p = &default_patterns()[i];
        prop_assume!(p.degree() == 6);
        let q = p.relabel(&g).unwrap();
        prop_assert!(p.equivalent(&q));
        prop_assert_eq!(canonicalize_pattern(&q), canonicalize_pattern(p));
        prop_assert!(apply(p, &d).is_isomorphic(&apply(&q, &d)));
    }

    #[test]
    fn role_suffix_matches_role_change(d in dessin(1, 7), h in 0usize..6) {
        let role = RolePermutation::ALL[h];
        let p = builtin("gamma").unwrap();
        let direct = apply(&p.clone().with_role(role), &d);
        let via = apply(&p, &d.relabel_role(role));
        prop_assert_eq!(&direct, &via);
        let named = builtin(&format!("gamma@{role}")).unwrap();
        prop_assert_eq!(apply(&named, &d), direct);
    }

    #[test]
    fn sequences_compose_right_to_left(d in dessin(1, 4)) {
        let gamma = builtin("gamma").unwrap();
        let alpha = builtin("alpha").unwrap();
        let seq = apply_sequence(&[alpha.clone(), gamma.clone()], &d).unwrap();
        prop_assert_eq!(&seq, &apply(&alpha, &apply(&gamma, &d)));
        prop_assert_eq!(seq.genus().unwrap(), d.genus().unwrap());
    }
}

#[test]
fn builtins_validate_cleanly() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in BUILTIN_NAMES {
        let report = validate_pattern(&builtin(name).unwrap(), 200, &mut rng);
        assert!(report.is_ok(), "{name}: {:?}", report.violations);
    }
}

#[test]
fn unit_maps_to_the_gray_dessin() {
    for p in default_patterns() {
        assert!(
            apply(&p, &Dessin::unit()).is_isomorphic(&p.gray_dessin()),
            "{}",
            p.name
        );
    }
}

#[test]
fn empty_sequence_is_an_error() {
    assert!(apply_sequence(&[], &Dessin::unit()).is_err());
}

#[test]
fn unknown_builtin_is_an_error() {
    assert!(builtin("nope").is_err());
    assert!(builtin("gamma@xyz").is_err());
}

#[test]
fn broken_patterns_fail_without_panicking() {
    use dessin_core::format::parse_pattern;
    use dessin_core::invariants::m_beta;
    use dessin_core::try_apply;
    let bad = parse_pattern("name: bad\ndegree: 3\nxb: (1 2)\nyb: (2 3)\nwx: 1=y; 3=y\n").unwrap();
    let d = dessin_core::data::delta();
    assert!(try_apply(&bad, &d).is_err());
    assert!(!m_beta(&d, &bad).transitive);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    assert!(!validate_pattern(&bad, 50, &mut rng).is_ok());
}

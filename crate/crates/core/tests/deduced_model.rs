mod common;

use cke_core::group::{random_word, GroupModel, GroupWord};
use cke_core::linalg::QMatrix;
use cke_core::pc::{action_matrices, build_presentation, DeducedGroup};
use cke_core::platform::PlatformSpec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn deduced(p: &PlatformSpec) -> DeducedGroup {
    action_matrices(&build_presentation(p).unwrap())
}

#[test]
fn tau_is_homomorphism_on_200_words() {
    for p in common::all() {
        let dg = deduced(&p);
        let mut rng = ChaCha8Rng::seed_from_u64(200);
        let count = dg.generator_count();
        for _ in 0..200 {
            let u = random_word(&mut rng, count, 12);
            let v = random_word(&mut rng, count, 12);
            let lhs = dg.tau(&u.concat(&v)).unwrap();
            let rhs = dg.tau(&u).unwrap().try_mul(&dg.tau(&v).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{}", p.name());
            // τ agrees with transporting the pair-model value.
            assert_eq!(
                dg.tau(&u).unwrap(),
                p.to_deduced(&p.eval_generator_word(&u).unwrap())
            );
        }
    }
}

#[test]
fn inverse_exponent_pairing() {
    for p in common::all() {
        let pc = build_presentation(&p).unwrap();
        let n = p.degree();
        for i in 0..pc.unit_generators() {
            let a = pc.exponent_matrix_of(i);
            let b = pc.inverse_exponent_matrix_of(i);
            assert!(a.is_integral() && b.is_integral());
            assert_eq!(
                a.mul(&b).unwrap(),
                QMatrix::identity(n),
                "{} generator {}",
                p.name(),
                i
            );
            assert_eq!(b.mul(&a).unwrap(), QMatrix::identity(n));
        }
    }
}

#[test]
fn action_matrices_commute() {
    for p in common::all() {
        let dg = deduced(&p);
        for a in dg.action() {
            for b in dg.action() {
                assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
            }
        }
    }
}

#[test]
fn action_matches_field_multiplication() {
    // Row j of C_i is the coordinate vector of O_j · U_i.
    for p in common::all() {
        let dg = deduced(&p);
        for (u, c) in p.units().iter().zip(dg.action()) {
            for (j, o) in p.basis().iter().enumerate() {
                assert_eq!(c.row(j), p.coords(&(o * u)));
            }
        }
    }
}

#[test]
fn field_basis_spans_unit_algebra() {
    for p in common::all() {
        let dg = deduced(&p);
        assert!(dg.field_basis_is_closed());
        assert_eq!(dg.field_basis()[0], QMatrix::identity(p.degree()));
        assert!(dg.field_basis().len() <= p.degree());
    }
}

#[test]
fn pair_to_word_roundtrip() {
    for p in [common::golden(), common::quintic()] {
        let dg = deduced(&p);
        let m = p.unit_count();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..30 {
            // Short words keep unit exponents inside the search box.
            let w = random_word(&mut rng, dg.generator_count(), 3);
            let x = dg.tau(&w).unwrap();
            let normal = dg.pair_to_word(&x, 3).unwrap();
            assert_eq!(dg.tau(&normal).unwrap(), x);
            // normal form: unit letters first
            let first_translation = normal.letters().iter().position(|l| l.generator >= m);
            if let Some(k) = first_translation {
                assert!(normal.letters()[k..].iter().all(|l| l.generator >= m));
            }
        }
        assert_eq!(
            dg.pair_to_word(&dg.identity_element(), 0).unwrap(),
            GroupWord::empty()
        );
    }
}

#[test]
fn transport_preserves_products() {
    for p in common::all() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let dg = deduced(&p);
        for _ in 0..40 {
            let x = p
                .eval_generator_word(&random_word(&mut rng, p.generator_count(), 8))
                .unwrap();
            let y = p
                .eval_generator_word(&random_word(&mut rng, p.generator_count(), 8))
                .unwrap();
            let lhs = p.to_deduced(&x.mul(&y));
            let rhs = dg.mul(&p.to_deduced(&x), &p.to_deduced(&y));
            assert_eq!(lhs, rhs);
            assert_eq!(
                p.to_deduced(&x.conj_by(&y)),
                dg.conj(&p.to_deduced(&x), &p.to_deduced(&y))
            );
        }
    }
}

#[test]
fn presentation_dump_lists_every_relation() {
    let p = common::quintic();
    let pc = build_presentation(&p).unwrap();
    let text = pc.to_string();
    let m = pc.unit_generators();
    let n = pc.translation_generators();
    assert_eq!((m, n), (3, 5));
    assert!(text.contains("g1^2"));
    let conj_lines = text
        .lines()
        .filter(|l| l.contains("^g") || l.contains("^(g"))
        .count();
    assert!(conj_lines >= 2 * m * n, "{text}");
}

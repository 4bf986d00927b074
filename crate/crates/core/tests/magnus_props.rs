//! Laws of the Magnus embeddings: homomorphism, inverses, the commuting
//! square with per-coordinate evaluation, degree bounds, truncation
//! coherence, and the graded commutator law.

mod common;

use common::random_word;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subfree::magnus::{eta_free, eta_gamma, lcs_member, specialize};
use subfree::sec::eval_substitution;
use subfree::words::{comm, Alphabet, Word};
use subfree::{PolySeries, Rat, Result};

fn eta_of_product_is_product_of_etas(u: &Word, v: &Word, trunc: usize) -> Result<bool> {
    let free = u.alphabet() == &Alphabet::ab();
    if free {
        let lhs = eta_free(&u.mul(v)?, trunc)?;
        let rhs = eta_free(u, trunc)?.mul(&eta_free(v, trunc)?)?;
        Ok(lhs == rhs)
    } else {
        let lhs = eta_gamma(&u.mul(v)?, trunc)?;
        let rhs = eta_gamma(u, trunc)?.mul(&eta_gamma(v, trunc)?)?;
        Ok(lhs == rhs)
    }
}

#[test]
fn homomorphism_law_on_both_embeddings() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for alphabet in [Alphabet::ab(), Alphabet::wxyz()] {
        for _ in 0..100 {
            let u = random_word(&mut rng, &alphabet, 14);
            let v = random_word(&mut rng, &alphabet, 14);
            assert!(eta_of_product_is_product_of_etas(&u, &v, 6).unwrap());
        }
    }
}

#[test]
fn inverse_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let g = random_word(&mut rng, &Alphabet::wxyz(), 12);
        let prod = eta_gamma(&g, 5).unwrap().mul(&eta_gamma(&g.inverse(), 5).unwrap()).unwrap();
        assert!(prod.is_one(), "eta(g) eta(g^-1) != 1 for {g}");
    }
}

/// Specializing the polynomial embedding at `t = n` agrees with evaluating
/// the word at coordinate `n` and embedding the result.
#[test]
fn commuting_square_with_coordinate_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let g = random_word(&mut rng, &Alphabet::wxyz(), 12);
        let n = rng.gen_range(-3i64..=3);
        let lhs = specialize(&eta_gamma(&g, 6).unwrap(), n);
        let rhs = eta_free(&eval_substitution(n).apply(&g).unwrap(), 6).unwrap();
        assert_eq!(lhs, rhs, "square fails for {g} at n = {n}");
    }
}

/// Every polynomial coefficient has degree at most the length of its
/// monomial.
#[test]
fn coefficient_degree_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..200 {
        let g = random_word(&mut rng, &Alphabet::wxyz(), 12);
        let s = eta_gamma(&g, 5).unwrap();
        for (mono, coeff) in s.terms() {
            assert!(
                coeff.degree().unwrap_or(0) <= mono.len(),
                "deg {} > |{}| in eta({g})",
                coeff,
                mono
            );
        }
    }
}

#[test]
fn membership_is_monotone_downward() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..60 {
        let g = random_word(&mut rng, &Alphabet::ab(), 16);
        let verdicts: Vec<bool> = (1..=6).map(|c| lcs_member(&g, c).unwrap()).collect();
        for c in 1..verdicts.len() {
            if verdicts[c] {
                assert!(verdicts[c - 1], "membership at {} without {} for {g}", c + 1, c);
            }
        }
    }
}

#[test]
fn truncation_coherence() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..50 {
        let g = random_word(&mut rng, &Alphabet::wxyz(), 10);
        let wide = eta_gamma(&g, 6).unwrap();
        for narrow_trunc in 0..6 {
            let narrowed = wide.truncate_to(narrow_trunc).unwrap();
            let direct = eta_gamma(&g, narrow_trunc).unwrap();
            assert_eq!(narrowed, direct);
        }
    }
}

/// The exact two-sided commutator identity:
/// `eta([U,V]) - 1 = eta(U^-1 V^-1) (eta(UV) - eta(VU))`.
#[test]
fn commutator_identity_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let trunc = 5;
    for _ in 0..60 {
        let u = random_word(&mut rng, &Alphabet::wxyz(), 8);
        let v = random_word(&mut rng, &Alphabet::wxyz(), 8);
        let lhs = eta_gamma(&comm(&[u.clone(), v.clone()]).unwrap(), trunc)
            .unwrap()
            .sub(&PolySeries::one_at(trunc))
            .unwrap();
        let head = eta_gamma(&u.inverse().mul(&v.inverse()).unwrap(), trunc).unwrap();
        let tail = eta_gamma(&u.mul(&v).unwrap(), trunc)
            .unwrap()
            .sub(&eta_gamma(&v.mul(&u).unwrap(), trunc).unwrap())
            .unwrap();
        assert_eq!(lhs, head.mul(&tail).unwrap(), "identity fails for {u}, {v}");
    }
}

/// The graded consequence: writing `eta(U) = 1 + u` with `u` of valuation
/// `k` and `eta(V) = 1 + v` of valuation `l`, the commutator image is
/// `1 + uv - vu` modulo degree `k + l + 1`.
#[test]
fn commutator_law_graded() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let trunc = 6;
    let mut exercised = 0;
    while exercised < 40 {
        let u_word = random_word(&mut rng, &Alphabet::wxyz(), 8);
        let v_word = random_word(&mut rng, &Alphabet::wxyz(), 8);
        let one = PolySeries::one_at(trunc);
        let u = eta_gamma(&u_word, trunc).unwrap().sub(&one).unwrap();
        let v = eta_gamma(&v_word, trunc).unwrap().sub(&one).unwrap();
        let (Some(k), Some(l)) = (u.lowest_positive_degree(), v.lowest_positive_degree())
        else {
            continue;
        };
        if k + l > trunc {
            continue;
        }
        exercised += 1;
        let bracket = eta_gamma(&comm(&[u_word, v_word]).unwrap(), trunc)
            .unwrap()
            .sub(&one)
            .unwrap()
            .truncate_to(k + l)
            .unwrap();
        let graded = u
            .mul(&v)
            .unwrap()
            .sub(&v.mul(&u).unwrap())
            .unwrap()
            .truncate_to(k + l)
            .unwrap();
        assert_eq!(bracket, graded);
    }
}

/// Rational specialization points beyond integers stay exact.
#[test]
fn specialization_is_exact_rational() {
    let g = Word::parse("[y, z x^-1]", &Alphabet::wxyz()).unwrap();
    let s = eta_gamma(&g, 2).unwrap();
    // coefficient of AB is t(t-1); at t = 5 it is 20
    let at5 = specialize(&s, 5);
    let ab_mono = subfree::series::Monomial::from_syms(&[
        subfree::series::Sym::A,
        subfree::series::Sym::B,
    ]);
    assert_eq!(at5.coeff(&ab_mono), Rat::from_integer(20.into()));
}

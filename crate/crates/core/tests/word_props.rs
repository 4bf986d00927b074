//! Algebraic laws of the word arithmetic.

use proptest::prelude::*;
use subfree::magnus::lcs_member;
use subfree::words::{comm, gamma_normal_gens, Alphabet, Sign, SignedLetter, Substitution, Word};

fn raw_letters(max_len: usize) -> impl Strategy<Value = Vec<SignedLetter>> {
    prop::collection::vec(
        (0usize..2, prop::bool::ANY).prop_map(|(index, neg)| {
            SignedLetter::new(index, if neg { Sign::Minus } else { Sign::Plus })
        }),
        0..=max_len,
    )
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    raw_letters(max_len).prop_map(|raw| Word::reduce(&Alphabet::ab(), &raw).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn free_reduce_is_idempotent(raw in raw_letters(24)) {
        let once = Word::reduce(&Alphabet::ab(), &raw).unwrap();
        let twice = Word::reduce(&Alphabet::ab(), once.letters()).unwrap();
        prop_assert_eq!(&once, &twice);
    }

    #[test]
    fn mul_is_associative(u in word(20), v in word(20), w in word(20)) {
        let left = u.mul(&v).unwrap().mul(&w).unwrap();
        let right = u.mul(&v.mul(&w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_is_involutive(u in word(20)) {
        prop_assert_eq!(u.inverse().inverse(), u.clone());
        prop_assert!(u.mul(&u.inverse()).unwrap().is_identity());
    }

    #[test]
    fn comm_swap_is_inverse(u in word(12), v in word(12)) {
        let uv = comm(&[u.clone(), v.clone()]).unwrap();
        let vu = comm(&[v, u]).unwrap();
        prop_assert_eq!(uv, vu.inverse());
    }

    #[test]
    fn substitution_is_a_homomorphism(u in word(12), v in word(12), n in -3i64..=3) {
        let ab = Alphabet::ab();
        let img_a = Word::parse("b a b^-1", &ab).unwrap();
        let img_b = Word::parse("a", &ab).unwrap().pow(n);
        let sub = Substitution::new(&ab, &ab, vec![img_a, img_b]).unwrap();
        let left = sub.apply(&u.mul(&v).unwrap()).unwrap();
        let right = sub.apply(&u).unwrap().mul(&sub.apply(&v).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(sub.apply(&u.inverse()).unwrap(), sub.apply(&u).unwrap().inverse());
    }
}

/// The normal generators of each lower-central term sit exactly at their
/// class: inside class `c`, outside class `c + 1`.
#[test]
fn gamma_generators_sit_at_their_exact_class() {
    for c in 2..=5u32 {
        let gens = gamma_normal_gens(c).unwrap();
        assert_eq!(gens.len(), 1usize << (c - 2));
        for g in &gens {
            assert!(lcs_member(g, c).unwrap(), "generator {g} escapes class {c}");
            assert!(
                !lcs_member(g, c + 1).unwrap(),
                "generator {g} is too deep for class {c}"
            );
        }
    }
}

//! Shared random-word generation for the property suites.

use rand::Rng;
use subfree::words::{Alphabet, Sign, SignedLetter, Word};

pub fn random_word<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let raw: Vec<SignedLetter> = (0..len)
        .map(|_| {
            SignedLetter::new(
                rng.gen_range(0..alphabet.len()),
                if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus },
            )
        })
        .collect();
    Word::reduce(alphabet, &raw).expect("indices in range")
}

//! Freely reduced words over finite alphabets.
//!
//! A [`Word`] is always kept in freely reduced form: every constructor and
//! operation cancels adjacent inverse pairs eagerly, so equality of words is
//! structural equality. Letters are stored as indices into an [`Alphabet`]
//! together with a sign.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Sign of a letter occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// One signed letter of a word: alphabet index plus sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedLetter {
    pub index: usize,
    pub sign: Sign,
}

impl SignedLetter {
    pub fn new(index: usize, sign: Sign) -> Self {
        SignedLetter { index, sign }
    }

    pub fn inverse(self) -> Self {
        SignedLetter { index: self.index, sign: self.sign.flip() }
    }

    fn cancels(self, other: Self) -> bool {
        self.index == other.index && self.sign == other.sign.flip()
    }
}

/// Ordered finite set of distinct generator names.
///
/// Identifiers must match `[a-z][a-z0-9]*`. The order is fixed at
/// construction and determines letter indices. Cloning is cheap.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Arc<Vec<String>>,
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
}

impl Alphabet {
    /// Builds an alphabet from identifier names. Names must be distinct and
    /// match `[a-z][a-z0-9]*`. An empty list is allowed; words over it are
    /// all trivial.
    pub fn new<S: AsRef<str>>(letters: &[S]) -> Result<Alphabet> {
        let mut seen = std::collections::BTreeSet::new();
        let mut v = Vec::with_capacity(letters.len());
        for l in letters {
            let l = l.as_ref();
            if !valid_identifier(l) {
                return Err(Error::InvalidArgument(format!(
                    "invalid generator name {l:?}: expected [a-z][a-z0-9]*"
                )));
            }
            if !seen.insert(l.to_owned()) {
                return Err(Error::InvalidArgument(format!("duplicate generator name {l:?}")));
            }
            v.push(l.to_owned());
        }
        Ok(Alphabet { letters: Arc::new(v) })
    }

    /// The rank-2 alphabet `{a, b}`.
    pub fn ab() -> Alphabet {
        Alphabet::new(&["a", "b"]).unwrap()
    }

    /// The rank-4 alphabet `{w, x, y, z}`.
    pub fn wxyz() -> Alphabet {
        Alphabet::new(&["w", "x", "y", "z"]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.letters[index]
    }

    pub fn names(&self) -> &[String] {
        &self.letters
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == name)
    }

    /// Concatenates two alphabets into one; names must stay distinct.
    pub fn union(&self, other: &Alphabet) -> Result<Alphabet> {
        let mut all: Vec<&str> = self.names().iter().map(|s| s.as_str()).collect();
        all.extend(other.names().iter().map(|s| s.as_str()));
        Alphabet::new(&all)
    }
}

/// A freely reduced word: an element of the free group on its alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<SignedLetter>,
}

impl Word {
    /// The empty word.
    pub fn identity(alphabet: &Alphabet) -> Word {
        Word { alphabet: alphabet.clone(), letters: Vec::new() }
    }

    /// Single generator, positive sign.
    pub fn generator(alphabet: &Alphabet, index: usize) -> Result<Word> {
        Word::reduce(alphabet, &[SignedLetter::new(index, Sign::Plus)])
    }

    /// Freely reduces a raw sequence of signed letters.
    pub fn reduce(alphabet: &Alphabet, raw: &[SignedLetter]) -> Result<Word> {
        let mut stack: Vec<SignedLetter> = Vec::with_capacity(raw.len());
        for &l in raw {
            if l.index >= alphabet.len() {
                return Err(Error::UnknownLetter { index: l.index, size: alphabet.len() });
            }
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Ok(Word { alphabet: alphabet.clone(), letters: stack })
    }

    /// Parses the word grammar: identifiers, juxtaposition, `^` integer
    /// powers, parentheses, `[u,v,...]` left-normed commutators, and the
    /// literal `1` for the empty word.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Word> {
        crate::parse::parse_word(text, alphabet)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[SignedLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_same_alphabet(&self, other: &Word) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet.names(),
                other.alphabet.names()
            )));
        }
        Ok(())
    }

    /// Reduced product `self * other`.
    pub fn mul(&self, other: &Word) -> Result<Word> {
        self.check_same_alphabet(other)?;
        let mut stack = self.letters.clone();
        for &l in &other.letters {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Ok(Word { alphabet: self.alphabet.clone(), letters: stack })
    }

    /// Reduced inverse.
    pub fn inverse(&self) -> Word {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        Word { alphabet: self.alphabet.clone(), letters }
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity(&self.alphabet);
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base).expect("same alphabet");
        }
        out
    }

    /// Signed exponent sum of each letter (the abelianized image).
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.alphabet.len()];
        for l in &self.letters {
            sums[l.index] += l.sign.as_i64();
        }
        sums
    }
}

/// Left-normed iterated commutator `[u1, u2, ..., uk]` with the convention
/// `[u, v] = u^-1 v^-1 u v`; requires at least two arguments on one alphabet.
pub fn comm(args: &[Word]) -> Result<Word> {
    if args.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "commutator needs at least 2 arguments, got {}",
            args.len()
        )));
    }
    let mut acc = commutator2(&args[0], &args[1])?;
    for v in &args[2..] {
        acc = commutator2(&acc, v)?;
    }
    Ok(acc)
}

fn commutator2(u: &Word, v: &Word) -> Result<Word> {
    u.inverse().mul(&v.inverse())?.mul(u)?.mul(v)
}

/// A homomorphism of free groups given by per-letter images.
#[derive(Debug, Clone)]
pub struct Substitution {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Word>,
}

impl Substitution {
    /// Images must be listed in source-letter order, one per letter, all
    /// over the same target alphabet.
    pub fn new(source: &Alphabet, target: &Alphabet, images: Vec<Word>) -> Result<Substitution> {
        if images.len() != source.len() {
            return Err(Error::InvalidArgument(format!(
                "substitution needs {} images, got {}",
                source.len(),
                images.len()
            )));
        }
        for img in &images {
            if img.alphabet() != target {
                return Err(Error::AlphabetMismatch(format!(
                    "image {img} is not over the target alphabet {:?}",
                    target.names()
                )));
            }
        }
        Ok(Substitution { source: source.clone(), target: target.clone(), images })
    }

    /// Builds a substitution from a name-keyed image table; every source
    /// letter must be assigned.
    pub fn from_map(
        source: &Alphabet,
        target: &Alphabet,
        map: &BTreeMap<String, Word>,
    ) -> Result<Substitution> {
        let mut images = Vec::with_capacity(source.len());
        for name in source.names() {
            let img = map.get(name).ok_or_else(|| {
                Error::InvalidArgument(format!("no image assigned to generator {name:?}"))
            })?;
            images.push(img.clone());
        }
        Substitution::new(source, target, images)
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    /// Reduced image of `g` under the induced homomorphism.
    pub fn apply(&self, g: &Word) -> Result<Word> {
        if g.alphabet() != &self.source {
            return Err(Error::AlphabetMismatch(format!(
                "word {g} is not over the substitution source {:?}",
                self.source.names()
            )));
        }
        let mut out = Word::identity(&self.target);
        for l in g.letters() {
            let img = &self.images[l.index];
            out = match l.sign {
                Sign::Plus => out.mul(img)?,
                Sign::Minus => out.mul(&img.inverse())?,
            };
        }
        Ok(out)
    }
}

/// Normal generating set for the `c`-th lower central series term of the
/// rank-2 free group on `{a, b}`.
///
/// For `c = 1` this is `{a, b}`; for `c >= 2` it is the `2^(c-2)` left-normed
/// commutators `[a, b, y3, ..., yc]` with each `yi` in `{a, b}`, tails
/// enumerated lexicographically with `a < b`.
pub fn gamma_normal_gens(c: u32) -> Result<Vec<Word>> {
    if c < 1 {
        return Err(Error::InvalidArgument("lower central series index must be >= 1".into()));
    }
    let ab = Alphabet::ab();
    let a = Word::generator(&ab, 0)?;
    let b = Word::generator(&ab, 1)?;
    if c == 1 {
        return Ok(vec![a, b]);
    }
    let tail_len = (c - 2) as usize;
    let mut out = Vec::with_capacity(1 << tail_len);
    for mask in 0..(1usize << tail_len) {
        let mut args = vec![a.clone(), b.clone()];
        for pos in 0..tail_len {
            let bit = (mask >> (tail_len - 1 - pos)) & 1;
            args.push(if bit == 0 { a.clone() } else { b.clone() });
        }
        out.push(comm(&args)?);
    }
    Ok(out)
}

impl fmt::Display for Word {
    /// Renders in the word grammar: factors separated by spaces, run-length
    /// powers (`a^3`, `b^-2`), and `1` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1usize;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = self.alphabet.name(l.index);
            let exp = l.sign.as_i64() * run as i64;
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i += run;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse(text, &Alphabet::ab()).unwrap()
    }

    #[test]
    fn free_reduce_cancels_adjacent_inverses() {
        let ab = Alphabet::ab();
        let a = SignedLetter::new(0, Sign::Plus);
        let ai = SignedLetter::new(0, Sign::Minus);
        let b = SignedLetter::new(1, Sign::Plus);
        let bi = SignedLetter::new(1, Sign::Minus);
        assert_eq!(Word::reduce(&ab, &[a, ai, b]).unwrap(), w("b"));
        assert_eq!(Word::reduce(&ab, &[]).unwrap(), w("1"));
        assert_eq!(Word::reduce(&ab, &[a, b, bi, a]).unwrap(), w("a a"));
    }

    #[test]
    fn reduce_rejects_unknown_letter() {
        let ab = Alphabet::ab();
        let err = Word::reduce(&ab, &[SignedLetter::new(7, Sign::Plus)]).unwrap_err();
        assert!(matches!(err, Error::UnknownLetter { index: 7, .. }));
    }

    #[test]
    fn mul_and_inverse() {
        assert_eq!(w("a").mul(&w("a^-1")).unwrap(), w("1"));
        assert_eq!(w("a b").inverse(), w("b^-1 a^-1"));
        assert_eq!(w("a b").mul(&w("b^-1 a")).unwrap(), w("a a"));
    }

    #[test]
    fn mul_rejects_alphabet_mismatch() {
        let g = Word::parse("w", &Alphabet::wxyz()).unwrap();
        assert!(matches!(w("a").mul(&g), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn pow_expands_and_inverts() {
        assert_eq!(w("a b").pow(2), w("a b a b"));
        assert_eq!(w("a b").pow(-1), w("b^-1 a^-1"));
        assert_eq!(w("a b").pow(0), w("1"));
    }

    #[test]
    fn commutator_basics() {
        assert_eq!(comm(&[w("a"), w("b")]).unwrap(), w("a^-1 b^-1 a b"));
        assert_eq!(comm(&[w("a"), w("a")]).unwrap(), w("1"));
        assert!(matches!(comm(&[w("a")]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn left_normed_commutator_matches_expansion_oracle() {
        // Oracle: splice the raw letter sequences of u^-1 v^-1 u v and
        // freely reduce, with u = [a,b] expanded by hand.
        let u = w("a^-1 b^-1 a b");
        let v = w("a");
        let mut raw: Vec<SignedLetter> = Vec::new();
        raw.extend(u.inverse().letters());
        raw.extend(v.inverse().letters());
        raw.extend(u.letters());
        raw.extend(v.letters());
        let oracle = Word::reduce(&Alphabet::ab(), &raw).unwrap();
        let got = comm(&[w("a"), w("b"), w("a")]).unwrap();
        assert_eq!(got, oracle);
        assert_eq!(got, w("b^-1 a^-1 b a^-1 b^-1 a b a"));
        assert_eq!(got.len(), 8);
    }

    #[test]
    fn comm_of_swap_is_inverse() {
        let u = w("a b^-1 a");
        let v = w("b a");
        assert_eq!(
            comm(&[u.clone(), v.clone()]).unwrap(),
            comm(&[v, u]).unwrap().inverse()
        );
    }

    fn phi(n: i64) -> Substitution {
        let ab = Alphabet::ab();
        let a = Word::generator(&ab, 0).unwrap();
        let b = Word::generator(&ab, 1).unwrap();
        Substitution::new(&Alphabet::wxyz(), &ab, vec![a.clone(), b.clone(), a.pow(n), b.pow(n)])
            .unwrap()
    }

    #[test]
    fn substitute_evaluation_examples() {
        let gamma = Alphabet::wxyz();
        let y = Word::parse("y", &gamma).unwrap();
        assert_eq!(phi(3).apply(&y).unwrap(), w("a^3"));
        let zx = Word::parse("z x^-1", &gamma).unwrap();
        assert_eq!(phi(1).apply(&zx).unwrap(), w("1"));
        let e = Word::parse("1", &gamma).unwrap();
        assert_eq!(phi(-2).apply(&e).unwrap(), w("1"));
    }

    #[test]
    fn substitute_requires_total_assignment() {
        let gamma = Alphabet::wxyz();
        let mut map = BTreeMap::new();
        map.insert("w".to_string(), w("a"));
        let err = Substitution::from_map(&gamma, &Alphabet::ab(), &map).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }

    #[test]
    fn gamma_gens_small_cases() {
        assert_eq!(gamma_normal_gens(1).unwrap(), vec![w("a"), w("b")]);
        assert_eq!(gamma_normal_gens(2).unwrap(), vec![w("a^-1 b^-1 a b")]);
        let c3 = gamma_normal_gens(3).unwrap();
        assert_eq!(
            c3,
            vec![
                comm(&[w("a"), w("b"), w("a")]).unwrap(),
                comm(&[w("a"), w("b"), w("b")]).unwrap(),
            ]
        );
        let c4 = gamma_normal_gens(4).unwrap();
        let tails = [["a", "a"], ["a", "b"], ["b", "a"], ["b", "b"]];
        assert_eq!(c4.len(), 4);
        for (gen, tail) in c4.iter().zip(tails.iter()) {
            let args: Vec<Word> =
                ["a", "b"].iter().chain(tail.iter()).map(|s| w(s)).collect();
            assert_eq!(gen, &comm(&args).unwrap());
        }
        assert!(gamma_normal_gens(0).is_err());
    }

    #[test]
    fn exponent_sums_abelianize() {
        assert_eq!(w("a b a^-1").exponent_sums(), vec![0, 1]);
        assert_eq!(w("1").exponent_sums(), vec![0, 0]);
        assert_eq!(w("a^-1 b^-1 a b").exponent_sums(), vec![0, 0]);
    }

    #[test]
    fn display_round_trips_through_grammar() {
        for text in ["1", "a", "a^-1", "a^3 b^-2 a", "b^-1 a^-1 b a^-1 b^-1 a b a"] {
            let word = w(text);
            assert_eq!(format!("{word}"), text);
            assert_eq!(w(&format!("{word}")), word);
        }
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(&["a", "a"]).is_err());
        assert!(Alphabet::new(&["A"]).is_err());
        assert!(Alphabet::new(&["x1", "x2"]).is_ok());
        assert!(Alphabet::new::<&str>(&[]).is_ok());
    }
}

//! Mechanical assembly of fibre-product presentations.
//!
//! The inputs are two structured presentations over a common quotient
//! presentation `<X | R>`: the first side lists conjugation words
//! `V_{x,a,e}` and relator tails `U_r` over a kernel-generating alphabet
//! `A`; the second side lists relator tails `W_r` and auxiliary relations
//! over formal conjugates of a second alphabet `B`. Identity sequences over
//! `R` translate into words over `A` by [`translate_identity`];
//! [`assemble`] then emits the four relator families of the fibre-product
//! presentation on `A ∪ B ∪ X`, and [`relator_audit`] checks that every
//! relator maps to the identity in both factors.

use std::collections::BTreeMap;
use std::fmt;

use crate::words::{comm, Alphabet, Sign, SignedLetter, Substitution, Word};
use crate::{Error, Result};

/// A finite presentation `<X | R>` of the common quotient, with named
/// relators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPres {
    x: Alphabet,
    names: Vec<String>,
    relators: Vec<Word>,
}

impl QuotientPres {
    pub fn new(x: Alphabet, relators: Vec<(String, Word)>) -> Result<QuotientPres> {
        let mut names = Vec::with_capacity(relators.len());
        let mut words = Vec::with_capacity(relators.len());
        for (name, word) in relators {
            if word.alphabet() != &x {
                return Err(Error::AlphabetMismatch(format!(
                    "relator {name} is not over the quotient generators"
                )));
            }
            if names.contains(&name) {
                return Err(Error::InvalidArgument(format!("duplicate relator name {name:?}")));
            }
            names.push(name);
            words.push(word);
        }
        Ok(QuotientPres { x, names, relators: words })
    }

    pub fn x(&self) -> &Alphabet {
        &self.x
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn relator(&self, idx: usize) -> &Word {
        &self.relators[idx]
    }

    pub fn relator_name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// First-side structured presentation: generators `A ∪ X`, relators
/// `x^e a x^-e V_{x,a,e}(A)`, `r(X) U_r(A)`, and extra words `S3(A)`.
#[derive(Debug, Clone)]
pub struct StructPres1 {
    q: QuotientPres,
    a: Alphabet,
    /// `V_{x,a,e}` keyed by (x index, a index, e); total by construction.
    v_table: BTreeMap<(usize, usize, Sign), Word>,
    /// `U_r` parallel to the quotient relator list.
    u_table: Vec<Word>,
    s3: Vec<Word>,
}

impl StructPres1 {
    pub fn new(
        q: QuotientPres,
        a: Alphabet,
        v: &BTreeMap<(String, String, Sign), Word>,
        u: &BTreeMap<String, Word>,
        s3: Vec<Word>,
    ) -> Result<StructPres1> {
        let mut v_table = BTreeMap::new();
        for xi in 0..q.x.len() {
            for ai in 0..a.len() {
                for sign in [Sign::Plus, Sign::Minus] {
                    let key = (q.x.name(xi).to_owned(), a.name(ai).to_owned(), sign);
                    let word = v.get(&key).ok_or_else(|| {
                        Error::InvalidArgument(format!(
                            "missing conjugation word for ({}, {}, {})",
                            key.0,
                            key.1,
                            if sign == Sign::Plus { "+" } else { "-" }
                        ))
                    })?;
                    if word.alphabet() != &a {
                        return Err(Error::AlphabetMismatch(format!(
                            "conjugation word {word} is not over the kernel generators"
                        )));
                    }
                    v_table.insert((xi, ai, sign), word.clone());
                }
            }
        }
        let mut u_table = Vec::with_capacity(q.relator_count());
        for idx in 0..q.relator_count() {
            let name = q.relator_name(idx);
            let word = u.get(name).ok_or_else(|| {
                Error::InvalidArgument(format!("missing relator tail for {name}"))
            })?;
            if word.alphabet() != &a {
                return Err(Error::AlphabetMismatch(format!(
                    "relator tail {word} is not over the kernel generators"
                )));
            }
            u_table.push(word.clone());
        }
        for word in &s3 {
            if word.alphabet() != &a {
                return Err(Error::AlphabetMismatch(format!(
                    "auxiliary relator {word} is not over the kernel generators"
                )));
            }
        }
        Ok(StructPres1 { q, a, v_table, u_table, s3 })
    }

    pub fn quotient(&self) -> &QuotientPres {
        &self.q
    }

    pub fn a(&self) -> &Alphabet {
        &self.a
    }

    pub fn s3(&self) -> &[Word] {
        &self.s3
    }

    pub fn u(&self, idx: usize) -> &Word {
        &self.u_table[idx]
    }

    pub fn v(&self, x: usize, a: usize, sign: Sign) -> &Word {
        &self.v_table[&(x, a, sign)]
    }
}

/// A formal conjugate `b^w`: a signed letter of `B` together with a
/// conjugating word over `X`. Expanded as `w^-1 b w` only at assembly time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalConjugate {
    pub base: SignedLetter,
    pub conj: Word,
}

/// A word in formal conjugates.
pub type ConjWord = Vec<FormalConjugate>;

/// Second-side structured presentation: generators `B ∪ X`, relators
/// `r(X) W_r(B*)` and extra relations `T3` over formal conjugates.
#[derive(Debug, Clone)]
pub struct StructPres2 {
    q: QuotientPres,
    b: Alphabet,
    w_table: Vec<ConjWord>,
    t3: Vec<ConjWord>,
}

impl StructPres2 {
    pub fn new(
        q: QuotientPres,
        b: Alphabet,
        w: &BTreeMap<String, ConjWord>,
        t3: Vec<ConjWord>,
    ) -> Result<StructPres2> {
        let check = |cw: &ConjWord| -> Result<()> {
            for fc in cw {
                if fc.base.index >= b.len() {
                    return Err(Error::UnknownLetter { index: fc.base.index, size: b.len() });
                }
                if fc.conj.alphabet() != &q.x {
                    return Err(Error::AlphabetMismatch(format!(
                        "conjugator {} is not over the quotient generators",
                        fc.conj
                    )));
                }
            }
            Ok(())
        };
        let mut w_table = Vec::with_capacity(q.relator_count());
        for idx in 0..q.relator_count() {
            let name = q.relator_name(idx);
            let cw = w.get(name).ok_or_else(|| {
                Error::InvalidArgument(format!("missing relator tail for {name}"))
            })?;
            check(cw)?;
            w_table.push(cw.clone());
        }
        for cw in &t3 {
            check(cw)?;
        }
        Ok(StructPres2 { q, b, w_table, t3 })
    }

    pub fn quotient(&self) -> &QuotientPres {
        &self.q
    }

    pub fn b(&self) -> &Alphabet {
        &self.b
    }

    pub fn t3(&self) -> &[ConjWord] {
        &self.t3
    }

    pub fn w(&self, idx: usize) -> &ConjWord {
        &self.w_table[idx]
    }
}

/// An identity sequence: conjugated relators whose product freely cancels
/// over `X`. The invariant is checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySeq {
    entries: Vec<(Word, usize, Sign)>,
}

impl IdentitySeq {
    pub fn new(q: &QuotientPres, entries: Vec<(Word, String, Sign)>) -> Result<IdentitySeq> {
        let mut resolved = Vec::with_capacity(entries.len());
        for (w, name, sign) in entries {
            if w.alphabet() != &q.x {
                return Err(Error::AlphabetMismatch(format!(
                    "conjugator {w} is not over the quotient generators"
                )));
            }
            let idx = q.index_of(&name).ok_or_else(|| {
                Error::InvalidArgument(format!("unknown relator name {name:?}"))
            })?;
            resolved.push((w, idx, sign));
        }
        let seq = IdentitySeq { entries: resolved };
        let product = seq.x_product(q)?;
        if !product.is_identity() {
            return Err(Error::NotIdentity(format!(
                "conjugated relator product reduces to {product}, not 1"
            )));
        }
        Ok(seq)
    }

    pub fn entries(&self) -> &[(Word, usize, Sign)] {
        &self.entries
    }

    /// The product `prod w_j^-1 r_j^{e_j} w_j` over `X`.
    fn x_product(&self, q: &QuotientPres) -> Result<Word> {
        let mut acc = Word::identity(q.x());
        for (w, idx, sign) in &self.entries {
            let r = q.relator(*idx);
            let factor = match sign {
                Sign::Plus => r.clone(),
                Sign::Minus => r.inverse(),
            };
            acc = acc.mul(&w.inverse())?.mul(&factor)?.mul(w)?;
        }
        Ok(acc)
    }
}

/// Relator family tags of the assembled presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            Family::I => "I",
            Family::II => "II",
            Family::III => "III",
            Family::IV => "IV",
        };
        write!(f, "{tag}")
    }
}

/// A finite presentation: a generator alphabet and family-tagged relators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Alphabet,
    pub relators: Vec<(Family, Word)>,
}

impl Presentation {
    pub fn family_sizes(&self) -> [usize; 4] {
        let mut sizes = [0usize; 4];
        for (fam, _) in &self.relators {
            let i = match fam {
                Family::I => 0,
                Family::II => 1,
                Family::III => 2,
                Family::IV => 3,
            };
            sizes[i] += 1;
        }
        sizes
    }

    /// Row-per-relator exponent-sum matrix of the presentation, for
    /// abelianized rank computations.
    pub fn abelianized_relators(&self) -> Vec<Vec<i64>> {
        self.relators.iter().map(|(_, w)| w.exponent_sums()).collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens:")?;
        for name in self.generators.names() {
            write!(f, " {name}")?;
        }
        writeln!(f)?;
        for (fam, word) in &self.relators {
            writeln!(f, "rel {fam}: {word}")?;
        }
        Ok(())
    }
}

/// Letter layout of the assembled generator alphabet `A ∪ B ∪ X`.
struct Layout {
    combined: Alphabet,
    a_len: usize,
    b_len: usize,
}

impl Layout {
    fn new(a: &Alphabet, b: &Alphabet, x: &Alphabet) -> Result<Layout> {
        let combined = a.union(b)?.union(x)?;
        Ok(Layout { combined, a_len: a.len(), b_len: b.len() })
    }

    fn embed_a(&self, w: &Word) -> Word {
        self.shift(w, 0)
    }

    fn embed_b(&self, w: &Word) -> Word {
        self.shift(w, self.a_len)
    }

    fn embed_x(&self, w: &Word) -> Word {
        self.shift(w, self.a_len + self.b_len)
    }

    fn shift(&self, w: &Word, offset: usize) -> Word {
        let letters: Vec<SignedLetter> = w
            .letters()
            .iter()
            .map(|l| SignedLetter::new(l.index + offset, l.sign))
            .collect();
        Word::reduce(&self.combined, &letters).expect("indices stay in range")
    }
}

/// Intermediate states of one identity-sequence translation, for auditing
/// that the two-sided image is preserved step by step.
#[derive(Debug, Clone)]
pub struct TranslationTrace {
    /// Alphabet `A ∪ X` the intermediate words live over.
    pub ax_alphabet: Alphabet,
    /// Number of kernel-side letters at the start of `ax_alphabet`.
    pub a_len: usize,
    /// The word after every rewriting step, starting from the spliced
    /// conjugated-relator product.
    pub steps: Vec<Word>,
    /// The final word, over the kernel alphabet alone.
    pub result: Word,
}

/// Translates an identity sequence into a word over the kernel generators:
/// splice the relator tails into the conjugated product, then eliminate the
/// quotient letters by the conjugation relations.
pub fn translate_identity(p1: &StructPres1, sigma: &IdentitySeq) -> Result<Word> {
    Ok(translate_identity_trace(p1, sigma)?.result)
}

/// As [`translate_identity`], but returns every intermediate word.
///
/// Rewriting strategy: repeatedly take the leftmost adjacent pair of a
/// quotient letter followed by a kernel letter and push the kernel letter
/// leftward through the conjugation relation, reducing freely after each
/// step. Each step moves one kernel letter left past its rightmost possible
/// quotient letter, so the pass terminates; the step budget derived from
/// the letter counts is a circuit breaker for broken inputs.
pub fn translate_identity_trace(
    p1: &StructPres1,
    sigma: &IdentitySeq,
) -> Result<TranslationTrace> {
    for (_, idx, _) in sigma.entries() {
        if *idx >= p1.q.relator_count() {
            return Err(Error::InvalidArgument(format!(
                "identity sequence references relator {idx} outside the presentation"
            )));
        }
    }
    let a_len = p1.a.len();
    let layout = Layout::new(&p1.a, &Alphabet::new::<&str>(&[])?, &p1.q.x)?;
    let ax = layout.combined.clone();

    // zeta = prod w_j^-1 (r_j U_j)^{e_j} w_j over A ∪ X
    let mut zeta = Word::identity(&ax);
    for (w, idx, sign) in sigma.entries() {
        let w_emb = layout.embed_x(w);
        let ru = layout.embed_x(p1.q.relator(*idx)).mul(&layout.embed_a(&p1.u_table[*idx]))?;
        let factor = match sign {
            Sign::Plus => ru,
            Sign::Minus => ru.inverse(),
        };
        zeta = zeta.mul(&w_emb.inverse())?.mul(&factor)?.mul(&w_emb)?;
    }

    // rewriting must stop by the time every kernel letter has crossed every
    // quotient letter, with the conjugation words compounding the count
    let a_count = zeta.letters().iter().filter(|l| l.index < a_len).count() as u64;
    let x_count = zeta.letters().iter().filter(|l| l.index >= a_len).count() as u64;
    let vmax = p1.v_table.values().map(|v| v.len() as u64).max().unwrap_or(0).max(1);
    let budget = 1000 + a_count
        .saturating_add(1)
        .saturating_mul(vmax.saturating_add(1).saturating_pow(x_count.min(24) as u32))
        .min(100_000_000);

    let mut steps = vec![zeta.clone()];
    let mut current = zeta;
    let mut spent = 0u64;
    loop {
        let pos = current
            .letters()
            .windows(2)
            .position(|pair| pair[0].index >= a_len && pair[1].index < a_len);
        let Some(p) = pos else { break };
        spent += 1;
        if spent > budget {
            return Err(Error::RewriteBound);
        }
        let xl = current.letters()[p];
        let al = current.letters()[p + 1];
        let v = &p1.v_table[&(xl.index - a_len, al.index, xl.sign)];
        // x^e a x^-e = V^-1 gives x^e a -> V^-1 x^e and x^e a^-1 -> V x^e
        let replacement = match al.sign {
            Sign::Plus => layout.embed_a(&v.inverse()),
            Sign::Minus => layout.embed_a(v),
        };
        let mut letters: Vec<SignedLetter> = current.letters()[..p].to_vec();
        letters.extend(replacement.letters());
        letters.push(xl);
        letters.extend(&current.letters()[p + 2..]);
        current = Word::reduce(&ax, &letters)?;
        steps.push(current.clone());
    }

    // with no quotient-then-kernel adjacency left, the word splits as a
    // kernel prefix followed by a quotient suffix; the suffix must be empty
    let split = current.letters().iter().position(|l| l.index >= a_len);
    if let Some(s) = split {
        if current.letters()[s..].iter().any(|l| l.index < a_len) {
            return Err(Error::RewriteBound);
        }
        return Err(Error::NotIdentity(format!(
            "quotient letters survive elimination in {current}"
        )));
    }
    let result = Word::reduce(
        &p1.a,
        &current.letters().to_vec(),
    )?;
    Ok(TranslationTrace { ax_alphabet: ax, a_len, steps, result })
}

/// Assembles the fibre-product presentation on `A ∪ B ∪ X` from the two
/// structured presentations and the translated identity words `Z`.
///
/// Family I is the conjugation relators, then `S3`, then `Z`, then the
/// expanded `T3`; family II is `r(X) U_r(A) W_r(B*)` per relator; family
/// III is all commutators `[a, b]`; family IV is `[a, r(X) U_r(A)]`.
pub fn assemble(p1: &StructPres1, p2: &StructPres2, z: &[Word]) -> Result<Presentation> {
    if p1.q != p2.q {
        return Err(Error::InvalidArgument(
            "the two sides present different quotients".into(),
        ));
    }
    for w in z {
        if w.alphabet() != &p1.a {
            return Err(Error::AlphabetMismatch(format!(
                "translated word {w} is not over the kernel generators"
            )));
        }
    }
    let layout = Layout::new(&p1.a, &p2.b, &p1.q.x)?;
    let mut relators: Vec<(Family, Word)> = Vec::new();

    // I: conjugation relators x^e a x^-e V, then S3, Z, expanded T3
    for xi in 0..p1.q.x.len() {
        let x = layout.embed_x(&Word::generator(&p1.q.x, xi)?);
        for ai in 0..p1.a.len() {
            let a = layout.embed_a(&Word::generator(&p1.a, ai)?);
            for sign in [Sign::Plus, Sign::Minus] {
                let xe = match sign {
                    Sign::Plus => x.clone(),
                    Sign::Minus => x.inverse(),
                };
                let v = layout.embed_a(p1.v(xi, ai, sign));
                let rel = xe.mul(&a)?.mul(&xe.inverse())?.mul(&v)?;
                relators.push((Family::I, rel));
            }
        }
    }
    for w in &p1.s3 {
        relators.push((Family::I, layout.embed_a(w)));
    }
    for w in z {
        relators.push((Family::I, layout.embed_a(w)));
    }
    for cw in &p2.t3 {
        relators.push((Family::I, expand_conj_word(&layout, cw)?));
    }

    // II: r(X) U_r(A) W_r(B*)
    for idx in 0..p1.q.relator_count() {
        let rel = layout
            .embed_x(p1.q.relator(idx))
            .mul(&layout.embed_a(&p1.u_table[idx]))?
            .mul(&expand_conj_word(&layout, p2.w(idx))?)?;
        relators.push((Family::II, rel));
    }

    // III: [a, b]
    for ai in 0..p1.a.len() {
        let a = layout.embed_a(&Word::generator(&p1.a, ai)?);
        for bi in 0..p2.b.len() {
            let b = layout.embed_b(&Word::generator(&p2.b, bi)?);
            relators.push((Family::III, comm(&[a.clone(), b])?));
        }
    }

    // IV: [a, r(X) U_r(A)]
    for ai in 0..p1.a.len() {
        let a = layout.embed_a(&Word::generator(&p1.a, ai)?);
        for idx in 0..p1.q.relator_count() {
            let ru =
                layout.embed_x(p1.q.relator(idx)).mul(&layout.embed_a(&p1.u_table[idx]))?;
            relators.push((Family::IV, comm(&[a.clone(), ru])?));
        }
    }

    Ok(Presentation { generators: layout.combined, relators })
}

fn expand_conj_word(layout: &Layout, cw: &ConjWord) -> Result<Word> {
    let mut out = Word::identity(&layout.combined);
    for fc in cw {
        let w = layout.embed_x(&fc.conj);
        let base = Word::reduce(
            &layout.combined,
            &[SignedLetter::new(fc.base.index + layout.a_len, fc.base.sign)],
        )?;
        out = out.mul(&w.inverse())?.mul(&base)?.mul(&w)?;
    }
    Ok(out)
}

/// The two-sided evaluation of words over `A ∪ B ∪ X`: the first
/// coordinate kills `B` and applies the first interpretation to `A ∪ X`,
/// the second kills `A` and applies the second to `B ∪ X`.
#[derive(Debug, Clone)]
pub struct Theta {
    sub1: Substitution,
    sub2: Substitution,
}

impl Theta {
    pub fn new(
        a: &Alphabet,
        b: &Alphabet,
        x: &Alphabet,
        gamma1: &Alphabet,
        i1: &BTreeMap<String, Word>,
        gamma2: &Alphabet,
        i2: &BTreeMap<String, Word>,
    ) -> Result<Theta> {
        let layout = Layout::new(a, b, x)?;
        let image = |maps: &BTreeMap<String, Word>,
                     gamma: &Alphabet,
                     name: &str,
                     required: bool|
         -> Result<Word> {
            match maps.get(name) {
                Some(w) if w.alphabet() == gamma => Ok(w.clone()),
                Some(w) => Err(Error::AlphabetMismatch(format!(
                    "interpretation image {w} of {name} is not over {:?}",
                    gamma.names()
                ))),
                None if required => Err(Error::InvalidArgument(format!(
                    "missing interpretation for generator {name}"
                ))),
                None => Ok(Word::identity(gamma)),
            }
        };
        let mut images1 = Vec::new();
        let mut images2 = Vec::new();
        for (pos, name) in layout.combined.names().iter().enumerate() {
            let in_a = pos < layout.a_len;
            let in_b = pos >= layout.a_len && pos < layout.a_len + layout.b_len;
            images1.push(image(i1, gamma1, name, !in_b)?);
            images2.push(image(i2, gamma2, name, !in_a)?);
        }
        Ok(Theta {
            sub1: Substitution::new(&layout.combined, gamma1, images1)?,
            sub2: Substitution::new(&layout.combined, gamma2, images2)?,
        })
    }

    /// The pair of freely reduced factor images.
    pub fn eval(&self, g: &Word) -> Result<(Word, Word)> {
        Ok((self.sub1.apply(g)?, self.sub2.apply(g)?))
    }
}

/// Per-relator audit outcome.
#[derive(Debug, Clone)]
pub struct AuditEntry {
    pub family: Family,
    pub relator: Word,
    pub image1: Word,
    pub image2: Word,
}

impl AuditEntry {
    pub fn passed(&self) -> bool {
        self.image1.is_identity() && self.image2.is_identity()
    }
}

/// Result of auditing every relator of an assembled presentation.
#[derive(Debug, Clone)]
pub struct AuditReport {
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed())
    }
}

/// Maps every relator through [`Theta`] and records whether both images
/// reduce to the identity. Failures are report entries, not errors.
pub fn relator_audit(p: &Presentation, theta: &Theta) -> Result<AuditReport> {
    let mut entries = Vec::with_capacity(p.relators.len());
    for (family, relator) in &p.relators {
        let (image1, image2) = theta.eval(relator)?;
        entries.push(AuditEntry { family: *family, relator: relator.clone(), image1, image2 });
    }
    Ok(AuditReport { entries })
}

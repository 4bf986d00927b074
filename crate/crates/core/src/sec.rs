//! Subgroups of finite powers of the rank-2 free group generated by
//! evaluation tuples plus coordinate-planted lower-central generators.
//!
//! A word over `{w, x, y, z}` evaluates at an integer coordinate `n` through
//! the substitution `w -> a`, `x -> b`, `y -> a^n`, `z -> b^n`; collecting
//! the evaluations over a finite coordinate set `E` gives a [`TupleWord`].
//! The subgroup spanned by the four generator tuples together with planted
//! normal generators of the `c`-th lower central series term is what
//! [`sec_generators`] lists, and [`intersection_certificate`] checks the
//! membership chain that pins down its intersection with a single factor.

use std::collections::BTreeMap;
use std::fmt;

use crate::magnus::lcs_member;
use crate::words::{gamma_normal_gens, Alphabet, Substitution, Word};
use crate::{Error, Result};

/// Coordinate set `E` (distinct integers, non-empty) and nilpotency index
/// `c >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecSpec {
    e: Vec<i64>,
    c: u32,
}

impl SecSpec {
    pub fn new(e: &[i64], c: u32) -> Result<SecSpec> {
        if e.is_empty() {
            return Err(Error::InvalidArgument("coordinate set must be non-empty".into()));
        }
        let mut sorted = e.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("coordinate set entries must be distinct".into()));
        }
        if c < 1 {
            return Err(Error::InvalidArgument("class index must be >= 1".into()));
        }
        Ok(SecSpec { e: sorted, c })
    }

    /// Coordinates in increasing order.
    pub fn coords(&self) -> &[i64] {
        &self.e
    }

    pub fn class(&self) -> u32 {
        self.c
    }

    pub fn contains(&self, n: i64) -> bool {
        self.e.binary_search(&n).is_ok()
    }
}

/// An element of the direct power: one word over `{a, b}` per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TupleWord {
    coords: BTreeMap<i64, Word>,
}

impl TupleWord {
    pub fn new(coords: BTreeMap<i64, Word>) -> Result<TupleWord> {
        let ab = Alphabet::ab();
        for word in coords.values() {
            if word.alphabet() != &ab {
                return Err(Error::AlphabetMismatch(
                    "tuple coordinates must be words over {a, b}".into(),
                ));
            }
        }
        Ok(TupleWord { coords })
    }

    pub fn identity(coords: &[i64]) -> TupleWord {
        let ab = Alphabet::ab();
        TupleWord {
            coords: coords.iter().map(|&n| (n, Word::identity(&ab))).collect(),
        }
    }

    pub fn get(&self, n: i64) -> Option<&Word> {
        self.coords.get(&n)
    }

    pub fn coords(&self) -> impl Iterator<Item = (i64, &Word)> {
        self.coords.iter().map(|(&n, w)| (n, w))
    }

    pub fn support(&self) -> Vec<i64> {
        self.coords.keys().copied().collect()
    }

    /// Coordinate-wise inverse.
    pub fn inverse(&self) -> TupleWord {
        TupleWord { coords: self.coords.iter().map(|(&n, w)| (n, w.inverse())).collect() }
    }

    /// Coordinate-wise product; both tuples must live over the same
    /// coordinate set.
    pub fn mul(&self, other: &TupleWord) -> Result<TupleWord> {
        if self.support() != other.support() {
            return Err(Error::DimensionMismatch("tuple coordinate sets differ".into()));
        }
        let mut coords = BTreeMap::new();
        for (&n, w) in &self.coords {
            coords.insert(n, w.mul(&other.coords[&n])?);
        }
        Ok(TupleWord { coords })
    }

    /// Relabels every coordinate `n` as `-n`.
    pub fn negate_coords(&self) -> TupleWord {
        TupleWord { coords: self.coords.iter().map(|(&n, w)| (-n, w.clone())).collect() }
    }

    /// Restriction to a subset of the coordinates.
    pub fn restrict(&self, coords: &[i64]) -> Result<TupleWord> {
        let mut out = BTreeMap::new();
        for &n in coords {
            let w = self
                .coords
                .get(&n)
                .ok_or_else(|| Error::InvalidArgument(format!("coordinate {n} not present")))?;
            out.insert(n, w.clone());
        }
        Ok(TupleWord { coords: out })
    }
}

impl fmt::Display for TupleWord {
    /// One `n: <word>` line per coordinate in increasing order; empty
    /// coordinates render as `n: 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, w) in &self.coords {
            writeln!(f, "{n}: {w}")?;
        }
        Ok(())
    }
}

/// The evaluation substitution at coordinate `n`: `w -> a`, `x -> b`,
/// `y -> a^n`, `z -> b^n`.
pub fn eval_substitution(n: i64) -> Substitution {
    let ab = Alphabet::ab();
    let a = Word::generator(&ab, 0).expect("valid index");
    let b = Word::generator(&ab, 1).expect("valid index");
    Substitution::new(&Alphabet::wxyz(), &ab, vec![a.clone(), b.clone(), a.pow(n), b.pow(n)])
        .expect("well-formed substitution")
}

/// Evaluates a word over `{w, x, y, z}` at coordinate `n`.
pub fn eval_at(g: &Word, n: i64) -> Result<Word> {
    eval_substitution(n).apply(g)
}

/// Evaluates `g` at every coordinate of `E`.
pub fn phi_tuple(g: &Word, coords: &[i64]) -> Result<TupleWord> {
    let mut map = BTreeMap::new();
    for &n in coords {
        map.insert(n, eval_at(g, n)?);
    }
    TupleWord::new(map)
}

/// The generating tuples: the evaluations of `w, x, y, z` over `E` in that
/// order, then for each `n` in `E` increasing, each normal generator of the
/// `c`-th lower central series term planted in coordinate `n` with all other
/// coordinates trivial.
pub fn sec_generators(spec: &SecSpec) -> Result<Vec<TupleWord>> {
    let gamma = Alphabet::wxyz();
    let mut out = Vec::new();
    for name in ["w", "x", "y", "z"] {
        let g = Word::parse(name, &gamma)?;
        out.push(phi_tuple(&g, spec.coords())?);
    }
    let relators = gamma_normal_gens(spec.class())?;
    for &n in spec.coords() {
        for r in &relators {
            let mut planted = TupleWord::identity(spec.coords());
            planted.coords.insert(n, r.clone());
            out.push(planted);
        }
    }
    Ok(out)
}

/// The verdict chain for an intersection query: does `g` evaluate trivially
/// at every coordinate other than `n`, and where does its evaluation at `n`
/// sit in the lower central series?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub n: i64,
    pub c: u32,
    /// Per-coordinate verdict for `m` in `E \ {n}`: true iff the evaluation
    /// at `m` reduces to the empty word.
    pub vanishing: BTreeMap<i64, bool>,
    /// Membership of the evaluation at `n` in the `c`-th term.
    pub member_at_c: bool,
    /// Non-membership of the evaluation at `n` in the `(c+1)`-th term.
    pub nonmember_at_c_plus_1: bool,
}

impl Certificate {
    pub fn hypotheses_hold(&self) -> bool {
        self.vanishing.values().all(|&v| v)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, v) in &self.vanishing {
            writeln!(f, "vanishing {m}: {v}")?;
        }
        writeln!(f, "member gamma_{}: {}", self.c, self.member_at_c)?;
        writeln!(f, "member gamma_{}: {}", self.c + 1, !self.nonmember_at_c_plus_1)
    }
}

/// Evaluates `g` over `E`, recording which coordinates other than `n`
/// vanish and the membership of the `n`-th evaluation at classes `c` and
/// `c + 1`.
///
/// When every vanishing verdict holds and `|E| >= c + 1`, membership at `c`
/// is forced; a failure of that implication is reported as a distinguished
/// error since it would contradict the intersection theorem the
/// construction rests on.
pub fn intersection_certificate(g: &Word, spec: &SecSpec, n: i64) -> Result<Certificate> {
    if !spec.contains(n) {
        return Err(Error::InvalidArgument(format!("coordinate {n} is not in E")));
    }
    let c = spec.class();
    let mut vanishing = BTreeMap::new();
    for &m in spec.coords() {
        if m == n {
            continue;
        }
        vanishing.insert(m, eval_at(g, m)?.is_identity());
    }
    let at_n = eval_at(g, n)?;
    let member_at_c = lcs_member(&at_n, c)?;
    let nonmember_at_c_plus_1 = !lcs_member(&at_n, c + 1)?;
    let cert = Certificate { n, c, vanishing, member_at_c, nonmember_at_c_plus_1 };
    if cert.hypotheses_hold() && spec.coords().len() as u32 >= c + 1 && !member_at_c {
        return Err(Error::IntersectionViolation(format!(
            "{g} vanishes off coordinate {n} but its evaluation there escapes class {c}"
        )));
    }
    Ok(cert)
}

/// The left-normed commutator `[y, z x^-1, z x^-2, ..., z x^-m]`, the
/// witness whose evaluation at coordinate `m + 1` lies in class `m + 1` but
/// not in class `m + 2`.
pub fn deep_witness(m: u32) -> Result<Word> {
    if m < 1 {
        return Err(Error::InvalidArgument("witness depth must be >= 1".into()));
    }
    let gamma = Alphabet::wxyz();
    let mut args = vec![Word::parse("y", &gamma)?];
    for k in 1..=m {
        args.push(Word::parse(&format!("z x^-{k}"), &gamma)?);
    }
    crate::words::comm(&args)
}

/// The automorphism `w -> w`, `x -> x`, `y -> y w^-1`, `z -> z x^-1` of the
/// rank-4 free group; evaluating its image at `n` equals evaluating the
/// original at `n - 1`.
pub fn shift_auto(g: &Word) -> Result<Word> {
    let gamma = Alphabet::wxyz();
    let images = vec![
        Word::parse("w", &gamma)?,
        Word::parse("x", &gamma)?,
        Word::parse("y w^-1", &gamma)?,
        Word::parse("z x^-1", &gamma)?,
    ];
    Substitution::new(&gamma, &gamma, images)?.apply(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnus::eta_gamma;
    use crate::series::{Monomial, Sym};
    use crate::TPoly;
    use num_traits::Zero;

    fn wab(text: &str) -> Word {
        Word::parse(text, &Alphabet::ab()).unwrap()
    }

    fn wg(text: &str) -> Word {
        Word::parse(text, &Alphabet::wxyz()).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(SecSpec::new(&[], 2).is_err());
        assert!(SecSpec::new(&[1, 1], 2).is_err());
        assert!(SecSpec::new(&[1, 2], 0).is_err());
        let spec = SecSpec::new(&[3, -1, 0], 2).unwrap();
        assert_eq!(spec.coords(), &[-1, 0, 3]);
    }

    #[test]
    fn phi_tuple_evaluations() {
        let t = phi_tuple(&wg("y"), &[1, 2, 3, 4]).unwrap();
        for n in 1..=4 {
            assert_eq!(t.get(n).unwrap(), &wab("a").pow(n));
        }
        let t = phi_tuple(&wg("w"), &[1, 2, 3, 4]).unwrap();
        for n in 1..=4 {
            assert_eq!(t.get(n).unwrap(), &wab("a"));
        }
        let t = phi_tuple(&wg("y w^-1"), &[0, 1]).unwrap();
        assert_eq!(t.get(0).unwrap(), &wab("a^-1"));
        assert!(t.get(1).unwrap().is_identity());
    }

    #[test]
    fn generator_list_for_the_twelve_element_example() {
        let spec = SecSpec::new(&[1, 2, 3, 4], 3).unwrap();
        let gens = sec_generators(&spec).unwrap();
        assert_eq!(gens.len(), 12);
        assert_eq!(gens[0], phi_tuple(&wg("w"), &[1, 2, 3, 4]).unwrap());
        assert_eq!(gens[1], phi_tuple(&wg("x"), &[1, 2, 3, 4]).unwrap());
        assert_eq!(gens[2], phi_tuple(&wg("y"), &[1, 2, 3, 4]).unwrap());
        assert_eq!(gens[3], phi_tuple(&wg("z"), &[1, 2, 3, 4]).unwrap());
        // eight planted tuples, two per coordinate, in coordinate order
        let r = gamma_normal_gens(3).unwrap();
        for (i, &n) in [1i64, 2, 3, 4].iter().enumerate() {
            for (j, rel) in r.iter().enumerate() {
                let planted = &gens[4 + 2 * i + j];
                assert_eq!(planted.get(n).unwrap(), rel);
                for m in [1i64, 2, 3, 4] {
                    if m != n {
                        assert!(planted.get(m).unwrap().is_identity());
                    }
                }
            }
        }
    }

    #[test]
    fn generator_list_small_cases() {
        let gens = sec_generators(&SecSpec::new(&[1, 2], 2).unwrap()).unwrap();
        let expect = [
            ("a", "a"),
            ("b", "b"),
            ("a", "a^2"),
            ("b", "b^2"),
            ("[a,b]", "1"),
            ("1", "[a,b]"),
        ];
        assert_eq!(gens.len(), expect.len());
        for (gen, (at1, at2)) in gens.iter().zip(expect.iter()) {
            assert_eq!(gen.get(1).unwrap(), &wab(at1));
            assert_eq!(gen.get(2).unwrap(), &wab(at2));
        }

        let gens = sec_generators(&SecSpec::new(&[5], 1).unwrap()).unwrap();
        assert_eq!(gens.len(), 6);
        assert_eq!(gens[4].get(5).unwrap(), &wab("a"));
        assert_eq!(gens[5].get(5).unwrap(), &wab("b"));
    }

    #[test]
    fn witness_words() {
        assert_eq!(deep_witness(1).unwrap(), wg("[y, z x^-1]"));
        assert_eq!(deep_witness(2).unwrap(), wg("[[y, z x^-1], z x^-2]"));
        assert!(deep_witness(0).is_err());
    }

    #[test]
    fn witness_series_at_depth_one() {
        // eta([y, z x^-1]) = 1 + t(t-1)(AB - BA) + higher order
        let s = eta_gamma(&deep_witness(1).unwrap(), 2).unwrap();
        let t_t_minus_1 = TPoly::from_coeffs(vec![
            crate::Rat::zero(),
            crate::Rat::from_integer((-1).into()),
            crate::Rat::from_integer(1.into()),
        ]);
        assert_eq!(s.coeff(&Monomial::from_syms(&[Sym::A, Sym::B])), t_t_minus_1);
        assert_eq!(
            s.coeff(&Monomial::from_syms(&[Sym::B, Sym::A])),
            TPoly::zero() - t_t_minus_1
        );
        assert_eq!(s.coeff(&Monomial::symbol(Sym::A)), TPoly::zero());
        assert_eq!(s.coeff(&Monomial::symbol(Sym::B)), TPoly::zero());
    }

    #[test]
    fn certificate_for_depth_two_witness() {
        let spec = SecSpec::new(&[0, 1, 2, 3], 3).unwrap();
        let cert = intersection_certificate(&deep_witness(2).unwrap(), &spec, 3).unwrap();
        assert!(cert.hypotheses_hold());
        assert_eq!(cert.vanishing.len(), 3);
        assert!(cert.member_at_c);
        assert!(cert.nonmember_at_c_plus_1);
    }

    #[test]
    fn certificate_detects_failed_vanishing() {
        let spec = SecSpec::new(&[1, 2], 1).unwrap();
        let cert = intersection_certificate(&wg("w"), &spec, 2).unwrap();
        assert_eq!(cert.vanishing[&1], false);
        assert!(!cert.hypotheses_hold());
    }

    #[test]
    fn certificate_for_depth_one_witness_at_class_two() {
        let spec = SecSpec::new(&[0, 1, 2], 2).unwrap();
        let cert = intersection_certificate(&deep_witness(1).unwrap(), &spec, 2).unwrap();
        assert!(cert.hypotheses_hold());
        assert!(cert.member_at_c);
        assert!(cert.nonmember_at_c_plus_1);
    }

    #[test]
    fn certificate_rejects_foreign_coordinate() {
        let spec = SecSpec::new(&[0, 1], 2).unwrap();
        assert!(intersection_certificate(&wg("w"), &spec, 5).is_err());
    }

    #[test]
    fn shift_automorphism_images() {
        assert_eq!(shift_auto(&wg("y")).unwrap(), wg("y w^-1"));
        assert_eq!(shift_auto(&wg("w")).unwrap(), wg("w"));
        assert_eq!(
            eval_at(&shift_auto(&wg("z")).unwrap(), 2).unwrap(),
            eval_at(&wg("z"), 1).unwrap()
        );
    }

    #[test]
    fn restriction_of_generators_projects_onto_smaller_spec() {
        // dropping a coordinate maps the generator list onto the smaller
        // one: evaluation tuples restrict, planted tuples restrict to the
        // smaller planted set plus trivial tuples
        let big = sec_generators(&SecSpec::new(&[1, 2, 3], 2).unwrap()).unwrap();
        let small = sec_generators(&SecSpec::new(&[1, 3], 2).unwrap()).unwrap();
        let restricted: Vec<TupleWord> =
            big.iter().map(|t| t.restrict(&[1, 3]).unwrap()).collect();
        for s in &small {
            assert!(restricted.contains(s), "missing restriction {s}");
        }
        let trivial = TupleWord::identity(&[1, 3]);
        for r in &restricted {
            assert!(small.contains(r) || *r == trivial);
        }
    }
}

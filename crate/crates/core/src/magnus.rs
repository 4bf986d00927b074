//! The Magnus power-series calculus.
//!
//! The rank-2 free group on `{a, b}` embeds in the units of the truncated
//! series algebra by `a -> 1 + A`, `b -> 1 + B`; membership in the `c`-th
//! lower central series term is exactly triviality of the image modulo terms
//! of degree `c`, which [`lcs_member`] tests. The rank-4 group on
//! `{w, x, y, z}` maps into series with polynomial coefficients by
//! `w -> 1 + A`, `x -> 1 + B`, `y -> (1 + A)^t`, `z -> (1 + B)^t`;
//! [`specialize`] evaluates `t` at an integer, which intertwines the two
//! embeddings with the per-coordinate evaluation of words.

use num_traits::{One, Zero};

use crate::series::{Monomial, Series, Sym};
use crate::words::{Alphabet, Sign, Word};
use crate::{Error, PolySeries, Rat, RatSeries, Result, TPoly};

/// The falling-factorial binomial coefficient `C(t, k)` as a polynomial:
/// `t (t-1) ... (t-k+1) / k!`.
pub fn binomial_poly(k: usize) -> TPoly {
    let mut p = TPoly::one();
    for i in 0..k {
        p = p * TPoly::t_minus(i as i64);
    }
    let mut kfact = Rat::one();
    for i in 1..=k {
        kfact = kfact * Rat::from_integer(i.into());
    }
    let inv = Rat::one() / kfact;
    TPoly::from_coeffs(p.coeffs().iter().map(|c| c * &inv).collect())
}

/// The generalized binomial coefficient `C(n, k)` for integer `n` (negative
/// allowed).
pub fn binomial_rat(n: i64, k: usize) -> Rat {
    binomial_poly(k).eval_int(n)
}

/// The series `(1 + symbol)^t` truncated at `trunc`, with polynomial
/// coefficients `C(t, k)` on `symbol^k`.
pub fn binomial_series_t(symbol: Sym, trunc: usize) -> PolySeries {
    let mut s = Series::zero_at(trunc);
    for k in 0..=trunc {
        s = s
            .add(&Series::term(Monomial::power(symbol, k), binomial_poly(k), trunc))
            .expect("equal truncation");
    }
    s
}

/// The series `(1 + symbol)^n` for integer `n`, truncated at `trunc`.
pub fn binomial_series_int(symbol: Sym, n: i64, trunc: usize) -> RatSeries {
    let mut s = Series::zero_at(trunc);
    for k in 0..=trunc {
        s = s
            .add(&Series::term(Monomial::power(symbol, k), binomial_rat(n, k), trunc))
            .expect("equal truncation");
    }
    s
}

fn check_alphabet(g: &Word, expected: &Alphabet) -> Result<()> {
    if g.alphabet() != expected {
        return Err(Error::AlphabetMismatch(format!(
            "word {g} is not over {:?}",
            expected.names()
        )));
    }
    Ok(())
}

/// Magnus embedding of a word over `{a, b}`: the image of `a` is `1 + A`,
/// of `b` is `1 + B`, truncated at `trunc`.
pub fn eta_free(g: &Word, trunc: usize) -> Result<RatSeries> {
    check_alphabet(g, &Alphabet::ab())?;
    let pos = [gen_series(Sym::A, trunc), gen_series(Sym::B, trunc)];
    let neg = [pos[0].inv()?, pos[1].inv()?];
    apply_images(g, trunc, &pos, &neg)
}

/// Polynomial-coefficient embedding of a word over `{w, x, y, z}`:
/// `w -> 1 + A`, `x -> 1 + B`, `y -> (1 + A)^t`, `z -> (1 + B)^t`.
pub fn eta_gamma(g: &Word, trunc: usize) -> Result<PolySeries> {
    check_alphabet(g, &Alphabet::wxyz())?;
    let pos = [
        gen_series(Sym::A, trunc).map_coeffs(|c| TPoly::constant(c.clone())),
        gen_series(Sym::B, trunc).map_coeffs(|c| TPoly::constant(c.clone())),
        binomial_series_t(Sym::A, trunc),
        binomial_series_t(Sym::B, trunc),
    ];
    let neg = [pos[0].inv()?, pos[1].inv()?, pos[2].inv()?, pos[3].inv()?];
    apply_images(g, trunc, &pos, &neg)
}

fn gen_series(symbol: Sym, trunc: usize) -> RatSeries {
    Series::one_at(trunc)
        .add(&Series::term(Monomial::symbol(symbol), Rat::one(), trunc))
        .expect("equal truncation")
}

fn apply_images<C>(
    g: &Word,
    trunc: usize,
    pos: &[Series<C>],
    neg: &[Series<C>],
) -> Result<Series<C>>
where
    C: Zero
        + One
        + Clone
        + PartialEq
        + std::ops::Add<Output = C>
        + std::ops::Mul<Output = C>
        + std::ops::Neg<Output = C>,
{
    let mut out = Series::one_at(trunc);
    for l in g.letters() {
        let img = match l.sign {
            Sign::Plus => &pos[l.index],
            Sign::Minus => &neg[l.index],
        };
        out = out.mul(img)?;
    }
    Ok(out)
}

/// Evaluates every polynomial coefficient at `t = n`, dropping terms that
/// vanish.
pub fn specialize(s: &PolySeries, n: i64) -> RatSeries {
    s.map_coeffs(|p| p.eval_int(n))
}

/// Lower-central-series membership for a word over `{a, b}`: `g` lies in
/// the `c`-th term iff its Magnus image is trivial modulo degree-`c` terms.
/// The test truncates at `c - 1`, the minimum sufficient degree; it is
/// vacuously true for `c = 1`.
pub fn lcs_member(g: &Word, c: u32) -> Result<bool> {
    if c < 1 {
        return Err(Error::InvalidArgument("lower central series index must be >= 1".into()));
    }
    let image = eta_free(g, (c - 1) as usize)?;
    Ok(image.is_one())
}

/// Word problem in the free nilpotent quotient of class `c - 1`: true iff
/// `u v^-1` lies in the `c`-th lower central series term.
pub fn nilp_eq(u: &Word, v: &Word, c: u32) -> Result<bool> {
    lcs_member(&u.mul(&v.inverse())?, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn wab(text: &str) -> Word {
        Word::parse(text, &Alphabet::ab()).unwrap()
    }

    fn wg(text: &str) -> Word {
        Word::parse(text, &Alphabet::wxyz()).unwrap()
    }

    fn ipoly(coeffs: &[i64]) -> TPoly {
        TPoly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn binomial_poly_small_cases() {
        assert_eq!(binomial_poly(0), TPoly::one());
        assert_eq!(binomial_poly(1), ipoly(&[0, 1]));
        // C(t,2) = t(t-1)/2 = -1/2 t + 1/2 t^2
        let half = Rat::new(1.into(), 2.into());
        assert_eq!(
            binomial_poly(2),
            TPoly::from_coeffs(vec![Rat::zero(), -half.clone(), half])
        );
    }

    #[test]
    fn binomial_series_with_t_exponent() {
        let s = binomial_series_t(Sym::A, 3);
        assert_eq!(s.coeff(&Monomial::power(Sym::A, 2)), binomial_poly(2));
        // specializing the exponent at t = 0 gives the constant series 1
        assert!(specialize(&s, 0).is_one());
    }

    #[test]
    fn binomial_series_integer_exponent_matches_squaring() {
        let two = binomial_series_int(Sym::A, 2, 3);
        let base = gen_series(Sym::A, 3);
        assert_eq!(two, base.mul(&base).unwrap());
        assert_eq!(two.coeff(&Monomial::power(Sym::A, 1)), rat(2));
        assert_eq!(two.coeff(&Monomial::power(Sym::A, 3)), rat(0));
    }

    #[test]
    fn negative_binomial_matches_geometric_series() {
        // C(-1, k) = (-1)^k, so (1+A)^-1 agrees with the alternating
        // geometric series and with the series inverse.
        let s = specialize(&binomial_series_t(Sym::A, 4), -1);
        assert_eq!(s, gen_series(Sym::A, 4).inv().unwrap());
        for k in 0..=4 {
            assert_eq!(s.coeff(&Monomial::power(Sym::A, k)), rat(if k % 2 == 0 { 1 } else { -1 }));
        }
    }

    #[test]
    fn eta_free_generators_and_cancellation() {
        let a = eta_free(&wab("a"), 3).unwrap();
        assert_eq!(a, gen_series(Sym::A, 3));
        assert!(eta_free(&wab("a a^-1"), 3).unwrap().is_one());
    }

    #[test]
    fn eta_free_commutator_lowest_term() {
        // eta([a,b]) = 1 + AB - BA at truncation 2
        let s = eta_free(&wab("[a,b]"), 2).unwrap();
        assert_eq!(s.coeff(&Monomial::empty()), rat(1));
        assert_eq!(s.coeff(&Monomial::from_syms(&[Sym::A, Sym::B])), rat(1));
        assert_eq!(s.coeff(&Monomial::from_syms(&[Sym::B, Sym::A])), rat(-1));
        assert_eq!(s.num_terms(), 3);
    }

    #[test]
    fn eta_rejects_wrong_alphabet() {
        assert!(eta_free(&wg("w"), 2).is_err());
        assert!(eta_gamma(&wab("a"), 2).is_err());
    }

    #[test]
    fn eta_gamma_generator_images() {
        let w = eta_gamma(&wg("w"), 4).unwrap();
        assert_eq!(w.coeff(&Monomial::symbol(Sym::A)), TPoly::one());
        assert_eq!(w.num_terms(), 2);
        let y = eta_gamma(&wg("y"), 1).unwrap();
        assert_eq!(y.coeff(&Monomial::symbol(Sym::A)), ipoly(&[0, 1]));
        // z x^-1 at truncation 1 is 1 + (t - 1) B
        let zx = eta_gamma(&wg("z x^-1"), 1).unwrap();
        assert_eq!(zx.coeff(&Monomial::symbol(Sym::B)), ipoly(&[-1, 1]));
        assert_eq!(zx.coeff(&Monomial::symbol(Sym::A)), TPoly::zero());
    }

    #[test]
    fn specialize_kills_matching_roots() {
        assert!(specialize(&eta_gamma(&wg("y"), 3).unwrap(), 0).is_one());
        assert!(specialize(&eta_gamma(&wg("z x^-1"), 1).unwrap(), 1).is_one());
    }

    #[test]
    fn lcs_membership_basics() {
        assert!(!lcs_member(&wab("a"), 2).unwrap());
        assert!(lcs_member(&wab("[a,b]"), 2).unwrap());
        assert!(!lcs_member(&wab("[a,b]"), 3).unwrap());
        assert!(lcs_member(&wab("a"), 1).unwrap());
        assert!(lcs_member(&wab("1"), 7).unwrap());
        assert!(lcs_member(&wab("[[a,b],a]"), 3).unwrap());
        assert!(lcs_member(&wab("[a,b] [[a,b],b]"), 2).unwrap());
        assert!(lcs_member(&wab("a"), 0).is_err());
    }

    #[test]
    fn nilpotent_quotient_equality() {
        assert!(nilp_eq(&wab("a b"), &wab("b a"), 2).unwrap());
        assert!(!nilp_eq(&wab("a b"), &wab("b a"), 3).unwrap());
        let w = wab("a b^-2 a");
        assert!(nilp_eq(&w, &w, 6).unwrap());
    }
}

//! Truncated power series in two non-commuting symbols.
//!
//! A [`Series`] stores a sparse term map from [`Monomial`] (a word over the
//! symbols `A` and `B`) to a coefficient, together with an explicit
//! truncation degree. Zero coefficients are never stored and every stored
//! monomial respects the truncation bound, so equality is structural.
//! Arithmetic on series with different truncation degrees is rejected rather
//! than coerced.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_traits::{One, Zero};

use crate::{Error, Result};

/// One of the two non-commuting series symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    A,
    B,
}

/// A word in the free monoid on `{A, B}`; the empty word is the constant
/// monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<Sym>);

impl Monomial {
    pub fn empty() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn symbol(s: Sym) -> Monomial {
        Monomial(vec![s])
    }

    pub fn power(s: Sym, k: usize) -> Monomial {
        Monomial(vec![s; k])
    }

    pub fn from_syms(syms: &[Sym]) -> Monomial {
        Monomial(syms.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn syms(&self) -> &[Sym] {
        &self.0
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial(v)
    }
}

/// Ordered by length, then lexicographically with `A < B`; this is the
/// canonical output order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for s in &self.0 {
            match s {
                Sym::A => write!(f, "A")?,
                Sym::B => write!(f, "B")?,
            }
        }
        Ok(())
    }
}

/// Truncated series with coefficients in a commutative scalar ring `C`.
///
/// Instantiated as [`crate::RatSeries`] (rational coefficients) and
/// [`crate::PolySeries`] (`TPoly` coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series<C> {
    trunc: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C> Series<C>
where
    C: Zero + One + Clone + PartialEq + Add<Output = C> + Mul<Output = C> + Neg<Output = C>,
{
    /// The zero series at the given truncation degree.
    pub fn zero_at(trunc: usize) -> Series<C> {
        Series { trunc, terms: BTreeMap::new() }
    }

    /// The constant series 1.
    pub fn one_at(trunc: usize) -> Series<C> {
        Series::term(Monomial::empty(), C::one(), trunc)
    }

    /// A single term, dropped if the coefficient is zero or the monomial is
    /// longer than the truncation degree.
    pub fn term(mono: Monomial, coeff: C, trunc: usize) -> Series<C> {
        let mut s = Series::zero_at(trunc);
        s.add_term(mono, coeff);
        s
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial, zero when absent.
    pub fn coeff(&self, mono: &Monomial) -> C {
        self.terms.get(mono).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&Monomial::empty()).map(|c| c.is_one()).unwrap_or(false)
    }

    /// Least length of a stored monomial of positive length, if any. This is
    /// the valuation of `self - constant term` in the positive-degree ideal.
    pub fn lowest_positive_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).find(|&l| l > 0)
    }

    fn add_term(&mut self, mono: Monomial, coeff: C) {
        if mono.len() > self.trunc || coeff.is_zero() {
            return;
        }
        match self.terms.remove(&mono) {
            None => {
                self.terms.insert(mono, coeff);
            }
            Some(old) => {
                let sum = old + coeff;
                if !sum.is_zero() {
                    self.terms.insert(mono, sum);
                }
            }
        }
    }

    fn check_trunc(&self, other: &Series<C>) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        Ok(())
    }

    pub fn add(&self, other: &Series<C>) -> Result<Series<C>> {
        self.check_trunc(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Series<C>) -> Result<Series<C>> {
        self.check_trunc(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn negate(&self) -> Series<C> {
        let mut out = Series::zero_at(self.trunc);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    /// Product with all monomials longer than the truncation degree
    /// discarded.
    pub fn mul(&self, other: &Series<C>) -> Result<Series<C>> {
        self.check_trunc(other)?;
        let mut out = Series::zero_at(self.trunc);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.len() + m2.len() > self.trunc {
                    continue;
                }
                out.add_term(m1.concat(m2), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    /// Inverse of a series with constant term 1, by the geometric series of
    /// its positive-degree part.
    pub fn inv(&self) -> Result<Series<C>> {
        if !self.coeff(&Monomial::empty()).is_one() {
            return Err(Error::NotInvertible);
        }
        let j = self.sub(&Series::one_at(self.trunc))?;
        let mut out = Series::one_at(self.trunc);
        let mut power = Series::one_at(self.trunc);
        for _ in 0..self.trunc {
            power = power.mul(&j)?.negate();
            if power.terms.is_empty() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// Re-truncates to a smaller degree, discarding longer monomials.
    pub fn truncate_to(&self, trunc: usize) -> Result<Series<C>> {
        if trunc > self.trunc {
            return Err(Error::TruncationMismatch(self.trunc, trunc));
        }
        let mut out = Series::zero_at(trunc);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Applies a scalar map to every coefficient, dropping the terms it
    /// sends to zero.
    pub fn map_coeffs<D, F>(&self, f: F) -> Series<D>
    where
        D: Zero + One + Clone + PartialEq + Add<Output = D> + Mul<Output = D> + Neg<Output = D>,
        F: Fn(&C) -> D,
    {
        let mut out = Series::zero_at(self.trunc);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl<C: fmt::Display> Series<C> {
    /// Canonical text rendering: one `<monomial> : <coefficient>` line per
    /// term, sorted by (length, lex). The zero series renders as a single
    /// line `0`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0\n".to_string();
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            out.push_str(&format!("{m} : {c}\n"));
        }
        out
    }
}

//! Dense univariate polynomials in `t`, generic over the coefficient scalar.
//!
//! The concrete instantiation used by the series calculus is
//! [`crate::TPoly`] = `Poly<BigRational>`. Coefficients are stored lowest
//! degree first with no trailing zero, so the zero polynomial is the empty
//! coefficient list and equality is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Zero + Clone> Poly<T> {
    /// Builds from coefficients indexed by power of `t`, trimming trailing
    /// zeros.
    pub fn from_coeffs(coeffs: Vec<T>) -> Poly<T> {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: T) -> Poly<T> {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: T, k: usize) -> Poly<T> {
        let mut coeffs = vec![T::zero(); k];
        coeffs.push(c);
        Poly::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }
}

impl<T> Poly<T>
where
    T: Zero + Clone + Mul<Output = T> + Add<Output = T>,
{
    /// Horner evaluation at a scalar point.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }
}

impl Poly<Rat> {
    pub fn eval_int(&self, n: i64) -> Rat {
        self.eval(&Rat::from_integer(n.into()))
    }

    /// The linear polynomial `t - n`.
    pub fn t_minus(n: i64) -> Poly<Rat> {
        Poly::from_coeffs(vec![Rat::from_integer((-n).into()), Rat::one()])
    }

    /// Euclidean division by a non-zero divisor; returns `(q, r)` with
    /// `self = q * divisor + r` and `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly<Rat>) -> (Poly<Rat>, Poly<Rat>) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let d = divisor.coeffs.len() - 1;
        let lead = divisor.coeffs[d].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let k = rem.len() - 1 - d;
            let factor = rem.last().unwrap() / &lead;
            quot[k] = factor.clone();
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(dc * &factor);
            }
            rem.pop(); // top coefficient cancelled exactly
            while matches!(rem.last(), Some(c) if c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }
}

impl<T: Zero + Clone> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T> One for Poly<T>
where
    T: Zero + One + Clone + PartialEq,
{
    fn one() -> Self {
        Poly::constant(T::one())
    }

    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

impl<T: Zero + Clone + Add<Output = T>> Add for Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: Poly<T>) -> Poly<T> {
        let (mut long, short) =
            if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        for (i, c) in short.coeffs.into_iter().enumerate() {
            let cur = std::mem::replace(&mut long.coeffs[i], T::zero());
            long.coeffs[i] = cur + c;
        }
        long.trim();
        long
    }
}

impl<T: Zero + Clone + Neg<Output = T>> Neg for Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<T: Zero + Clone + Add<Output = T> + Neg<Output = T>> Sub for Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: Poly<T>) -> Poly<T> {
        self + (-rhs)
    }
}

impl<T: Zero + Clone + Mul<Output = T> + Add<Output = T>> Mul for Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let cur = std::mem::replace(&mut coeffs[i + j], T::zero());
                coeffs[i + j] = cur + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<T> fmt::Display for Poly<T>
where
    T: Zero + One + Signed + Clone + PartialEq + fmt::Display,
{
    /// Renders as `c0 + c1*t + c2*t^2 + ...` with zero terms omitted, unit
    /// coefficients on powers of `t` suppressed, and `-` joining negative
    /// terms. The zero polynomial renders `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", t_power(k))?;
            } else {
                write!(f, "{mag}*{}", t_power(k))?;
            }
        }
        Ok(())
    }
}

fn t_power(k: usize) -> String {
    if k == 1 {
        "t".to_string()
    } else {
        format!("t^{k}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Poly<Rat> {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    #[test]
    fn trimming_and_degree() {
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
        assert_eq!(Poly::<Rat>::zero().degree(), None);
    }

    #[test]
    fn ring_operations() {
        let f = p(&[1, 1]); // 1 + t
        let g = p(&[-1, 1]); // -1 + t
        assert_eq!(f.clone() * g.clone(), p(&[-1, 0, 1]));
        assert_eq!(f.clone() + g.clone(), p(&[0, 2]));
        assert_eq!(f.clone() - f.clone(), Poly::zero());
        assert_eq!(f.eval_int(3), Rat::from_integer(4.into()));
        assert_eq!(g.eval_int(1), Rat::zero());
    }

    #[test]
    fn divrem_splits_exactly() {
        // t(t-1)(t-2) + (2t - 3) divided by t(t-1)(t-2)
        let product = p(&[0, 1]) * Poly::t_minus(1) * Poly::t_minus(2);
        let noisy = product.clone() + p(&[-3, 2]);
        let (q, r) = noisy.divrem(&product);
        assert_eq!(q, p(&[1]));
        assert_eq!(r, p(&[-3, 2]));
        let (q2, r2) = product.divrem(&Poly::t_minus(2));
        assert_eq!(r2, Poly::zero());
        assert_eq!(q2, p(&[0, 1]) * Poly::t_minus(1));
    }

    #[test]
    fn display_format() {
        assert_eq!(p(&[0, -1, 1]).to_string(), "-t + t^2");
        assert_eq!(p(&[0, 1, 0, -1]).to_string(), "t - t^3");
        assert_eq!(p(&[5]).to_string(), "5");
        assert_eq!(Poly::<Rat>::zero().to_string(), "0");
        let half = Poly::from_coeffs(vec![
            Rat::zero(),
            Rat::new((-1).into(), 2.into()),
            Rat::new(1.into(), 2.into()),
        ]);
        assert_eq!(half.to_string(), "-1/2*t + 1/2*t^2");
    }
}

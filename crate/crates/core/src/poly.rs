//! Dense univariate polynomials over [`Rational`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

/// Polynomial with `coeffs[i]` the coefficient of `x^i`.
///
/// The last stored coefficient is never zero; the zero polynomial is the
/// empty vector and has no degree ([`Poly::degree`] returns `None`).
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl From<Vec<Rational>> for Poly {
    fn from(coeffs: Vec<Rational>) -> Self {
        Poly::new(coeffs)
    }
}

impl From<Poly> for Vec<Rational> {
    fn from(p: Poly) -> Self {
        p.coeffs
    }
}

impl Poly {
    pub const ZERO: Poly = Poly { coeffs: Vec::new() };

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `x`.
    pub fn x() -> Self {
        Poly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    /// `x - a`.
    pub fn linear(a: &Rational) -> Self {
        Poly::new(vec![-a, Rational::one()])
    }

    /// `c x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Rational::is_one)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `x * self`.
    pub fn shift_up(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// `self + c * other`, the workhorse of every recurrence.
    pub fn add_scaled(&mut self, other: &Poly, c: &Rational) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Rational::zero());
        }
        for (dst, src) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *dst += &(src * c);
        }
        self.normalize();
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Rational::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from(k))
                .collect(),
        )
    }

    /// `self ∘ inner`, by Horner accumulation.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * inner;
            acc.add_scaled(&Poly::one(), c);
        }
        acc
    }

    /// Synthetic division by `x - a`: returns `(q, r)` with `self = (x - a) q + r`.
    pub fn div_rem_linear(&self, a: &Rational) -> (Poly, Rational) {
        let Some(deg) = self.degree() else {
            return (Poly::zero(), Rational::zero());
        };
        if deg == 0 {
            return (Poly::zero(), self.coeffs[0].clone());
        }
        let mut quot = vec![Rational::zero(); deg];
        let mut carry = Rational::zero();
        for k in (0..=deg).rev() {
            carry = &carry * a + &self.coeffs[k];
            if k > 0 {
                quot[k - 1] = carry.clone();
            }
        }
        (Poly::new(quot), carry)
    }

    /// Long division by a monic divisor: `self = divisor * q + r`, `deg r < deg divisor`.
    ///
    /// Panics if `divisor` is not monic.
    pub fn div_rem_monic(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(divisor.is_monic(), "div_rem_monic needs a monic divisor");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &(&c * d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                if mag.denom() == &num_bigint::BigInt::from(1) || k == 0 {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Poly::new(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn add_cancels_to_zero() {
        let sum = &p(&[1, 1]) + &p(&[-1, -1]);
        assert!(sum.is_zero());
        assert_eq!(sum.degree(), None);
        assert_eq!(sum.coeffs().len(), 0);
    }

    #[test]
    fn add_disjoint_and_rational() {
        let sum = &Poly::monomial(rat(1, 1), 2) + &Poly::one();
        assert_eq!(sum.coeffs(), &[rat(1, 1), rat(0, 1), rat(1, 1)]);
        let half = Poly::monomial(rat(1, 2), 1);
        let third = Poly::monomial(rat(1, 3), 1);
        assert_eq!(&half + &third, Poly::monomial(rat(5, 6), 1));
    }

    #[test]
    fn mul_examples() {
        assert!((&p(&[-3, 1]) * &Poly::zero()).is_zero());
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
        // (x^2 + x + 2)^2
        let w = p(&[2, 1, 1]);
        assert_eq!(&w * &w, p(&[4, 4, 5, 2, 1]));
    }

    #[test]
    fn compose_examples() {
        let sq = p(&[0, 0, 1]);
        assert_eq!(sq.compose(&p(&[-1, 0, 1])), p(&[1, 0, -2, 0, 1]));
        assert_eq!(
            Poly::constant(rat(7, 3)).compose(&p(&[5, 1, 1])),
            Poly::constant(rat(7, 3))
        );
        assert_eq!(p(&[-3, 1]).compose(&p(&[0, 1, 1])), p(&[-3, 1, 1]));
        assert!(Poly::zero().compose(&p(&[1, 1])).is_zero());
    }

    #[test]
    fn div_rem_linear_examples() {
        assert_eq!(p(&[-1, 0, 1]).div_rem_linear(&rat(1, 1)), (p(&[1, 1]), rat(0, 1)));
        assert_eq!(p(&[5]).div_rem_linear(&rat(2, 1)), (Poly::zero(), rat(5, 1)));
        assert_eq!(
            p(&[0, 0, 0, 1]).div_rem_linear(&rat(-1, 1)),
            (p(&[1, -1, 1]), rat(-1, 1))
        );
    }

    #[test]
    fn div_rem_monic_example() {
        // x^4 - 2x^2 + 3 = (x^2 - 1)(x^2 - 1) + 2
        let (q, r) = p(&[3, 0, -2, 0, 1]).div_rem_monic(&p(&[-1, 0, 1]));
        assert_eq!(q, p(&[-1, 0, 1]));
        assert_eq!(r, p(&[2]));
        let (q, r) = p(&[1, 2]).div_rem_monic(&p(&[-1, 0, 1]));
        assert!(q.is_zero());
        assert_eq!(r, p(&[1, 2]));
    }

    #[test]
    fn derivative_and_eval() {
        assert_eq!(p(&[7, 3, 0, 2]).derivative(), p(&[3, 0, 6]));
        assert!(p(&[7]).derivative().is_zero());
        assert_eq!(p(&[1, -2, 1]).eval(&rat(3, 1)), rat(4, 1));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(Poly::new(vec![rat(1, 2), rat(-3, 4)]).to_string(), "-(3/4)x + 1/2");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d))
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(small_rat(), 0..6).prop_map(Poly::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(f in small_poly(), g in small_poly(), h in small_poly()) {
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert!((&f - &f).is_zero());
        }

        #[test]
        fn linear_division_reconstructs(f in small_poly(), a in small_rat()) {
            let (q, r) = f.div_rem_linear(&a);
            let back = &(&Poly::linear(&a) * &q) + &Poly::constant(r.clone());
            prop_assert_eq!(back, f.clone());
            prop_assert_eq!(r, f.eval(&a));
        }

        #[test]
        fn compose_degree_is_multiplicative(f in small_poly(), g in small_poly()) {
            let (Some(df), Some(dg)) = (f.degree(), g.degree()) else { return Ok(()); };
            prop_assume!(df >= 1 && dg >= 1);
            prop_assert_eq!(f.compose(&g).degree(), Some(df * dg));
        }

        #[test]
        fn compose_agrees_with_evaluation(f in small_poly(), g in small_poly(), t in small_rat()) {
            prop_assert_eq!(f.compose(&g).eval(&t), f.eval(&g.eval(&t)));
        }
    }
}

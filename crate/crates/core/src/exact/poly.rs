//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use crate::exact::combinatorics::binomial;
use crate::scalar::Field;

/// Coefficients indexed by degree, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T: Field> {
    coeffs: Vec<T>,
}

impl<T: Field> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c x^d`.
    pub fn monomial(c: T, d: usize) -> Self {
        let mut v = vec![T::zero(); d + 1];
        v[d] = c;
        Polynomial::new(v)
    }

    pub fn x() -> Self {
        Polynomial::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> T {
        self.coeffs.get(d).cloned().unwrap_or_else(T::zero)
    }

    /// Degree, with −1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64_exact(i as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Polynomial::constant(T::one()), |acc, _| &acc * self)
    }

    /// `P(x)/x`; the constant term is dropped.
    pub fn div_by_x(&self) -> Self {
        Polynomial::new(self.coeffs.iter().skip(1).cloned().collect())
    }

    /// `x^p (1 - x)^q`, expanded.
    pub fn beta_kernel(p: u32, q: u32) -> Self {
        let mut v = vec![T::zero(); (p + q + 1) as usize];
        for j in 0..=q {
            let b = binomial(q as u64, j as i64);
            let c = T::from_i64_exact(i64::try_from(b).expect("binomial fits i64"));
            v[(p + j) as usize] = if j % 2 == 0 { c } else { -c };
        }
        Polynomial::new(v)
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl Polynomial<BigRational> {
    /// Exact `∫_0^1 P(x) dx`.
    pub fn integral_01(&self) -> BigRational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c / BigRational::from_integer((i as i64 + 1).into()))
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

impl<T: Field> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Field> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        self + &(-rhs)
    }
}

impl<T: Field> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Field> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(v)
    }
}

impl<T: Field + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Polynomial<BigRational>;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn p(cs: &[i64]) -> P {
        P::new(cs.iter().map(|&c| q(c, 1)).collect())
    }

    #[test]
    fn trimming_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), 1);
        assert_eq!(p(&[0, 0]).degree(), -1);
        assert!(p(&[]).is_zero());
    }

    #[test]
    fn derivatives_are_exact() {
        let f = p(&[0, 0, 1, -1]);
        assert_eq!(f.derivative(), p(&[0, 2, -3]));
        assert_eq!(f.nth_derivative(2), p(&[2, -6]));
        assert_eq!(f.nth_derivative(2).eval(&q(1, 1)), q(-4, 1));
        assert_eq!(f.nth_derivative(4), P::zero());
    }

    #[test]
    fn beta_kernel_expansion() {
        assert_eq!(P::beta_kernel(2, 1), p(&[0, 0, 1, -1]));
        let k = P::beta_kernel(1, 1);
        assert_eq!(k.integral_01(), q(1, 6));
        let x = P::x();
        let one_minus = &P::constant(q(1, 1)) - &x;
        assert_eq!(&x.pow(3) * &one_minus.pow(2), P::beta_kernel(3, 2));
    }

    #[test]
    fn ring_operations() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!(&a - &a, P::zero());
        assert_eq!(p(&[0, 3, 4]).div_by_x(), p(&[3, 4]));
        assert_eq!(a.eval(&q(1, 2)), q(3, 2));
    }

    #[test]
    fn generic_over_f64() {
        let f: Polynomial<f64> =
            p(&[0, 0, 1, -1]).map(|c| num_traits::ToPrimitive::to_f64(c).unwrap());
        assert_eq!(f.eval(&0.5), 0.125);
    }
}

//! Scalar-generic numeric kernels: determinants, dense univariate
//! polynomials, and Newton interpolation.
//!
//! The same code runs over `f64` (half-pattern volumes), `Complex64` (Weyl
//! determinantal formulas) and `BigRational` (exact symmetry-point volumes
//! and MoM interpolation); concrete aliases live at the crate root.

use crate::error::{Error, Result};
use crate::Rational;
use num_traits::{Num, One, Zero};
use std::ops::Neg;

/// Field-like scalar usable by the generic kernels. `pivot_weight` guides
/// partial pivoting: any strictly positive weight marks a usable pivot, and
/// larger weights are preferred. Exact scalars report a flat weight since any
/// nonzero pivot is as good as another.
pub trait Scalar: Num + Clone + Neg<Output = Self> {
    fn pivot_weight(&self) -> f64;
}

impl Scalar for f64 {
    fn pivot_weight(&self) -> f64 {
        self.abs()
    }
}

impl Scalar for crate::Complex {
    fn pivot_weight(&self) -> f64 {
        self.norm()
    }
}

impl Scalar for Rational {
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

/// Determinant by elimination with partial pivoting. Consumes the matrix
/// (rows of equal length). A structurally singular matrix yields zero.
pub fn determinant<T: Scalar>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut det = T::one();
    for col in 0..n {
        let pivot = (col..n).max_by(|&a, &b| {
            m[a][col].pivot_weight().partial_cmp(&m[b][col].pivot_weight()).unwrap()
        });
        let pivot = match pivot {
            Some(p) if m[p][col].pivot_weight() > 0.0 => p,
            _ => return T::zero(),
        };
        if pivot != col {
            m.swap(pivot, col);
            det = det.neg();
        }
        let diag = m[col][col].clone();
        det = det * diag.clone();
        for row in col + 1..n {
            if m[row][col].is_zero() {
                continue;
            }
            let factor = m[row][col].clone() / diag.clone();
            for c in col..n {
                let sub = factor.clone() * m[col][c].clone();
                m[row][c] = m[row][c].clone() - sub;
            }
        }
    }
    det
}

/// Dense univariate polynomial with ascending coefficients. The zero
/// polynomial stores no coefficients; otherwise the leading coefficient is
/// nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
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

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Ascending coefficients (empty for the zero polynomial).
    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the stored length).
    pub fn coefficient(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coefficient(i) + other.coefficient(i)).collect();
        Polynomial::new(coeffs)
    }

    /// Multiply by the monic linear factor `(x - root)`.
    fn mul_linear(&self, root: &T) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i + 1] = coeffs[i + 1].clone() + c.clone();
            coeffs[i] = coeffs[i].clone() - root.clone() * c.clone();
        }
        Polynomial::new(coeffs)
    }

    pub fn scale(&self, factor: &T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c.clone() * factor.clone()).collect())
    }
}

/// The unique polynomial of degree `< samples.len()` through all samples, by
/// Newton divided differences. Abscissae must be pairwise distinct.
pub fn interpolate<T: Scalar>(samples: &[(T, T)]) -> Result<Polynomial<T>> {
    if samples.is_empty() {
        return Err(Error::invalid("interpolation requires at least one sample"));
    }
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            if samples[i].0 == samples[j].0 {
                return Err(Error::invalid(format!(
                    "duplicate interpolation abscissa at positions {i} and {j}"
                )));
            }
        }
    }
    let n = samples.len();
    let mut diffs: Vec<T> = samples.iter().map(|(_, y)| y.clone()).collect();
    for order in 1..n {
        for i in (order..n).rev() {
            let dx = samples[i].0.clone() - samples[i - order].0.clone();
            diffs[i] = (diffs[i].clone() - diffs[i - 1].clone()) / dx;
        }
    }
    // Horner expansion of the Newton form.
    let mut poly = Polynomial::constant(diffs[n - 1].clone());
    for i in (0..n - 1).rev() {
        poly = poly.mul_linear(&samples[i].0).add(&Polynomial::constant(diffs[i].clone()));
    }
    Ok(poly)
}

/// Double factorial with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> crate::Count {
    let mut result = crate::Count::one();
    let mut m = n;
    while m > 1 {
        result *= crate::Count::from(m as u64);
        m -= 2;
    }
    result
}

/// Exact rational from an integer.
pub fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Exact rational `p / q`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Complex;

    #[test]
    fn determinant_f64() {
        let m = vec![vec![1.0, 2.0], vec![3.0, 4.0]];
        assert!((determinant(m) + 2.0).abs() < 1e-12);
        let singular = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(determinant(singular).abs() < 1e-12);
    }

    #[test]
    fn determinant_complex() {
        let i = Complex::new(0.0, 1.0);
        let m = vec![vec![Complex::new(1.0, 0.0), i], vec![i, Complex::new(1.0, 0.0)]];
        let d = determinant(m);
        assert!((d - Complex::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn determinant_rational_hilbert() {
        // det of the 3x3 Hilbert matrix is 1/2160.
        let m: Vec<Vec<Rational>> =
            (1..=3).map(|i| (1..=3).map(|j| ratio(1, i + j - 1)).collect()).collect();
        assert_eq!(determinant(m), ratio(1, 2160));
    }

    #[test]
    fn interpolate_examples() {
        // (0,1),(1,3),(2,6) -> (N^2 + 3N + 2)/2
        let samples: Vec<(Rational, Rational)> =
            [(0, 1), (1, 3), (2, 6)].iter().map(|&(x, y)| (rational(x), rational(y))).collect();
        let p = interpolate(&samples).unwrap();
        assert_eq!(p.coefficients(), &[rational(1), ratio(3, 2), ratio(1, 2)]);

        let c = interpolate(&[(rational(0), rational(7))]).unwrap();
        assert_eq!(c.coefficients(), &[rational(7)]);

        let lin = interpolate(&[(rational(0), rational(2)), (rational(1), rational(4))]).unwrap();
        assert_eq!(lin.coefficients(), &[rational(2), rational(2)]);
    }

    #[test]
    fn interpolate_rejects_duplicates() {
        let samples = vec![(rational(1), rational(1)), (rational(1), rational(2))];
        assert!(interpolate(&samples).is_err());
    }

    #[test]
    fn evaluate_horner() {
        let p = Polynomial::new(vec![rational(1), ratio(3, 2), ratio(1, 2)]);
        assert_eq!(p.evaluate(&rational(2)), rational(6));
        assert_eq!(Polynomial::<Rational>::zero().evaluate(&rational(5)), rational(0));
        let lin = Polynomial::new(vec![rational(2), rational(2)]);
        assert_eq!(lin.evaluate(&rational(5)), rational(12));
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(-1), 1u32.into());
        assert_eq!(double_factorial(0), 1u32.into());
        assert_eq!(double_factorial(1), 1u32.into());
        assert_eq!(double_factorial(5), 15u32.into());
        assert_eq!(double_factorial(7), 105u32.into());
        assert_eq!(double_factorial(8), 384u32.into());
    }
}

//! Exact computation of the moments of the moments of characteristic
//! polynomials of Haar-random symplectic and special orthogonal matrices.
//!
//! The value `MoM_G(N)(k, beta)` for `G ∈ {Sp(2N), SO(2N)}` equals the number
//! of constrained Gelfand-Tsetlin lattice patterns of a particular shape.
//! This crate counts those patterns exactly (arbitrary precision), recovers
//! the full polynomial in `N` by exact rational interpolation, estimates the
//! leading coefficient independently as the volume of a convex polytope, and
//! cross-validates everything against character identities, closed-form
//! symmetry-point volumes, and a Haar Monte-Carlo oracle.
//!
//! Module map:
//! - [`patterns`]: signatures, interlacing, half patterns, weight exponents.
//! - [`characters`]: symplectic/orthogonal Schur polynomials (combinatorial
//!   and determinantal) and the two classical expressions for Haar averages
//!   of products of characteristic polynomials.
//! - [`constraints`]: the k linear constraints tying weighted row sums
//!   together, in both the pattern-side and relabelled-side coordinates.
//! - [`counting`]: the exact counting core (dynamic programming over rows),
//!   the coordinate-relabelling bijections, and a brute-force oracle.
//! - [`polynomials`]: exact rational interpolation, degree certification and
//!   the golden reference table.
//! - [`volume`]: polytope specifications, Monte-Carlo volume estimation and
//!   exact symmetry-point volumes.
//! - [`rmt`]: Haar sampling of eigenphases and the stochastic end-to-end
//!   estimate of the moments of the moments.

pub mod characters;
pub mod constraints;
pub mod counting;
pub mod error;
pub mod numeric;
pub mod patterns;
pub mod polynomials;
pub mod rmt;
pub mod volume;

pub use error::{Error, Result};

use serde::{Deserialize, Serialize};

/// Exact rational scalar used wherever exactness is required.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision non-negative integer used for lattice counts.
pub type Count = num_bigint::BigUint;

/// Double-precision complex scalar used for character evaluation.
pub type Complex = num_complex::Complex64;

/// Polynomial over exact rationals; the type of every MoM result.
pub type RationalPolynomial = numeric::Polynomial<Rational>;

/// The two matrix groups covered by the computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    /// `Sp(2N)`: 2N x 2N unitary symplectic matrices.
    #[serde(rename = "sp")]
    Sp,
    /// `SO(2N)`: 2N x 2N real orthogonal matrices of determinant +1.
    #[serde(rename = "so")]
    So,
}

impl Group {
    /// Number of pattern rows for parameters `(k, beta)`:
    /// `4kb` for Sp, `4kb - 1` for SO.
    pub fn pattern_rows(self, k: usize, beta: usize) -> usize {
        match self {
            Group::Sp => 4 * k * beta,
            Group::So => 4 * k * beta - 1,
        }
    }

    /// Degree of `MoM_G(N)(k, beta)` as a polynomial in `N`.
    ///
    /// `kb(2kb+1) - k` for Sp and `kb(2kb-1) - k` for SO, except that
    /// `MoM_SO(1,1) = 2(N+1)` has degree 1.
    pub fn mom_degree(self, k: usize, beta: usize) -> usize {
        let kb = k * beta;
        match self {
            Group::Sp => kb * (2 * kb + 1) - k,
            Group::So => {
                if k == 1 && beta == 1 {
                    1
                } else {
                    kb * (2 * kb - 1) - k
                }
            }
        }
    }
}

impl std::fmt::Display for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Group::Sp => write!(f, "Sp"),
            Group::So => write!(f, "SO"),
        }
    }
}

impl std::str::FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sp" => Ok(Group::Sp),
            "so" => Ok(Group::So),
            other => Err(Error::invalid(format!("unknown group {other:?} (expected sp or so)"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_law() {
        assert_eq!(Group::Sp.mom_degree(1, 1), 2);
        assert_eq!(Group::Sp.mom_degree(1, 2), 9);
        assert_eq!(Group::Sp.mom_degree(2, 1), 8);
        assert_eq!(Group::Sp.mom_degree(1, 3), 20);
        assert_eq!(Group::Sp.mom_degree(3, 1), 18);
        assert_eq!(Group::So.mom_degree(1, 1), 1); // special case
        assert_eq!(Group::So.mom_degree(1, 2), 5);
        assert_eq!(Group::So.mom_degree(2, 1), 4);
        assert_eq!(Group::So.mom_degree(1, 3), 14);
        assert_eq!(Group::So.mom_degree(3, 1), 12);
    }
}

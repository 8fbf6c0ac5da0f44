//! Exact arithmetic: prime fields, polynomials, rational functions on the
//! curve and dense linear algebra.

pub mod field;
pub mod function;
pub mod matrix;
pub mod poly;
pub mod ratfn;

pub use field::{is_prime, Fp, MAX_MODULUS};
pub use function::CurveFunction;
pub use matrix::{Echelon, Matrix};
pub use poly::Poly;
pub use ratfn::RatFn;

/// Monic gcd of two polynomials.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    a.gcd(b)
}

/// Basis of the right null space of `m`.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Fp>> {
    m.kernel_basis()
}

/// A solution of `m x = rhs` if one exists.
pub fn solve(m: &Matrix, rhs: &[Fp]) -> Option<Vec<Fp>> {
    m.solve(rhs)
}

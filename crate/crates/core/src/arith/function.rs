//! Elements `a(x) + y*b(x)` of the function field of `y^2 = f(x)`.

use std::fmt;

use super::field::Fp;
use super::poly::Poly;
use super::ratfn::RatFn;

/// A function on the curve. Multiplication and inversion need the curve
/// polynomial `f`, so they take it as an argument.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CurveFunction {
    a: RatFn,
    b: RatFn,
}

impl CurveFunction {
    pub fn new(a: RatFn, b: RatFn) -> Self {
        CurveFunction { a, b }
    }

    pub fn from_polys(a: Poly, b: Poly) -> Self {
        CurveFunction { a: RatFn::from_poly(a), b: RatFn::from_poly(b) }
    }

    pub fn from_poly(a: Poly) -> Self {
        let m = a.modulus();
        CurveFunction { a: RatFn::from_poly(a), b: RatFn::zero(m) }
    }

    pub fn from_ratfn(a: RatFn) -> Self {
        let m = a.modulus();
        CurveFunction { a, b: RatFn::zero(m) }
    }

    pub fn zero(modulus: u64) -> Self {
        CurveFunction { a: RatFn::zero(modulus), b: RatFn::zero(modulus) }
    }

    pub fn one(modulus: u64) -> Self {
        CurveFunction::constant(Fp::one(modulus))
    }

    pub fn constant(c: Fp) -> Self {
        CurveFunction { a: RatFn::constant(c), b: RatFn::zero(c.modulus()) }
    }

    pub fn x(modulus: u64) -> Self {
        CurveFunction::from_poly(Poly::x(modulus))
    }

    pub fn y(modulus: u64) -> Self {
        CurveFunction { a: RatFn::zero(modulus), b: RatFn::one(modulus) }
    }

    pub fn a(&self) -> &RatFn {
        &self.a
    }

    pub fn b(&self) -> &RatFn {
        &self.b
    }

    pub fn modulus(&self) -> u64 {
        self.a.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.b.is_zero() && self.a.is_polynomial() && self.a.num().is_constant()
    }

    pub fn add(&self, o: &Self) -> Self {
        CurveFunction { a: self.a.add(&o.a), b: self.b.add(&o.b) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        CurveFunction { a: self.a.sub(&o.a), b: self.b.sub(&o.b) }
    }

    pub fn neg(&self) -> Self {
        CurveFunction { a: self.a.neg(), b: self.b.neg() }
    }

    pub fn scale(&self, c: Fp) -> Self {
        CurveFunction { a: self.a.scale(c), b: self.b.scale(c) }
    }

    pub fn mul_ratfn(&self, r: &RatFn) -> Self {
        CurveFunction { a: self.a.mul(r), b: self.b.mul(r) }
    }

    pub fn mul(&self, o: &Self, f: &Poly) -> Self {
        let fr = RatFn::from_poly(f.clone());
        let a = self.a.mul(&o.a).add(&self.b.mul(&o.b).mul(&fr));
        let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        CurveFunction { a, b }
    }

    /// The conjugate `a - y*b` under the hyperelliptic involution.
    pub fn conj(&self) -> Self {
        CurveFunction { a: self.a.clone(), b: self.b.neg() }
    }

    /// Norm down to k(x): `a^2 - f b^2`.
    pub fn norm(&self, f: &Poly) -> RatFn {
        let fr = RatFn::from_poly(f.clone());
        self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&fr))
    }

    pub fn inv(&self, f: &Poly) -> Option<Self> {
        let n = self.norm(f).inv()?;
        Some(self.conj().mul_ratfn(&n))
    }

    pub fn div(&self, o: &Self, f: &Poly) -> Option<Self> {
        Some(self.mul(&o.inv(f)?, f))
    }

    pub fn pow(&self, e: u32, f: &Poly) -> Self {
        let mut acc = CurveFunction::one(self.modulus());
        for _ in 0..e {
            acc = acc.mul(self, f);
        }
        acc
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64, f: &Poly) -> Option<Self> {
        let base = if e < 0 { self.inv(f)? } else { self.clone() };
        Some(base.pow(e.unsigned_abs() as u32, f))
    }

    /// Polynomial parts `(A, B)` when both components are polynomials in `x`.
    pub fn as_polys(&self) -> Option<(&Poly, &Poly)> {
        Some((self.a.as_poly()?, self.b.as_poly()?))
    }

    /// Monic lcm of the two denominators.
    pub fn common_denominator(&self) -> Poly {
        let (da, db) = (self.a.den(), self.b.den());
        let g = da.gcd(db);
        da.mul(&db.div_exact(&g).unwrap()).monic()
    }
}

impl fmt::Debug for CurveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CurveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "y*({})", self.b),
            (false, false) => write!(f, "{} + y*({})", self.a, self.b),
        }
    }
}

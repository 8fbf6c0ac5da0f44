//! Rational functions in one variable over F_p.

use std::fmt;

use super::field::Fp;
use super::poly::Poly;

/// `num / den` with `den` monic and `gcd(num, den) = 1`; zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    /// Builds the canonical form. Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let m = num.modulus();
        if num.is_zero() {
            return RatFn { num, den: Poly::one(m) };
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).unwrap();
        let den = den.div_exact(&g).unwrap();
        let lc = den.leading().unwrap().inv().unwrap();
        RatFn { num: num.scale(lc), den: den.scale(lc) }
    }

    pub fn from_poly(p: Poly) -> Self {
        let m = p.modulus();
        RatFn { num: p, den: Poly::one(m) }
    }

    pub fn zero(modulus: u64) -> Self {
        RatFn::from_poly(Poly::zero(modulus))
    }

    pub fn one(modulus: u64) -> Self {
        RatFn::from_poly(Poly::one(modulus))
    }

    pub fn constant(c: Fp) -> Self {
        RatFn::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn modulus(&self) -> u64 {
        self.num.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.num.deg_i64() - self.den.deg_i64())
    }

    /// Order of vanishing at `a` (negative for poles); `None` for zero.
    pub fn order_at(&self, a: Fp) -> Option<i64> {
        let n = self.num.order_at(a)? as i64;
        Some(n - self.den.order_at(a).unwrap() as i64)
    }

    /// Value at `a`, `None` at a pole.
    pub fn eval(&self, a: Fp) -> Option<Fp> {
        let d = self.den.eval(a);
        d.inv().map(|di| self.num.eval(a) * di)
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn::new(self.num.add(&o.num), self.den.clone());
        }
        RatFn::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero(self.modulus());
        }
        RatFn::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFn {
        RatFn::new(self.num.mul(p), self.den.clone())
    }

    pub fn scale(&self, c: Fp) -> RatFn {
        if c.is_zero() {
            return RatFn::zero(self.modulus());
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<RatFn> {
        (!self.is_zero()).then(|| RatFn::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFn) -> Option<RatFn> {
        o.inv().map(|i| self.mul(&i))
    }

    /// Integer power (negative exponents invert).
    pub fn powi(&self, e: i64) -> Option<RatFn> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Some(RatFn::new(base.num.pow(k), base.den.pow(k)))
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

//! Degree-0 divisor classes in Mumford representation with Cantor's
//! composition and reduction.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Fp, Poly};
use crate::curve::{Divisor, HyperellipticCurve, Place};
use crate::error::{Error, Result};

/// The class of `D(u, v) - (deg u)·∞`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ReducedDivisor {
    u: Poly,
    v: Poly,
}

impl ReducedDivisor {
    /// Validates `u` monic, `deg u <= g`, `deg v < deg u` and `u | v^2 - f`.
    pub fn new(c: &HyperellipticCurve, u: Poly, v: Poly) -> Result<Self> {
        let ok = u.is_monic()
            && u.deg_i64() <= c.g()
            && v.deg_i64() < u.deg_i64()
            && v.mul(&v).sub(c.f()).rem(&u).is_zero();
        if !ok {
            return Err(Error::NotASection(format!("({}, {}) is not a reduced Mumford pair", u, v)));
        }
        Ok(ReducedDivisor { u, v })
    }

    pub fn identity(c: &HyperellipticCurve) -> Self {
        ReducedDivisor { u: Poly::one(c.p()), v: Poly::zero(c.p()) }
    }

    /// The class of `pl - ∞`.
    pub fn from_place(c: &HyperellipticCurve, pl: &Place) -> Self {
        match c.coords(pl) {
            None => ReducedDivisor::identity(c),
            Some((x0, y0)) => ReducedDivisor { u: Poly::linear_root(x0), v: Poly::constant(y0) },
        }
    }

    /// The class of `D - (deg D)·∞`.
    pub fn from_divisor(c: &HyperellipticCurve, d: &Divisor) -> Self {
        let mut acc = ReducedDivisor::identity(c);
        for (pl, &m) in d.finite_support() {
            let pt = ReducedDivisor::from_place(c, pl);
            acc = cantor_add(c, &acc, &pt.mul(c, m));
        }
        acc
    }

    pub fn u(&self) -> &Poly {
        &self.u
    }

    pub fn v(&self) -> &Poly {
        &self.v
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_one()
    }

    pub fn negate(&self) -> Self {
        ReducedDivisor { u: self.u.clone(), v: self.v.neg() }
    }

    /// `k · self` by double-and-add.
    pub fn mul(&self, c: &HyperellipticCurve, k: i64) -> Self {
        let mut base = if k < 0 { self.negate() } else { self.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = ReducedDivisor::identity(c);
        while n > 0 {
            if n & 1 == 1 {
                acc = cantor_add(c, &acc, &base);
            }
            base = cantor_add(c, &base, &base);
            n >>= 1;
        }
        acc
    }
}

impl fmt::Debug for ReducedDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.u, self.v)
    }
}

pub fn cantor_add(c: &HyperellipticCurve, a: &ReducedDivisor, b: &ReducedDivisor) -> ReducedDivisor {
    let f = c.f();
    let (d1, e1, e2) = a.u.xgcd(&b.u);
    let (d, c1, c2) = d1.xgcd(&a.v.add(&b.v));
    let s1 = c1.mul(&e1);
    let s2 = c1.mul(&e2);
    let s3 = c2;
    let mut u = a.u.mul(&b.u).div_exact(&d.mul(&d)).unwrap();
    let num = s1
        .mul(&a.u)
        .mul(&b.v)
        .add(&s2.mul(&b.u).mul(&a.v))
        .add(&s3.mul(&a.v.mul(&b.v).add(f)));
    let mut v = num.div_exact(&d).unwrap().rem(&u);
    while u.deg_i64() > c.g() {
        let nu = f.sub(&v.mul(&v)).div_exact(&u).unwrap().monic();
        v = v.neg().rem(&nu);
        u = nu;
    }
    let u = u.monic();
    let v = v.rem(&u);
    ReducedDivisor { u, v }
}

/// A class `Q_1 + ... + Q_g - g·∞` for random rational points `Q_i`,
/// resampled until the reduced representative has rational support.
pub fn random_jac_point(c: &HyperellipticCurve, seed: u64) -> ReducedDivisor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_jac_point_with(c, &mut rng)
}

pub fn random_jac_point_with<R: Rng + ?Sized>(c: &HyperellipticCurve, rng: &mut R) -> ReducedDivisor {
    loop {
        let mut acc = ReducedDivisor::identity(c);
        for _ in 0..c.genus() {
            let pl = c.random_point(rng);
            acc = cantor_add(c, &acc, &ReducedDivisor::from_place(c, &pl));
        }
        if acc.u.splits() {
            return acc;
        }
    }
}

/// `D_ξ`: the finite points of `u` (with `y = v(x)`) minus `(deg u)·∞`.
pub fn to_divisor(_c: &HyperellipticCurve, xi: &ReducedDivisor) -> Result<Divisor> {
    if !xi.u.splits() {
        return Err(Error::IrrationalSupport);
    }
    let mut d = Divisor::infinity(-xi.u.deg_i64().max(0));
    for (x0, m) in xi.u.rational_roots() {
        let y0: Fp = xi.v.eval(x0);
        d.add_place(Place::finite(x0, y0), m as i64);
    }
    Ok(d)
}

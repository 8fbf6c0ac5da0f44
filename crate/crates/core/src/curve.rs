//! The odd-degree hyperelliptic model `y^2 = f(x)`, its places, divisors,
//! valuations and holomorphic differentials.
//!
//! There is a single place at infinity, used as the base point. The
//! reference differential is `dx/y`, whose divisor is `(2g-2)·∞`, so a
//! section of a twist by the canonical bundle is stored as a function
//! multiplying `dx/y`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, CurveFunction, Fp, Poly, RatFn, MAX_MODULUS};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct HyperellipticCurve {
    p: u64,
    f: Poly,
    genus: usize,
    canonical: Divisor,
}

/// A rational place: a finite point `(x, y)` or the place at infinity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Place {
    Finite { x: u64, y: u64 },
    Infinity,
}

impl Place {
    pub fn finite(x: Fp, y: Fp) -> Self {
        Place::Finite { x: x.value(), y: y.value() }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite { x, y } => write!(f, "({}, {})", x, y),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// A formal sum of rational places with non-zero integer multiplicities.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    support: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Place, i64)>>(pairs: I) -> Self {
        let mut d = Divisor::zero();
        for (pl, m) in pairs {
            d.add_place(pl, m);
        }
        d
    }

    pub fn place(pl: Place, m: i64) -> Self {
        Divisor::from_pairs([(pl, m)])
    }

    pub fn infinity(m: i64) -> Self {
        Divisor::place(Place::Infinity, m)
    }

    pub fn add_place(&mut self, pl: Place, m: i64) {
        let e = self.support.entry(pl).or_insert(0);
        *e += m;
        if *e == 0 {
            self.support.remove(&pl);
        }
    }

    pub fn mult(&self, pl: &Place) -> i64 {
        self.support.get(pl).copied().unwrap_or(0)
    }

    pub fn infinity_mult(&self) -> i64 {
        self.mult(&Place::Infinity)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, &i64)> {
        self.support.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.support.keys()
    }

    pub fn finite_support(&self) -> impl Iterator<Item = (&Place, &i64)> {
        self.support.iter().filter(|(pl, _)| !pl.is_infinity())
    }

    pub fn degree(&self) -> i64 {
        self.support.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.support.values().all(|&m| m >= 0)
    }

    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (&pl, &m) in &o.support {
            d.add_place(pl, m);
        }
        d
    }

    pub fn sub(&self, o: &Divisor) -> Divisor {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Divisor {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Divisor {
        if k == 0 {
            return Divisor::zero();
        }
        Divisor { support: self.support.iter().map(|(&pl, &m)| (pl, m * k)).collect() }
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.support.iter().map(|(pl, m)| format!("{}*{}", m, pl)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A holomorphic differential `h(x) dx/y` with `deg h <= g-1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Differential {
    h: Poly,
}

impl Differential {
    pub fn new(h: Poly) -> Self {
        Differential { h }
    }

    pub fn zero(modulus: u64) -> Self {
        Differential { h: Poly::zero(modulus) }
    }

    /// The reference differential `dx/y`.
    pub fn reference(modulus: u64) -> Self {
        Differential { h: Poly::one(modulus) }
    }

    /// The ratio of this differential to `dx/y`.
    pub fn coefficient(&self) -> &Poly {
        &self.h
    }

    pub fn ratio(&self) -> CurveFunction {
        CurveFunction::from_poly(self.h.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_zero()
    }

    pub fn add(&self, o: &Differential) -> Differential {
        Differential { h: self.h.add(&o.h) }
    }

    pub fn neg(&self) -> Differential {
        Differential { h: self.h.neg() }
    }

    pub fn scale(&self, c: Fp) -> Differential {
        Differential { h: self.h.scale(c) }
    }

    /// Coordinates in the basis `x^i dx/y`, padded to length `g`.
    pub fn coordinates(&self, genus: usize) -> Vec<Fp> {
        (0..genus).map(|i| self.h.coeff(i)).collect()
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn normalized(&self) -> Differential {
        Differential { h: self.h.monic() }
    }
}

impl fmt::Debug for Differential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) dx/y", self.h)
    }
}

impl HyperellipticCurve {
    pub fn new(p: u64, f: Poly) -> Result<Self> {
        if p == 2 || !is_prime(p) || p > MAX_MODULUS {
            return Err(Error::BadCharacteristic(p));
        }
        if f.modulus() != p {
            return Err(Error::Parse(format!("polynomial over F_{} used with p = {}", f.modulus(), p)));
        }
        let d = f.deg_i64();
        if d < 5 || d % 2 == 0 {
            return Err(Error::BadDegree(d));
        }
        if !f.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let genus = ((d - 1) / 2) as usize;
        let canonical = Divisor::infinity(2 * genus as i64 - 2);
        Ok(HyperellipticCurve { p, f, genus, canonical })
    }

    pub fn from_coeffs(p: u64, coeffs: &[i64]) -> Result<Self> {
        if p == 2 || !is_prime(p) || p > MAX_MODULUS {
            return Err(Error::BadCharacteristic(p));
        }
        HyperellipticCurve::new(p, Poly::from_i64(coeffs, p))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn g(&self) -> i64 {
        self.genus as i64
    }

    /// `K = (2g-2)·∞`, the divisor of `dx/y`.
    pub fn canonical_divisor(&self) -> &Divisor {
        &self.canonical
    }

    pub fn fp(&self, v: i64) -> Fp {
        Fp::new(v, self.p)
    }

    pub fn id(&self) -> String {
        let coeffs: Vec<String> = self.f.coeffs().iter().map(|c| c.to_string()).collect();
        format!("p={};f=[{}]", self.p, coeffs.join(","))
    }

    pub fn contains(&self, pl: &Place) -> bool {
        match *pl {
            Place::Infinity => true,
            Place::Finite { x, y } => {
                x < self.p && y < self.p && {
                    let (x, y) = (Fp::from_u64(x, self.p), Fp::from_u64(y, self.p));
                    y * y == self.f.eval(x)
                }
            }
        }
    }

    pub fn point(&self, x: i64, y: i64) -> Result<Place> {
        let pl = Place::finite(self.fp(x), self.fp(y));
        if !self.contains(&pl) {
            return Err(Error::NotOnCurve(self.fp(x).value(), self.fp(y).value()));
        }
        Ok(pl)
    }

    pub fn is_weierstrass_x(&self, x: Fp) -> bool {
        self.f.eval(x).is_zero()
    }

    pub fn conjugate(&self, pl: &Place) -> Place {
        match *pl {
            Place::Infinity => Place::Infinity,
            Place::Finite { x, y } => Place::finite(Fp::from_u64(x, self.p), -Fp::from_u64(y, self.p)),
        }
    }

    /// Rational places over `x = x0`; `None` when they are not rational.
    pub fn places_over(&self, x0: Fp) -> Option<Vec<Place>> {
        let v = self.f.eval(x0);
        if v.is_zero() {
            return Some(vec![Place::finite(x0, v)]);
        }
        let r = v.sqrt()?;
        Some(vec![Place::finite(x0, r), Place::finite(x0, -r)])
    }

    /// All finite rational points, ordered by `(x, y)`.
    pub fn rational_points(&self) -> Vec<Place> {
        let mut pts: Vec<Place> =
            (0..self.p).filter_map(|x| self.places_over(Fp::from_u64(x, self.p))).flatten().collect();
        pts.sort();
        pts
    }

    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Place {
        loop {
            let x = Fp::from_u64(rng.gen_range(0..self.p), self.p);
            if let Some(pls) = self.places_over(x) {
                return pls[rng.gen_range(0..pls.len())];
            }
        }
    }

    pub fn coords(&self, pl: &Place) -> Option<(Fp, Fp)> {
        match *pl {
            Place::Infinity => None,
            Place::Finite { x, y } => Some((Fp::from_u64(x, self.p), Fp::from_u64(y, self.p))),
        }
    }

    /// A uniformizer at infinity, `x^g / y`.
    pub fn infinity_uniformizer(&self) -> CurveFunction {
        let m = self.p;
        let xg = CurveFunction::from_poly(Poly::monomial(Fp::one(m), self.genus));
        xg.div(&CurveFunction::y(m), &self.f).unwrap()
    }

    pub fn x_fn(&self) -> CurveFunction {
        CurveFunction::x(self.p)
    }

    pub fn y_fn(&self) -> CurveFunction {
        CurveFunction::y(self.p)
    }

    pub fn constant(&self, v: i64) -> CurveFunction {
        CurveFunction::constant(self.fp(v))
    }

    pub fn poly(&self, coeffs: &[i64]) -> Poly {
        Poly::from_i64(coeffs, self.p)
    }

    pub fn poly_fn(&self, coeffs: &[i64]) -> CurveFunction {
        CurveFunction::from_poly(self.poly(coeffs))
    }

    pub fn mul(&self, a: &CurveFunction, b: &CurveFunction) -> CurveFunction {
        a.mul(b, &self.f)
    }

    pub fn inv(&self, a: &CurveFunction) -> Option<CurveFunction> {
        a.inv(&self.f)
    }

    pub fn div(&self, a: &CurveFunction, b: &CurveFunction) -> Option<CurveFunction> {
        a.div(b, &self.f)
    }

    /// Order of `fun` at `pl`, negative for poles.
    pub fn valuation(&self, fun: &CurveFunction, pl: &Place) -> Result<i64> {
        if fun.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let g = self.g();
        match self.coords(pl) {
            None => {
                let va = fun.a().degree().map(|d| -2 * d);
                let vb = fun.b().degree().map(|d| -(2 * g + 1) - 2 * d);
                Ok(min_opt(va, vb))
            }
            Some((x0, y0)) if y0.is_zero() => {
                let va = fun.a().order_at(x0).map(|o| 2 * o);
                let vb = fun.b().order_at(x0).map(|o| 1 + 2 * o);
                Ok(min_opt(va, vb))
            }
            Some((x0, y0)) => {
                let m = min_opt(fun.a().order_at(x0), fun.b().order_at(x0));
                let shifted = shift_by(fun, x0, -m);
                let a0 = shifted.a().eval(x0).unwrap();
                let b0 = shifted.b().eval(x0).unwrap();
                if !(a0 + y0 * b0).is_zero() {
                    return Ok(m);
                }
                let extra = shifted.norm(&self.f).order_at(x0).unwrap();
                Ok(m + extra)
            }
        }
    }

    /// Value of `fun` at `pl`; errors at poles.
    pub fn evaluate(&self, fun: &CurveFunction, pl: &Place) -> Result<Fp> {
        let zero = Fp::zero(self.p);
        if fun.is_zero() {
            return Ok(zero);
        }
        let v = self.valuation(fun, pl)?;
        if v < 0 {
            return Err(Error::PoleAtPlace(pl.to_string()));
        }
        if v > 0 {
            return Ok(zero);
        }
        match self.coords(pl) {
            // the y-part has odd (hence positive) valuation, so only `a` contributes
            None => {
                let a = fun.a();
                if a.degree() == Some(0) {
                    Ok(a.num().leading().unwrap() / a.den().leading().unwrap())
                } else {
                    Ok(zero)
                }
            }
            Some((x0, y0)) if y0.is_zero() => Ok(fun.a().eval(x0).unwrap_or(zero)),
            Some((x0, y0)) => {
                let m = min_opt(fun.a().order_at(x0), fun.b().order_at(x0));
                if m >= 0 {
                    let a = fun.a().eval(x0).unwrap();
                    let b = fun.b().eval(x0).unwrap();
                    return Ok(a + y0 * b);
                }
                // F = N(F') / ((x-x0)^{-m} conj(F')) with F' = F (x-x0)^{-m}
                let shifted = shift_by(fun, x0, -m);
                let conj_val = shifted.a().eval(x0).unwrap() - y0 * shifted.b().eval(x0).unwrap();
                let lin = RatFn::from_poly(Poly::linear_root(x0));
                let q = shifted.norm(&self.f).mul(&lin.powi(m).unwrap());
                Ok(q.eval(x0).unwrap() / conj_val)
            }
        }
    }

    /// Divisor of a non-zero function whose zeros and poles are all rational.
    pub fn principal_divisor(&self, fun: &CurveFunction) -> Result<Divisor> {
        if fun.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let n = fun.norm(&self.f);
        let cand = n.num().mul(n.den()).mul(fun.a().den()).mul(fun.b().den());
        if !cand.splits() {
            return Err(Error::IrrationalSupport);
        }
        let mut div = Divisor::zero();
        for (x0, _) in cand.rational_roots() {
            match self.places_over(x0) {
                Some(pls) => {
                    for pl in pls {
                        div.add_place(pl, self.valuation(fun, &pl)?);
                    }
                }
                None => {
                    if n.order_at(x0) != Some(0) {
                        return Err(Error::IrrationalSupport);
                    }
                }
            }
        }
        div.add_place(Place::Infinity, self.valuation(fun, &Place::Infinity)?);
        Ok(div)
    }

    /// The basis `x^i dx/y`, `i = 0..g-1`, of holomorphic differentials.
    pub fn canonical_basis(&self) -> Vec<Differential> {
        (0..self.genus).map(|i| Differential::new(Poly::monomial(Fp::one(self.p), i))).collect()
    }

    /// `div(h dx/y) = div(h) + (2g-2)·∞`.
    pub fn differential_divisor(&self, w: &Differential) -> Result<Divisor> {
        if w.is_zero() {
            return Err(Error::ZeroDifferential);
        }
        Ok(self.principal_divisor(&w.ratio())?.add(&self.canonical))
    }

    pub fn check_differential(&self, w: &Differential) -> Result<()> {
        if w.coefficient().deg_i64() > self.g() - 1 || w.coefficient().modulus() != self.p {
            return Err(Error::NotASection(format!("{:?} is not a holomorphic differential", w)));
        }
        Ok(())
    }

    /// Power series of `y` in `t = x - x0` at a non-Weierstrass point, `prec` terms.
    pub fn local_y_series(&self, x0: Fp, y0: Fp, prec: usize) -> Vec<Fp> {
        debug_assert!(!y0.is_zero());
        let phi = self.f.taylor_shift(x0);
        let mut c = vec![Fp::zero(self.p); prec];
        if prec == 0 {
            return c;
        }
        c[0] = y0;
        let inv_two_y0 = (y0 + y0).inv().unwrap();
        for k in 1..prec {
            let mut s = Fp::zero(self.p);
            for i in 1..k {
                s += c[i] * c[k - i];
            }
            c[k] = (phi.coeff(k) - s) * inv_two_y0;
        }
        c
    }
}

impl fmt::Debug for HyperellipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = {} over F_{}", self.f, self.p)
    }
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> i64 {
    match (a, b) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => unreachable!("valuation of the zero function"),
    }
}

/// `fun * (x - x0)^k`.
fn shift_by(fun: &CurveFunction, x0: Fp, k: i64) -> CurveFunction {
    let lin = RatFn::from_poly(Poly::linear_root(x0));
    fun.mul_ratfn(&lin.powi(k).unwrap())
}

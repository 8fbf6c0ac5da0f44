//! Riemann-Roch spaces `L(D)`, `h^0`/`h^1`, and multiplication maps.
//!
//! Every element of `L(D)` is written `(A(x) + y B(x)) / d(x)` with a fixed
//! denominator `d` read off the finite part of `D`. Degree bounds on `A`
//! and `B` come from the multiplicity at infinity; the finite multiplicities
//! turn into vanishing conditions on Taylor coefficients at each place over
//! the support, which is a linear system.

use std::collections::BTreeMap;

use crate::arith::{CurveFunction, Fp, Matrix, Poly, RatFn};
use crate::curve::{Divisor, HyperellipticCurve};
use crate::error::{Error, Result};

/// A basis of `L(D)` sorted by increasing pole order at infinity.
#[derive(Clone, Debug)]
pub struct RRBasis {
    pub divisor: Divisor,
    pub basis: Vec<CurveFunction>,
    genus: i64,
    den: Poly,
    deg_a: Option<usize>,
    deg_b: Option<usize>,
    // rows in reduced echelon form over the ansatz columns
    rows: Vec<Vec<Fp>>,
    pivots: Vec<usize>,
}

impl RRBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of `fun` in the basis, or `NotASection` if `fun ∉ L(D)`.
    pub fn coordinates(&self, fun: &CurveFunction) -> Result<Vec<Fp>> {
        let m = self.den.modulus();
        let not_in = || Error::NotASection(format!("{} is not in L({})", fun, self.divisor));
        let dr = RatFn::from_poly(self.den.clone());
        let a = fun.a().mul(&dr);
        let b = fun.b().mul(&dr);
        let (Some(pa), Some(pb)) = (a.as_poly(), b.as_poly()) else {
            return Err(not_in());
        };
        let na = self.deg_a.map_or(0, |d| d + 1);
        let nb = self.deg_b.map_or(0, |d| d + 1);
        if pa.deg_i64() >= na as i64 || pb.deg_i64() >= nb as i64 {
            return Err(not_in());
        }
        let cols = column_order(self.genus, na, nb);
        let vec: Vec<Fp> = cols
            .iter()
            .map(|col| match *col {
                Column::A(i) => pa.coeff(i),
                Column::B(j) => pb.coeff(j),
            })
            .collect();
        let coords: Vec<Fp> = self.pivots.iter().map(|&pc| vec[pc]).collect();
        let mut back = vec![Fp::zero(m); vec.len()];
        for (row, &c) in self.rows.iter().zip(&coords) {
            for (k, &r) in row.iter().enumerate() {
                back[k] += c * r;
            }
        }
        if back != vec {
            return Err(not_in());
        }
        Ok(coords)
    }

    pub fn contains(&self, fun: &CurveFunction) -> bool {
        fun.is_zero() || self.coordinates(fun).is_ok()
    }

    /// `Σ coords[k] · basis[k]`.
    pub fn combination(&self, coords: &[Fp]) -> CurveFunction {
        assert_eq!(coords.len(), self.dim(), "coordinate vector length mismatch");
        let m = self.den.modulus();
        let mut acc = CurveFunction::zero(m);
        for (f, &c) in self.basis.iter().zip(coords) {
            if !c.is_zero() {
                acc = acc.add(&f.scale(c));
            }
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Column {
    A(usize),
    B(usize),
}

/// Ansatz columns sorted by decreasing pole order at infinity.
fn column_order(g: i64, na: usize, nb: usize) -> Vec<Column> {
    // x^i has pole 2i, y x^j has pole 2g+1+2j
    let mut cols: Vec<(i64, Column)> = (0..na)
        .map(|i| (2 * i as i64, Column::A(i)))
        .chain((0..nb).map(|j| (2 * g + 1 + 2 * j as i64, Column::B(j))))
        .collect();
    cols.sort_by(|a, b| b.0.cmp(&a.0));
    cols.into_iter().map(|c| c.1).collect()
}

/// Truncated Taylor coefficients of `x^k` at `x0`, `k = 0..count`, each of length `prec`.
fn monomial_series(x0: Fp, count: usize, prec: usize) -> Vec<Vec<Fp>> {
    let m = x0.modulus();
    let mut out = Vec::with_capacity(count);
    let mut cur = vec![Fp::zero(m); prec];
    if prec > 0 {
        cur[0] = Fp::one(m);
    }
    for _ in 0..count {
        out.push(cur.clone());
        // multiply by x0 + t
        let mut next = vec![Fp::zero(m); prec];
        for k in 0..prec {
            next[k] += x0 * cur[k];
            if k + 1 < prec {
                next[k + 1] += cur[k];
            }
        }
        cur = next;
    }
    out
}

fn series_mul(a: &[Fp], b: &[Fp], prec: usize) -> Vec<Fp> {
    let m = a.first().or(b.first()).map_or(2, |c| c.modulus());
    let mut out = vec![Fp::zero(m); prec];
    for i in 0..prec.min(a.len()) {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..(prec - i).min(b.len()) {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

fn ceil_div2(n: i64) -> i64 {
    n.div_euclid(2) + n.rem_euclid(2)
}

fn floor_div2(n: i64) -> i64 {
    n.div_euclid(2)
}

pub fn rr_basis(c: &HyperellipticCurve, d: &Divisor) -> Result<RRBasis> {
    let p = c.p();
    let g = c.g();
    for pl in d.support() {
        if !c.contains(pl) {
            let (x, y) = match *pl {
                crate::curve::Place::Finite { x, y } => (x, y),
                crate::curve::Place::Infinity => unreachable!(),
            };
            return Err(Error::NotOnCurve(x, y));
        }
    }

    // group finite multiplicities by x-coordinate
    let mut by_x: BTreeMap<u64, Vec<(Fp, i64)>> = BTreeMap::new();
    for (pl, &mult) in d.finite_support() {
        let (x0, y0) = c.coords(pl).unwrap();
        by_x.entry(x0.value()).or_default().push((y0, mult));
    }

    struct Local {
        x0: Fp,
        weierstrass: bool,
        // (y0, required order of A + yB at the place)
        reqs: Vec<(Fp, i64)>,
    }
    let mut locals = Vec::new();
    let mut den = Poly::one(p);
    for (&xv, entries) in &by_x {
        let x0 = Fp::from_u64(xv, p);
        if c.is_weierstrass_x(x0) {
            let mult = entries[0].1;
            let e = ceil_div2(mult.max(0));
            locals.push(Local { x0, weierstrass: true, reqs: vec![(Fp::zero(p), 2 * e - mult)] });
            den = den.mul(&Poly::linear_root(x0).pow(e as u32));
        } else {
            let y0 = c.f().eval(x0).sqrt().unwrap();
            let mult_of = |y: Fp| entries.iter().find(|en| en.0 == y).map_or(0, |en| en.1);
            let (m1, m2) = (mult_of(y0), mult_of(-y0));
            let e = m1.max(m2).max(0);
            locals.push(Local { x0, weierstrass: false, reqs: vec![(y0, e - m1), (-y0, e - m2)] });
            den = den.mul(&Poly::linear_root(x0).pow(e as u32));
        }
    }

    let big_m = d.infinity_mult() + 2 * den.deg_i64();
    let ba = floor_div2(big_m);
    let bb = floor_div2(big_m - 2 * g - 1);
    let deg_a = (ba >= 0).then_some(ba as usize);
    let deg_b = (bb >= 0).then_some(bb as usize);
    let na = deg_a.map_or(0, |v| v + 1);
    let nb = deg_b.map_or(0, |v| v + 1);
    let cols = column_order(g, na, nb);
    let ncols = cols.len();

    let mut constraints: Vec<Vec<Fp>> = Vec::new();
    for loc in &locals {
        if loc.weierstrass {
            let req = loc.reqs[0].1;
            let ka = ceil_div2(req).max(0) as usize;
            let kb = ceil_div2(req - 1).max(0) as usize;
            let prec = ka.max(kb);
            let ser = monomial_series(loc.x0, na.max(nb), prec);
            for k in 0..ka {
                constraints.push(
                    cols.iter()
                        .map(|col| match *col {
                            Column::A(i) => ser[i][k],
                            Column::B(_) => Fp::zero(p),
                        })
                        .collect(),
                );
            }
            for k in 0..kb {
                constraints.push(
                    cols.iter()
                        .map(|col| match *col {
                            Column::A(_) => Fp::zero(p),
                            Column::B(j) => ser[j][k],
                        })
                        .collect(),
                );
            }
        } else {
            let prec = loc.reqs.iter().map(|r| r.1.max(0) as usize).max().unwrap_or(0);
            if prec == 0 {
                continue;
            }
            let ser = monomial_series(loc.x0, na.max(nb), prec);
            for &(y0, req) in &loc.reqs {
                let req = req.max(0) as usize;
                if req == 0 {
                    continue;
                }
                let yser = c.local_y_series(loc.x0, y0, req);
                let yb: Vec<Vec<Fp>> = (0..nb).map(|j| series_mul(&yser, &ser[j], req)).collect();
                for k in 0..req {
                    constraints.push(
                        cols.iter()
                            .map(|col| match *col {
                                Column::A(i) => ser[i][k],
                                Column::B(j) => yb[j][k],
                            })
                            .collect(),
                    );
                }
            }
        }
    }

    let kernel = if ncols == 0 {
        Vec::new()
    } else if constraints.is_empty() {
        (0..ncols)
            .map(|k| {
                let mut v = vec![Fp::zero(p); ncols];
                v[k] = Fp::one(p);
                v
            })
            .collect()
    } else {
        Matrix::from_rows(&constraints, ncols, p).kernel_basis()
    };

    let (rows, pivots) = if kernel.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        let ech = Matrix::from_rows(&kernel, ncols, p).rref();
        let rows: Vec<Vec<Fp>> = (0..ech.pivots.len()).map(|r| ech.matrix.row(r).to_vec()).collect();
        (rows, ech.pivots)
    };

    // pivots are the leading (highest pole) columns; reverse to get ascending pole order
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.reverse();
    let rows: Vec<Vec<Fp>> = order.iter().map(|&k| rows[k].clone()).collect();
    let pivots: Vec<usize> = order.iter().map(|&k| pivots[k]).collect();

    let basis = rows
        .iter()
        .map(|row| {
            let mut ca = vec![Fp::zero(p); na];
            let mut cb = vec![Fp::zero(p); nb];
            for (col, &v) in cols.iter().zip(row) {
                match *col {
                    Column::A(i) => ca[i] = v,
                    Column::B(j) => cb[j] = v,
                }
            }
            let a = RatFn::new(Poly::new(ca, p), den.clone());
            let b = RatFn::new(Poly::new(cb, p), den.clone());
            CurveFunction::new(a, b)
        })
        .collect();

    Ok(RRBasis { divisor: d.clone(), basis, genus: g, den, deg_a, deg_b, rows, pivots })
}

pub fn h0(c: &HyperellipticCurve, d: &Divisor) -> Result<usize> {
    Ok(rr_basis(c, d)?.dim())
}

/// `h^1(D) = h^0(K - D)` by Serre duality.
pub fn h1(c: &HyperellipticCurve, d: &Divisor) -> Result<usize> {
    h0(c, &c.canonical_divisor().sub(d))
}

/// Matrix of `L(from) -> L(to)`, `F ↦ s·F`, after checking `s ∈ L(to - from)`.
pub fn mult_map(c: &HyperellipticCurve, s: &CurveFunction, from: &Divisor, to: &Divisor) -> Result<Matrix> {
    let sec = rr_basis(c, &to.sub(from))?;
    if !sec.contains(s) {
        return Err(Error::NotASection(format!("{} is not a section of O({})", s, to.sub(from))));
    }
    mult_map_between(c, s, &rr_basis(c, from)?, &rr_basis(c, to)?)
}

/// Matrix of multiplication by `s` between precomputed bases.
pub fn mult_map_between(c: &HyperellipticCurve, s: &CurveFunction, from: &RRBasis, to: &RRBasis) -> Result<Matrix> {
    let mut m = Matrix::zeros(to.dim(), from.dim(), c.p());
    if s.is_zero() {
        return Ok(m);
    }
    for (k, b) in from.basis.iter().enumerate() {
        let img = c.mul(s, b);
        let coords = to.coordinates(&img)?;
        for (i, v) in coords.into_iter().enumerate() {
            m[(i, k)] = v;
        }
    }
    Ok(m)
}

/// Pole order at infinity of a non-zero function (`-v_∞`).
pub fn pole_order_at_infinity(c: &HyperellipticCurve, fun: &CurveFunction) -> Result<i64> {
    Ok(-c.valuation(fun, &crate::curve::Place::Infinity)?)
}

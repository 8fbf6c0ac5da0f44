//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into `rrspace`; the Riemann-Roch oracle uses its own
//! ansatz bounds, local expansions (Newton iteration for `y` at ordinary
//! points, the parameter `y` at Weierstrass points) and elimination.

#![allow(dead_code)]

use higgs_tft::arith::{Fp, Poly};
use higgs_tft::curve::{Divisor, HyperellipticCurve, Place};
use higgs_tft::jacobian::ReducedDivisor;
use rand::Rng;

pub fn curve(p: u64, f: &[i64]) -> HyperellipticCurve {
    HyperellipticCurve::from_coeffs(p, f).unwrap()
}

/// `y^2 = x^5 - x`.
pub fn genus2(p: u64) -> HyperellipticCurve {
    curve(p, &[0, -1, 0, 0, 0, 1])
}

/// `y^2 = x^7 + 3x + 1` over F_11 (genus 3).
pub fn genus3() -> HyperellipticCurve {
    curve(11, &[1, 3, 0, 0, 0, 0, 0, 1])
}

/// Rank of a matrix over F_p by row reduction on raw residues.
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_multiple_of(p)) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][col], p - 2, p);
        for v in m[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let f = m[r][col];
                for c in 0..ncols {
                    m[r][c] = (m[r][c] + p * p - f * m[rank][c] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

type Series = Vec<Fp>;

fn s_zero(p: u64, n: usize) -> Series {
    vec![Fp::zero(p); n]
}

fn s_mul(a: &Series, b: &Series, n: usize) -> Series {
    let p = a[0].modulus();
    let mut out = s_zero(p, n);
    for i in 0..n.min(a.len()) {
        for j in 0..(n - i).min(b.len()) {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

/// Inverse of a series with invertible constant term.
fn s_inv(a: &Series, n: usize) -> Series {
    let p = a[0].modulus();
    let mut out = s_zero(p, n);
    let c0 = a[0].inv().unwrap();
    out[0] = c0;
    for k in 1..n {
        let mut s = Fp::zero(p);
        for i in 1..=k.min(a.len() - 1) {
            s += a[i] * out[k - i];
        }
        out[k] = -s * c0;
    }
    out
}

/// `y` at an ordinary point `(x0, y0)` as a series in `t = x - x0` by Newton iteration.
fn y_series_newton(c: &HyperellipticCurve, x0: Fp, y0: Fp, n: usize) -> Series {
    let p = c.p();
    let phi: Series = (0..n).map(|k| c.f().taylor_shift(x0).coeff(k)).collect();
    let mut y = s_zero(p, n);
    y[0] = y0;
    let half = Fp::new(2, p).inv().unwrap();
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        let q = s_mul(&phi, &s_inv(&y, n), n);
        y = y.iter().zip(&q).map(|(&a, &b)| (a + b) * half).collect();
    }
    y
}

/// `x - x0` at a Weierstrass point `(x0, 0)` as a series in `y`.
fn x_series_weierstrass(c: &HyperellipticCurve, x0: Fp, n: usize) -> Series {
    let p = c.p();
    let phi = c.f().taylor_shift(x0);
    let d1 = phi.coeff(1).inv().unwrap();
    // s = (y^2 - Σ_{k>=2} φ_k s^k) / φ_1, iterated to a fixed point
    let mut s = s_zero(p, n);
    for _ in 0..n + 1 {
        let mut rhs = s_zero(p, n);
        if n > 2 {
            rhs[2] = Fp::one(p);
        }
        let mut pw = s_mul(&s, &s, n);
        for k in 2..=phi.degree().unwrap() {
            for i in 0..n {
                rhs[i] -= phi.coeff(k) * pw[i];
            }
            pw = s_mul(&pw, &s, n);
        }
        s = rhs.iter().map(|&v| v * d1).collect();
    }
    s
}

/// `x0 + s` raised to powers `0..count`, truncated.
fn powers_of(x0: Fp, s: &Series, count: usize, n: usize) -> Vec<Series> {
    let p = x0.modulus();
    let mut base = s.clone();
    base[0] += x0;
    let mut out = Vec::new();
    let mut cur = s_zero(p, n);
    cur[0] = Fp::one(p);
    for _ in 0..count {
        out.push(cur.clone());
        cur = s_mul(&cur, &base, n);
    }
    out
}

/// `h^0(D)` by brute force over a generously sized ansatz.
pub fn h0_oracle(c: &HyperellipticCurve, d: &Divisor) -> usize {
    let p = c.p();
    let g = c.g();
    let slack = 2;
    let mut xs: Vec<Fp> = Vec::new();
    for (pl, _) in d.finite_support() {
        let (x0, _) = c.coords(pl).unwrap();
        if !xs.contains(&x0) {
            xs.push(x0);
        }
    }
    let big_e: i64 = d.iter().map(|(_, &m)| m.abs()).max().unwrap_or(0) + slack;
    let deg_d = big_e * xs.len() as i64;
    let d_inf = d.infinity_mult();
    let na = ((d_inf + 2 * deg_d) / 2 + slack).max(0) as usize + 1;
    let nb = ((d_inf + 2 * deg_d) / 2 + slack).max(0) as usize + 1;
    let ncols = na + nb;
    let mut rows: Vec<Vec<u64>> = Vec::new();

    // pole order at infinity: x^k/d has 2k - 2 deg d, y x^k/d has 2g+1+2k - 2 deg d
    for k in 0..na {
        if 2 * k as i64 - 2 * deg_d > d_inf {
            let mut r = vec![0; ncols];
            r[k] = 1;
            rows.push(r);
        }
    }
    for k in 0..nb {
        if 2 * g + 1 + 2 * k as i64 - 2 * deg_d > d_inf {
            let mut r = vec![0; ncols];
            r[na + k] = 1;
            rows.push(r);
        }
    }

    for &x0 in &xs {
        let places = c.places_over(x0).unwrap();
        for pl in places {
            let (_, y0) = c.coords(&pl).unwrap();
            let m = d.mult(&pl);
            if y0.is_zero() {
                // parameter y; v(x - x0) = 2
                let need = (2 * big_e - m).max(0) as usize;
                if need == 0 {
                    continue;
                }
                let s = x_series_weierstrass(c, x0, need);
                let pw = powers_of(x0, &s, na.max(nb), need);
                for k in 0..need {
                    let mut r = vec![0u64; ncols];
                    for i in 0..na {
                        r[i] = pw[i][k].value();
                    }
                    for j in 0..nb {
                        // y * x^j shifts by one
                        r[na + j] = if k >= 1 { pw[j][k - 1].value() } else { 0 };
                    }
                    rows.push(r);
                }
            } else {
                let need = (big_e - m).max(0) as usize;
                if need == 0 {
                    continue;
                }
                let mut t = s_zero(p, need);
                if need > 1 {
                    t[1] = Fp::one(p);
                }
                let pw = powers_of(x0, &t, na.max(nb), need);
                let ys = y_series_newton(c, x0, y0, need);
                for k in 0..need {
                    let mut r = vec![0u64; ncols];
                    for i in 0..na {
                        r[i] = pw[i][k].value();
                    }
                    for j in 0..nb {
                        r[na + j] = s_mul(&ys, &pw[j], need)[k].value();
                    }
                    rows.push(r);
                }
            }
        }
    }
    ncols - rank_mod_p(&rows, p)
}

/// `h^0(D)` on a genus-2 curve from the structure of divisor classes alone.
pub fn h0_genus2_classes(c: &HyperellipticCurve, d: &Divisor) -> usize {
    assert_eq!(c.genus(), 2);
    let deg = d.degree();
    // class of D - deg(D)·∞
    let shifted = d.sub(&Divisor::infinity(deg));
    let cls = ReducedDivisor::from_divisor(c, &shifted);
    match deg {
        n if n < 0 => 0,
        0 => usize::from(cls.is_identity()),
        1 => usize::from(cls.u().deg_i64() <= 1),
        // K = 2∞, and every degree-2 class is effective
        2 => 1 + usize::from(cls.is_identity()),
        n => (n - 1) as usize,
    }
}

/// Every reduced Mumford pair, by exhaustive search.
pub fn all_reduced_divisors(c: &HyperellipticCurve) -> Vec<(Poly, Poly)> {
    let p = c.p();
    let g = c.genus();
    let mut out = Vec::new();
    for du in 0..=g {
        let total_u = p.pow(du as u32);
        for iu in 0..total_u {
            let mut uc: Vec<Fp> = digits(iu, p, du).into_iter().map(|v| Fp::from_u64(v, p)).collect();
            uc.push(Fp::one(p));
            let u = Poly::new(uc, p);
            let total_v = p.pow(du as u32);
            for iv in 0..total_v {
                let v = Poly::new(digits(iv, p, du).into_iter().map(|d| Fp::from_u64(d, p)).collect(), p);
                if v.mul(&v).sub(c.f()).rem(&u).is_zero() {
                    out.push((u.clone(), v));
                }
            }
        }
    }
    out
}

fn digits(mut n: u64, base: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(n % base);
        n /= base;
    }
    out
}

/// A divisor with `npoints` random rational places (multiplicities in
/// `-mmax..=mmax`) plus a random multiplicity at infinity.
pub fn random_divisor<R: Rng>(c: &HyperellipticCurve, rng: &mut R, npoints: usize, mmax: i64, inf_range: (i64, i64)) -> Divisor {
    let mut d = Divisor::infinity(rng.gen_range(inf_range.0..=inf_range.1));
    for _ in 0..npoints {
        let pl = c.random_point(rng);
        d.add_place(pl, rng.gen_range(-mmax..=mmax));
    }
    d
}

pub fn place_list(c: &HyperellipticCurve) -> Vec<Place> {
    let mut v = c.rational_points();
    v.push(Place::Infinity);
    v
}

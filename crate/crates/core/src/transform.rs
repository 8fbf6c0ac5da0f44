//! Fibers of the total transform over `Jac(X) × P^g`.
//!
//! A point of `P^g` is either an interior point `(1 : α)`, where the fiber is
//! `ℍ^1` of the twisted Higgs bundle `E(α) ⊗ M_ξ`, or a boundary point `[α]`,
//! where the complex is `E ⊗ M_ξ -> E ⊗ M_ξ ⊗ ω` given by `id ⊗ α`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{CurveFunction, Fp, Matrix, Poly};
use crate::curve::{Differential, HyperellipticCurve, Place};
use crate::error::{Error, Result};
use crate::higgs::{char_poly, twist_by_form, twist_by_line_bundle, HiggsBundle};
use crate::hypercoh::{hypercoh, TwoTermComplex};
use crate::jacobian::{random_jac_point_with, ReducedDivisor};
use crate::rrspace::rr_basis;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormPoint {
    Interior(Differential),
    /// Stored with leading coefficient 1.
    Boundary(Differential),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseSpacePoint {
    pub xi: ReducedDivisor,
    pub form: FormPoint,
}

impl BaseSpacePoint {
    pub fn interior(xi: ReducedDivisor, alpha: Differential) -> Self {
        BaseSpacePoint { xi, form: FormPoint::Interior(alpha) }
    }

    pub fn boundary(xi: ReducedDivisor, alpha: Differential) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroDifferential);
        }
        Ok(BaseSpacePoint { xi, form: FormPoint::Boundary(alpha.normalized()) })
    }

    pub fn record(&self) -> PointRecord {
        let coeffs = |p: &Poly| p.coeffs().iter().map(|c| c.value()).collect::<Vec<_>>();
        let (kind, alpha) = match &self.form {
            FormPoint::Interior(a) => ("interior", a),
            FormPoint::Boundary(a) => ("boundary", a),
        };
        PointRecord {
            kind: kind.to_string(),
            xi_u: coeffs(self.xi.u()),
            xi_v: coeffs(self.xi.v()),
            alpha: coeffs(alpha.coefficient()),
        }
    }
}

/// Plain serializable description of a base point; coefficients lowest-first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointRecord {
    pub kind: String,
    pub xi_u: Vec<u64>,
    pub xi_v: Vec<u64>,
    pub alpha: Vec<u64>,
}

impl std::fmt::Display for PointRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} xi=({:?},{:?}) alpha={:?}", self.kind, self.xi_u, self.xi_v, self.alpha)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformFiber {
    pub point: BaseSpacePoint,
    pub dims: (usize, usize, usize),
    pub h1_basis: Vec<Vec<Fp>>,
}

/// The complex whose hypercohomology is the fiber at `pt`.
pub fn fiber_complex(c: &HyperellipticCurve, h: &HiggsBundle, pt: &BaseSpacePoint) -> Result<TwoTermComplex> {
    if h.degree() != 0 {
        return Err(Error::NonzeroDegree(h.degree()));
    }
    match &pt.form {
        FormPoint::Interior(a) => {
            let t = twist_by_line_bundle(c, &twist_by_form(h, a), &pt.xi)?;
            Ok(TwoTermComplex::from(&t))
        }
        FormPoint::Boundary(a) => {
            let r = h.rank();
            let twisted = twist_by_line_bundle(c, h, &pt.xi)?;
            let entries = (0..r)
                .map(|i| (0..r).map(|j| if i == j { a.ratio() } else { CurveFunction::zero(c.p()) }).collect())
                .collect();
            Ok(TwoTermComplex::new_unchecked(twisted.bundle, entries))
        }
    }
}

pub fn fiber(c: &HyperellipticCurve, h: &HiggsBundle, pt: &BaseSpacePoint) -> Result<TransformFiber> {
    let res = hypercoh(c, &fiber_complex(c, h, pt)?)?;
    Ok(TransformFiber { point: pt.clone(), dims: res.dims(), h1_basis: res.h1_basis() })
}

fn random_form<R: Rng + ?Sized>(c: &HyperellipticCurve, rng: &mut R) -> Differential {
    let coeffs = (0..c.genus()).map(|_| Fp::from_u64(rng.gen_range(0..c.p()), c.p())).collect();
    Differential::new(Poly::new(coeffs, c.p()))
}

/// `n` interior and `n` boundary points. The first interior point is
/// `(identity, 0)` and the first boundary point is `(identity, [dx/y])`;
/// the rest are drawn from a ChaCha stream seeded by `seed`.
pub fn sample_points(c: &HyperellipticCurve, n: usize, seed: u64) -> (Vec<BaseSpacePoint>, Vec<BaseSpacePoint>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = ReducedDivisor::identity(c);
    let mut interior = Vec::with_capacity(n);
    let mut boundary = Vec::with_capacity(n);
    if n > 0 {
        interior.push(BaseSpacePoint::interior(id.clone(), Differential::zero(c.p())));
        boundary.push(BaseSpacePoint { xi: id, form: FormPoint::Boundary(Differential::reference(c.p())) });
    }
    for _ in 1..n {
        let xi = random_jac_point_with(c, &mut rng);
        interior.push(BaseSpacePoint::interior(xi, random_form(c, &mut rng)));
    }
    for _ in 1..n {
        let xi = random_jac_point_with(c, &mut rng);
        let alpha = loop {
            let a = random_form(c, &mut rng);
            if !a.is_zero() {
                break a;
            }
        };
        boundary.push(BaseSpacePoint { xi, form: FormPoint::Boundary(alpha.normalized()) });
    }
    (interior, boundary)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberRow {
    pub point: PointRecord,
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct It1Report {
    pub expected: (usize, usize, usize),
    /// Whether the input satisfies the hypotheses under which vanishing is expected.
    pub hypotheses_met: bool,
    pub rows: Vec<FiberRow>,
}

impl It1Report {
    pub fn violations(&self) -> impl Iterator<Item = &FiberRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Computes fibers at `n` interior and `n` boundary samples and compares
/// them with `(0, (2g-2)r, 0)`. Fibers are computed in parallel; the rows
/// come back in sampling order.
pub fn verify_it1(c: &HyperellipticCurve, h: &HiggsBundle, n_samples: usize, seed: u64) -> Result<It1Report> {
    if h.degree() != 0 {
        return Err(Error::NonzeroDegree(h.degree()));
    }
    let (interior, boundary) = sample_points(c, n_samples, seed);
    let points: Vec<BaseSpacePoint> = interior.into_iter().chain(boundary).collect();
    let expected = (0, (2 * c.genus() - 2) * h.rank(), 0);
    let fibers: Vec<Result<TransformFiber>> = points.par_iter().map(|pt| fiber(c, h, pt)).collect();
    let mut rows = Vec::with_capacity(fibers.len());
    for f in fibers {
        let f = f?;
        let (h0, h1, h2) = f.dims;
        rows.push(FiberRow { point: f.point.record(), h0, h1, h2, pass: f.dims == expected });
    }
    let hypotheses_met = h.is_certified_stable() && h.is_nontrivial() && h.rank() >= 2;
    Ok(It1Report { expected, hypotheses_met, rows })
}

/// Comparison surrogate for the transform: sampled fiber dimensions plus
/// the characteristic polynomial of `θ` as a point of `⊕ L(iK)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub curve: String,
    pub seed: u64,
    pub samples: Vec<(PointRecord, (usize, usize, usize))>,
    /// Coordinates of the `i`-th char-poly coefficient in the basis of `L(iK)`.
    pub spectral: Vec<Vec<u64>>,
}

impl Fingerprint {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("fingerprint serializes")
    }
}

/// Char-poly coefficients `c_i ∈ L(iK)` in `rr_basis` coordinates.
pub fn spectral_data(c: &HyperellipticCurve, h: &HiggsBundle) -> Result<Vec<Vec<u64>>> {
    let cp = char_poly(c, &h.field.entries);
    cp.iter()
        .enumerate()
        .map(|(i, ci)| {
            let space = rr_basis(c, &c.canonical_divisor().scale(i as i64 + 1))?;
            if ci.is_zero() {
                return Ok(vec![0; space.dim()]);
            }
            Ok(space.coordinates(ci)?.into_iter().map(|v| v.value()).collect())
        })
        .collect()
}

pub fn fingerprint(c: &HyperellipticCurve, h: &HiggsBundle, n_samples: usize, seed: u64) -> Result<Fingerprint> {
    let report = verify_it1(c, h, n_samples, seed)?;
    let samples = report.rows.into_iter().map(|r| (r.point, (r.h0, r.h1, r.h2))).collect();
    Ok(Fingerprint { curve: c.id(), seed, samples, spectral: spectral_data(c, h)? })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PgFiberReport {
    /// `r(g+1) × r` matrix of `j^*Θ` at `P`: the block `θ(P)` followed by `α_i(P)·id`.
    pub evaluation: Vec<Vec<u64>>,
    pub injective: bool,
    /// Hypercohomology of `O^r -> O(1)^r` on `P^g`.
    pub fiber_dims: (usize, usize, usize),
    /// `(p, h^p)` for `0 <= p <= 2g`.
    pub table: Vec<(usize, u64)>,
}

pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut acc: u64 = 1;
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

/// Evaluates `j^*Θ` at the base point `∞` and assembles the cohomology table
/// of the transform on `Jac(X) × P^g`.
pub fn pg_fiber_table(c: &HyperellipticCurve, h: &HiggsBundle) -> Result<PgFiberReport> {
    let r = h.rank();
    let g = c.genus();
    let p = c.p();
    let pi = c.infinity_uniformizer();
    let k_inf = c.canonical_divisor().infinity_mult();
    let eval_local = |fun: &CurveFunction, mult: i64| -> Result<Fp> {
        if fun.is_zero() {
            return Ok(Fp::zero(p));
        }
        let scaled = c.mul(fun, &pi.powi(mult, c.f()).unwrap());
        c.evaluate(&scaled, &Place::Infinity).map_err(|e| Error::EvaluationFailure(e.to_string()))
    };
    let mut m = Matrix::zeros(r * (g + 1), r, p);
    let d = &h.bundle.summands;
    for i in 0..r {
        for j in 0..r {
            let mult = k_inf + d[i].infinity_mult() - d[j].infinity_mult();
            m[(i, j)] = eval_local(&h.field.entries[i][j], mult)?;
        }
    }
    for (k, a) in c.canonical_basis().iter().enumerate() {
        let v = eval_local(&a.ratio(), k_inf)?;
        for i in 0..r {
            m[((k + 1) * r + i, i)] = v;
        }
    }
    let rank = m.rank();
    let injective = rank == r;
    let fiber_dims = (r - rank, r * (g + 1) - rank, 0);
    let table = (0..=2 * g)
        .map(|pp| {
            let hp = binomial(g as i64 - 1, pp as i64 - 1) * fiber_dims.1 as u64
                + binomial(g as i64 - 1, pp as i64) * fiber_dims.0 as u64;
            (pp, hp)
        })
        .collect();
    let evaluation = (0..m.rows()).map(|i| m.row(i).iter().map(|v| v.value()).collect()).collect();
    Ok(PgFiberReport { evaluation, injective, fiber_dims, table })
}

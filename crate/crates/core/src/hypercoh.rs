//! Hypercohomology of a two-term complex `E -> E ⊗ ω` on the curve.
//!
//! The first spectral sequence degenerates at `E_2`, so
//! `ℍ^0 = ker H^0(θ)`, `ℍ^2 = coker H^1(θ)` and
//! `ℍ^1 = ker H^1(θ) ⊕ coker H^0(θ)`. `H^1` groups are represented as duals
//! of `L(K - D)`, and `H^1(θ)` as the transpose of the Serre-dual
//! multiplication `L(-D_i) -> L(K - D_j)`.

use crate::arith::{CurveFunction, Fp, Matrix};
use crate::curve::HyperellipticCurve;
use crate::error::{Error, Result};
use crate::higgs::{validate_field, HiggsBundle, HiggsField, SplitBundle};
use crate::rrspace::{mult_map_between, rr_basis, RRBasis};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermComplex {
    pub bundle: SplitBundle,
    pub entries: Vec<Vec<CurveFunction>>,
}

impl TwoTermComplex {
    pub fn new(c: &HyperellipticCurve, bundle: SplitBundle, entries: Vec<Vec<CurveFunction>>) -> Result<Self> {
        let field = HiggsField::new(entries);
        validate_field(c, &bundle, &field)?;
        Ok(TwoTermComplex { bundle, entries: field.entries })
    }

    /// Skips validation; callers guarantee the entries are sections.
    pub(crate) fn new_unchecked(bundle: SplitBundle, entries: Vec<Vec<CurveFunction>>) -> Self {
        TwoTermComplex { bundle, entries }
    }

    pub fn rank(&self) -> usize {
        self.bundle.rank()
    }
}

impl From<&HiggsBundle> for TwoTermComplex {
    fn from(h: &HiggsBundle) -> Self {
        TwoTermComplex { bundle: h.bundle.clone(), entries: h.field.entries.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypercohResult {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    /// Basis of `ℍ^0` in coordinates of `⊕ L(D_j)`.
    pub ker0: Vec<Vec<Fp>>,
    /// Unit vectors of `⊕ L(K + D_i)` spanning a complement of the image of `H^0(θ)`.
    pub coker0: Vec<Vec<Fp>>,
    /// Kernel of `H^1(θ)` in the dual coordinates of `⊕ L(K - D_j)`.
    pub ker1: Vec<Vec<Fp>>,
    /// Unit vectors of the dual of `⊕ L(-D_i)` spanning a complement of the image of `H^1(θ)`.
    pub coker1: Vec<Vec<Fp>>,
}

impl HypercohResult {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.h0, self.h1, self.h2)
    }

    /// `ℍ^1` basis: the `ker H^1(θ)` part followed by the `coker H^0(θ)` part.
    pub fn h1_basis(&self) -> Vec<Vec<Fp>> {
        self.ker1.iter().chain(&self.coker0).cloned().collect()
    }
}

fn bases(c: &HyperellipticCurve, divs: impl Iterator<Item = crate::curve::Divisor>) -> Result<Vec<RRBasis>> {
    divs.map(|d| rr_basis(c, &d)).collect()
}

fn assemble(
    c: &HyperellipticCurve,
    entries: &[Vec<CurveFunction>],
    src: &[RRBasis],
    dst: &[RRBasis],
    transpose_index: bool,
) -> Result<Matrix> {
    let rows: usize = dst.iter().map(RRBasis::dim).sum();
    let cols: usize = src.iter().map(RRBasis::dim).sum();
    let mut m = Matrix::zeros(rows, cols, c.p());
    let mut r0 = 0;
    for (a, to) in dst.iter().enumerate() {
        let mut c0 = 0;
        for (b, from) in src.iter().enumerate() {
            // block (a, b) uses θ_ab for H^0 and θ_ba for the Serre-dual side
            let e = if transpose_index { &entries[b][a] } else { &entries[a][b] };
            if !e.is_zero() && from.dim() > 0 && to.dim() > 0 {
                m.set_block(r0, c0, &mult_map_between(c, e, from, to)?);
            }
            c0 += from.dim();
        }
        r0 += to.dim();
    }
    Ok(m)
}

/// `H^0(θ): ⊕ L(D_j) -> ⊕ L(K + D_i)`.
pub fn h0_matrix(c: &HyperellipticCurve, t: &TwoTermComplex) -> Result<Matrix> {
    let k = c.canonical_divisor();
    let src = bases(c, t.bundle.summands.iter().cloned())?;
    let dst = bases(c, t.bundle.summands.iter().map(|d| k.add(d)))?;
    assemble(c, &t.entries, &src, &dst, false)
}

/// The Serre-dual map `⊕_i L(-D_i) -> ⊕_j L(K - D_j)`, `f ↦ θ_ij f` on block `(j, i)`.
pub fn serre_dual_matrix(c: &HyperellipticCurve, t: &TwoTermComplex) -> Result<Matrix> {
    let k = c.canonical_divisor();
    let src = bases(c, t.bundle.summands.iter().map(|d| d.neg()))?;
    let dst = bases(c, t.bundle.summands.iter().map(|d| k.sub(d)))?;
    assemble(c, &t.entries, &src, &dst, true)
}

/// `H^1(θ): H^1(E) -> H^1(E ⊗ ω)` in the dual bases.
pub fn h1_matrix(c: &HyperellipticCurve, t: &TwoTermComplex) -> Result<Matrix> {
    Ok(serre_dual_matrix(c, t)?.transpose())
}

fn unit_vectors(idx: &[usize], n: usize, p: u64) -> Vec<Vec<Fp>> {
    idx.iter()
        .map(|&i| {
            let mut v = vec![Fp::zero(p); n];
            v[i] = Fp::one(p);
            v
        })
        .collect()
}

pub fn hypercoh(c: &HyperellipticCurve, t: &TwoTermComplex) -> Result<HypercohResult> {
    let p = c.p();
    let m0 = h0_matrix(c, t)?;
    let m1 = h1_matrix(c, t)?;
    let ker0 = m0.kernel_basis();
    let coker0 = unit_vectors(&m0.cokernel_complement(), m0.rows(), p);
    let ker1 = m1.kernel_basis();
    let coker1 = unit_vectors(&m1.cokernel_complement(), m1.rows(), p);
    let res = HypercohResult { h0: ker0.len(), h1: ker1.len() + coker0.len(), h2: coker1.len(), ker0, coker0, ker1, coker1 };
    let chi = res.h0 as i64 - res.h1 as i64 + res.h2 as i64;
    let expected = -(2 * c.g() - 2) * t.rank() as i64;
    if chi != expected {
        return Err(Error::EulerMismatch(format!("h0 - h1 + h2 = {} but expected {}", chi, expected)));
    }
    Ok(res)
}

//! Higgs bundles on split bundles `⊕ O(D_i)`.
//!
//! Entry `(i, j)` of a Higgs field is the component `O(D_j) -> O(D_i) ⊗ ω`,
//! stored as its ratio to `dx/y`, so it must lie in `L(K + D_i - D_j)`.

use std::collections::BTreeSet;

use crate::arith::{CurveFunction, Fp, Matrix, Poly};
use crate::curve::{Differential, Divisor, HyperellipticCurve, Place};
use crate::error::{Error, Result};
use crate::jacobian::{to_divisor, ReducedDivisor};
use crate::rrspace::{mult_map_between, rr_basis};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitBundle {
    pub summands: Vec<Divisor>,
}

impl SplitBundle {
    pub fn new(summands: Vec<Divisor>) -> Self {
        SplitBundle { summands }
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn degree(&self) -> i64 {
        self.summands.iter().map(Divisor::degree).sum()
    }

    pub fn twist(&self, d: &Divisor) -> SplitBundle {
        SplitBundle { summands: self.summands.iter().map(|s| s.add(d)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HiggsField {
    pub entries: Vec<Vec<CurveFunction>>,
}

impl HiggsField {
    pub fn new(entries: Vec<Vec<CurveFunction>>) -> Self {
        HiggsField { entries }
    }

    pub fn zero(r: usize, modulus: u64) -> Self {
        HiggsField { entries: vec![vec![CurveFunction::zero(modulus); r]; r] }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(CurveFunction::is_zero)
    }

    pub fn get(&self, i: usize, j: usize) -> &CurveFunction {
        &self.entries[i][j]
    }
}

/// How stability of a bundle is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StabilityCertificate {
    /// Proven for the family (e.g. the Hitchin section); kept under twists and gauge changes.
    Analytic,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HiggsBundle {
    pub bundle: SplitBundle,
    pub field: HiggsField,
    pub certificate: StabilityCertificate,
}

impl HiggsBundle {
    /// Validates shapes and that each entry is a section of `O(K + D_i - D_j)`.
    pub fn new(c: &HyperellipticCurve, bundle: SplitBundle, field: HiggsField) -> Result<Self> {
        validate_field(c, &bundle, &field)?;
        Ok(HiggsBundle { bundle, field, certificate: StabilityCertificate::Unknown })
    }

    pub fn with_certificate(mut self, cert: StabilityCertificate) -> Self {
        self.certificate = cert;
        self
    }

    pub fn rank(&self) -> usize {
        self.bundle.rank()
    }

    pub fn degree(&self) -> i64 {
        self.bundle.degree()
    }

    pub fn is_certified_stable(&self) -> bool {
        self.certificate == StabilityCertificate::Analytic
    }

    /// The trivial Higgs bundle is `(O, 0)` up to isomorphism.
    pub fn is_trivial(&self, c: &HyperellipticCurve) -> bool {
        self.rank() == 1
            && self.field.is_zero()
            && self.bundle.degree() == 0
            && ReducedDivisor::from_divisor(c, &self.bundle.summands[0]).is_identity()
    }

    /// Non-trivial means rank at least two or a non-zero field.
    pub fn is_nontrivial(&self) -> bool {
        self.rank() >= 2 || !self.field.is_zero()
    }
}

pub fn validate_field(c: &HyperellipticCurve, bundle: &SplitBundle, field: &HiggsField) -> Result<()> {
    let r = bundle.rank();
    if r == 0 {
        return Err(Error::ShapeMismatch("empty bundle".into()));
    }
    if field.entries.len() != r || field.entries.iter().any(|row| row.len() != r) {
        return Err(Error::ShapeMismatch(format!("Higgs field is not {}x{}", r, r)));
    }
    let k = c.canonical_divisor();
    for i in 0..r {
        for j in 0..r {
            let e = field.get(i, j);
            if e.is_zero() {
                continue;
            }
            let target = k.add(&bundle.summands[i]).sub(&bundle.summands[j]);
            if !rr_basis(c, &target)?.contains(e) {
                return Err(Error::NotASection(format!("entry ({}, {}) = {} is not in L({})", i, j, e, target)));
            }
        }
    }
    Ok(())
}

/// `E = O((g-1)∞) ⊕ O(-(g-1)∞)`, `θ = [[0, q], [1, 0]]` with `q ∈ L(2K)`.
pub fn hitchin_section(c: &HyperellipticCurve, q: &CurveFunction) -> Result<HiggsBundle> {
    hitchin_section_rank(c, std::slice::from_ref(q))
}

/// Companion-matrix Hitchin section of rank `qs.len() + 1`: `qs[k]` is the
/// coefficient in `L((k+2)K)`, summands `D_i = (r-1-2i)(g-1)∞`, ones on the
/// subdiagonal and the coefficients in the last column.
pub fn hitchin_section_rank(c: &HyperellipticCurve, qs: &[CurveFunction]) -> Result<HiggsBundle> {
    let r = qs.len() + 1;
    let m = c.p();
    let g1 = c.g() - 1;
    let summands: Vec<Divisor> =
        (0..r).map(|i| Divisor::infinity((r as i64 - 1 - 2 * i as i64) * g1)).collect();
    let mut entries = vec![vec![CurveFunction::zero(m); r]; r];
    for i in 0..r - 1 {
        entries[i + 1][i] = CurveFunction::one(m);
    }
    for (k, q) in qs.iter().enumerate() {
        let deg = k + 2;
        let space = rr_basis(c, &c.canonical_divisor().scale(deg as i64))?;
        if !space.contains(q) {
            return Err(Error::NotASection(format!("{} is not in L({}K)", q, deg)));
        }
        entries[r - deg][r - 1] = q.clone();
    }
    let bundle = SplitBundle::new(summands);
    let field = HiggsField::new(entries);
    Ok(HiggsBundle { bundle, field, certificate: StabilityCertificate::Analytic })
}

/// `E(α) = (E, θ + id ⊗ α)`.
pub fn twist_by_form(h: &HiggsBundle, a: &Differential) -> HiggsBundle {
    let mut out = h.clone();
    if a.is_zero() {
        return out;
    }
    let add = a.ratio();
    for i in 0..h.rank() {
        out.field.entries[i][i] = out.field.entries[i][i].add(&add);
    }
    out
}

/// `E ⊗ M_ξ`: every summand shifted by `D_ξ`.
pub fn twist_by_line_bundle(c: &HyperellipticCurve, h: &HiggsBundle, xi: &ReducedDivisor) -> Result<HiggsBundle> {
    let d = to_divisor(c, xi)?;
    Ok(twist_by_divisor(h, &d))
}

pub fn twist_by_divisor(h: &HiggsBundle, d: &Divisor) -> HiggsBundle {
    HiggsBundle { bundle: h.bundle.twist(d), field: h.field.clone(), certificate: h.certificate }
}

/// `θ ↦ g θ g⁻¹` for `g_ij ∈ L(D_i - D_j)` with inverse of the same shape.
pub fn gauge_transform(c: &HyperellipticCurve, h: &HiggsBundle, gmat: &[Vec<CurveFunction>]) -> Result<HiggsBundle> {
    let r = h.rank();
    if gmat.len() != r || gmat.iter().any(|row| row.len() != r) {
        return Err(Error::ShapeMismatch(format!("gauge matrix is not {}x{}", r, r)));
    }
    check_gauge_entries(c, &h.bundle, gmat)?;
    let ginv = fn_matrix_inverse(c, gmat).ok_or(Error::NotInvertible)?;
    check_gauge_entries(c, &h.bundle, &ginv).map_err(|_| Error::NotInvertible)?;
    let theta = fn_matrix_mul(c, &fn_matrix_mul(c, gmat, &h.field.entries), &ginv);
    let field = HiggsField::new(theta);
    validate_field(c, &h.bundle, &field)?;
    Ok(HiggsBundle { bundle: h.bundle.clone(), field, certificate: h.certificate })
}

fn check_gauge_entries(c: &HyperellipticCurve, b: &SplitBundle, gmat: &[Vec<CurveFunction>]) -> Result<()> {
    for (i, row) in gmat.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let target = b.summands[i].sub(&b.summands[j]);
            if !rr_basis(c, &target)?.contains(e) {
                return Err(Error::NotASection(format!("gauge entry ({}, {}) = {} is not in L({})", i, j, e, target)));
            }
        }
    }
    Ok(())
}

pub fn fn_matrix_mul(c: &HyperellipticCurve, a: &[Vec<CurveFunction>], b: &[Vec<CurveFunction>]) -> Vec<Vec<CurveFunction>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let p = c.p();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..k).fold(CurveFunction::zero(p), |acc, t| acc.add(&c.mul(&a[i][t], &b[t][j])))
                })
                .collect()
        })
        .collect()
}

/// Inverse over the function field by Gauss-Jordan elimination.
pub fn fn_matrix_inverse(c: &HyperellipticCurve, a: &[Vec<CurveFunction>]) -> Option<Vec<Vec<CurveFunction>>> {
    let n = a.len();
    let p = c.p();
    let mut m: Vec<Vec<CurveFunction>> = a.to_vec();
    let mut inv: Vec<Vec<CurveFunction>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { CurveFunction::one(p) } else { CurveFunction::zero(p) }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let pinv = c.inv(&m[col][col])?;
        for j in 0..n {
            m[col][j] = c.mul(&m[col][j], &pinv);
            inv[col][j] = c.mul(&inv[col][j], &pinv);
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for j in 0..n {
                let t = c.mul(&factor, &m[col][j]);
                m[r][j] = m[r][j].sub(&t);
                let t = c.mul(&factor, &inv[col][j]);
                inv[r][j] = inv[r][j].sub(&t);
            }
        }
    }
    Some(inv)
}

/// Coefficients `c_1..c_r` of `det(λ - θ) = λ^r - c_1 λ^{r-1} + ... ± c_r`
/// up to the sign convention of Faddeev-LeVerrier: returns `c_k` with
/// `det(λ - θ) = λ^r + Σ c_k λ^{r-k}`. `c_k` is a section of `kK`.
pub fn char_poly(c: &HyperellipticCurve, theta: &[Vec<CurveFunction>]) -> Vec<CurveFunction> {
    let n = theta.len();
    let p = c.p();
    let ident = |s: &CurveFunction| -> Vec<Vec<CurveFunction>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { s.clone() } else { CurveFunction::zero(p) }).collect()).collect()
    };
    let mut coeffs = Vec::with_capacity(n);
    let mut mk = ident(&CurveFunction::one(p));
    let mut cprev = CurveFunction::one(p);
    for k in 1..=n {
        if k > 1 {
            let shifted: Vec<Vec<CurveFunction>> = mk
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter().enumerate().map(|(j, e)| if i == j { e.add(&cprev) } else { e.clone() }).collect()
                })
                .collect();
            mk = fn_matrix_mul(c, theta, &shifted);
        } else {
            mk = theta.to_vec();
        }
        let tr = (0..n).fold(CurveFunction::zero(p), |acc, i| acc.add(&mk[i][i]));
        let kk = Fp::new(k as i64, p);
        let ck = tr.scale(-kk.inv().expect("rank below the characteristic"));
        coeffs.push(ck.clone());
        cprev = ck;
    }
    coeffs
}

/// One θ-invariant sub-line-bundle `O(A) -> E` found by the scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSubbundle {
    pub divisor: Divisor,
    pub degree: i64,
    pub eigenvalue: Poly,
    pub section: (CurveFunction, CurveFunction),
    pub destabilizing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub degree_bound: i64,
    pub classes_checked: usize,
    pub invariant: Vec<InvariantSubbundle>,
}

impl StabilityReport {
    pub fn destabilizer(&self) -> Option<&InvariantSubbundle> {
        self.invariant.iter().find(|s| s.destabilizing)
    }

    pub fn summary(&self) -> String {
        match self.destabilizer() {
            None => format!("no destabilizer found up to bound {}", self.degree_bound),
            Some(s) => format!("destabilizing sub-line-bundle O({}) of degree {}", s.divisor, s.degree),
        }
    }
}

/// Eigenvalues of a rank-2 field that are holomorphic differentials,
/// returned as polynomials `λ` with `λ dx/y` the eigenvalue.
fn rational_eigenvalues(c: &HyperellipticCurve, theta: &[Vec<CurveFunction>]) -> Vec<Poly> {
    let cp = char_poly(c, theta);
    // det(λ - θ) = λ^2 + c1 λ + c2
    let (c1, c2) = (&cp[0], &cp[1]);
    let tr = c1.neg();
    let det = c2;
    let g = c.g();
    let p = c.p();
    let admissible = |l: &crate::arith::RatFn| -> Option<Poly> {
        let poly = l.as_poly()?.clone();
        (poly.deg_i64() < g).then_some(poly)
    };
    let mut out = BTreeSet::new();
    if !tr.b().is_zero() {
        if let Some(l) = det.b().div(tr.b()).and_then(|l| admissible(&l)) {
            let lf = CurveFunction::from_poly(l.clone());
            let val = c.mul(&lf, &lf).sub(&c.mul(&tr, &lf)).add(det);
            if val.is_zero() {
                out.insert(l.coeffs().iter().map(|x| x.value()).collect::<Vec<_>>());
            }
        }
    } else if det.b().is_zero() {
        let two_inv = Fp::new(2, p).inv().unwrap();
        let disc = tr.a().mul(tr.a()).sub(&det.a().scale(Fp::new(4, p)));
        if let (Some(sn), Some(sd)) = (disc.num().sqrt(), disc.den().sqrt()) {
            let root = crate::arith::RatFn::new(sn, sd);
            for s in [root.clone(), root.neg()] {
                let l = tr.a().add(&s).scale(two_inv);
                if let Some(l) = admissible(&l) {
                    out.insert(l.coeffs().iter().map(|x| x.value()).collect::<Vec<_>>());
                }
            }
        }
    }
    out.into_iter()
        .map(|cs| Poly::new(cs.into_iter().map(|v| Fp::from_u64(v, p)).collect(), p))
        .collect()
}

/// Effective divisors of degree `k` on `places`, as multisets.
fn effective_divisors(places: &[Place], k: usize) -> Vec<Divisor> {
    fn rec(places: &[Place], start: usize, left: usize, cur: &mut Vec<Place>, out: &mut Vec<Divisor>) {
        if left == 0 {
            out.push(Divisor::from_pairs(cur.iter().map(|&p| (p, 1))));
            return;
        }
        for i in start..places.len() {
            cur.push(places[i]);
            rec(places, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(places, 0, k, &mut Vec::new(), &mut out);
    out
}

/// Searches for θ-invariant sub-line-bundles `O(A) ⊂ E` with `A` effective or
/// anti-effective, `|deg A| <= degree_bound`, supported on rational places.
/// Candidates are deduplicated by linear equivalence class.
pub fn stability_scan(c: &HyperellipticCurve, h: &HiggsBundle, degree_bound: i64) -> Result<StabilityReport> {
    if h.rank() != 2 {
        return Err(Error::UnsupportedRank(h.rank()));
    }
    let theta = &h.field.entries;
    let eigen = rational_eigenvalues(c, theta);
    let mut places = c.rational_points();
    places.push(Place::Infinity);
    let d = &h.bundle.summands;
    let deg_e = h.degree();
    let k = c.canonical_divisor();
    let p = c.p();

    let mut report = StabilityReport { degree_bound, classes_checked: 0, invariant: Vec::new() };
    if eigen.is_empty() {
        return Ok(report);
    }
    for deg in (-degree_bound.max(0))..=degree_bound.max(0) {
        // no non-zero map O(A) -> O(D_i) when deg A > deg D_i for every i
        if d.iter().all(|di| di.degree() < deg) {
            continue;
        }
        let candidates: Vec<Divisor> = effective_divisors(&places, deg.unsigned_abs() as usize)
            .into_iter()
            .map(|a| if deg < 0 { a.neg() } else { a })
            .collect();
        let mut seen = BTreeSet::new();
        for a in candidates {
            let key = ReducedDivisor::from_divisor(c, &a);
            if !seen.insert((key.u().coeffs().to_vec(), key.v().coeffs().to_vec())) {
                continue;
            }
            report.classes_checked += 1;
            let src: Vec<_> = d.iter().map(|di| rr_basis(c, &di.sub(&a))).collect::<Result<_>>()?;
            if src.iter().all(|b| b.is_empty()) {
                continue;
            }
            let dst: Vec<_> = d.iter().map(|di| rr_basis(c, &k.add(di).sub(&a))).collect::<Result<_>>()?;
            for lam in &eigen {
                let lf = CurveFunction::from_poly(lam.clone());
                let cols: usize = src.iter().map(|b| b.dim()).sum();
                let rows: usize = dst.iter().map(|b| b.dim()).sum();
                let mut mat = Matrix::zeros(rows, cols, p);
                let mut r0 = 0;
                for i in 0..2 {
                    let mut c0 = 0;
                    for j in 0..2 {
                        let mut e = theta[i][j].clone();
                        if i == j {
                            e = e.sub(&lf);
                        }
                        let block = mult_map_between(c, &e, &src[j], &dst[i])?;
                        mat.set_block(r0, c0, &block);
                        c0 += src[j].dim();
                    }
                    r0 += dst[i].dim();
                }
                if let Some(v) = mat.kernel_basis().into_iter().next() {
                    let (v1, v2) = v.split_at(src[0].dim());
                    let section = (src[0].combination(v1), src[1].combination(v2));
                    report.invariant.push(InvariantSubbundle {
                        divisor: a.clone(),
                        degree: deg,
                        eigenvalue: lam.clone(),
                        section,
                        destabilizing: 2 * deg >= deg_e,
                    });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c11() -> HyperellipticCurve {
        HyperellipticCurve::from_coeffs(11, &[0, -1, 0, 0, 0, 1]).unwrap()
    }

    #[test]
    fn hitchin_validity() {
        let c = c11();
        for q in [CurveFunction::zero(11), c.constant(1), c.poly_fn(&[0, 0, 1])] {
            let h = hitchin_section(&c, &q).unwrap();
            assert_eq!(h.rank(), 2);
            assert_eq!(h.degree(), 0);
            assert!(h.is_certified_stable());
        }
        assert!(matches!(hitchin_section(&c, &c.poly_fn(&[0, 0, 0, 1])), Err(Error::NotASection(_))));
        assert!(matches!(hitchin_section(&c, &c.y_fn()), Err(Error::NotASection(_))));
    }

    #[test]
    fn form_twists_act_additively() {
        let c = c11();
        let h = hitchin_section(&c, &c.constant(1)).unwrap();
        let a = Differential::new(c.poly(&[1, 2]));
        let b = Differential::new(c.poly(&[3]));
        assert_eq!(twist_by_form(&h, &Differential::zero(11)), h);
        assert_eq!(twist_by_form(&twist_by_form(&h, &a), &a.neg()), h);
        assert_eq!(twist_by_form(&twist_by_form(&h, &a), &b), twist_by_form(&h, &a.add(&b)));
        let t = twist_by_form(&h, &Differential::reference(11));
        assert_eq!(t.field.get(0, 0), &c.constant(1));
        assert_eq!(t.field.get(1, 1), &c.constant(1));
    }

    #[test]
    fn diagonal_gauge_scales_entries() {
        let c = c11();
        let q = c.poly_fn(&[2, 1]);
        let h = hitchin_section(&c, &q).unwrap();
        let cc = c.constant(3);
        let ci = c.inv(&cc).unwrap();
        let z = CurveFunction::zero(11);
        let g = vec![vec![cc.clone(), z.clone()], vec![z, ci.clone()]];
        let t = gauge_transform(&c, &h, &g).unwrap();
        assert_eq!(t.field.get(0, 1), &c.mul(&c.mul(&cc, &cc), &q));
        assert_eq!(t.field.get(1, 0), &c.mul(&ci, &ci));
    }

    #[test]
    fn unipotent_gauge() {
        let c = c11();
        let q = c.poly_fn(&[1, 0, 1]);
        let h = hitchin_section(&c, &q).unwrap();
        let b = c.x_fn();
        let g = vec![vec![CurveFunction::one(11), b.clone()], vec![CurveFunction::zero(11), CurveFunction::one(11)]];
        let t = gauge_transform(&c, &h, &g).unwrap();
        assert_eq!(t.field.get(0, 0), &b);
        assert_eq!(t.field.get(1, 1), &b.neg());
        assert_eq!(t.field.get(0, 1), &q.sub(&c.mul(&b, &b)));
        // y is not a section of O(2∞)
        let bad = vec![vec![CurveFunction::one(11), c.y_fn()], vec![CurveFunction::zero(11), CurveFunction::one(11)]];
        assert!(matches!(gauge_transform(&c, &h, &bad), Err(Error::NotASection(_))));
        let singular = vec![vec![CurveFunction::one(11); 2]; 2];
        assert!(gauge_transform(&c, &h, &singular).is_err());
    }

    #[test]
    fn char_poly_of_companion() {
        let c = c11();
        let q = c.poly_fn(&[5, 0, 1]);
        let h = hitchin_section(&c, &q).unwrap();
        let cp = char_poly(&c, &h.field.entries);
        assert!(cp[0].is_zero());
        assert_eq!(cp[1], q.neg());
    }

    #[test]
    fn zero_field_is_destabilized() {
        let c = c11();
        let h = HiggsBundle::new(&c, SplitBundle::new(vec![Divisor::zero(), Divisor::zero()]), HiggsField::zero(2, 11))
            .unwrap();
        let rep = stability_scan(&c, &h, 0).unwrap();
        let d = rep.destabilizer().unwrap();
        assert_eq!(d.degree, 0);
    }

    #[test]
    fn rank_three_section() {
        let c = c11();
        let h = hitchin_section_rank(&c, &[c.constant(1), c.poly_fn(&[0, 1])]).unwrap();
        assert_eq!(h.rank(), 3);
        assert_eq!(h.degree(), 0);
        let cp = char_poly(&c, &h.field.entries);
        assert_eq!(cp.len(), 3);
        assert!(cp[0].is_zero());
    }
}

//! Chart-level recovery of a Higgs bundle from the cokernel of
//! `T·I ± u` over `A[T]`, where `A` is the coordinate ring of an affine
//! chart on which a holomorphic form `α` does not vanish.

use serde::Serialize;

use crate::arith::{CurveFunction, Fp, Matrix, Poly};
use crate::curve::{Differential, HyperellipticCurve, Place};
use crate::error::{Error, Result};
use crate::higgs::{fn_matrix_inverse, fn_matrix_mul, HiggsBundle, SplitBundle};

/// `U = X - V(z) - {∞ unless contains_infinity}`, with `α` non-vanishing on `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineChart {
    pub form: Differential,
    /// Squarefree monic polynomial whose zero set (over `x`) is removed.
    pub excluded: Poly,
    pub contains_infinity: bool,
}

/// Frame `(x - c)^a y^b` generating `O(d·∞)` near infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Frame {
    pub center: u64,
    pub x_power: i64,
    pub y_power: i64,
}

impl Frame {
    pub fn unit() -> Self {
        Frame { center: 0, x_power: 0, y_power: 0 }
    }

    pub fn function(&self, c: &HyperellipticCurve) -> CurveFunction {
        let lin = CurveFunction::from_poly(Poly::linear_root(Fp::from_u64(self.center, c.p())));
        let xa = lin.powi(self.x_power, c.f()).unwrap();
        c.mul(&xa, &c.y_fn().pow(self.y_power as u32, c.f()))
    }
}

impl AffineChart {
    /// The largest chart on which `α` is non-vanishing.
    pub fn new(c: &HyperellipticCurve, alpha: &Differential) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroDifferential);
        }
        c.check_differential(alpha)?;
        let h = alpha.coefficient();
        Ok(AffineChart {
            form: alpha.clone(),
            excluded: h.radical(),
            contains_infinity: h.deg_i64() == c.g() - 1,
        })
    }

    /// Shrinks the chart of `α` until every summand of `bundle` has a
    /// monomial frame on it: finite supports are removed, and when `∞` is in
    /// the chart the center of the frame (and, for odd multiplicities, the
    /// Weierstrass locus) is removed as well.
    pub fn adapted(c: &HyperellipticCurve, alpha: &Differential, bundle: &SplitBundle) -> Result<Self> {
        let mut chart = AffineChart::new(c, alpha)?;
        for d in &bundle.summands {
            for (pl, _) in d.finite_support() {
                let (x0, _) = c.coords(pl).unwrap();
                chart.exclude(&Poly::linear_root(x0));
            }
        }
        if chart.contains_infinity {
            let needs_x = bundle.summands.iter().any(|d| frame_shape(c, d.infinity_mult()).0 != 0);
            let needs_y = bundle.summands.iter().any(|d| frame_shape(c, d.infinity_mult()).1 != 0);
            if needs_x && chart.excluded.rational_roots().is_empty() {
                chart.exclude(&Poly::x(c.p()));
            }
            if needs_y {
                chart.exclude(c.f());
            }
        }
        Ok(chart)
    }

    fn exclude(&mut self, poly: &Poly) {
        self.excluded = self.excluded.mul(poly).radical();
    }

    pub fn contains(&self, c: &HyperellipticCurve, pl: &Place) -> bool {
        match c.coords(pl) {
            None => self.contains_infinity,
            Some((x0, _)) => !self.excluded.eval(x0).is_zero(),
        }
    }

    /// Membership in the coordinate ring: regular at every place of the chart.
    pub fn is_regular(&self, c: &HyperellipticCurve, fun: &CurveFunction) -> bool {
        if fun.is_zero() {
            return true;
        }
        let den = fun.a().den().mul(fun.b().den()).radical();
        if !den.is_constant() && !den.divides(&self.excluded) {
            return false;
        }
        !self.contains_infinity || c.valuation(fun, &Place::Infinity).is_ok_and(|v| v >= 0)
    }

    /// A unit of `A` is regular with regular inverse.
    pub fn is_unit(&self, c: &HyperellipticCurve, fun: &CurveFunction) -> bool {
        !fun.is_zero() && self.is_regular(c, fun) && c.inv(fun).is_some_and(|i| self.is_regular(c, &i))
    }

    /// Rational points of the chart in ascending order, infinity last.
    pub fn rational_points(&self, c: &HyperellipticCurve) -> Vec<Place> {
        let mut pts: Vec<Place> = c.rational_points().into_iter().filter(|pl| self.contains(c, pl)).collect();
        if self.contains_infinity {
            pts.push(Place::Infinity);
        }
        pts
    }

    /// A frame for `O(D)` on this chart.
    pub fn frame(&self, c: &HyperellipticCurve, d: &crate::curve::Divisor) -> Result<Frame> {
        for (pl, _) in d.finite_support() {
            if self.contains(c, pl) {
                return Err(Error::NotTrivializable(format!("O({}) has support at {} inside the chart", d, pl)));
            }
        }
        if !self.contains_infinity {
            return Ok(Frame::unit());
        }
        let (a, b) = frame_shape(c, d.infinity_mult());
        let center = if a == 0 {
            0
        } else {
            match self.excluded.rational_roots().first() {
                Some((r, _)) => r.value(),
                None => return Err(Error::NotTrivializable(format!("no frame for O({}) on the chart", d))),
            }
        };
        if b != 0 && !c.f().divides(&self.excluded) {
            return Err(Error::NotTrivializable(format!("y vanishes inside the chart; no frame for O({})", d)));
        }
        Ok(Frame { center, x_power: a, y_power: b })
    }
}

/// `(a, b)` with `v_∞(x^a y^b) = -d` and `b ∈ {0, 1}`.
fn frame_shape(c: &HyperellipticCurve, d: i64) -> (i64, i64) {
    let b = d.rem_euclid(2);
    ((d - (2 * c.g() + 1) * b) / 2, b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
pub enum SignConvention {
    /// `ψ = T·I + u`, so `T` acts on the cokernel as `-u`.
    #[default]
    Plus,
    /// `ψ = T·I - u`, so `T` acts as `u`.
    Minus,
}

/// The endomorphism `u` of `A^r` attached to a Higgs bundle on a chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartData {
    pub chart: AffineChart,
    pub frames: Vec<Frame>,
    pub u: Vec<Vec<CurveFunction>>,
}

/// Presentation matrix `P(T)` over `A[T]`: entry `(i, j)` lists the coefficients of `T^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub convention: SignConvention,
    pub matrix: Vec<Vec<Vec<CurveFunction>>>,
}

impl ModulePresentation {
    pub fn rank(&self) -> usize {
        self.matrix.len()
    }
}

/// `u_ij = θ_ij t_j / (t_i h)` where `α = h dx/y` and `t_i` frames `O(D_i)`.
pub fn cokernel_presentation(c: &HyperellipticCurve, h: &HiggsBundle, chart: &AffineChart) -> Result<ChartData> {
    let frames: Vec<Frame> = h.bundle.summands.iter().map(|d| chart.frame(c, d)).collect::<Result<_>>()?;
    let t: Vec<CurveFunction> = frames.iter().map(|f| f.function(c)).collect();
    let hinv = c.inv(&chart.form.ratio()).ok_or(Error::ZeroDifferential)?;
    let r = h.rank();
    let mut u = vec![vec![CurveFunction::zero(c.p()); r]; r];
    for i in 0..r {
        let ti_inv = c.inv(&t[i]).unwrap();
        for j in 0..r {
            let e = &h.field.entries[i][j];
            if e.is_zero() {
                continue;
            }
            let v = c.mul(&c.mul(&c.mul(e, &t[j]), &ti_inv), &hinv);
            if !chart.is_regular(c, &v) {
                return Err(Error::NotTrivializable(format!("u({}, {}) = {} has a pole on the chart", i, j, v)));
            }
            u[i][j] = v;
        }
    }
    Ok(ChartData { chart: chart.clone(), frames, u })
}

/// `T·I + u` or `T·I - u`.
pub fn presentation(u: &[Vec<CurveFunction>], convention: SignConvention) -> ModulePresentation {
    let r = u.len();
    let m = u.first().and_then(|row| row.first()).map_or(2, CurveFunction::modulus);
    let matrix = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let c0 = match convention {
                        SignConvention::Plus => u[i][j].clone(),
                        SignConvention::Minus => u[i][j].neg(),
                    };
                    let c1 = if i == j { CurveFunction::one(m) } else { CurveFunction::zero(m) };
                    vec![c0, c1]
                })
                .collect()
        })
        .collect();
    ModulePresentation { convention, matrix }
}

/// Brings `P(T) = T·L + C0` to `T·I + C` with `C = L^{-1} C0`, after checking
/// the `T`-degree and that `L` is invertible over `A`.
fn linearize(c: &HyperellipticCurve, chart: &AffineChart, pres: &ModulePresentation) -> Result<Vec<Vec<CurveFunction>>> {
    let r = pres.rank();
    let m = c.p();
    if pres.matrix.iter().any(|row| row.len() != r) {
        return Err(Error::NotLinearizable("presentation is not square".into()));
    }
    let coeff = |i: usize, j: usize, k: usize| -> CurveFunction {
        pres.matrix[i][j].get(k).cloned().unwrap_or_else(|| CurveFunction::zero(m))
    };
    for (i, row) in pres.matrix.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if e.iter().skip(2).any(|x| !x.is_zero()) {
                return Err(Error::NotLinearizable(format!("entry ({}, {}) has T-degree above 1", i, j)));
            }
            if e.iter().any(|x| !chart.is_regular(c, x)) {
                return Err(Error::NotLinearizable(format!("entry ({}, {}) is not in the coordinate ring", i, j)));
            }
        }
    }
    let lead: Vec<Vec<CurveFunction>> = (0..r).map(|i| (0..r).map(|j| coeff(i, j, 1)).collect()).collect();
    let c0: Vec<Vec<CurveFunction>> = (0..r).map(|i| (0..r).map(|j| coeff(i, j, 0)).collect()).collect();
    let det = fn_det(c, &lead);
    if !chart.is_unit(c, &det) {
        return Err(Error::NotLinearizable("leading coefficient matrix is not invertible over A".into()));
    }
    let linv = fn_matrix_inverse(c, &lead).ok_or_else(|| Error::NotLinearizable("singular leading matrix".into()))?;
    Ok(fn_matrix_mul(c, &linv, &c0))
}

fn fn_det(c: &HyperellipticCurve, m: &[Vec<CurveFunction>]) -> CurveFunction {
    let n = m.len();
    if n == 0 {
        return CurveFunction::one(c.p());
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = CurveFunction::zero(c.p());
    for j in 0..n {
        let minor: Vec<Vec<CurveFunction>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, e)| e.clone()).collect()).collect();
        let term = c.mul(&m[0][j], &fn_det(c, &minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// The action of `T` on the `A`-basis of `coker P(T)`.
pub fn recover_endomorphism(c: &HyperellipticCurve, chart: &AffineChart, pres: &ModulePresentation) -> Result<Vec<Vec<CurveFunction>>> {
    let cm = linearize(c, chart, pres)?;
    Ok(cm.iter().map(|row| row.iter().map(CurveFunction::neg).collect()).collect())
}

/// The Higgs matrix `u` under the presentation's sign convention.
pub fn recover_higgs_matrix(c: &HyperellipticCurve, chart: &AffineChart, pres: &ModulePresentation) -> Result<Vec<Vec<CurveFunction>>> {
    let action = recover_endomorphism(c, chart, pres)?;
    Ok(match pres.convention {
        SignConvention::Plus => action.iter().map(|row| row.iter().map(CurveFunction::neg).collect()).collect(),
        SignConvention::Minus => action,
    })
}

pub fn recover_bundle_rank(c: &HyperellipticCurve, chart: &AffineChart, pres: &ModulePresentation) -> Result<usize> {
    Ok(linearize(c, chart, pres)?.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlueReport {
    pub covers: bool,
    pub points: Vec<String>,
    pub mismatches: Vec<String>,
}

impl GlueReport {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Maximum number of overlap points compared by [`glue_check`].
pub const GLUE_SAMPLES: usize = 10;

/// Recovers `u` on both charts and compares them on the overlap through
/// `u_B = u_A (h_A / h_B) (t^A_i t^B_j) / (t^A_j t^B_i)`.
pub fn glue_check(c: &HyperellipticCurve, h: &HiggsBundle, a: &AffineChart, b: &AffineChart) -> Result<GlueReport> {
    let covers = a.excluded.gcd(&b.excluded).is_constant() && (a.contains_infinity || b.contains_infinity);
    if !covers && a != b {
        return Err(Error::ChartsDontCover);
    }
    let da = cokernel_presentation(c, h, a)?;
    let db = cokernel_presentation(c, h, b)?;
    let ua = recover_higgs_matrix(c, a, &presentation(&da.u, SignConvention::Plus))?;
    let ub = recover_higgs_matrix(c, b, &presentation(&db.u, SignConvention::Plus))?;
    let ta: Vec<CurveFunction> = da.frames.iter().map(|f| f.function(c)).collect();
    let tb: Vec<CurveFunction> = db.frames.iter().map(|f| f.function(c)).collect();
    let ratio = c.div(&a.form.ratio(), &b.form.ratio()).unwrap();
    let overlap: Vec<Place> =
        a.rational_points(c).into_iter().filter(|pl| b.contains(c, pl)).take(GLUE_SAMPLES).collect();
    let r = h.rank();
    let mut mismatches = Vec::new();
    for pl in &overlap {
        for i in 0..r {
            for j in 0..r {
                let factor = c.div(&c.mul(&ta[i], &tb[j]), &c.mul(&ta[j], &tb[i])).unwrap();
                let moved = c.mul(&c.mul(&ua[i][j], &ratio), &factor);
                let lhs = c.evaluate(&moved, pl);
                let rhs = c.evaluate(&ub[i][j], pl);
                match (lhs, rhs) {
                    (Ok(x), Ok(y)) if x == y => {}
                    (lhs, rhs) => mismatches.push(format!("{} entry ({}, {}): {:?} vs {:?}", pl, i, j, lhs, rhs)),
                }
            }
        }
    }
    Ok(GlueReport { covers, points: overlap.iter().map(|p| p.to_string()).collect(), mismatches })
}

/// Evaluates a matrix over `A` at a place of the chart.
pub fn evaluate_matrix(c: &HyperellipticCurve, m: &[Vec<CurveFunction>], pl: &Place) -> Result<Matrix> {
    let r = m.len();
    let mut out = Matrix::zeros(r, r, c.p());
    for i in 0..r {
        for j in 0..r {
            out[(i, j)] = c.evaluate(&m[i][j], pl)?;
        }
    }
    Ok(out)
}

/// Characteristic polynomial of a square matrix over `F_p`.
pub fn matrix_char_poly(m: &Matrix) -> Poly {
    // det(λ I - M) by interpolation at r+1 points
    let r = m.rows();
    let p = m.modulus();
    let xs: Vec<Fp> = (0..=r as u64).map(|v| Fp::from_u64(v, p)).collect();
    let ys: Vec<Fp> = xs
        .iter()
        .map(|&l| {
            let mut a = m.clone();
            for i in 0..r {
                for j in 0..r {
                    a[(i, j)] = if i == j { l - m[(i, j)] } else { -m[(i, j)] };
                }
            }
            det_fp(&a)
        })
        .collect();
    let mut acc = Poly::zero(p);
    for (k, (&xk, &yk)) in xs.iter().zip(&ys).enumerate() {
        let mut basis = Poly::constant(yk);
        for (l, &xl) in xs.iter().enumerate() {
            if l != k {
                basis = basis.mul(&Poly::linear_root(xl)).scale((xk - xl).inv().unwrap());
            }
        }
        acc = acc.add(&basis);
    }
    acc
}

fn det_fp(m: &Matrix) -> Fp {
    let n = m.rows();
    let p = m.modulus();
    let mut a = m.clone();
    let mut det = Fp::one(p);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
            return Fp::zero(p);
        };
        if piv != col {
            for j in 0..n {
                let t = a[(col, j)];
                a[(col, j)] = a[(piv, j)];
                a[(piv, j)] = t;
            }
            det = -det;
        }
        det *= a[(col, col)];
        let inv = a[(col, col)].inv().unwrap();
        for r in col + 1..n {
            let f = a[(r, col)] * inv;
            for j in col..n {
                let v = a[(col, j)];
                a[(r, j)] -= f * v;
            }
        }
    }
    det
}

/// Necessary condition for `coker(T + u) ≅ coker(T + u')`: equal
/// characteristic polynomials at up to `n` rational points of the chart.
pub fn charpoly_agree(c: &HyperellipticCurve, chart: &AffineChart, u: &[Vec<CurveFunction>], v: &[Vec<CurveFunction>], n: usize) -> Result<bool> {
    for pl in chart.rational_points(c).into_iter().take(n) {
        if matrix_char_poly(&evaluate_matrix(c, u, &pl)?) != matrix_char_poly(&evaluate_matrix(c, v, &pl)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Divisor;
    use crate::higgs::{hitchin_section, twist_by_form, HiggsField};

    fn c11() -> HyperellipticCurve {
        HyperellipticCurve::from_coeffs(11, &[0, -1, 0, 0, 0, 1]).unwrap()
    }

    #[test]
    fn reference_chart_roundtrip() {
        let c = c11();
        let h = hitchin_section(&c, &c.poly_fn(&[0, 0, 1])).unwrap();
        let chart = AffineChart::new(&c, &Differential::reference(11)).unwrap();
        assert!(!chart.contains_infinity);
        let data = cokernel_presentation(&c, &h, &chart).unwrap();
        assert_eq!(data.u, h.field.entries);
        for conv in [SignConvention::Plus, SignConvention::Minus] {
            let pres = presentation(&data.u, conv);
            assert_eq!(recover_higgs_matrix(&c, &chart, &pres).unwrap(), data.u);
            assert_eq!(recover_bundle_rank(&c, &chart, &pres).unwrap(), 2);
        }
    }

    #[test]
    fn zero_field_and_diagonal_presentation() {
        let c = c11();
        let chart = AffineChart::new(&c, &Differential::reference(11)).unwrap();
        let h = HiggsBundle::new(&c, SplitBundle::new(vec![Divisor::zero(); 2]), HiggsField::zero(2, 11)).unwrap();
        let data = cokernel_presentation(&c, &h, &chart).unwrap();
        assert!(data.u.iter().flatten().all(CurveFunction::is_zero));
        let diag = vec![vec![c.x_fn(), CurveFunction::zero(11)], vec![CurveFunction::zero(11), c.y_fn()]];
        let pres = presentation(&diag, SignConvention::Minus);
        assert_eq!(recover_endomorphism(&c, &chart, &pres).unwrap(), diag);
    }

    #[test]
    fn form_twist_shifts_u() {
        let c = c11();
        let h = hitchin_section(&c, &c.constant(1)).unwrap();
        let chart = AffineChart::new(&c, &Differential::reference(11)).unwrap();
        let beta = Differential::new(c.poly(&[2, 1]));
        let u = cokernel_presentation(&c, &h, &chart).unwrap().u;
        let ut = cokernel_presentation(&c, &twist_by_form(&h, &beta), &chart).unwrap().u;
        assert_eq!(ut[0][0], u[0][0].add(&beta.ratio()));
        assert_eq!(ut[1][1], u[1][1].add(&beta.ratio()));
    }

    #[test]
    fn rejects_quadratic_presentation() {
        let c = c11();
        let chart = AffineChart::new(&c, &Differential::reference(11)).unwrap();
        let one = CurveFunction::one(11);
        let pres = ModulePresentation {
            convention: SignConvention::Plus,
            matrix: vec![vec![vec![one.clone(), CurveFunction::zero(11), one]]],
        };
        assert!(matches!(recover_endomorphism(&c, &chart, &pres), Err(Error::NotLinearizable(_))));
    }

    #[test]
    fn second_chart_frames_and_glue() {
        let c = c11();
        let h = hitchin_section(&c, &c.poly_fn(&[0, 0, 1])).unwrap();
        let a = AffineChart::new(&c, &Differential::reference(11)).unwrap();
        let b = AffineChart::adapted(&c, &Differential::new(c.poly(&[0, 1])), &h.bundle).unwrap();
        assert!(b.contains_infinity);
        assert_eq!(b.excluded, c.f().monic());
        let data = cokernel_presentation(&c, &h, &b).unwrap();
        assert_eq!(data.frames[0], Frame { center: 0, x_power: -2, y_power: 1 });
        assert_eq!(data.frames[1], Frame { center: 0, x_power: -3, y_power: 1 });
        let rep = glue_check(&c, &h, &a, &b).unwrap();
        assert!(rep.covers);
        assert!(rep.agrees(), "{:?}", rep.mismatches);
        assert!(!rep.points.is_empty());
        assert!(glue_check(&c, &h, &a, &a).unwrap().agrees());
        assert_eq!(glue_check(&c, &h, &b, &AffineChart::new(&c, &Differential::new(c.poly(&[0, 1]))).unwrap()), Err(Error::ChartsDontCover));
    }

    #[test]
    fn char_poly_of_small_matrix() {
        let m = Matrix::from_i64(&[&[0, 1], &[1, 0]], 11);
        assert_eq!(matrix_char_poly(&m), Poly::from_i64(&[-1, 0, 1], 11));
    }
}

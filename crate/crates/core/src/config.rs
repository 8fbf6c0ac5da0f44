//! JSON formats for curves, Higgs bundles and module presentations.
//!
//! Curve: `{"p": 101, "f": [0, -1, 0, 0, 0, 1]}` (coefficients lowest-first).
//!
//! Bundle: `{"summands": [[{"place": "inf", "mult": 1}], ...], "field": [[F, ...], ...]}`
//! where a place is `"inf"` or `[x, y]` and a function `F` is
//! `{"a": {"num": [...], "den": [...]}, "b": {...}}`; `b` and `den` may be omitted.

use serde::{Deserialize, Serialize};

use crate::arith::{CurveFunction, Poly, RatFn};
use crate::curve::{Divisor, HyperellipticCurve, Place};
use crate::error::{Error, Result};
use crate::higgs::{HiggsBundle, HiggsField, SplitBundle};
use crate::reconstruct::{ModulePresentation, SignConvention};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub p: u64,
    pub f: Vec<i64>,
}

impl CurveSpec {
    pub fn build(&self) -> Result<HyperellipticCurve> {
        HyperellipticCurve::from_coeffs(self.p, &self.f)
    }

    pub fn from_curve(c: &HyperellipticCurve) -> Self {
        CurveSpec { p: c.p(), f: c.f().coeffs().iter().map(|v| v.value() as i64).collect() }
    }
}

pub fn parse_curve(text: &str) -> Result<HyperellipticCurve> {
    let spec: CurveSpec = serde_json::from_str(text).map_err(|e| Error::Parse(format!("curve: {}", e)))?;
    spec.build()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlaceSpec {
    Named(String),
    Point([i64; 2]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub place: PlaceSpec,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFnSpec {
    pub num: Vec<i64>,
    #[serde(default = "one_den")]
    pub den: Vec<i64>,
}

fn one_den() -> Vec<i64> {
    vec![1]
}

fn zero_ratfn() -> RatFnSpec {
    RatFnSpec { num: Vec::new(), den: one_den() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionSpec {
    #[serde(default = "zero_ratfn")]
    pub a: RatFnSpec,
    #[serde(default = "zero_ratfn")]
    pub b: RatFnSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleSpec {
    pub summands: Vec<Vec<TermSpec>>,
    pub field: Vec<Vec<FunctionSpec>>,
}

fn to_i64(p: &Poly) -> Vec<i64> {
    p.coeffs().iter().map(|c| c.value() as i64).collect()
}

impl RatFnSpec {
    pub fn build(&self, p: u64) -> Result<RatFn> {
        let den = Poly::from_i64(&self.den, p);
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(RatFn::new(Poly::from_i64(&self.num, p), den))
    }

    pub fn from_ratfn(r: &RatFn) -> Self {
        RatFnSpec { num: to_i64(r.num()), den: to_i64(r.den()) }
    }
}

impl FunctionSpec {
    pub fn build(&self, p: u64) -> Result<CurveFunction> {
        Ok(CurveFunction::new(self.a.build(p)?, self.b.build(p)?))
    }

    pub fn from_function(f: &CurveFunction) -> Self {
        FunctionSpec { a: RatFnSpec::from_ratfn(f.a()), b: RatFnSpec::from_ratfn(f.b()) }
    }
}

impl PlaceSpec {
    pub fn build(&self, c: &HyperellipticCurve) -> Result<Place> {
        match self {
            PlaceSpec::Named(s) if s == "inf" => Ok(Place::Infinity),
            PlaceSpec::Named(s) => Err(Error::Parse(format!("unknown place {:?}", s))),
            PlaceSpec::Point([x, y]) => c.point(*x, *y),
        }
    }

    pub fn from_place(pl: &Place) -> Self {
        match *pl {
            Place::Infinity => PlaceSpec::Named("inf".into()),
            Place::Finite { x, y } => PlaceSpec::Point([x as i64, y as i64]),
        }
    }
}

pub fn divisor_from_terms(c: &HyperellipticCurve, terms: &[TermSpec]) -> Result<Divisor> {
    let mut d = Divisor::zero();
    for t in terms {
        d.add_place(t.place.build(c)?, t.mult);
    }
    Ok(d)
}

pub fn divisor_to_terms(d: &Divisor) -> Vec<TermSpec> {
    d.iter().map(|(pl, &m)| TermSpec { place: PlaceSpec::from_place(pl), mult: m }).collect()
}

impl BundleSpec {
    pub fn build(&self, c: &HyperellipticCurve) -> Result<HiggsBundle> {
        let summands = self.summands.iter().map(|t| divisor_from_terms(c, t)).collect::<Result<Vec<_>>>()?;
        let entries = self
            .field
            .iter()
            .map(|row| row.iter().map(|f| f.build(c.p())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        HiggsBundle::new(c, SplitBundle::new(summands), HiggsField::new(entries))
    }

    pub fn from_bundle(h: &HiggsBundle) -> Self {
        BundleSpec {
            summands: h.bundle.summands.iter().map(divisor_to_terms).collect(),
            field: h.field.entries.iter().map(|row| row.iter().map(FunctionSpec::from_function).collect()).collect(),
        }
    }
}

pub fn parse_bundle(c: &HyperellipticCurve, text: &str) -> Result<HiggsBundle> {
    let spec: BundleSpec = serde_json::from_str(text).map_err(|e| Error::Parse(format!("bundle: {}", e)))?;
    spec.build(c)
}

/// `{"convention": "plus", "matrix": [[[F_0, F_1], ...], ...]}`, entry lists are `T`-coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationSpec {
    #[serde(default)]
    pub convention: Option<String>,
    pub matrix: Vec<Vec<Vec<FunctionSpec>>>,
}

pub fn parse_convention(s: &str) -> Result<SignConvention> {
    match s {
        "plus" => Ok(SignConvention::Plus),
        "minus" => Ok(SignConvention::Minus),
        other => Err(Error::Parse(format!("unknown sign convention {:?}", other))),
    }
}

pub fn convention_name(s: SignConvention) -> &'static str {
    match s {
        SignConvention::Plus => "plus",
        SignConvention::Minus => "minus",
    }
}

impl PresentationSpec {
    pub fn build(&self, p: u64, default: SignConvention) -> Result<ModulePresentation> {
        let convention = match &self.convention {
            Some(s) => parse_convention(s)?,
            None => default,
        };
        let matrix = self
            .matrix
            .iter()
            .map(|row| {
                row.iter().map(|e| e.iter().map(|f| f.build(p)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ModulePresentation { convention, matrix })
    }

    pub fn from_presentation(m: &ModulePresentation) -> Self {
        PresentationSpec {
            convention: Some(convention_name(m.convention).into()),
            matrix: m
                .matrix
                .iter()
                .map(|row| row.iter().map(|e| e.iter().map(FunctionSpec::from_function).collect()).collect())
                .collect(),
        }
    }
}

pub fn parse_presentation(p: u64, text: &str, default: SignConvention) -> Result<ModulePresentation> {
    let spec: PresentationSpec =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("presentation: {}", e)))?;
    spec.build(p, default)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::higgs::hitchin_section;

    #[test]
    fn curve_roundtrip() {
        let c = parse_curve(r#"{"p": 11, "f": [0, -1, 0, 0, 0, 1]}"#).unwrap();
        assert_eq!(c.genus(), 2);
        assert!(matches!(parse_curve(r#"{"p": 11}"#), Err(Error::Parse(_))));
        assert_eq!(parse_curve(r#"{"p": 11, "f": [0, 0, 0, 0, 0, 1]}"#), Err(Error::NotSquarefree));
    }

    #[test]
    fn bundle_roundtrip() {
        let c = parse_curve(r#"{"p": 11, "f": [0, -1, 0, 0, 0, 1]}"#).unwrap();
        let h = hitchin_section(&c, &c.poly_fn(&[1, 0, 1])).unwrap();
        let text = serde_json::to_string(&BundleSpec::from_bundle(&h)).unwrap();
        let back = parse_bundle(&c, &text).unwrap();
        assert_eq!(back.bundle, h.bundle);
        assert_eq!(back.field, h.field);
    }

    #[test]
    fn bundle_shorthand() {
        let c = parse_curve(r#"{"p": 11, "f": [0, -1, 0, 0, 0, 1]}"#).unwrap();
        let text = r#"{"summands": [[{"place": [3, 3], "mult": 1}, {"place": "inf", "mult": -1}]],
                       "field": [[{"a": {"num": [1]}}]]}"#;
        let h = parse_bundle(&c, text).unwrap();
        assert_eq!(h.degree(), 0);
        let bad = r#"{"summands": [[{"place": [3, 4], "mult": 1}]], "field": [[{}]]}"#;
        assert_eq!(parse_bundle(&c, bad), Err(Error::NotOnCurve(3, 4)));
    }
}

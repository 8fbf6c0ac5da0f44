//! Commands behind the `higgs-tft` binary. Each command turns a
//! [`RunConfig`] into a [`Report`]; rendering and exit codes live here too
//! so they can be tested without spawning a process.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;

use higgs_tft::arith::{CurveFunction, Poly};
use higgs_tft::chow::{ch_tft, cohomology_table, hrr_check, todd};
use higgs_tft::config::{parse_bundle, parse_curve, parse_presentation, PresentationSpec};
use higgs_tft::curve::Differential;
use higgs_tft::higgs::{hitchin_section_rank, stability_scan, HiggsBundle, HiggsField, SplitBundle};
use higgs_tft::reconstruct::{
    charpoly_agree, cokernel_presentation, glue_check, presentation, recover_bundle_rank, recover_higgs_matrix,
    AffineChart, SignConvention,
};
use higgs_tft::transform::{pg_fiber_table, verify_it1};
use higgs_tft::{Divisor, HyperellipticCurve};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Hitchin,
    Trivial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    Plus,
    Minus,
}

impl From<Convention> for SignConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Plus => SignConvention::Plus,
            Convention::Minus => SignConvention::Minus,
        }
    }
}

/// Where the Higgs bundle comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BundleSource {
    File(PathBuf),
    /// Companion-form Hitchin section; `qs[k]` lies in `L((k+2)K)`, coefficients lowest-first.
    Hitchin { qs: Vec<Vec<i64>> },
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// `None` selects the builtin curve `y^2 = x^5 - x` over F_101.
    pub curve: Option<PathBuf>,
    pub bundle: BundleSource,
    pub samples: usize,
    pub seed: u64,
    pub format: Format,
    pub convention: Convention,
    pub degree_bound: i64,
    pub presentation: Option<PathBuf>,
    pub emit_presentation: Option<PathBuf>,
    /// Overrides for `table`.
    pub genus: Option<usize>,
    pub rank: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            curve: None,
            bundle: BundleSource::Hitchin { qs: vec![vec![0, 0, 1]] },
            samples: 25,
            seed: 0,
            format: Format::Text,
            convention: Convention::Plus,
            degree_bound: 2,
            presentation: None,
            emit_presentation: None,
            genus: None,
            rank: None,
        }
    }
}

pub const DEFAULT_CURVE: &str = r#"{"p": 101, "f": [0, -1, 0, 0, 0, 1]}"#;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad input: exit code 2.
    Config(String),
    /// The computation itself could not be carried out: exit code 1.
    Run(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {}", m),
            CliError::Run(m) => write!(f, "error: {}", m),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Run(_) => 1,
        }
    }
}

fn run_err(e: higgs_tft::Error) -> CliError {
    CliError::Run(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Field {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub context: Vec<Field>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    fn new(command: &str) -> Self {
        Report { command: command.into(), context: Vec::new(), checks: Vec::new(), passed: true }
    }

    fn field(&mut self, key: &str, value: impl ToString) {
        self.context.push(Field { key: key.into(), value: value.to_string() });
    }

    fn check(&mut self, name: impl Into<String>, status: Status, witness: impl Into<String>) {
        if status == Status::Fail {
            self.passed = false;
        }
        self.checks.push(Check { name: name.into(), status, witness: witness.into() });
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["kind", "name", "status", "value"]).unwrap();
                for f in &self.context {
                    w.write_record(["context", &f.key, "", &f.value]).unwrap();
                }
                for c in &self.checks {
                    w.write_record(["check", &c.name, c.status.label(), &c.witness]).unwrap();
                }
                String::from_utf8(w.into_inner().unwrap()).unwrap()
            }
            Format::Text => {
                let mut s = String::new();
                writeln!(s, "{}", self.command).unwrap();
                for f in &self.context {
                    writeln!(s, "  {}: {}", f.key, f.value).unwrap();
                }
                for c in &self.checks {
                    writeln!(s, "{} {}: {}", c.status.label(), c.name, c.witness).unwrap();
                }
                let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
                writeln!(s, "{} checks, {} failed", self.checks.len(), failed).unwrap();
                s
            }
        }
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {}", path.display(), e)))
}

pub fn load_curve(cfg: &RunConfig) -> Result<HyperellipticCurve, CliError> {
    let text = match &cfg.curve {
        Some(p) => read(p)?,
        None => DEFAULT_CURVE.to_string(),
    };
    parse_curve(&text).map_err(|e| CliError::Config(e.to_string()))
}

pub fn load_bundle(c: &HyperellipticCurve, cfg: &RunConfig) -> Result<HiggsBundle, CliError> {
    let cfg_err = |e: higgs_tft::Error| CliError::Config(e.to_string());
    match &cfg.bundle {
        BundleSource::File(p) => parse_bundle(c, &read(p)?).map_err(cfg_err),
        BundleSource::Hitchin { qs } => {
            let fns: Vec<CurveFunction> = qs.iter().map(|q| c.poly_fn(q)).collect();
            hitchin_section_rank(c, &fns).map_err(cfg_err)
        }
        BundleSource::Trivial => {
            HiggsBundle::new(c, SplitBundle::new(vec![Divisor::zero()]), HiggsField::zero(1, c.p())).map_err(cfg_err)
        }
    }
}

fn describe(h: &HiggsBundle) -> String {
    let summands: Vec<String> = h.bundle.summands.iter().map(|d| format!("O({})", d)).collect();
    summands.join(" + ")
}

/// Fiber dimensions, stability, the `P^g` fiber and the Chow-ring cross-checks.
pub fn cmd_verify(cfg: &RunConfig) -> Result<Report, CliError> {
    let c = load_curve(cfg)?;
    let h = load_bundle(&c, cfg)?;
    let g = c.genus();
    let r = h.rank();
    let mut rep = Report::new("verify");
    rep.field("curve", c.id());
    rep.field("genus", g);
    rep.field("bundle", describe(&h));
    rep.field("rank", r);
    rep.field("samples", cfg.samples);
    rep.field("seed", cfg.seed);

    if h.degree() != 0 {
        return Err(CliError::Config(format!("bundle has degree {}, expected 0", h.degree())));
    }

    if r == 2 {
        let scan = stability_scan(&c, &h, cfg.degree_bound).map_err(run_err)?;
        let witness = format!("{} ({} classes checked)", scan.summary(), scan.classes_checked);
        rep.check("stability scan", Status::from_bool(scan.destabilizer().is_none()), witness);
    } else if h.is_certified_stable() {
        rep.check("stability scan", Status::Skip, "stable by construction");
    } else {
        rep.check("stability scan", Status::Skip, format!("scan covers rank 2 only, rank is {}", r));
    }

    let it1 = verify_it1(&c, &h, cfg.samples, cfg.seed).map_err(run_err)?;
    rep.check(
        "vanishing hypotheses",
        Status::from_bool(it1.hypotheses_met),
        if it1.hypotheses_met { "certified stable and non-trivial" } else { "not certified stable and non-trivial" },
    );
    let (e0, e1, e2) = it1.expected;
    for (k, row) in it1.rows.iter().enumerate() {
        rep.check(
            format!("fiber {}", k),
            Status::from_bool(row.pass),
            format!("{} dims ({}, {}, {}) expected ({}, {}, {})", row.point, row.h0, row.h1, row.h2, e0, e1, e2),
        );
    }
    rep.check("euler identity", Status::Pass, format!("h0 - h1 + h2 = {} on {} fibers", -(2 * g as i64 - 2) * r as i64, it1.rows.len()));

    let pg = pg_fiber_table(&c, &h).map_err(run_err)?;
    rep.check(
        "P^g fiber",
        Status::from_bool(pg.injective && pg.fiber_dims.1 == r * g),
        format!("injective {}, cokernel dimension {}", pg.injective, pg.fiber_dims.1),
    );
    let table_ok = pg
        .table
        .iter()
        .all(|&(p, d)| d == cohomology_table(g, r).iter().find(|x| x.0 == p).map_or(0, |x| x.1));
    let cells: Vec<String> = pg.table.iter().filter(|x| x.1 != 0).map(|(p, d)| format!("h^{}={}", p, d)).collect();
    rep.check("cohomology table", Status::from_bool(table_ok), cells.join(" "));

    let hrr = hrr_check(g, r);
    rep.check(
        "HRR",
        Status::from_bool(hrr.consistent),
        format!("integral {} alternating sum {} rank part {}", hrr.integral, hrr.alternating_sum, hrr.degree_zero),
    );
    Ok(rep)
}

/// Chart-level reconstruction on the charts of `dx/y` and `x^{g-1} dx/y`.
pub fn cmd_roundtrip(cfg: &RunConfig) -> Result<Report, CliError> {
    let c = load_curve(cfg)?;
    let h = load_bundle(&c, cfg)?;
    let conv: SignConvention = cfg.convention.into();
    let mut rep = Report::new("roundtrip");
    rep.field("curve", c.id());
    rep.field("bundle", describe(&h));
    rep.field("sign convention", higgs_tft::config::convention_name(conv));

    let mut x_top = vec![0; c.genus()];
    x_top[c.genus() - 1] = 1;
    let forms = [Differential::reference(c.p()), Differential::new(Poly::from_i64(&x_top, c.p()))];
    let mut charts = Vec::new();
    for (k, alpha) in forms.iter().enumerate() {
        let chart = AffineChart::adapted(&c, alpha, &h.bundle).map_err(run_err)?;
        let data = cokernel_presentation(&c, &h, &chart).map_err(run_err)?;
        let pres = presentation(&data.u, conv);
        let back = recover_higgs_matrix(&c, &chart, &pres).map_err(run_err)?;
        let rank = recover_bundle_rank(&c, &chart, &pres).map_err(run_err)?;
        rep.check(format!("chart {} round trip", k), Status::from_bool(back == data.u), format!("form {}", alpha.coefficient()));
        rep.check(format!("chart {} rank", k), Status::from_bool(rank == h.rank()), format!("recovered rank {}", rank));
        if k == 0 {
            if let Some(path) = &cfg.emit_presentation {
                let text = serde_json::to_string_pretty(&PresentationSpec::from_presentation(&pres)).unwrap();
                fs::write(path, text).map_err(|e| CliError::Run(format!("{}: {}", path.display(), e)))?;
            }
            if let Some(path) = &cfg.presentation {
                let given = parse_presentation(c.p(), &read(path)?, conv).map_err(|e| CliError::Config(e.to_string()))?;
                match recover_higgs_matrix(&c, &chart, &given) {
                    Ok(u) => {
                        let diff = first_mismatch(&u, &data.u);
                        rep.check(
                            "supplied presentation",
                            Status::from_bool(diff.is_none()),
                            diff.unwrap_or_else(|| "recovers the Higgs field".into()),
                        );
                        if u.len() == data.u.len() {
                            let same = charpoly_agree(&c, &chart, &u, &data.u, 20).map_err(run_err)?;
                            rep.check("supplied presentation spectra", Status::from_bool(same), "characteristic polynomials at 20 points");
                        }
                    }
                    Err(e) => rep.check("supplied presentation", Status::Fail, e.to_string()),
                }
            }
        }
        charts.push(chart);
    }
    match glue_check(&c, &h, &charts[0], &charts[1]) {
        Ok(g) => rep.check(
            "glue",
            Status::from_bool(g.agrees()),
            if g.agrees() { format!("agree at {} overlap points", g.points.len()) } else { g.mismatches.join("; ") },
        ),
        Err(e) => rep.check("glue", Status::Fail, e.to_string()),
    }
    Ok(rep)
}

fn first_mismatch(u: &[Vec<CurveFunction>], v: &[Vec<CurveFunction>]) -> Option<String> {
    if u.len() != v.len() {
        return Some(format!("rank {} instead of {}", u.len(), v.len()));
    }
    for (i, (ru, rv)) in u.iter().zip(v).enumerate() {
        for (j, (a, b)) in ru.iter().zip(rv).enumerate() {
            if a != b {
                return Some(format!("entry ({}, {}): {} instead of {}", i, j, a, b));
            }
        }
    }
    None
}

/// Cohomology table, Chern character and the HRR integral for `(g, r)`.
pub fn cmd_table(cfg: &RunConfig) -> Result<Report, CliError> {
    let g = match cfg.genus {
        Some(g) => g,
        None => load_curve(cfg)?.genus(),
    };
    let r = cfg.rank.unwrap_or(2);
    if g < 2 || r < 1 {
        return Err(CliError::Config(format!("need genus >= 2 and rank >= 1, got g = {}, r = {}", g, r)));
    }
    let mut rep = Report::new("table");
    rep.field("genus", g);
    rep.field("rank", r);
    for (p, d) in cohomology_table(g, r) {
        rep.field(&format!("h^{}", p), d);
    }
    rep.field("ch", ch_tft(g, r));
    rep.field("todd", todd(g));
    let hrr = hrr_check(g, r);
    rep.field("integral", &hrr.integral);
    rep.field("alternating sum", hrr.alternating_sum);
    rep.check("rank part", Status::from_bool(hrr.degree_zero == ((2 * g - 2) * r) as i64), format!("{}", hrr.degree_zero));
    rep.check("HRR", Status::from_bool(hrr.consistent), format!("{} = {}", hrr.integral, hrr.alternating_sum));
    Ok(rep)
}

pub fn parse_coeffs(s: &str) -> Result<Vec<i64>, String> {
    s.split(',').map(|t| t.trim().parse::<i64>().map_err(|e| format!("{:?}: {}", t, e))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_lists() {
        assert_eq!(parse_coeffs("0, 0,1"), Ok(vec![0, 0, 1]));
        assert!(parse_coeffs("x").is_err());
    }

    #[test]
    fn table_report() {
        let cfg = RunConfig { genus: Some(3), ..Default::default() };
        let rep = cmd_table(&cfg).unwrap();
        assert!(rep.passed);
        let cells: Vec<_> = rep.context.iter().filter(|f| f.key.starts_with("h^")).map(|f| f.value.as_str()).collect();
        assert_eq!(cells, ["6", "12", "6"]);
    }

    #[test]
    fn csv_quotes_fields() {
        let mut rep = Report::new("x");
        rep.check("a, b", Status::Pass, "w");
        assert!(rep.render(Format::Csv).contains("\"a, b\""));
    }
}

//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails. All comparisons are exact.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use higgs_tft::arith::{CurveFunction, Fp, Poly};
use higgs_tft::chow::{ch_tft, cohomology_table, hrr_check, integrate, todd, Q};
use higgs_tft::curve::Differential;
use higgs_tft::higgs::{
    gauge_transform, hitchin_section, hitchin_section_rank, twist_by_form, twist_by_line_bundle, HiggsBundle, HiggsField,
    SplitBundle,
};
use higgs_tft::hypercoh::{hypercoh, TwoTermComplex};
use higgs_tft::jacobian::{cantor_add, random_jac_point_with, ReducedDivisor};
use higgs_tft::reconstruct::{
    cokernel_presentation, glue_check, presentation, recover_bundle_rank, recover_endomorphism, recover_higgs_matrix,
    AffineChart, SignConvention, GLUE_SAMPLES,
};
use higgs_tft::rrspace::{h0, h1};
use higgs_tft::transform::{fingerprint, pg_fiber_table, verify_it1, It1Report};
use higgs_tft::HyperellipticCurve;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: u64 = 101;
const SAMPLES: usize = 25;
const SEED: u64 = 2024;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn hitchin_qs(c: &HyperellipticCurve) -> Vec<(&'static str, CurveFunction)> {
    vec![("0", c.constant(0)), ("1", c.constant(1)), ("x", c.poly_fn(&[0, 1])), ("x^2", c.poly_fn(&[0, 0, 1]))]
}

fn criterion_1(c: &HyperellipticCurve, reports: &[(&str, It1Report)]) -> Outcome {
    let mut fibers = 0;
    for (q, rep) in reports {
        let interior = rep.rows.iter().filter(|r| r.point.kind == "interior").count();
        let boundary = rep.rows.len() - interior;
        check(interior >= SAMPLES && boundary >= SAMPLES, format!("q={}: only {}+{} samples", q, interior, boundary))?;
        if let Some(bad) = rep.rows.iter().find(|r| (r.h0, r.h1, r.h2) != (0, 4, 0)) {
            return Err(format!("q={}: dims ({}, {}, {}) at {}", q, bad.h0, bad.h1, bad.h2, bad.point));
        }
        fibers += rep.rows.len();
    }
    Ok(format!("{} fibers over {} all (0, 4, 0)", fibers, c.id()))
}

fn criterion_2(c: &HyperellipticCurve, reports: &[(&str, It1Report)]) -> Outcome {
    for (q, rep) in reports {
        check(rep.hypotheses_met, format!("q={}: hypotheses not met", q))?;
        if let Some(bad) = rep.rows.iter().find(|r| r.h0 != 0 || r.h2 != 0) {
            return Err(format!("q={}: h0={} h2={} at {}", q, bad.h0, bad.h2, bad.point));
        }
    }
    let trivial = HiggsBundle::new(c, SplitBundle::new(vec![Default::default()]), HiggsField::zero(1, P))
        .map_err(|e| e.to_string())?;
    let rep = verify_it1(c, &trivial, 3, SEED).map_err(|e| e.to_string())?;
    let first = &rep.rows[0];
    check(first.point.alpha.is_empty() && first.point.kind == "interior", "first sample is not alpha = 0")?;
    check(!rep.hypotheses_met, "trivial bundle reported as meeting the hypotheses")?;
    check(first.h0 > 0 && first.h2 > 0, format!("trivial bundle at alpha = 0 gave ({}, {}, {})", first.h0, first.h1, first.h2))?;
    Ok(format!(
        "H0 = H2 = 0 on all samples; trivial bundle fails at alpha = 0 with ({}, {}, {})",
        first.h0, first.h1, first.h2
    ))
}

fn criterion_3(c: &HyperellipticCurve) -> Outcome {
    let h = hitchin_section_rank(c, &[c.poly_fn(&[0, 0, 1]), c.poly_fn(&[1, 0, 0, 1])]).map_err(|e| e.to_string())?;
    let rep = verify_it1(c, &h, 20, SEED).map_err(|e| e.to_string())?;
    check(rep.rows.len() >= 40, "too few samples")?;
    if let Some(bad) = rep.rows.iter().find(|r| (r.h0, r.h1, r.h2) != (0, 6, 0)) {
        return Err(format!("dims ({}, {}, {}) at {}", bad.h0, bad.h1, bad.h2, bad.point));
    }
    Ok(format!("{} rank-3 fibers all (0, 6, 0)", rep.rows.len()))
}

fn criterion_4() -> Outcome {
    check(cohomology_table(2, 2) == vec![(1, 4), (2, 4)], format!("g=2: {:?}", cohomology_table(2, 2)))?;
    check(cohomology_table(3, 2) == vec![(1, 6), (2, 12), (3, 6)], format!("g=3: {:?}", cohomology_table(3, 2)))?;
    let mut witness = Vec::new();
    for (p, f) in [(101, vec![0, -1, 0, 0, 0, 1]), (11, vec![1, 3, 0, 0, 0, 0, 0, 1])] {
        let c = common::curve(p, &f);
        let g = c.genus();
        for h in [
            hitchin_section(&c, &c.constant(1)).map_err(|e| e.to_string())?,
            hitchin_section_rank(&c, &[c.constant(0), c.constant(1)]).map_err(|e| e.to_string())?,
        ] {
            let r = h.rank();
            let rep = pg_fiber_table(&c, &h).map_err(|e| e.to_string())?;
            check(rep.injective, format!("g={} r={}: evaluation map not injective", g, r))?;
            check(rep.fiber_dims == (0, r * g, 0), format!("g={} r={}: P^g fiber {:?}", g, r, rep.fiber_dims))?;
            let expected: Vec<(usize, u64)> = (0..=2 * g)
                .map(|p| (p, cohomology_table(g, r).iter().find(|x| x.0 == p).map_or(0, |x| x.1)))
                .collect();
            check(rep.table == expected, format!("g={} r={}: table {:?}", g, r, rep.table))?;
            witness.push(format!("g={} r={} coker {}", g, r, rep.fiber_dims.1));
        }
    }
    Ok(format!("tables match; P^g fibers: {}", witness.join(", ")))
}

fn criterion_5() -> Outcome {
    for g in 2..=4 {
        for r in 1..=3 {
            let ch = ch_tft(g, r);
            check(ch.coeff(0, 0) == Q::from_integer(((2 * g - 2) * r) as i64), format!("g={} r={}: ch_0 = {}", g, r, ch.coeff(0, 0)))?;
            let integral = integrate(&ch.mul(&todd(g)));
            check(integral == Q::from_integer(0), format!("g={} r={}: integral {}", g, r, integral))?;
            let chk = hrr_check(g, r);
            check(chk.consistent && chk.alternating_sum == 0, format!("{:?}", chk))?;
        }
    }
    Ok("ch_0 = (2g-2)r and integral 0 = alternating sum for g in 2..4, r in 1..3".into())
}

fn criterion_6(c: &HyperellipticCurve) -> Outcome {
    let omega = Differential::reference(P);
    let other = Differential::new(c.poly(&[0, 1]));
    let mut glued = 0;
    for (q, qf) in hitchin_qs(c) {
        let h = hitchin_section(c, &qf).map_err(|e| e.to_string())?;
        let chart = AffineChart::new(c, &omega).map_err(|e| e.to_string())?;
        let u = cokernel_presentation(c, &h, &chart).map_err(|e| e.to_string())?.u;
        let minus = presentation(&u, SignConvention::Minus);
        let back = recover_endomorphism(c, &chart, &minus).map_err(|e| e.to_string())?;
        check(back == u, format!("q={}: T-action on coker(T - u) differs from u", q))?;
        let plus = presentation(&u, SignConvention::Plus);
        check(recover_higgs_matrix(c, &chart, &plus).map_err(|e| e.to_string())? == u, format!("q={}: plus convention", q))?;
        let rank = recover_bundle_rank(c, &chart, &plus).map_err(|e| e.to_string())?;
        check(rank == 2, format!("q={}: rank {}", q, rank))?;

        let a = AffineChart::adapted(c, &omega, &h.bundle).map_err(|e| e.to_string())?;
        let b = AffineChart::adapted(c, &other, &h.bundle).map_err(|e| e.to_string())?;
        let rep = glue_check(c, &h, &a, &b).map_err(|e| e.to_string())?;
        check(rep.covers, format!("q={}: charts do not cover", q))?;
        check(rep.points.len() == GLUE_SAMPLES, format!("q={}: only {} overlap points", q, rep.points.len()))?;
        check(rep.agrees(), format!("q={}: {}", q, rep.mismatches.join("; ")))?;
        glued += rep.points.len();
    }
    Ok(format!("u recovered exactly, rank 2, glue agrees at {} overlap points", glued))
}

fn criterion_7(c: &HyperellipticCurve) -> Outcome {
    let n = 5;
    let one = CurveFunction::one(P);
    let zero = CurveFunction::zero(P);
    let qs = hitchin_qs(c);
    let gauges = [c.constant(1), c.poly_fn(&[0, 1]), c.poly_fn(&[7, 3]), c.poly_fn(&[2, 0]), c.poly_fn(&[50, 99])];
    for (k, s) in gauges.iter().enumerate() {
        let (q, qf) = &qs[k % qs.len()];
        let h = hitchin_section(c, qf).map_err(|e| e.to_string())?;
        let g = vec![vec![one.clone(), s.clone()], vec![zero.clone(), one.clone()]];
        let t = gauge_transform(c, &h, &g).map_err(|e| e.to_string())?;
        let a = fingerprint(c, &h, n, SEED).map_err(|e| e.to_string())?;
        let b = fingerprint(c, &t, n, SEED).map_err(|e| e.to_string())?;
        check(a == b, format!("q={} gauge {}: fingerprints differ", q, s))?;
    }
    let distinct = [
        (c.constant(0), c.constant(1)),
        (c.constant(1), c.poly_fn(&[0, 1])),
        (c.poly_fn(&[0, 1]), c.poly_fn(&[0, 0, 1])),
        (c.poly_fn(&[0, 0, 1]), c.poly_fn(&[3, 0, 1])),
        (c.constant(0), c.poly_fn(&[5, 4, 3])),
    ];
    for (qa, qb) in &distinct {
        let a = fingerprint(c, &hitchin_section(c, qa).map_err(|e| e.to_string())?, n, SEED).map_err(|e| e.to_string())?;
        let b = fingerprint(c, &hitchin_section(c, qb).map_err(|e| e.to_string())?, n, SEED).map_err(|e| e.to_string())?;
        check(a != b, format!("q={} and q={} share a fingerprint", qa, qb))?;
    }
    Ok("5 gauge-equivalent pairs equal, 5 distinct-q pairs distinct".into())
}

fn criterion_8() -> Outcome {
    let c = common::genus2(11);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    for _ in 0..200 {
        let [a, b, d] = [0; 3].map(|_| Fp::from_u64(rng.gen_range(0..11), 11));
        check((a + b) * d == a * d + b * d && a * b == b * a && (a * b) * d == a * (b * d), "field axioms")?;
        if !a.is_zero() {
            check(a * a.inv().unwrap() == Fp::one(11), "field inverse")?;
        }
        let [pa, pb, pd] = [0; 3].map(|_| {
            let deg = rng.gen_range(0..5);
            Poly::new((0..=deg).map(|_| Fp::from_u64(rng.gen_range(0..11), 11)).collect(), 11)
        });
        check(pa.mul(&pb.add(&pd)) == pa.mul(&pb).add(&pa.mul(&pd)) && pa.mul(&pb) == pb.mul(&pa), "polynomial axioms")?;
    }

    let mut divisors = Vec::new();
    while divisors.len() < 100 {
        let d = common::random_divisor(&c, &mut rng, 3, 3, (-3, 6));
        if (-8..=12).contains(&d.degree()) {
            divisors.push(d);
        }
    }
    for d in &divisors {
        let lhs = h0(&c, d).map_err(|e| e.to_string())? as i64 - h1(&c, d).map_err(|e| e.to_string())? as i64;
        check(lhs == d.degree() - 1, format!("Riemann-Roch fails for {}", d))?;
    }
    for d in divisors.iter().filter(|d| (-5..=10).contains(&d.degree())).take(50) {
        let ours = h0(&c, d).map_err(|e| e.to_string())?;
        check(ours == common::h0_oracle(&c, d), format!("h0({}) = {} disagrees with the reference ansatz", d, ours))?;
    }

    let id = ReducedDivisor::identity(&c);
    for _ in 0..200 {
        let [a, b, d] = [0; 3].map(|_| random_jac_point_with(&c, &mut rng));
        check(cantor_add(&c, &a, &id) == a, "identity")?;
        check(cantor_add(&c, &a, &b) == cantor_add(&c, &b, &a), "commutativity")?;
        check(
            cantor_add(&c, &cantor_add(&c, &a, &b), &d) == cantor_add(&c, &a, &cantor_add(&c, &b, &d)),
            "associativity",
        )?;
        check(cantor_add(&c, &a, &a.negate()).is_identity(), "inverse")?;
    }
    let all = common::all_reduced_divisors(&c);
    let order = all.len() as i64;
    for (u, v) in &all {
        let e = ReducedDivisor::new(&c, u.clone(), v.clone()).map_err(|e| e.to_string())?;
        check(e.mul(&c, order).is_identity(), format!("order of ({}, {}) does not divide {}", u, v, order))?;
    }

    // hypercoh refuses to return when the Euler identity fails
    let h = hitchin_section(&c, &c.poly_fn(&[1, 0, 1])).map_err(|e| e.to_string())?;
    let mut calls = 0;
    for _ in 0..30 {
        let xi = random_jac_point_with(&c, &mut rng);
        let a = Differential::new(Poly::new((0..2).map(|_| Fp::from_u64(rng.gen_range(0..11), 11)).collect(), 11));
        let t = twist_by_line_bundle(&c, &twist_by_form(&h, &a), &xi).map_err(|e| e.to_string())?;
        let (x0, x1, x2) = hypercoh(&c, &TwoTermComplex::from(&t)).map_err(|e| e.to_string())?.dims();
        check(x0 as i64 - x1 as i64 + x2 as i64 == -4, "Euler identity")?;
        calls += 1;
    }
    Ok(format!(
        "200 field/poly cases, RR on 100 divisors, 50 oracle comparisons, 200 Cantor triples, #Jac(F_11) = {}, {} Euler checks",
        order, calls
    ))
}

fn main() -> ExitCode {
    let c = common::genus2(P);
    let start = Instant::now();
    let mut reports = Vec::new();
    let mut setup_error = None;
    for (q, qf) in hitchin_qs(&c) {
        match hitchin_section(&c, &qf).and_then(|h| verify_it1(&c, &h, SAMPLES, SEED)) {
            Ok(rep) => reports.push((q, rep)),
            Err(e) => setup_error = Some(format!("q={}: {}", q, e)),
        }
    }
    let sampling = start.elapsed();

    let criteria: Vec<Criterion> = vec![
        (
            "rank formula: fibers (0, 4, 0)",
            Box::new(|| {
                if let Some(e) = &setup_error {
                    return Err(e.clone());
                }
                criterion_1(&c, &reports).map(|w| format!("{} in {:.1}s", w, sampling.as_secs_f64()))
            }),
        ),
        ("vanishing of H0 and H2", Box::new(|| criterion_2(&c, &reports))),
        ("rank-3 fibers (0, 6, 0)", Box::new(|| criterion_3(&c))),
        ("cohomology table and P^g fiber", Box::new(criterion_4)),
        ("Chern character and HRR", Box::new(criterion_5)),
        ("reconstruction round trip and gluing", Box::new(|| criterion_6(&c))),
        ("fingerprint separation", Box::new(|| criterion_7(&c))),
        ("infrastructure properties", Box::new(criterion_8)),
    ];

    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match run() {
            Ok(w) => println!("PASS [{}] {}: {} ({:.1}s)", k + 1, name, w, t.elapsed().as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL [{}] {}: {}", k + 1, name, e);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

mod common;

use higgs_tft::arith::CurveFunction;
use higgs_tft::higgs::{gauge_transform, hitchin_section};
use higgs_tft::transform::{fiber, fingerprint, sample_points, verify_it1};

#[test]
fn fingerprints_are_deterministic() {
    let c = common::genus2(11);
    let h = hitchin_section(&c, &c.poly_fn(&[0, 0, 1])).unwrap();
    let a = fingerprint(&c, &h, 6, 99).unwrap();
    let b = fingerprint(&c, &h, 6, 99).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.samples.len(), 12);
}

#[test]
fn fingerprints_are_gauge_invariant() {
    let c = common::genus2(11);
    let h = hitchin_section(&c, &c.poly_fn(&[0, 0, 1])).unwrap();
    let one = CurveFunction::one(11);
    let g = vec![vec![one.clone(), c.poly_fn(&[2, 1])], vec![CurveFunction::zero(11), one]];
    let t = gauge_transform(&c, &h, &g).unwrap();
    assert_ne!(t.field, h.field);
    assert_eq!(fingerprint(&c, &h, 5, 3).unwrap(), fingerprint(&c, &t, 5, 3).unwrap());
}

#[test]
fn different_differentials_give_different_fingerprints() {
    let c = common::genus2(11);
    let a = hitchin_section(&c, &c.poly_fn(&[0, 0, 1])).unwrap();
    let b = hitchin_section(&c, &c.poly_fn(&[1, 0, 1])).unwrap();
    assert_ne!(fingerprint(&c, &a, 4, 0).unwrap(), fingerprint(&c, &b, 4, 0).unwrap());
}

#[test]
fn parallel_rows_match_sequential_evaluation() {
    let c = common::genus2(11);
    let h = hitchin_section(&c, &c.poly_fn(&[3, 0, 1])).unwrap();
    let report = verify_it1(&c, &h, 6, 7).unwrap();
    let (interior, boundary) = sample_points(&c, 6, 7);
    let seq: Vec<_> = interior.iter().chain(&boundary).map(|pt| fiber(&c, &h, pt).unwrap()).collect();
    assert_eq!(report.rows.len(), seq.len());
    for (row, f) in report.rows.iter().zip(&seq) {
        assert_eq!(row.point, f.point.record());
        assert_eq!((row.h0, row.h1, row.h2), f.dims);
    }
    assert!(report.all_pass());
    assert_eq!(report.expected, (0, 4, 0));
}

#[test]
fn fibers_have_constant_rank_for_stable_bundles() {
    let c = common::genus2(13);
    for q in [c.poly_fn(&[0, 0, 1]), c.poly_fn(&[5, 1, 1]), c.constant(0)] {
        let h = hitchin_section(&c, &q).unwrap();
        let report = verify_it1(&c, &h, 5, 11).unwrap();
        assert!(report.hypotheses_met);
        assert!(report.all_pass(), "q = {}: {:?}", q, report.violations().collect::<Vec<_>>());
    }
}

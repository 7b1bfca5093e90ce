use super::*;
use crate::field::FieldSpec;
use crate::parse::parse_poly;
use crate::poly::{T, Y, Z};

fn qq() -> FieldSpec {
    FieldSpec::Rationals
}

fn poly(s: &str, f: FieldSpec) -> MultiPoly {
    parse_poly(s, f).unwrap()
}

fn surf(f: FieldSpec, d: u32, e: u32, p: &str, q: &str) -> SurfacePresentation {
    SurfacePresentation::parse(f, d, e, p, q).unwrap()
}

fn s_a() -> SurfacePresentation {
    surf(qq(), 2, 4, "Z^2", "Y^2")
}

fn s_b() -> SurfacePresentation {
    surf(qq(), 2, 4, "Z^2", "Y^2 - X*Y*Z^2")
}

fn scalars(f: FieldSpec, l: i64, g: i64) -> (FieldElement, FieldElement) {
    (f.from_i64(l), f.from_i64(g))
}

fn pw(f: FieldSpec, l: i64, g: i64, delta: &str, fpoly: &str) -> PartialWitness {
    let (lambda, gamma) = scalars(f, l, g);
    PartialWitness {
        lambda,
        gamma,
        delta: poly(delta, f),
        f: poly(fpoly, f),
    }
}

fn strings(ps: &[MultiPoly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

#[test]
fn invariants_detect_differing_d() {
    let s1 = surf(qq(), 1, 1, "Z^2", "Y^2");
    let s2 = surf(qq(), 2, 1, "Z^2", "Y^2");
    assert!(matches!(invariant_check(&s1, &s2).unwrap(), InvariantOutcome::NotIsomorphic(r) if r.contains("(d, e)")));
    assert_eq!(invariant_check(&s1, &s1).unwrap(), InvariantOutcome::Compatible);
}

#[test]
fn invariants_s_equal_one_is_advisory() {
    let s1 = surf(qq(), 1, 2, "Z^2", "Y");
    let s2 = surf(qq(), 2, 1, "Z^2", "Y");
    match invariant_check(&s1, &s2).unwrap() {
        InvariantOutcome::OutOfScope { advisory: Some(a), .. } => assert!(a.contains("= 3 vs") && a.contains("holds")),
        other => panic!("{other:?}"),
    }
    let r1 = surf(qq(), 2, 1, "Z", "Y^2");
    assert!(matches!(invariant_check(&r1, &r1).unwrap(), InvariantOutcome::OutOfScope { advisory: None, .. }));
}

#[test]
fn p_condition_search_over_f3() {
    let f3 = FieldSpec::prime(3).unwrap();
    let s = surf(f3, 2, 1, "Z^2", "Y^2");
    let ws = solve_p_condition(&s, &s, 1, None).unwrap();
    assert_eq!(ws.len(), 4);
    for w in &ws {
        assert!(w.delta.is_zero() && w.f.is_zero());
    }
    let pairs: Vec<(String, String)> = ws.iter().map(|w| (w.lambda.to_string(), w.gamma.to_string())).collect();
    assert_eq!(pairs, [("1", "1"), ("1", "2"), ("2", "1"), ("2", "2")].map(|(a, b)| (a.to_string(), b.to_string())));
}

#[test]
fn p_condition_verify_mode() {
    let (one, _) = scalars(qq(), 1, 1);
    let zero = poly("0", qq());
    assert_eq!(p_condition(&s_a(), &s_a(), &one, &one, &zero).unwrap(), Some(zero.clone()));
    let s2 = surf(qq(), 2, 4, "Z^2 + X^2*Z", "Y^2");
    assert_eq!(p_condition(&s_a(), &s2, &one, &one, &zero).unwrap().unwrap().to_string(), "Z");
    assert_eq!(p_condition(&s_a(), &s_a(), &one, &one, &poly("X", qq())).unwrap(), None);
    assert!(solve_p_condition(&s_a(), &s_a(), 1, None).is_err());
}

#[test]
fn q_condition_forward_certificate() {
    let w = check_q_condition(&s_a(), &s_b(), &pw(qq(), 1, 1, "0", "0"), &GbConfig::default())
        .unwrap()
        .unwrap();
    assert_eq!(strings(&w.h_cert.cofactors), ["-X^3 + 1", "-X*Y", "0"]);
    assert_eq!(w.nu.to_string(), "1");
    assert!(w.h_cert_rev.certificate().verifies(&w.h_cert_rev.generators, s_a().q()));

    let id = check_q_condition(&s_a(), &s_a(), &pw(qq(), 1, 1, "0", "0"), &GbConfig::default())
        .unwrap()
        .unwrap();
    assert_eq!(strings(&id.h_cert.cofactors), ["1", "0", "0"]);
}

#[test]
fn q_condition_failure() {
    let s1 = surf(qq(), 1, 1, "Z^2", "Y^2");
    let s2 = surf(qq(), 1, 1, "Z^2", "Y^2 + Z");
    let got = check_q_condition(&s1, &s2, &pw(qq(), 1, 1, "0", "0"), &GbConfig::default()).unwrap();
    assert!(got.is_none());
}

#[test]
fn build_map_for_the_pair() {
    let cfg = GbConfig::default();
    let w = check_q_condition(&s_a(), &s_b(), &pw(qq(), 1, 1, "0", "0"), &cfg).unwrap().unwrap();
    let m = build_isomorphism(&s_a(), &s_b(), &w).unwrap();
    assert_eq!(m.images[T].to_string(), "-X^3*T + T");
    assert_eq!(strings(&m.images[..3]), ["X", "Y", "Z"]);
    assert!(verify_ring_map(&m, &cfg).unwrap().is_isomorphism());
}

#[test]
fn build_scaled_map() {
    let cfg = GbConfig::default();
    let w = check_q_condition(&s_a(), &s_a(), &pw(qq(), 1, 2, "0", "0"), &cfg).unwrap().unwrap();
    let m = build_isomorphism(&s_a(), &s_a(), &w).unwrap();
    assert_eq!(m.images[Y].to_string(), "4*Y");
    assert_eq!(m.images[Z].to_string(), "2*Z");
    assert_eq!(m.images[T].to_string(), "16*T");
    let v = verify_ring_map(&m, &cfg).unwrap();
    assert!(v.is_isomorphism(), "{:?}", v.diagnostics);
}

fn triangular_map(t_image: &str, pre: Option<&str>) -> RingMap {
    let f = qq();
    let images = vec![poly("X", f), poly("Y", f), poly("Z", f), poly(t_image, f)];
    let preimages = pre.map(|p| vec![Some(poly("X", f)), Some(poly("Y", f)), Some(poly("Z", f)), Some(poly(p, f))]);
    RingMap::new(Ring::Surface(s_a()), Ring::Surface(s_b()), images, preimages).unwrap()
}

#[test]
fn ring_map_verification() {
    let cfg = GbConfig::default();
    let phi = triangular_map("(1+X^3)*T + Y*Z^2", Some("(1-X^3)*T"));
    assert_eq!(verify_ring_map(&phi, &cfg).unwrap().status, MapStatus::Isomorphism);

    let no_pre = triangular_map("(1+X^3)*T + Y*Z^2", None);
    assert_eq!(verify_ring_map(&no_pre, &cfg).unwrap().status, MapStatus::SurjectivityUnverified);

    let broken = triangular_map("T", None);
    let v = verify_ring_map(&broken, &cfg).unwrap();
    assert_eq!(v.status, MapStatus::NotWellDefined);
    assert_eq!(v.relations[1].image.to_string(), "X^4*T - Y^2");
    assert!(!s_b().is_zero_in_b(&v.relations[1].image).unwrap());

    let bad_pre = triangular_map("(1+X^3)*T + Y*Z^2", Some("T"));
    assert_eq!(verify_ring_map(&bad_pre, &cfg).unwrap().status, MapStatus::PreimageRejected);
}

#[test]
fn decide_pairs() {
    let params = SearchParams::default();
    let v = decide_isomorphic(&s_a(), &s_b(), &params).unwrap();
    assert!(v.is_isomorphic(), "{:?}", v.log);

    let f2 = FieldSpec::prime(2).unwrap();
    let v = decide_isomorphic(&surf(f2, 1, 1, "Z^2", "Y^2"), &surf(f2, 1, 2, "Z^2", "Y^2"), &params).unwrap();
    assert_eq!(v.status_name(), "NOT_ISOMORPHIC");

    let v = decide_isomorphic(&s_a(), &s_a(), &params).unwrap();
    let w = v.witness().unwrap();
    assert!(w.lambda.is_one() && w.gamma.is_one() && w.delta.is_zero() && w.f.is_zero());
}

#[test]
fn decide_exhausts_over_finite_field() {
    let f3 = FieldSpec::prime(3).unwrap();
    let s1 = surf(f3, 1, 1, "Z^2", "Y^2");
    let s2 = surf(f3, 1, 1, "Z^2", "Y^2 + Z");
    let v = decide_isomorphic(&s1, &s2, &SearchParams::default()).unwrap();
    assert_eq!(v.status_name(), "NOT_ISOMORPHIC", "{:?}", v.log);
    let lowered = SearchParams {
        delta_bound: Some(0),
        ..SearchParams::default()
    };
    let v = decide_isomorphic(&s1, &s2, &lowered).unwrap();
    assert_eq!(v.status_name(), "NO_WITNESS_WITHIN_BOUNDS");
}

fn scaling(s: &SurfacePresentation, l: i64, g: i64) -> RingMap {
    let f = s.field();
    let (lambda, gamma) = scalars(f, l, g);
    let (d, e, r, sd) = (s.d() as i64, s.e() as i64, s.r() as i64, s.s() as i64);
    let nu = lambda.pow(-d).mul(&gamma.pow(r));
    let tau = nu.pow(sd).mul(&lambda.pow(-e));
    let images = vec![
        poly("X", f).scale(&lambda),
        poly("Y", f).scale(&nu),
        poly("Z", f).scale(&gamma),
        poly("T", f).scale(&tau),
    ];
    let pre = vec![
        Some(poly("X", f).scale(&lambda.inv())),
        Some(poly("Y", f).scale(&nu.inv())),
        Some(poly("Z", f).scale(&gamma.inv())),
        Some(poly("T", f).scale(&tau.inv())),
    ];
    RingMap::new(Ring::Surface(s.clone()), Ring::Surface(s.clone()), images, Some(pre)).unwrap()
}

#[test]
fn scaling_automorphism_passes_all_checks() {
    let cfg = GbConfig::default();
    let m = scaling(&s_a(), 2, 3);
    assert_eq!(m.images[T].to_string(), "81/256*T");
    let rep = verify_automorphism(&s_a(), &m, &cfg).unwrap();
    assert!(rep.all_passed(), "{rep:?}");
    assert_eq!(rep.lambda.unwrap().to_string(), "2");
    assert_eq!(rep.nu.unwrap().to_string(), "9/4");

    let id = scaling(&s_a(), 1, 1);
    let rep = verify_automorphism(&s_a(), &id, &cfg).unwrap();
    assert!(rep.all_passed());
}

#[test]
fn shifted_x_fails_check_ii() {
    let f = qq();
    let s = s_a();
    let naive = vec![poly("X + 1", f), poly("Y", f), poly("Z", f), poly("T", f)];
    let m = RingMap::new(Ring::Surface(s.clone()), Ring::Surface(s.clone()), naive, None).unwrap();
    let rep = verify_automorphism(&s, &m, &GbConfig::default()).unwrap();
    assert!(!rep.well_defined);
    assert!(rep.check_ii.is_none());

    let images = vec![poly("X + 1", f), poly("(X+1)^2*Z^2", f), poly("(X+1)^2*Z", f), poly("Z^4", f)];
    let m = RingMap::new(Ring::Surface(s.clone()), Ring::Surface(s.clone()), images, None).unwrap();
    let rep = verify_automorphism(&s, &m, &GbConfig::default()).unwrap();
    assert!(rep.well_defined);
    let ii = rep.check_ii.unwrap();
    assert!(!ii.passed);
    assert!(ii.evidence.contains("\\psi(x) =\\lambda x"));
    assert!(rep.lambda.is_none());
}

#[test]
fn composite_automorphisms() {
    let cfg = GbConfig::default();
    let s = s_a();
    let a = scaling(&s, 2, 3);
    let b = scaling(&s, -1, 5);
    let ab = a.then(&b).unwrap();
    let rep = verify_automorphism(&s, &ab, &cfg).unwrap();
    assert!(rep.all_passed());
    assert_eq!(rep.lambda.unwrap().to_string(), "-2");
    let v = verify_ring_map(&ab, &cfg).unwrap();
    assert!(v.is_isomorphism());
}

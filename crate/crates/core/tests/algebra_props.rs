mod common;

use ddsurf::groebner::{buchberger, ideals_equal, is_member, IdealBasis};
use ddsurf::poly::{X, Y, Z};
use ddsurf::{parse_poly, FieldSpec, GbConfig, Monomial, MultiPoly, SurfacePresentation, VarSet};
use proptest::prelude::*;

fn poly_in(field: FieldSpec, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let exps = prop::collection::vec(0..=max_exp, 4);
    prop::collection::vec((exps, -6i64..=6), 0..=max_terms).prop_map(move |terms| {
        let vars = VarSet::xyzt();
        let mut p = MultiPoly::zero(field, &vars);
        for (e, c) in terms {
            p.add_term(Monomial::from_exponents(&e), field.from_i64(c));
        }
        p
    })
}

fn qq() -> FieldSpec {
    FieldSpec::Rationals
}

fn f5() -> FieldSpec {
    FieldSpec::Prime { p: 5 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_over_q(a in poly_in(qq(), 3, 5), b in poly_in(qq(), 3, 5), c in poly_in(qq(), 2, 4)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&a), MultiPoly::zero(qq(), &VarSet::xyzt()));
    }

    #[test]
    fn ring_axioms_over_f5(a in poly_in(f5(), 3, 5), b in poly_in(f5(), 3, 5), c in poly_in(f5(), 2, 4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        let five = MultiPoly::from_i64(f5(), &VarSet::xyzt(), 5);
        prop_assert!((&five * &a).is_zero());
    }

    #[test]
    fn parse_inverts_display(a in poly_in(qq(), 4, 6), b in poly_in(f5(), 4, 6)) {
        prop_assert_eq!(parse_poly(&a.to_string(), qq()).unwrap(), a);
        prop_assert_eq!(parse_poly(&b.to_string(), f5()).unwrap(), b);
    }

    #[test]
    fn division_by_monic(a in poly_in(qq(), 4, 6), tail in poly_in(qq(), 1, 3), k in 1u32..4) {
        let vars = VarSet::xyzt();
        let tail = tail.truncate_var(Z, 1);
        let m = &MultiPoly::var(qq(), &vars, Z).pow(k) + &tail;
        let (quo, rem) = a.divide_by_monic(&m, Z).unwrap();
        prop_assert_eq!(&(&quo * &m) + &rem, a);
        prop_assert!(rem.degree_in(Z).is_none_or(|d| d < k));
    }

    #[test]
    fn substitution_is_a_homomorphism(a in poly_in(qq(), 2, 4), b in poly_in(qq(), 2, 4), imgs in prop::collection::vec(poly_in(qq(), 1, 3), 4)) {
        let sum = (&a + &b).compose(&imgs).unwrap();
        let prod = (&a * &b).compose(&imgs).unwrap();
        let (ca, cb) = (a.compose(&imgs).unwrap(), b.compose(&imgs).unwrap());
        prop_assert_eq!(sum, &ca + &cb);
        prop_assert_eq!(prod, &ca * &cb);
    }

    #[test]
    fn truncated_composition_matches(a in poly_in(f5(), 3, 5), imgs in prop::collection::vec(poly_in(f5(), 2, 3), 4), k in 1u32..5) {
        let full = a.compose(&imgs).unwrap().truncate_var(X, k);
        prop_assert_eq!(a.compose_truncated(&imgs, X, k).unwrap(), full);
    }

    #[test]
    fn x_valuation_is_additive(a in poly_in(qq(), 3, 4), b in poly_in(qq(), 3, 4)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let va = a.x_adic_valuation().unwrap();
        let vb = b.x_adic_valuation().unwrap();
        prop_assert_eq!((&a * &b).x_adic_valuation(), Some(va + vb));
        prop_assert!(a.div_var_pow(X, va).is_some());
        prop_assert!(a.div_var_pow(X, va + 1).is_none());
    }

    #[test]
    fn groebner_basis_is_idempotent(gens in prop::collection::vec(poly_in(FieldSpec::Prime { p: 3 }, 2, 3), 1..4)) {
        let gens: Vec<MultiPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let cfg = GbConfig::default();
        let basis = IdealBasis::grevlex(gens.clone()).unwrap();
        let gb = buchberger(&basis, &cfg).unwrap();
        prop_assert!(gb.self_check());
        let again = buchberger(&IdealBasis::grevlex(gb.elements().to_vec()).unwrap(), &cfg).unwrap();
        prop_assert_eq!(again.elements(), gb.elements());
        let rebuilt = IdealBasis::grevlex(gb.elements().to_vec()).unwrap();
        prop_assert!(ideals_equal(&basis, &rebuilt, &cfg).unwrap());
        for g in &gens {
            let cert = is_member(g, &basis, &cfg).unwrap();
            prop_assert!(cert.is_some_and(|c| c.verifies(&gens, g)));
        }
    }

    #[test]
    fn cofactor_combinations_are_members(gens in prop::collection::vec(poly_in(f5(), 2, 3), 1..3), cofs in prop::collection::vec(poly_in(f5(), 2, 3), 3)) {
        let gens: Vec<MultiPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let target = gens.iter().zip(&cofs).fold(MultiPoly::zero(f5(), &VarSet::xyzt()), |acc, (g, c)| &acc + &(g * c));
        let basis = IdealBasis::grevlex(gens.clone()).unwrap();
        let cert = is_member(&target, &basis, &GbConfig::default()).unwrap();
        prop_assert!(cert.is_some_and(|c| c.verifies(&gens, &target)));
    }

    #[test]
    fn laurent_image_is_a_homomorphism(a in poly_in(qq(), 2, 4), b in poly_in(qq(), 2, 4)) {
        let s = SurfacePresentation::parse(qq(), 2, 3, "Z^2 + X*Z", "Y^2 + Z").unwrap();
        let la = s.laurent_nf(&a).unwrap();
        let lb = s.laurent_nf(&b).unwrap();
        prop_assert_eq!(s.laurent_nf(&(&a * &b)).unwrap(), la.mul(&lb));
        prop_assert_eq!(s.laurent_nf(&(&a + &b)).unwrap(), la.add(&lb));
        for rel in s.relations() {
            prop_assert!(s.is_zero_in_b(&(&rel * &a)).unwrap());
        }
    }

    #[test]
    fn laurent_zero_test_agrees_with_groebner(a in poly_in(FieldSpec::Prime { p: 3 }, 2, 3), b in poly_in(FieldSpec::Prime { p: 3 }, 1, 3)) {
        let f3 = FieldSpec::Prime { p: 3 };
        let s = SurfacePresentation::parse(f3, 1, 1, "Z^2", "Y^2").unwrap();
        let rels = s.relations();
        let target = &(&a * &rels[0]) + &b;
        let basis = IdealBasis::grevlex(rels).unwrap();
        let gb_zero = is_member(&target, &basis, &GbConfig::default()).unwrap().is_some();
        prop_assert_eq!(s.is_zero_in_b(&target).unwrap(), gb_zero);
    }
}

#[test]
fn laurent_images_of_generators() {
    let s = SurfacePresentation::parse(qq(), 2, 4, "Z^2", "Y^2").unwrap();
    let vars = s.vars();
    let y = s.laurent_nf(&MultiPoly::var(qq(), &vars, Y)).unwrap();
    assert_eq!(y.to_string(), "z^2*x^-2");
    let t = s.laurent_nf(&MultiPoly::var(qq(), &vars, 3)).unwrap();
    assert_eq!(t.to_string(), "z^4*x^-8");
}

#[test]
fn oracle_self_check() {
    let f2 = FieldSpec::Prime { p: 2 };
    let vars = VarSet::new(&["X", "Y"]).unwrap();
    let p = |t: &str| ddsurf::parse_poly_in(t, f2, &vars).unwrap();
    assert!(common::bounded_member(&p("X*Y + Y^2"), &[p("X + Y")], 2));
    assert!(!common::bounded_member(&p("X"), &[p("X*Y"), p("Y^2")], 6));
    assert!(common::bounded_member(&p("1"), &[p("X"), p("X + 1")], 1));
    assert_eq!(common::eval_mod(&p("X^2 + Y + 1"), &[1, 1]), 1);
}

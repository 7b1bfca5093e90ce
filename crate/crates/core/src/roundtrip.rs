//! Random isomorphic pairs `(S1, S2)` built from a known witness.
//!
//! `P2` is obtained by transporting `γ^r P1 + X^d f` through the inverse of
//! `X ↦ λX, Z ↦ γZ + δ`, and `Q2` by transporting
//! `F = h1 Q1 + h2 G + h3 X^e` through the inverse of the full triangular map,
//! where `h1 = ν^s + a X^d` and `h2 = a Y^(s-1) + b` keep `F` monic of degree
//! `s` in `Y` up to the factor `ν^s`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classify::{nu_of, PartialWitness};
use crate::error::Result;
use crate::field::{FieldElement, FieldSpec};
use crate::poly::{Monomial, MultiPoly, VarSet, X, Y, Z};
use crate::surface::SurfacePresentation;

#[derive(Clone, Debug)]
pub struct RoundTripInstance {
    pub s1: SurfacePresentation,
    pub s2: SurfacePresentation,
    pub witness: PartialWitness,
    /// `(h1, h2, h3)` used to build `Q2`.
    pub h: [MultiPoly; 3],
}

fn element<R: Rng>(rng: &mut R, field: FieldSpec) -> FieldElement {
    let p = field.characteristic().max(2);
    field.from_i64(rng.random_range(0..p) as i64)
}

fn unit<R: Rng>(rng: &mut R, field: FieldSpec) -> FieldElement {
    let p = field.characteristic().max(3);
    field.from_i64(rng.random_range(1..p) as i64)
}

/// Random polynomial with exponent of variable `v` at most `bounds[v]`.
fn random_poly<R: Rng>(rng: &mut R, field: FieldSpec, bounds: [u32; 4]) -> MultiPoly {
    let vars = VarSet::xyzt();
    let mut out = MultiPoly::zero(field, &vars);
    for a in 0..=bounds[0] {
        for b in 0..=bounds[1] {
            for c in 0..=bounds[2] {
                for t in 0..=bounds[3] {
                    if rng.random_bool(0.5) {
                        out.add_term(Monomial::from_exponents(&[a, b, c, t]), element(rng, field));
                    }
                }
            }
        }
    }
    out
}

/// One instance over `field` (a prime field). Degrees: `r, s ∈ {2, 3}`,
/// `d, e ∈ {1, 2, 3}`.
pub fn random_instance<R: Rng>(rng: &mut R, field: FieldSpec) -> Result<RoundTripInstance> {
    let vars = VarSet::xyzt();
    let var = |v| MultiPoly::var(field, &vars, v);
    let r = rng.random_range(2..=3u32);
    let s = rng.random_range(2..=3u32);
    let d = rng.random_range(1..=3u32);
    let e = rng.random_range(1..=3u32);

    let mut p1 = var(Z).pow(r);
    for j in 0..r {
        p1 = &p1 + &(&random_poly(rng, field, [1, 0, 0, 0]) * &var(Z).pow(j));
    }
    let mut q1 = var(Y).pow(s);
    for j in 0..s {
        q1 = &q1 + &(&random_poly(rng, field, [1, 0, 1, 0]) * &var(Y).pow(j));
    }
    let s1 = SurfacePresentation::new(field, d, e, p1.clone(), q1.clone())?;

    let lambda = unit(rng, field);
    let gamma = unit(rng, field);
    let delta = random_poly(rng, field, [d + e - 1, 0, 0, 0]);
    let f = random_poly(rng, field, [1, 0, r - 1, 0]);
    let nu = nu_of(d, r, &lambda, &gamma);
    let g = f.scale(&lambda.pow(-(d as i64)));
    let inv = crate::classify::inverse_images(&s1, &lambda, &gamma, &delta, &nu, &g)?;

    let xd = var(X).pow(d);
    let p2 = (&p1.scale(&gamma.pow(r as i64)) + &(&xd * &f)).compose(&inv)?;

    let a = random_poly(rng, field, [1, 0, 1, 0]);
    let b = random_poly(rng, field, [0, s - 2, 1, 0]);
    let h1 = &MultiPoly::constant(field, &vars, nu.pow(s as i64)) + &(&a * &xd);
    let h2 = &(&a * &var(Y).pow(s - 1)) + &b;
    let h3 = random_poly(rng, field, [1, s - 1, 1, 0]);
    let big_f = &(&(&h1 * &q1) + &(&h2 * &s1.g_relation())) + &(&h3 * &var(X).pow(e));
    let q2 = big_f.compose(&inv)?;
    let s2 = SurfacePresentation::new(field, d, e, p2, q2)?;
    Ok(RoundTripInstance {
        s1,
        s2,
        witness: PartialWitness { lambda, gamma, delta, f },
        h: [h1, h2, h3],
    })
}

/// `count` instances from one seed, alternating between `F_3` and `F_5`.
pub fn seeded_instances(seed: u64, count: usize) -> Result<Vec<RoundTripInstance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields = [FieldSpec::Prime { p: 3 }, FieldSpec::Prime { p: 5 }];
    (0..count).map(|i| random_instance(&mut rng, fields[i % 2])).collect()
}

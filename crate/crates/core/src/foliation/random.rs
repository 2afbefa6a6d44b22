//! Randomized integrable families, for batch experiments and property tests.

use rand::Rng;

use crate::exterior::{split_contraction, DiffForm, VectorField};
use crate::polyring::{Monomial, Polynomial, Rational};

use super::Foliation;

/// Families with an obvious integrability mechanism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `i_R i_V (dx₀∧dx₁∧dx₂)` on `P²` for a random homogeneous field `V`.
    Plane,
    /// `b·g·df − a·f·dg` with `deg f = a`, `deg g = b` (rational first
    /// integral `f^b / g^a`).
    Rational,
    /// A random linear pullback `P³ ⇢ P²` of a random plane foliation.
    LinearPullback,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "plane" => Some(Family::Plane),
            "rational" => Some(Family::Rational),
            "pullback" => Some(Family::LinearPullback),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Plane => "plane",
            Family::Rational => "rational",
            Family::LinearPullback => "pullback",
        }
    }
}

/// Homogeneous polynomial of degree `d` with small integer coefficients on
/// a random subset of the monomials (at least one term).
pub fn random_homogeneous<R: Rng>(rng: &mut R, nvars: usize, d: u32, density: f64, bound: i64) -> Polynomial {
    let monos = Monomial::all_of_degree(nvars, d);
    loop {
        let terms = monos.iter().filter_map(|m| {
            if rng.gen_bool(density) {
                let c = rng.gen_range(-bound..=bound);
                (c != 0).then(|| (*m, Rational::from_int(c)))
            } else {
                None
            }
        });
        let p = Polynomial::from_terms(nvars, terms.collect::<Vec<_>>());
        if !p.is_zero() {
            return p;
        }
    }
}

/// The 1-form `i_R i_V vol` on `P²` with `V` of degree `d` (so `e = d + 2`).
pub fn random_plane_form<R: Rng>(rng: &mut R, d: u32) -> DiffForm {
    let v = VectorField::new((0..3).map(|_| random_homogeneous(rng, 3, d, 0.7, 3)).collect()).expect("same ring");
    split_contraction(&[v]).expect("one field on P²")
}

/// `b·g·df − a·f·dg` on `P^{nvars−1}`.
pub fn random_rational_form<R: Rng>(rng: &mut R, nvars: usize, a: u32, b: u32) -> DiffForm {
    let f = random_homogeneous(rng, nvars, a, 0.6, 3);
    let g = random_homogeneous(rng, nvars, b, 0.6, 3);
    let df = DiffForm::function(f.clone()).d();
    let dg = DiffForm::function(g.clone()).d();
    df.mul_poly(&g)
        .scale(&Rational::from_int(b as i64))
        .sub(&dg.mul_poly(&f).scale(&Rational::from_int(a as i64)))
        .expect("same ring")
}

/// Random linear map `P³ ⇢ P²` (three random linear forms in four variables).
pub fn random_linear_map<R: Rng>(rng: &mut R) -> Vec<Polynomial> {
    (0..3).map(|_| random_homogeneous(rng, 4, 1, 0.8, 2)).collect()
}

/// Draw members of `family` until one passes validation (at most `tries`).
pub fn random_foliation<R: Rng>(rng: &mut R, family: Family, degree: u32, tries: usize) -> Option<Foliation> {
    for _ in 0..tries {
        let w = match family {
            Family::Plane => random_plane_form(rng, degree.max(1)),
            Family::Rational => {
                let a = rng.gen_range(1..=degree.max(1));
                let b = degree.max(1) + 1 - a.min(degree.max(1));
                random_rational_form(rng, 4, a, b.max(1))
            }
            Family::LinearPullback => {
                let w2 = random_plane_form(rng, degree.max(1));
                let map = random_linear_map(rng);
                match w2.pullback(&map) {
                    Ok(w) => w,
                    Err(_) => continue,
                }
            }
        };
        if let Ok(f) = Foliation::new(w) {
            return Some(f);
        }
    }
    None
}

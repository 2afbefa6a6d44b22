//! The example corpus and the constructors of the split-type families.

use crate::cli::parse::{parse_form, Vars};
use crate::exterior::{split_contraction, DiffForm, VectorField};
use crate::polyring::{Polynomial, Rational};

use super::{Foliation, FoliationError};

fn form(n: usize, text: &str) -> DiffForm {
    parse_form(text, &Vars::indexed(n)).expect("corpus expression parses")
}

fn poly(n: usize, text: &str) -> Polynomial {
    crate::cli::parse::parse_polynomial(text, &Vars::indexed(n)).expect("corpus expression parses")
}

/// `ω = yz²dx + x²z dy − (x²y + xyz) dz` on `P²` (degree 2, `e = 4`).
pub fn p2a_form() -> DiffForm {
    form(3, "x1*x2^2*dx0 + x0^2*x2*dx1 - (x0^2*x1 + x0*x1*x2)*dx2")
}

pub fn p2a() -> Foliation {
    Foliation::new(p2a_form()).expect("valid corpus foliation")
}

/// `ω = x₀²x₂ dx₀ + x₁²x₂ dx₁ − (x₀³ + x₁³) dx₂` on `P²` (`e = 4`).
pub fn p2b_form() -> DiffForm {
    form(3, "x0^2*x2*dx0 + x1^2*x2*dx1 - (x0^3 + x1^3)*dx2")
}

pub fn p2b() -> Foliation {
    Foliation::new(p2b_form()).expect("valid corpus foliation")
}

/// `ω = x₁x₂ dx₀ + x₀x₂ dx₁ − 2x₀x₁ dx₂` on `P²` (`e = 3`).
pub fn p2c_form() -> DiffForm {
    form(3, "x1*x2*dx0 + x0*x2*dx1 - 2*x0*x1*dx2")
}

pub fn p2c() -> Foliation {
    Foliation::new(p2c_form()).expect("valid corpus foliation")
}

/// The member of the projective-transverse-structure component of
/// `𝓕¹(P³, 6)` obtained from `P₂ = x₀²−x₁²`, `Q₂ = x₀²+x₁²`,
/// `R₂ = x₀²+x₁²+x₀x₁`.
pub fn transverse_form() -> DiffForm {
    form(
        4,
        "(-x0^4*x1 - x0^4*x3 - 2*x0^3*x1*x3 + x0^2*x1^2*x3 - 2*x0*x1^3*x3 - 2*x0^2*x1*x2*x3 \
          - x0^2*x1*x3^2 + x0*x1^2*x3^2 - x1^3*x3^2 + x0^2*x2*x3^2 - x1^2*x2*x3^2 - x1*x2^2*x3^2)*dx0 \
         + (x0^5 + x0^4*x3 + x0^2*x1^2*x3 + 2*x0^3*x2*x3 + x0^3*x3^2 - x0^2*x1*x3^2 + x0*x1^2*x3^2 \
          + x0^2*x2*x3^2 + x1^2*x2*x3^2 + x0*x2^2*x3^2)*dx1 \
         + (-x0^3*x3^2 - x0^2*x1*x3^2 + x0*x1^2*x3^2 - x1^3*x3^2)*dx2 \
         + (x0^5 + x0^4*x1 - x0^3*x1^2 + x0^2*x1^3)*dx3",
    )
}

pub fn transverse() -> Foliation {
    Foliation::new(transverse_form()).expect("valid corpus foliation")
}

/// `x₁dx₀ − x₀dx₁ + x₃dx₂ − x₂dx₃` on `P³`: descends but is not integrable.
pub fn non_integrable_example() -> DiffForm {
    form(4, "x1*dx0 - x0*dx1 + x3*dx2 - x2*dx3")
}

/// `x₀(x₁dx₀ − x₀dx₁)` on `P²`: integrable with a divisorial singular set.
pub fn divisorial_example() -> DiffForm {
    form(3, "x0*(x1*dx0 - x0*dx1)")
}

/// The commuting fields `X, Y` of the Dulac family `𝒟(p, q)` on `P³`.
pub fn dulac_fields(p: u32, q: u32, alpha: &Rational, beta: &Rational) -> (VectorField, VectorField) {
    let n = 4;
    let x = |i: usize| Polynomial::var(n, i);
    let c = |k: i64| Rational::from_int(k);
    let (pi, qi) = (p as i64, q as i64);
    let x0pq = x(0).pow(p + q - 1);
    let coupling = &(beta * &c(qi + 1)) - &(alpha * &c(pi + 1));
    let xf = VectorField::new(vec![
        Polynomial::zero(n),
        (&x0pq * &x(1)).scale(&c(-(qi + 1))),
        (&x0pq * &x(2)).scale(&c(pi + 1)),
        &(&x0pq * &x(3)).scale(&c(pi - qi)) + &(&x(1).pow(p) * &x(2).pow(q)).scale(&coupling),
    ])
    .expect("same ring");
    let third = &(beta * &c(pi)) - &(alpha * &c(qi));
    let yf = VectorField::new(vec![
        Polynomial::zero(n),
        x(1).scale(&-beta),
        x(2).scale(alpha),
        x(3).scale(&-&third),
    ])
    .expect("same ring");
    (xf, yf)
}

/// `ω_{(p,q)} = i_R i_Y i_X (dx₀∧dx₁∧dx₂∧dx₃)`, normalized to content one
/// and positive leading coefficient.
pub fn dulac_form(p: u32, q: u32, alpha: &Rational, beta: &Rational) -> DiffForm {
    let (xf, yf) = dulac_fields(p, q, alpha, beta);
    split_contraction(&[yf, xf]).expect("two fields on P³").normalized()
}

pub fn dulac(p: u32, q: u32, alpha: &Rational, beta: &Rational) -> Result<Foliation, FoliationError> {
    Foliation::new(dulac_form(p, q, alpha, beta))
}

/// The printed `ω_{(1,1)}` for `α = 1`, `β = 2`.
pub fn dulac_11_printed() -> DiffForm {
    form(
        4,
        "(6*x1^2*x2^2 + 2*x0*x1*x2*x3)*dx0 + (-2*x0*x1*x2^2 - 2*x0^2*x2*x3)*dx1 \
         + (-4*x0*x1^2*x2 - 2*x0^2*x1*x3)*dx2 + 2*x0^2*x1*x2*dx3",
    )
}

/// The fields `S, X, Y` spanning a copy of `𝔰𝔩(2)` acting on `P⁴`.
pub fn sl2_fields() -> (VectorField, VectorField, VectorField) {
    let n = 5;
    let field = |comps: [&str; 5]| VectorField::new(comps.iter().map(|c| poly(n, c)).collect()).expect("same ring");
    let s = field(["x0", "-x1", "2*x2", "-2*x3", "0"]);
    let x = field(["x4", "x3", "x0", "0", "x1"]);
    let y = field(["-4*x2", "-6*x4", "0", "-4*x1", "-6*x0"]);
    (s, x, y)
}

/// `ω = i_R i_S i_X i_Y (dx₀∧…∧dx₄)`, normalized.
pub fn sl2_form() -> DiffForm {
    let (s, x, y) = sl2_fields();
    split_contraction(&[s, x, y]).expect("three fields on P⁴").normalized()
}

pub fn sl2_example() -> Foliation {
    Foliation::new(sl2_form()).expect("valid corpus foliation")
}

/// Names of the corpus members (CLI `example` command and golden fixtures).
pub const CORPUS: [&str; 6] = ["p2a", "p2b", "p2c", "dulac", "sl2", "transverse"];

/// Corpus member by name; `dulac` uses `(p, q, α, β) = (1, 1, 1, 2)`.
pub fn corpus_member(name: &str) -> Option<Foliation> {
    Some(match name {
        "p2a" => p2a(),
        "p2b" => p2b(),
        "p2c" => p2c(),
        "dulac" => dulac(1, 1, &Rational::one(), &Rational::from_int(2)).expect("valid corpus foliation"),
        "sl2" => sl2_example(),
        "transverse" => transverse(),
        _ => return None,
    })
}

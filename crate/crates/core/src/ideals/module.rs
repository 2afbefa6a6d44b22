//! Submodules of `Ω^p_S ≅ S^r` generated by differential forms: membership by
//! module Gröbner bases, and ideal quotients `(N : α)`.

use std::collections::BTreeMap;

use crate::exterior::DiffForm;
use crate::polyring::{Monomial, MonomialOrder, Polynomial};

use super::engine::{groebner, make_monic, Basis, GbOptions, ModuleOrder, Ring, Term, Vector};
use super::Ideal;

/// Index of every strictly increasing `p`-tuple of `0..nvars`.
fn tuple_index(nvars: usize, p: usize) -> BTreeMap<Vec<usize>, u32> {
    fn rec(start: usize, nvars: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..nvars {
            cur.push(i);
            rec(i + 1, nvars, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    rec(0, nvars, p, &mut Vec::new(), &mut all);
    all.into_iter().enumerate().map(|(k, t)| (t, k as u32)).collect()
}

fn form_to_vector(ring: &Ring, index: &BTreeMap<Vec<usize>, u32>, w: &DiffForm, shift: &Monomial) -> Vector {
    let mut v: Vector = Vec::new();
    for (idx, f) in w.components() {
        let c = index[idx];
        v.extend(f.terms().iter().map(|(m, a)| (Term { m: m.mul(shift), c }, a.clone())));
    }
    ring.sort(&mut v);
    v
}

/// The submodule of `Ω^p` generated by finitely many `p`-forms, with a
/// (possibly degree-truncated) Gröbner basis for membership tests.
pub struct FormSubmodule {
    basis: Basis,
    index: BTreeMap<Vec<usize>, u32>,
    degree_bound: Option<u32>,
}

impl FormSubmodule {
    /// `degree_bound` bounds the coefficient degree up to which membership is
    /// exact; generators must be homogeneous forms.
    pub fn new(nvars: usize, p: usize, gens: &[DiffForm], degree_bound: Option<u32>) -> FormSubmodule {
        let index = tuple_index(nvars, p);
        let ring = Ring::module(nvars, MonomialOrder::Grevlex, ModuleOrder::Top, vec![0; index.len()]);
        let input: Vec<Vector> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| form_to_vector(&ring, &index, g, &Monomial::one()))
            .collect();
        let gb = groebner(&ring, input, GbOptions { degree_bound, stop_on_unit: false });
        FormSubmodule { basis: Basis::from_reduced(ring, gb), index, degree_bound }
    }

    fn check_degree(&self, w: &DiffForm, shift: &Monomial) {
        if let (Some(b), Some(d)) = (self.degree_bound, w.coefficient_degree().value()) {
            assert!(d + shift.degree() <= b, "membership test above the truncation degree");
        }
    }

    /// Normal form of `m·w` (as a vector; empty iff `m·w` lies in the submodule).
    pub(crate) fn reduce_shifted(&self, w: &DiffForm, m: &Monomial) -> Vector {
        self.check_degree(w, m);
        let v = form_to_vector(&self.basis.ring, &self.index, w, m);
        self.basis.reduce(v, true)
    }

    pub fn contains(&self, w: &DiffForm) -> bool {
        self.reduce_shifted(w, &Monomial::one()).is_empty()
    }

    /// Flatten a normal-form vector to `(column, coefficient)` pairs keyed by
    /// `(component, monomial)`.
    pub(crate) fn vector_entries(v: &Vector) -> impl Iterator<Item = ((u32, Monomial), &crate::polyring::Rational)> {
        v.iter().map(|(t, a)| ((t.c, t.m), a))
    }
}

/// `(N : w) = { h : h·w ∈ N }` for the submodule `N` generated by `gens`,
/// from a position-over-term basis of `⟨(w, e), (g, 0)⟩` whose elements
/// supported on the extra component `e` generate the quotient.
pub fn module_quotient(nvars: usize, gens: &[DiffForm], w: &DiffForm) -> Ideal {
    let p = w.degree();
    let index = tuple_index(nvars, p);
    let r = index.len() as u32;
    let shift = w.coefficient_degree().value().unwrap_or(0);
    let mut shifts = vec![0; index.len()];
    shifts.push(shift);
    let ring = Ring::module(nvars, MonomialOrder::Grevlex, ModuleOrder::Pot, shifts);
    let mut input: Vec<Vector> = Vec::new();
    let mut first = form_to_vector(&ring, &index, w, &Monomial::one());
    first.push((Term { m: Monomial::one(), c: r }, crate::polyring::Rational::one()));
    ring.sort(&mut first);
    input.push(first);
    for g in gens.iter().filter(|g| !g.is_zero()) {
        input.push(form_to_vector(&ring, &index, g, &Monomial::one()));
    }
    let gb = groebner(&ring, input, GbOptions::default());
    let gens: Vec<Polynomial> = gb
        .into_iter()
        .filter(|v| v[0].0.c == r)
        .map(|mut v| {
            make_monic(&mut v);
            ring.component(&v, r)
        })
        .collect();
    Ideal::new(nvars, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::DiffForm;

    #[test]
    fn quotient_of_rank_one_agrees_with_ideal_quotient() {
        // N = ⟨x0^2 dx0, x0 x1 dx0⟩ ⊂ Ω¹ (only component dx0 used) and w = x0 dx0.
        let n = 2;
        let x0 = Polynomial::var(n, 0);
        let x1 = Polynomial::var(n, 1);
        let dx0 = DiffForm::dx(n, 0);
        let gens = vec![dx0.mul_poly(&(&x0 * &x0)), dx0.mul_poly(&(&x0 * &x1))];
        let q = module_quotient(n, &gens, &dx0.mul_poly(&x0));
        assert!(q.equals(&Ideal::new(n, vec![x0.clone(), x1.clone()])));
        let sub = FormSubmodule::new(n, 1, &gens, None);
        assert!(sub.contains(&dx0.mul_poly(&(&x0 * &(&x0 + &x1)))));
        assert!(!sub.contains(&dx0.mul_poly(&x1.pow(2))));
    }
}

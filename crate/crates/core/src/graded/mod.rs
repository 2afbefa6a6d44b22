//! Degreewise linear algebra: graded pieces of the unfolding module, the
//! unfolding ideal assembled degree by degree, and Koszul homology.

pub mod linalg;

use std::collections::HashMap;

use serde::Serialize;

use crate::exterior::DiffForm;
use crate::foliation::Foliation;
use crate::ideals::module::FormSubmodule;
use crate::ideals::Ideal;
use crate::polyring::{count_of_degree, Monomial, Polynomial, Rational};
use linalg::{kernel, rank, rank_mod_p, RationalEchelon, SparseVec, CERT_PRIME};

/// Default number of extra degrees checked after the last generator degree.
pub const DEFAULT_SLACK: u32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GradedError {
    #[error("unfolding ideal did not stabilize: new generators appear in degree {degree} > d_max = {d_max}; increase d_max")]
    IncreaseDegree { degree: u32, d_max: u32 },
    #[error("d_max = {d_max} is below the twist e = {e}")]
    DegreeBoundTooSmall { d_max: u32, e: u32 },
    #[error("the assembled unfolding ideal is the unit ideal")]
    UnitIdeal,
    #[error("module action needs a class of positive degree")]
    ZeroDegree,
}

/// Basis of `𝕌(ω)(a)` modulo the span of `f·(0, ω)`.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: u32,
    pub basis: Vec<(Polynomial, DiffForm)>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the projection `(h, η) ↦ h`.
    pub fn projection_rank(&self) -> usize {
        let nvars = self.basis.first().map_or(0, |(h, _)| h.nvars());
        let monos = Monomial::all_of_degree(nvars, self.degree);
        let idx: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        let cols: Vec<SparseVec> = self.basis.iter().map(|(h, _)| poly_vec(h, &idx)).collect();
        rank(&cols)
    }
}

/// Homological data of `ω∧` at position `p`, internal degree `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulReport {
    pub p: usize,
    pub a: u32,
    pub dim_cycles: usize,
    pub dim_boundaries: usize,
    pub dim_homology: usize,
    /// True when the ranks were certified by a modular computation alone.
    pub modular_certificate: bool,
}

/// Per-degree record of the assembly of `I(ω)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRecord {
    pub degree: u32,
    /// `dim S(a)`.
    pub dim_s: usize,
    /// Degree-`a` dimension of the ideal generated in lower degrees.
    pub dim_generated: usize,
    /// `dim I(ω)(a)` computed directly.
    pub dim_direct: usize,
    pub new_generators: usize,
}

/// The unfolding ideal together with its stabilization certificate.
#[derive(Clone, Debug)]
pub struct UnfoldingIdeal {
    pub ideal: Ideal,
    pub d_max: u32,
    pub slack: u32,
    pub degrees: Vec<DegreeRecord>,
}

impl UnfoldingIdeal {
    /// The degrees `d_max < a ≤ d_max + slack` where generated and direct
    /// dimensions agree.
    pub fn certified(&self) -> bool {
        self.degrees
            .iter()
            .filter(|r| r.degree > self.d_max)
            .all(|r| r.dim_generated == r.dim_direct)
            && self.degrees.iter().filter(|r| r.degree > self.d_max).count() == self.slack as usize
    }
}

fn poly_vec(h: &Polynomial, idx: &HashMap<Monomial, usize>) -> SparseVec {
    let mut v: SparseVec = h.terms().iter().map(|(m, c)| (idx[m], c.clone())).collect();
    v.sort_by_key(|(k, _)| *k);
    v
}

/// Coordinates of homogeneous `p`-forms of a fixed coefficient degree.
struct FormCoords {
    nvars: usize,
    index: HashMap<(Vec<usize>, Monomial), usize>,
    basis: Vec<(Vec<usize>, Monomial)>,
}

fn tuples(nvars: usize, p: usize) -> Vec<Vec<usize>> {
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
    let mut out = Vec::new();
    rec(0, nvars, p, &mut Vec::new(), &mut out);
    out
}

impl FormCoords {
    /// Basis of `Ω^p(a)`: forms `m dx_I` with `deg m = a − p`.
    fn new(nvars: usize, p: usize, a: i64) -> FormCoords {
        let mut basis = Vec::new();
        if a - p as i64 >= 0 && p <= nvars {
            let monos = Monomial::all_of_degree(nvars, (a - p as i64) as u32);
            for t in tuples(nvars, p) {
                for m in &monos {
                    basis.push((t.clone(), *m));
                }
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
        FormCoords { nvars, index, basis }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn element(&self, k: usize) -> DiffForm {
        let (t, m) = &self.basis[k];
        let p = t.len();
        DiffForm::from_components(self.nvars, p, [(t.clone(), Polynomial::term(self.nvars, Rational::one(), *m))])
            .expect("valid tuple")
    }

    fn vector(&self, w: &DiffForm) -> SparseVec {
        let mut v: SparseVec = Vec::new();
        for (t, f) in w.components() {
            for (m, c) in f.terms() {
                v.push((self.index[&(t.clone(), *m)], c.clone()));
            }
        }
        v.sort_by_key(|(k, _)| *k);
        v
    }

    fn from_vector(&self, v: &[(usize, Rational)], p: usize) -> DiffForm {
        DiffForm::from_components(
            self.nvars,
            p,
            v.iter().map(|(k, c)| {
                let (t, m) = &self.basis[*k];
                (t.clone(), Polynomial::term(self.nvars, c.clone(), *m))
            }),
        )
        .expect("valid tuple")
    }
}

/// Whether `(h, η)` satisfies `a·h·dω = e·ω∧(η − dh)`.
pub fn satisfies_unfolding_equation(f: &Foliation, a: u32, h: &Polynomial, eta: &DiffForm) -> bool {
    let e = Rational::from_int(f.e() as i64);
    let lhs = f.domega().mul_poly(h).scale(&Rational::from_int(a as i64));
    let dh = DiffForm::function(h.clone()).d();
    let diff = if eta.is_zero() { dh.scale(&Rational::from_int(-1)) } else { eta.sub(&dh).expect("1-forms") };
    let rhs = f.omega().wedge(&diff).expect("same ring").scale(&e);
    lhs.sub(&rhs).map(|d| d.is_zero()).unwrap_or(false)
}

/// Basis of `𝕌(ω)(a)`: solves the unfolding equation over the monomial
/// bases of `S(a) × Ω¹(a)` and quotients by `S(a−e)·(0, ω)`.
pub fn unfolding_space(f: &Foliation, a: u32) -> GradedPiece {
    let n = f.nvars();
    let e = f.e();
    let s_monos = Monomial::all_of_degree(n, a);
    let ns = s_monos.len();
    let omega1 = FormCoords::new(n, 1, a as i64);
    let omega2 = FormCoords::new(n, 2, (a + e) as i64);
    let er = Rational::from_int(e as i64);
    let ar = Rational::from_int(a as i64);
    // Unknown columns: h-monomials, then η basis elements.
    let mut cols: Vec<SparseVec> = Vec::with_capacity(ns + omega1.dim());
    for m in &s_monos {
        let h = Polynomial::term(n, Rational::one(), *m);
        let dh = DiffForm::function(h.clone()).d();
        let w = f
            .domega()
            .mul_poly(&h)
            .scale(&ar)
            .add(&f.omega().wedge(&dh).unwrap().scale(&er))
            .unwrap();
        cols.push(omega2.vector(&w));
    }
    for k in 0..omega1.dim() {
        let w = f.omega().wedge(&omega1.element(k)).unwrap().scale(&-&er);
        cols.push(omega2.vector(&w));
    }
    let solutions = kernel(&cols);
    // Quotient by f·(0, ω).
    let mut ech = RationalEchelon::new();
    if a >= e {
        for m in Monomial::all_of_degree(n, a - e) {
            let w = f.omega().mul_poly(&Polynomial::term(n, Rational::one(), m));
            let v: SparseVec = omega1.vector(&w).into_iter().map(|(k, c)| (ns + k, c)).collect();
            ech.insert(v);
        }
    }
    let mut basis = Vec::new();
    for sol in solutions {
        if ech.insert(sol.clone()) {
            let h = Polynomial::from_terms(
                n,
                sol.iter().filter(|(k, _)| *k < ns).map(|(k, c)| (s_monos[*k], c.clone())),
            );
            let eta_v: SparseVec = sol.iter().filter(|(k, _)| *k >= ns).map(|(k, c)| (k - ns, c.clone())).collect();
            basis.push((h, omega1.from_vector(&eta_v, 1)));
        }
    }
    GradedPiece { degree: a, basis }
}

/// `f·(h, η) = (fh, ((a+b)/a)·fη + (1/a)(a·h·df − b·f·dh))` for `f ∈ S(b)`
/// and a class of degree `a`.
pub fn module_action(
    f: &Polynomial,
    a: u32,
    h: &Polynomial,
    eta: &DiffForm,
) -> Result<(Polynomial, DiffForm), GradedError> {
    if a == 0 {
        return Err(GradedError::ZeroDegree);
    }
    let b = f.total_degree().unwrap_or(0);
    let ar = Rational::from_int(a as i64);
    let br = Rational::from_int(b as i64);
    let scale = &Rational::from_int((a + b) as i64) / &ar;
    let df = DiffForm::function(f.clone()).d();
    let dh = DiffForm::function(h.clone()).d();
    let t1 = eta.mul_poly(f).scale(&scale);
    let t2 = df.mul_poly(h).scale(&ar).sub(&dh.mul_poly(f).scale(&br)).unwrap().scale(&ar.recip());
    let eta2 = if t1.is_zero() { t2 } else { t1.add(&t2).unwrap() };
    Ok((f * h, eta2))
}

/// Assemble `I(ω)` degree by degree up to `d_max`, then certify for
/// `slack` more degrees that no new generators appear.
///
/// `I(ω)(a) = { h ∈ S(a) : h·dω ∈ ω∧Ω¹(a) }`; membership of `h·dω` in the
/// submodule `⟨ω∧dx_i⟩` is a normal-form computation modulo its Gröbner
/// basis, so `I(ω)(a)` is the kernel of the linear map `h ↦ NF(h·dω)`
/// restricted to the standard monomials of the ideal generated so far.
pub fn assemble_unfolding_ideal(f: &Foliation, d_max: u32, slack: u32) -> Result<UnfoldingIdeal, GradedError> {
    let e = f.e();
    if d_max < e {
        return Err(GradedError::DegreeBoundTooSmall { d_max, e });
    }
    let n = f.nvars();
    let top = d_max + slack;
    let b2gens: Vec<DiffForm> = (0..n).map(|i| f.omega().wedge(&DiffForm::dx(n, i)).unwrap()).collect();
    // Coefficients of h·dω have degree a + e − 2.
    let sub = FormSubmodule::new(n, 2, &b2gens, Some(top + e - 2));
    let domega = f.domega();
    if sub.contains(domega) {
        return Err(GradedError::UnitIdeal);
    }
    let mut gens: Vec<Polynomial> = Vec::new();
    let mut ideal = Ideal::zero(n);
    let mut degrees = Vec::new();
    for a in 1..=top {
        let leads: Vec<Monomial> = ideal.gb().iter().map(|g| g.leading().unwrap().0).collect();
        let std: Vec<Monomial> = Monomial::all_of_degree(n, a)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect();
        let mut col_index: HashMap<(u32, Monomial), usize> = HashMap::new();
        let cols: Vec<SparseVec> = std
            .iter()
            .map(|m| {
                let nf = sub.reduce_shifted(domega, m);
                let mut v: SparseVec = FormSubmodule::vector_entries(&nf)
                    .map(|(key, c)| {
                        let next = col_index.len();
                        (*col_index.entry(key).or_insert(next), c.clone())
                    })
                    .collect();
                v.sort_by_key(|(k, _)| *k);
                v
            })
            .collect();
        let ker = kernel(&cols);
        let dim_s = count_of_degree(n, a as i64);
        let dim_generated = dim_s - std.len();
        degrees.push(DegreeRecord {
            degree: a,
            dim_s,
            dim_generated,
            dim_direct: dim_generated + ker.len(),
            new_generators: ker.len(),
        });
        if ker.is_empty() {
            continue;
        }
        if a > d_max {
            return Err(GradedError::IncreaseDegree { degree: a, d_max });
        }
        for v in ker {
            let h = Polynomial::from_terms(n, v.into_iter().map(|(k, c)| (std[k], c))).primitive();
            gens.push(h);
        }
        ideal = Ideal::new(n, gens.clone());
    }
    if ideal.is_unit() {
        return Err(GradedError::UnitIdeal);
    }
    let mut reduced = ideal.gb().iter().map(|g| g.primitive()).collect::<Vec<_>>();
    reduced.sort_by(|x, y| y.leading().unwrap().0.cmp_grevlex(&x.leading().unwrap().0, n));
    Ok(UnfoldingIdeal { ideal: Ideal::new(n, reduced), d_max, slack, degrees })
}

/// Dimensions for the Koszul complex `Ω^{p−1}(a−e) → Ω^p(a) → Ω^{p+1}(a+e)`
/// with differential `ω∧`, at position `p`.
pub fn koszul_homology_dim(f: &Foliation, p: usize, a: u32) -> KoszulReport {
    let n = f.nvars();
    let e = f.e() as i64;
    let map_cols = |src_p: usize, src_a: i64| -> (usize, Vec<SparseVec>) {
        let src = FormCoords::new(n, src_p, src_a);
        let dst = FormCoords::new(n, src_p + 1, src_a + e);
        let cols = (0..src.dim())
            .map(|k| {
                let w = f.omega().wedge(&src.element(k)).unwrap();
                dst.vector(&w)
            })
            .collect();
        (src.dim(), cols)
    };
    let (dim_p, out_cols) = map_cols(p, a as i64);
    let in_cols = if p == 0 { Vec::new() } else { map_cols(p - 1, a as i64 - e).1 };
    // Modular ranks are lower bounds for the rational ranks.
    let out_lb = rank_mod_p(&out_cols, CERT_PRIME);
    let in_lb = rank_mod_p(&in_cols, CERT_PRIME);
    if let (Some(o), Some(i)) = (out_lb, in_lb) {
        // cycles ≤ dim − o and boundaries ≥ i, with boundaries ≤ cycles.
        if dim_p - o == i {
            return KoszulReport { p, a, dim_cycles: i, dim_boundaries: i, dim_homology: 0, modular_certificate: true };
        }
    }
    let cycles = dim_p - rank(&out_cols);
    let boundaries = rank(&in_cols);
    KoszulReport {
        p,
        a,
        dim_cycles: cycles,
        dim_boundaries: boundaries,
        dim_homology: cycles - boundaries,
        modular_certificate: false,
    }
}

/// Whether `dω` is a boundary `ω∧η` in degree `e` (it never is, for a foliation).
pub fn domega_is_boundary(f: &Foliation) -> bool {
    let n = f.nvars();
    let e = f.e() as i64;
    let src = FormCoords::new(n, 1, 0);
    let dst = FormCoords::new(n, 2, e);
    let mut ech = RationalEchelon::new();
    for k in 0..src.dim() {
        ech.insert(dst.vector(&f.omega().wedge(&src.element(k)).unwrap()));
    }
    ech.reduce(dst.vector(f.domega())).is_empty()
}

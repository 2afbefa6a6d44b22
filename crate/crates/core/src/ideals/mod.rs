//! Gröbner bases and the ideal-theoretic toolbox over ℚ[x₀,…,xₙ].

pub(crate) mod engine;
mod hilbert;
pub(crate) mod module;
mod zerodim;

use std::fmt;
use std::sync::OnceLock;

pub use hilbert::{hilbert_numerator, HilbertPolynomial};
pub use zerodim::{squarefree_part, UniPoly};

use crate::polyring::{Monomial, MonomialOrder, Polynomial, Rational, MAX_VARS};
use engine::{groebner, Basis, GbOptions, Ring, TermOrder};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdealError {
    #[error("ideals live in different rings")]
    RingMismatch,
    #[error("the divisor ideal is zero")]
    ZeroDivisor,
    #[error("the ideal is not homogeneous")]
    Nonhomogeneous,
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("the ideal is not zero-dimensional (no univariate eliminant in x{0})")]
    NotZeroDimensional(usize),
    #[error("the point does not lie on the variety of the ideal")]
    PointNotOnVariety,
    #[error("the ideal defines a positive-dimensional projective scheme")]
    PositiveDimensional,
    #[error("the origin of the affine cone is not a projective point")]
    OriginPoint,
    #[error("the point ideal is not a maximal homogeneous prime of a closed point")]
    NotAPoint,
    #[error("at most {MAX_VARS} variables are supported (including auxiliary ones)")]
    TooManyVariables,
}

/// A polynomial ideal with a write-once cache of its reduced grevlex basis.
#[derive(Clone)]
pub struct Ideal {
    nvars: usize,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

/// A reduced Gröbner basis together with the order it is reduced for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    /// Monic for `order`, sorted descending by `order`-leading monomial.
    pub polys: Vec<Polynomial>,
    pub leads: Vec<Monomial>,
}

fn grevlex_ring(nvars: usize) -> Ring {
    Ring::ideal(nvars, TermOrder::Mono(MonomialOrder::Grevlex))
}

pub(crate) fn gb_polys(nvars: usize, order: TermOrder, gens: &[Polynomial], opts: GbOptions) -> Vec<Polynomial> {
    let ring = Ring::ideal(nvars, order);
    let input = gens.iter().filter(|f| !f.is_zero()).map(|f| ring.from_poly(f, 0)).collect();
    groebner(&ring, input, opts).iter().map(|v| ring.to_poly(v)).collect()
}

/// Exact quotient `h / g`, or `None` when `g` does not divide `h`.
pub fn exact_division(h: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    let n = h.nvars();
    let (lm, lc) = g.leading()?.clone();
    let mut rest = h.clone();
    let mut quotient = Polynomial::zero(n);
    while let Some((m, c)) = rest.leading().cloned() {
        let q = lm.divide_into(&m)?;
        let coef = &c / &lc;
        quotient = &quotient + &Polynomial::term(n, coef.clone(), q);
        rest = rest.add_scaled(g, &-&coef, &q);
    }
    Some(quotient)
}

impl Ideal {
    pub fn new(nvars: usize, gens: Vec<Polynomial>) -> Ideal {
        assert!(gens.iter().all(|g| g.nvars() == nvars), "generator ring mismatch");
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { nvars, gens, gb: OnceLock::new() }
    }

    pub fn zero(nvars: usize) -> Ideal {
        Ideal::new(nvars, vec![])
    }

    pub fn unit(nvars: usize) -> Ideal {
        Ideal::new(nvars, vec![Polynomial::one(nvars)])
    }

    /// The irrelevant ideal `𝔪 = (x₀,…,xₙ)`.
    pub fn irrelevant(nvars: usize) -> Ideal {
        Ideal::new(nvars, (0..nvars).map(|i| Polynomial::var(nvars, i)).collect())
    }

    /// Homogeneous ideal of a projective point with rational coordinates.
    pub fn of_point(point: &[Rational]) -> Result<Ideal, IdealError> {
        let n = point.len();
        let Some(k) = point.iter().position(|c| !c.is_zero()) else {
            return Err(IdealError::OriginPoint);
        };
        let gens = (0..n)
            .filter(|&j| j != k)
            .map(|j| {
                &Polynomial::var(n, j).scale(&point[k]) - &Polynomial::var(n, k).scale(&point[j])
            })
            .collect();
        Ok(Ideal::new(n, gens))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    /// Reduced grevlex Gröbner basis (cached, computed at most once).
    pub fn gb(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| {
            gb_polys(self.nvars, TermOrder::Mono(MonomialOrder::Grevlex), &self.gens, GbOptions::default())
        })
    }

    pub fn groebner_basis(&self, order: MonomialOrder) -> GroebnerBasis {
        let polys: Vec<Polynomial> = if order == MonomialOrder::Grevlex {
            self.gb().to_vec()
        } else {
            gb_polys(self.nvars, TermOrder::Mono(order), &self.gens, GbOptions::default())
        };
        let ring = Ring::ideal(self.nvars, TermOrder::Mono(order));
        let leads = polys.iter().map(|p| ring.from_poly(p, 0)[0].0.m).collect();
        GroebnerBasis { order, polys, leads }
    }

    fn basis(&self) -> Basis {
        let ring = grevlex_ring(self.nvars);
        let polys = self.gb().iter().map(|p| ring.from_poly(p, 0)).collect();
        Basis::from_reduced(ring, polys)
    }

    /// Fully reduced normal form modulo the grevlex basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let b = self.basis();
        b.ring.to_poly(&b.reduce(b.ring.from_poly(f, 0), true))
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        assert_eq!(f.nvars(), self.nvars, "ring mismatch");
        if f.is_zero() {
            return true;
        }
        let b = self.basis();
        b.reduce(b.ring.from_poly(f, 0), false).is_empty()
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality by double inclusion.
    pub fn equals(&self, other: &Ideal) -> bool {
        self.nvars == other.nvars && self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.gb();
        gb.len() == 1 && gb[0].is_constant()
    }

    fn check_ring(&self, other: &Ideal) -> Result<(), IdealError> {
        if self.nvars != other.nvars {
            return Err(IdealError::RingMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_ring(other)?;
        Ok(Ideal::new(self.nvars, self.gens.iter().chain(&other.gens).cloned().collect()))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_ring(other)?;
        let mut gens = Vec::new();
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f * g);
            }
        }
        Ok(Ideal::new(self.nvars, gens))
    }

    /// `I ∩ J`, eliminating `t` from `t·I + (1−t)·J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(self.nvars));
        }
        let n = self.nvars;
        if n + 1 > MAX_VARS {
            return Err(IdealError::TooManyVariables);
        }
        let t = Polynomial::var(n + 1, n);
        let one_minus_t = &Polynomial::one(n + 1) - &t;
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|f| &t * &f.with_nvars(n + 1)).collect();
        gens.extend(other.gens.iter().map(|g| &one_minus_t * &g.with_nvars(n + 1)));
        let order = if self.is_homogeneous() && other.is_homogeneous() {
            TermOrder::HomElim(1)
        } else {
            TermOrder::Mono(MonomialOrder::Block(1))
        };
        Ok(Ideal::new(n, eliminate(n + 1, 1, order, &gens)))
    }

    /// `(I : g)`, as `(I ∩ (g)) / g`.
    pub fn quotient_poly(&self, g: &Polynomial) -> Result<Ideal, IdealError> {
        if g.is_zero() {
            return Err(IdealError::ZeroDivisor);
        }
        if g.is_constant() || self.contains(g) {
            return Ok(if g.is_constant() { self.clone() } else { Ideal::unit(self.nvars) });
        }
        let gi = Ideal::new(self.nvars, vec![g.clone()]);
        let inter = self.intersect(&gi)?;
        let gens = inter
            .gb()
            .iter()
            .map(|h| exact_division(h, g).expect("element of (g) is divisible by g"))
            .collect();
        Ok(Ideal::new(self.nvars, gens))
    }

    /// `(I : J) = ∩_g (I : g)` over generators `g` of `J`.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_ring(other)?;
        if other.is_zero() {
            return Err(IdealError::ZeroDivisor);
        }
        let mut acc: Option<Ideal> = None;
        for g in other.gb() {
            let q = self.quotient_poly(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => {
                    if q.contains_ideal(&a) {
                        a
                    } else if a.contains_ideal(&q) {
                        q
                    } else {
                        a.intersect(&q)?
                    }
                }
            });
        }
        Ok(reduced_copy(acc.expect("nonzero divisor has a generator")))
    }

    /// `(I : g^∞)` by eliminating `t` from `I + (1 − t·g)`.
    pub fn saturate_poly(&self, g: &Polynomial) -> Result<Ideal, IdealError> {
        if g.is_zero() {
            return Err(IdealError::ZeroDivisor);
        }
        if g.is_constant() {
            return Ok(self.clone());
        }
        let n = self.nvars;
        if n + 1 > MAX_VARS {
            return Err(IdealError::TooManyVariables);
        }
        if self.is_homogeneous() {
            if let Some(i) = single_variable(g) {
                return Ok(self.saturate_variable(i));
            }
        }
        let t = Polynomial::var(n + 1, n);
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|f| f.with_nvars(n + 1)).collect();
        gens.push(&Polynomial::one(n + 1) - &(&t * &g.with_nvars(n + 1)));
        Ok(Ideal::new(n, eliminate(n + 1, 1, TermOrder::Mono(MonomialOrder::Block(1)), &gens)))
    }

    /// `(I : x_i^∞)` for homogeneous `I`: with `x_i` last in grevlex, divide
    /// each basis element by its largest power of `x_i`.
    fn saturate_variable(&self, i: usize) -> Ideal {
        let n = self.nvars;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, n - 1);
        let swapped: Vec<Polynomial> = self.gens.iter().map(|f| f.remap_vars(n, &perm)).collect();
        let gb = gb_polys(n, TermOrder::Mono(MonomialOrder::Grevlex), &swapped, GbOptions::default());
        let gens = gb
            .iter()
            .map(|f| {
                let k = f.var_valuation(n - 1);
                f.div_monomial(&Monomial::var_pow(n - 1, k)).unwrap().remap_vars(n, &perm)
            })
            .collect();
        Ideal::new(n, gens)
    }

    /// Same as [`Ideal::saturate_poly`] but always via elimination (test oracle).
    pub fn saturate_poly_by_elimination(&self, g: &Polynomial) -> Ideal {
        let n = self.nvars;
        let t = Polynomial::var(n + 1, n);
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|f| f.with_nvars(n + 1)).collect();
        gens.push(&Polynomial::one(n + 1) - &(&t * &g.with_nvars(n + 1)));
        Ideal::new(n, eliminate(n + 1, 1, TermOrder::Mono(MonomialOrder::Block(1)), &gens))
    }

    /// `(I : J^∞) = ∩_g (I : g^∞)`.
    pub fn saturate(&self, other: &Ideal) -> Result<Ideal, IdealError> {
        self.check_ring(other)?;
        if other.is_zero() {
            return Err(IdealError::ZeroDivisor);
        }
        let mut acc: Option<Ideal> = None;
        for g in other.gb() {
            let q = self.saturate_poly(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => {
                    if q.contains_ideal(&a) {
                        a
                    } else if a.contains_ideal(&q) {
                        q
                    } else {
                        a.intersect(&q)?
                    }
                }
            });
        }
        Ok(reduced_copy(acc.expect("nonzero ideal has a generator")))
    }

    /// `(I : 𝔪^∞)`.
    pub fn saturate_irrelevant(&self) -> Ideal {
        self.saturate(&Ideal::irrelevant(self.nvars)).expect("𝔪 is nonzero")
    }

    /// `f ∈ √I`, decided by `1 ∈ I + (1 − t·f)`.
    pub fn radical_contains(&self, f: &Polynomial) -> bool {
        if f.is_zero() || self.contains(f) {
            return true;
        }
        let n = self.nvars;
        assert!(n < MAX_VARS, "too many variables for the Rabinowitsch trick");
        let t = Polynomial::var(n + 1, n);
        let mut gens: Vec<Polynomial> = self.gb().iter().map(|g| g.with_nvars(n + 1)).collect();
        gens.push(&Polynomial::one(n + 1) - &(&t * &f.with_nvars(n + 1)));
        let gb = gb_polys(
            n + 1,
            TermOrder::Mono(MonomialOrder::Grevlex),
            &gens,
            GbOptions { degree_bound: None, stop_on_unit: true },
        );
        gb.len() == 1 && gb[0].is_constant()
    }

    /// `√I = √J`.
    pub fn radical_equal(&self, other: &Ideal) -> Result<bool, IdealError> {
        self.check_ring(other)?;
        Ok(self.gens.iter().all(|f| other.radical_contains(f))
            && other.gens.iter().all(|g| self.radical_contains(g)))
    }

    /// `I + J = (1)`.
    pub fn is_comaximal(&self, other: &Ideal) -> Result<bool, IdealError> {
        Ok(self.sum(other)?.is_unit())
    }

    /// Hilbert polynomial of `S/I`.
    pub fn hilbert_polynomial(&self) -> Result<HilbertPolynomial, IdealError> {
        if !self.is_homogeneous() {
            return Err(IdealError::Nonhomogeneous);
        }
        let leads: Vec<Monomial> = self.gb().iter().map(|g| g.leading().unwrap().0).collect();
        Ok(HilbertPolynomial::from_numerator(&hilbert_numerator(&leads, self.nvars), self.nvars))
    }

    /// Hilbert function of `S/I` at degree `d`, by counting standard monomials.
    pub fn hilbert_function(&self, d: u32) -> usize {
        let leads: Vec<Monomial> = self.gb().iter().map(|g| g.leading().unwrap().0).collect();
        Monomial::all_of_degree(self.nvars, d)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .count()
    }

    /// Dimension of `Proj(S/I)`, `-1` when empty.
    pub fn projective_dimension(&self) -> Result<i64, IdealError> {
        if !self.is_homogeneous() {
            return Err(IdealError::Nonhomogeneous);
        }
        if self.is_unit() {
            return Err(IdealError::UnitIdeal);
        }
        Ok(self.hilbert_polynomial()?.degree())
    }

    /// Affine chart `x_k = 1`, in the ring without `x_k`.
    pub fn dehomogenize(&self, k: usize) -> Ideal {
        Ideal::new(self.nvars - 1, self.gens.iter().map(|g| g.dehomogenize(k)).collect())
    }

    /// Image under a ring map `x_i ↦ images[i]`.
    pub fn map(&self, images: &[Polynomial]) -> Ideal {
        let target = images.first().map_or(self.nvars, |f| f.nvars());
        Ideal::new(target, self.gens.iter().map(|g| g.substitute(images).expect("arity")).collect())
    }

    /// The reduced grevlex basis, monic, sorted by increasing leading
    /// monomial (`["x2","x0*x1"]`).
    pub fn canonical_basis(&self) -> Vec<Polynomial> {
        let n = self.nvars;
        let mut gb = self.gb().to_vec();
        gb.sort_by(|a, b| a.leading().unwrap().0.cmp_grevlex(&b.leading().unwrap().0, n));
        gb
    }

    /// Canonical generator strings, see [`Ideal::canonical_basis`].
    pub fn canonical_strings(&self) -> Vec<String> {
        self.canonical_basis().iter().map(|g| g.to_string()).collect()
    }

    pub fn canonical_strings_with(&self, names: &[String]) -> Vec<String> {
        self.canonical_basis().iter().map(|g| g.display_with(names).to_string()).collect()
    }
}

/// Basis elements free of the last `k` variables, mapped back to `nvars - k` variables.
fn eliminate(nvars: usize, k: usize, order: TermOrder, gens: &[Polynomial]) -> Vec<Polynomial> {
    let gb = gb_polys(nvars, order, gens, GbOptions::default());
    gb.into_iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.partial_degree(nvars - k..nvars) == 0))
        .map(|g| g.with_nvars(nvars - k))
        .collect()
}

fn single_variable(g: &Polynomial) -> Option<usize> {
    if g.len() != 1 {
        return None;
    }
    let (m, _) = &g.terms()[0];
    if m.degree() != 1 {
        return None;
    }
    (0..g.nvars()).find(|&i| m.exp(i) == 1)
}

/// An ideal generated by its own reduced basis.
fn reduced_copy(i: Ideal) -> Ideal {
    let gb = i.gb().to_vec();
    let out = Ideal::new(i.nvars, gb.clone());
    let _ = out.gb.set(gb);
    out
}

/// Free-function forms of the ideal operations.
pub fn groebner_basis(i: &Ideal, order: MonomialOrder) -> GroebnerBasis {
    i.groebner_basis(order)
}

pub fn contains(i: &Ideal, f: &Polynomial) -> bool {
    i.contains(f)
}

pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal, IdealError> {
    i.intersect(j)
}

pub fn quotient(i: &Ideal, j: &Ideal) -> Result<Ideal, IdealError> {
    i.quotient(j)
}

pub fn saturate(i: &Ideal, j: &Ideal) -> Result<Ideal, IdealError> {
    i.saturate(j)
}

pub fn radical_membership(f: &Polynomial, i: &Ideal) -> bool {
    i.radical_contains(f)
}

pub fn radical_equal(i: &Ideal, j: &Ideal) -> Result<bool, IdealError> {
    i.radical_equal(j)
}

pub fn is_comaximal(i: &Ideal, j: &Ideal) -> Result<bool, IdealError> {
    i.is_comaximal(j)
}

pub fn hilbert_polynomial(i: &Ideal) -> Result<HilbertPolynomial, IdealError> {
    i.hilbert_polynomial()
}

pub fn projective_dimension(i: &Ideal) -> Result<i64, IdealError> {
    i.projective_dimension()
}

pub fn zero_dim_radical(i: &Ideal) -> Result<Ideal, IdealError> {
    i.zero_dim_radical()
}

pub fn point_multiplicity(i: &Ideal, point: &Ideal) -> Result<usize, IdealError> {
    i.point_multiplicity(point)
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.canonical_strings().into_iter().map(|g| format!("\"{g}\"")).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "Ideal({})", s.join(", "))
    }
}

impl PartialEq for Ideal {
    /// Structural equality of the reduced bases, i.e. ideal equality.
    fn eq(&self, other: &Ideal) -> bool {
        self.nvars == other.nvars && self.gb() == other.gb()
    }
}

impl Eq for Ideal {}

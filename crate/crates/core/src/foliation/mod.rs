//! Validated codimension-one foliations on projective space, their four
//! ideals and the predicates relating them.

pub mod examples;
pub mod pullback;
pub mod random;
pub mod report;

use std::sync::OnceLock;

use crate::exterior::{coefficient_ideal, DiffForm, VectorField};
use crate::graded::{assemble_unfolding_ideal, GradedError, UnfoldingIdeal, DEFAULT_SLACK};
use crate::ideals::module::module_quotient;
use crate::ideals::{Ideal, IdealError};
use crate::polyring::{Degree, Polynomial, Rational};

pub use examples::{dulac, non_integrable_example, p2a, p2b, p2c, sl2_example, transverse};
pub use pullback::{pullback_foliation, Genericity, PullbackResult};
pub use report::{compare_ij_sl, find_nonreduced_witness, FoliationReport, HilbertComparison, JRadical, Predicates};

/// A rejected input, naming the violated invariant.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FoliationError {
    #[error("invariant `nonzero` violated: the form is zero")]
    ZeroForm,
    #[error("invariant `one-form` violated: expected a 1-form, got a {0}-form")]
    NotOneForm(usize),
    #[error("invariant `dimension` violated: projective space of dimension {0} < 2")]
    TooFewVariables(usize),
    #[error("invariant `homogeneity` violated: the coefficients are not homogeneous of a common degree")]
    Nonhomogeneous,
    #[error("invariant `radial` violated: i_R ω ≠ 0, the form does not descend to projective space")]
    NotDescending,
    #[error("invariant `integrability` violated: ω∧dω ≠ 0")]
    NotIntegrable,
    #[error("invariant `codimension` violated: the singular set has codimension {0} < 2")]
    SingularCodimension(i64),
}

impl FoliationError {
    /// Short machine-readable name of the violated invariant.
    pub fn invariant(&self) -> &'static str {
        match self {
            FoliationError::ZeroForm => "nonzero",
            FoliationError::NotOneForm(_) => "one-form",
            FoliationError::TooFewVariables(_) => "dimension",
            FoliationError::Nonhomogeneous => "homogeneity",
            FoliationError::NotDescending => "radial",
            FoliationError::NotIntegrable => "integrability",
            FoliationError::SingularCodimension(_) => "codimension",
        }
    }
}

/// An integrable twisted 1-form `ω = Σ A_i dx_i` on `Pⁿ` with `A_i ∈ S(e−1)`.
#[derive(Clone, Debug)]
pub struct Foliation {
    omega: DiffForm,
    domega: DiffForm,
    n: usize,
    e: u32,
    j: OnceLock<Ideal>,
    cdomega: OnceLock<Ideal>,
    k: OnceLock<Ideal>,
    l: OnceLock<Ideal>,
    i: OnceLock<Result<UnfoldingIdeal, GradedError>>,
}

/// Validate `ω` as a foliation.
pub fn new_foliation(omega: DiffForm) -> Result<Foliation, FoliationError> {
    Foliation::new(omega)
}

impl Foliation {
    pub fn new(omega: DiffForm) -> Result<Foliation, FoliationError> {
        if omega.degree() != 1 {
            return Err(FoliationError::NotOneForm(omega.degree()));
        }
        if omega.is_zero() {
            return Err(FoliationError::ZeroForm);
        }
        let nvars = omega.nvars();
        if nvars < 3 {
            return Err(FoliationError::TooFewVariables(nvars.saturating_sub(1)));
        }
        let Degree::Homogeneous(cdeg) = omega.coefficient_degree() else {
            return Err(FoliationError::Nonhomogeneous);
        };
        let radial = VectorField::radial(nvars);
        if !omega.contract(&radial).expect("same ring").is_zero() {
            return Err(FoliationError::NotDescending);
        }
        let domega = omega.d();
        if !omega.wedge(&domega).expect("same ring").is_zero() {
            return Err(FoliationError::NotIntegrable);
        }
        let f = Foliation {
            omega,
            domega,
            n: nvars - 1,
            e: cdeg + 1,
            j: OnceLock::new(),
            cdomega: OnceLock::new(),
            k: OnceLock::new(),
            l: OnceLock::new(),
            i: OnceLock::new(),
        };
        let dim = f.singular_ideal().projective_dimension().expect("homogeneous");
        let codim = f.n as i64 - dim;
        if codim < 2 {
            return Err(FoliationError::SingularCodimension(codim));
        }
        Ok(f)
    }

    pub fn omega(&self) -> &DiffForm {
        &self.omega
    }

    pub fn domega(&self) -> &DiffForm {
        &self.domega
    }

    /// Dimension `n` of the ambient projective space.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.n + 1
    }

    /// The twist `e`: coefficient degree plus one.
    pub fn e(&self) -> u32 {
        self.e
    }

    /// Coefficients `A_0, …, A_n`.
    pub fn coefficients(&self) -> Vec<Polynomial> {
        self.omega.one_form_coefficients()
    }

    /// Default degree bound `2e` for the unfolding ideal.
    pub fn default_max_degree(&self) -> u32 {
        2 * self.e
    }

    /// `J = 𝒞(ω)`.
    pub fn singular_ideal(&self) -> &Ideal {
        self.j.get_or_init(|| coefficient_ideal(&self.omega))
    }

    /// `𝒞(dω)`.
    pub fn cdomega_ideal(&self) -> &Ideal {
        self.cdomega.get_or_init(|| coefficient_ideal(&self.domega))
    }

    /// `K = (J : 𝒞(dω))`.
    pub fn kupka_ideal(&self) -> &Ideal {
        self.k.get_or_init(|| {
            self.singular_ideal().quotient(self.cdomega_ideal()).expect("dω ≠ 0 for a foliation")
        })
    }

    /// `L = (J : K^∞)`.
    pub fn non_kupka_ideal(&self) -> &Ideal {
        self.l.get_or_init(|| self.singular_ideal().saturate(self.kupka_ideal()).expect("K ≠ 0"))
    }

    /// `I(ω)` assembled up to degree `2e` (cached).
    pub fn unfolding_ideal(&self) -> Result<&UnfoldingIdeal, GradedError> {
        self.i
            .get_or_init(|| self.compute_unfolding_ideal(self.default_max_degree(), DEFAULT_SLACK))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `I(ω)` assembled up to degree `d_max`; `None` means the default `2e`.
    pub fn unfolding_ideal_with(&self, d_max: Option<u32>, slack: u32) -> Result<UnfoldingIdeal, GradedError> {
        let d = d_max.unwrap_or(self.default_max_degree());
        if d == self.default_max_degree() && slack == DEFAULT_SLACK {
            return self.unfolding_ideal().cloned();
        }
        self.compute_unfolding_ideal(d, slack)
    }

    fn compute_unfolding_ideal(&self, d_max: u32, slack: u32) -> Result<UnfoldingIdeal, GradedError> {
        let u = assemble_unfolding_ideal(self, d_max, slack)?;
        // J ⊆ I ⊆ K and 1 ∉ I are hard postconditions.
        assert!(u.ideal.contains_ideal(self.singular_ideal()), "J ⊆ I violated");
        assert!(self.kupka_ideal().contains_ideal(&u.ideal), "I ⊆ K violated");
        assert!(!u.ideal.is_unit(), "1 ∈ I");
        Ok(u)
    }

    /// `I(ω) = (ω∧Ω¹ : dω)` computed as a module quotient, independently of
    /// the degreewise assembly.
    pub fn unfolding_ideal_by_quotient(&self) -> Ideal {
        let n = self.nvars();
        let gens: Vec<DiffForm> = (0..n).map(|i| self.omega.wedge(&DiffForm::dx(n, i)).unwrap()).collect();
        module_quotient(n, &gens, &self.domega)
    }

    /// Whether `1 ∈ I_𝔭` at the rational point `p`: some generator of `I`
    /// does not vanish at `p`.
    pub fn is_division_point(&self, p: &[Rational]) -> Result<bool, FoliationPointError> {
        self.check_point(p)?;
        let i = self.unfolding_ideal().map_err(FoliationPointError::Unfolding)?;
        Ok(i.ideal.generators().iter().any(|g| !g.evaluate(p).is_zero()))
    }

    fn check_point(&self, p: &[Rational]) -> Result<(), FoliationPointError> {
        if p.len() != self.nvars() {
            return Err(FoliationPointError::WrongLength { expected: self.nvars(), got: p.len() });
        }
        if p.iter().all(Rational::is_zero) {
            return Err(FoliationPointError::Origin);
        }
        Ok(())
    }

    /// `√I = √K`.
    pub fn in_u(&self) -> Result<bool, GradedError> {
        let i = self.unfolding_ideal()?;
        Ok(i.ideal.radical_equal(self.kupka_ideal()).expect("same ring"))
    }

    /// `Proj(S/K) ≠ ∅`.
    pub fn kupka_scheme_nonempty(&self) -> bool {
        !self.kupka_ideal().saturate_irrelevant().is_unit()
    }

    /// Whether every generator of `ideal` vanishes at the rational point `p`.
    pub fn vanishes_at(ideal: &Ideal, p: &[Rational]) -> bool {
        ideal.generators().iter().all(|g| g.evaluate(p).is_zero())
    }

    /// Whether `p` lies in the support of the Kupka scheme: every generator
    /// of `K` lies in `√𝔭` for the point ideal `𝔭`.
    pub fn in_kupka_scheme(&self, p: &[Rational]) -> Result<bool, IdealError> {
        let pt = Ideal::of_point(p)?;
        Ok(self.kupka_ideal().generators().iter().all(|g| pt.radical_contains(g)))
    }

    /// Whether `p` is a Kupka point, `p ∈ sing(ω) \ sing(dω)`, decided by
    /// radical membership of `J` and `𝒞(dω)` in the point ideal.
    pub fn is_kupka_point(&self, p: &[Rational]) -> Result<bool, IdealError> {
        let pt = Ideal::of_point(p)?;
        let inside = |i: &Ideal| i.generators().iter().all(|g| pt.radical_contains(g));
        Ok(inside(self.singular_ideal()) && !inside(self.cdomega_ideal()))
    }
}

/// Errors of point predicates.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FoliationPointError {
    #[error("the origin of the affine cone is not a projective point")]
    Origin,
    #[error("point has {got} coordinates, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error(transparent)]
    Unfolding(GradedError),
}

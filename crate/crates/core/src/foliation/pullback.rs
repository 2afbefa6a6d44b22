//! Pullbacks of foliations of `P²` by rational maps `Pⁿ ⇢ P²`, with the
//! predicted unfolding ideal `(A₀(F), A₁(F), A₂(F))` and exact checks of
//! the genericity consequences.

use crate::exterior::{coefficient_ideal, pullback_form};
use crate::ideals::Ideal;
use crate::polyring::Polynomial;

use super::{Foliation, FoliationError};

/// Outcome of the genericity checks on a pair `(F, ω₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Genericity {
    /// `sing(ω₂)` is reduced: `J₂` is radical in every chart.
    pub singular_set_reduced: bool,
    /// Number of singular points of `ω₂` (constant Hilbert coefficient of
    /// the saturated `J₂`) and the expected `(e−2)² + e − 1`.
    pub singular_points: i64,
    pub expected_points: i64,
    /// Every singular point of `ω₂` is a Kupka point: `J₂ + 𝒞(dω₂)` is
    /// irrelevant.
    pub all_kupka: bool,
    /// No critical point of `F` outside its base locus maps to `sing(ω₂)`.
    pub critical_locus_disjoint: bool,
}

impl Genericity {
    pub fn verified(&self) -> bool {
        self.singular_set_reduced
            && self.singular_points == self.expected_points
            && self.all_kupka
            && self.critical_locus_disjoint
    }

    pub fn label(&self) -> &'static str {
        if self.verified() {
            "verified-generic"
        } else {
            "unverified"
        }
    }
}

pub struct PullbackResult {
    pub foliation: Foliation,
    /// `(A₀(F), A₁(F), A₂(F))`.
    pub predicted: Ideal,
    pub genericity: Genericity,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PullbackError {
    #[error("the target foliation must live on P² (3 variables), got {0} variables")]
    NotPlane(usize),
    #[error("the map needs 3 components, got {0}")]
    WrongArity(usize),
    #[error("map components must be nonconstant and homogeneous of one common degree in one ring")]
    BadMap,
    #[error("the pullback is not a foliation: {0}")]
    Invalid(#[from] FoliationError),
}

impl PullbackError {
    pub fn invariant(&self) -> &'static str {
        match self {
            PullbackError::Invalid(e) => e.invariant(),
            _ => "map",
        }
    }
}

/// Check the consequences of genericity of `ω₂` and of the pair.
pub fn genericity(map: &[Polynomial], omega2: &Foliation) -> Genericity {
    let j2 = omega2.singular_ideal();
    let e = omega2.e() as i64;
    let singular_set_reduced = (0..3).all(|k| j2.dehomogenize(k).zero_dim_is_radical().unwrap_or(false));
    let sat = j2.saturate_irrelevant();
    let hp = sat.hilbert_polynomial().expect("homogeneous");
    let singular_points = if hp.degree() == 0 { hp.coefficient(0) } else { -1 };
    let all_kupka = j2.sum(omega2.cdomega_ideal()).expect("same ring").saturate_irrelevant().is_unit();
    let critical_locus_disjoint = critical_locus_disjoint(map, j2);
    Genericity {
        singular_set_reduced,
        singular_points,
        expected_points: (e - 2) * (e - 2) + e - 1,
        all_kupka,
        critical_locus_disjoint,
    }
}

/// Maximal minors of the Jacobian of `F` plus `J₂(F)`, saturated by the base
/// locus `(F₀, F₁, F₂)` and by `𝔪`, must be the unit ideal.
fn critical_locus_disjoint(map: &[Polynomial], j2: &Ideal) -> bool {
    let n = map[0].nvars();
    let jac: Vec<Vec<Polynomial>> =
        map.iter().map(|f| (0..n).map(|i| f.partial_derivative(i).expect("in range")).collect()).collect();
    let mut gens: Vec<Polynomial> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let cols = [a, b, c];
                let rows: Vec<Vec<Polynomial>> = jac.iter().map(|r| cols.iter().map(|&k| r[k].clone()).collect()).collect();
                gens.push(crate::exterior::determinant(&rows, n));
            }
        }
    }
    gens.extend(j2.map(map).generators().iter().cloned());
    let ideal = Ideal::new(n, gens);
    if ideal.is_unit() {
        return true;
    }
    let base = Ideal::new(n, map.to_vec());
    ideal.saturate(&base).expect("nonzero base ideal").saturate_irrelevant().is_unit()
}

/// `F*ω₂` validated as a foliation, the prediction `(A_i(F))` and the
/// genericity verdict.
pub fn pullback_foliation(map: &[Polynomial], omega2: &Foliation) -> Result<PullbackResult, PullbackError> {
    if omega2.nvars() != 3 {
        return Err(PullbackError::NotPlane(omega2.nvars()));
    }
    if map.len() != 3 {
        return Err(PullbackError::WrongArity(map.len()));
    }
    let n = map[0].nvars();
    let degree = map[0].total_degree();
    if map.iter().any(|f| f.nvars() != n || f.is_constant() || !f.is_homogeneous() || f.total_degree() != degree) {
        return Err(PullbackError::BadMap);
    }
    let w = pullback_form(map, omega2.omega()).map_err(|_| PullbackError::BadMap)?;
    let foliation = Foliation::new(w)?;
    let predicted = coefficient_ideal(omega2.omega()).map(map);
    let genericity = genericity(map, omega2);
    Ok(PullbackResult { foliation, predicted, genericity })
}

//! The aggregated report of a foliation: its ideals, predicates and the
//! comparison of the Hilbert polynomials of `I/J` and `S/L`.

use std::time::Instant;

use crate::graded::{GradedError, UnfoldingIdeal};
use crate::ideals::{HilbertPolynomial, Ideal};
use crate::polyring::{Monomial, Polynomial};

use super::Foliation;

/// Three-valued answer to "is J radical?".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JRadical {
    /// Certified: finite singular set, `J` saturated and radical in every chart.
    True,
    /// Refuted, with a witness `f ∈ √J \ J` when one was found.
    False(Option<Polynomial>),
    /// Neither certified nor refuted.
    Undecided,
}

impl JRadical {
    pub fn as_str(&self) -> &'static str {
        match self {
            JRadical::True => "true",
            JRadical::False(_) => "false",
            JRadical::Undecided => "undecided",
        }
    }
}

/// Search homogeneous elements of `candidates` (its basis elements, then
/// monomials) of degree `≤ d_max` lying in `√J \ J`. `None` proves nothing.
pub fn find_nonreduced_witness(j: &Ideal, candidates: &Ideal, d_max: u32) -> Option<Polynomial> {
    let n = j.nvars();
    let test = |f: &Polynomial| !j.contains(f) && j.radical_contains(f);
    for g in candidates.gb() {
        if g.total_degree().is_some_and(|d| d <= d_max) && test(g) {
            return Some(g.clone());
        }
    }
    for d in 1..=d_max {
        for m in Monomial::all_of_degree(n, d) {
            let f = Polynomial::term(n, crate::polyring::Rational::one(), m);
            if candidates.contains(&f) && test(&f) {
                return Some(f);
            }
        }
    }
    None
}

/// Decide whether `J` is radical, as far as the available tools allow.
pub fn decide_j_radical(j: &Ideal, witness_candidates: &Ideal, witness_degree: u32) -> JRadical {
    let n = j.nvars();
    let sat = j.quotient(&Ideal::irrelevant(n)).expect("𝔪 ≠ 0");
    if !j.contains_ideal(&sat) {
        // An f with f·𝔪 ⊆ J has f² ∈ J.
        let w = sat.gb().iter().find(|g| !j.contains(g)).cloned();
        return JRadical::False(w);
    }
    let finite = j.projective_dimension().map(|d| d <= 0).unwrap_or(false);
    if finite {
        let mut all = true;
        for k in 0..n {
            match j.dehomogenize(k).zero_dim_is_radical() {
                Ok(true) => {}
                Ok(false) => {
                    all = false;
                    break;
                }
                Err(_) => return JRadical::Undecided,
            }
        }
        if all {
            return JRadical::True;
        }
        return JRadical::False(find_nonreduced_witness(j, witness_candidates, witness_degree));
    }
    match find_nonreduced_witness(j, witness_candidates, witness_degree) {
        Some(w) => JRadical::False(Some(w)),
        None => JRadical::Undecided,
    }
}

/// `P_{I/J}` against `P_{S/L}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertComparison {
    pub p_ij: HilbertPolynomial,
    pub p_sl: HilbertPolynomial,
    /// The two polynomials coincide.
    pub equal: bool,
    /// Same degree and same leading coefficient.
    pub leading_terms_agree: bool,
    /// `K + 𝒞(dω) = (1)`.
    pub k_comaximal_with_cdomega: bool,
    /// `Proj(S/K) ∩ Proj(S/L) = ∅`, as comaximality of the saturations.
    pub kupka_disjoint_from_non_kupka: bool,
}

/// Compare `P_{I/J} = P_{S/J} − P_{S/I}` with `P_{S/L}`.
pub fn compare_ij_sl(f: &Foliation) -> Result<HilbertComparison, GradedError> {
    let i = &f.unfolding_ideal()?.ideal;
    Ok(compare_with(f, i))
}

fn compare_with(f: &Foliation, i: &Ideal) -> HilbertComparison {
    let pj = f.singular_ideal().hilbert_polynomial().expect("homogeneous");
    let pi = i.hilbert_polynomial().expect("homogeneous");
    let p_ij = pj.sub(&pi);
    let p_sl = f.non_kupka_ideal().hilbert_polynomial().expect("homogeneous");
    let ks = f.kupka_ideal().saturate_irrelevant();
    let ls = f.non_kupka_ideal().saturate_irrelevant();
    HilbertComparison {
        equal: p_ij == p_sl,
        leading_terms_agree: p_ij.leading() == p_sl.leading(),
        k_comaximal_with_cdomega: f.kupka_ideal().is_comaximal(f.cdomega_ideal()).expect("same ring"),
        kupka_disjoint_from_non_kupka: ks.is_comaximal(&ls).expect("same ring"),
        p_ij,
        p_sl,
    }
}

/// The named predicates of a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicates {
    pub in_u: bool,
    pub kupka_nonempty: bool,
    pub i_equals_k: bool,
    pub j_radical: JRadical,
    pub k_comaximal_with_cdomega: bool,
    pub ij_iso_sl_hilbert: bool,
}

/// Milliseconds spent per stage.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Timings {
    pub j_ms: f64,
    pub k_ms: f64,
    pub l_ms: f64,
    pub i_ms: f64,
    pub predicates_ms: f64,
}

/// Everything computed for one foliation.
#[derive(Clone, Debug)]
pub struct FoliationReport {
    pub n: usize,
    pub e: u32,
    pub j: Ideal,
    pub cdomega: Ideal,
    pub k: Ideal,
    pub l: Ideal,
    pub unfolding: UnfoldingIdeal,
    pub predicates: Predicates,
    pub hilbert: HilbertComparison,
    pub timings: Timings,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

impl FoliationReport {
    /// Compute the full report; `d_max = None` means the default `2e`.
    /// `I` is assembled concurrently with `K` and `L`.
    pub fn compute(f: &Foliation, d_max: Option<u32>) -> Result<FoliationReport, GradedError> {
        let mut timings = Timings::default();
        let t = Instant::now();
        let j = f.singular_ideal().clone();
        j.gb();
        timings.j_ms = ms(t);
        let (unfolding, (k_ms, l_ms)) = std::thread::scope(|s| {
            let handle = s.spawn(|| {
                let t = Instant::now();
                let u = f.unfolding_ideal_with(d_max, crate::graded::DEFAULT_SLACK);
                (u, ms(t))
            });
            let t = Instant::now();
            f.kupka_ideal();
            let k_ms = ms(t);
            let t = Instant::now();
            f.non_kupka_ideal();
            let l_ms = ms(t);
            let (u, i_ms) = handle.join().expect("unfolding thread");
            ((u, i_ms), (k_ms, l_ms))
        });
        let (unfolding, i_ms) = unfolding;
        let unfolding = unfolding?;
        timings.k_ms = k_ms;
        timings.l_ms = l_ms;
        timings.i_ms = i_ms;
        let t = Instant::now();
        let k = f.kupka_ideal().clone();
        let l = f.non_kupka_ideal().clone();
        let hilbert = compare_with(f, &unfolding.ideal);
        let predicates = Predicates {
            in_u: unfolding.ideal.radical_equal(&k).expect("same ring"),
            kupka_nonempty: f.kupka_scheme_nonempty(),
            i_equals_k: unfolding.ideal.equals(&k),
            j_radical: decide_j_radical(&j, &k, f.e()),
            k_comaximal_with_cdomega: hilbert.k_comaximal_with_cdomega,
            ij_iso_sl_hilbert: hilbert.equal,
        };
        timings.predicates_ms = ms(t);
        Ok(FoliationReport {
            n: f.n(),
            e: f.e(),
            j,
            cdomega: f.cdomega_ideal().clone(),
            k,
            l,
            unfolding,
            predicates,
            hilbert,
            timings,
        })
    }
}

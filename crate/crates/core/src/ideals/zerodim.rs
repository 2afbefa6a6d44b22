//! Zero-dimensional tools: standard monomials, univariate eliminants,
//! Seidenberg radicals and point multiplicities.

use crate::graded::linalg::RationalEchelon;
use crate::polyring::{Monomial, Polynomial, Rational};

use super::{Ideal, IdealError};

/// Dense univariate polynomial over ℚ with ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(pub Vec<Rational>);

impl UniPoly {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(Rational::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly(
            self.0.iter().enumerate().skip(1).map(|(i, c)| c * &Rational::from_int(i as i64)).collect(),
        )
        .trim()
    }

    pub fn monic(&self) -> UniPoly {
        let p = self.clone().trim();
        match p.0.last() {
            None => p,
            Some(lc) => {
                let inv = lc.recip();
                UniPoly(p.0.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// `(quotient, remainder)`.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let d = d.clone().trim();
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.clone().trim();
        let mut q = vec![Rational::zero(); r.0.len().saturating_sub(dd).max(1)];
        let lc = d.0[dd].clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = &r.0[rd] / &lc;
            let shift = rd - dd;
            for (i, a) in d.0.iter().enumerate() {
                r.0[i + shift] = &r.0[i + shift] - &(a * &c);
            }
            q[shift] = c;
            r = r.trim();
        }
        (UniPoly(q).trim(), r)
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone().trim(), other.clone().trim());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// As a polynomial in variable `i` of a ring with `nvars` variables.
    pub fn to_polynomial(&self, nvars: usize, i: usize) -> Polynomial {
        Polynomial::from_terms(
            nvars,
            self.0.iter().enumerate().map(|(k, c)| (Monomial::var_pow(i, k as u16), c.clone())),
        )
    }
}

/// `g / gcd(g, g′)`, monic.
pub fn squarefree_part(g: &UniPoly) -> UniPoly {
    let d = g.derivative();
    if d.is_zero() {
        return g.monic();
    }
    let h = g.gcd(&d);
    g.div_rem(&h).0.monic()
}

impl Ideal {
    fn lead_monomials(&self) -> Vec<Monomial> {
        self.gb().iter().map(|g| g.leading().unwrap().0).collect()
    }

    /// Standard monomials of the grevlex basis, or `None` when infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let n = self.nvars;
        let leads = self.lead_monomials();
        // Zero-dimensional iff every variable has a pure power among the leads.
        for i in 0..n {
            if !leads.iter().any(|m| m.exp(i) > 0 && m.degree() == m.exp(i) as u32) {
                return None;
            }
        }
        let mut out = Vec::new();
        let mut frontier = vec![Monomial::one()];
        if leads.iter().any(|l| l.is_one()) {
            return Some(out);
        }
        let mut seen = std::collections::HashSet::new();
        while let Some(m) = frontier.pop() {
            if !seen.insert(m) {
                continue;
            }
            out.push(m);
            for i in 0..n {
                let next = m.mul(&Monomial::var(i));
                if !leads.iter().any(|l| l.divides(&next)) {
                    frontier.push(next);
                }
            }
        }
        out.sort_by(|a, b| b.cmp_grevlex(a, n));
        Some(out)
    }

    /// `dim_ℚ S/I` for a zero-dimensional affine ideal.
    pub fn quotient_dimension(&self) -> Option<usize> {
        self.standard_monomials().map(|s| s.len())
    }

    /// Monic generator of `I ∩ ℚ[x_i]`, found as the first linear dependency
    /// among the normal forms of `1, x_i, x_i², …`.
    pub fn univariate_eliminant(&self, i: usize) -> Result<UniPoly, IdealError> {
        let std = self.standard_monomials().ok_or(IdealError::NotZeroDimensional(i))?;
        let dim = std.len();
        let index: std::collections::HashMap<Monomial, usize> =
            std.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        let mut ech = RationalEchelon::new();
        let xi = Polynomial::var(self.nvars, i);
        let mut power = Polynomial::one(self.nvars);
        for k in 0..=dim {
            let nf = self.normal_form(&power);
            let mut v: Vec<(usize, Rational)> =
                nf.terms().iter().map(|(m, c)| (index[m], c.clone())).collect();
            v.push((dim + 1 + k, Rational::one()));
            v.sort_by_key(|(c, _)| *c);
            let reduced = ech.reduce(v);
            if reduced.first().is_none_or(|(c, _)| *c > dim) {
                // Dependency: tracking columns give the coefficients.
                let mut coeffs = vec![Rational::zero(); k + 1];
                for (c, a) in reduced {
                    coeffs[c - dim - 1] = a;
                }
                return Ok(UniPoly(coeffs).monic());
            }
            ech.insert_reduced(reduced);
            power = &power * &xi;
        }
        unreachable!("dim + 1 normal forms in a dim-dimensional space are dependent")
    }

    /// `√I` for a zero-dimensional affine ideal: `I` plus the squarefree parts
    /// of its univariate eliminants.
    pub fn zero_dim_radical(&self) -> Result<Ideal, IdealError> {
        if self.is_unit() {
            return Ok(self.clone());
        }
        let mut gens = self.gens.clone();
        for i in 0..self.nvars {
            let g = self.univariate_eliminant(i)?;
            gens.push(squarefree_part(&g).to_polynomial(self.nvars, i));
        }
        Ok(Ideal::new(self.nvars, gens))
    }

    /// Whether a zero-dimensional affine ideal is radical.
    pub fn zero_dim_is_radical(&self) -> Result<bool, IdealError> {
        let r = self.zero_dim_radical()?;
        Ok(self.contains_ideal(&r))
    }

    /// Length (as a ℚ-dimension) of the component of the homogeneous,
    /// projectively zero-dimensional `I` at the closed point with homogeneous
    /// prime `point`: in a chart `x_k = 1` avoiding the point's hyperplane,
    /// `dim_ℚ S/Q` with `Q = (I : (I : P^∞))`.
    pub fn point_multiplicity(&self, point: &Ideal) -> Result<usize, IdealError> {
        self.check_ring(point)?;
        if !self.is_homogeneous() || !point.is_homogeneous() {
            return Err(IdealError::Nonhomogeneous);
        }
        if self.saturate_irrelevant().projective_dimension().unwrap_or(-1) > 0 {
            return Err(IdealError::PositiveDimensional);
        }
        if point.projective_dimension().map_err(|_| IdealError::NotAPoint)? != 0 {
            return Err(IdealError::NotAPoint);
        }
        if !point.contains_ideal(self) {
            return Err(IdealError::PointNotOnVariety);
        }
        let k = (0..self.nvars)
            .find(|&k| !point.contains(&Polynomial::var(self.nvars, k)))
            .ok_or(IdealError::NotAPoint)?;
        let ia = self.dehomogenize(k);
        let pa = point.dehomogenize(k);
        let rest = ia.saturate(&pa)?;
        let q = ia.quotient(&rest)?;
        q.quotient_dimension().ok_or(IdealError::NotZeroDimensional(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn squarefree_of_cube() {
        // (x − 1)^2 (x + 2) = x^3 − 3x + 2
        let g = UniPoly(vec![r(2), r(-3), r(0), r(1)]);
        assert_eq!(squarefree_part(&g), UniPoly(vec![r(-2), r(1), r(1)]));
    }

    #[test]
    fn radical_of_monomial_ideal() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let i = Ideal::new(2, vec![&x * &x, y.clone()]);
        let rad = i.zero_dim_radical().unwrap();
        assert!(rad.equals(&Ideal::new(2, vec![x, y])));
        assert!(!i.zero_dim_is_radical().unwrap());
    }

    #[test]
    fn positive_dimension_rejected() {
        let x = Polynomial::var(2, 0);
        let i = Ideal::new(2, vec![x]);
        assert_eq!(i.zero_dim_radical(), Err(IdealError::NotZeroDimensional(0)));
    }
}

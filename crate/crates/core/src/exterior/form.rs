use std::collections::BTreeMap;
use std::fmt;

use crate::polyring::{primitive_scale, Degree, Polynomial, Rational};

use super::ExteriorError;

/// A polynomial differential `p`-form `Σ f_I dx_I` on affine `(n+1)`-space.
///
/// Components are keyed by strictly increasing index tuples; zero
/// components are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffForm {
    nvars: usize,
    p: usize,
    components: BTreeMap<Vec<usize>, Polynomial>,
}

/// Sign of the permutation sorting the concatenation `a ++ b` of two sorted
/// disjoint index lists, or `None` when they share an index.
pub(crate) fn merge_sign(a: &[usize], b: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut inversions = 0usize;
    for &i in a {
        for &k in b {
            if i == k {
                return None;
            }
            if i > k {
                inversions += 1;
            }
        }
    }
    let mut merged: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
    merged.sort_unstable();
    Some((if inversions % 2 == 0 { 1 } else { -1 }, merged))
}

impl DiffForm {
    pub fn zero(nvars: usize, p: usize) -> Self {
        DiffForm {
            nvars,
            p,
            components: BTreeMap::new(),
        }
    }

    /// The 0-form `f`.
    pub fn function(f: Polynomial) -> Self {
        let mut w = Self::zero(f.nvars(), 0);
        w.insert(vec![], f);
        w
    }

    /// `dx_i`.
    pub fn dx(nvars: usize, i: usize) -> Self {
        let mut w = Self::zero(nvars, 1);
        w.insert(vec![i], Polynomial::one(nvars));
        w
    }

    /// `dx_0 ∧ … ∧ dx_n`.
    pub fn volume(nvars: usize) -> Self {
        let mut w = Self::zero(nvars, nvars);
        w.insert((0..nvars).collect(), Polynomial::one(nvars));
        w
    }

    /// `Σ A_i dx_i`.
    pub fn one_form(coeffs: &[Polynomial]) -> Self {
        let n = coeffs.first().map_or(0, |c| c.nvars());
        let mut w = Self::zero(n, 1);
        for (i, a) in coeffs.iter().enumerate() {
            w.insert(vec![i], a.clone());
        }
        w
    }

    /// Build from `(index tuple, coefficient)` pairs; tuples may be unsorted
    /// (the permutation sign is applied) and may repeat (summed).
    pub fn from_components(
        nvars: usize,
        p: usize,
        comps: impl IntoIterator<Item = (Vec<usize>, Polynomial)>,
    ) -> Result<Self, ExteriorError> {
        let mut w = Self::zero(nvars, p);
        for (idx, f) in comps {
            if idx.len() != p {
                return Err(ExteriorError::DegreeMismatch { expected: p, got: idx.len() });
            }
            if idx.iter().any(|&i| i >= nvars) || f.nvars() != nvars {
                return Err(ExteriorError::RingMismatch);
            }
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let inversions = (0..idx.len())
                .flat_map(|i| (i + 1..idx.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| idx[i] > idx[j])
                .count();
            let f = if inversions % 2 == 1 { -&f } else { f };
            w.insert(sorted, f);
        }
        Ok(w)
    }

    /// Add `f` to the component `idx` (which must be sorted).
    fn insert(&mut self, idx: Vec<usize>, f: Polynomial) {
        if f.is_zero() {
            return;
        }
        match self.components.remove(&idx) {
            Some(g) => {
                let s = &g + &f;
                if !s.is_zero() {
                    self.components.insert(idx, s);
                }
            }
            None => {
                self.components.insert(idx, f);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.components.iter()
    }

    pub fn component(&self, idx: &[usize]) -> Polynomial {
        self.components.get(idx).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    /// Coefficients of a 1-form, `A_0..A_n`.
    pub fn one_form_coefficients(&self) -> Vec<Polynomial> {
        assert_eq!(self.p, 1, "not a 1-form");
        (0..self.nvars).map(|i| self.component(&[i])).collect()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &Polynomial> {
        self.components.values()
    }

    /// Common degree of all coefficients.
    pub fn coefficient_degree(&self) -> Degree {
        let mut deg = Degree::NegInfinity;
        for f in self.components.values() {
            match (deg, f.degree()) {
                (_, Degree::Nonhomogeneous) => return Degree::Nonhomogeneous,
                (Degree::NegInfinity, d) => deg = d,
                (Degree::Homogeneous(a), Degree::Homogeneous(b)) if a != b => {
                    return Degree::Nonhomogeneous
                }
                _ => {}
            }
        }
        deg
    }

    fn check_ring(&self, other: &DiffForm) -> Result<(), ExteriorError> {
        if self.nvars != other.nvars {
            return Err(ExteriorError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &DiffForm) -> Result<DiffForm, ExteriorError> {
        self.check_ring(other)?;
        if self.p != other.p {
            if self.is_zero() {
                return Ok(other.clone());
            }
            if other.is_zero() {
                return Ok(self.clone());
            }
            return Err(ExteriorError::DegreeMismatch { expected: self.p, got: other.p });
        }
        let mut w = self.clone();
        for (idx, f) in &other.components {
            w.insert(idx.clone(), f.clone());
        }
        Ok(w)
    }

    pub fn sub(&self, other: &DiffForm) -> Result<DiffForm, ExteriorError> {
        self.add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> DiffForm {
        self.mul_poly(&Polynomial::constant(self.nvars, c.clone()))
    }

    pub fn mul_poly(&self, f: &Polynomial) -> DiffForm {
        let mut w = DiffForm::zero(self.nvars, self.p);
        for (idx, g) in &self.components {
            w.insert(idx.clone(), f * g);
        }
        w
    }

    /// `α ∧ β`.
    pub fn wedge(&self, other: &DiffForm) -> Result<DiffForm, ExteriorError> {
        self.check_ring(other)?;
        let p = self.p + other.p;
        let mut w = DiffForm::zero(self.nvars, p);
        if p > self.nvars {
            return Ok(w);
        }
        for (a, f) in &self.components {
            for (b, g) in &other.components {
                if let Some((sign, idx)) = merge_sign(a, b) {
                    let fg = f * g;
                    w.insert(idx, if sign < 0 { -&fg } else { fg });
                }
            }
        }
        Ok(w)
    }

    /// Exterior derivative `dα`.
    pub fn d(&self) -> DiffForm {
        let n = self.nvars;
        let mut w = DiffForm::zero(n, self.p + 1);
        for (idx, f) in &self.components {
            for j in 0..n {
                if idx.contains(&j) {
                    continue;
                }
                let df = f.partial_derivative(j).expect("index in range");
                if df.is_zero() {
                    continue;
                }
                let (sign, merged) = merge_sign(&[j], idx).expect("disjoint");
                w.insert(merged, if sign < 0 { -&df } else { df });
            }
        }
        w
    }

    /// Interior product `i_X α`.
    pub fn contract(&self, x: &super::VectorField) -> Result<DiffForm, ExteriorError> {
        if self.p == 0 {
            return Err(ExteriorError::ContractZeroForm);
        }
        if x.nvars() != self.nvars {
            return Err(ExteriorError::RingMismatch);
        }
        let mut w = DiffForm::zero(self.nvars, self.p - 1);
        for (idx, f) in &self.components {
            for (k, &i) in idx.iter().enumerate() {
                let xi = x.component(i);
                if xi.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(k);
                let t = xi * f;
                w.insert(rest, if k % 2 == 1 { -&t } else { t });
            }
        }
        Ok(w)
    }

    /// `L_X α = i_X dα + d i_X α`.
    pub fn lie_derivative(&self, x: &super::VectorField) -> Result<DiffForm, ExteriorError> {
        let a = self.d().contract(x)?;
        if self.p == 0 {
            return Ok(a);
        }
        a.add(&self.contract(x)?.d())
    }

    /// `F*α` for a polynomial map given by the images of the coordinates.
    pub fn pullback(&self, map: &[Polynomial]) -> Result<DiffForm, ExteriorError> {
        if map.len() != self.nvars {
            return Err(ExteriorError::ArityMismatch { expected: self.nvars, got: map.len() });
        }
        let target = map.first().map_or(0, |f| f.nvars());
        if map.iter().any(|f| f.nvars() != target) {
            return Err(ExteriorError::RingMismatch);
        }
        let dmap: Vec<DiffForm> = map.iter().map(|f| DiffForm::function(f.clone()).d()).collect();
        let mut w = DiffForm::zero(target, self.p);
        for (idx, f) in &self.components {
            let mut term = DiffForm::function(f.substitute(map).expect("arity checked"));
            for &i in idx {
                term = term.wedge(&dmap[i])?;
            }
            w = w.add(&term)?;
        }
        Ok(w)
    }

    /// The scalar `λ` with `other = λ·self`, if any.
    pub fn scalar_ratio(&self, other: &DiffForm) -> Option<Rational> {
        if self.nvars != other.nvars || self.p != other.p {
            return None;
        }
        let (idx, f) = self.components.iter().next()?;
        let g = other.components.get(idx)?;
        let lambda = &g.leading()?.1 / &f.leading()?.1;
        if self.scale(&lambda) == *other {
            Some(lambda)
        } else {
            None
        }
    }

    pub fn is_scalar_multiple_of(&self, other: &DiffForm) -> bool {
        (self.is_zero() && other.is_zero()) || other.scalar_ratio(self).is_some()
    }

    /// Scale to content one with a positive leading coefficient in the first component.
    pub fn normalized(&self) -> DiffForm {
        let Some((_, first)) = self.components.iter().next() else {
            return self.clone();
        };
        let mut s = primitive_scale(self.components.values().flat_map(|f| f.terms().iter().map(|(_, c)| c)));
        if first.leading().unwrap().1.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> FormDisplay<'a> {
        FormDisplay { form: self, names: Some(names) }
    }
}

/// `(coef)*dx0^dx1 + …` text form, re-readable by the parser.
pub struct FormDisplay<'a> {
    form: &'a DiffForm,
    names: Option<&'a [String]>,
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.form;
        if w.components.is_empty() {
            return f.write_str("0");
        }
        let name = |i: usize| match self.names {
            Some(n) => format!("d{}", n[i]),
            None => format!("dx{i}"),
        };
        for (k, (idx, c)) in w.components.iter().enumerate() {
            let diff: Vec<String> = idx.iter().map(|&i| name(i)).collect();
            let diff = diff.join("^");
            let single = c.len() == 1;
            let (neg, body) = if single {
                let (m, a) = &c.terms()[0];
                let mono = crate::polyring::Polynomial::term(c.nvars(), a.abs(), *m);
                (a.is_negative(), match self.names {
                    Some(n) => mono.display_with(n).to_string(),
                    None => mono.to_string(),
                })
            } else {
                let s = match self.names {
                    Some(n) => c.display_with(n).to_string(),
                    None => c.to_string(),
                };
                (false, format!("({s})"))
            };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if idx.is_empty() {
                f.write_str(&body)?;
            } else if body == "1" {
                f.write_str(&diff)?;
            } else {
                write!(f, "{body}*{diff}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        FormDisplay { form: self, names: None }.fmt(f)
    }
}

impl fmt::Debug for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-form[{}]", self.p, self)
    }
}

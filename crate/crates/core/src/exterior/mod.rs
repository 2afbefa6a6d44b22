//! Exterior calculus on polynomial differential forms and vector fields.

mod field;
mod form;

pub use field::VectorField;
pub use form::{DiffForm, FormDisplay};

use crate::ideals::Ideal;
use crate::polyring::{Degree, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExteriorError {
    #[error("form degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("cannot contract a 0-form")]
    ContractZeroForm,
    #[error("expected {expected} entries, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("expected {expected} vector fields, got {got}")]
    WrongFieldCount { expected: usize, got: usize },
    #[error("map components must be homogeneous of one common degree")]
    MapDegreeMismatch,
}

/// `𝒞(α)`: the ideal generated by all coefficients of `α`.
pub fn coefficient_ideal(alpha: &DiffForm) -> Ideal {
    Ideal::new(alpha.nvars(), alpha.coefficients().cloned().collect())
}

/// `[X, Y]` as a derivation.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField, ExteriorError> {
    x.bracket(y)
}

/// `F*ω` for a map `F = (F_0, F_1, F_2)` with homogeneous components of a
/// common degree and a 1-form `ω` on three variables.
pub fn pullback_form(map: &[Polynomial], omega: &DiffForm) -> Result<DiffForm, ExteriorError> {
    if map.len() != omega.nvars() {
        return Err(ExteriorError::ArityMismatch { expected: omega.nvars(), got: map.len() });
    }
    let mut common = None;
    for f in map {
        match f.degree() {
            Degree::Homogeneous(d) => {
                if common.is_some_and(|c| c != d) {
                    return Err(ExteriorError::MapDegreeMismatch);
                }
                common = Some(d);
            }
            _ => return Err(ExteriorError::MapDegreeMismatch),
        }
    }
    omega.pullback(map)
}

/// Determinant of a square polynomial matrix by Laplace expansion along the
/// first row, skipping zero entries.
pub(crate) fn determinant(rows: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    let n = rows.len();
    let cols: Vec<usize> = (0..n).collect();
    det_rec(rows, 0, &cols, nvars)
}

fn det_rec(rows: &[Vec<Polynomial>], r: usize, cols: &[usize], nvars: usize) -> Polynomial {
    if cols.is_empty() {
        return Polynomial::one(nvars);
    }
    let mut acc = Polynomial::zero(nvars);
    for (k, &c) in cols.iter().enumerate() {
        let a = &rows[r][c];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(rows, r + 1, &rest, nvars);
        if minor.is_zero() {
            continue;
        }
        let t = a * &minor;
        acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// `i_R i_{X_1} ⋯ i_{X_{n-1}} (dx_0 ∧ … ∧ dx_n)` computed from signed
/// maximal minors of the matrix with rows `X_{n-1}, …, X_1, R`.
///
/// The coefficient of `dx_j` is `det[X_{n-1}; …; X_1; R; e_j]`.
pub fn split_contraction(fields: &[VectorField]) -> Result<DiffForm, ExteriorError> {
    let nvars = fields.first().map_or(0, VectorField::nvars);
    if nvars < 2 || fields.len() + 2 != nvars {
        return Err(ExteriorError::WrongFieldCount {
            expected: nvars.saturating_sub(2),
            got: fields.len(),
        });
    }
    if fields.iter().any(|x| x.nvars() != nvars) {
        return Err(ExteriorError::RingMismatch);
    }
    let radial = VectorField::radial(nvars);
    let mut rows: Vec<Vec<Polynomial>> =
        fields.iter().rev().map(|x| x.components().to_vec()).collect();
    rows.push(radial.components().to_vec());
    let last = nvars - 1;
    let mut coeffs = Vec::with_capacity(nvars);
    for j in 0..nvars {
        let sub: Vec<Vec<Polynomial>> = rows
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let minor = determinant(&sub, nvars);
        coeffs.push(if (last + j) % 2 == 0 { minor } else { -&minor });
    }
    Ok(DiffForm::one_form(&coeffs))
}

/// The same contraction computed by literally contracting the volume form,
/// innermost field first.
pub fn split_contraction_iterated(fields: &[VectorField]) -> Result<DiffForm, ExteriorError> {
    let nvars = fields.first().map_or(0, VectorField::nvars);
    if nvars < 2 || fields.len() + 2 != nvars {
        return Err(ExteriorError::WrongFieldCount {
            expected: nvars.saturating_sub(2),
            got: fields.len(),
        });
    }
    let mut w = DiffForm::volume(nvars);
    for x in fields.iter().rev() {
        w = w.contract(x)?;
    }
    w.contract(&VectorField::radial(nvars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::testing::arb_homogeneous;
    use crate::polyring::{euler_operator, Rational};
    use proptest::prelude::*;

    fn p(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn arb_form(n: usize, k: usize, deg: u32) -> impl Strategy<Value = DiffForm> {
        let tuples: Vec<Vec<usize>> = subsets(n, k);
        let m = tuples.len();
        prop::collection::vec(arb_homogeneous(n, deg, 3), m).prop_map(move |cs| {
            DiffForm::from_components(n, k, tuples.clone().into_iter().zip(cs)).unwrap()
        })
    }

    fn arb_field(n: usize, deg: u32) -> impl Strategy<Value = VectorField> {
        prop::collection::vec(arb_homogeneous(n, deg, 3), n).prop_map(|cs| VectorField::new(cs).unwrap())
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = vec![];
        for s in subsets(n, k - 1) {
            let start = s.last().map_or(0, |&l| l + 1);
            for i in start..n {
                let mut t = s.clone();
                t.push(i);
                out.push(t);
            }
        }
        out
    }

    #[test]
    fn wedge_signs() {
        let a = DiffForm::dx(3, 0).wedge(&DiffForm::dx(3, 1)).unwrap();
        assert_eq!(a.component(&[0, 1]), Polynomial::one(3));
        let b = DiffForm::dx(3, 1).wedge(&DiffForm::dx(3, 0)).unwrap();
        assert_eq!(b.component(&[0, 1]), -&Polynomial::one(3));
    }

    #[test]
    fn d_of_x0_dx1() {
        let w = DiffForm::dx(3, 1).mul_poly(&p(3, 0));
        assert_eq!(w.d(), DiffForm::dx(3, 0).wedge(&DiffForm::dx(3, 1)).unwrap());
    }

    #[test]
    fn contract_radial_dx() {
        let r = VectorField::radial(4);
        for i in 0..4 {
            assert_eq!(DiffForm::dx(4, i).contract(&r).unwrap(), DiffForm::function(p(4, i)));
        }
        assert_eq!(DiffForm::function(p(4, 0)).contract(&r), Err(ExteriorError::ContractZeroForm));
    }

    #[test]
    fn bracket_of_self_vanishes() {
        let x = VectorField::new(vec![&p(3, 1) * &p(3, 2), p(3, 0), Polynomial::zero(3)]).unwrap();
        assert!(lie_bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn pullback_identity_and_differentials() {
        let id: Vec<Polynomial> = (0..3).map(|i| p(3, i)).collect();
        let w = DiffForm::one_form(&[&p(3, 1) * &p(3, 2), p(3, 0).pow(2), -&(&p(3, 0) * &p(3, 1))]);
        assert_eq!(pullback_form(&id, &w).unwrap(), w);
        let f: Vec<Polynomial> = vec![
            &p(4, 0) + &p(4, 3),
            &p(4, 1) - &p(4, 3).scale(&Rational::from_int(2)),
            p(4, 2),
        ];
        for i in 0..3 {
            assert_eq!(
                pullback_form(&f, &DiffForm::dx(3, i)).unwrap(),
                DiffForm::function(f[i].clone()).d()
            );
        }
        let bad = vec![p(4, 0), p(4, 1).pow(2), p(4, 2)];
        assert_eq!(pullback_form(&bad, &w), Err(ExteriorError::MapDegreeMismatch));
    }

    #[test]
    fn coefficient_ideal_of_zero() {
        assert!(coefficient_ideal(&DiffForm::zero(3, 1)).is_zero());
    }

    #[test]
    fn split_contraction_field_count() {
        let r = VectorField::radial(4);
        assert!(matches!(split_contraction(&[r]), Err(ExteriorError::WrongFieldCount { .. })));
    }

    proptest! {
        #[test]
        fn d_squared_is_zero(w in arb_form(4, 1, 3)) {
            prop_assert!(w.d().d().is_zero());
        }

        #[test]
        fn anticommutativity(a in arb_form(4, 1, 1), b in arb_form(4, 2, 1)) {
            let ab = a.wedge(&b).unwrap();
            let ba = b.wedge(&a).unwrap();
            prop_assert_eq!(ab, ba); // (-1)^{1·2} = 1
            let aa = a.wedge(&a).unwrap();
            prop_assert!(aa.is_zero());
        }

        #[test]
        fn anticommutativity_odd(a in arb_form(4, 1, 1), b in arb_form(4, 1, 2)) {
            let ab = a.wedge(&b).unwrap();
            let ba = b.wedge(&a).unwrap();
            prop_assert!(ab.add(&ba).unwrap().is_zero());
        }

        #[test]
        fn contraction_laws(x in arb_field(4, 1), a in arb_form(4, 1, 2), b in arb_form(4, 2, 1)) {
            prop_assert!(b.contract(&x).unwrap().contract(&x).unwrap().is_zero());
            let lhs = a.wedge(&b).unwrap().contract(&x).unwrap();
            let rhs = a.contract(&x).unwrap().wedge(&b).unwrap()
                .sub(&a.wedge(&b.contract(&x).unwrap()).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn cartan_two_paths(x in arb_field(3, 1), f in arb_homogeneous(3, 3, 4), g in arb_homogeneous(3, 2, 3)) {
            // For w = f dg, L_X w = X(f) dg + f d(X(g)) computed without Cartan.
            let w = DiffForm::function(g.clone()).d().mul_poly(&f);
            let direct = DiffForm::function(g.clone()).d().mul_poly(&x.apply(&f))
                .add(&DiffForm::function(x.apply(&g)).d().mul_poly(&f)).unwrap();
            prop_assert_eq!(w.lie_derivative(&x).unwrap(), direct);
            // 0-form case
            prop_assert_eq!(DiffForm::function(f.clone()).lie_derivative(&x).unwrap(), DiffForm::function(x.apply(&f)));
        }

        #[test]
        fn radial_lie_derivative(f in arb_homogeneous(3, 3, 4)) {
            let r = VectorField::radial(3);
            prop_assert_eq!(DiffForm::function(f.clone()).lie_derivative(&r).unwrap(), DiffForm::function(euler_operator(&f)));
        }

        #[test]
        fn pullback_functorial(a in arb_form(3, 1, 1), b in arb_form(3, 1, 1),
                               f in prop::collection::vec(arb_homogeneous(4, 1, 3), 3)) {
            let lhs = a.wedge(&b).unwrap().pullback(&f).unwrap();
            let rhs = a.pullback(&f).unwrap().wedge(&b.pullback(&f).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.d().pullback(&f).unwrap(), a.pullback(&f).unwrap().d());
        }

        #[test]
        fn split_contraction_matches_iterated(xs in prop::collection::vec(arb_field(4, 1), 2)) {
            let m = split_contraction(&xs).unwrap();
            prop_assert_eq!(&m, &split_contraction_iterated(&xs).unwrap());
            prop_assert!(m.contract(&VectorField::radial(4)).unwrap().is_zero());
        }

        #[test]
        fn radial_contraction_euler(w in arb_form(3, 1, 2)) {
            // make i_R w = 0 by projecting: w' = (i_R w) dx0 - x0 w ... use i_R(dx0 ∧ w)
            let r = VectorField::radial(3);
            let proj = DiffForm::dx(3, 0).wedge(&w).unwrap().contract(&r).unwrap();
            prop_assume!(!proj.is_zero());
            // coefficients have degree 3, so e = 4
            prop_assert!(proj.contract(&r).unwrap().is_zero());
            prop_assert_eq!(proj.d().contract(&r).unwrap(), proj.scale(&Rational::from_int(4)));
        }
    }
}

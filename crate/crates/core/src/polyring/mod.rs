//! Exact arithmetic in the graded ring ℚ[x₀,…,xₙ].

mod monomial;
mod order;
mod poly;
mod rational;

pub use monomial::{count_of_degree, Monomial, MAX_VARS};
pub use order::MonomialOrder;
pub use poly::{Degree, PolyDisplay, Polynomial};
pub use rational::{primitive_scale, ParseRationalError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable index {index} out of range for a ring with {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("expected {expected} substitution images, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("operands live in different rings")]
    RingMismatch,
}

/// Euler operator `Σ x_i ∂f/∂x_i`.
pub fn euler_operator(f: &Polynomial) -> Polynomial {
    let n = f.nvars();
    let mut acc = Polynomial::zero(n);
    for i in 0..n {
        let d = f.partial_derivative(i).expect("index in range");
        acc = &acc + &(&Polynomial::var(n, i) * &d);
    }
    acc
}

#[cfg(test)]
pub(crate) mod testing {
    use super::*;
    use proptest::prelude::*;

    /// Random polynomial with small integer coefficients in `n` variables.
    pub fn arb_poly(n: usize, max_deg: u16, max_terms: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(
            (prop::collection::vec(0..=max_deg, n), -4i64..=4),
            0..=max_terms,
        )
        .prop_map(move |ts| {
            Polynomial::from_terms(
                n,
                ts.into_iter()
                    .map(|(e, c)| (Monomial::from_exponents(&e), Rational::from_int(c))),
            )
        })
    }

    /// Random homogeneous polynomial of degree `d`.
    pub fn arb_homogeneous(n: usize, d: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
        let monos = Monomial::all_of_degree(n, d);
        prop::collection::vec((0..monos.len(), -4i64..=4), 1..=max_terms).prop_map(move |ts| {
            Polynomial::from_terms(n, ts.into_iter().map(|(i, c)| (monos[i], Rational::from_int(c))))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::testing::*;
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(3, 2, 4), b in arb_poly(3, 2, 4), c in arb_poly(3, 2, 4)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&(&a - &b) + &b - a.clone()).is_zero());
        }

        #[test]
        fn degree_is_additive(a in arb_homogeneous(3, 2, 4), b in arb_homogeneous(3, 3, 4)) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!((&a * &b).degree(), Degree::Homogeneous(5));
        }

        #[test]
        fn euler_identity(f in (0u32..5).prop_flat_map(|d| arb_homogeneous(4, d, 5))) {
            let deg = match f.degree() { Degree::Homogeneous(k) => k, _ => 0 };
            prop_assert_eq!(euler_operator(&f), f.scale(&Rational::from_int(deg as i64)));
        }
    }
}

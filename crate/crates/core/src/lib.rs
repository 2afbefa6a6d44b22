//! Exact computation of the singular, unfolding, Kupka and non-Kupka ideals
//! of codimension-one foliations on projective space, over ℚ.
//!
//! Layers: [`polyring`] (exact polynomial arithmetic), [`exterior`]
//! (differential forms and vector fields), [`ideals`] (Gröbner bases and the
//! ideal toolbox), [`graded`] (degreewise linear algebra), [`foliation`]
//! (validated foliations, their ideals and predicates) and [`cli`].

pub mod cli;
pub mod exterior;
pub mod foliation;
pub mod graded;
pub mod ideals;
pub mod polyring;

pub use exterior::{DiffForm, VectorField};
pub use foliation::{new_foliation, Foliation, FoliationError, FoliationReport};
pub use ideals::{HilbertPolynomial, Ideal};
pub use polyring::{MonomialOrder, Polynomial, Rational};

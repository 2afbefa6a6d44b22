use std::fmt;

use crate::polyring::Polynomial;

use super::ExteriorError;

/// A polynomial derivation `Σ X_i ∂/∂x_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    components: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(components: Vec<Polynomial>) -> Result<Self, ExteriorError> {
        let n = components.len();
        if components.iter().any(|c| c.nvars() != n) {
            return Err(ExteriorError::RingMismatch);
        }
        Ok(VectorField { components })
    }

    pub fn zero(nvars: usize) -> Self {
        VectorField {
            components: vec![Polynomial::zero(nvars); nvars],
        }
    }

    /// The radial (Euler) field `R = Σ x_i ∂/∂x_i`.
    pub fn radial(nvars: usize) -> Self {
        VectorField {
            components: (0..nvars).map(|i| Polynomial::var(nvars, i)).collect(),
        }
    }

    /// `f ∂/∂x_i`.
    pub fn coordinate(f: Polynomial, i: usize) -> Self {
        let mut x = Self::zero(f.nvars());
        x.components[i] = f;
        x
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// `X(f) = Σ X_i ∂f/∂x_i`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(f.nvars());
        for (i, xi) in self.components.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            acc = &acc + &(xi * &f.partial_derivative(i).expect("index in range"));
        }
        acc
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField, ExteriorError> {
        if self.nvars() != other.nvars() {
            return Err(ExteriorError::RingMismatch);
        }
        Ok(VectorField {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &crate::polyring::Rational) -> VectorField {
        VectorField {
            components: self.components.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// `[X, Y] = X∘Y − Y∘X`.
    pub fn bracket(&self, other: &VectorField) -> Result<VectorField, ExteriorError> {
        if self.nvars() != other.nvars() {
            return Err(ExteriorError::RingMismatch);
        }
        let components = (0..self.nvars())
            .map(|i| &self.apply(&other.components[i]) - &other.apply(&self.components[i]))
            .collect();
        Ok(VectorField { components })
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*d/dx{i}")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

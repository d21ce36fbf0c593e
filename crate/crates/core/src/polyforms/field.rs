use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::FormError;

/// Polynomial vector field `sum_i X_i d/dz_i` on `C^{n+1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVectorField {
    components: Vec<Poly>,
}

impl PolyVectorField {
    /// One polynomial per coordinate; needs at least two coordinates, all in
    /// the same number of variables.
    pub fn new(components: Vec<Poly>) -> Result<Self, FormError> {
        let len = components.len();
        if len < 2 {
            return Err(FormError::TooFewCoordinates(len));
        }
        if let Some(bad) = components.iter().find(|p| p.nvars() != len) {
            return Err(FormError::BadMonomial {
                expected: len,
                got: bad.nvars(),
            });
        }
        Ok(PolyVectorField { components })
    }

    pub fn zero(n: usize) -> Self {
        PolyVectorField {
            components: (0..=n).map(|_| Poly::zero(n + 1)).collect(),
        }
    }

    /// `d/dz_i`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut x = Self::zero(n);
        x.components[i] = Poly::constant(n + 1, BigRational::one());
        x
    }

    /// Euler field `z_0 d/dz_0 + ... + z_n d/dz_n`.
    pub fn radial(n: usize) -> Self {
        PolyVectorField {
            components: (0..=n).map(|i| Poly::var(n + 1, i)).collect(),
        }
    }

    /// Constant field with the given coordinates.
    pub fn constant(v: &[BigRational]) -> Result<Self, FormError> {
        let nv = v.len();
        Self::new(v.iter().map(|c| Poly::constant(nv, c.clone())).collect())
    }

    pub fn n(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// Common degree of every monomial in every component.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self
            .components
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| m.degree()));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// `X(f) = sum_i X_i df/dz_i`.
    pub fn derive(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(f.nvars());
        for (i, xi) in self.components.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let di = f.partial(i);
            out.add_scaled(&(xi * &di), &BigRational::one());
        }
        out
    }

    pub fn scale_by(&self, f: &Poly) -> PolyVectorField {
        PolyVectorField {
            components: self.components.iter().map(|p| p * f).collect(),
        }
    }

    pub fn add(&self, other: &PolyVectorField) -> Result<PolyVectorField, FormError> {
        if self.n() != other.n() {
            return Err(FormError::DimensionMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(PolyVectorField {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn eval(&self, point: &[BigRational]) -> Vec<BigRational> {
        self.components.iter().map(|p| p.eval(point)).collect()
    }

    /// True when `X(p)` is a multiple of `p`, i.e. `p` is a singular point
    /// of the induced foliation on `P^n`.
    pub fn is_parallel_to_radial_at(&self, point: &[BigRational]) -> bool {
        let v = self.eval(point);
        // all 2x2 minors of [v; p] vanish
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if !(&v[i] * &point[j] - &v[j] * &point[i]).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, p) in self.components.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "[{p}] d/dz{i}")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

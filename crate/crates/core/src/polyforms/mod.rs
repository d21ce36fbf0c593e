//! Exterior algebra of polynomial forms and vector fields on the affine cone
//! `C^{n+1}` over `P^n`.
//!
//! A twisted `r`-form of degree `m` on `P^n` is a polynomial `r`-form whose
//! coefficients are homogeneous of degree `m + 1` and which is annihilated by
//! the radial field. [`twisted_form_basis`] computes a basis of that space as
//! an exact kernel.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::exactla::{RationalMatrix, SparseVector};

mod field;
mod form;
mod poly;

pub use field::PolyVectorField;
pub use form::{exterior_derivative, interior, wedge, IndexTuple, PolyForm};
pub use poly::{monomials_of_degree, Monomial, Poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("ambient dimension mismatch: n = {left} vs n = {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("form degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("cannot contract a 0-form")]
    ContractZeroForm,
    #[error("form degree {r} out of range for n = {n}")]
    DegreeOutOfRange { n: usize, r: usize },
    #[error("index tuple {0:?} is not strictly increasing within 0..=n")]
    BadIndexTuple(Vec<usize>),
    #[error("monomial has {got} exponents, expected {expected}")]
    BadMonomial { expected: usize, got: usize },
    #[error("a vector field needs at least 2 coordinates, got {0}")]
    TooFewCoordinates(usize),
}

/// Radial (Euler) vector field on `C^{n+1}`.
pub fn radial_field(n: usize) -> PolyVectorField {
    PolyVectorField::radial(n)
}

/// True iff `w` has homogeneous coefficients of degree `m + 1` and
/// `i_theta w = 0`, i.e. `w` descends to a twisted form of degree `m`.
///
/// The zero form is never projective: it does not define a Pfaff system.
pub fn is_projective_form(w: &PolyForm, m: i64) -> bool {
    if w.degree() == 0 {
        return false;
    }
    match w.coefficient_degree() {
        Some(c) if i64::from(c) == m + 1 => {}
        _ => return false,
    }
    interior(&radial_field(w.n()), w)
        .map(|v| v.is_zero())
        .unwrap_or(false)
}

/// All strictly increasing `r`-tuples from `0..size`, lexicographically.
pub fn index_tuples(size: usize, r: usize) -> Vec<IndexTuple> {
    fn rec(start: usize, size: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexTuple>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..size {
            if size - i < left {
                break;
            }
            cur.push(i);
            rec(i + 1, size, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, size, r, &mut Vec::new(), &mut out);
    out
}

/// Monomial basis `{ z^a dz_I }` of homogeneous `r`-forms on `C^{n+1}` with
/// coefficient degree `degree`, ordered by index tuple and then monomial.
#[derive(Clone, Debug)]
pub struct FormBasis {
    n: usize,
    r: usize,
    elements: Vec<(IndexTuple, Monomial)>,
}

impl FormBasis {
    pub fn new(n: usize, r: usize, degree: u32) -> Self {
        let monos = monomials_of_degree(n + 1, degree);
        let elements = index_tuples(n + 1, r)
            .into_iter()
            .flat_map(|idx| monos.iter().map(move |m| (idx.clone(), m.clone())))
            .collect();
        FormBasis { n, r, elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, j: usize) -> PolyForm {
        let (idx, m) = &self.elements[j];
        PolyForm::from_terms(
            self.n,
            self.r,
            [(idx.clone(), m.exponents().to_vec(), BigRational::from_integer(1.into()))],
        )
        .expect("basis elements are well formed")
    }

    /// The form with the given coordinates in this basis.
    pub fn combination(&self, v: &SparseVector) -> PolyForm {
        let terms = v.entries().iter().map(|(j, c)| {
            let (idx, m) = &self.elements[*j];
            (idx.clone(), m.exponents().to_vec(), c.clone())
        });
        PolyForm::from_terms(self.n, self.r, terms).expect("basis elements are well formed")
    }

    /// Number of columns [`twisted_form_basis`] would eliminate for these
    /// parameters, without building anything.
    pub fn dimension(n: usize, r: usize, degree: u32) -> u128 {
        binomial_u128(n as u128 + 1, r as u128)
            * binomial_u128(u128::from(degree) + n as u128, n as u128)
    }
}

fn binomial_u128(a: u128, b: u128) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    (0..b).fold(1u128, |acc, i| acc * (a - i) / (i + 1))
}

/// Matrix whose `j`-th column holds the coefficients of `images[j]`, with
/// one row per `(index tuple, monomial)` key that occurs, numbered in order
/// of first appearance.
pub fn image_matrix(images: &[PolyForm]) -> RationalMatrix {
    let mut rows: BTreeMap<(IndexTuple, Monomial), usize> = BTreeMap::new();
    let mut entries = Vec::new();
    for (j, img) in images.iter().enumerate() {
        for (idx, m, c) in img.terms() {
            let next = rows.len();
            let row = *rows.entry((idx.clone(), m.clone())).or_insert(next);
            entries.push((row, j, c.clone()));
        }
    }
    let mut mat = RationalMatrix::zeros(rows.len(), images.len());
    for (i, j, c) in entries {
        mat.add_to(i, j, c);
    }
    mat
}

/// Basis of the twisted `r`-forms of degree `m` on `P^n`: homogeneous
/// polynomial `r`-forms with coefficient degree `m + 1` killed by the radial
/// field. Computed as the exact kernel of `i_theta`; empty when `m + 1 < 0`.
pub fn twisted_form_basis(n: usize, r: usize, m: i64) -> Vec<PolyForm> {
    let Ok(degree) = u32::try_from(m + 1) else {
        return Vec::new();
    };
    let basis = FormBasis::new(n, r, degree);
    if r == 0 {
        return (0..basis.len()).map(|j| basis.element(j)).collect();
    }
    let theta = radial_field(n);
    let images: Vec<PolyForm> = (0..basis.len())
        .map(|j| interior(&theta, &basis.element(j)).expect("shapes agree"))
        .collect();
    image_matrix(&images)
        .kernel_basis()
        .iter()
        .map(|v| basis.combination(v))
        .collect()
}

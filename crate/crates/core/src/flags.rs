//! Flags of Pfaff systems, integrability and decomposability tests, and
//! degree bookkeeping for concrete forms.
//!
//! The only form-to-form flag test is pointwise: kernels are compared at
//! sampled rational points away from both singular sets. Agreement at every
//! sample is evidence for a flag, not a proof; one failure refutes it.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::counting::{example_field, CountError};
use crate::polyforms::{
    exterior_derivative, image_matrix, interior, is_projective_form, radial_field, wedge, FormError,
    Poly, PolyForm, PolyVectorField,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlagError {
    #[error("ambient dimension mismatch: n = {left} vs n = {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("vector field is zero or not homogeneous")]
    NotHomogeneous,
    #[error("form is zero or has non-homogeneous coefficients")]
    NonHomogeneousForm,
    #[error("form is not annihilated by the radial field")]
    NotProjective,
    #[error("expected a {expected}-form, got a {got}-form")]
    WrongFormDegree { expected: usize, got: usize },
    #[error("point lies in the singular set of the {0} form")]
    SingularPoint(Side),
    #[error("point must have {expected} coordinates, got {got}")]
    PointLength { expected: usize, got: usize },
    #[error("no regular point found in {0} attempts")]
    NoRegularPoint(usize),
    #[error("flag legs out of order: upper codimension {upper} must be below lower codimension {lower}")]
    CodimensionOrder { lower: usize, upper: usize },
    #[error("codimension {k} out of range 1..={max}")]
    CodimensionOutOfRange { k: usize, max: usize },
    #[error("degree d must be at least 1")]
    ZeroDegree,
    #[error("coefficients must be nonzero")]
    ZeroCoefficient,
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Which argument of a two-form check was singular at the point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

impl core::fmt::Display for Side {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Side::First => "first",
            Side::Second => "second",
        })
    }
}

/// Codimension `k` Pfaff system of degree `m` on `P^n`; its defining form is a
/// section of `Omega^k(l)` with `l = m + k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PfaffDescriptor {
    pub n: usize,
    pub k: usize,
    pub m: i64,
}

impl PfaffDescriptor {
    pub fn new(n: usize, k: usize, m: i64) -> Result<Self, FlagError> {
        if k < 1 || k + 1 > n {
            return Err(FlagError::CodimensionOutOfRange {
                k,
                max: n.saturating_sub(1),
            });
        }
        Ok(PfaffDescriptor { n, k, m })
    }

    /// Descriptor of the system defined by a projective form.
    pub fn of_form(w: &PolyForm) -> Result<Self, FlagError> {
        let m = degree_of_pfaff(w)?;
        Self::new(w.n(), w.degree(), m)
    }

    pub fn twist(&self) -> i64 {
        self.m + self.k as i64 + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagKind {
    VfForm,
    FormFormPointwise,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlagLower {
    Field(PolyVectorField),
    Form(PolyForm),
}

impl FlagLower {
    fn n(&self) -> usize {
        match self {
            FlagLower::Field(x) => x.n(),
            FlagLower::Form(w) => w.n(),
        }
    }

    /// A foliation by curves has codimension `n - 1`.
    fn codimension(&self) -> usize {
        match self {
            FlagLower::Field(x) => x.n() - 1,
            FlagLower::Form(w) => w.degree(),
        }
    }
}

/// A candidate flag: the lower leg should be tangent to the upper one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagWitness {
    lower: FlagLower,
    upper: PolyForm,
}

impl FlagWitness {
    pub fn new(lower: FlagLower, upper: PolyForm) -> Result<Self, FlagError> {
        if lower.n() != upper.n() {
            return Err(FlagError::DimensionMismatch {
                left: lower.n(),
                right: upper.n(),
            });
        }
        if upper.degree() >= lower.codimension() {
            return Err(FlagError::CodimensionOrder {
                lower: lower.codimension(),
                upper: upper.degree(),
            });
        }
        Ok(FlagWitness { lower, upper })
    }

    pub fn kind(&self) -> FlagKind {
        match self.lower {
            FlagLower::Field(_) => FlagKind::VfForm,
            FlagLower::Form(_) => FlagKind::FormFormPointwise,
        }
    }

    pub fn lower(&self) -> &FlagLower {
        &self.lower
    }

    pub fn upper(&self) -> &PolyForm {
        &self.upper
    }

    /// Exact test for a field; pointwise sampling at `samples` regular points
    /// for a form.
    pub fn verify<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> Result<bool, FlagError> {
        match &self.lower {
            FlagLower::Field(x) => check_vf_form_flag(x, &self.upper),
            FlagLower::Form(w) => Ok(sample_kernel_containment(w, &self.upper, samples, rng)?.consistent),
        }
    }
}

fn check_projective(w: &PolyForm) -> Result<i64, FlagError> {
    let c = w.coefficient_degree().ok_or(FlagError::NonHomogeneousForm)?;
    let m = i64::from(c) - 1;
    if !is_projective_form(w, m) {
        return Err(FlagError::NotProjective);
    }
    Ok(m)
}

/// Pfaff degree `c - 1` of a projective form with coefficient degree `c`.
pub fn degree_of_pfaff(w: &PolyForm) -> Result<i64, FlagError> {
    check_projective(w)
}

/// Exact test of `i_X w = 0`.
pub fn check_vf_form_flag(x: &PolyVectorField, w: &PolyForm) -> Result<bool, FlagError> {
    if x.n() != w.n() {
        return Err(FlagError::DimensionMismatch {
            left: x.n(),
            right: w.n(),
        });
    }
    if x.homogeneous_degree().is_none() {
        return Err(FlagError::NotHomogeneous);
    }
    check_projective(w)?;
    Ok(interior(x, w)?.is_zero())
}

/// `dz_0 ^ ... ^ dz_n`.
pub fn volume_form(n: usize) -> PolyForm {
    let idx: Vec<usize> = (0..=n).collect();
    PolyForm::monomial_form(n, &idx, Poly::constant(n + 1, BigRational::one()))
        .expect("indices in range")
}

/// `i_{X_1} ... i_{X_j} i_theta dV`: the `(n - j)`-form whose kernel at a
/// regular point is spanned by the fields and the radial direction.
pub fn contracted_volume(n: usize, fields: &[&PolyVectorField]) -> Result<PolyForm, FormError> {
    let mut w = interior(&radial_field(n), &volume_form(n))?;
    for x in fields.iter().rev() {
        w = interior(x, &w)?;
    }
    Ok(w)
}

fn check_point(w: &PolyForm, p: &[BigRational]) -> Result<(), FlagError> {
    if p.len() != w.n() + 1 {
        return Err(FlagError::PointLength {
            expected: w.n() + 1,
            got: p.len(),
        });
    }
    Ok(())
}

/// `Ker w1(p) ⊆ Ker w2(p)`, where `Ker w(p) = { v : i_v w(p) = 0 }`.
pub fn check_kernel_containment_at_point(
    w1: &PolyForm,
    w2: &PolyForm,
    p: &[BigRational],
) -> Result<bool, FlagError> {
    if w1.n() != w2.n() {
        return Err(FlagError::DimensionMismatch {
            left: w1.n(),
            right: w2.n(),
        });
    }
    check_point(w1, p)?;
    let (a, b) = (w1.eval(p), w2.eval(p));
    if a.is_zero() {
        return Err(FlagError::SingularPoint(Side::First));
    }
    if b.is_zero() {
        return Err(FlagError::SingularPoint(Side::Second));
    }
    let n = w1.n();
    let images = (0..=n)
        .map(|i| interior(&PolyVectorField::coordinate(n, i), &a))
        .collect::<Result<Vec<_>, _>>()?;
    for v in image_matrix(&images).kernel_basis() {
        let v = PolyVectorField::constant(&v.to_dense())?;
        if !interior(&v, &b)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A nonzero point with coordinates in `-5..=5` at which no form in `forms`
/// vanishes, found by rejection sampling.
pub fn regular_point<R: Rng + ?Sized>(
    forms: &[&PolyForm],
    rng: &mut R,
) -> Result<Vec<BigRational>, FlagError> {
    const ATTEMPTS: usize = 1000;
    let Some(first) = forms.first() else {
        return Err(FlagError::NoRegularPoint(0));
    };
    let len = first.n() + 1;
    for _ in 0..ATTEMPTS {
        let p: Vec<BigRational> = (0..len)
            .map(|_| BigRational::from_integer(rng.gen_range(-5i64..=5).into()))
            .collect();
        if p.iter().all(Zero::is_zero) {
            continue;
        }
        if forms.iter().all(|w| !w.eval(&p).is_zero()) {
            return Ok(p);
        }
    }
    Err(FlagError::NoRegularPoint(ATTEMPTS))
}

/// Result of sampling kernel containment at several points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentSample {
    pub points_checked: usize,
    /// True when containment held at every point tried.
    pub consistent: bool,
    pub counterexample: Option<Vec<BigRational>>,
}

/// Runs [`check_kernel_containment_at_point`] at `samples` regular points,
/// stopping at the first failure.
pub fn sample_kernel_containment<R: Rng + ?Sized>(
    w1: &PolyForm,
    w2: &PolyForm,
    samples: usize,
    rng: &mut R,
) -> Result<ContainmentSample, FlagError> {
    for checked in 0..samples {
        let p = regular_point(&[w1, w2], rng)?;
        if !check_kernel_containment_at_point(w1, w2, &p)? {
            return Ok(ContainmentSample {
                points_checked: checked + 1,
                consistent: false,
                counterexample: Some(p),
            });
        }
    }
    Ok(ContainmentSample {
        points_checked: samples,
        consistent: true,
        counterexample: None,
    })
}

/// `w ^ dw = 0` for a projective 1-form. Whether the singular set has
/// codimension at least two is not checked.
pub fn check_integrability_codim1(w: &PolyForm) -> Result<bool, FlagError> {
    if w.degree() != 1 {
        return Err(FlagError::WrongFormDegree {
            expected: 1,
            got: w.degree(),
        });
    }
    check_projective(w)?;
    Ok(wedge(w, &exterior_derivative(w))?.is_zero())
}

/// `w ^ w = 0` for a 2-form.
pub fn check_decomposable_2form(w: &PolyForm) -> Result<bool, FlagError> {
    if w.degree() != 2 {
        return Err(FlagError::WrongFormDegree {
            expected: 2,
            got: w.degree(),
        });
    }
    Ok(wedge(w, w)?.is_zero())
}

/// `F dG - G dF`.
pub fn pencil_form(n: usize, f: &Poly, g: &Poly) -> PolyForm {
    let df = exterior_derivative(&PolyForm::function(n, f.clone()));
    let dg = exterior_derivative(&PolyForm::function(n, g.clone()));
    dg.mul_poly(f).sub(&df.mul_poly(g)).expect("same shape")
}

/// On `P^3`: the paired degree-`d` field
/// `X = a_0 z_1^d d/dz_0 + a_1 z_0^d d/dz_1 + a_2 z_3^d d/dz_2 + a_3 z_2^d d/dz_3`
/// and the degree-`2d` form `F dG - G dF` with
/// `F = a_1 z_0^{d+1} - a_0 z_1^{d+1}`, `G = a_3 z_2^{d+1} - a_2 z_3^{d+1}`.
pub fn example_5_1(d: u32, a: &[BigRational; 4]) -> Result<(PolyVectorField, PolyForm), FlagError> {
    if d == 0 {
        return Err(FlagError::ZeroDegree);
    }
    let x = example_field(3, d, a).map_err(|e| match e {
        CountError::ZeroCoefficient => FlagError::ZeroCoefficient,
        CountError::Form(f) => FlagError::Form(f),
        _ => unreachable!("n = 3 and four coefficients"),
    })?;
    let f = &Poly::power(4, 0, d + 1, a[1].clone()) - &Poly::power(4, 1, d + 1, a[0].clone());
    let g = &Poly::power(4, 2, d + 1, a[3].clone()) - &Poly::power(4, 3, d + 1, a[2].clone());
    Ok((x, pencil_form(3, &f, &g)))
}

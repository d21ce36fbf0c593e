//! Counts of invariant twisted forms and of tangent vector fields.
//!
//! The closed forms are evaluated from Bott dimensions; the oracles recompute
//! the same numbers as exact kernel dimensions of contraction maps on
//! explicit polynomial spaces.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::bott::{binomial, h_omega};
use crate::polyforms::{
    image_matrix, interior, is_projective_form, monomials_of_degree, twisted_form_basis,
    FormBasis, FormError, Monomial, Poly, PolyForm, PolyVectorField,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CountError {
    #[error("invalid query: {0}")]
    InvalidQuery(&'static str),
    #[error("count not asserted for these parameters: {0}")]
    PreconditionViolated(&'static str),
    #[error("vector field is zero or not homogeneous")]
    NotHomogeneous,
    #[error("form is not a projective 1-form")]
    NotProjective,
    #[error("coefficients must be nonzero")]
    ZeroCoefficient,
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("coordinates of P^{0} cannot be paired; n must be odd")]
    EvenDimension(usize),
    #[error("oracle kernel element failed re-verification")]
    KernelCheckFailed,
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Parameters of the invariant-form count: forms of degree `m` and form
/// degree `r` on `P^n` invariant under a foliation by curves of degree `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PfaffCountQuery {
    n: usize,
    d: u32,
    m: i64,
    r: usize,
}

impl PfaffCountQuery {
    pub fn new(n: usize, d: u32, m: i64, r: usize) -> Result<Self, CountError> {
        if n < 3 {
            return Err(CountError::InvalidQuery("n must be at least 3"));
        }
        if d == 0 {
            return Err(CountError::InvalidQuery("d must be at least 1"));
        }
        if r < 1 || r > n - 2 {
            return Err(CountError::InvalidQuery("r must satisfy 1 <= r <= n-2"));
        }
        Ok(PfaffCountQuery { n, d, m, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn m(&self) -> i64 {
        self.m
    }
    pub fn r(&self) -> usize {
        self.r
    }

    /// Twist `t_l = -l(d-1) + m + rd + 1` of the `l`-th Koszul term.
    pub fn koszul_twist(&self, l: usize) -> i64 {
        let (d, r, l) = (i64::from(self.d), self.r as i64, l as i64);
        -l * (d - 1) + self.m + r * d + 1
    }
}

/// Alternating sum `sum_{i=1}^{n-r} (-1)^{i+1} h^0(Omega^{r+i}(t_{r+i}))`.
pub fn pfaff_count(q: &PfaffCountQuery) -> BigUint {
    let mut acc = BigInt::zero();
    for i in 1..=q.n - q.r {
        let l = q.r + i;
        let h = BigInt::from(h_omega(q.n, 0, l, q.koszul_twist(l)).expect("l <= n"));
        if i % 2 == 1 {
            acc += h;
        } else {
            acc -= h;
        }
    }
    acc.to_biguint()
        .expect("alternating sum of section counts is nonnegative")
}

/// The three-case closed form written out with raw binomials.
pub fn pfaff_count_piecewise(q: &PfaffCountQuery) -> BigUint {
    let (n, r, m, d) = (q.n as i64, q.r as i64, q.m, i64::from(q.d));
    let term = |i: i64| {
        binomial(m + n + 1 - i * d, m + r + i + 1 - i * d) * binomial(m + r + i - i * d, r + i)
    };
    let alternating = |upto: i64| {
        let mut acc = BigInt::zero();
        for i in 1..=upto {
            let t = BigInt::from(term(i));
            if i % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        acc.to_biguint().expect("nonnegative")
    };
    if m + 1 <= d {
        return BigUint::zero();
    }
    for j in 1..=n - r - 2 {
        if j * d < m + 1 && m + 1 <= (j + 1) * d {
            return alternating(j);
        }
    }
    debug_assert!((n - r - 1) * d < m + 1);
    alternating(n - r)
}

/// Parameters of the tangent-field count for a codimension one distribution of
/// degree `m` on `P^n` and fields of degree `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VfCountQuery {
    pub n: usize,
    pub m: u32,
    pub d: i64,
    /// `m + 1 <= d < 2(m + 1)`.
    pub in_window: bool,
    /// `n` even and `d = (n/2) m`.
    pub even_excluded: bool,
    /// `n` odd and `d` is `((n-1)/2) m - 1` or `((n+1)/2) m + 1`.
    pub odd_excluded: bool,
}

impl VfCountQuery {
    pub fn new(n: usize, m: u32, d: i64) -> Result<Self, CountError> {
        if n < 3 {
            return Err(CountError::InvalidQuery("n must be at least 3"));
        }
        let (ni, mi) = (n as i64, i64::from(m));
        let in_window = mi + 1 <= d && d < 2 * (mi + 1);
        let even_excluded = n.is_multiple_of(2) && d == (ni / 2) * mi;
        let odd_excluded =
            n % 2 == 1 && (d == ((ni - 1) / 2) * mi - 1 || d == ((ni + 1) / 2) * mi + 1);
        Ok(VfCountQuery {
            n,
            m,
            d,
            in_window,
            even_excluded,
            odd_excluded,
        })
    }

    fn below_window_guard(&self) -> bool {
        let (n, m) = (self.n as i64, i64::from(self.m));
        self.n.is_multiple_of(2) || self.d != ((n - 1) / 2) * m - 1
    }
}

/// Number of independent degree-`d` fields tangent to a degree-`m`
/// distribution with isolated singularities, where that number is asserted.
pub fn vf_count(q: &VfCountQuery) -> Result<BigUint, CountError> {
    let (n, m, d) = (q.n as i64, i64::from(q.m), q.d);
    if q.in_window {
        if q.even_excluded {
            return Err(CountError::PreconditionViolated("n even and d = (n/2)m"));
        }
        if q.odd_excluded {
            return Err(CountError::PreconditionViolated(
                "n odd and d is ((n-1)/2)m - 1 or ((n+1)/2)m + 1",
            ));
        }
        let e = d - m + n;
        return Ok(binomial(e, e - 2) * binomial(e - 3, n - 2));
    }
    if d < m + 1 {
        return if q.below_window_guard() {
            Ok(BigUint::zero())
        } else {
            Err(CountError::PreconditionViolated(
                "d < m+1 with n odd and d = ((n-1)/2)m - 1",
            ))
        };
    }
    Err(CountError::PreconditionViolated("d >= 2(m+1)"))
}

/// Result of [`oracle_pfaff_count`].
#[derive(Debug, Clone)]
pub struct FormOracle {
    /// Dimension of `{ w twisted of degree m : i_X w = 0 }`.
    pub count: usize,
    /// A basis of that space; each element re-verified.
    pub kernel: Vec<PolyForm>,
    /// Dimension of all twisted `r`-forms of degree `m`.
    pub twisted_dimension: usize,
    /// Columns of the radial contraction matrix that was eliminated.
    pub ambient_columns: usize,
}

/// Kernel dimension of `w -> i_X w` on twisted `r`-forms of degree `m`.
pub fn oracle_pfaff_count(x: &PolyVectorField, m: i64, r: usize) -> Result<FormOracle, CountError> {
    if x.homogeneous_degree().is_none() {
        return Err(CountError::NotHomogeneous);
    }
    let n = x.n();
    if r < 1 || r + 2 > n {
        return Err(CountError::InvalidQuery("r must satisfy 1 <= r <= n-2"));
    }
    let ambient_columns = u32::try_from(m + 1)
        .map(|c| FormBasis::dimension(n, r, c) as usize)
        .unwrap_or(0);
    let basis = twisted_form_basis(n, r, m);
    let images = basis
        .iter()
        .map(|w| interior(x, w))
        .collect::<Result<Vec<_>, _>>()?;
    let kernel_vectors = image_matrix(&images).kernel_basis();

    let mut kernel = Vec::with_capacity(kernel_vectors.len());
    for v in &kernel_vectors {
        let mut w = PolyForm::zero(n, r);
        for (j, c) in v.entries() {
            w = w.add_scaled(&basis[*j], c)?;
        }
        if !interior(x, &w)?.is_zero() || !is_projective_form(&w, m) {
            return Err(CountError::KernelCheckFailed);
        }
        kernel.push(w);
    }
    Ok(FormOracle {
        count: kernel.len(),
        kernel,
        twisted_dimension: basis.len(),
        ambient_columns,
    })
}

/// Result of [`oracle_vf_count`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldOracle {
    /// Tangent fields of degree `d` on `P^n` (kernel modulo radial multiples).
    pub count: usize,
    /// Kernel of `X -> w(X)` on polynomial fields of degree `d`.
    pub kernel_dimension: usize,
    /// Dimension of `{ P * theta : deg P = d - 1 }`.
    pub radial_dimension: usize,
    pub columns: usize,
}

/// Columns of the matrix built by [`oracle_vf_count`].
pub fn vf_oracle_columns(n: usize, d: u32) -> u128 {
    FormBasis::dimension(n, 1, d)
}

/// Dimension of degree-`d` fields `X` on `P^n` with `w(X) = 0`, for a
/// projective 1-form `w`.
pub fn oracle_vf_count(w: &PolyForm, d: u32) -> Result<FieldOracle, CountError> {
    if w.degree() != 1 {
        return Err(CountError::NotProjective);
    }
    let Some(c) = w.coefficient_degree() else {
        return Err(CountError::NotProjective);
    };
    if !is_projective_form(w, i64::from(c) - 1) {
        return Err(CountError::NotProjective);
    }
    let n = w.n();
    let coeffs: Vec<Poly> = (0..=n)
        .map(|i| w.component(&[i]).cloned().unwrap_or_else(|| Poly::zero(n + 1)))
        .collect();
    let monos = monomials_of_degree(n + 1, d);
    let mut images = Vec::with_capacity((n + 1) * monos.len());
    for a in &coeffs {
        for mono in &monos {
            images.push(PolyForm::function(n, a.mul_monomial(mono, &BigRational::one())));
        }
    }
    let columns = images.len();
    let kernel_dimension = image_matrix(&images).nullity();
    let radial_dimension = if d == 0 {
        0
    } else {
        binomial(i64::from(d) - 1 + n as i64, n as i64)
            .to_usize()
            .expect("small")
    };
    debug_assert!(kernel_dimension >= radial_dimension);
    Ok(FieldOracle {
        count: kernel_dimension - radial_dimension,
        kernel_dimension,
        radial_dimension,
        columns,
    })
}

/// Degree-`d` field on `P^n` (`n` odd) coupling coordinates in pairs:
/// `a_{2k} z_{2k+1}^d d/dz_{2k} + a_{2k+1} z_{2k}^d d/dz_{2k+1}`.
pub fn example_field(n: usize, d: u32, coefficients: &[BigRational]) -> Result<PolyVectorField, CountError> {
    if n.is_multiple_of(2) {
        return Err(CountError::EvenDimension(n));
    }
    if d == 0 {
        return Err(CountError::InvalidQuery("d must be at least 1"));
    }
    if coefficients.len() != n + 1 {
        return Err(CountError::CoefficientCount {
            expected: n + 1,
            got: coefficients.len(),
        });
    }
    if coefficients.iter().any(Zero::is_zero) {
        return Err(CountError::ZeroCoefficient);
    }
    let components = (0..=n)
        .map(|i| Poly::power(n + 1, i ^ 1, d, coefficients[i].clone()))
        .collect();
    Ok(PolyVectorField::new(components)?)
}

fn random_poly<R: Rng + ?Sized>(monos: &[Monomial], rng: &mut R) -> Poly {
    let nvars = monos.first().map_or(0, Monomial::nvars);
    let mut p = Poly::zero(nvars);
    for mono in monos {
        let c: i64 = rng.gen_range(-5..=5);
        p.add_term(mono.clone(), BigRational::from_integer(c.into()));
    }
    p
}

/// Nonzero homogeneous degree-`d` field with coefficients drawn from
/// `-5..=5`.
pub fn random_field<R: Rng + ?Sized>(n: usize, d: u32, rng: &mut R) -> PolyVectorField {
    let monos = monomials_of_degree(n + 1, d);
    loop {
        let x = PolyVectorField::new((0..=n).map(|_| random_poly(&monos, rng)).collect())
            .expect("n >= 1");
        if !x.is_zero() {
            return x;
        }
    }
}

/// Nonzero random element of the twisted `r`-forms of degree `m`, or `None`
/// when that space is zero.
pub fn random_projective_form<R: Rng + ?Sized>(
    n: usize,
    r: usize,
    m: i64,
    rng: &mut R,
) -> Option<PolyForm> {
    let basis = twisted_form_basis(n, r, m);
    if basis.is_empty() {
        return None;
    }
    loop {
        let mut w = PolyForm::zero(n, r);
        for b in &basis {
            let c: i64 = rng.gen_range(-5..=5);
            w = w
                .add_scaled(b, &BigRational::from_integer(c.into()))
                .expect("same shape");
        }
        if !w.is_zero() {
            return Some(w);
        }
    }
}

/// Outcome of comparing a closed form with an oracle on random inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledCheck {
    pub expected: BigUint,
    /// Oracle value for each sample tried, in order.
    pub observed: Vec<usize>,
    pub matched: bool,
}

impl SampledCheck {
    /// Samples after the first.
    pub fn resamples(&self) -> usize {
        self.observed.len().saturating_sub(1)
    }
}

/// Compares [`pfaff_count`] with [`oracle_pfaff_count`] on random fields of
/// degree `d`. A mismatch means the sampled field probably has non-isolated
/// singularities, so up to `max_resamples` fresh fields are tried.
pub fn sampled_pfaff_check<R: Rng + ?Sized>(
    q: &PfaffCountQuery,
    max_resamples: usize,
    rng: &mut R,
) -> Result<SampledCheck, CountError> {
    let expected = pfaff_count(q);
    let mut observed = Vec::new();
    for _ in 0..=max_resamples {
        let x = random_field(q.n, q.d, rng);
        let got = oracle_pfaff_count(&x, q.m, q.r)?.count;
        observed.push(got);
        if BigUint::from(got) == expected {
            return Ok(SampledCheck {
                expected,
                observed,
                matched: true,
            });
        }
    }
    Ok(SampledCheck {
        expected,
        observed,
        matched: false,
    })
}

/// Compares a closed-form field count with [`oracle_vf_count`] on random
/// projective 1-forms of degree `m`, resampling on mismatch.
pub fn sampled_vf_check<R: Rng + ?Sized>(
    n: usize,
    m: u32,
    d: u32,
    expected: BigUint,
    max_resamples: usize,
    rng: &mut R,
) -> Result<SampledCheck, CountError> {
    let mut observed = Vec::new();
    for _ in 0..=max_resamples {
        let w = random_projective_form(n, 1, i64::from(m), rng)
            .ok_or(CountError::InvalidQuery("no projective 1-forms of this degree"))?;
        let got = oracle_vf_count(&w, d)?.count;
        observed.push(got);
        if BigUint::from(got) == expected {
            return Ok(SampledCheck {
                expected,
                observed,
                matched: true,
            });
        }
    }
    Ok(SampledCheck {
        expected,
        observed,
        matched: false,
    })
}

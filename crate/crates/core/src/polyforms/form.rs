use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::PolyVectorField;
use super::poly::{Monomial, Poly};
use super::FormError;

/// Strictly increasing tuple of coordinate indices `(i_1 < ... < i_r)`
/// labelling `dz_{i_1} ^ ... ^ dz_{i_r}`.
pub type IndexTuple = Vec<usize>;

/// Polynomial differential `r`-form on `C^{n+1}`.
///
/// Stored as a map from index tuple to its (nonzero) polynomial coefficient,
/// so the term order is lexicographic on the tuple and then graded-lex on the
/// monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyForm {
    n: usize,
    r: usize,
    terms: BTreeMap<IndexTuple, Poly>,
}

/// Sign of `dz_a ^ dz_b` rewritten in increasing order, or `None` when the
/// tuples share an index.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(bool, IndexTuple)> {
    let mut merged = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut inversions = 0usize;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                merged.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                // b[j] jumps over every remaining element of a
                inversions += a.len() - i;
                merged.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => return None,
        }
    }
    merged.extend_from_slice(&a[i..]);
    merged.extend_from_slice(&b[j..]);
    Some((inversions % 2 == 1, merged))
}

fn signed(c: &BigRational, negative: bool) -> BigRational {
    if negative {
        -c
    } else {
        c.clone()
    }
}

impl PolyForm {
    pub fn zero(n: usize, r: usize) -> Self {
        PolyForm {
            n,
            r,
            terms: BTreeMap::new(),
        }
    }

    /// The 0-form given by a polynomial.
    pub fn function(n: usize, f: Poly) -> Self {
        let mut w = PolyForm::zero(n, 0);
        w.add_component(Vec::new(), f);
        w
    }

    /// `dz_i`.
    pub fn dz(n: usize, i: usize) -> Self {
        let mut w = PolyForm::zero(n, 1);
        w.add_component(alloc::vec![i], Poly::constant(n + 1, BigRational::one()));
        w
    }

    /// `f dz_I`; the index tuple may be in any order and is sorted with the
    /// matching sign.
    pub fn monomial_form(n: usize, indices: &[usize], f: Poly) -> Result<Self, FormError> {
        let mut sorted = indices.to_vec();
        for &i in indices {
            if i > n {
                return Err(FormError::BadIndexTuple(indices.to_vec()));
            }
        }
        // bubble sort to count transpositions; tuples are tiny
        let mut swaps = 0usize;
        for a in 0..sorted.len() {
            for b in 0..sorted.len() - 1 - a {
                if sorted[b] > sorted[b + 1] {
                    sorted.swap(b, b + 1);
                    swaps += 1;
                }
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Ok(PolyForm::zero(n, indices.len()));
        }
        let mut w = PolyForm::zero(n, indices.len());
        let f = if swaps % 2 == 1 { -&f } else { f };
        w.add_component(sorted, f);
        Ok(w)
    }

    /// Builds a form from `(index tuple, exponents, coefficient)` triples,
    /// checking every structural invariant.
    pub fn from_terms<I>(n: usize, r: usize, terms: I) -> Result<Self, FormError>
    where
        I: IntoIterator<Item = (IndexTuple, Vec<u32>, BigRational)>,
    {
        if r > n + 1 {
            return Err(FormError::DegreeOutOfRange { n, r });
        }
        let mut w = PolyForm::zero(n, r);
        for (idx, exps, c) in terms {
            if idx.len() != r || idx.windows(2).any(|p| p[0] >= p[1]) || idx.iter().any(|&i| i > n)
            {
                return Err(FormError::BadIndexTuple(idx));
            }
            if exps.len() != n + 1 {
                return Err(FormError::BadMonomial {
                    expected: n + 1,
                    got: exps.len(),
                });
            }
            w.add_component(idx, Poly::term(Monomial::new(exps), c));
        }
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Form degree `r`.
    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(index tuple, coefficient polynomial)` pairs in canonical order.
    pub fn components(&self) -> impl Iterator<Item = (&IndexTuple, &Poly)> {
        self.terms.iter()
    }

    pub fn component(&self, idx: &[usize]) -> Option<&Poly> {
        self.terms.get(idx)
    }

    /// Flat `(index tuple, monomial, coefficient)` view in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&IndexTuple, &Monomial, &BigRational)> {
        self.terms
            .iter()
            .flat_map(|(idx, p)| p.terms().map(move |(m, c)| (idx, m, c)))
    }

    pub fn term_count(&self) -> usize {
        self.terms.values().map(Poly::len).sum()
    }

    fn add_component(&mut self, idx: IndexTuple, f: Poly) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(p) => {
                p.add_scaled(&f, &BigRational::one());
                if p.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, f);
            }
        }
    }

    fn add_term(&mut self, idx: &IndexTuple, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(idx.clone())
            .or_insert_with(|| Poly::zero(self.n + 1));
        entry.add_term(m, c);
        if entry.is_zero() {
            self.terms.remove(idx);
        }
    }

    fn check_same_shape(&self, other: &PolyForm) -> Result<(), FormError> {
        if self.n != other.n {
            return Err(FormError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.r != other.r {
            return Err(FormError::DegreeMismatch {
                left: self.r,
                right: other.r,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyForm) -> Result<PolyForm, FormError> {
        self.add_scaled(other, &BigRational::one())
    }

    pub fn sub(&self, other: &PolyForm) -> Result<PolyForm, FormError> {
        self.add_scaled(other, &-BigRational::one())
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &PolyForm, c: &BigRational) -> Result<PolyForm, FormError> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (idx, p) in &other.terms {
            out.add_component(idx.clone(), p.scale(c));
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> PolyForm {
        let mut out = PolyForm::zero(self.n, self.r);
        for (idx, p) in &self.terms {
            out.add_component(idx.clone(), p.scale(c));
        }
        out
    }

    /// Multiplies every coefficient by the polynomial `f`.
    pub fn mul_poly(&self, f: &Poly) -> PolyForm {
        let mut out = PolyForm::zero(self.n, self.r);
        for (idx, p) in &self.terms {
            out.add_component(idx.clone(), p * f);
        }
        out
    }

    /// Common total degree of every coefficient monomial. `None` for the zero
    /// form or when two monomials disagree.
    pub fn coefficient_degree(&self) -> Option<u32> {
        let mut it = self.terms().map(|(_, m, _)| m.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Value at a point of `C^{n+1}`: a form with constant coefficients.
    pub fn eval(&self, point: &[BigRational]) -> PolyForm {
        let mut out = PolyForm::zero(self.n, self.r);
        for (idx, p) in &self.terms {
            out.add_term(idx, Monomial::one(self.n + 1), p.eval(point));
        }
        out
    }

    pub fn wedge(&self, other: &PolyForm) -> Result<PolyForm, FormError> {
        wedge(self, other)
    }

    pub fn interior(&self, x: &PolyVectorField) -> Result<PolyForm, FormError> {
        interior(x, self)
    }

    pub fn d(&self) -> PolyForm {
        exterior_derivative(self)
    }
}

/// Exterior product. The result is the zero `(a.r + b.r)`-form whenever the
/// degrees add up past `n + 1`.
pub fn wedge(a: &PolyForm, b: &PolyForm) -> Result<PolyForm, FormError> {
    if a.n != b.n {
        return Err(FormError::DimensionMismatch {
            left: a.n,
            right: b.n,
        });
    }
    let mut out = PolyForm::zero(a.n, a.r + b.r);
    if a.r + b.r > a.n + 1 {
        return Ok(out);
    }
    for (ia, pa) in &a.terms {
        for (ib, pb) in &b.terms {
            if let Some((neg, idx)) = merge_sign(ia, ib) {
                let prod = pa * pb;
                let prod = if neg { -&prod } else { prod };
                out.add_component(idx, prod);
            }
        }
    }
    Ok(out)
}

/// Contraction `i_X w`; removing slot `j` (0-based) of a term carries the
/// sign `(-1)^j`.
pub fn interior(x: &PolyVectorField, w: &PolyForm) -> Result<PolyForm, FormError> {
    if x.n() != w.n {
        return Err(FormError::DimensionMismatch {
            left: x.n(),
            right: w.n,
        });
    }
    if w.r == 0 {
        return Err(FormError::ContractZeroForm);
    }
    let mut out = PolyForm::zero(w.n, w.r - 1);
    for (idx, p) in &w.terms {
        for (j, &slot) in idx.iter().enumerate() {
            let xi = x.component(slot);
            if xi.is_zero() {
                continue;
            }
            let mut rest = idx.clone();
            rest.remove(j);
            let prod = p * xi;
            let prod = if j % 2 == 1 { -&prod } else { prod };
            out.add_component(rest, prod);
        }
    }
    Ok(out)
}

/// `d(f dz_I) = sum_k (df/dz_k) dz_k ^ dz_I`.
pub fn exterior_derivative(w: &PolyForm) -> PolyForm {
    let mut out = PolyForm::zero(w.n, w.r + 1);
    if w.r + 1 > w.n + 1 {
        return out;
    }
    for (idx, p) in &w.terms {
        for k in 0..=w.n {
            if idx.binary_search(&k).is_ok() {
                continue;
            }
            let dp = p.partial(k);
            if dp.is_zero() {
                continue;
            }
            let before = idx.iter().take_while(|&&i| i < k).count();
            let mut merged = idx.clone();
            merged.insert(before, k);
            for (m, c) in dp.terms() {
                out.add_term(&merged, m.clone(), signed(c, before % 2 == 1));
            }
        }
    }
    out
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (idx, p)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "[{p}]")?;
            for k in idx {
                write!(f, " dz{k}")?;
            }
        }
        Ok(())
    }
}

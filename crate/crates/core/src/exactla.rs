//! Exact rank and kernel of sparse rational matrices.
//!
//! Rows are first scaled to primitive integer vectors (this changes neither
//! rank nor kernel), the column/row incidence graph is split into connected
//! blocks, and each block is eliminated fraction-free: a row update
//! `row <- (p/g) row - (a/g) pivot` followed by division by the row content
//! keeps every entry integral and small. Pivots are taken in the column with
//! the fewest remaining nonzeros.
//!
//! [`RationalMatrix::bareiss_rank`] is an independent dense Bareiss route and
//! [`RationalMatrix::modular_rank`] a word-size lower bound; neither is used
//! to produce results, they exist for cross-checking.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Sparse rational vector; entries sorted by index, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseVector {
    dim: usize,
    entries: Vec<(usize, BigRational)>,
}

impl SparseVector {
    pub fn new(dim: usize, mut entries: Vec<(usize, BigRational)>) -> Self {
        entries.retain(|(_, c)| !c.is_zero());
        entries.sort_by_key(|(i, _)| *i);
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(i, _)| *i < dim));
        SparseVector { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, BigRational)] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> BigRational {
        self.entries
            .binary_search_by_key(&i, |(k, _)| *k)
            .map(|p| self.entries[p].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    pub fn to_dense(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.dim];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigRational>,
}

type IntRow = Vec<(usize, BigInt)>;

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Builds from dense rows; all rows must have the same length.
    pub fn from_rows(rows: &[Vec<BigRational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, c) in row.iter().enumerate() {
                m.set(i, j, c.clone());
            }
        }
        m
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: BigRational) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.entries.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn transpose(&self) -> Self {
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    /// `M v` as a dense vector.
    pub fn mul_vector(&self, v: &SparseVector) -> Vec<BigRational> {
        assert_eq!(v.dim(), self.cols, "dimension mismatch");
        let mut out = vec![BigRational::zero(); self.rows];
        for (&(i, j), c) in &self.entries {
            let x = v.get(j);
            if !x.is_zero() {
                out[i] += c * x;
            }
        }
        out
    }

    pub fn annihilates(&self, v: &SparseVector) -> bool {
        self.mul_vector(v).iter().all(Zero::is_zero)
    }

    /// Each nonempty row scaled to a primitive integer vector.
    fn integer_rows(&self) -> Vec<IntRow> {
        let mut grouped: Vec<Vec<(usize, &BigRational)>> = vec![Vec::new(); self.rows];
        for (&(i, j), c) in &self.entries {
            grouped[i].push((j, c));
        }
        grouped
            .into_iter()
            .filter(|r| !r.is_empty())
            .map(|r| {
                let lcm = r
                    .iter()
                    .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
                let mut row: IntRow = r
                    .into_iter()
                    .map(|(j, c)| (j, c.numer() * (&lcm / c.denom())))
                    .collect();
                make_primitive(&mut row);
                row
            })
            .collect()
    }

    fn eliminate(&self) -> Elimination {
        let rows = self.integer_rows();

        // connected blocks of the row/column incidence graph
        let mut uf = UnionFind::new(self.cols);
        for row in &rows {
            for w in row.windows(2) {
                uf.union(w[0].0, w[1].0);
            }
        }
        let mut blocks: BTreeMap<usize, Vec<IntRow>> = BTreeMap::new();
        for row in rows {
            let root = uf.find(row[0].0);
            blocks.entry(root).or_default().push(row);
        }

        let mut echelon = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for (_, block) in blocks {
            let first = echelon.len();
            eliminate_block(block, &mut echelon);
            for (c, _) in &echelon[first..] {
                is_pivot[*c] = true;
            }
        }
        Elimination { echelon, is_pivot }
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        self.eliminate().echelon.len()
    }

    /// Basis of the right null space, one vector per non-pivot column, in
    /// increasing order of that column. The free column's entry is 1.
    pub fn kernel_basis(&self) -> Vec<SparseVector> {
        let Elimination { echelon, is_pivot } = self.eliminate();

        // pivot rows grouped by block, keyed by pivot column
        let mut uf = UnionFind::new(self.cols);
        for (_, row) in &echelon {
            for w in row.windows(2) {
                uf.union(w[0].0, w[1].0);
            }
        }
        let mut block_rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (k, (c, _)) in echelon.iter().enumerate() {
            block_rows.entry(uf.find(*c)).or_default().push(k);
        }

        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x: BTreeMap<usize, BigRational> = BTreeMap::new();
            x.insert(free, BigRational::one());
            if let Some(ks) = block_rows.get(&uf.find(free)) {
                // later pivots are solved first
                for &k in ks.iter().rev() {
                    let (pc, row) = &echelon[k];
                    let mut acc = BigRational::zero();
                    let mut pivot_val = None;
                    for (j, a) in row {
                        if j == pc {
                            pivot_val = Some(a);
                        } else if let Some(xj) = x.get(j) {
                            acc += xj * BigRational::from_integer(a.clone());
                        }
                    }
                    if !acc.is_zero() {
                        let p = pivot_val.expect("pivot entry present");
                        x.insert(*pc, -acc / BigRational::from_integer(p.clone()));
                    }
                }
            }
            out.push(SparseVector::new(self.cols, x.into_iter().collect()));
        }
        out
    }

    /// Dimension of the right null space.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Dense Bareiss elimination on the integer-scaled rows. Independent of
    /// the sparse routine; cubic, so only for small matrices.
    pub fn bareiss_rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = self
            .integer_rows()
            .into_iter()
            .map(|r| {
                let mut dense = vec![BigInt::zero(); self.cols];
                for (j, v) in r {
                    dense[j] = v;
                }
                dense
            })
            .collect();
        let m = a.len();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == m {
                break;
            }
            let Some(p) = (rank..m).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for i in rank + 1..m {
                for j in col + 1..self.cols {
                    let v = (&a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        rank
    }

    /// Rank of the integer-scaled matrix modulo `prime` (< 2^32). Never
    /// exceeds [`rank`](Self::rank).
    pub fn modular_rank(&self, prime: u64) -> usize {
        assert!(prime > 1 && prime < (1 << 32), "prime must fit in 32 bits");
        let p = BigInt::from(prime);
        let mut rows: Vec<BTreeMap<usize, u64>> = self
            .integer_rows()
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .filter_map(|(j, v)| {
                        let x = v.mod_floor(&p).to_u64().expect("reduced below prime");
                        (x != 0).then_some((j, x))
                    })
                    .collect()
            })
            .collect();
        let mut rank = 0;
        while let Some(pos) = rows.iter().position(|r| !r.is_empty()) {
            let pivot = rows.swap_remove(pos);
            let (&pc, &pv) = pivot.iter().next().expect("nonempty");
            let inv = mod_pow(pv, prime - 2, prime);
            for row in rows.iter_mut() {
                let Some(&a) = row.get(&pc) else { continue };
                let factor = a * inv % prime;
                for (&j, &v) in &pivot {
                    let cur = row.get(&j).copied().unwrap_or(0);
                    let nv = (cur + prime - factor * v % prime) % prime;
                    if nv == 0 {
                        row.remove(&j);
                    } else {
                        row.insert(j, nv);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

struct Elimination {
    /// `(pivot column, row)`; row `k` is zero in the pivot columns of every
    /// earlier row of the same block.
    echelon: Vec<(usize, IntRow)>,
    is_pivot: Vec<bool>,
}

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v /= &g;
    }
}

fn row_get(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(j, _)| *j)
        .ok()
        .map(|p| &row[p].1)
}

/// `a * x - b * y` for sorted sparse rows.
fn combine(a: &BigInt, x: &IntRow, b: &BigInt, y: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn eliminate_block(mut active: Vec<IntRow>, echelon: &mut Vec<(usize, IntRow)>) {
    loop {
        active.retain(|r| !r.is_empty());
        if active.is_empty() {
            return;
        }
        // shortest column
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for row in &active {
            for (j, _) in row {
                *counts.entry(*j).or_default() += 1;
            }
        }
        let (&col, _) = counts
            .iter()
            .min_by_key(|(&j, &c)| (c, j))
            .expect("active rows are nonempty");
        // shortest row holding that column
        let p = active
            .iter()
            .enumerate()
            .filter(|(_, r)| row_get(r, col).is_some())
            .min_by_key(|(i, r)| (r.len(), *i))
            .map(|(i, _)| i)
            .expect("column count was positive");
        let mut pivot = active.swap_remove(p);
        if row_get(&pivot, col).is_some_and(|v| v.sign() == Sign::Minus) {
            for (_, v) in pivot.iter_mut() {
                *v = -core::mem::take(v);
            }
        }
        let pv = row_get(&pivot, col).expect("pivot present").clone();
        for row in active.iter_mut() {
            let Some(a) = row_get(row, col) else { continue };
            let g = pv.gcd(a);
            let (s, t) = (&pv / &g, a / &g);
            let mut next = combine(&s, row, &t, &pivot);
            make_primitive(&mut next);
            *row = next;
        }
        echelon.push((col, pivot));
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

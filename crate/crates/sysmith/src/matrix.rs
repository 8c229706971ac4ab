//! Exact dense matrices over a ring ([`MatR`]) or its field of fractions
//! ([`MatF`]).
//!
//! Every matrix carries its ring tag so that empty shapes (`0 x n`,
//! `n x 0`) stay well-typed; all shape and ring mismatches are reported as
//! errors, never silently coerced. Determinants over the ring use
//! fraction-free (Bareiss) elimination with exact division only;
//! determinants, ranks and inverses over the fraction field use ordinary
//! field elimination. Conventions for degenerate inputs: an empty matrix has
//! determinant one and rank zero.

use std::fmt;

use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::ring::{RingElem, RingTag};

/// Scalar interface shared by ring elements and fractions so the generic
/// matrix operations are written once.
pub trait Entry: Clone + PartialEq + fmt::Debug {
    fn entry_zero(tag: RingTag) -> Self;
    fn entry_one(tag: RingTag) -> Self;
    fn entry_tag(&self) -> RingTag;
    fn entry_add(&self, other: &Self) -> Self;
    fn entry_neg(&self) -> Self;
    fn entry_mul(&self, other: &Self) -> Self;
    fn entry_is_zero(&self) -> bool;
}

impl Entry for RingElem {
    fn entry_zero(tag: RingTag) -> Self {
        RingElem::zero(tag)
    }
    fn entry_one(tag: RingTag) -> Self {
        RingElem::one(tag)
    }
    fn entry_tag(&self) -> RingTag {
        self.tag()
    }
    fn entry_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn entry_neg(&self) -> Self {
        self.neg()
    }
    fn entry_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn entry_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Entry for Frac {
    fn entry_zero(tag: RingTag) -> Self {
        Frac::zero(tag)
    }
    fn entry_one(tag: RingTag) -> Self {
        Frac::one(tag)
    }
    fn entry_tag(&self) -> RingTag {
        self.tag()
    }
    fn entry_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn entry_neg(&self) -> Self {
        self.neg()
    }
    fn entry_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn entry_is_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    ring: RingTag,
    entries: Vec<T>,
}

/// Matrix with entries in the base ring.
pub type MatR = Mat<RingElem>;
/// Matrix with entries in the field of fractions.
pub type MatF = Mat<Frac>;

impl<T: Entry> Mat<T> {
    pub fn zero(ring: RingTag, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            ring,
            entries: vec![T::entry_zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: RingTag, n: usize) -> Self {
        let mut m = Mat::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, T::entry_one(ring));
        }
        m
    }

    /// Builds from nested rows; all rows must share a length and all entries
    /// the declared ring.
    pub fn from_rows(ring: RingTag, rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch);
            }
            for e in row {
                if e.entry_tag() != ring {
                    return Err(Error::RingMismatch);
                }
                entries.push(e);
            }
        }
        Ok(Mat {
            rows: r,
            cols: c,
            ring,
            entries,
        })
    }

    pub fn from_fn(
        ring: RingTag,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> T,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat {
            rows,
            cols,
            ring,
            entries,
        }
    }

    /// Square matrix with `d` on the leading diagonal, embedded in an
    /// `rows x cols` zero matrix.
    pub fn diag(ring: RingTag, d: &[T], rows: usize, cols: usize) -> Result<Self> {
        if d.len() > rows.min(cols) {
            return Err(Error::ShapeMismatch);
        }
        let mut m = Mat::zero(ring, rows, cols);
        for (i, e) in d.iter().enumerate() {
            if e.entry_tag() != ring {
                return Err(Error::RingMismatch);
            }
            m.set(i, i, e.clone());
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        assert!(v.entry_tag() == self.ring, "ring mismatch");
        self.entries[i * self.cols + j] = v;
    }

    /// Row-major iteration over all entries.
    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(T::entry_is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        *self.at(i, j) == T::entry_one(self.ring)
                    } else {
                        self.at(i, j).entry_is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.ring, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn map<U: Entry>(&self, ring: RingTag, mut f: impl FnMut(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            ring,
            entries: self.entries.iter().map(|e| f(e)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(self.ring, T::entry_neg)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch);
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            ring: self.ring,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.entry_add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch);
        }
        let mut out: Mat<T> = Mat::zero(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.entry_is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.entry_is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).entry_add(&a.entry_mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Result<Self> {
        if c.entry_tag() != self.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self.map(self.ring, |e| c.entry_mul(e)))
    }

    /// Contiguous block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Result<Self> {
        if r0 + rows > self.rows || c0 + cols > self.cols {
            return Err(Error::ShapeMismatch);
        }
        Ok(Mat::from_fn(self.ring, rows, cols, |i, j| {
            self.at(r0 + i, c0 + j).clone()
        }))
    }

    /// Gathers the (0-based) listed rows and columns.
    pub fn gather(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if rows.iter().any(|&i| i >= self.rows) || cols.iter().any(|&j| j >= self.cols) {
            return Err(Error::BadIndexSet);
        }
        Ok(Mat::from_fn(self.ring, rows.len(), cols.len(), |i, j| {
            self.at(rows[i], cols[j]).clone()
        }))
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch);
        }
        Ok(Mat::from_fn(
            self.ring,
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.at(i, j).clone()
                } else {
                    other.at(i, j - self.cols).clone()
                }
            },
        ))
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch);
        }
        Ok(Mat::from_fn(
            self.ring,
            self.rows + other.rows,
            self.cols,
            |i, j| {
                if i < self.rows {
                    self.at(i, j).clone()
                } else {
                    other.at(i - self.rows, j).clone()
                }
            },
        ))
    }

    /// Assembles `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        a.hstack(b)?.vstack(&c.hstack(d)?)
    }

    /// Block-diagonal sum `self (+) other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let z1 = Mat::zero(self.ring, self.rows, other.cols);
        let z2 = Mat::zero(self.ring, other.rows, self.cols);
        Mat::from_blocks(self, &z1, &z2, other).expect("shapes conform by construction")
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.entries.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.rows {
            self.entries.swap(k * self.cols + i, k * self.cols + j);
        }
    }

    /// `row[t] += c * row[s]`.
    pub fn row_axpy(&mut self, t: usize, s: usize, c: &T) {
        for j in 0..self.cols {
            let v = self.at(t, j).entry_add(&c.entry_mul(self.at(s, j)));
            self.set(t, j, v);
        }
    }

    /// `col[t] += c * col[s]`.
    pub fn col_axpy(&mut self, t: usize, s: usize, c: &T) {
        for i in 0..self.rows {
            let v = self.at(i, t).entry_add(&c.entry_mul(self.at(i, s)));
            self.set(i, t, v);
        }
    }

    /// Replaces rows `(i, j)` by `(a*ri + b*rj, c*ri + d*rj)`.
    pub fn row_combine(&mut self, i: usize, j: usize, a: &T, b: &T, c: &T, d: &T) {
        for k in 0..self.cols {
            let ri = self.at(i, k).clone();
            let rj = self.at(j, k).clone();
            self.set(i, k, a.entry_mul(&ri).entry_add(&b.entry_mul(&rj)));
            self.set(j, k, c.entry_mul(&ri).entry_add(&d.entry_mul(&rj)));
        }
    }

    /// Replaces columns `(i, j)` by `(a*ci + b*cj, c*ci + d*cj)`.
    pub fn col_combine(&mut self, i: usize, j: usize, a: &T, b: &T, c: &T, d: &T) {
        for k in 0..self.rows {
            let ci = self.at(k, i).clone();
            let cj = self.at(k, j).clone();
            self.set(k, i, a.entry_mul(&ci).entry_add(&b.entry_mul(&cj)));
            self.set(k, j, c.entry_mul(&ci).entry_add(&d.entry_mul(&cj)));
        }
    }

    /// `row[i] *= c`.
    pub fn row_scale(&mut self, i: usize, c: &T) {
        for j in 0..self.cols {
            let v = c.entry_mul(self.at(i, j));
            self.set(i, j, v);
        }
    }
}

impl<T: Entry> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {:?} [", self.rows, self.cols, self.ring)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl MatR {
    /// Lifts into the fraction field.
    pub fn to_frac(&self) -> MatF {
        self.map(self.ring, |e| Frac::from_ring(e.clone()))
    }

    /// Determinant by fraction-free (Bareiss) elimination; every division is
    /// exact in the ring. The empty matrix has determinant one.
    pub fn det(&self) -> Result<RingElem> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(RingElem::one(self.ring));
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = RingElem::one(self.ring);
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                match (k + 1..n).find(|&l| !m.at(l, k).is_zero()) {
                    Some(l) => {
                        m.swap_rows(k, l);
                        negate = !negate;
                    }
                    None => return Ok(RingElem::zero(self.ring)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m
                        .at(k, k)
                        .mul(m.at(i, j))
                        .sub(&m.at(i, k).mul(m.at(k, j)));
                    let q = num
                        .divide_exact(&prev)
                        .map_err(|_| Error::Internal("Bareiss division must be exact"))?;
                    m.set(i, j, q);
                }
                m.set(i, k, RingElem::zero(self.ring));
            }
            prev = m.at(k, k).clone();
        }
        let d = m.at(n - 1, n - 1).clone();
        Ok(if negate { d.neg() } else { d })
    }

    /// Rank over the fraction field.
    pub fn rank(&self) -> usize {
        self.to_frac().rank()
    }

    /// Determinant of the square submatrix selected by 1-based index sets.
    pub fn minor(&self, rows: &IndexSet, cols: &IndexSet) -> Result<RingElem> {
        if rows.len() != cols.len() {
            return Err(Error::ShapeMismatch);
        }
        rows.check_bound(self.rows)?;
        cols.check_bound(self.cols)?;
        self.gather(&rows.zero_based(), &cols.zero_based())?.det()
    }

    /// Exact inverse of a unimodular matrix, staying in the ring. Errors
    /// with [`Error::NotRingValued`] when the matrix is invertible over the
    /// field but not over the ring.
    pub fn inverse_unimodular(&self) -> Result<MatR> {
        let inv = self.to_frac().inverse()?;
        inv.to_ring()
    }

    /// Whether the matrix is square with unit determinant.
    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.is_square() && self.det()?.is_unit())
    }

    /// Entry-wise exact division; errors if any entry fails.
    pub fn divide_exact(&self, e: &RingElem) -> Result<MatR> {
        let mut out = Vec::with_capacity(self.entries.len());
        for v in &self.entries {
            out.push(v.divide_exact(e)?);
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            ring: self.ring,
            entries: out,
        })
    }
}

impl MatF {
    /// Exact conversion to a ring matrix; every entry must be ring-valued.
    pub fn to_ring(&self) -> Result<MatR> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(e.to_ring()?);
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            ring: self.ring,
            entries,
        })
    }

    /// Least common denominator of all entries (canonical); one for empty or
    /// ring-valued matrices.
    pub fn lcd(&self) -> RingElem {
        let mut acc = RingElem::one(self.ring);
        for e in &self.entries {
            acc = acc.lcm(e.den()).expect("same ring");
        }
        acc
    }

    /// Multiplies every entry by a ring element (typically a denominator
    /// being cleared).
    pub fn scale_elem(&self, c: &RingElem) -> Result<MatF> {
        if c.tag() != self.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self.map(self.ring, |e| e.mul_elem(c)))
    }

    /// Determinant by field elimination; one for the empty matrix.
    pub fn det(&self) -> Result<Frac> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Frac::one(self.ring);
        for k in 0..n {
            let pivot = match (k..n).find(|&l| !m.at(l, k).is_zero()) {
                Some(l) => l,
                None => return Ok(Frac::zero(self.ring)),
            };
            if pivot != k {
                m.swap_rows(k, pivot);
                det = det.neg();
            }
            let p = m.at(k, k).clone();
            det = det.mul(&p);
            let p_inv = p.recip().expect("pivot nonzero");
            for i in k + 1..n {
                if m.at(i, k).is_zero() {
                    continue;
                }
                let factor = m.at(i, k).mul(&p_inv).neg();
                m.row_axpy(i, k, &factor);
            }
        }
        Ok(det)
    }

    /// Rank by row reduction.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let pivot = match (r..m.rows).find(|&l| !m.at(l, c).is_zero()) {
                Some(l) => l,
                None => continue,
            };
            m.swap_rows(r, pivot);
            let p_inv = m.at(r, c).recip().expect("pivot nonzero");
            for i in r + 1..m.rows {
                if m.at(i, c).is_zero() {
                    continue;
                }
                let factor = m.at(i, c).mul(&p_inv).neg();
                m.row_axpy(i, r, &factor);
            }
            r += 1;
        }
        r
    }

    /// Inverse by Gauss-Jordan elimination; errors on singular input.
    pub fn inverse(&self) -> Result<MatF> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = MatF::identity(self.ring, n);
        for k in 0..n {
            let pivot = (k..n)
                .find(|&l| !m.at(l, k).is_zero())
                .ok_or(Error::Singular)?;
            m.swap_rows(k, pivot);
            inv.swap_rows(k, pivot);
            let p_inv = m.at(k, k).recip().expect("pivot nonzero");
            m.row_scale(k, &p_inv);
            inv.row_scale(k, &p_inv);
            for i in 0..n {
                if i == k || m.at(i, k).is_zero() {
                    continue;
                }
                let factor = m.at(i, k).neg();
                m.row_axpy(i, k, &factor);
                inv.row_axpy(i, k, &factor);
            }
        }
        Ok(inv)
    }

    /// Determinant of the square submatrix selected by 1-based index sets.
    pub fn minor(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Frac> {
        if rows.len() != cols.len() {
            return Err(Error::ShapeMismatch);
        }
        rows.check_bound(self.rows)?;
        cols.check_bound(self.cols)?;
        self.gather(&rows.zero_based(), &cols.zero_based())?.det()
    }
}

/// A strictly increasing set of 1-based indices used to select minors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Validates that the indices are 1-based and strictly increasing.
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.iter().any(|&i| i == 0) || indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadIndexSet);
        }
        Ok(IndexSet(indices))
    }

    /// The full set `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        IndexSet((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn zero_based(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i - 1).collect()
    }

    /// Shifts every index by `n` (used to address trailing blocks).
    pub fn shift(&self, n: usize) -> IndexSet {
        IndexSet(self.0.iter().map(|&i| i + n).collect())
    }

    /// Concatenates `{1..n}` with `self + n`, as in bordered-minor formulas.
    pub fn prepend_full(&self, n: usize) -> IndexSet {
        let mut v: Vec<usize> = (1..=n).collect();
        v.extend(self.shift(n).0);
        IndexSet(v)
    }

    fn check_bound(&self, n: usize) -> Result<()> {
        if self.0.last().is_some_and(|&i| i > n) {
            Err(Error::BadIndexSet)
        } else {
            Ok(())
        }
    }

    /// All strictly increasing `k`-subsets of `{1, ..., n}`.
    pub fn combinations(n: usize, k: usize) -> Vec<IndexSet> {
        let mut out = Vec::new();
        if k > n {
            return out;
        }
        let mut cur: Vec<usize> = (1..=k).collect();
        loop {
            out.push(IndexSet(cur.clone()));
            // Advance to the next combination in lexicographic order.
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < n - (k - 1 - i) {
                    break;
                }
            }
            cur[i] += 1;
            for j in i + 1..k {
                cur[j] = cur[j - 1] + 1;
            }
        }
    }
}

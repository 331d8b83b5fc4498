//! Exact linear algebra for matrices over a field and over the polynomial
//! ring `F[X]`.
//!
//! [`FMatrix`] holds plain field elements and supports rank, determinant and
//! column-independence queries by Gaussian elimination. [`PolyMatrix`] holds
//! polynomial entries of bounded degree and answers the same questions over
//! the fraction field `F(X)` without symbolic elimination: a polynomial
//! matrix is evaluated at a deterministic set of field points, and ranks of
//! the evaluations decide ranks over `F(X)` because every minor is a
//! polynomial of bounded degree.
//!
//! Evaluation point sets are always the first elements of the canonical
//! field enumeration: starting at 0 for determinant interpolation, at 1
//! (nonzero points) for column-basis computations. Ties between equal-weight
//! bases are broken toward the lexicographically smallest index set, so all
//! outputs are deterministic.

use crate::error::{Error, Result};
use crate::field::{Element, Embedding, Field};
use crate::poly::Poly;

/// A dense matrix of field elements, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Element>,
}

impl FMatrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Element>) -> Result<FMatrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|e| e.field() != &field) {
            return Err(Error::FieldMismatch);
        }
        Ok(FMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Element>>) -> Result<FMatrix> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch("ragged rows".to_string()));
        }
        FMatrix::new(field.clone(), n, m, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from integer entries, row-major.
    pub fn from_integers(field: &Field, rows: usize, cols: usize, entries: &[i64]) -> FMatrix {
        assert_eq!(entries.len(), rows * cols);
        FMatrix {
            field: field.clone(),
            rows,
            cols,
            data: entries.iter().map(|v| field.integer(*v)).collect(),
        }
    }

    pub fn identity(field: &Field, n: usize) -> FMatrix {
        let mut data = vec![field.zero(); n * n];
        for i in 0..n {
            data[i * n + i] = field.one();
        }
        FMatrix {
            field: field.clone(),
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn zero(field: &Field, rows: usize, cols: usize) -> FMatrix {
        FMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Element {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<Element> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> FMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        FMatrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &FMatrix) -> Result<FMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = self.field.zero();
                for t in 0..self.cols {
                    acc = &acc + &(self.get(r, t) * rhs.get(t, c));
                }
                data.push(acc);
            }
        }
        FMatrix::new(self.field.clone(), self.rows, rhs.cols, data)
    }

    /// Exact rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut basis = GaussianBasis::new();
        (0..self.cols)
            .filter(|c| basis.try_insert(self.column(*c)))
            .count()
    }

    /// Rank of the submatrix formed by the listed columns (set semantics:
    /// duplicates are collapsed).
    pub fn rank_of_columns(&self, cols: &[usize]) -> Result<usize> {
        let cols = check_column_set(cols, self.cols)?;
        let mut basis = GaussianBasis::new();
        Ok(cols
            .into_iter()
            .filter(|c| basis.try_insert(self.column(*c)))
            .count())
    }

    /// Whether the listed columns are linearly independent.
    pub fn independent_columns(&self, cols: &[usize]) -> Result<bool> {
        let set = check_column_set(cols, self.cols)?;
        if set.len() > self.rows {
            return Ok(false);
        }
        let len = set.len();
        Ok(self.rank_of_columns(&set)? == len)
    }

    /// Exact determinant by elimination with pivot-row swaps.
    pub fn determinant(&self) -> Result<Element> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.data.clone();
        let at = |m: &Vec<Element>, r: usize, c: usize| m[r * n + c].clone();
        let mut det = self.field.one();
        for col in 0..n {
            let pivot = (col..n).find(|r| !at(&m, *r, col).is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => return Ok(self.field.zero()),
            };
            if pivot != col {
                for c in 0..n {
                    m.swap(pivot * n + c, col * n + c);
                }
                det = det.neg();
            }
            let diag = at(&m, col, col);
            det = &det * &diag;
            let inv = diag.inv()?;
            for r in col + 1..n {
                let factor = &at(&m, r, col) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = &at(&m, r, c) - &(&factor * &at(&m, col, c));
                    m[r * n + c] = v;
                }
            }
        }
        Ok(det)
    }

    /// Whether the determinant is nonzero, by division-free elimination:
    /// rows below the pivot are replaced by `pivot * row - entry * pivot_row`,
    /// which scales the determinant by nonzero factors only. Cheaper than
    /// [`FMatrix::determinant`] over extension fields since no inverses are
    /// computed.
    pub fn determinant_nonzero(&self) -> Result<bool> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(determinant_nonzero_owned(
            &self.field,
            self.rows,
            self.data.clone(),
        ))
    }

    /// Map every entry through a field embedding.
    pub fn embed(&self, embedding: &Embedding) -> FMatrix {
        FMatrix {
            field: embedding.target().clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| embedding.map(e)).collect(),
        }
    }
}

/// A matrix with entries in `F[X]`, every entry of degree below
/// `degree_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    degree_bound: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(
        field: Field,
        rows: usize,
        cols: usize,
        degree_bound: usize,
        data: Vec<Poly>,
    ) -> Result<PolyMatrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|p| p.field() != &field) {
            return Err(Error::FieldMismatch);
        }
        for p in &data {
            if let Some(d) = p.degree() {
                if d + 1 > degree_bound {
                    return Err(Error::DegreeTooLarge {
                        degree: d,
                        bound: degree_bound,
                    });
                }
            }
        }
        Ok(PolyMatrix {
            field,
            rows,
            cols,
            degree_bound,
            data,
        })
    }

    /// Degree-0 embedding of a plain matrix.
    pub fn from_constants(m: &FMatrix) -> PolyMatrix {
        PolyMatrix {
            field: m.field().clone(),
            rows: m.rows(),
            cols: m.cols(),
            degree_bound: 1,
            data: (0..m.rows())
                .flat_map(|r| (0..m.cols()).map(move |c| Poly::constant(m.get(r, c).clone())))
                .collect(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        PolyMatrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            degree_bound: self.degree_bound,
            data,
        }
    }

    /// The submatrix with the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<PolyMatrix> {
        for &r in rows {
            if r >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: r,
                    len: self.rows,
                });
            }
        }
        for &c in cols {
            if c >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    len: self.cols,
                });
            }
        }
        let data = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| self.get(r, c).clone()))
            .collect();
        Ok(PolyMatrix {
            field: self.field.clone(),
            rows: rows.len(),
            cols: cols.len(),
            degree_bound: self.degree_bound,
            data,
        })
    }

    /// Substitute a field point for `X` in every entry.
    pub fn evaluate_at(&self, x: &Element) -> FMatrix {
        FMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| p.eval(x)).collect(),
        }
    }

    /// Map every entry coefficientwise through a field embedding.
    pub fn embed(&self, embedding: &Embedding) -> PolyMatrix {
        PolyMatrix {
            field: embedding.target().clone(),
            rows: self.rows,
            cols: self.cols,
            degree_bound: self.degree_bound,
            data: self.data.iter().map(|p| p.embed(embedding)).collect(),
        }
    }

    /// Exact determinant polynomial, recovered by evaluating at
    /// `(degree_bound - 1) * k + 1` canonical points (starting at zero) and
    /// Lagrange interpolation.
    pub fn det_poly(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(Poly::constant(self.field.one()));
        }
        let max_degree = (self.degree_bound - 1) * self.rows;
        let points = self.field.eval_points(0, max_degree + 1)?;
        let samples: Vec<(Element, Element)> = points
            .into_iter()
            .map(|x| {
                let value = self.evaluate_at(&x).determinant()?;
                Ok((x, value))
            })
            .collect::<Result<_>>()?;
        let det = Poly::interpolate(&self.field, &samples)?;
        debug_assert!(det.degree().is_none_or(|d| d <= max_degree));
        Ok(det)
    }

    /// Minimum-weight column basis over the fraction field `F(X)`.
    ///
    /// The matrix is evaluated at `(degree_bound - 1) * rows + 1` nonzero
    /// canonical points; a greedy minimum-weight basis is computed at every
    /// point, and the best basis of maximal size (minimum weight, then
    /// lexicographically smallest index set) is returned. The maximal basis
    /// size over the point set equals the rank over `F(X)`, so the returned
    /// columns are a true minimum-weight basis.
    pub fn column_basis_min_weight(&self, weights: &[f64]) -> Result<Vec<usize>> {
        assert_eq!(weights.len(), self.cols, "one weight per column");
        if self.rows == 0 || self.cols == 0 {
            return Ok(Vec::new());
        }
        let count = (self.degree_bound - 1) * self.rows + 1;
        let points = self.field.eval_points(1, count)?;
        let mut best: Option<(Vec<usize>, f64)> = None;
        for x in points {
            let eval = self.evaluate_at(&x);
            let candidate = min_weight_column_basis(&eval, weights);
            let weight: f64 = candidate.iter().map(|c| weights[*c]).sum();
            let better = match &best {
                None => true,
                Some((current, current_weight)) => {
                    candidate.len() > current.len()
                        || (candidate.len() == current.len()
                            && (weight < *current_weight
                                || (weight == *current_weight && candidate < *current)))
                }
            };
            if better {
                best = Some((candidate, weight));
            }
        }
        Ok(best.map(|(basis, _)| basis).unwrap_or_default())
    }

    /// Rank over the fraction field `F(X)`.
    pub fn rank(&self) -> Result<usize> {
        Ok(self
            .column_basis_min_weight(&unit_weights(self.cols))?
            .len())
    }

    /// Whether the listed columns are linearly independent over `F(X)`
    /// (set semantics: duplicate indices are collapsed). Decided by a
    /// column-basis computation on the transposed restriction.
    pub fn independent_columns(&self, cols: &[usize]) -> Result<bool> {
        let set = check_column_set(cols, self.cols)?;
        if set.is_empty() {
            return Ok(true);
        }
        if set.len() > self.rows {
            return Ok(false);
        }
        let all_rows: Vec<usize> = (0..self.rows).collect();
        let restricted = self.submatrix(&all_rows, &set)?.transpose();
        let basis = restricted.column_basis_min_weight(&unit_weights(restricted.cols))?;
        Ok(basis.len() == set.len())
    }

    /// A nice spanning set of the columns: a spanning subset `S` over the
    /// base field `F` (coefficients in `F`, not `F(X)`) of size at most
    /// `degree_bound * rows`, such that whenever a column `z` expands over
    /// `S` with a nonzero coefficient on `v`, then `w(v) <= w(z)`.
    ///
    /// Each column is flattened into a vector over `F` of length
    /// `degree_bound * rows` by concatenating the coefficient vectors of its
    /// entries; a greedy minimum-weight basis of the flattened matrix is a
    /// nice spanning set.
    pub fn nice_spanning_set(&self, weights: &[f64]) -> Vec<usize> {
        assert_eq!(weights.len(), self.cols, "one weight per column");
        let flat = self.flatten();
        min_weight_column_basis(&flat, weights)
    }

    /// The `(degree_bound * rows) x cols` matrix over `F` whose column `i`
    /// concatenates the coefficient vectors of the entries of column `i`.
    pub fn flatten(&self) -> FMatrix {
        let n = self.degree_bound;
        let mut data = Vec::with_capacity(n * self.rows * self.cols);
        for r in 0..self.rows {
            for d in 0..n {
                for c in 0..self.cols {
                    data.push(self.get(r, c).coeff(d));
                }
            }
        }
        FMatrix {
            field: self.field.clone(),
            rows: n * self.rows,
            cols: self.cols,
            data,
        }
    }
}

/// Unit weights for a given number of columns.
pub fn unit_weights(n: usize) -> Vec<f64> {
    vec![1.0; n]
}

/// Validate column indices and collapse them into a sorted set.
fn check_column_set(cols: &[usize], len: usize) -> Result<Vec<usize>> {
    for &c in cols {
        if c >= len {
            return Err(Error::IndexOutOfRange { index: c, len });
        }
    }
    let mut set = cols.to_vec();
    set.sort_unstable();
    set.dedup();
    Ok(set)
}

/// Greedy minimum-weight column basis of a plain matrix: columns are visited
/// in (weight, index) order and kept when they enlarge the span. Column
/// independence is a matroid, so the greedy choice is an exact minimum and
/// the lexicographically smallest one among equal-weight bases.
fn min_weight_column_basis(m: &FMatrix, weights: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..m.cols()).collect();
    order.sort_by(|a, b| {
        weights[*a]
            .partial_cmp(&weights[*b])
            .expect("weights must not be NaN")
            .then(a.cmp(b))
    });
    let mut basis = GaussianBasis::new();
    let mut picked: Vec<usize> = order
        .into_iter()
        .filter(|c| basis.try_insert(m.column(*c)))
        .collect();
    picked.sort_unstable();
    picked
}

/// Division-free determinant zero-test on an owned `n x n` entry buffer.
pub(crate) fn determinant_nonzero_owned(field: &Field, n: usize, mut m: Vec<Element>) -> bool {
    debug_assert_eq!(m.len(), n * n);
    for col in 0..n {
        let pivot = match (col..n).find(|r| !m[r * n + col].is_zero()) {
            Some(p) => p,
            None => return false,
        };
        if pivot != col {
            for c in 0..n {
                m.swap(pivot * n + c, col * n + c);
            }
        }
        let pv = m[col * n + col].clone();
        for r in col + 1..n {
            let factor = m[r * n + col].clone();
            if factor.is_zero() {
                continue;
            }
            for c in col + 1..n {
                let v = &(&pv * &m[r * n + c]) - &(&factor * &m[col * n + c]);
                m[r * n + c] = v;
            }
            m[r * n + col] = field.zero();
        }
    }
    true
}

/// Incremental Gaussian elimination: keeps normalized pivot vectors and
/// reports whether a new vector enlarges the span.
struct GaussianBasis {
    pivots: Vec<(usize, Vec<Element>)>,
}

impl GaussianBasis {
    fn new() -> GaussianBasis {
        GaussianBasis { pivots: Vec::new() }
    }

    fn try_insert(&mut self, mut v: Vec<Element>) -> bool {
        for (pi, pv) in &self.pivots {
            if !v[*pi].is_zero() {
                let factor = v[*pi].clone();
                for (x, y) in v.iter_mut().zip(pv) {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(pi) => {
                let inv = v[pi].inv().expect("pivot is nonzero");
                for x in v.iter_mut() {
                    *x = &*x * &inv;
                }
                self.pivots.push((pi, v));
                true
            }
        }
    }
}

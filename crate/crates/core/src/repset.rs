//! Deterministic computation of q-representative subfamilies.
//!
//! A subfamily `S'` of a p-family `S` of independent sets is
//! *q-representative* when for every set `Y` of size at most `q`: if some
//! `X` in `S` is disjoint from `Y` with `X ∪ Y` independent, then some `X'`
//! in `S'` is too.
//!
//! The computation truncates the representing matrix to `k = p + q` rows,
//! builds the minor matrix `H` whose `(I, i)` entry is the `p x p` minor
//! `det(A_k[I, S_i])` (rows indexed by the p-subsets `I` of the truncated
//! row set, in lexicographic order), and keeps the sets whose columns form
//! either
//!
//! - a minimum-weight column basis of `H` over `F(X)` (at most
//!   `C(p+q, p)` sets), or
//! - a nice spanning set of the columns of `H` over `F` (at most
//!   `n * p * C(p+q, p)` sets, weight-aware).
//!
//! Before `H` is built the working field is grown, if necessary, until it
//! carries enough evaluation points for the minor determinants and the
//! basis computation.
//!
//! [`verify_repset`] is the definitional oracle: exhaustive enumeration of
//! every extender `Y`.

use crate::error::{Error, Result};
use crate::field::extend_field;
use crate::fxmatrix::{unit_weights, FMatrix, PolyMatrix};
use crate::truncation::truncate;

/// A family of same-size subsets of a matroid ground set, with optional
/// per-set weights.
#[derive(Debug, Clone, PartialEq)]
pub struct SetFamily {
    sets: Vec<Vec<usize>>,
    weights: Option<Vec<f64>>,
}

impl SetFamily {
    /// Build a family; each set is sorted and must have no repeated
    /// elements.
    pub fn new(sets: Vec<Vec<usize>>) -> Result<SetFamily> {
        let mut canonical = Vec::with_capacity(sets.len());
        for mut s in sets {
            s.sort_unstable();
            let before = s.len();
            s.dedup();
            if s.len() != before {
                return Err(Error::DimensionMismatch(
                    "set with a repeated element".to_string(),
                ));
            }
            canonical.push(s);
        }
        Ok(SetFamily {
            sets: canonical,
            weights: None,
        })
    }

    /// Attach one nonnegative finite weight per set.
    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<SetFamily> {
        if weights.len() != self.sets.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} sets",
                weights.len(),
                self.sets.len()
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::DimensionMismatch(
                "weights must be nonnegative and finite".to_string(),
            ));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// The common set size `p`; fails when the family is not uniform.
    pub fn uniform_size(&self) -> Result<usize> {
        let p = self.sets.first().map_or(0, Vec::len);
        if self.sets.iter().any(|s| s.len() != p) {
            return Err(Error::DimensionMismatch(
                "family sets have different sizes".to_string(),
            ));
        }
        Ok(p)
    }

    /// The subfamily at the given indices, weights included.
    pub fn subfamily(&self, indices: &[usize]) -> SetFamily {
        SetFamily {
            sets: indices.iter().map(|&i| self.sets[i].clone()).collect(),
            weights: self
                .weights
                .as_ref()
                .map(|w| indices.iter().map(|&i| w[i]).collect()),
        }
    }
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result = 1usize;
    for i in 0..k {
        result = result * (n - i) / (i + 1);
    }
    result
}

/// The minor matrix of a set family against a truncated representation:
/// rows are indexed by the p-subsets of the rows of `a_k` in lexicographic
/// order, and entry `(I, i)` is `det(a_k[I, S_i])`.
#[derive(Debug, Clone)]
pub struct MinorMatrix {
    pub matrix: PolyMatrix,
    /// Row index: the p-subset of truncated rows for each matrix row.
    pub row_sets: Vec<Vec<usize>>,
}

/// Build the minor matrix `H` of a family over a truncated representation.
pub fn build_minor_matrix(a_k: &PolyMatrix, family: &SetFamily) -> Result<MinorMatrix> {
    let p = family.uniform_size()?;
    let k = a_k.rows();
    if p > k {
        return Err(Error::DimensionMismatch(format!(
            "sets of size {p} against a {k}-row truncation"
        )));
    }
    let row_sets = combinations(k, p);
    let minor_degree = p * a_k.degree_bound().saturating_sub(1);
    let mut entries = Vec::with_capacity(row_sets.len() * family.len());
    for rows in &row_sets {
        for set in family.sets() {
            let minor = a_k.submatrix(rows, set)?;
            entries.push(minor.det_poly()?);
        }
    }
    let matrix = PolyMatrix::new(
        a_k.field().clone(),
        row_sets.len(),
        family.len(),
        minor_degree + 1,
        entries,
    )?;
    Ok(MinorMatrix { matrix, row_sets })
}

#[derive(Clone, Copy)]
enum Variant {
    Basis,
    Spanning,
}

fn repset_pipeline(
    a: &FMatrix,
    family: &SetFamily,
    q: usize,
    variant: Variant,
) -> Result<SetFamily> {
    if family.is_empty() {
        return Ok(family.clone());
    }
    let p = family.uniform_size()?;
    let ground = a.cols();
    for set in family.sets() {
        for &e in set {
            if e >= ground {
                return Err(Error::UnknownElement { index: e, ground });
            }
        }
    }
    for (i, set) in family.sets().iter().enumerate() {
        if !a.independent_columns(set)? {
            return Err(Error::DependentInputSet { set_index: i });
        }
    }
    let rank = a.rank();
    if p + q > rank {
        return Err(Error::PQExceedsRank { p, q, rank });
    }
    let k = p + q;
    let truncated = truncate(a, k)?;
    let mut a_k = truncated.matrix;

    // Grow the field until the minor determinants ((p(n-1) + 1) points from
    // zero) and, for the basis variant, the column-basis computation on H
    // (p(n-1) * C(k, p) + 1 nonzero points) are well defined.
    let minor_degree = (p * (truncated.n.saturating_sub(1))) as u64;
    let needed = match variant {
        Variant::Basis => (minor_degree * binomial(k, p) as u64 + 2).max(minor_degree + 1),
        Variant::Spanning => minor_degree + 1,
    };
    if let Some(size) = a_k.field().size() {
        if size < needed {
            let ext = extend_field(a_k.field(), needed - 1)?;
            a_k = a_k.embed(&ext.embedding);
        }
    }

    let h = build_minor_matrix(&a_k, family)?;
    let chosen = match variant {
        Variant::Basis => h
            .matrix
            .column_basis_min_weight(&unit_weights(family.len()))?,
        Variant::Spanning => {
            let weights = match family.weights() {
                Some(w) => w.to_vec(),
                None => unit_weights(family.len()),
            };
            h.matrix.nice_spanning_set(&weights)
        }
    };
    Ok(family.subfamily(&chosen))
}

/// q-representative subfamily via a minimum-weight column basis of the
/// minor matrix; at most `C(p+q, p)` sets survive.
pub fn repset_basis(a: &FMatrix, family: &SetFamily, q: usize) -> Result<SetFamily> {
    repset_pipeline(a, family, q, Variant::Basis)
}

/// q-representative subfamily via a nice spanning set of the minor matrix;
/// at most `n * p * C(p+q, p)` sets survive, and set weights (when present)
/// steer which representatives are kept.
pub fn repset_spanning(a: &FMatrix, family: &SetFamily, q: usize) -> Result<SetFamily> {
    repset_pipeline(a, family, q, Variant::Spanning)
}

/// Definitional check that `candidate` is q-representative for `family`
/// over the matroid of `a`, by exhaustive enumeration of every `Y` of size
/// at most `q`. `candidate` must be a subfamily of `family`.
pub fn verify_repset(
    a: &FMatrix,
    family: &SetFamily,
    candidate: &SetFamily,
    q: usize,
) -> Result<bool> {
    for (i, set) in candidate.sets().iter().enumerate() {
        if !family.sets().contains(set) {
            return Err(Error::NotSubfamily { set_index: i });
        }
    }
    let ground = a.cols();
    let extends = |x: &[usize], y: &[usize]| -> Result<bool> {
        if x.iter().any(|e| y.contains(e)) {
            return Ok(false);
        }
        let mut union = x.to_vec();
        union.extend_from_slice(y);
        a.independent_columns(&union)
    };
    for y_size in 0..=q {
        for y in combinations(ground, y_size) {
            let mut family_extends = false;
            for x in family.sets() {
                if extends(x, &y)? {
                    family_extends = true;
                    break;
                }
            }
            if !family_extends {
                continue;
            }
            let mut candidate_extends = false;
            for x in candidate.sets() {
                if extends(x, &y)? {
                    candidate_extends = true;
                    break;
                }
            }
            if !candidate_extends {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

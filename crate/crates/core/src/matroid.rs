//! Linear matroids given by an explicit representation matrix.
//!
//! The ground set is the column set of the representation; a subset is
//! independent exactly when the corresponding columns are linearly
//! independent. The representation is either a plain matrix over a field or
//! a polynomial matrix over `F[X]` (the shape produced by truncation), and
//! the independence oracle dispatches accordingly.
//!
//! The module also provides the standard test fixtures: uniform matroids as
//! Vandermonde matrices, graphic matroids as signed incidence matrices, and
//! seeded random full-rank matroids.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::fxmatrix::{FMatrix, PolyMatrix};
use crate::rng::Lcg;
use crate::truncation::truncate;

/// Representation matrix of a linear matroid.
#[derive(Debug, Clone)]
pub enum MatroidRep {
    Field(FMatrix),
    Poly(PolyMatrix),
}

/// A linear matroid over the columns of a representation matrix.
///
/// Ground-set elements are column indices `0..m`; optional labels give them
/// external names (the file format defaults to `1..m`).
#[derive(Debug)]
pub struct LinearMatroid {
    rep: MatroidRep,
    labels: Option<Vec<String>>,
    rank_cache: OnceLock<usize>,
}

impl Clone for LinearMatroid {
    fn clone(&self) -> Self {
        LinearMatroid {
            rep: self.rep.clone(),
            labels: self.labels.clone(),
            rank_cache: self.rank_cache.clone(),
        }
    }
}

impl LinearMatroid {
    pub fn from_matrix(m: FMatrix) -> LinearMatroid {
        LinearMatroid {
            rep: MatroidRep::Field(m),
            labels: None,
            rank_cache: OnceLock::new(),
        }
    }

    pub fn from_poly_matrix(m: PolyMatrix) -> LinearMatroid {
        LinearMatroid {
            rep: MatroidRep::Poly(m),
            labels: None,
            rank_cache: OnceLock::new(),
        }
    }

    /// Attach ground-set labels (one per column).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<LinearMatroid> {
        if labels.len() != self.ground_size() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} ground elements",
                labels.len(),
                self.ground_size()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn representation(&self) -> &MatroidRep {
        &self.rep
    }

    pub fn ground_size(&self) -> usize {
        match &self.rep {
            MatroidRep::Field(m) => m.cols(),
            MatroidRep::Poly(m) => m.cols(),
        }
    }

    /// Ground-set labels; defaults to `1..=m` rendered as strings.
    pub fn labels(&self) -> Vec<String> {
        match &self.labels {
            Some(l) => l.clone(),
            None => (1..=self.ground_size()).map(|i| i.to_string()).collect(),
        }
    }

    fn check_subset(&self, set: &[usize]) -> Result<()> {
        let ground = self.ground_size();
        for &e in set {
            if e >= ground {
                return Err(Error::UnknownElement { index: e, ground });
            }
        }
        Ok(())
    }

    /// Independence oracle: exact linear independence of the columns.
    pub fn independent(&self, set: &[usize]) -> Result<bool> {
        self.check_subset(set)?;
        match &self.rep {
            MatroidRep::Field(m) => m.independent_columns(set),
            MatroidRep::Poly(m) => m.independent_columns(set),
        }
    }

    /// Rank of the matroid (cached after the first computation).
    pub fn rank(&self) -> Result<usize> {
        if let Some(r) = self.rank_cache.get() {
            return Ok(*r);
        }
        let r = match &self.rep {
            MatroidRep::Field(m) => m.rank(),
            MatroidRep::Poly(m) => m.rank()?,
        };
        Ok(*self.rank_cache.get_or_init(|| r))
    }

    /// The `t`-truncation as a matroid: independent sets are the independent
    /// sets of size at most `t`. Requires a plain field representation and
    /// `t` at most the rank.
    pub fn truncation_of(&self, t: usize) -> Result<LinearMatroid> {
        let m = match &self.rep {
            MatroidRep::Field(m) => m,
            MatroidRep::Poly(_) => {
                return Err(Error::UnsupportedRepresentation(
                    "truncation needs a plain field representation".to_string(),
                ))
            }
        };
        let rank = self.rank()?;
        if t > rank {
            return Err(Error::KExceedsN { k: t, n: rank });
        }
        let result = truncate(m, t)?;
        let mut out = LinearMatroid::from_poly_matrix(result.matrix);
        if let Some(labels) = &self.labels {
            out = out.with_labels(labels.clone())?;
        }
        Ok(out)
    }
}

/// A plain undirected multigraph for graphic-matroid fixtures. Vertices are
/// `0..vertices`; edges may repeat and may be self-loops.
#[derive(Debug, Clone)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

/// The uniform matroid `U_{m,r}` as an `r x m` Vandermonde matrix with the
/// first `m` nonzero canonical field elements as nodes. Requires `|F| > m`.
pub fn uniform_matroid(m: usize, r: usize, field: &crate::field::Field) -> Result<LinearMatroid> {
    if let Some(size) = field.size() {
        if size <= m as u64 {
            return Err(Error::FieldTooSmall {
                available: size - 1,
                needed: m as u64,
            });
        }
    }
    let mut data = Vec::with_capacity(r * m);
    for row in 0..r {
        for node in 1..=m as u64 {
            data.push(field.element_at(node).pow(row as u64));
        }
    }
    Ok(LinearMatroid::from_matrix(FMatrix::new(
        field.clone(),
        r,
        m,
        data,
    )?))
}

/// The graphic matroid of a graph: the signed incidence matrix with `+1` at
/// the smaller endpoint and `-1` at the larger (the signs coincide over
/// characteristic 2). Edge subsets are independent exactly when they are
/// forests.
pub fn graphic_matroid(graph: &Graph, field: &crate::field::Field) -> Result<LinearMatroid> {
    let cols = graph.edges.len();
    let mut data = vec![field.zero(); graph.vertices * cols];
    for (e, &(u, v)) in graph.edges.iter().enumerate() {
        if u >= graph.vertices || v >= graph.vertices {
            return Err(Error::UnknownElement {
                index: u.max(v),
                ground: graph.vertices,
            });
        }
        if u == v {
            continue; // self-loop: zero column
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        data[a * cols + e] = field.one();
        data[b * cols + e] = field.integer(-1);
    }
    Ok(LinearMatroid::from_matrix(FMatrix::new(
        field.clone(),
        graph.vertices,
        cols,
        data,
    )?))
}

/// A seeded random `n x m` matroid of full rank `n`. Entries are drawn from
/// the same generator as the randomized truncation oracle; generation
/// retries up to 64 times before giving up.
pub fn random_matroid(
    n: usize,
    m: usize,
    field: &crate::field::Field,
    seed: u64,
) -> Result<LinearMatroid> {
    if n > m {
        return Err(Error::DimensionMismatch(format!(
            "rank {n} impossible with {m} columns"
        )));
    }
    let mut rng = Lcg::new(seed);
    for _ in 0..64 {
        let data: Vec<_> = (0..n * m)
            .map(|_| match field.size() {
                Some(size) => field.element_at(rng.below(size)),
                None => field.integer(rng.below(17) as i64 - 8),
            })
            .collect();
        let candidate = FMatrix::new(field.clone(), n, m, data)?;
        if candidate.rank() == n {
            return Ok(LinearMatroid::from_matrix(candidate));
        }
    }
    Err(Error::GenerationFailed(format!(
        "no rank-{n} matrix after 64 attempts (seed {seed})"
    )))
}

//! Deterministic rank truncation of matrices.
//!
//! Given an `n x m` matrix `M` over a field `F` and `k <= n`, [`truncate`]
//! produces a `k x m` matrix over `F[X]` (with entries of degree below `n`)
//! that preserves linear independence of every column subset of size at most
//! `k`. Column `i` of `M` is read as the polynomial `P_i` with the column
//! entries as coefficients; the truncated column is
//!
//! - `(P_i, P_i', ..., P_i^{(k-1)})` over the rationals or when the
//!   characteristic exceeds `n` (classical construction), or
//! - `(P_i(X), P_i(aX), ..., P_i(a^{k-1} X))` for an element `a` of
//!   multiplicative order at least `(n-1)(k-1) + 1` (folded construction),
//!   used for small characteristic after [`preprocess_field`] grows the
//!   field enough to contain such an element.
//!
//! The dispatcher also guarantees that the working field carries enough
//! evaluation points for downstream independence tests on the result
//! (`(n-1)k + 1` nonzero points), extending the field by constants on the
//! classical path when the source field is too small.
//!
//! [`embed_finite`] converts a truncation over a finite field into a plain
//! matrix over an extension of degree `n * k`, on which ordinary Gaussian
//! elimination answers the same independence queries.

use crate::error::{Error, Result};
use crate::field::{element_of_order, extend_field, order_of, Element, Embedding, Field};
use crate::fxmatrix::{FMatrix, PolyMatrix};
use crate::poly::Poly;
use crate::rng::Lcg;

/// Which Wronskian construction produced a truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncationMethod {
    Classical,
    Folded,
}

/// A `k x m` truncation of an `n x m` matrix, over the working field's
/// polynomial ring.
#[derive(Debug, Clone)]
pub struct TruncationResult {
    /// The truncated matrix; entries have degree below `n`.
    pub matrix: PolyMatrix,
    pub method: TruncationMethod,
    /// Folding element (folded method only), of order at least
    /// `(n-1)(k-1) + 1` in the working field.
    pub alpha: Option<Element>,
    /// Field of the input matrix.
    pub source_field: Field,
    pub k: usize,
    pub n: usize,
    pub m: usize,
}

impl TruncationResult {
    /// The field the truncated matrix lives over; equals the source field
    /// unless preprocessing had to extend it.
    pub fn working_field(&self) -> &Field {
        self.matrix.field()
    }
}

/// The polynomials corresponding to the columns of a matrix.
fn column_polynomials(m: &FMatrix) -> Vec<Poly> {
    (0..m.cols())
        .map(|c| Poly::from_vector(m.field(), m.column(c)))
        .collect()
}

/// Classical truncation: row `i` of the result holds the `i`-th formal
/// derivatives of the column polynomials. Requires characteristic 0 or
/// greater than `n`.
pub fn truncate_classical(m: &FMatrix, k: usize) -> Result<TruncationResult> {
    let n = m.rows();
    if k > n {
        return Err(Error::KExceedsN { k, n });
    }
    let ch = m.field().characteristic();
    if ch != 0 && ch <= n as u64 {
        return Err(Error::CharacteristicTooSmall {
            characteristic: ch,
            needed: n as u64,
        });
    }
    let polys = column_polynomials(m);
    let mut entries = Vec::with_capacity(k * m.cols());
    let mut row = polys;
    for i in 0..k {
        if i > 0 {
            row = row.iter().map(|p| p.formal_derivative(1)).collect();
        }
        entries.extend(row.iter().cloned());
    }
    Ok(TruncationResult {
        matrix: PolyMatrix::new(m.field().clone(), k, m.cols(), n, entries)?,
        method: TruncationMethod::Classical,
        alpha: None,
        source_field: m.field().clone(),
        k,
        n,
        m: m.cols(),
    })
}

/// Folded truncation: row `i` of the result holds `P(alpha^i X)` for the
/// column polynomials `P`. Requires `alpha` of multiplicative order at least
/// `(n-1)(k-1) + 1`.
pub fn truncate_folded(m: &FMatrix, k: usize, alpha: &Element) -> Result<TruncationResult> {
    let n = m.rows();
    if k > n {
        return Err(Error::KExceedsN { k, n });
    }
    if alpha.field() != m.field() {
        return Err(Error::FieldMismatch);
    }
    if alpha.is_zero() {
        return Err(Error::ZeroScale);
    }
    if k > 0 && n > 0 {
        let needed = ((n - 1) * (k - 1) + 1) as u64;
        let order = order_of(alpha)?;
        if order < needed {
            return Err(Error::OrderTooSmall { order, needed });
        }
    }
    let polys = column_polynomials(m);
    let mut entries = Vec::with_capacity(k * m.cols());
    let mut power = m.field().one();
    for i in 0..k {
        if i > 0 {
            power = &power * alpha;
        }
        for p in &polys {
            entries.push(p.scale_substitute(&power)?);
        }
    }
    Ok(TruncationResult {
        matrix: PolyMatrix::new(m.field().clone(), k, m.cols(), n, entries)?,
        method: TruncationMethod::Folded,
        alpha: Some(alpha.clone()),
        source_field: m.field().clone(),
        k,
        n,
        m: m.cols(),
    })
}

/// Prepare a finite-field matrix for folded truncation: find a field `K`
/// containing the entries and an element of order at least `n*k + 1`.
///
/// When `|F| <= nk + 1` the field is grown with [`extend_field`] (giving
/// `|K| < (nk+1)^2` and a primitive element); otherwise `K = F` and an
/// element of order above `nk` is found by scanning. Either way the returned
/// matrix has the same independence relations as the input, since `F`
/// embeds into `K`.
pub fn preprocess_field(m: &FMatrix, k: usize) -> Result<(FMatrix, Element)> {
    let field = m.field();
    let size = field.size().ok_or(Error::InfiniteField)?;
    let target = (m.rows() * k) as u64 + 1;
    if size <= target {
        let ext = extend_field(field, target)?;
        Ok((m.embed(&ext.embedding), ext.primitive))
    } else {
        let alpha = element_of_order(field, target - 1)?;
        Ok((m.clone(), alpha))
    }
}

/// Deterministic `k`-truncation of a matrix, dispatching on the field.
///
/// Characteristic 0 or greater than `n` uses the classical construction
/// (extending a too-small finite field by constants first, so that the
/// result supports independence testing); otherwise the field is
/// preprocessed and the folded construction is used. In all cases, for every
/// column subset `I` with `|I| <= k`, `I` is independent in the input iff
/// it is independent in the result over `F(X)`.
pub fn truncate(m: &FMatrix, k: usize) -> Result<TruncationResult> {
    let n = m.rows();
    if k > n {
        return Err(Error::KExceedsN { k, n });
    }
    let field = m.field();
    let ch = field.characteristic();
    if ch == 0 {
        return truncate_classical(m, k);
    }
    if ch > n as u64 {
        // Make sure (n-1)k + 1 nonzero evaluation points exist downstream.
        let needed = ((n.saturating_sub(1)) * k + 2) as u64;
        if field.size().unwrap() < needed {
            let ext = extend_field(field, needed - 1)?;
            let mut result = truncate_classical(&m.embed(&ext.embedding), k)?;
            result.source_field = field.clone();
            return Ok(result);
        }
        return truncate_classical(m, k);
    }
    let (prepared, alpha) = preprocess_field(m, k)?;
    let mut result = truncate_folded(&prepared, k, &alpha)?;
    result.source_field = field.clone();
    Ok(result)
}

/// Re-express a finite-field truncation as a plain matrix over an extension
/// field of degree `n * k` over the working field, preserving independence
/// of all column subsets of size at most `k`.
pub fn embed_finite(t: &TruncationResult) -> Result<FMatrix> {
    embed_finite_with_degree(t, t.n * t.k)
}

/// As [`embed_finite`] with an explicit extension degree `r >= n * k`.
///
/// Every entry of the truncation is a polynomial of degree below `n`, hence
/// represents an element of `K = F[X]/(r(X))` for the canonical irreducible
/// `r(X)` of degree `r`; any `k x k` minor has degree at most `(n-1)k < r`,
/// so it vanishes in `K` exactly when it vanishes in `F(X)`.
pub fn embed_finite_with_degree(t: &TruncationResult, r: usize) -> Result<FMatrix> {
    let working = t.matrix.field();
    working.size().ok_or(Error::InfiniteField)?;
    if r < t.n * t.k {
        return Err(Error::DimensionMismatch(format!(
            "embedding degree {r} is below n*k = {}",
            t.n * t.k
        )));
    }
    if r == 0 {
        // Degenerate truncation (k = 0 or n = 0): nothing to embed.
        return Ok(FMatrix::zero(working, t.k, t.m));
    }
    let p = working.characteristic();
    let l = working.extension_degree();
    let target = Field::galois(p, l * r)?;
    let embedding = Embedding::new(working, &target)?;
    // The class of X in the target field; it has degree l*r over the prime
    // field, hence degree r over the embedded working field.
    let x_class = if target.extension_degree() > 1 {
        target.element_at(p)
    } else {
        // Degree-1 target: the canonical modulus is X itself, whose class
        // is 0. Only reachable when n = k = 1 over a prime field, where
        // entries are constants.
        target.zero()
    };
    let mut data = Vec::with_capacity(t.k * t.m);
    for row in 0..t.k {
        for col in 0..t.m {
            let poly = t.matrix.get(row, col);
            // Horner evaluation of the entry at the class of X, with
            // coefficients mapped through the embedding.
            let mut acc = target.zero();
            for d in (0..t.n.max(1)).rev() {
                acc = &(&acc * &x_class) + &embedding.map(&poly.coeff(d));
            }
            data.push(acc);
        }
    }
    FMatrix::new(target.clone(), t.k, t.m, data)
}

/// Randomized truncation oracle: left-multiply by a seeded pseudo-random
/// `k x n` matrix. With a field that is large relative to `n * k` the result
/// is a `k`-truncation with high probability; this is a cross-validation
/// aid, not a deterministic API.
///
/// Entries come from a linear congruential generator (`state = state *
/// 6364136223846793005 + 1442695040888963407`, output `state >> 33`),
/// reduced into the field, so a fixed seed reproduces the same matrix.
pub fn randomized_truncation(m: &FMatrix, k: usize, seed: u64) -> Result<FMatrix> {
    let n = m.rows();
    if k > n {
        return Err(Error::KExceedsN { k, n });
    }
    let field = m.field();
    let mut rng = Lcg::new(seed);
    let mut data = Vec::with_capacity(k * n);
    for _ in 0..k * n {
        let e = match field.size() {
            Some(size) => field.element_at(rng.below(size)),
            None => field.integer(rng.below(1 << 16) as i64),
        };
        data.push(e);
    }
    let left = FMatrix::new(field.clone(), k, n, data)?;
    left.mul(m)
}

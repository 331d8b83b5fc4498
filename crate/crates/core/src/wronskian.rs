//! Classical and folded Wronskian matrices, and the deterministic linear
//! independence tests they induce on families of polynomials.
//!
//! For polynomials `P_1, ..., P_k` of degree below `n`:
//!
//! - the classical Wronskian has entry `(i, j) = P_j^{(i-1)}`, the iterated
//!   formal derivatives; its determinant vanishes identically iff the family
//!   is linearly dependent, provided the characteristic is 0 or larger
//!   than `n`;
//! - the `alpha`-folded Wronskian has entry `(i, j) = P_j(alpha^{i-1} X)`;
//!   its determinant vanishes identically iff the family is linearly
//!   dependent, provided the multiplicative order of `alpha` exceeds
//!   `(n-1)(k-1)`.
//!
//! Vanishing of the determinant is decided by evaluation at canonical field
//! points, one more than the determinant's degree bound. The module never
//! extends the field on its own: when too few evaluation points exist it
//! reports `FieldTooSmall` and leaves extension policy to the caller.

use crate::error::{Error, Result};
use crate::field::{order_of, Element, Field};
use crate::fxmatrix::PolyMatrix;
use crate::poly::Poly;

/// Which construction a [`WronskianMatrix`] used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WronskianKind {
    Classical,
    Folded,
}

/// A `k x k` Wronskian matrix of a polynomial family.
#[derive(Debug, Clone)]
pub struct WronskianMatrix {
    pub kind: WronskianKind,
    pub matrix: PolyMatrix,
    /// The folding element; `None` for the classical construction.
    pub alpha: Option<Element>,
    /// `n`: one more than the largest input degree.
    pub degree_bound: usize,
}

fn family_field(polys: &[Poly]) -> Result<Field> {
    let field = polys
        .first()
        .map(|p| p.field().clone())
        .ok_or_else(|| Error::DimensionMismatch("empty polynomial family".to_string()))?;
    if polys.iter().any(|p| p.field() != &field) {
        return Err(Error::FieldMismatch);
    }
    Ok(field)
}

/// `n`: one more than the largest degree in the family (at least 1).
fn family_degree_bound(polys: &[Poly]) -> usize {
    polys
        .iter()
        .filter_map(Poly::degree)
        .max()
        .map_or(1, |d| d + 1)
}

/// The classical Wronskian: row `i` holds the `i`-th formal derivatives.
/// Requires characteristic 0 or greater than the family degree bound.
pub fn classical_wronskian(polys: &[Poly]) -> Result<WronskianMatrix> {
    let field = family_field(polys)?;
    let n = family_degree_bound(polys);
    let ch = field.characteristic();
    if ch != 0 && ch <= n as u64 {
        return Err(Error::CharacteristicTooSmall {
            characteristic: ch,
            needed: n as u64,
        });
    }
    let k = polys.len();
    let mut entries = Vec::with_capacity(k * k);
    let mut row: Vec<Poly> = polys.to_vec();
    for i in 0..k {
        if i > 0 {
            row = row.iter().map(|p| p.formal_derivative(1)).collect();
        }
        entries.extend(row.iter().cloned());
    }
    Ok(WronskianMatrix {
        kind: WronskianKind::Classical,
        matrix: PolyMatrix::new(field, k, k, n, entries)?,
        alpha: None,
        degree_bound: n,
    })
}

/// The `alpha`-folded Wronskian: row `i` holds `P_j(alpha^i X)`.
pub fn folded_wronskian(polys: &[Poly], alpha: &Element) -> Result<WronskianMatrix> {
    let field = family_field(polys)?;
    if alpha.is_zero() {
        return Err(Error::ZeroScale);
    }
    if alpha.field() != &field {
        return Err(Error::FieldMismatch);
    }
    let n = family_degree_bound(polys);
    let k = polys.len();
    let mut entries = Vec::with_capacity(k * k);
    let mut power = field.one();
    for _ in 0..k {
        for p in polys {
            entries.push(p.scale_substitute(&power)?);
        }
        power = &power * alpha;
    }
    Ok(WronskianMatrix {
        kind: WronskianKind::Folded,
        matrix: PolyMatrix::new(field, k, k, n, entries)?,
        alpha: Some(alpha.clone()),
        degree_bound: n,
    })
}

/// Decide whether a determinant polynomial of degree at most `max_degree`
/// is nonzero, by evaluating the matrix at `max_degree + 1` canonical
/// points. The points are probed highest first: the low points (0 in
/// particular, where folded rows coincide) are the least likely to
/// short-circuit a nonzero determinant.
fn det_is_nonzero(matrix: &PolyMatrix, max_degree: usize) -> Result<bool> {
    let field = matrix.field();
    let points = field.eval_points(0, max_degree + 1)?;
    for x in points.iter().rev() {
        if matrix.evaluate_at(x).determinant_nonzero()? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Linear independence of a polynomial family over `F`, by the classical
/// Wronskian criterion. The determinant degree bound exploits the degree
/// drop of successive derivative rows: row `i` has entries of degree at
/// most `n - 1 - i`.
pub fn independent_classical(polys: &[Poly]) -> Result<bool> {
    if polys.is_empty() {
        return Ok(true);
    }
    let w = classical_wronskian(polys)?;
    let n = w.degree_bound;
    let k = polys.len();
    let max_degree: usize = (0..k).map(|i| (n - 1).saturating_sub(i)).sum();
    det_is_nonzero(&w.matrix, max_degree)
}

/// Linear independence of a polynomial family over `F`, by the folded
/// Wronskian criterion. `alpha` must have multiplicative order greater than
/// `(n-1)(k-1)`.
///
/// The Wronskian matrix is never materialized: its evaluation at a point
/// `x` has entries `P_j(alpha^i x)`, so the original polynomials are
/// evaluated at the scaled points directly.
pub fn independent_folded(polys: &[Poly], alpha: &Element) -> Result<bool> {
    if polys.is_empty() {
        return Ok(true);
    }
    let field = family_field(polys)?;
    if alpha.is_zero() {
        return Err(Error::ZeroScale);
    }
    if alpha.field() != &field {
        return Err(Error::FieldMismatch);
    }
    let n = family_degree_bound(polys);
    let k = polys.len();
    let needed = ((n - 1) * (k - 1) + 1) as u64;
    let order = order_of(alpha)?;
    if order < needed {
        return Err(Error::OrderTooSmall { order, needed });
    }
    let max_degree = (n - 1) * k;
    let points = field.eval_points(0, max_degree + 1)?;
    for x in points.iter().rev() {
        let mut entries = Vec::with_capacity(k * k);
        let mut scaled = x.clone();
        for i in 0..k {
            if i > 0 {
                scaled = &scaled * alpha;
            }
            for p in polys {
                entries.push(p.eval(&scaled));
            }
        }
        if crate::fxmatrix::determinant_nonzero_owned(&field, k, entries) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// If `a = lambda * b` for a nonzero scalar `lambda`, return it.
///
/// This is the conclusion of the proportionality property behind the folded
/// criterion: when `A(X)B(bX) - A(bX)B(X)` vanishes identically for an
/// element `b` of order exceeding both degrees, the two polynomials are
/// scalar multiples of each other.
pub fn proportional_scalar(a: &Poly, b: &Poly) -> Option<Element> {
    if a.is_zero() || b.is_zero() || a.degree() != b.degree() {
        return None;
    }
    let deg = a.degree().unwrap();
    let lambda = a.coeff(deg).try_div(&b.coeff(deg)).ok()?;
    if *a == b.scale(&lambda) {
        Some(lambda)
    } else {
        None
    }
}

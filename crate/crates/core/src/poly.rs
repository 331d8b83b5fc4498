//! Dense univariate polynomials over any [`Field`].
//!
//! `Poly` stores coefficients in ascending degree order. The representation
//! is canonical: trailing zeros are trimmed and the zero polynomial is the
//! empty vector. A vector `v` of length `n` corresponds to the polynomial
//! `v[0] + v[1] X + ... + v[n-1] X^{n-1}`, and that correspondence preserves
//! linear independence in both directions.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Element, Embedding, Field};

/// Dense univariate polynomial with coefficients in a single field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Element>,
}

impl Poly {
    /// Build a polynomial from coefficients (constant term first), trimming
    /// trailing zeros into canonical form.
    pub fn new(field: Field, mut coeffs: Vec<Element>) -> Poly {
        assert!(
            coeffs.iter().all(|c| c.field() == &field),
            "coefficient from a different field"
        );
        while coeffs.last().is_some_and(Element::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(value: Element) -> Poly {
        let field = value.field().clone();
        Poly::new(field, vec![value])
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_integers(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(
            field.clone(),
            coeffs.iter().map(|c| field.integer(*c)).collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Element {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    /// The coefficient vector of length `n` corresponding to this
    /// polynomial. Fails with `DegreeTooLarge` when the degree is `n` or
    /// more.
    pub fn to_vector(&self, n: usize) -> Result<Vec<Element>> {
        if self.coeffs.len() > n {
            return Err(Error::DegreeTooLarge {
                degree: self.coeffs.len() - 1,
                bound: n,
            });
        }
        let mut v = self.coeffs.clone();
        v.resize(n, self.field.zero());
        Ok(v)
    }

    /// The polynomial corresponding to a coefficient vector; inverse of
    /// [`Poly::to_vector`] up to trailing zeros.
    pub fn from_vector(field: &Field, v: Vec<Element>) -> Poly {
        Poly::new(field.clone(), v)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.field.clone(), self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(self.field.clone(), out)
    }

    /// Multiply every coefficient by a scalar.
    pub fn scale(&self, s: &Element) -> Poly {
        Poly::new(
            self.field.clone(),
            self.coeffs.iter().map(|c| c * s).collect(),
        )
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let deg_d = divisor.degree().unwrap();
        let lead_inv = divisor.coeff(deg_d).inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(deg_d)];
        while rem.len() > deg_d {
            let shift = rem.len() - 1 - deg_d;
            let factor = &rem[rem.len() - 1] * &lead_inv;
            quot[shift] = factor.clone();
            for i in 0..=deg_d {
                rem[shift + i] = &rem[shift + i] - &(&factor * &divisor.coeff(i));
            }
            while rem.last().is_some_and(Element::is_zero) {
                rem.pop();
            }
        }
        Ok((
            Poly::new(self.field.clone(), quot),
            Poly::new(self.field.clone(), rem),
        ))
    }

    /// The `i`-fold iterated formal derivative. Order 0 returns the
    /// polynomial unchanged.
    pub fn formal_derivative(&self, order: usize) -> Poly {
        let mut current = self.clone();
        for _ in 0..order {
            current = current.derivative_once();
        }
        current
    }

    fn derivative_once(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| &self.field.integer(j as i64) * c)
            .collect();
        Poly::new(self.field.clone(), coeffs)
    }

    /// The `i`-th Hasse derivative: the coefficient of `Z^i` in `P(X + Z)`,
    /// computed as `sum_j C(j, i) a_j X^{j-i}` with binomial coefficients
    /// reduced into the field by Pascal's rule. Well defined in every
    /// characteristic.
    pub fn hasse_derivative(&self, order: usize) -> Poly {
        if self.coeffs.len() <= order {
            return Poly::zero(&self.field);
        }
        let binomials = binomial_column(&self.field, self.coeffs.len() - 1, order);
        let coeffs = (order..self.coeffs.len())
            .map(|j| &binomials[j] * &self.coeffs[j])
            .collect();
        Poly::new(self.field.clone(), coeffs)
    }

    /// The polynomial `Q(X) = P(alpha X)`: coefficient `j` is multiplied by
    /// `alpha^j`. Fails with `ZeroScale` for `alpha = 0`.
    pub fn scale_substitute(&self, alpha: &Element) -> Result<Poly> {
        if alpha.is_zero() {
            return Err(Error::ZeroScale);
        }
        let mut power = self.field.one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &power);
            power = &power * alpha;
        }
        Ok(Poly::new(self.field.clone(), coeffs))
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, at: &Element) -> Element {
        match self.coeffs.split_last() {
            None => self.field.zero(),
            Some((top, rest)) => {
                let mut acc = top.clone();
                for c in rest.iter().rev() {
                    acc = acc.mul_add(at, c).expect("coefficients share the field");
                }
                acc
            }
        }
    }

    /// Map the polynomial coefficientwise through a field embedding.
    pub fn embed(&self, embedding: &Embedding) -> Poly {
        Poly::new(
            embedding.target().clone(),
            self.coeffs.iter().map(|c| embedding.map(c)).collect(),
        )
    }

    /// The unique polynomial of degree below `points.len()` through the
    /// given (distinct) interpolation nodes, by the Lagrange formula.
    pub fn interpolate(field: &Field, points: &[(Element, Element)]) -> Result<Poly> {
        let mut result = Poly::zero(field);
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut numerator = Poly::constant(field.one());
            let mut denominator = field.one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                numerator = numerator.mul(&Poly::new(field.clone(), vec![xj.neg(), field.one()]));
                denominator = &denominator * &(xi - xj);
            }
            let factor = yi.try_div(&denominator)?;
            result = result.add(&numerator.scale(&factor));
        }
        Ok(result)
    }
}

/// Binomial coefficients `C(j, k)` for `j = 0..=max_j` at a fixed `k`,
/// reduced into the field via Pascal's rule.
fn binomial_column(field: &Field, max_j: usize, k: usize) -> Vec<Element> {
    // Row j of Pascal's triangle, truncated to columns 0..=k.
    let mut row: Vec<Element> = vec![field.one()];
    let mut column = Vec::with_capacity(max_j + 1);
    for j in 0..=max_j {
        if j > 0 {
            let width = j.min(k) + 1;
            let mut next = Vec::with_capacity(width);
            for t in 0..width {
                let mut v = row.get(t).cloned().unwrap_or_else(|| field.zero());
                if t > 0 {
                    v = &v + &row[t - 1];
                }
                next.push(v);
            }
            row = next;
        }
        column.push(row.get(k).cloned().unwrap_or_else(|| field.zero()));
    }
    column
}

impl fmt::Display for Poly {
    /// Canonical text form: comma-separated coefficients, constant first;
    /// the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "{}", self.field.zero());
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

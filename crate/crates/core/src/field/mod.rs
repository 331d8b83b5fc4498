//! Exact arithmetic for prime fields, their extensions, and the rationals.
//!
//! A [`Field`] is a cheap handle (an `Arc`) to a [`FieldSpec`] describing one
//! of three kinds of field:
//!
//! - `Prime { p }` — integers modulo a prime `p`,
//! - `Extension { p, degree, modulus }` — `F_p[x]` modulo a monic irreducible
//!   polynomial, elements stored as coefficient vectors of length `degree`,
//! - `Rational` — arbitrary-precision fractions.
//!
//! Elements are canonical: residues live in `[0, p)`, extension coefficient
//! vectors are fully reduced and have fixed length `degree`, and rationals are
//! kept in lowest terms with a positive denominator. Two elements are equal
//! exactly when their representations are identical.
//!
//! Finite fields have a canonical enumeration order used everywhere a
//! deterministic scan is required: residues ascend `0, 1, ..., p-1`, and
//! extension elements ascend by their coefficient vector read as a base-`p`
//! integer with the constant term least significant. `element_at(i)` returns
//! the `i`-th element of that order.

mod embed;
mod search;

pub use embed::Embedding;
pub use search::{
    element_of_order, extend_field, find_irreducible, order_of, primitive_element, FieldExtension,
};

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Description of a field: the rationals, a prime field, or an extension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// The field of rational numbers.
    Rational,
    /// The prime field of integers modulo `p`.
    Prime { p: u64 },
    /// `F_p[x] / (modulus)`, with `modulus` monic of degree `degree >= 2`
    /// stored as coefficients `c_0, ..., c_degree` (so `c_degree == 1`).
    Extension {
        p: u64,
        degree: usize,
        modulus: Vec<u64>,
    },
}

/// A shared handle to a [`FieldSpec`]. Cloning is cheap.
#[derive(Debug, Clone, Eq)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// The field of rational numbers.
    pub fn rational() -> Field {
        Field(Arc::new(FieldSpec::Rational))
    }

    /// The prime field `F_p`. Primality is checked by trial division.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldSpec::Prime { p })))
    }

    /// An extension field `F_p[x] / (modulus)` with an explicit modulus given
    /// as coefficients `c_0, ..., c_l` (constant term first). The modulus must
    /// be monic of degree at least 2 and irreducible over `F_p`.
    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let modulus: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        if modulus.len() < 3 {
            return Err(Error::InvalidModulus(
                "degree must be at least 2".to_string(),
            ));
        }
        let degree = modulus.len() - 1;
        if modulus[degree] != 1 {
            return Err(Error::InvalidModulus("must be monic".to_string()));
        }
        if !raw::is_irreducible(&modulus, p) {
            return Err(Error::InvalidModulus(format!("reducible over F_{p}")));
        }
        Ok(Field(Arc::new(FieldSpec::Extension { p, degree, modulus })))
    }

    /// The canonical field of order `p^l`: `F_p` for `l == 1`, otherwise the
    /// extension by the first irreducible polynomial of degree `l` in the
    /// canonical enumeration order (see [`find_irreducible`]).
    pub fn galois(p: u64, l: usize) -> Result<Field> {
        if l == 0 {
            return Err(Error::InvalidModulus("degree must be positive".into()));
        }
        if l == 1 {
            return Field::prime(p);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let modulus = raw::first_irreducible(p, l);
        Ok(Field(Arc::new(FieldSpec::Extension {
            p,
            degree: l,
            modulus,
        })))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    /// Characteristic of the field; 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldSpec::Rational => 0,
            FieldSpec::Prime { p } | FieldSpec::Extension { p, .. } => *p,
        }
    }

    /// Number of elements, or `None` for the rationals.
    pub fn size(&self) -> Option<u64> {
        match &*self.0 {
            FieldSpec::Rational => None,
            FieldSpec::Prime { p } => Some(*p),
            FieldSpec::Extension { p, degree, .. } => {
                Some(p.checked_pow(*degree as u32).expect("field size overflow"))
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(&*self.0, FieldSpec::Rational)
    }

    /// Extension degree over the prime field (1 for prime fields).
    pub fn extension_degree(&self) -> usize {
        match &*self.0 {
            FieldSpec::Extension { degree, .. } => *degree,
            _ => 1,
        }
    }

    /// Modulus coefficients `c_0, ..., c_l` for extension fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        match &*self.0 {
            FieldSpec::Extension { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    pub fn zero(&self) -> Element {
        match &*self.0 {
            FieldSpec::Rational => self.ratio(BigRational::zero()),
            FieldSpec::Prime { .. } => Element {
                field: self.clone(),
                repr: Repr::Residue(0),
            },
            FieldSpec::Extension { degree, .. } => Element {
                field: self.clone(),
                repr: Repr::Coeffs(Coeffs::zeros(*degree)),
            },
        }
    }

    pub fn one(&self) -> Element {
        self.integer(1)
    }

    /// The image of the integer `n` in this field.
    pub fn integer(&self, n: i64) -> Element {
        match &*self.0 {
            FieldSpec::Rational => self.ratio(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime { p } | FieldSpec::Extension { p, .. } => {
                let r = n.rem_euclid(*p as i64) as u64;
                self.residue(r)
            }
        }
    }

    /// The image of a nonnegative residue (reduced modulo `p` for finite
    /// fields; the integer itself for the rationals).
    pub fn residue(&self, r: u64) -> Element {
        match &*self.0 {
            FieldSpec::Rational => self.ratio(BigRational::from_integer(BigInt::from(r))),
            FieldSpec::Prime { p } => Element {
                field: self.clone(),
                repr: Repr::Residue(r % p),
            },
            FieldSpec::Extension { p, degree, .. } => {
                let constant = r % p;
                Element {
                    field: self.clone(),
                    repr: Repr::Coeffs(Coeffs::from_fn(
                        *degree,
                        |i| {
                            if i == 0 {
                                constant
                            } else {
                                0
                            }
                        },
                    )),
                }
            }
        }
    }

    /// An extension-field element from its coefficient vector over `F_p`
    /// (padded or truncated checking is the caller's job: the vector must not
    /// be longer than the extension degree).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Element> {
        match &*self.0 {
            FieldSpec::Extension { p, degree, .. } => {
                if coeffs.len() > *degree {
                    return Err(Error::DegreeTooLarge {
                        degree: coeffs.len() - 1,
                        bound: *degree,
                    });
                }
                Ok(Element {
                    field: self.clone(),
                    repr: Repr::Coeffs(Coeffs::from_fn(*degree, |i| {
                        coeffs.get(i).map_or(0, |c| c % p)
                    })),
                })
            }
            FieldSpec::Prime { .. } => {
                if coeffs.len() > 1 {
                    return Err(Error::DegreeTooLarge {
                        degree: coeffs.len() - 1,
                        bound: 1,
                    });
                }
                Ok(self.residue(coeffs.first().copied().unwrap_or(0)))
            }
            FieldSpec::Rational => Err(Error::InfiniteField),
        }
    }

    /// An exact fraction `num / den` in the rational field.
    pub fn fraction(&self, num: i64, den: i64) -> Result<Element> {
        self.fraction_big(BigInt::from(num), BigInt::from(den))
    }

    /// An exact fraction from arbitrary-precision parts.
    pub fn fraction_big(&self, num: BigInt, den: BigInt) -> Result<Element> {
        match &*self.0 {
            FieldSpec::Rational => {
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(self.ratio(BigRational::new(num, den)))
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub(crate) fn ratio(&self, r: BigRational) -> Element {
        debug_assert!(matches!(&*self.0, FieldSpec::Rational));
        Element {
            field: self.clone(),
            repr: Repr::Ratio(r),
        }
    }

    /// The `idx`-th element in the canonical enumeration order. For finite
    /// fields `idx` must be below the field size; for the rationals this is
    /// the integer `idx` (used to enumerate evaluation points).
    pub fn element_at(&self, idx: u64) -> Element {
        match &*self.0 {
            FieldSpec::Rational => self.ratio(BigRational::from_integer(BigInt::from(idx))),
            FieldSpec::Prime { p } => {
                assert!(idx < *p, "element index {idx} out of range for F_{p}");
                Element {
                    field: self.clone(),
                    repr: Repr::Residue(idx),
                }
            }
            FieldSpec::Extension { p, degree, .. } => {
                let size = self.size().unwrap();
                assert!(idx < size, "element index {idx} out of range");
                let mut rest = idx;
                Element {
                    field: self.clone(),
                    repr: Repr::Coeffs(Coeffs::from_fn(*degree, |_| {
                        let c = rest % p;
                        rest /= p;
                        c
                    })),
                }
            }
        }
    }

    /// Position of an element in the canonical enumeration order.
    pub fn index_of(&self, a: &Element) -> Option<u64> {
        match &a.repr {
            Repr::Residue(r) => Some(*r),
            Repr::Coeffs(v) => {
                let p = self.characteristic();
                let mut idx = 0u64;
                for c in v.as_slice().iter().rev() {
                    idx = idx * p + c;
                }
                Some(idx)
            }
            Repr::Ratio(_) => None,
        }
    }

    /// The first `count` elements of the canonical order, starting at index
    /// `start` (0 to include zero, 1 for nonzero points only). Fails with
    /// `FieldTooSmall` when a finite field cannot supply that many.
    pub fn eval_points(&self, start: u64, count: usize) -> Result<Vec<Element>> {
        if let Some(size) = self.size() {
            let available = size.saturating_sub(start);
            if (count as u64) > available {
                return Err(Error::FieldTooSmall {
                    available,
                    needed: count as u64,
                });
            }
        }
        Ok((start..start + count as u64)
            .map(|i| self.element_at(i))
            .collect())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "{p}"),
            FieldSpec::Extension { p, degree, .. } => write!(f, "{p}^{degree}"),
        }
    }
}

/// Coefficient storage for extension-field elements: inline for the common
/// small degrees, heap beyond. Equality and hashing look through the
/// storage kind at the coefficient slice.
#[derive(Debug, Clone)]
pub(crate) enum Coeffs {
    Inline(u8, [u64; Coeffs::INLINE]),
    Heap(Vec<u64>),
}

impl Coeffs {
    const INLINE: usize = 6;

    pub fn from_slice(s: &[u64]) -> Coeffs {
        if s.len() <= Coeffs::INLINE {
            let mut data = [0u64; Coeffs::INLINE];
            data[..s.len()].copy_from_slice(s);
            Coeffs::Inline(s.len() as u8, data)
        } else {
            Coeffs::Heap(s.to_vec())
        }
    }

    pub fn zeros(len: usize) -> Coeffs {
        if len <= Coeffs::INLINE {
            Coeffs::Inline(len as u8, [0u64; Coeffs::INLINE])
        } else {
            Coeffs::Heap(vec![0; len])
        }
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> u64) -> Coeffs {
        if len <= Coeffs::INLINE {
            let mut data = [0u64; Coeffs::INLINE];
            for (i, slot) in data.iter_mut().enumerate().take(len) {
                *slot = f(i);
            }
            Coeffs::Inline(len as u8, data)
        } else {
            Coeffs::Heap((0..len).map(f).collect())
        }
    }

    pub fn as_slice(&self) -> &[u64] {
        match self {
            Coeffs::Inline(len, data) => &data[..*len as usize],
            Coeffs::Heap(v) => v,
        }
    }
}

impl PartialEq for Coeffs {
    fn eq(&self, other: &Self) -> bool {
        self.as_slice() == other.as_slice()
    }
}

impl Eq for Coeffs {}

impl std::hash::Hash for Coeffs {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.as_slice().hash(state)
    }
}

/// Canonical representation of a field element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Repr {
    Residue(u64),
    Coeffs(Coeffs),
    Ratio(BigRational),
}

/// An element of a [`Field`]. Representations are canonical, so `==` is
/// exact equality in the field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    field: Field,
    repr: Repr,
}

impl Element {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Residue(r) => *r == 0,
            Repr::Coeffs(v) => v.as_slice().iter().all(|c| *c == 0),
            Repr::Ratio(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    /// The residue value of a prime-field element.
    pub fn residue_value(&self) -> Option<u64> {
        match &self.repr {
            Repr::Residue(r) => Some(*r),
            _ => None,
        }
    }

    /// Coefficient vector of an extension-field element.
    pub fn coeff_vector(&self) -> Option<&[u64]> {
        match &self.repr {
            Repr::Coeffs(v) => Some(v.as_slice()),
            _ => None,
        }
    }

    /// Numerator/denominator of a rational element.
    pub fn fraction_parts(&self) -> Option<(&BigInt, &BigInt)> {
        match &self.repr {
            Repr::Ratio(r) => Some((r.numer(), r.denom())),
            _ => None,
        }
    }

    fn check_same_field(&self, other: &Element) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_same_field(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Residue(a), Repr::Residue(b)) => {
                let p = self.field.characteristic();
                Repr::Residue((a + b) % p)
            }
            (Repr::Coeffs(a), Repr::Coeffs(b)) => {
                let p = self.field.characteristic();
                let (a, b) = (a.as_slice(), b.as_slice());
                Repr::Coeffs(Coeffs::from_fn(a.len(), |i| (a[i] + b[i]) % p))
            }
            (Repr::Ratio(a), Repr::Ratio(b)) => Repr::Ratio(a + b),
            _ => return Err(Error::FieldMismatch),
        };
        Ok(Element {
            field: self.field.clone(),
            repr,
        })
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        let repr = match &self.repr {
            Repr::Residue(a) => {
                let p = self.field.characteristic();
                Repr::Residue((p - a) % p)
            }
            Repr::Coeffs(v) => {
                let p = self.field.characteristic();
                let v = v.as_slice();
                Repr::Coeffs(Coeffs::from_fn(v.len(), |i| (p - v[i]) % p))
            }
            Repr::Ratio(r) => Repr::Ratio(-r),
        };
        Element {
            field: self.field.clone(),
            repr,
        }
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check_same_field(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Residue(a), Repr::Residue(b)) => {
                let p = self.field.characteristic();
                Repr::Residue(a * b % p)
            }
            (Repr::Coeffs(a), Repr::Coeffs(b)) => {
                let p = self.field.characteristic();
                let modulus = self.field.modulus().unwrap();
                let (a, b) = (a.as_slice(), b.as_slice());
                let l = a.len();
                if l <= Coeffs::INLINE {
                    // Multiply and reduce entirely in a stack scratch.
                    let mut prod = [0u64; 2 * Coeffs::INLINE - 1];
                    raw::mul_mod_into(a, b, modulus, p, &mut prod[..2 * l - 1]);
                    Repr::Coeffs(Coeffs::from_slice(&prod[..l]))
                } else {
                    Repr::Coeffs(Coeffs::from_slice(&raw::mul_mod(a, b, modulus, p)))
                }
            }
            (Repr::Ratio(a), Repr::Ratio(b)) => Repr::Ratio(a * b),
            _ => return Err(Error::FieldMismatch),
        };
        Ok(Element {
            field: self.field.clone(),
            repr,
        })
    }

    /// Fused multiply-add: `self * mul + add`, the Horner step. One
    /// element is built instead of two.
    pub fn mul_add(&self, mul: &Element, add: &Element) -> Result<Element> {
        self.check_same_field(mul)?;
        self.check_same_field(add)?;
        let repr = match (&self.repr, &mul.repr, &add.repr) {
            (Repr::Residue(a), Repr::Residue(m), Repr::Residue(b)) => {
                let p = self.field.characteristic();
                Repr::Residue((a * m % p + b) % p)
            }
            (Repr::Coeffs(a), Repr::Coeffs(m), Repr::Coeffs(b)) => {
                let p = self.field.characteristic();
                let modulus = self.field.modulus().unwrap();
                let (a, m, b) = (a.as_slice(), m.as_slice(), b.as_slice());
                let l = a.len();
                if l <= Coeffs::INLINE {
                    let mut prod = [0u64; 2 * Coeffs::INLINE - 1];
                    raw::mul_mod_into(a, m, modulus, p, &mut prod[..2 * l - 1]);
                    for (slot, x) in prod.iter_mut().zip(b) {
                        *slot = (*slot + x) % p;
                    }
                    Repr::Coeffs(Coeffs::from_slice(&prod[..l]))
                } else {
                    let mut out = raw::mul_mod(a, m, modulus, p);
                    for (slot, x) in out.iter_mut().zip(b) {
                        *slot = (*slot + x) % p;
                    }
                    Repr::Coeffs(Coeffs::from_slice(&out))
                }
            }
            (Repr::Ratio(a), Repr::Ratio(m), Repr::Ratio(b)) => Repr::Ratio(a * m + b),
            _ => return Err(Error::FieldMismatch),
        };
        Ok(Element {
            field: self.field.clone(),
            repr,
        })
    }

    /// Multiplicative inverse. Fails with `DivisionByZero` on zero.
    pub fn inv(&self) -> Result<Element> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Residue(a) => {
                let p = self.field.characteristic();
                Repr::Residue(raw::inv_mod_p(*a, p))
            }
            Repr::Coeffs(v) => {
                let p = self.field.characteristic();
                let modulus = self.field.modulus().unwrap();
                Repr::Coeffs(Coeffs::from_slice(&raw::inv_mod(v.as_slice(), modulus, p)))
            }
            Repr::Ratio(r) => Repr::Ratio(r.recip()),
        };
        Ok(Element {
            field: self.field.clone(),
            repr,
        })
    }

    pub fn try_div(&self, other: &Element) -> Result<Element> {
        self.try_mul(&other.inv()?)
    }

    /// `self` raised to a nonnegative power by square-and-multiply.
    pub fn pow(&self, mut e: u64) -> Element {
        let mut result = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// Signed power; negative exponents invert first.
    pub fn pow_i64(&self, e: i64) -> Result<Element> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }
}

macro_rules! element_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                self.$checked(rhs)
                    .expect("field mismatch in element arithmetic")
            }
        }
        impl std::ops::$trait for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                (&self).$method(&rhs)
            }
        }
    };
}

element_binop!(Add, add, try_add);
element_binop!(Sub, sub, try_sub);
element_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::neg(self)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Residue(r) => write!(f, "{r}"),
            Repr::Coeffs(v) => {
                let parts: Vec<String> = v.as_slice().iter().map(|c| c.to_string()).collect();
                write!(f, "{}", parts.join(";"))
            }
            Repr::Ratio(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.denom().is_negative() {
                    // num-rational keeps denominators positive; belt and braces.
                    write!(f, "{}/{}", -r.numer(), -r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

/// Fixed-modulus coefficient arithmetic over `F_p`, used for extension-field
/// elements and for modulus validation before any `Poly` machinery exists.
pub(crate) mod raw {
    /// Inverse of `a` modulo prime `p` via the extended Euclidean algorithm.
    pub fn inv_mod_p(a: u64, p: u64) -> u64 {
        let (mut t, mut new_t): (i64, i64) = (0, 1);
        let (mut r, mut new_r): (i64, i64) = (p as i64, (a % p) as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        assert!(r == 1, "not invertible");
        t.rem_euclid(p as i64) as u64
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    /// Schoolbook product of two coefficient vectors over `F_p`.
    pub fn mul_plain(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        out
    }

    /// Remainder of `a` modulo the monic polynomial `m` over `F_p`.
    pub fn rem_monic(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let deg_m = m.len() - 1;
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        while r.len() > deg_m {
            let lead = r[r.len() - 1];
            let shift = r.len() - 1 - deg_m;
            for (i, c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    /// Product of `a` and `b` reduced by the monic modulus, returned as a
    /// fixed-length coefficient vector.
    /// Multiply `a` and `b` into the scratch slice (length
    /// `a.len() + b.len() - 1`) and reduce in place by the monic modulus;
    /// the result occupies the first `deg(modulus)` slots. Coefficient sums
    /// stay far below u64 range at desk-scale characteristics, so the
    /// residue reduction happens once per slot.
    pub fn mul_mod_into(a: &[u64], b: &[u64], modulus: &[u64], p: u64, prod: &mut [u64]) {
        let degree = modulus.len() - 1;
        prod.fill(0);
        if p < (1 << 26) {
            // a.len() products of size < 2^52 cannot overflow a u64 sum.
            for (i, x) in a.iter().enumerate() {
                if *x == 0 {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    prod[i + j] += x * y;
                }
            }
            for slot in prod.iter_mut() {
                *slot %= p;
            }
        } else {
            for (i, x) in a.iter().enumerate() {
                if *x == 0 {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
        }
        for i in (degree..prod.len()).rev() {
            let lead = prod[i];
            if lead == 0 {
                continue;
            }
            prod[i] = 0;
            let shift = i - degree;
            for (t, c) in modulus.iter().enumerate().take(degree) {
                if *c != 0 {
                    prod[shift + t] = (prod[shift + t] + p - lead * c % p) % p;
                }
            }
        }
    }

    pub fn mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
        let degree = modulus.len() - 1;
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        mul_mod_into(a, b, modulus, p, &mut prod);
        prod.truncate(degree);
        prod
    }

    /// Quotient and remainder of `a` by a nonzero polynomial `b` over `F_p`.
    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        assert!(!b.is_empty(), "division by zero polynomial");
        let deg_b = b.len() - 1;
        let lead_inv = inv_mod_p(b[deg_b], p);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - deg_b];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let factor = r[r.len() - 1] * lead_inv % p;
            q[shift] = factor;
            for (i, c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - factor * c % p) % p;
            }
            trim(&mut r);
        }
        (q, r)
    }

    /// Inverse of `a` modulo the monic irreducible `modulus` over `F_p`.
    pub fn inv_mod(a: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
        // Extended Euclid on (modulus, a).
        let degree = modulus.len() - 1;
        let mut r0: Vec<u64> = modulus.to_vec();
        let mut r1: Vec<u64> = a.to_vec();
        trim(&mut r1);
        let mut t0: Vec<u64> = Vec::new();
        let mut t1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, rem) = divrem(&r0, &r1, p);
            let qt1 = mul_plain(&q, &t1, p);
            let mut new_t = sub(&t0, &qt1, p);
            trim(&mut new_t);
            r0 = r1;
            r1 = rem;
            t0 = t1;
            t1 = new_t;
        }
        // r0 is now a nonzero constant gcd; scale t0 by its inverse.
        assert!(r0.len() == 1, "element not invertible modulo the modulus");
        let scale = inv_mod_p(r0[0], p);
        let scaled: Vec<u64> = t0.iter().map(|c| c * scale % p).collect();
        let mut out = rem_monic(&scaled, modulus, p);
        out.resize(degree, 0);
        out
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect()
    }

    /// True when the monic polynomial `m` has no monic divisor of degree
    /// between 1 and `deg(m) / 2`, checked by exhaustive trial division.
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let deg = m.len() - 1;
        if deg == 1 {
            return true;
        }
        for d in 1..=deg / 2 {
            // All monic divisor candidates of degree d, enumerated by their
            // lower coefficients read as a base-p integer.
            let count = p.pow(d as u32);
            for j in 0..count {
                let mut cand = vec![0u64; d + 1];
                let mut rest = j;
                for c in cand.iter_mut().take(d) {
                    *c = rest % p;
                    rest /= p;
                }
                cand[d] = 1;
                let (_, rem) = divrem(m, &cand, p);
                if rem.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// First monic irreducible polynomial of degree `l` over `F_p` in the
    /// canonical enumeration order (lower coefficients ascending as a
    /// base-p integer).
    pub fn first_irreducible(p: u64, l: usize) -> Vec<u64> {
        let count = p.pow(l as u32);
        for j in 0..count {
            let mut cand = vec![0u64; l + 1];
            let mut rest = j;
            for c in cand.iter_mut().take(l) {
                *c = rest % p;
                rest /= p;
            }
            cand[l] = 1;
            if is_irreducible(&cand, p) {
                return cand;
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over a finite field")
    }
}

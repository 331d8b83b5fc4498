//! Deterministic searches inside finite fields: element orders, elements of
//! prescribed order, primitive elements, irreducible polynomials, and field
//! extensions of controlled size.

use crate::error::{Error, Result};
use crate::field::{Element, Embedding, Field};
use crate::poly::Poly;

/// Multiplicative order of a nonzero element of a finite field: the least
/// `r >= 1` with `a^r = 1`. The order always divides `|F| - 1`.
pub fn order_of(a: &Element) -> Result<u64> {
    let size = a.field().size().ok_or(Error::InfiniteField)?;
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let group = size - 1;
    // Start from the group order and strip prime factors while the power
    // stays at one.
    let mut order = group;
    let mut rest = group;
    let mut q = 2;
    while q * q <= rest {
        if rest % q == 0 {
            while rest % q == 0 {
                rest /= q;
            }
            while order % q == 0 && a.pow(order / q).is_one() {
                order /= q;
            }
        }
        q += 1;
    }
    if rest > 1 {
        while order % rest == 0 && a.pow(order / rest).is_one() {
            order /= rest;
        }
    }
    Ok(order)
}

/// First element (in canonical enumeration order) whose multiplicative order
/// exceeds `n`. Each candidate is probed by at most `n` successive powers, so
/// a candidate is accepted exactly when none of its first `n` powers is one.
///
/// Fails with `NoSuchElement` when `|F| - 1 <= n`, since no element of the
/// multiplicative group can then have order above `n`.
pub fn element_of_order(field: &Field, n: u64) -> Result<Element> {
    let size = field.size().ok_or(Error::InfiniteField)?;
    if size - 1 <= n {
        return Err(Error::NoSuchElement);
    }
    for idx in 1..size {
        let candidate = field.element_at(idx);
        let mut power = candidate.clone();
        let mut ok = true;
        for _ in 0..n {
            if power.is_one() {
                ok = false;
                break;
            }
            power = &power * &candidate;
        }
        if ok {
            return Ok(candidate);
        }
    }
    // The group is cyclic of order |F| - 1 > n, so a generator qualifies.
    unreachable!("a finite field always contains an element of order > n < |F| - 1")
}

/// First element (in canonical enumeration order) of order `|F| - 1`.
pub fn primitive_element(field: &Field) -> Result<Element> {
    let size = field.size().ok_or(Error::InfiniteField)?;
    for idx in 1..size {
        let candidate = field.element_at(idx);
        if order_of(&candidate)? == size - 1 {
            return Ok(candidate);
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

/// First monic irreducible polynomial of degree `r` over the finite field
/// `base`, in the canonical enumeration order: candidates `X^r + c_{r-1}
/// X^{r-1} + ... + c_0` ascend by the value of `(c_0, ..., c_{r-1})` read as
/// a base-`|F|` integer with `c_0` least significant. Irreducibility is
/// checked by trial division against every monic polynomial of degree at
/// most `r / 2`.
pub fn find_irreducible(base: &Field, r: usize) -> Result<Poly> {
    let size = base.size().ok_or(Error::InfiniteField)?;
    assert!(r >= 1, "irreducible degree must be positive");
    let total = size
        .checked_pow(r as u32)
        .expect("search space exceeds u64");
    for idx in 0..total {
        let candidate = monic_at(base, r, idx);
        if is_irreducible(&candidate) {
            return Ok(candidate);
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over a finite field")
}

/// The `idx`-th monic polynomial of degree `r` in the canonical order.
fn monic_at(base: &Field, r: usize, idx: u64) -> Poly {
    let size = base.size().expect("finite base field");
    let mut coeffs = Vec::with_capacity(r + 1);
    let mut rest = idx;
    for _ in 0..r {
        coeffs.push(base.element_at(rest % size));
        rest /= size;
    }
    coeffs.push(base.one());
    Poly::new(base.clone(), coeffs)
}

/// Exhaustive trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(candidate: &Poly) -> bool {
    let base = candidate.field();
    let size = base.size().expect("finite base field");
    let deg = candidate.degree().expect("candidate is monic, not zero");
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = size.pow(d as u32);
        for idx in 0..count {
            let divisor = monic_at(base, d, idx);
            let (_, rem) = candidate.divrem(&divisor).expect("monic divisor");
            if rem.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Result of growing a finite field to a prescribed size: the extension, a
/// primitive element of it, and the embedding of the original field.
#[derive(Debug, Clone)]
pub struct FieldExtension {
    pub field: Field,
    pub primitive: Element,
    pub embedding: Embedding,
}

/// Grow a finite field `f` until it has more than `n` elements and return a
/// primitive element of the result.
///
/// The extension degree `r` is the smallest with `|f|^r > n`, which keeps
/// `|K| < n^2` whenever `|f| < n` (and `|K| <= n^2` at the boundary
/// `|f| = n`). The extension is realised over the prime subfield with the
/// canonical modulus of degree `l * r`, together with the embedding of `f`.
/// When `|f| > n` already, `f` itself is returned unchanged.
pub fn extend_field(f: &Field, n: u64) -> Result<FieldExtension> {
    let size = f.size().ok_or(Error::InfiniteField)?;
    if size > n {
        return Ok(FieldExtension {
            field: f.clone(),
            primitive: primitive_element(f)?,
            embedding: Embedding::identity(f),
        });
    }
    let mut r = 1usize;
    let mut grown = size;
    while grown <= n {
        grown = grown.checked_mul(size).expect("extension size exceeds u64");
        r += 1;
    }
    let p = f.characteristic();
    let l = f.extension_degree();
    let target = Field::galois(p, l * r)?;
    let embedding = Embedding::new(f, &target)?;
    let primitive = primitive_element(&target)?;
    Ok(FieldExtension {
        field: target,
        primitive,
        embedding,
    })
}

//! Embeddings of a field into an extension of it.

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};

use super::Element;

/// An embedding of one field into another with the same characteristic.
///
/// Prime fields and the rationals embed by sending residues to the matching
/// constants. An extension field `F_p[x]/(m)` embeds into a larger extension
/// by sending the class of `x` to a root of `m` in the target; the root is
/// the first one in the canonical enumeration order, which makes the
/// embedding deterministic.
#[derive(Debug, Clone)]
pub struct Embedding {
    from: Field,
    to: Field,
    /// Image of the source field's generator; `None` when the source is a
    /// prime field or the rationals (constant embedding).
    gen_image: Option<Element>,
}

impl Embedding {
    /// The identity embedding of a field into itself.
    pub fn identity(field: &Field) -> Embedding {
        Embedding {
            from: field.clone(),
            to: field.clone(),
            gen_image: None,
        }
    }

    /// Compute the canonical embedding of `from` into `to`. Fails with
    /// `FieldMismatch` when `to` is not an extension of `from`.
    pub fn new(from: &Field, to: &Field) -> Result<Embedding> {
        if from == to {
            return Ok(Embedding::identity(from));
        }
        match (from.spec(), to.spec()) {
            (FieldSpec::Rational, _) | (_, FieldSpec::Rational) => Err(Error::FieldMismatch),
            (FieldSpec::Prime { p }, FieldSpec::Prime { p: q }) => {
                if p == q {
                    Ok(Embedding::identity(from))
                } else {
                    Err(Error::FieldMismatch)
                }
            }
            (FieldSpec::Prime { p }, FieldSpec::Extension { p: q, .. }) => {
                if p == q {
                    Ok(Embedding {
                        from: from.clone(),
                        to: to.clone(),
                        gen_image: None,
                    })
                } else {
                    Err(Error::FieldMismatch)
                }
            }
            (FieldSpec::Extension { .. }, FieldSpec::Prime { .. }) => Err(Error::FieldMismatch),
            (
                FieldSpec::Extension { p, degree, modulus },
                FieldSpec::Extension {
                    p: q,
                    degree: to_degree,
                    ..
                },
            ) => {
                if p != q || to_degree % degree != 0 {
                    return Err(Error::FieldMismatch);
                }
                // Every root of the source modulus lies in the unique
                // subfield of the source's size, which is {0} plus the
                // cyclic group generated by a power of a primitive element.
                // Scanning those |from| candidates stays cheap even when
                // the target field is huge.
                let from_size = from.size().expect("finite extension");
                let to_size = to.size().expect("finite extension");
                let gamma = crate::field::primitive_element(to)?;
                let delta = gamma.pow((to_size - 1) / (from_size - 1));
                let mut power = to.one();
                for _ in 0..from_size - 1 {
                    if eval_modulus(modulus, &power, to).is_zero() {
                        return Ok(Embedding {
                            from: from.clone(),
                            to: to.clone(),
                            gen_image: Some(power),
                        });
                    }
                    power = &power * &delta;
                }
                Err(Error::FieldMismatch)
            }
        }
    }

    pub fn source(&self) -> &Field {
        &self.from
    }

    pub fn target(&self) -> &Field {
        &self.to
    }

    /// Map an element of the source field into the target field.
    pub fn map(&self, a: &Element) -> Element {
        assert!(a.field() == &self.from, "element not in the source field");
        if self.from == self.to {
            return a.clone();
        }
        match self.gen_image.as_ref() {
            None => {
                // Constant embedding of a prime-field residue.
                let r = a.residue_value().expect("prime-field element");
                self.to.residue(r)
            }
            Some(gamma) => {
                let coeffs = a.coeff_vector().expect("extension-field element");
                horner(coeffs, gamma, &self.to)
            }
        }
    }
}

/// Evaluate a polynomial with base-`F_p` coefficients at a point of `field`.
fn eval_modulus(coeffs: &[u64], at: &Element, field: &Field) -> Element {
    horner(coeffs, at, field)
}

fn horner(coeffs: &[u64], at: &Element, field: &Field) -> Element {
    let mut acc = field.zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * at) + &field.residue(*c);
    }
    acc
}

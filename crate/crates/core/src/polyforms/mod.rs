//! Exact polynomials over ℚ and differential forms with polynomial
//! coefficients.
//!
//! Every value here is immutable once built. Polynomials are sparse maps
//! from exponent vectors to nonzero rationals, ordered graded
//! lexicographically, and forms are sparse maps from increasing index
//! tuples to polynomials.

mod form;
mod parse;
mod poly;

pub use form::{exterior_derivative, wedge, Form, FormDisplay};
pub use parse::{parse_form, parse_form_at, parse_poly, parse_poly_at};
pub use poly::{Monomial, Poly, PolyDisplay};

use crate::error::{Error, Result};

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;

/// Maximum number of ring variables.
pub const MAX_VARS: usize = 16;

/// `Rational` from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `Rational` from a fraction.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Variable names of a polynomial ring `ℚ[x_1, …, x_n]`, in the order that
/// fixes the term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
}

impl Ring {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARS {
            return Err(Error::Semantic(format!(
                "at most {MAX_VARS} variables are supported"
            )));
        }
        for (i, n) in names.iter().enumerate() {
            let ok = n
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Semantic(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Semantic(format!("duplicate variable `{n}`")));
            }
        }
        // `dx` must stay unambiguous.
        for n in &names {
            if let Some(rest) = n.strip_prefix('d') {
                if names.iter().any(|m| m == rest) {
                    return Err(Error::Semantic(format!(
                        "variable `{n}` clashes with the differential of `{rest}`"
                    )));
                }
            }
        }
        Ok(Ring { names })
    }

    /// `x1, …, xn`.
    pub fn default_names(n: usize) -> Self {
        Ring {
            names: (1..=n).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl std::fmt::Display for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Q[{}]", self.names.join(", "))
    }
}

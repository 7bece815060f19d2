use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::poly::{monomial_factors, write_term};
use super::{Poly, Rational, Ring};
use crate::error::{Error, Result};
use crate::subset::Subset;

/// A differential form `Σ p_I dx_I` of fixed degree with polynomial
/// coefficients.
///
/// The zero form is compatible with every degree: adding it to a form of
/// another degree is allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Subset, Poly>,
}

impl Form {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        Form {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let nvars = p.nvars();
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(Subset::EMPTY, p);
        }
        Form {
            nvars,
            degree: 0,
            terms,
        }
    }

    /// `dx_i`.
    pub fn dx(nvars: usize, i: usize) -> Self {
        Form::basis(nvars, Subset::singleton(i), Poly::one(nvars))
    }

    /// `coeff · dx_I`.
    pub fn basis(nvars: usize, index: Subset, coeff: Poly) -> Self {
        assert!(index.iter().all(|i| i < nvars), "form index out of range");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(index, coeff);
        }
        Form {
            nvars,
            degree: index.len(),
            terms,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Subset, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, index: Subset) -> Poly {
        self.terms
            .get(&index)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.nvars))
    }

    /// The coefficient of a degree-0 form.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.degree == 0 || self.is_zero() {
            Some(self.coefficient(Subset::EMPTY))
        } else {
            None
        }
    }

    /// Retags a zero form with another degree; non-zero forms are returned
    /// unchanged.
    pub fn with_degree_if_zero(mut self, degree: usize) -> Self {
        if self.is_zero() {
            self.degree = degree;
        }
        self
    }

    fn add_term(&mut self, index: Subset, p: Poly) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &p;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Form) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Form) -> Result<Form> {
        self.check(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(Error::Shape(format!(
                "cannot add forms of degree {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (i, p) in &other.terms {
            out.add_term(*i, p.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Form) -> Result<Form> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, c: &Rational) -> Form {
        if c.is_zero() {
            return Form::zero(self.nvars, self.degree);
        }
        Form {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(i, p)| (*i, p.scale(c))).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Form {
        self.scale(&Rational::from_integer(c.into()))
    }

    pub fn mul_poly(&self, p: &Poly) -> Form {
        let mut out = Form::zero(self.nvars, self.degree);
        if p.is_zero() {
            return out;
        }
        for (i, c) in &self.terms {
            out.add_term(*i, c * p);
        }
        out
    }

    /// Exterior product. The result degree is the sum of the degrees; it is
    /// the zero form when that sum exceeds the number of variables.
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        self.check(other)?;
        let mut out = Form::zero(self.nvars, self.degree + other.degree);
        for (i, p) in &self.terms {
            for (j, q) in &other.terms {
                if let Some(sign) = i.wedge_sign(*j) {
                    let c = p * q;
                    out.add_term(i.union(*j), if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative `d(Σ p_I dx_I) = Σ ∂p_I/∂x_j dx_j ∧ dx_I`.
    pub fn exterior_derivative(&self) -> Form {
        let mut out = Form::zero(self.nvars, self.degree + 1);
        for (i, p) in &self.terms {
            for j in 0..self.nvars {
                let sign = match Subset::singleton(j).wedge_sign(*i) {
                    Some(s) => s,
                    None => continue,
                };
                let dp = p.derivative(j);
                if dp.is_zero() {
                    continue;
                }
                out.add_term(i.insert(j), if sign < 0 { -dp } else { dp });
            }
        }
        out
    }

    /// Interior product with the vector field `Σ values[i] ∂/∂x_i`, taken in
    /// the leftmost slot: `ι(dx_{i1}∧…∧dx_{ip}) = Σ_t (-1)^{t-1} v_{i_t} dx_{…î_t…}`.
    pub fn contract(&self, values: &[Poly]) -> Result<Form> {
        if self.degree == 0 {
            return Err(Error::ZeroFormDegree);
        }
        if values.len() != self.nvars {
            return Err(Error::ArityMismatch {
                left: self.nvars,
                right: values.len(),
            });
        }
        let mut out = Form::zero(self.nvars, self.degree - 1);
        for (index, p) in &self.terms {
            for (t, i) in index.iter().enumerate() {
                let v = &values[i];
                if v.is_zero() {
                    continue;
                }
                let c = p * v;
                out.add_term(index.remove(i), if t % 2 == 1 { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Applies a map to every polynomial coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&Poly) -> Poly) -> Form {
        let mut out = Form::zero(self.nvars, self.degree);
        for (i, p) in &self.terms {
            out.add_term(*i, f(p));
        }
        out
    }

    /// Common weighted degree of all terms, counting `dx_i` with the weight
    /// of `x_i`. `None` for the zero form or an inhomogeneous one.
    pub fn homogeneous_weight(&self, weights: &[u32]) -> Option<u64> {
        let mut out = None;
        for (i, p) in &self.terms {
            let dw: u64 = i.iter().map(|k| u64::from(weights[k])).sum();
            for (m, _) in p.terms() {
                let w = m.weighted_degree(weights) + dw;
                match out {
                    None => out = Some(w),
                    Some(o) if o != w => return None,
                    _ => {}
                }
            }
        }
        out
    }

    pub fn display<'a>(&'a self, ring: &'a Ring) -> FormDisplay<'a> {
        FormDisplay { form: self, ring }
    }
}

pub struct FormDisplay<'a> {
    form: &'a Form,
    ring: &'a Ring,
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.form.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (index, p) in &self.form.terms {
            let wedge: Vec<String> = index
                .iter()
                .map(|i| format!("d{}", self.ring.name(i)))
                .collect();
            let wedge = wedge.join("^");
            for (m, c) in p.terms().rev() {
                let mut factors = monomial_factors(m, self.ring);
                if !wedge.is_empty() {
                    factors.push(wedge.clone());
                }
                write_term(f, c, &factors, first)?;
                first = false;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = Ring::default_names(self.nvars);
        write!(f, "{}", self.display(&ring))
    }
}

impl Zero for Form {
    fn zero() -> Self {
        Form::zero(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Add<&Form> for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        // The nullary zero from `Zero::zero` has arity 0 and adapts.
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        self.checked_add(rhs).expect("form addition")
    }
}

impl Add for Form {
    type Output = Form;
    fn add(self, rhs: Form) -> Form {
        &self + &rhs
    }
}

impl Sub<&Form> for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        self + &(-rhs)
    }
}

impl Sub for Form {
    type Output = Form;
    fn sub(self, rhs: Form) -> Form {
        &self - &rhs
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        Form {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(i, p)| (*i, -p)).collect(),
        }
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        -&self
    }
}

/// `d f = Σ ∂f/∂x_i dx_i`.
pub fn exterior_derivative(f: &Poly) -> Form {
    Form::from_poly(f.clone()).exterior_derivative()
}

/// Exterior product of two forms.
pub fn wedge(a: &Form, b: &Form) -> Result<Form> {
    a.wedge(b)
}

use std::collections::BTreeMap;
use std::sync::Arc;

use super::complex::FreeComplex;
use super::matrix::{form_form_mul, form_poly_mul, form_zero, poly_form_mul, Matrix};
use crate::error::{Error, Result};
use crate::polyforms::{Form, Poly, Rational};
use crate::subset::sign_pow;

/// A map of degree `r` from `source` to `target ⊗ Ω^k`.
///
/// `block(i)` is the matrix from source degree `i` to target degree
/// `i + r`, with entries forms of degree `k`. Form coefficients sit to the
/// right of basis symbols, so no sign arises from moving them past basis
/// elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: Arc<FreeComplex>,
    target: Arc<FreeComplex>,
    degree: i32,
    form_degree: usize,
    blocks: BTreeMap<i32, Matrix<Form>>,
}

impl ChainMap {
    pub fn zero(source: Arc<FreeComplex>, target: Arc<FreeComplex>, degree: i32, form_degree: usize) -> Self {
        let n = source.nvars();
        let blocks = source
            .degrees()
            .map(|i| (i, form_zero(n, form_degree, target.rank(i + degree), source.rank(i))))
            .collect();
        ChainMap {
            source,
            target,
            degree,
            form_degree,
            blocks,
        }
    }

    /// Builds a map from explicit blocks keyed by source degree; degrees
    /// not listed are zero.
    pub fn from_blocks(
        source: Arc<FreeComplex>,
        target: Arc<FreeComplex>,
        degree: i32,
        form_degree: usize,
        blocks: BTreeMap<i32, Matrix<Form>>,
    ) -> Result<Self> {
        if source.nvars() != target.nvars() {
            return Err(Error::ArityMismatch {
                left: source.nvars(),
                right: target.nvars(),
            });
        }
        let mut m = ChainMap::zero(source, target, degree, form_degree);
        for (i, b) in blocks {
            let (rows, cols) = (m.target.rank(i + degree), m.source.rank(i));
            if b.rows() != rows || b.cols() != cols {
                return Err(Error::Shape(format!(
                    "block at degree {i} is {}x{}, expected {rows}x{cols}",
                    b.rows(),
                    b.cols()
                )));
            }
            if rows * cols == 0 {
                continue;
            }
            for (_, _, f) in b.entries() {
                if f.nvars() != m.source.nvars() {
                    return Err(Error::ArityMismatch {
                        left: m.source.nvars(),
                        right: f.nvars(),
                    });
                }
                if !f.is_zero() && f.degree() != form_degree {
                    return Err(Error::Shape(format!(
                        "entry of form degree {} in a map of form degree {form_degree}",
                        f.degree()
                    )));
                }
            }
            m.blocks.insert(i, b.map(|f| f.clone().with_degree_if_zero(form_degree)));
        }
        Ok(m)
    }

    /// Builds a form-degree-0 map from polynomial blocks.
    pub fn from_poly_blocks(
        source: Arc<FreeComplex>,
        target: Arc<FreeComplex>,
        degree: i32,
        blocks: BTreeMap<i32, Matrix<Poly>>,
    ) -> Result<Self> {
        let blocks = blocks
            .into_iter()
            .map(|(i, b)| (i, b.map(|p| Form::from_poly(p.clone()))))
            .collect();
        ChainMap::from_blocks(source, target, degree, 0, blocks)
    }

    pub fn identity(c: Arc<FreeComplex>) -> Self {
        let n = c.nvars();
        let mut m = ChainMap::zero(c.clone(), c.clone(), 0, 0);
        for i in c.degrees() {
            let r = c.rank(i);
            m.blocks.insert(
                i,
                Matrix::from_fn(r, r, |a, b| {
                    if a == b {
                        Form::from_poly(Poly::one(n))
                    } else {
                        Form::zero(n, 0)
                    }
                }),
            );
        }
        m
    }

    /// The differential of a complex as a degree-1 self-map.
    pub fn differential(c: Arc<FreeComplex>) -> Self {
        let mut m = ChainMap::zero(c.clone(), c.clone(), 1, 0);
        for i in c.degrees() {
            m.blocks.insert(i, c.d(i).map(|p| Form::from_poly(p.clone())));
        }
        m
    }

    pub fn source(&self) -> &Arc<FreeComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FreeComplex> {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn form_degree(&self) -> usize {
        self.form_degree
    }

    pub fn nvars(&self) -> usize {
        self.source.nvars()
    }

    /// The block from source degree `i`; a zero matrix outside the range.
    pub fn block(&self, i: i32) -> Matrix<Form> {
        self.blocks.get(&i).cloned().unwrap_or_else(|| {
            form_zero(
                self.nvars(),
                self.form_degree,
                self.target.rank(i + self.degree),
                self.source.rank(i),
            )
        })
    }

    pub fn blocks(&self) -> impl Iterator<Item = (i32, &Matrix<Form>)> {
        self.blocks.iter().map(|(i, b)| (*i, b))
    }

    pub fn entry(&self, i: i32, t: usize, s: usize) -> &Form {
        self.blocks[&i].get(t, s)
    }

    pub(crate) fn set_entry(&mut self, i: i32, t: usize, s: usize, f: Form) {
        let k = self.form_degree;
        self.blocks
            .get_mut(&i)
            .expect("degree in range")
            .set(t, s, f.with_degree_if_zero(k));
    }

    pub fn is_zero(&self) -> bool {
        self.blocks
            .values()
            .all(|b| b.entries().all(|(_, _, f)| f.is_zero()))
    }

    fn check_parallel(&self, other: &ChainMap) -> Result<()> {
        if self.source != other.source
            || self.target != other.target
            || self.degree != other.degree
            || self.form_degree != other.form_degree
        {
            return Err(Error::Shape(
                "maps differ in source, target, degree or form degree".into(),
            ));
        }
        Ok(())
    }

    fn zip(&self, other: &ChainMap, f: impl Fn(&Form, &Form) -> Form) -> Result<ChainMap> {
        self.check_parallel(other)?;
        let mut out = self.clone();
        for (i, b) in out.blocks.iter_mut() {
            let o = &other.blocks[i];
            *b = Matrix::from_fn(b.rows(), b.cols(), |r, c| f(b.get(r, c), o.get(r, c)));
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.zip(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.zip(other, |a, b| a - b)
    }

    pub fn map_entries(&self, f: impl Fn(&Form) -> Form) -> ChainMap {
        let mut out = self.clone();
        let k = self.form_degree;
        for b in out.blocks.values_mut() {
            *b = b.map(|x| f(x).with_degree_if_zero(k));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> ChainMap {
        self.map_entries(|f| f.scale(c))
    }

    pub fn scale_int(&self, c: i64) -> ChainMap {
        self.map_entries(|f| f.scale_int(c))
    }

    pub fn neg(&self) -> ChainMap {
        self.scale_int(-1)
    }

    /// `[∂, h] = ∂∘h - (-1)^{|h|} h∘∂`, a map of degree `|h| + 1`.
    pub fn hom_bracket(&self) -> ChainMap {
        let (n, k, r) = (self.nvars(), self.form_degree, self.degree);
        let sign = sign_pow(r as i64);
        let mut out = ChainMap::zero(self.source.clone(), self.target.clone(), r + 1, k);
        for i in self.source.degrees() {
            let (rows, cols) = (self.target.rank(i + r + 1), self.source.rank(i));
            if rows * cols == 0 {
                continue;
            }
            let left = poly_form_mul(&self.target.d(i + r), &self.block(i), n, k);
            let right = form_poly_mul(&self.block(i + 1), &self.source.d(i), n, k);
            let b = Matrix::from_fn(rows, cols, |a, c| {
                if sign > 0 {
                    left.get(a, c) - right.get(a, c)
                } else {
                    left.get(a, c) + right.get(a, c)
                }
            });
            out.blocks.insert(i, b);
        }
        out
    }

    pub fn is_cocycle(&self) -> bool {
        self.hom_bracket().is_zero()
    }

    /// `self ∘ inner`: degrees add, entries multiply as `self_ij ∧ inner_jl`.
    pub fn compose(&self, inner: &ChainMap) -> Result<ChainMap> {
        if *inner.target != *self.source {
            return Err(Error::Shape("target of the inner map is not the source of the outer map".into()));
        }
        let n = self.nvars();
        let k = self.form_degree + inner.form_degree;
        let r = self.degree + inner.degree;
        let mut out = ChainMap::zero(inner.source.clone(), self.target.clone(), r, k);
        for i in inner.source.degrees() {
            let (rows, cols) = (self.target.rank(i + r), inner.source.rank(i));
            if rows * cols == 0 {
                continue;
            }
            let b = form_form_mul(&self.block(i + inner.degree), &inner.block(i), n, k);
            out.blocks.insert(i, b);
        }
        Ok(out)
    }

    /// The same matrices viewed as a map `source[i] → target[i]`.
    pub fn shift(&self, i: i32) -> ChainMap {
        ChainMap {
            source: Arc::new(self.source.shift(i)),
            target: Arc::new(self.target.shift(i)),
            degree: self.degree,
            form_degree: self.form_degree,
            blocks: self.blocks.iter().map(|(d, b)| (d - i, b.clone())).collect(),
        }
    }

    /// Interior product of every entry with the vector field `values`.
    pub fn contract(&self, values: &[Poly]) -> Result<ChainMap> {
        if self.form_degree == 0 {
            return Err(Error::ZeroFormDegree);
        }
        let mut out = ChainMap::zero(
            self.source.clone(),
            self.target.clone(),
            self.degree,
            self.form_degree - 1,
        );
        for (i, b) in &self.blocks {
            let mut nb = form_zero(self.nvars(), self.form_degree - 1, b.rows(), b.cols());
            for (t, s, f) in b.entries() {
                if !f.is_zero() {
                    nb.set(t, s, f.contract(values)?.with_degree_if_zero(self.form_degree - 1));
                }
            }
            out.blocks.insert(*i, nb);
        }
        Ok(out)
    }

    /// Entrywise exterior derivative of a form-degree-0 map.
    pub fn exterior_derivative(&self) -> ChainMap {
        let mut out = ChainMap::zero(
            self.source.clone(),
            self.target.clone(),
            self.degree,
            self.form_degree + 1,
        );
        for (i, b) in &self.blocks {
            out.blocks.insert(
                *i,
                b.map(|f| f.exterior_derivative().with_degree_if_zero(self.form_degree + 1)),
            );
        }
        out
    }

    /// The internal degrees `e` for which the map has a nonzero homogeneous
    /// component. An entry in row `t`, column `s` of internal degree `e`
    /// has weight `w(s) - w(t) + e`.
    pub fn internal_degrees(&self) -> Vec<i64> {
        let mut out = std::collections::BTreeSet::new();
        let w = self.source.var_weights();
        for (i, b) in &self.blocks {
            for (t, s, f) in b.entries() {
                let base = self.source.generators(*i)[s].weight
                    - self.target.generators(i + self.degree)[t].weight;
                for (idx, p) in f.terms() {
                    let dw: i64 = idx.iter().map(|v| i64::from(w[v])).sum();
                    for (m, _) in p.terms() {
                        out.insert(m.weighted_degree(w) as i64 + dw - base);
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// The homogeneous component of internal degree `e`.
    pub fn component(&self, e: i64) -> ChainMap {
        let w = self.source.var_weights().to_vec();
        let mut out = self.clone();
        for (i, b) in out.blocks.iter_mut() {
            let mut nb = b.clone();
            for (t, s, f) in b.entries() {
                let base = self.source.generators(*i)[s].weight
                    - self.target.generators(i + self.degree)[t].weight;
                let mut keep = Form::zero(self.nvars(), self.form_degree);
                for (idx, p) in f.terms() {
                    let dw: i64 = idx.iter().map(|v| i64::from(w[v])).sum();
                    let q = Poly::from_terms(
                        self.nvars(),
                        p.terms()
                            .filter(|(m, _)| m.weighted_degree(&w) as i64 + dw - base == e)
                            .map(|(m, c)| (m.clone(), c.clone())),
                    );
                    keep = &keep + &Form::basis(self.nvars(), *idx, q);
                }
                nb.set(t, s, keep.with_degree_if_zero(self.form_degree));
            }
            *b = nb;
        }
        out
    }
}

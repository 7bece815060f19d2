use std::ops::RangeInclusive;

use super::matrix::{poly_mul, poly_zero, Matrix};
use crate::error::{Error, Result};
use crate::polyforms::Poly;

/// Upper limit on the total number of basis elements of a complex.
pub const MAX_BASIS: usize = 64;

/// A labelled basis element with its internal weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub label: String,
    pub weight: i64,
}

impl Generator {
    pub fn new(label: impl Into<String>, weight: i64) -> Self {
        Generator {
            label: label.into(),
            weight,
        }
    }
}

/// A bounded cochain complex of finite free modules over `ℚ[x_1..x_n]`.
///
/// The module in degree `i` has basis `generators(i)`, and the differential
/// `d(i)` goes from degree `i` to degree `i + 1`. Entries of `d(i)` in row
/// `t`, column `s` are homogeneous of weight `w(s) - w(t)` when the complex
/// is graded, so a basis element of weight `w` sits in internal degree `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeComplex {
    nvars: usize,
    var_weights: Vec<u32>,
    lo: i32,
    modules: Vec<Vec<Generator>>,
    diffs: Vec<Matrix<Poly>>,
}

impl FreeComplex {
    /// Builds a complex from its modules, starting at degree `lo`, and the
    /// differentials `d(lo), d(lo+1), …`. Checks shapes and `d∘d = 0`.
    pub fn new(
        nvars: usize,
        var_weights: Vec<u32>,
        lo: i32,
        modules: Vec<Vec<Generator>>,
        diffs: Vec<Matrix<Poly>>,
    ) -> Result<Self> {
        if var_weights.len() != nvars {
            return Err(Error::Shape(format!(
                "{} variable weights for {nvars} variables",
                var_weights.len()
            )));
        }
        let total: usize = modules.iter().map(Vec::len).sum();
        if total > MAX_BASIS {
            return Err(Error::Shape(format!(
                "{total} basis elements exceed the limit of {MAX_BASIS}"
            )));
        }
        if modules.is_empty() {
            return Err(Error::Shape("a complex needs at least one degree".into()));
        }
        if diffs.len() + 1 != modules.len() {
            return Err(Error::Shape(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != modules[k + 1].len() || d.cols() != modules[k].len() {
                return Err(Error::Shape(format!(
                    "d({}) is {}x{}, expected {}x{}",
                    lo + k as i32,
                    d.rows(),
                    d.cols(),
                    modules[k + 1].len(),
                    modules[k].len()
                )));
            }
            if d.entries().any(|(_, _, p)| p.nvars() != nvars) {
                return Err(Error::Shape(format!("d({}) has entries of wrong arity", lo + k as i32)));
            }
        }
        let c = FreeComplex {
            nvars,
            var_weights,
            lo,
            modules,
            diffs,
        };
        for i in c.degrees() {
            let dd = poly_mul(&c.d(i + 1), &c.d(i), nvars);
            if dd.entries().any(|(_, _, p)| !p.is_zero()) {
                return Err(Error::Shape(format!("d({}) * d({i}) is not zero", i + 1)));
            }
        }
        Ok(c)
    }

    /// A single free module in degree 0 with zero differential.
    pub fn free_module(nvars: usize, generators: Vec<Generator>) -> Result<Self> {
        FreeComplex::new(nvars, vec![1; nvars], 0, vec![generators], vec![])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn var_weights(&self) -> &[u32] {
        &self.var_weights
    }

    /// Lowest and highest degree with a stored module.
    pub fn degrees(&self) -> RangeInclusive<i32> {
        self.lo..=self.lo + self.modules.len() as i32 - 1
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        *self.degrees().end()
    }

    fn slot(&self, i: i32) -> Option<usize> {
        if self.degrees().contains(&i) {
            Some((i - self.lo) as usize)
        } else {
            None
        }
    }

    pub fn rank(&self, i: i32) -> usize {
        self.slot(i).map_or(0, |k| self.modules[k].len())
    }

    pub fn total_rank(&self) -> usize {
        self.modules.iter().map(Vec::len).sum()
    }

    pub fn generators(&self, i: i32) -> &[Generator] {
        match self.slot(i) {
            Some(k) => &self.modules[k],
            None => &[],
        }
    }

    /// The differential from degree `i` to `i + 1`; a zero matrix of the
    /// right shape outside the stored range.
    pub fn d(&self, i: i32) -> Matrix<Poly> {
        match self.slot(i) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => poly_zero(self.nvars, self.rank(i + 1), self.rank(i)),
        }
    }

    /// Borrowed differential, `None` where it is zero by shape.
    pub fn d_ref(&self, i: i32) -> Option<&Matrix<Poly>> {
        self.slot(i).and_then(|k| self.diffs.get(k))
    }

    /// True when every differential entry is homogeneous of the weight
    /// dictated by the basis weights, and all variable weights are positive.
    pub fn is_graded(&self) -> bool {
        if self.var_weights.contains(&0) {
            return false;
        }
        for i in self.degrees() {
            let Some(d) = self.d_ref(i) else { continue };
            for (t, s, p) in d.entries() {
                if p.is_zero() {
                    continue;
                }
                let want = self.generators(i)[s].weight - self.generators(i + 1)[t].weight;
                match p.homogeneous_degree(&self.var_weights) {
                    Some(w) if w as i64 == want => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// The shifted complex `C[i]`: degree `n` of the result is degree
    /// `n + i` of `C`, and the differential is multiplied by `(-1)^i`.
    pub fn shift(&self, i: i32) -> FreeComplex {
        let odd = i.rem_euclid(2) == 1;
        FreeComplex {
            nvars: self.nvars,
            var_weights: self.var_weights.clone(),
            lo: self.lo - i,
            modules: self.modules.clone(),
            diffs: self
                .diffs
                .iter()
                .map(|d| if odd { d.map(|p| -p) } else { d.clone() })
                .collect(),
        }
    }

    /// Same complex with new variable weights.
    pub fn with_var_weights(&self, var_weights: Vec<u32>) -> Result<FreeComplex> {
        FreeComplex::new(
            self.nvars,
            var_weights,
            self.lo,
            self.modules.clone(),
            self.diffs.clone(),
        )
    }

    /// Drops zero modules at both ends; keeps at least one degree.
    pub(crate) fn trimmed(mut self) -> FreeComplex {
        while self.modules.len() > 1 && self.modules[0].is_empty() {
            self.modules.remove(0);
            self.diffs.remove(0);
            self.lo += 1;
        }
        while self.modules.len() > 1 && self.modules.last().is_some_and(Vec::is_empty) {
            self.modules.pop();
            self.diffs.pop();
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyforms::{parse_poly, Ring};

    fn kx2() -> FreeComplex {
        let r = Ring::new(["x"]).unwrap();
        let f = parse_poly(&r, "x^2").unwrap();
        FreeComplex::new(
            1,
            vec![1],
            -1,
            vec![vec![Generator::new("g1", 2)], vec![Generator::new("e", 0)]],
            vec![Matrix::from_fn(1, 1, |_, _| f.clone())],
        )
        .unwrap()
    }

    #[test]
    fn shapes_and_grading() {
        let k = kx2();
        assert_eq!(k.degrees(), -1..=0);
        assert_eq!(k.rank(-1), 1);
        assert_eq!(k.rank(3), 0);
        assert!(k.is_graded());
        assert_eq!(k.d(0).rows(), 0);
    }

    #[test]
    fn shift_negates_odd_differentials() {
        let k = kx2();
        let s = k.shift(1);
        assert_eq!(s.degrees(), -2..=-1);
        assert_eq!(*s.d(-2).get(0, 0), -k.d(-1).get(0, 0));
        assert_eq!(s.shift(-1), k);
        assert_eq!(k.shift(0), k);
    }

    #[test]
    fn rejects_bad_differentials() {
        let nz = Poly::var(2, 0);
        let d1 = Matrix::from_fn(1, 1, |_, _| nz.clone());
        let r = FreeComplex::new(
            2,
            vec![1, 1],
            0,
            vec![vec![Generator::new("a", 0)], vec![Generator::new("b", 0)], vec![Generator::new("c", 0)]],
            vec![d1.clone(), d1],
        );
        assert!(matches!(r, Err(Error::Shape(_))));
    }
}

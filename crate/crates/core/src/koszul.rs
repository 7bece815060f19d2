//! Koszul complexes of regular sequences.
//!
//! For `f_1, …, f_q` the complex has basis `γ_S` in degree `-|S|`, for
//! subsets `S ⊆ {1..q}` in lexicographic order, and differential
//! `∂(γ_S) = Σ_t (-1)^{t-1} f_{s_t} γ_{S∖s_t}` where `s_1 < s_2 < …`. This is
//! the graded derivation extending `∂(γ_j) = f_j`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::chaincore::{graded_rank, ChainMap, FreeComplex, Generator, Matrix};
use crate::error::{Error, Result};
use crate::polyforms::{Form, Poly};
use crate::subset::{binomial, sign_pow, Subset};
use num_traits::Zero;

/// Environment variable overriding the default internal-degree bound.
pub const DEGREE_BOUND_ENV: &str = "ATK_DEGREE_BOUND";

/// A sequence `f_1, …, f_q` in `ℚ[x_1..x_n]`, assumed regular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularSequenceIdeal {
    nvars: usize,
    seq: Vec<Poly>,
    weights: Vec<u32>,
}

impl RegularSequenceIdeal {
    /// Sequence with standard variable weights.
    pub fn new(seq: Vec<Poly>) -> Result<Self> {
        let n = seq.first().map(Poly::nvars).ok_or_else(|| {
            Error::InvalidSequence("a sequence needs at least one element".into())
        })?;
        Self::with_weights(seq, vec![1; n])
    }

    pub fn with_weights(seq: Vec<Poly>, weights: Vec<u32>) -> Result<Self> {
        let n = weights.len();
        if seq.is_empty() {
            return Err(Error::InvalidSequence("a sequence needs at least one element".into()));
        }
        if seq.len() > n {
            return Err(Error::InvalidSequence(format!(
                "{} elements in {n} variables cannot be regular",
                seq.len()
            )));
        }
        for (i, f) in seq.iter().enumerate() {
            if f.nvars() != n {
                return Err(Error::ArityMismatch {
                    left: n,
                    right: f.nvars(),
                });
            }
            if f.is_zero() {
                return Err(Error::InvalidSequence(format!("f{} is zero", i + 1)));
            }
            if !f.constant_term().is_zero() {
                return Err(Error::InvalidSequence(format!(
                    "f{} has a nonzero constant term",
                    i + 1
                )));
            }
        }
        Ok(RegularSequenceIdeal {
            nvars: n,
            seq,
            weights,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn seq(&self) -> &[Poly] {
        &self.seq
    }

    pub fn f(&self, i: usize) -> &Poly {
        &self.seq[i]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Weighted degrees of the `f_i`, or `None` when some `f_i` is not
    /// homogeneous.
    pub fn degrees(&self) -> Option<Vec<u64>> {
        self.seq
            .iter()
            .map(|f| f.homogeneous_degree(&self.weights))
            .collect()
    }

    pub fn is_graded(&self) -> bool {
        self.degrees().is_some()
    }

    /// `f_α = Π_{i∈α} f_i`.
    pub fn product(&self, alpha: Subset) -> Poly {
        alpha
            .iter()
            .fold(Poly::one(self.nvars), |acc, i| &acc * &self.seq[i])
    }

    /// `2·max deg f_i + 4`, unless overridden by `ATK_DEGREE_BOUND`.
    pub fn default_degree_bound(&self) -> i64 {
        if let Some(b) = std::env::var(DEGREE_BOUND_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<i64>().ok())
        {
            return b;
        }
        let m = self
            .seq
            .iter()
            .filter_map(|f| f.total_degree())
            .max()
            .unwrap_or(0);
        2 * i64::from(m) + 4
    }
}

/// The Koszul complex `K•(f)` with its subset-indexed basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulComplex {
    ideal: RegularSequenceIdeal,
    complex: Arc<FreeComplex>,
}

/// Label of `γ_S`: `e` for the empty set, otherwise `g1_3` and so on.
pub fn label(s: Subset) -> String {
    if s.is_empty() {
        "e".into()
    } else {
        let parts: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
        format!("g{}", parts.join("_"))
    }
}

pub fn build_koszul(ideal: &RegularSequenceIdeal) -> Result<KoszulComplex> {
    let q = ideal.len();
    let n = ideal.nvars();
    let degs = ideal.degrees();
    let weight = |s: Subset| -> i64 {
        degs.as_ref()
            .map_or(0, |d| s.iter().map(|i| d[i] as i64).sum())
    };
    let mut modules = Vec::new();
    for p in (0..=q).rev() {
        modules.push(
            Subset::of_size(q, p)
                .into_iter()
                .map(|s| Generator::new(label(s), weight(s)))
                .collect(),
        );
    }
    let mut diffs = Vec::new();
    for p in (1..=q).rev() {
        let src = Subset::of_size(q, p);
        let tgt = Subset::of_size(q, p - 1);
        let pos: BTreeMap<Subset, usize> = tgt.iter().enumerate().map(|(k, s)| (*s, k)).collect();
        let mut m = Matrix::from_fn(tgt.len(), src.len(), |_, _| Poly::zero(n));
        for (c, s) in src.iter().enumerate() {
            for (t, i) in s.iter().enumerate() {
                let f = ideal.f(i);
                m.set(pos[&s.remove(i)], c, if t % 2 == 1 { -f } else { f.clone() });
            }
        }
        diffs.push(m);
    }
    let complex = FreeComplex::new(n, ideal.weights().to_vec(), -(q as i32), modules, diffs)?;
    Ok(KoszulComplex {
        ideal: ideal.clone(),
        complex: Arc::new(complex),
    })
}

impl KoszulComplex {
    pub fn ideal(&self) -> &RegularSequenceIdeal {
        &self.ideal
    }

    pub fn complex(&self) -> &Arc<FreeComplex> {
        &self.complex
    }

    pub fn q(&self) -> usize {
        self.ideal.len()
    }

    pub fn nvars(&self) -> usize {
        self.ideal.nvars()
    }

    /// Basis of degree `-p`, in the order of the complex.
    pub fn basis(&self, p: usize) -> Vec<Subset> {
        Subset::of_size(self.q(), p)
    }

    /// Position of `γ_S` within degree `-|S|`.
    pub fn position(&self, s: Subset) -> usize {
        self.basis(s.len())
            .iter()
            .position(|t| *t == s)
            .expect("subset of {1..q}")
    }

    fn check_subset(&self, s: Subset) -> Result<()> {
        match s.iter().find(|i| *i >= self.q()) {
            Some(i) => Err(Error::IndexOutOfRange {
                index: i + 1,
                limit: self.q(),
            }),
            None => Ok(()),
        }
    }

    /// The map `γ̂_{α_1} ∧ … ∧ γ̂_{α_p}: K^{-p} → K^0`, which sends `γ_α`
    /// to `(-1)^{p(p-1)/2}` and every other basis element to zero.
    pub fn dual_basis_map(&self, alpha: Subset) -> Result<ChainMap> {
        self.check_subset(alpha)?;
        let p = alpha.len();
        let n = self.nvars();
        let c = self.complex.clone();
        let col = self.position(alpha);
        let v = Form::from_poly(Poly::from_int(n, i64::from(sign_pow(binomial(p as u64, 2) as i64))));
        let m = Matrix::from_fn(1, c.rank(-(p as i32)), |_, s| {
            if s == col {
                v.clone()
            } else {
                Form::zero(n, 0)
            }
        });
        ChainMap::from_blocks(c.clone(), c, p as i32, 0, BTreeMap::from([(-(p as i32), m)]))
    }

    /// `γ̂_{i_1} ∧ … ∧ γ̂_{i_p}` for indices in any order; zero on repeats.
    pub fn dual_product(&self, indices: &[usize]) -> Result<ChainMap> {
        let mut sorted = Subset::EMPTY;
        let mut sign = 1;
        for &i in indices {
            if sorted.contains(i) {
                let c = self.complex.clone();
                return Ok(ChainMap::zero(c.clone(), c, indices.len() as i32, 0));
            }
            // moving γ̂_i right past the larger indices already placed
            sign *= sign_pow(sorted.iter().filter(|j| *j > i).count() as i64);
            sorted = sorted.insert(i);
        }
        let m = self.dual_basis_map(sorted)?;
        Ok(if sign < 0 { m.neg() } else { m })
    }

    /// The basis element `γ_S` as a vector in degree `-|S|`.
    pub fn basis_vector(&self, s: Subset) -> Vec<Poly> {
        let b = self.basis(s.len());
        b.iter()
            .map(|t| {
                if *t == s {
                    Poly::one(self.nvars())
                } else {
                    Poly::zero(self.nvars())
                }
            })
            .collect()
    }
}

/// Checks `H^{-1}(K•) = 0` in every internal degree up to `bound`.
///
/// A `true` answer certifies only the checked degrees.
pub fn verify_regular(ideal: &RegularSequenceIdeal, bound: i64) -> Result<bool> {
    if !ideal.is_graded() {
        return Err(Error::Ungraded("regularity check needs homogeneous elements".into()));
    }
    let k = build_koszul(ideal)?;
    let c = k.complex();
    for w in 0..=bound {
        let (dim, rank_out) = graded_rank(c, -1, w);
        let (_, rank_in) = graded_rank(c, -2, w);
        if dim - rank_out - rank_in != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The comparison map `K•(f) → K•(g)` induced by `f_i = Σ_j a_ij g_j`,
/// sending `γ^f_i` to `Σ_j a_ij γ^g_j` and extended multiplicatively.
pub fn comparison_map(from: &KoszulComplex, to: &KoszulComplex, a: &Matrix<Poly>) -> Result<ChainMap> {
    let (qf, qg, n) = (from.q(), to.q(), from.nvars());
    if a.rows() != qf || a.cols() != qg {
        return Err(Error::Shape(format!(
            "coefficient matrix must be {qf}x{qg}, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    for i in 0..qf {
        let mut s = Poly::zero(n);
        for j in 0..qg {
            s = &s + &(a.get(i, j) * to.ideal().f(j));
        }
        if s != *from.ideal().f(i) {
            return Err(Error::Precondition(format!(
                "f{} is not the stated combination of the target sequence",
                i + 1
            )));
        }
    }
    let mut blocks = BTreeMap::new();
    for p in 0..=qf.min(qg) {
        let src = from.basis(p);
        let tgt = to.basis(p);
        let mut m = Matrix::from_fn(tgt.len(), src.len(), |_, _| Poly::zero(n));
        for (c, s) in src.iter().enumerate() {
            // expand the wedge of the images of γ_{s_1}, γ_{s_2}, …
            let mut acc: BTreeMap<Subset, Poly> = BTreeMap::from([(Subset::EMPTY, Poly::one(n))]);
            for i in s.iter() {
                let mut next: BTreeMap<Subset, Poly> = BTreeMap::new();
                for (t, coef) in &acc {
                    for j in 0..qg {
                        let aij = a.get(i, j);
                        if aij.is_zero() || t.contains(j) {
                            continue;
                        }
                        let sign = t.wedge_sign(Subset::singleton(j)).expect("disjoint");
                        let term = coef * aij;
                        let e = next.entry(t.insert(j)).or_insert_with(|| Poly::zero(n));
                        *e = if sign < 0 { &*e - &term } else { &*e + &term };
                    }
                }
                acc = next;
            }
            for (t, coef) in acc {
                if let Some(r) = tgt.iter().position(|x| *x == t) {
                    m.set(r, c, coef);
                }
            }
        }
        blocks.insert(-(p as i32), m);
    }
    ChainMap::from_poly_blocks(from.complex().clone(), to.complex().clone(), 0, blocks)
}

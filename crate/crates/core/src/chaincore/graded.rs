//! Graded linear algebra on Hom complexes.
//!
//! When both complexes are graded with positive variable weights, the maps
//! of a fixed degree, form degree and internal degree form a finite
//! dimensional ℚ-vector space. Coboundary questions and cocycle bases then
//! reduce to exact linear systems.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use super::{ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::linalg::LinearSystem;
use crate::polyforms::{Form, Monomial, Poly, Rational};
use crate::subset::{sign_pow, Subset};

/// Coordinate of a map: source degree, row, column, form index, monomial.
pub type Coord = (i32, usize, usize, Subset, Monomial);

/// One basis vector of a [`MapSpace`]: `m · dx_I` in a single matrix slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub degree: i32,
    pub row: usize,
    pub col: usize,
    pub index: Subset,
    pub monomial: Monomial,
}

/// The ℚ-basis of homogeneous maps `source → target ⊗ Ω^k` of map degree
/// `r` and internal degree `e`.
#[derive(Clone, Debug)]
pub struct MapSpace {
    source: Arc<FreeComplex>,
    target: Arc<FreeComplex>,
    degree: i32,
    form_degree: usize,
    internal: i64,
    slots: Vec<Slot>,
}

fn check_graded(source: &FreeComplex, target: &FreeComplex) -> Result<()> {
    if !source.is_graded() || !target.is_graded() {
        return Err(Error::Ungraded("complexes must be graded with positive weights".into()));
    }
    if source.var_weights() != target.var_weights() {
        return Err(Error::Ungraded("source and target use different variable weights".into()));
    }
    Ok(())
}

impl MapSpace {
    pub fn new(
        source: Arc<FreeComplex>,
        target: Arc<FreeComplex>,
        degree: i32,
        form_degree: usize,
        internal: i64,
    ) -> Result<Self> {
        check_graded(&source, &target)?;
        let n = source.nvars();
        let w = source.var_weights().to_vec();
        let mut slots = Vec::new();
        let forms = Subset::of_size(n, form_degree);
        for i in source.degrees() {
            let tg = target.generators(i + degree);
            for (s, gs) in source.generators(i).iter().enumerate() {
                for (t, gt) in tg.iter().enumerate() {
                    for &index in &forms {
                        let dw: i64 = index.iter().map(|v| i64::from(w[v])).sum();
                        let d = gs.weight - gt.weight + internal - dw;
                        if d < 0 {
                            continue;
                        }
                        for monomial in Monomial::of_weighted_degree(&w, d as u64) {
                            slots.push(Slot {
                                degree: i,
                                row: t,
                                col: s,
                                index,
                                monomial,
                            });
                        }
                    }
                }
            }
        }
        Ok(MapSpace {
            source,
            target,
            degree,
            form_degree,
            internal,
            slots,
        })
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn dim(&self) -> usize {
        self.slots.len()
    }

    pub fn internal_degree(&self) -> i64 {
        self.internal
    }

    /// The largest monomial degree used by any slot.
    pub fn degree_bound(&self) -> i64 {
        self.slots
            .iter()
            .map(|s| i64::from(s.monomial.degree()))
            .max()
            .unwrap_or(0)
    }

    /// The map `Σ coeffs[j] · slot_j`.
    pub fn to_map(&self, coeffs: &[Rational]) -> ChainMap {
        let n = self.source.nvars();
        let mut acc: BTreeMap<(i32, usize, usize), Form> = BTreeMap::new();
        for (slot, c) in self.slots.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            let f = Form::basis(n, slot.index, Poly::term(c.clone(), slot.monomial.clone()));
            let e = acc
                .entry((slot.degree, slot.row, slot.col))
                .or_insert_with(|| Form::zero(n, self.form_degree));
            *e = &*e + &f;
        }
        let mut m = ChainMap::zero(
            self.source.clone(),
            self.target.clone(),
            self.degree,
            self.form_degree,
        );
        for ((i, t, s), f) in acc {
            m.set_entry(i, t, s, f);
        }
        m
    }

    /// Coordinates of `[∂, slot]`, computed sparsely.
    pub fn bracket_image(&self, slot: &Slot) -> Vec<(Coord, Rational)> {
        let mut out = Vec::new();
        let r = self.degree;
        let i = slot.degree;
        // ∂_target ∘ h
        if let Some(d) = self.target.d_ref(i + r) {
            for t2 in 0..d.rows() {
                let p = d.get(t2, slot.row);
                for (m, c) in p.terms() {
                    out.push((
                        (i, t2, slot.col, slot.index, m.mul(&slot.monomial)),
                        c.clone(),
                    ));
                }
            }
        }
        // -(-1)^r h ∘ ∂_source
        let sign = -sign_pow(r as i64);
        if let Some(d) = self.source.d_ref(i - 1) {
            for s2 in 0..d.cols() {
                let p = d.get(slot.col, s2);
                for (m, c) in p.terms() {
                    let v = if sign < 0 { -c.clone() } else { c.clone() };
                    out.push(((i - 1, slot.row, s2, slot.index, m.mul(&slot.monomial)), v));
                }
            }
        }
        out
    }

    fn bracket_system(&self) -> LinearSystem<Coord> {
        let mut sys = LinearSystem::new();
        for slot in &self.slots {
            sys.add_unknown(self.bracket_image(slot));
        }
        sys
    }

    /// A ℚ-basis of the cocycles in this space.
    pub fn cocycle_basis(&self) -> Vec<ChainMap> {
        self.bracket_system()
            .kernel()
            .iter()
            .map(|v| self.to_map(v))
            .collect()
    }
}

/// Sparse coordinates of a map.
pub fn coordinates(m: &ChainMap) -> Vec<(Coord, Rational)> {
    let mut out = Vec::new();
    for (i, b) in m.blocks() {
        for (t, s, f) in b.entries() {
            for (idx, p) in f.terms() {
                for (mono, c) in p.terms() {
                    out.push(((i, t, s, *idx, mono.clone()), c.clone()));
                }
            }
        }
    }
    out
}

/// Outcome of a coboundary query.
#[derive(Clone, Debug)]
pub struct GradedSolveReport {
    pub solvable: bool,
    /// A map `h` with `[∂, h]` equal to the query, when one exists.
    pub witness: Option<ChainMap>,
    /// Largest monomial degree among the unknowns.
    pub degree_bound: i64,
    /// Internal degrees that were solved.
    pub internal_degrees: Vec<i64>,
}

/// Decides whether the cocycle `c` is a coboundary `[∂, h]`.
///
/// The query is split into homogeneous components, and each is solved in
/// the finite space of maps of the same internal degree.
pub fn solve_coboundary(c: &ChainMap) -> Result<GradedSolveReport> {
    check_graded(c.source(), c.target())?;
    if !c.is_cocycle() {
        return Err(Error::NotCocycle);
    }
    let degrees = c.internal_degrees();
    let mut witness = ChainMap::zero(
        c.source().clone(),
        c.target().clone(),
        c.degree() - 1,
        c.form_degree(),
    );
    let mut bound = 0;
    for &e in &degrees {
        let space = MapSpace::new(
            c.source().clone(),
            c.target().clone(),
            c.degree() - 1,
            c.form_degree(),
            e,
        )?;
        bound = bound.max(space.degree_bound());
        let sys = space.bracket_system();
        match sys.solve(coordinates(&c.component(e))) {
            Some(x) => witness = witness.checked_add(&space.to_map(&x))?,
            None => {
                return Ok(GradedSolveReport {
                    solvable: false,
                    witness: None,
                    degree_bound: bound,
                    internal_degrees: degrees,
                })
            }
        }
    }
    debug_assert_eq!(witness.hom_bracket(), *c);
    Ok(GradedSolveReport {
        solvable: true,
        witness: Some(witness),
        degree_bound: bound,
        internal_degrees: degrees,
    })
}

/// Dimension over ℚ of `H^i(C)` in internal degree `w`.
pub fn homology_dim(c: &FreeComplex, i: i32, w: i64) -> Result<usize> {
    if !c.is_graded() {
        return Err(Error::Ungraded("homology needs a graded complex".into()));
    }
    let (dim, rank_out) = graded_rank(c, i, w);
    let (_, rank_in) = graded_rank(c, i - 1, w);
    Ok(dim - rank_out - rank_in)
}

/// `(dim C^i_w, rank of d(i) on C^i_w)`.
pub(crate) fn graded_rank(c: &FreeComplex, i: i32, w: i64) -> (usize, usize) {
    let weights = c.var_weights().to_vec();
    let d = c.d(i);
    let mut sys: LinearSystem<(usize, Monomial)> = LinearSystem::new();
    for (s, g) in c.generators(i).iter().enumerate() {
        let deg = w - g.weight;
        if deg < 0 {
            continue;
        }
        for m in Monomial::of_weighted_degree(&weights, deg as u64) {
            let mut image = Vec::new();
            for t in 0..d.rows() {
                for (mm, cc) in d.get(t, s).terms() {
                    image.push(((t, mm.mul(&m)), cc.clone()));
                }
            }
            sys.add_unknown(image);
        }
    }
    (sys.num_unknowns(), sys.rank())
}

/// A random homogeneous map with small integer coefficients; each slot is
/// used with probability `density`.
pub fn random_graded_map<R: Rng + ?Sized>(
    space: &MapSpace,
    density: f64,
    rng: &mut R,
) -> ChainMap {
    let coeffs: Vec<Rational> = space
        .slots()
        .iter()
        .map(|_| {
            if rng.gen_bool(density) {
                Rational::from_integer(rng.gen_range(-3i64..=3).into())
            } else {
                Rational::zero()
            }
        })
        .collect();
    space.to_map(&coeffs)
}

/// A random ℚ-combination of the given maps with small integer
/// coefficients.
pub fn random_combination<R: Rng + ?Sized>(basis: &[ChainMap], rng: &mut R) -> Option<ChainMap> {
    let mut it = basis.iter();
    let first = it.next()?;
    let mut acc = first.scale_int(rng.gen_range(-3i64..=3));
    for b in it {
        acc = acc.checked_add(&b.scale_int(rng.gen_range(-3i64..=3))).expect("parallel maps");
    }
    Some(acc)
}

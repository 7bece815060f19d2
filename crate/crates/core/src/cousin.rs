//! The Cousin complex of a regular sequence and the local trace.
//!
//! An element of Cousin degree `p` is a sum of terms
//! `a_α / f_α^m · δf_α` over subsets `|α| = p`, with `a_α` a form. The
//! differential is `∂(δf_α) = -Σ_i δf_i ∧ δf_α`. In top degree `q` the
//! cohomology is the local cohomology `H^q_Z`, and `ω = δf_1∧…∧δf_q/(f_1⋯f_q)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::chaincore::ChainMap;
use crate::error::{Error, Result};
use crate::koszul::{KoszulComplex, RegularSequenceIdeal};
use crate::linalg::LinearSystem;
use crate::polyforms::{Form, Monomial, Poly, Rational, Ring};
use crate::subset::{binomial, sign_pow, Subset};

/// Default largest denominator exponent tried by the coboundary search.
pub const DEFAULT_EXPONENT_BOUND: u32 = 4;

/// `num / f_α^m`, the coefficient of `δf_α` in a Cousin element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedForm {
    pub alpha: Subset,
    pub num: Form,
    pub m: u32,
}

/// An element of the Cousin complex in a single degree.
#[derive(Clone, PartialEq, Eq)]
pub struct CousinElement {
    seq: Arc<Vec<Poly>>,
    nvars: usize,
    degree: i32,
    form_degree: usize,
    terms: BTreeMap<Subset, (Form, u32)>,
}

fn product(seq: &[Poly], nvars: usize, alpha: Subset) -> Poly {
    alpha
        .iter()
        .fold(Poly::one(nvars), |acc, i| &acc * &seq[i])
}

fn divide_form(num: &Form, d: &Poly) -> Option<Form> {
    let mut out = Form::zero(num.nvars(), num.degree());
    for (idx, p) in num.terms() {
        out = &out + &Form::basis(num.nvars(), *idx, p.div_exact(d)?);
    }
    Some(out)
}

impl CousinElement {
    pub fn zero(seq: Arc<Vec<Poly>>, nvars: usize, degree: i32, form_degree: usize) -> Self {
        CousinElement {
            seq,
            nvars,
            degree,
            form_degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn for_ideal(ideal: &RegularSequenceIdeal, degree: i32, form_degree: usize) -> Self {
        CousinElement::zero(Arc::new(ideal.seq().to_vec()), ideal.nvars(), degree, form_degree)
    }

    pub fn seq(&self) -> &Arc<Vec<Poly>> {
        &self.seq
    }

    pub fn q(&self) -> usize {
        self.seq.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn form_degree(&self) -> usize {
        self.form_degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical form, by increasing `α`.
    pub fn terms(&self) -> impl Iterator<Item = LocalizedForm> + '_ {
        self.terms.iter().map(|(a, (num, m))| LocalizedForm {
            alpha: *a,
            num: num.clone(),
            m: *m,
        })
    }

    pub fn term(&self, alpha: Subset) -> Option<(&Form, u32)> {
        self.terms.get(&alpha).map(|(f, m)| (f, *m))
    }

    /// `f_α`.
    pub fn f_alpha(&self, alpha: Subset) -> Poly {
        product(&self.seq, self.nvars, alpha)
    }

    fn canonical(&self, alpha: Subset, mut num: Form, mut m: u32) -> Option<(Form, u32)> {
        if num.is_zero() {
            return None;
        }
        if m > 0 {
            let f = self.f_alpha(alpha);
            while m > 0 {
                match divide_form(&num, &f) {
                    Some(n) => {
                        num = n;
                        m -= 1;
                    }
                    None => break,
                }
            }
        }
        Some((num.with_degree_if_zero(self.form_degree), m))
    }

    /// Adds `num / f_α^m · δf_α`.
    pub fn add_term(&mut self, alpha: Subset, num: Form, m: u32) -> Result<()> {
        if alpha.len() as i32 != self.degree {
            return Err(Error::Shape(format!(
                "index set of size {} in Cousin degree {}",
                alpha.len(),
                self.degree
            )));
        }
        if alpha.iter().any(|i| i >= self.q()) {
            return Err(Error::IndexOutOfRange {
                index: alpha.iter().max().unwrap_or(0) + 1,
                limit: self.q(),
            });
        }
        if num.is_zero() {
            return Ok(());
        }
        if num.degree() != self.form_degree || num.nvars() != self.nvars {
            return Err(Error::Shape("numerator of the wrong form degree or arity".into()));
        }
        let (sum, top) = match self.terms.remove(&alpha) {
            None => (num, m),
            Some((old, m0)) => {
                let top = m.max(m0);
                let f = self.f_alpha(alpha);
                let a = old.mul_poly(&f.pow(top - m0));
                let b = num.mul_poly(&f.pow(top - m));
                (&a + &b, top)
            }
        };
        if let Some(t) = self.canonical(alpha, sum, top) {
            self.terms.insert(alpha, t);
        }
        Ok(())
    }

    fn check_compatible(&self, other: &CousinElement) -> Result<()> {
        if self.seq != other.seq || self.degree != other.degree || self.nvars != other.nvars {
            return Err(Error::Shape("Cousin elements of different complexes or degrees".into()));
        }
        if self.form_degree != other.form_degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Shape("Cousin elements of different form degrees".into()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &CousinElement) -> Result<CousinElement> {
        self.check_compatible(other)?;
        let mut out = if self.is_zero() {
            CousinElement {
                form_degree: other.form_degree,
                ..self.clone()
            }
        } else {
            self.clone()
        };
        for (a, (num, m)) in &other.terms {
            out.add_term(*a, num.clone(), *m)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &CousinElement) -> Result<CousinElement> {
        self.checked_add(&other.scale(&Rational::from_integer((-1).into())))
    }

    pub fn scale(&self, c: &Rational) -> CousinElement {
        let mut out = CousinElement {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        if c.is_zero() {
            return out;
        }
        for (a, (num, m)) in &self.terms {
            out.terms.insert(*a, (num.scale(c), *m));
        }
        out
    }

    /// Wedges every numerator with `w` on the right.
    pub fn wedge_form(&self, w: &Form) -> Result<CousinElement> {
        let mut out = CousinElement {
            terms: BTreeMap::new(),
            form_degree: self.form_degree + w.degree(),
            ..self.clone()
        };
        for (a, (num, m)) in &self.terms {
            out.add_term(*a, num.wedge(w)?.with_degree_if_zero(out.form_degree), *m)?;
        }
        Ok(out)
    }

    /// Interior product of every numerator with a vector field.
    pub fn contract(&self, values: &[Poly]) -> Result<CousinElement> {
        if self.form_degree == 0 {
            return Err(Error::ZeroFormDegree);
        }
        let mut out = CousinElement {
            terms: BTreeMap::new(),
            form_degree: self.form_degree - 1,
            ..self.clone()
        };
        for (a, (num, m)) in &self.terms {
            out.add_term(*a, num.contract(values)?, *m)?;
        }
        Ok(out)
    }

    /// Internal weights of the homogeneous components; `δf` has weight 0.
    fn weight_split(&self, weights: &[u32], degs: &[u64]) -> BTreeMap<i64, CousinElement> {
        let mut out: BTreeMap<i64, CousinElement> = BTreeMap::new();
        for (a, (num, m)) in &self.terms {
            let shift = i64::from(*m) * a.iter().map(|i| degs[i] as i64).sum::<i64>();
            for (idx, p) in num.terms() {
                let dw: i64 = idx.iter().map(|v| i64::from(weights[v])).sum();
                for (mono, c) in p.terms() {
                    let w = mono.weighted_degree(weights) as i64 + dw - shift;
                    let e = out.entry(w).or_insert_with(|| CousinElement {
                        terms: BTreeMap::new(),
                        ..self.clone()
                    });
                    let piece = Form::basis(self.nvars, *idx, Poly::term(c.clone(), mono.clone()));
                    e.add_term(*a, piece, *m).expect("same shape");
                }
            }
        }
        out
    }

    pub fn display<'a>(&'a self, ring: &'a Ring) -> CousinDisplay<'a> {
        CousinDisplay { el: self, ring }
    }
}

impl fmt::Debug for CousinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = Ring::default_names(self.nvars);
        write!(f, "{}", self.display(&ring))
    }
}

pub struct CousinDisplay<'a> {
    el: &'a CousinElement,
    ring: &'a Ring,
}

fn alpha_names(a: Subset, sep: &str) -> String {
    a.iter()
        .map(|i| format!("f{}", i + 1))
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for CousinDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.el.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, (num, m)) in &self.el.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", num.display(self.ring))?;
            if *m > 0 {
                write!(f, " / ({})^{}", alpha_names(*a, "*"), m)?;
            }
            if !a.is_empty() {
                write!(f, " * delta[{}]", alpha_names(*a, "^"))?;
            }
        }
        Ok(())
    }
}

/// The Cousin differential.
pub fn cousin_differential(c: &CousinElement) -> CousinElement {
    let q = c.q();
    let mut out = CousinElement {
        terms: BTreeMap::new(),
        degree: c.degree + 1,
        ..c.clone()
    };
    for (b, (num, m)) in &c.terms {
        for i in 0..q {
            if b.contains(i) {
                continue;
            }
            // δf_i ∧ δf_β = sign · δf_{β∪i}
            let sign = Subset::singleton(i).wedge_sign(*b).expect("disjoint");
            let fi = c.seq[i].pow(*m);
            let mut n = num.mul_poly(&fi);
            if sign > 0 {
                n = -n;
            }
            out.add_term(b.insert(i), n, *m).expect("degree p + 1");
        }
    }
    out
}

/// `ω = δf_1 ∧ … ∧ δf_q / (f_1 ⋯ f_q)`.
pub fn omega_class(ideal: &RegularSequenceIdeal) -> CousinElement {
    let q = ideal.len();
    let mut out = CousinElement::for_ideal(ideal, q as i32, 0);
    out.add_term(Subset::full(q), Form::from_poly(Poly::one(ideal.nvars())), 1)
        .expect("top degree");
    out
}

/// The signs `(-1)^{|α|(|α|-1)/2}` of `ψ(1) = Σ_α ± γ_α ⊗ δf_α/f_α`.
pub fn psi_section(q: usize) -> Vec<(Subset, i32)> {
    Subset::all(q)
        .into_iter()
        .map(|a| (a, sign_pow(binomial(a.len() as u64, 2) as i64)))
        .collect()
}

/// Sign attached to the pairing of `γ̂_S` with `γ_T ∧ γ_α`.
fn pairing_sign(t: usize, s: usize) -> i32 {
    sign_pow((t * s) as i64)
}

/// The local trace of an endomorphism `u` of `K•(f)` with values in
/// `Ω^k`, landing in Cousin degree `|u|`.
///
/// The entry of `u` from `γ_S` to `γ_T` with `T ⊆ S` contributes
/// `± u_TS / f_α · δf_α` with `α = S ∖ T`; other entries pair to zero.
pub fn local_trace(k: &KoszulComplex, u: &ChainMap) -> Result<CousinElement> {
    if **u.source() != **k.complex() || **u.target() != **k.complex() {
        return Err(Error::Precondition(
            "the local trace needs an endomorphism of the Koszul complex".into(),
        ));
    }
    let r = u.degree();
    let mut out = CousinElement::for_ideal(k.ideal(), r, u.form_degree());
    if r < 0 || r as usize > k.q() {
        return Ok(out);
    }
    let psi: BTreeMap<Subset, i32> = psi_section(k.q()).into_iter().collect();
    for p in (r as usize)..=k.q() {
        let src = k.basis(p);
        let tgt = k.basis(p - r as usize);
        for (si, s) in src.iter().enumerate() {
            for (ti, t) in tgt.iter().enumerate() {
                if !t.is_subset_of(*s) {
                    continue;
                }
                let e = u.entry(-(p as i32), ti, si);
                if e.is_zero() {
                    continue;
                }
                let alpha = s.minus(*t);
                let sign = pairing_sign(t.len(), s.len())
                    * t.wedge_sign(alpha).expect("disjoint")
                    * psi[&alpha];
                let num = if sign < 0 { -e.clone() } else { e.clone() };
                out.add_term(alpha, num, u32::from(!alpha.is_empty()))?;
            }
        }
    }
    Ok(out)
}

/// Supertrace `Σ_i (-1)^i tr(u_i)` of a degree-0 endomorphism of any
/// complex, as a Cousin element of degree 0 for the empty sequence.
pub fn supertrace(u: &ChainMap) -> Result<CousinElement> {
    if u.degree() != 0 || u.source() != u.target() {
        return Err(Error::Precondition("supertrace needs a degree-0 endomorphism".into()));
    }
    let n = u.nvars();
    let mut acc = Form::zero(n, u.form_degree());
    for (i, b) in u.blocks() {
        for j in 0..b.rows() {
            let e = b.get(j, j);
            acc = if i.rem_euclid(2) == 1 { &acc - e } else { &acc + e };
        }
    }
    let mut out = CousinElement::zero(Arc::new(vec![]), n, 0, u.form_degree());
    out.add_term(Subset::EMPTY, acc.with_degree_if_zero(u.form_degree()), 0)?;
    Ok(out)
}

/// Result of a bounded Cousin coboundary search.
#[derive(Clone, Debug)]
pub struct CousinSolveReport {
    pub solvable: bool,
    /// Some `y` with `∂y` equal to the query.
    pub witness: Option<CousinElement>,
    /// Largest denominator exponent tried.
    pub exponent_bound: u32,
}

/// Searches for `y` with `∂y = z`, using a uniform denominator exponent
/// up to `bound`. Requires a homogeneous sequence.
pub fn cousin_coboundary(z: &CousinElement, weights: &[u32], bound: u32) -> Result<CousinSolveReport> {
    let degs: Vec<u64> = z
        .seq
        .iter()
        .map(|f| f.homogeneous_degree(weights))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Ungraded("the coboundary search needs a homogeneous sequence".into()))?;
    let mut witness = CousinElement {
        terms: BTreeMap::new(),
        degree: z.degree - 1,
        ..z.clone()
    };
    if z.is_zero() {
        return Ok(CousinSolveReport {
            solvable: true,
            witness: Some(witness),
            exponent_bound: 0,
        });
    }
    if z.degree <= 0 {
        return Ok(CousinSolveReport {
            solvable: false,
            witness: None,
            exponent_bound: 0,
        });
    }
    let need = z.terms.values().map(|(_, m)| *m).max().unwrap_or(0);
    let mut used = 0;
    for (w, part) in z.weight_split(weights, &degs) {
        let mut found = None;
        for m in need.max(1)..=bound.max(need.max(1)) {
            used = used.max(m);
            if let Some(y) = solve_at_exponent(&part, weights, &degs, w, m) {
                found = Some(y);
                break;
            }
        }
        match found {
            Some(y) => witness = witness.checked_add(&y)?,
            None => {
                return Ok(CousinSolveReport {
                    solvable: false,
                    witness: None,
                    exponent_bound: used,
                })
            }
        }
    }
    debug_assert_eq!(cousin_differential(&witness), *z);
    Ok(CousinSolveReport {
        solvable: true,
        witness: Some(witness),
        exponent_bound: used,
    })
}

type CousinCoord = (Subset, Subset, Monomial);

fn solve_at_exponent(
    z: &CousinElement,
    weights: &[u32],
    degs: &[u64],
    w: i64,
    m: u32,
) -> Option<CousinElement> {
    let q = z.q();
    let n = z.nvars;
    let k = z.form_degree;
    let p = (z.degree - 1) as usize;
    let mut sys: LinearSystem<CousinCoord> = LinearSystem::new();
    let mut unknowns = Vec::new();
    for beta in Subset::of_size(q, p) {
        let target_w = w + i64::from(m) * beta.iter().map(|i| degs[i] as i64).sum::<i64>();
        for idx in Subset::of_size(n, k) {
            let dw: i64 = idx.iter().map(|v| i64::from(weights[v])).sum();
            let d = target_w - dw;
            if d < 0 {
                continue;
            }
            for mono in Monomial::of_weighted_degree(weights, d as u64) {
                // ∂(x/f_β^m δf_β) has numerator -sign · x f_i^m over f_{β∪i}^m
                let mut image = Vec::new();
                for i in 0..q {
                    if beta.contains(i) {
                        continue;
                    }
                    let sign = Subset::singleton(i).wedge_sign(beta).expect("disjoint");
                    let fi = z.seq[i].pow(m);
                    for (fm, c) in fi.terms() {
                        let v = if sign > 0 { -c.clone() } else { c.clone() };
                        image.push(((beta.insert(i), idx, fm.mul(&mono)), v));
                    }
                }
                sys.add_unknown(image);
                unknowns.push((beta, idx, mono));
            }
        }
    }
    let mut target = Vec::new();
    for (a, (num, ma)) in &z.terms {
        let lift = num.mul_poly(&z.f_alpha(*a).pow(m - ma));
        for (idx, poly) in lift.terms() {
            for (mono, c) in poly.terms() {
                target.push(((*a, *idx, mono.clone()), c.clone()));
            }
        }
    }
    let x = sys.solve(target)?;
    let mut y = CousinElement {
        terms: BTreeMap::new(),
        degree: z.degree - 1,
        ..z.clone()
    };
    for ((beta, idx, mono), c) in unknowns.into_iter().zip(x) {
        if !c.is_zero() {
            y.add_term(beta, Form::basis(n, idx, Poly::term(c, mono)), m)
                .expect("shape");
        }
    }
    Some(y)
}

/// How two Cousin representatives compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Equal as canonical representatives.
    Exact,
    /// Differ by a certified Cousin coboundary.
    Coboundary,
    /// No coboundary found within the bound.
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Exact => "exact",
            Verdict::Coboundary => "coboundary",
            Verdict::Fail => "FAIL",
        })
    }
}

/// Compares two representatives: literally first, then up to a bounded
/// coboundary.
pub fn compare_classes(a: &CousinElement, b: &CousinElement, weights: &[u32], bound: u32) -> Result<Verdict> {
    let diff = a.checked_sub(b)?;
    if diff.is_zero() {
        return Ok(Verdict::Exact);
    }
    if cousin_differential(&diff).is_zero() && cousin_coboundary(&diff, weights, bound)?.solvable {
        return Ok(Verdict::Coboundary);
    }
    Ok(Verdict::Fail)
}

/// True when `z` is zero as a class: zero, or a certified coboundary.
pub fn is_zero_class(z: &CousinElement, weights: &[u32], bound: u32) -> Result<Verdict> {
    let zero = CousinElement {
        terms: BTreeMap::new(),
        ..z.clone()
    };
    compare_classes(z, &zero, weights, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaincore::{random_graded_map, MapSpace};
    use crate::koszul::build_koszul;
    use crate::polyforms::{frac, parse_form, parse_poly};
    use rand::SeedableRng;

    fn ring() -> Ring {
        Ring::new(["x", "y", "z"]).unwrap()
    }

    fn ideal(gens: &[&str]) -> RegularSequenceIdeal {
        let r = ring();
        RegularSequenceIdeal::new(gens.iter().map(|g| parse_poly(&r, g).unwrap()).collect()).unwrap()
    }

    const CORPUS: [&[&str]; 6] = [
        &["x^2"],
        &["x", "y"],
        &["x^2", "y^3"],
        &["x^2 - y*z", "y^2 - x*z"],
        &["x", "y", "z"],
        &["x*y", "z^2"],
    ];

    #[test]
    fn differential_examples() {
        let r = ring();
        let id = ideal(&["x", "y"]);
        let mut c = CousinElement::for_ideal(&id, 1, 0);
        c.add_term(Subset::singleton(0), parse_form(&r, "z").unwrap(), 0).unwrap();
        let d = cousin_differential(&c);
        assert_eq!(d.display(&r).to_string(), "(z) * delta[f1^f2]");
        let mut c0 = CousinElement::for_ideal(&id, 0, 0);
        c0.add_term(Subset::EMPTY, parse_form(&r, "3").unwrap(), 0).unwrap();
        assert_eq!(
            cousin_differential(&c0).display(&r).to_string(),
            "(-3) * delta[f1] + (-3) * delta[f2]"
        );
        assert!(cousin_differential(&cousin_differential(&c0)).is_zero());
    }

    #[test]
    fn omega_and_canonical_form() {
        let r = ring();
        let w = omega_class(&ideal(&["x", "y"]));
        assert_eq!(w.display(&r).to_string(), "(1) / (f1*f2)^1 * delta[f1^f2]");
        let w2 = omega_class(&ideal(&["2*x"]));
        let doubled = w2.scale(&frac(2, 1));
        let mut direct = CousinElement::for_ideal(&ideal(&["2*x"]), 1, 0);
        direct
            .add_term(Subset::singleton(0), parse_form(&r, "2").unwrap(), 1)
            .unwrap();
        assert_eq!(doubled, direct);
        // (x*y) / (x*y)^1 reduces to exponent 0
        let mut c = CousinElement::for_ideal(&ideal(&["x", "y"]), 2, 0);
        c.add_term(Subset::full(2), parse_form(&r, "x^2*y").unwrap(), 1).unwrap();
        assert_eq!(c.term(Subset::full(2)).unwrap().1, 0);
    }

    #[test]
    fn psi_signs() {
        let psi: BTreeMap<Subset, i32> = psi_section(3).into_iter().collect();
        assert_eq!(psi[&Subset::EMPTY], 1);
        assert_eq!(psi[&Subset::from_indices([0, 1])], -1);
        assert_eq!(psi[&Subset::full(3)], -1);
    }

    #[test]
    fn trace_of_top_dual_map_is_omega() {
        for gens in [&["x^2"][..], &["x", "y"], &["x", "y", "z"], &["x^2 - y*z", "y^2 - x*z"]] {
            let id = ideal(gens);
            let k = build_koszul(&id).unwrap();
            let u = k.dual_basis_map(Subset::full(k.q())).unwrap();
            assert_eq!(local_trace(&k, &u).unwrap(), omega_class(&id));
        }
    }

    #[test]
    fn trace_of_identity_vanishes() {
        for gens in CORPUS {
            let k = build_koszul(&ideal(gens)).unwrap();
            let id = ChainMap::identity(k.complex().clone());
            assert!(local_trace(&k, &id).unwrap().is_zero());
        }
        let free = Arc::new(
            crate::chaincore::FreeComplex::free_module(
                2,
                vec![crate::chaincore::Generator::new("a", 0), crate::chaincore::Generator::new("b", 0)],
            )
            .unwrap(),
        );
        let t = supertrace(&ChainMap::identity(free)).unwrap();
        assert_eq!(t.term(Subset::EMPTY).unwrap().0.to_poly().unwrap(), Poly::from_int(2, 2));
    }

    #[test]
    fn trace_is_a_chain_map() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for gens in CORPUS {
            let k = build_koszul(&ideal(gens)).unwrap();
            let c = k.complex().clone();
            for r in -1..k.q() as i32 {
                for form in 0..=1 {
                    let space = MapSpace::new(c.clone(), c.clone(), r, form, 1).unwrap();
                    for _ in 0..3 {
                        let h = random_graded_map(&space, 0.6, &mut rng);
                        let lhs = local_trace(&k, &h.hom_bracket()).unwrap();
                        let rhs = cousin_differential(&local_trace(&k, &h).unwrap());
                        assert_eq!(lhs, rhs, "{gens:?} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn cousin_squares_to_zero() {
        let r = ring();
        for gens in CORPUS {
            let id = ideal(gens);
            let mut c = CousinElement::for_ideal(&id, 0, 1);
            c.add_term(Subset::EMPTY, parse_form(&r, "x*y*dz + z^2*dx").unwrap(), 0)
                .unwrap();
            let d1 = cousin_differential(&c);
            assert!(cousin_differential(&d1).is_zero());
        }
    }

    #[test]
    fn coboundary_search() {
        let r = ring();
        let id = ideal(&["x", "y"]);
        let w = vec![1, 1, 1];
        // x / (xy) δ = ∂(-(1/y) δf_2 …) is exact; ω is not.
        let mut z = CousinElement::for_ideal(&id, 2, 0);
        z.add_term(Subset::full(2), parse_form(&r, "x").unwrap(), 1).unwrap();
        let rep = cousin_coboundary(&z, &w, 4).unwrap();
        assert!(rep.solvable);
        assert_eq!(cousin_differential(&rep.witness.unwrap()), z);
        assert!(!cousin_coboundary(&omega_class(&id), &w, 4).unwrap().solvable);
        assert_eq!(is_zero_class(&omega_class(&id), &w, 4).unwrap(), Verdict::Fail);
    }
}

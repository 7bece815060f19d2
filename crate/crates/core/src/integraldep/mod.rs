//! Integral dependence for monomial ideals.
//!
//! A monomial `x^a` is integral over a monomial ideal `I` exactly when `a`
//! lies in the Newton polyhedron `conv(generators) + ℝ₊ⁿ`. Membership is
//! decided by exact linear programming and comes with a certificate.

pub mod lp;

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::polyforms::{parse_poly, Monomial, Rational, Ring};

/// A monomial ideal given by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: Vec<Vec<u32>>,
    minimal: Vec<Vec<u32>>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl MonomialIdeal {
    pub fn new(nvars: usize, generators: Vec<Vec<u32>>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != nvars) {
            return Err(Error::ArityMismatch {
                left: nvars,
                right: g.len(),
            });
        }
        let mut sorted = generators.clone();
        sorted.sort_by_key(|g| (g.iter().sum::<u32>(), g.clone()));
        sorted.dedup();
        let mut minimal: Vec<Vec<u32>> = Vec::new();
        for g in sorted {
            if !minimal.iter().any(|m| divides(m, &g)) {
                minimal.push(g);
            }
        }
        minimal.sort_by(|a, b| b.cmp(a));
        Ok(MonomialIdeal {
            nvars,
            generators,
            minimal,
        })
    }

    /// Parses a comma-separated list of monomials.
    pub fn parse(ring: &Ring, csv: &str) -> Result<Self> {
        let gens = csv
            .split(',')
            .map(|t| parse_monomial(ring, t))
            .collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(ring.len(), gens)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    /// Minimal generators, `x_1`-heavy first.
    pub fn minimal_generators(&self) -> &[Vec<u32>] {
        &self.minimal
    }

    pub fn is_zero(&self) -> bool {
        self.minimal.is_empty()
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        self.minimal.iter().any(|g| divides(g, a))
    }

    /// `𝔪 I`.
    pub fn times_maximal(&self) -> MonomialIdeal {
        let mut gens = Vec::new();
        for g in &self.minimal {
            for i in 0..self.nvars {
                let mut h = g.clone();
                h[i] += 1;
                gens.push(h);
            }
        }
        MonomialIdeal::new(self.nvars, gens).expect("same arity")
    }

    pub fn display(&self, ring: &Ring) -> String {
        let parts: Vec<String> = self.minimal.iter().map(|g| monomial_text(ring, g)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Parses a single monomial with coefficient 1.
pub fn parse_monomial(ring: &Ring, text: &str) -> Result<Vec<u32>> {
    let p = parse_poly(ring, text.trim())?;
    match p.leading_term() {
        Some((m, c)) if p.len() == 1 && c.is_one() => Ok(m.exponents().to_vec()),
        _ => Err(Error::Semantic(format!("`{}` is not a monomial", text.trim()))),
    }
}

pub fn monomial_text(ring: &Ring, a: &[u32]) -> String {
    let p = crate::polyforms::Poly::term(Rational::one(), Monomial::new(a.to_vec()));
    p.display(ring).to_string()
}

/// Outcome of a membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureVerdict {
    /// `a = Σ λ_j g_j + s` with `λ ≥ 0`, `Σ λ_j = 1`, `s ≥ 0`.
    Yes { lambda: Vec<Rational>, slack: Vec<Rational> },
    /// `c ≥ 0` and `t` with `c·g_j ≥ t` for every generator but `c·a < t`.
    No { functional: Vec<Rational>, threshold: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureCertificate {
    pub query: Vec<u32>,
    pub verdict: ClosureVerdict,
}

impl ClosureCertificate {
    pub fn is_member(&self) -> bool {
        matches!(self.verdict, ClosureVerdict::Yes { .. })
    }

    /// Re-checks the certificate against the minimal generators of `ideal`.
    pub fn verify(&self, ideal: &MonomialIdeal) -> bool {
        let gens = ideal.minimal_generators();
        let a: Vec<Rational> = self.query.iter().map(|v| Rational::from_integer((*v).into())).collect();
        match &self.verdict {
            ClosureVerdict::Yes { lambda, slack } => {
                lambda.len() == gens.len()
                    && lambda.iter().all(|l| !l.is_negative())
                    && slack.iter().all(|s| !s.is_negative())
                    && lambda.iter().fold(Rational::zero(), |x, y| x + y).is_one()
                    && (0..ideal.nvars()).all(|i| {
                        let sum = gens
                            .iter()
                            .zip(lambda)
                            .fold(Rational::zero(), |acc, (g, l)| acc + l * Rational::from_integer(g[i].into()));
                        sum + &slack[i] == a[i]
                    })
            }
            ClosureVerdict::No { functional, threshold } => {
                let dot = |v: &[Rational]| functional.iter().zip(v).fold(Rational::zero(), |x, (c, y)| x + c * y);
                functional.iter().all(|c| !c.is_negative())
                    && dot(&a) < *threshold
                    && gens.iter().all(|g| {
                        let g: Vec<Rational> = g.iter().map(|v| Rational::from_integer((*v).into())).collect();
                        dot(&g) >= *threshold
                    })
            }
        }
    }

    pub fn display(&self, ideal: &MonomialIdeal, ring: &Ring) -> String {
        let gens = ideal.minimal_generators();
        match &self.verdict {
            ClosureVerdict::Yes { lambda, slack } => {
                let parts: Vec<String> = gens
                    .iter()
                    .zip(lambda)
                    .filter(|(_, l)| !l.is_zero())
                    .map(|(g, l)| format!("{l} * {}", monomial_text(ring, g)))
                    .collect();
                let s: Vec<String> = slack.iter().map(|v| v.to_string()).collect();
                format!(
                    "YES\nwitness: {}\nslack: [{}]",
                    parts.join(" + "),
                    s.join(", ")
                )
            }
            ClosureVerdict::No { functional, threshold } => {
                let c: Vec<String> = functional.iter().map(|v| v.to_string()).collect();
                format!("NO\nseparator: c = [{}], threshold {threshold}", c.join(", "))
            }
        }
    }
}

fn to_rat(v: u32) -> Rational {
    Rational::from_integer(v.into())
}

/// Decides whether `x^a` is integral over `I`.
pub fn closure_member(ideal: &MonomialIdeal, a: &[u32]) -> Result<ClosureCertificate> {
    let n = ideal.nvars();
    if a.len() != n {
        return Err(Error::ArityMismatch { left: n, right: a.len() });
    }
    let gens = ideal.minimal_generators();
    if gens.is_empty() {
        return Ok(ClosureCertificate {
            query: a.to_vec(),
            verdict: ClosureVerdict::No {
                functional: vec![Rational::zero(); n],
                threshold: Rational::one(),
            },
        });
    }
    let m = gens.len();
    // max Σλ subject to Σ λ_j g_j ≤ a, Σ λ ≤ 1, λ ≥ 0
    let mut rows: Vec<Vec<Rational>> = (0..n).map(|i| gens.iter().map(|g| to_rat(g[i])).collect()).collect();
    rows.push(vec![Rational::one(); m]);
    let mut rhs: Vec<Rational> = a.iter().map(|v| to_rat(*v)).collect();
    rhs.push(Rational::one());
    let (value, lambda) = lp::maximize(&rows, &rhs, &vec![Rational::one(); m]).expect("bounded by Σλ ≤ 1");
    if value.is_one() {
        let slack = (0..n)
            .map(|i| {
                let s = gens.iter().zip(&lambda).fold(Rational::zero(), |acc, (g, l)| acc + l * to_rat(g[i]));
                to_rat(a[i]) - s
            })
            .collect();
        return Ok(ClosureCertificate {
            query: a.to_vec(),
            verdict: ClosureVerdict::Yes { lambda, slack },
        });
    }
    // max t - c·a subject to t - c·g_j ≤ 0, Σ c ≤ 1, c ≥ 0, t = t⁺ - t⁻
    let mut rows: Vec<Vec<Rational>> = gens
        .iter()
        .map(|g| {
            let mut r: Vec<Rational> = g.iter().map(|v| -to_rat(*v)).collect();
            r.push(Rational::one());
            r.push(-Rational::one());
            r
        })
        .collect();
    let mut sum = vec![Rational::one(); n];
    sum.extend([Rational::zero(), Rational::zero()]);
    rows.push(sum);
    let mut obj: Vec<Rational> = a.iter().map(|v| -to_rat(*v)).collect();
    obj.extend([Rational::one(), -Rational::one()]);
    let mut rhs = vec![Rational::zero(); m];
    rhs.push(Rational::one());
    let (value, x) = lp::maximize(&rows, &rhs, &obj).expect("bounded by Σc ≤ 1");
    debug_assert!(value.is_positive());
    let functional = x[..n].to_vec();
    let threshold = &x[n] - &x[n + 1];
    Ok(ClosureCertificate {
        query: a.to_vec(),
        verdict: ClosureVerdict::No { functional, threshold },
    })
}

/// Independent membership oracle: enumerates candidate vertices of
/// `{λ ≥ 0 : Σλ = 1, Σ λ_j g_j ≤ a}` as solutions of square subsystems.
pub fn closure_member_bruteforce(ideal: &MonomialIdeal, a: &[u32]) -> bool {
    let gens = ideal.minimal_generators();
    let n = ideal.nvars();
    let m = gens.len();
    if m == 0 {
        return false;
    }
    let feasible = |support: &[usize], lam: &[Rational]| {
        lam.iter().all(|l| !l.is_negative())
            && (0..n).all(|i| {
                let s = support.iter().zip(lam).fold(Rational::zero(), |acc, (j, l)| acc + l * to_rat(gens[*j][i]));
                s <= to_rat(a[i])
            })
    };
    for size in 1..=m.min(n + 1) {
        for support in subsets(m, size) {
            for tight in subsets(n, size - 1) {
                let mut rows: Vec<Vec<Rational>> = tight
                    .iter()
                    .map(|&i| support.iter().map(|&j| to_rat(gens[j][i])).collect())
                    .collect();
                rows.push(vec![Rational::one(); size]);
                let mut rhs: Vec<Rational> = tight.iter().map(|&i| to_rat(a[i])).collect();
                rhs.push(Rational::one());
                if let Some(lam) = lp::solve_square(rows, rhs) {
                    if feasible(&support, &lam) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn check_proper(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() {
        return Err(Error::Precondition("the zero ideal".into()));
    }
    if ideal.contains(&vec![0; ideal.nvars()]) {
        return Err(Error::Precondition("the unit ideal is not contained in the maximal ideal".into()));
    }
    Ok(())
}

/// Minimal generators of `I` that are not integral over `𝔪I`.
pub fn curvilinear_generators(ideal: &MonomialIdeal) -> Result<Vec<Vec<u32>>> {
    check_proper(ideal)?;
    let mi = ideal.times_maximal();
    let mut out = Vec::new();
    for g in ideal.minimal_generators() {
        if !closure_member(&mi, g)?.is_member() {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// `dim_k I / (J + 𝔪I)` with `J` the monomials of `I` integral over `𝔪I`.
pub fn curvilinear_dim(ideal: &MonomialIdeal) -> Result<usize> {
    Ok(curvilinear_generators(ideal)?.len())
}

/// `dim_k Hom(I, k)`, the number of minimal generators, for `I ⊆ 𝔪²`.
pub fn t1_dim(ideal: &MonomialIdeal) -> Result<usize> {
    check_proper(ideal)?;
    if let Some(g) = ideal.minimal_generators().iter().find(|g| g.iter().sum::<u32>() <= 1) {
        return Err(Error::Precondition(format!(
            "a generator of degree {} is not in the square of the maximal ideal",
            g.iter().sum::<u32>()
        )));
    }
    Ok(ideal.minimal_generators().len())
}

/// Krull dimension of `R/I`: `n` minus the smallest set of variables
/// meeting the support of every generator.
pub fn quotient_dim(ideal: &MonomialIdeal) -> usize {
    let n = ideal.nvars();
    let supports: Vec<u32> = ideal
        .minimal_generators()
        .iter()
        .map(|g| g.iter().enumerate().filter(|(_, e)| **e > 0).fold(0u32, |m, (i, _)| m | (1 << i)))
        .collect();
    if supports.contains(&0) {
        // unit ideal: the empty ring, reported as dimension 0
        return 0;
    }
    let best = (0u32..(1 << n))
        .filter(|c| supports.iter().all(|s| s & c != 0))
        .map(|c| c.count_ones() as usize)
        .min()
        .unwrap_or(0);
    n - best
}

/// Both sides of `dim R/I ≥ n - dim_k I/(J + 𝔪I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimBoundReport {
    pub dim_quotient: usize,
    pub curvilinear_dim: usize,
    pub bound: i64,
}

impl DimBoundReport {
    pub fn holds(&self) -> bool {
        self.bound <= self.dim_quotient as i64
    }

    pub fn is_equality(&self) -> bool {
        self.bound == self.dim_quotient as i64
    }
}

impl fmt::Display for DimBoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim A = {}", self.dim_quotient)?;
        writeln!(f, "curvilinear dim = {}", self.curvilinear_dim)?;
        writeln!(f, "bound = {}", self.bound)?;
        write!(
            f,
            "bound {}",
            if !self.holds() {
                "VIOLATED"
            } else if self.is_equality() {
                "holds with equality"
            } else {
                "holds"
            }
        )
    }
}

pub fn dim_bound_check(ideal: &MonomialIdeal) -> Result<DimBoundReport> {
    if ideal.nvars() > 10 {
        return Err(Error::Precondition("the dimension search handles at most 10 variables".into()));
    }
    let c = curvilinear_dim(ideal)?;
    Ok(DimBoundReport {
        dim_quotient: quotient_dim(ideal),
        curvilinear_dim: c,
        bound: ideal.nvars() as i64 - c as i64,
    })
}

/// A random proper monomial ideal with up to `max_gens` generators of
/// degree between 1 and `max_deg`.
pub fn random_ideal<R: Rng + ?Sized>(rng: &mut R, nvars: usize, max_gens: usize, max_deg: u32) -> MonomialIdeal {
    let k = rng.gen_range(1..=max_gens);
    let gens = (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=max_deg);
            let mut g = vec![0u32; nvars];
            for _ in 0..d {
                g[rng.gen_range(0..nvars)] += 1;
            }
            g
        })
        .collect();
    MonomialIdeal::new(nvars, gens).expect("fixed arity")
}

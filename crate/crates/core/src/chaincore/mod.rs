//! Bounded complexes of finite free modules and maps between them.
//!
//! Degrees are cohomological: `d(i)` raises the degree by one, and
//! resolutions live in nonpositive degrees. A map of degree `r` sends
//! degree `i` to degree `i + r` and has coefficients in `Ω^k`.

mod complex;
mod graded;
mod map;
mod matrix;
mod text;

pub use complex::{FreeComplex, Generator, MAX_BASIS};
pub use graded::{
    coordinates, homology_dim, random_combination, random_graded_map, solve_coboundary, Coord,
    GradedSolveReport, MapSpace, Slot,
};
pub(crate) use graded::graded_rank;
pub use map::ChainMap;
pub use matrix::Matrix;
pub use text::{parse_complex, parse_map, write_complex, write_map};
pub(crate) use text::{parse_complex_block, parse_map_block};

use crate::error::{Error, Result};
use crate::polyforms::Poly;

/// The mapping cone of a chain map `f: N' → N` of degree 0 and form
/// degree 0.
///
/// Degree `n` of the cone is `N^n ⊕ N'^{n+1}`, with differential
/// `(a, b) ↦ (∂a - f(b), -∂b)`. Basis elements of `N` come first; labels
/// from `N'` get a trailing `'` when they clash.
pub fn cone(f: &ChainMap) -> Result<FreeComplex> {
    if f.degree() != 0 || f.form_degree() != 0 {
        return Err(Error::Precondition(
            "the cone needs a map of degree 0 with polynomial entries".into(),
        ));
    }
    if !f.is_cocycle() {
        return Err(Error::NotChainMap("[∂, f] is not zero".into()));
    }
    let (np, nn) = (f.source(), f.target());
    let nv = nn.nvars();
    let lo = nn.lo().min(np.lo() - 1);
    let hi = nn.hi().max(np.hi() - 1);
    let mut modules = Vec::new();
    for n in lo..=hi {
        let mut gens = nn.generators(n).to_vec();
        for g in np.generators(n + 1) {
            let mut g = g.clone();
            while gens.iter().any(|h| h.label == g.label) {
                g.label.push('\'');
            }
            gens.push(g);
        }
        modules.push(gens);
    }
    let mut diffs = Vec::new();
    for n in lo..hi {
        let (a0, b0) = (nn.rank(n), np.rank(n + 1));
        let (a1, b1) = (nn.rank(n + 1), np.rank(n + 2));
        let dn = nn.d(n);
        let dp = np.d(n + 1);
        let fb = f.block(n + 1);
        diffs.push(Matrix::from_fn(a1 + b1, a0 + b0, |r, c| match (r < a1, c < a0) {
            (true, true) => dn.get(r, c).clone(),
            (true, false) => -fb.get(r, c - a0).to_poly().expect("form degree 0"),
            (false, true) => Poly::zero(nv),
            (false, false) => -dp.get(r - a1, c - a0),
        }));
    }
    Ok(FreeComplex::new(nv, nn.var_weights().to_vec(), lo, modules, diffs)?.trimmed())
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;
    use std::sync::Arc;

    use super::*;
    use crate::polyforms::{parse_poly, Ring};

    fn ring() -> Ring {
        Ring::new(["x", "y"]).unwrap()
    }

    fn free(w: i64) -> Arc<FreeComplex> {
        Arc::new(FreeComplex::free_module(2, vec![Generator::new("e", w)]).unwrap())
    }

    #[test]
    fn cone_of_multiplication_is_koszul_up_to_sign() {
        let f = parse_poly(&ring(), "x^2").unwrap();
        let m = ChainMap::from_poly_blocks(
            free(2),
            free(0),
            0,
            BTreeMap::from([(0, Matrix::from_fn(1, 1, |_, _| f.clone()))]),
        )
        .unwrap();
        let c = cone(&m).unwrap();
        assert_eq!(c.degrees(), -1..=0);
        assert_eq!(*c.d(-1).get(0, 0), -f);
        assert!(c.is_graded());
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let (_, k) = parse_complex(
            "complex K { deg -1: [gx@1, gy@1]; deg 0: [e@0]; d(-1) = [[x],[y]] }",
            &ring(),
        )
        .unwrap();
        let k = Arc::new(k);
        let c = cone(&ChainMap::identity(k)).unwrap();
        for i in c.degrees() {
            for w in 0..5 {
                assert_eq!(homology_dim(&c, i, w).unwrap(), 0, "H^{i} weight {w}");
            }
        }
    }

    #[test]
    fn cone_of_zero_is_block_diagonal() {
        let (_, k) = parse_complex(
            "complex K { deg -1: [g@1]; deg 0: [e@0]; d(-1) = [[x]] }",
            &ring(),
        )
        .unwrap();
        let k = Arc::new(k);
        let z = ChainMap::zero(k.clone(), k.clone(), 0, 0);
        let c = cone(&z).unwrap();
        assert_eq!(c.degrees(), -2..=0);
        assert_eq!(c.rank(-1), 2);
        let d = c.d(-1);
        assert!(d.get(0, 1).is_zero());
    }

    #[test]
    fn cone_refuses_non_chain_maps() {
        let (_, k) = parse_complex(
            "complex K { deg -1: [g@1]; deg 0: [e@0]; d(-1) = [[x]] }",
            &ring(),
        )
        .unwrap();
        let k = Arc::new(k);
        let one = Poly::one(2);
        let h = ChainMap::from_poly_blocks(
            k.clone(),
            k.clone(),
            0,
            BTreeMap::from([(0, Matrix::from_fn(1, 1, |_, _| one.clone()))]),
        )
        .unwrap();
        assert!(matches!(cone(&h), Err(Error::NotChainMap(_))));
    }

    #[test]
    fn coboundary_solver_recovers_brackets() {
        let (_, k) = parse_complex(
            "complex K { deg -1: [gx@1, gy@1]; deg 0: [e@0]; d(-1) = [[x],[y]] }",
            &ring(),
        )
        .unwrap();
        let k = Arc::new(k);
        let space = MapSpace::new(k.clone(), k.clone(), -1, 1, 1).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        use rand::SeedableRng;
        for _ in 0..5 {
            let h = random_graded_map(&space, 0.5, &mut rng);
            let c = h.hom_bracket();
            let rep = solve_coboundary(&c).unwrap();
            assert!(rep.solvable);
            assert_eq!(rep.witness.unwrap().hom_bracket(), c);
        }
    }
}

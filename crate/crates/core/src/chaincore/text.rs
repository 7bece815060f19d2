//! Text blocks for complexes and maps.
//!
//! ```text
//! complex K {
//!   deg -1: [g1@1, g2@1];
//!   deg 0: [e@0];
//!   d(-1) = [[x], [y]];
//! }
//! map A: K -> K degree 1 form 1 {
//!   at(-1) = [[-dx], [-dy]];
//! }
//! ```
//!
//! Each inner list of a matrix is one column, the image of one source basis
//! element. Weights after `@` default to 0. A non-standard grading is
//! declared as `complex K weights [1, 2] { … }`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use super::{ChainMap, FreeComplex, Generator, Matrix};
use crate::error::Result;
use crate::polyforms::{parse_form_at, parse_poly_at, Form, Poly, Ring};
use crate::scan::Scanner;

fn write_columns<T>(out: &mut String, m: &Matrix<T>, show: impl Fn(&T) -> String) {
    out.push('[');
    for c in 0..m.cols() {
        if c > 0 {
            out.push_str(", ");
        }
        out.push('[');
        for r in 0..m.rows() {
            if r > 0 {
                out.push_str(", ");
            }
            out.push_str(&show(m.get(r, c)));
        }
        out.push(']');
    }
    out.push(']');
}

/// Canonical text of a complex.
pub fn write_complex(name: &str, c: &FreeComplex, ring: &Ring) -> String {
    let mut out = format!("complex {name} ");
    if c.var_weights().iter().any(|w| *w != 1) {
        let ws: Vec<String> = c.var_weights().iter().map(u32::to_string).collect();
        let _ = write!(out, "weights [{}] ", ws.join(", "));
    }
    out.push_str("{\n");
    for i in c.degrees() {
        let gens: Vec<String> = c
            .generators(i)
            .iter()
            .map(|g| format!("{}@{}", g.label, g.weight))
            .collect();
        let _ = writeln!(out, "  deg {i}: [{}];", gens.join(", "));
    }
    for i in c.degrees() {
        if let Some(d) = c.d_ref(i) {
            let _ = write!(out, "  d({i}) = ");
            write_columns(&mut out, d, |p| p.display(ring).to_string());
            out.push_str(";\n");
        }
    }
    out.push('}');
    out
}

/// Canonical text of a map between named complexes.
pub fn write_map(name: &str, source: &str, target: &str, m: &ChainMap, ring: &Ring) -> String {
    let mut out = format!(
        "map {name}: {source} -> {target} degree {} form {} {{\n",
        m.degree(),
        m.form_degree()
    );
    for (i, b) in m.blocks() {
        if b.rows() * b.cols() == 0 || b.entries().all(|(_, _, f)| f.is_zero()) {
            continue;
        }
        let _ = write!(out, "  at({i}) = ");
        write_columns(&mut out, b, |f| f.display(ring).to_string());
        out.push_str(";\n");
    }
    out.push('}');
    out
}

fn parse_columns<T>(
    sc: &mut Scanner,
    mut entry: impl FnMut(&str, usize, usize) -> Result<T>,
) -> Result<Vec<Vec<T>>> {
    sc.expect('[')?;
    let mut cols = Vec::new();
    if sc.eat(']') {
        return Ok(cols);
    }
    loop {
        sc.expect('[')?;
        let mut col = Vec::new();
        if !sc.eat(']') {
            loop {
                sc.skip_ws();
                let (text, line, c) = sc.expr()?;
                col.push(entry(&text, line, c - 1)?);
                if sc.eat(']') {
                    break;
                }
                sc.expect(',')?;
            }
        }
        cols.push(col);
        if sc.eat(']') {
            return Ok(cols);
        }
        sc.expect(',')?;
    }
}

fn columns_to_matrix<T: Clone>(
    sc: &Scanner,
    cols: Vec<Vec<T>>,
    rows: usize,
    ncols: usize,
    what: &str,
) -> Result<Matrix<T>> {
    if cols.len() != ncols || cols.iter().any(|c| c.len() != rows) {
        return sc.err(format!(
            "{what} must have {ncols} columns of length {rows}"
        ));
    }
    Ok(Matrix::from_fn(rows, ncols, |r, c| cols[c][r].clone()))
}

pub(crate) fn parse_complex_block(sc: &mut Scanner, ring: &Ring) -> Result<(String, FreeComplex)> {
    if !sc.keyword("complex") {
        return sc.err("expected `complex`");
    }
    let name = sc.ident()?;
    let n = ring.len();
    let mut weights = vec![1u32; n];
    if sc.keyword("weights") {
        sc.expect('[')?;
        weights.clear();
        loop {
            let w = sc.int()?;
            if w <= 0 {
                return sc.err("variable weights must be positive");
            }
            weights.push(w as u32);
            if sc.eat(']') {
                break;
            }
            sc.expect(',')?;
        }
        if weights.len() != n {
            return sc.err(format!("{} weights for {n} variables", weights.len()));
        }
    }
    sc.expect('{')?;
    let mut modules: BTreeMap<i64, Vec<Generator>> = BTreeMap::new();
    let mut diffs: Vec<(i64, Vec<Vec<Poly>>, usize, usize)> = Vec::new();
    loop {
        if sc.eat('}') {
            break;
        }
        if sc.keyword("deg") {
            let (l, c) = (sc.line(), sc.col());
            let i = sc.int()?;
            sc.expect(':')?;
            sc.expect('[')?;
            let mut gens = Vec::new();
            if !sc.eat(']') {
                loop {
                    let label = sc.ident()?;
                    let weight = if sc.eat('@') { sc.int()? } else { 0 };
                    if gens.iter().any(|g: &Generator| g.label == label) {
                        return sc.err(format!("duplicate label `{label}`"));
                    }
                    gens.push(Generator::new(label, weight));
                    if sc.eat(']') {
                        break;
                    }
                    sc.expect(',')?;
                }
            }
            if modules.insert(i, gens).is_some() {
                return Err(crate::Error::parse(l, c, format!("degree {i} declared twice")));
            }
        } else if sc.keyword("d") {
            sc.expect('(')?;
            let i = sc.int()?;
            sc.expect(')')?;
            sc.expect('=')?;
            let (l, c) = (sc.line(), sc.col());
            let cols = parse_columns(sc, |t, line, col| parse_poly_at(ring, t, line, col))?;
            diffs.push((i, cols, l, c));
        } else {
            return sc.err("expected `deg`, `d(...)` or `}`");
        }
        sc.eat(';');
    }
    let (Some(&lo), Some(&hi)) = (modules.keys().next(), modules.keys().next_back()) else {
        return sc.err(format!("complex `{name}` declares no degrees"));
    };
    let mods: Vec<Vec<Generator>> = (lo..=hi).map(|i| modules.remove(&i).unwrap_or_default()).collect();
    let mut ds: Vec<Matrix<Poly>> = (lo..hi)
        .map(|i| {
            let (r, c) = (mods[(i - lo + 1) as usize].len(), mods[(i - lo) as usize].len());
            Matrix::from_fn(r, c, |_, _| Poly::zero(n))
        })
        .collect();
    for (i, cols, l, c) in diffs {
        if i < lo || i >= hi {
            return Err(crate::Error::parse(l, c, format!("d({i}) lies outside the declared degrees")));
        }
        let k = (i - lo) as usize;
        let (r, nc) = (mods[k + 1].len(), mods[k].len());
        let at = Scanner::at("", l, c);
        ds[k] = columns_to_matrix(&at, cols, r, nc, &format!("d({i})"))?;
    }
    let cx = FreeComplex::new(n, weights, lo as i32, mods, ds)
        .map_err(|e| crate::Error::parse(sc.line(), sc.col(), e.to_string()))?;
    Ok((name, cx))
}

pub(crate) fn parse_map_block(
    sc: &mut Scanner,
    ring: &Ring,
    lookup: &dyn Fn(&str) -> Option<Arc<FreeComplex>>,
) -> Result<(String, ChainMap)> {
    if !sc.keyword("map") {
        return sc.err("expected `map`");
    }
    let name = sc.ident()?;
    sc.expect(':')?;
    let get = |sc: &mut Scanner| -> Result<Arc<FreeComplex>> {
        let (l, c) = (sc.line(), sc.col());
        let cname = sc.ident()?;
        lookup(&cname).ok_or_else(|| crate::Error::parse(l, c + 1, format!("undeclared complex `{cname}`")))
    };
    let source = get(sc)?;
    sc.expect_str("->")?;
    let target = get(sc)?;
    if !sc.keyword("degree") {
        return sc.err("expected `degree`");
    }
    let degree = sc.int()? as i32;
    if !sc.keyword("form") {
        return sc.err("expected `form`");
    }
    let k = sc.int()?;
    if k < 0 || k as usize > ring.len() {
        return sc.err("form degree out of range");
    }
    let k = k as usize;
    sc.expect('{')?;
    let mut blocks = BTreeMap::new();
    loop {
        if sc.eat('}') {
            break;
        }
        if !sc.keyword("at") {
            return sc.err("expected `at(...)` or `}`");
        }
        sc.expect('(')?;
        let i = sc.int()? as i32;
        sc.expect(')')?;
        sc.expect('=')?;
        let (l, c) = (sc.line(), sc.col());
        let cols = parse_columns(sc, |t, line, col| {
            let f = parse_form_at(ring, t, line, col)?;
            if !f.is_zero() && f.degree() != k {
                return Err(crate::Error::parse(line, col + 1, format!("expected a form of degree {k}")));
            }
            Ok(f.with_degree_if_zero(k))
        })?;
        let at = Scanner::at("", l, c);
        let m: Matrix<Form> = columns_to_matrix(
            &at,
            cols,
            target.rank(i + degree),
            source.rank(i),
            &format!("at({i})"),
        )?;
        blocks.insert(i, m);
        sc.eat(';');
    }
    let m = ChainMap::from_blocks(source, target, degree, k, blocks)
        .map_err(|e| crate::Error::parse(sc.line(), sc.col(), e.to_string()))?;
    Ok((name, m))
}

/// Parses one `complex` block.
pub fn parse_complex(text: &str, ring: &Ring) -> Result<(String, FreeComplex)> {
    let mut sc = Scanner::new(text);
    let out = parse_complex_block(&mut sc, ring)?;
    sc.skip_ws();
    if !sc.at_end() {
        return sc.err("unexpected text after the block");
    }
    Ok(out)
}

/// Parses one `map` block; complexes are resolved by `lookup`.
pub fn parse_map(
    text: &str,
    ring: &Ring,
    lookup: &dyn Fn(&str) -> Option<Arc<FreeComplex>>,
) -> Result<(String, ChainMap)> {
    let mut sc = Scanner::new(text);
    let out = parse_map_block(&mut sc, ring, lookup)?;
    sc.skip_ws();
    if !sc.at_end() {
        return sc.err("unexpected text after the block");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_block_round_trips() {
        let ring = Ring::new(["x", "y"]).unwrap();
        let text = "complex K { deg -1: [gx@1, gy@1]; deg 0: [e]; d(-1) = [[x],[y]] }";
        let (name, c) = parse_complex(text, &ring).unwrap();
        assert_eq!(name, "K");
        assert_eq!(c.rank(-1), 2);
        assert_eq!(c.d(-1).get(0, 1).display(&ring).to_string(), "y");
        let canon = write_complex("K", &c, &ring);
        let (_, again) = parse_complex(&canon, &ring).unwrap();
        assert_eq!(again, c);
        assert_eq!(write_complex("K", &again, &ring), canon);
    }

    #[test]
    fn map_block_round_trips() {
        let ring = Ring::new(["x", "y"]).unwrap();
        let (_, c) = parse_complex(
            "complex K { deg -1: [gx@1, gy@1]; deg 0: [e]; d(-1) = [[x],[y]] }",
            &ring,
        )
        .unwrap();
        let c = Arc::new(c);
        let look = |s: &str| (s == "K").then(|| c.clone());
        let (_, m) = parse_map("map A: K -> K degree 1 form 1 { at(-1) = [[-dx], [-dy]] }", &ring, &look).unwrap();
        assert_eq!(m.degree(), 1);
        let canon = write_map("A", "K", "K", &m, &ring);
        let (_, again) = parse_map(&canon, &ring, &look).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn errors_are_positioned() {
        let ring = Ring::new(["x", "y"]).unwrap();
        let err = parse_complex("complex K {\n deg 0: [e];\n deg -1: [g@1];\n d(-1) = [[x + w]] }", &ring)
            .unwrap_err();
        match err {
            crate::Error::Parse { line, .. } => assert_eq!(line, 4),
            e => panic!("{e:?}"),
        }
        assert!(parse_complex("complex K { deg 0: [e]; d(0) = [[x]] }", &ring).is_err());
        assert!(parse_complex("complex K { deg -1: [g]; deg 0: [e]; d(-1) = [[x, y]] }", &ring).is_err());
    }
}

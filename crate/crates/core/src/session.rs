//! Session files: one ring and named objects over it.
//!
//! ```text
//! ring Q[x, y, z]
//! seq Z = x^2 - y*z ; y^2 - x*z
//! hom phi on Z = 1 ; 0
//! der D = x: y, z: 1
//! complex C { deg 0: [e]; }
//! map A: C -> C degree 0 form 0 { at(0) = [[x]]; }
//! ```
//!
//! Statements other than blocks end at the end of the line. The Koszul
//! complex of a sequence `Z` can be referenced in maps as `K_Z`.

use std::sync::Arc;

use crate::atiyah::DerivationSpec;
use crate::chaincore::{parse_complex_block, parse_map_block, ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::koszul::{build_koszul, RegularSequenceIdeal};
use crate::polyforms::{parse_poly_at, Poly, Ring};
use crate::scan::Scanner;
use crate::semireg::NormalHom;

/// Everything declared in one session file, in declaration order.
#[derive(Clone, Debug)]
pub struct SessionFile {
    pub ring: Ring,
    pub seqs: Vec<(String, RegularSequenceIdeal)>,
    pub homs: Vec<(String, String, NormalHom)>,
    pub ders: Vec<(String, DerivationSpec)>,
    pub complexes: Vec<(String, Arc<FreeComplex>)>,
    pub maps: Vec<(String, ChainMap)>,
}

impl SessionFile {
    pub fn new(ring: Ring) -> Self {
        SessionFile {
            ring,
            seqs: Vec::new(),
            homs: Vec::new(),
            ders: Vec::new(),
            complexes: Vec::new(),
            maps: Vec::new(),
        }
    }

    pub fn seq(&self, name: &str) -> Result<&RegularSequenceIdeal> {
        self.seqs
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
            .ok_or_else(|| Error::Undeclared(name.into()))
    }

    pub fn hom(&self, name: &str) -> Result<&NormalHom> {
        self.homs
            .iter()
            .find(|(n, _, _)| n == name)
            .map(|(_, _, h)| h)
            .ok_or_else(|| Error::Undeclared(name.into()))
    }

    pub fn der(&self, name: &str) -> Result<&DerivationSpec> {
        self.ders
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d)
            .ok_or_else(|| Error::Undeclared(name.into()))
    }

    pub fn map(&self, name: &str) -> Result<&ChainMap> {
        self.maps
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::Undeclared(name.into()))
    }

    /// A declared complex, or `K_<seq>` for the Koszul complex of a sequence.
    pub fn complex(&self, name: &str) -> Option<Arc<FreeComplex>> {
        if let Some((_, c)) = self.complexes.iter().find(|(n, _)| n == name) {
            return Some(c.clone());
        }
        let seq = name.strip_prefix("K_")?;
        let ideal = self.seq(seq).ok()?;
        build_koszul(ideal).ok().map(|k| k.complex().clone())
    }

    fn is_declared(&self, name: &str) -> bool {
        self.seqs.iter().any(|(n, _)| n == name)
            || self.homs.iter().any(|(n, _, _)| n == name)
            || self.ders.iter().any(|(n, _)| n == name)
            || self.complexes.iter().any(|(n, _)| n == name)
            || self.maps.iter().any(|(n, _)| n == name)
    }

    /// The only sequence, when exactly one is declared.
    pub fn sole_seq(&self) -> Option<&str> {
        match self.seqs.as_slice() {
            [(n, _)] => Some(n),
            _ => None,
        }
    }
}

fn end_of_statement(sc: &mut Scanner) -> Result<()> {
    sc.skip_inline_ws();
    match sc.peek() {
        None | Some('\n') | Some('#') => Ok(()),
        Some(c) => sc.err(format!("unexpected `{c}`")),
    }
}

/// `a ; b ; c` up to the end of the line.
fn poly_list(sc: &mut Scanner, ring: &Ring) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    loop {
        let (text, l, c) = sc.expr()?;
        out.push(parse_poly_at(ring, &text, l, c)?);
        sc.skip_inline_ws();
        if sc.peek() == Some(';') {
            sc.bump();
        } else {
            break;
        }
    }
    end_of_statement(sc)?;
    Ok(out)
}

fn parse_ring(sc: &mut Scanner) -> Result<Ring> {
    let (l, c) = (sc.line(), sc.col());
    sc.skip_inline_ws();
    if sc.bump() != Some('Q') {
        return Err(Error::parse(l, c + 1, "expected `Q[...]`"));
    }
    sc.expect('[')?;
    let mut names = Vec::new();
    if !sc.eat(']') {
        loop {
            names.push(sc.ident()?);
            if sc.eat(']') {
                break;
            }
            sc.expect(',')?;
        }
    }
    end_of_statement(sc)?;
    Ring::new(names).map_err(|e| Error::parse(l, c, e.to_string()))
}

fn declared_name(sc: &mut Scanner, session: &SessionFile) -> Result<String> {
    sc.skip_inline_ws();
    let (l, c) = (sc.line(), sc.col());
    let name = sc.ident()?;
    if session.is_declared(&name) {
        return Err(Error::parse(l, c, format!("`{name}` is already declared")));
    }
    Ok(name)
}

/// `x: g1, y: g2` up to the end of the line; unlisted variables map to 0.
fn derivation_values(sc: &mut Scanner, ring: &Ring) -> Result<Vec<Poly>> {
    let mut values = vec![Poly::zero(ring.len()); ring.len()];
    loop {
        sc.skip_inline_ws();
        let (l2, c2) = (sc.line(), sc.col());
        let v = sc.ident()?;
        let i = ring
            .index(&v)
            .ok_or_else(|| Error::parse(l2, c2, format!("unknown variable `{v}`")))?;
        sc.skip_inline_ws();
        if sc.bump() != Some(':') {
            return sc.err("expected `:`");
        }
        let (text, l3, c3) = sc.expr()?;
        values[i] = parse_poly_at(ring, &text, l3, c3)?;
        sc.skip_inline_ws();
        if sc.peek() == Some(',') {
            sc.bump();
        } else {
            break;
        }
    }
    end_of_statement(sc)?;
    Ok(values)
}

/// Parses an inline derivation such as `x: y, z: 1`.
pub fn parse_derivation(ring: &Ring, text: &str) -> Result<DerivationSpec> {
    let mut sc = Scanner::new(text);
    let values = derivation_values(&mut sc, ring)?;
    sc.skip_ws();
    if !sc.at_end() {
        return sc.err("unexpected text after the derivation");
    }
    DerivationSpec::new(values, 0)
}

/// Parses a session file.
pub fn parse_session(text: &str) -> Result<SessionFile> {
    let mut sc = Scanner::new(text);
    let mut session: Option<SessionFile> = None;
    loop {
        sc.skip_ws();
        if sc.at_end() {
            break;
        }
        let (l, c) = (sc.line(), sc.col());
        if sc.keyword("ring") {
            if session.is_some() {
                return Err(Error::parse(l, c, "the ring is already declared"));
            }
            session = Some(SessionFile::new(parse_ring(&mut sc)?));
            continue;
        }
        let Some(s) = session.as_mut() else {
            return Err(Error::parse(l, c, "the first statement must declare the ring"));
        };
        let ring = s.ring.clone();
        if sc.keyword("seq") {
            let name = declared_name(&mut sc, s)?;
            sc.expect('=')?;
            let (l2, c2) = (sc.line(), sc.col());
            let polys = poly_list(&mut sc, &ring)?;
            let ideal = RegularSequenceIdeal::new(polys).map_err(|e| Error::parse(l2, c2, e.to_string()))?;
            s.seqs.push((name, ideal));
        } else if sc.keyword("hom") {
            let name = declared_name(&mut sc, s)?;
            if !sc.keyword("on") {
                return sc.err("expected `on`");
            }
            sc.skip_ws();
            let (l2, c2) = (sc.line(), sc.col());
            let seq = sc.ident()?;
            let ideal = s
                .seq(&seq)
                .map_err(|_| Error::parse(l2, c2, format!("undeclared sequence `{seq}`")))?
                .clone();
            sc.expect('=')?;
            let (l3, c3) = (sc.line(), sc.col());
            let vals = poly_list(&mut sc, &ring)?;
            let h = NormalHom::new(ideal, vals).map_err(|e| Error::parse(l3, c3, e.to_string()))?;
            s.homs.push((name, seq, h));
        } else if sc.keyword("der") {
            let name = declared_name(&mut sc, s)?;
            sc.expect('=')?;
            let values = derivation_values(&mut sc, &ring)?;
            s.ders.push((name, DerivationSpec::new(values, 0)?));
        } else if sc.peek_keyword("complex") {
            let (name, cx) = parse_complex_block(&mut sc, &ring)?;
            if s.is_declared(&name) {
                return Err(Error::parse(l, c, format!("`{name}` is already declared")));
            }
            s.complexes.push((name, Arc::new(cx)));
        } else if sc.peek_keyword("map") {
            let snapshot = s.clone();
            let lookup = move |n: &str| snapshot.complex(n);
            let (name, m) = parse_map_block(&mut sc, &ring, &lookup)?;
            if s.is_declared(&name) {
                return Err(Error::parse(l, c, format!("`{name}` is already declared")));
            }
            s.maps.push((name, m));
        } else {
            return Err(Error::parse(l, c, "expected `ring`, `seq`, `hom`, `der`, `complex` or `map`"));
        }
    }
    session.ok_or_else(|| Error::parse(1, 1, "empty session: no ring declared"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_declarations() {
        let s = parse_session(
            "ring Q[x, y]\nseq Z = x^2 ; y\nhom phi on Z = 1 ; x\nder D = x: y\n# comment\n",
        )
        .unwrap();
        assert_eq!(s.ring.len(), 2);
        assert_eq!(s.seq("Z").unwrap().len(), 2);
        assert_eq!(s.hom("phi").unwrap().values().len(), 2);
        assert!(s.der("D").is_ok());
        assert!(parse_derivation(&s.ring, "x: y, y: 1").is_ok());
        assert!(parse_derivation(&s.ring, "w: 1").is_err());
        assert_eq!(s.sole_seq(), Some("Z"));
        assert!(s.complex("K_Z").is_some());
        assert!(matches!(s.seq("W"), Err(Error::Undeclared(_))));
    }

    #[test]
    fn reports_positions() {
        match parse_session("ring Q[x]\nseq = x") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        match parse_session("seq Z = x") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 1)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_session("ring Q[x]\nseq Z = x\nseq Z = x"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_session("ring Q[x]\nhom h on W = 1"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_session("ring Q[x]\nseq Z = x +"), Err(Error::Parse { line: 2, .. })));
    }
}

//! Command dispatch behind the `sr` binary.
//!
//! Every command returns its canonical text and an exit code: 0 on
//! success, 1 when a verdict is `FAIL`, 2 on usage, parse or input errors.

use std::fmt::Write as _;

use crate::atiyah::{atiyah_power, basis_atiyah, contract_derivation, obstruction_cocycle};
use crate::chaincore::{solve_coboundary, write_complex, write_map, ChainMap};
use crate::cousin::{compare_classes, Verdict, DEFAULT_EXPONENT_BOUND};
use crate::error::{Error, Result};
use crate::integraldep::{
    closure_member, curvilinear_generators, dim_bound_check, monomial_text, parse_monomial, t1_dim, MonomialIdeal,
};
use crate::koszul::{build_koszul, verify_regular, RegularSequenceIdeal};
use crate::polyforms::{parse_poly, Ring};
use crate::selftest;
use crate::semireg::{
    check_second_fundamental_form, chern_character, compare_semireg, euler_preset, ext1_representative,
    fundamental_class, hypersurface_preset, is_minus_identity, second_fundamental_form, sigma_component,
};
use crate::session::{parse_derivation, SessionFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const COMMANDS: [&str; 10] = [
    "atk", "ch", "semireg", "blochcmp", "obstruct", "sff", "iclosure", "curvdim", "dimcheck", "selftest",
];

/// Flags shared by all commands; each command reads the ones it needs.
#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub seq: Option<String>,
    pub hom: Option<String>,
    pub derivation: Option<String>,
    pub k: Option<i64>,
    pub ideal: Option<String>,
    pub test: Option<String>,
    pub power: Option<i64>,
    pub preset: Option<String>,
    /// Variable names for `iclosure`, `curvdim` and `dimcheck` without a session.
    pub vars: Option<String>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub text: String,
    pub code: i32,
}

impl CommandOutput {
    fn ok(text: String) -> Self {
        CommandOutput { text, code: EXIT_OK }
    }

    fn verdict(text: String, v: Verdict) -> Self {
        let code = if v == Verdict::Fail { EXIT_FAIL } else { EXIT_OK };
        CommandOutput { text, code }
    }

    pub fn error(e: &Error) -> Self {
        CommandOutput {
            text: format!("error: {e}"),
            code: EXIT_USAGE,
        }
    }
}

/// Runs one command. `session` is the parsed `--input` file, if any.
pub fn run_command(session: Option<&SessionFile>, command: &str, flags: &Flags) -> CommandOutput {
    dispatch(session, command, flags).unwrap_or_else(|e| CommandOutput::error(&e))
}

fn dispatch(session: Option<&SessionFile>, command: &str, flags: &Flags) -> Result<CommandOutput> {
    match command {
        "atk" => cmd_atk(need(session)?, flags),
        "ch" => cmd_ch(need(session)?, flags),
        "semireg" => cmd_semireg(need(session)?, flags),
        "blochcmp" => cmd_blochcmp(need(session)?, flags),
        "obstruct" => cmd_obstruct(need(session)?, flags),
        "sff" => cmd_sff(session, flags),
        "iclosure" => cmd_iclosure(session, flags),
        "curvdim" => cmd_curvdim(session, flags),
        "dimcheck" => cmd_dimcheck(session, flags),
        "selftest" => Ok(cmd_selftest(flags)),
        other => Err(Error::Semantic(format!(
            "unknown command `{other}`; expected one of {}",
            COMMANDS.join(", ")
        ))),
    }
}

fn need(session: Option<&SessionFile>) -> Result<&SessionFile> {
    session.ok_or_else(|| Error::Semantic("this command needs --input <session file>".into()))
}

fn pick_seq<'a>(s: &'a SessionFile, flags: &Flags) -> Result<(&'a str, &'a RegularSequenceIdeal)> {
    let name = match &flags.seq {
        Some(n) => n.as_str(),
        None => s
            .sole_seq()
            .ok_or_else(|| Error::Semantic("--seq is required when the session declares several sequences".into()))?,
    };
    let name = s
        .seqs
        .iter()
        .find(|(n, _)| n == name)
        .map(|(n, _)| n.as_str())
        .ok_or_else(|| Error::Undeclared(name.into()))?;
    Ok((name, s.seq(name)?))
}

fn push_block(out: &mut String, block: String) {
    out.push_str(&block);
    if !out.ends_with('\n') {
        out.push('\n');
    }
}

fn legend(out: &mut String, name: &str, ideal: &RegularSequenceIdeal, ring: &Ring) {
    let _ = writeln!(out, "sequence {name} in {ring}");
    for (i, f) in ideal.seq().iter().enumerate() {
        let _ = writeln!(out, "f{} = {}", i + 1, f.display(ring));
    }
}

/// Refuses sequences that fail the graded regularity check.
fn check_regular(ideal: &RegularSequenceIdeal) -> Result<()> {
    if ideal.is_graded() && !verify_regular(ideal, ideal.default_degree_bound())? {
        return Err(Error::InvalidSequence("the sequence is not regular".into()));
    }
    Ok(())
}

fn non_negative(v: Option<i64>, flag: &str, default: usize) -> Result<usize> {
    match v {
        None => Ok(default),
        Some(k) if k >= 0 => Ok(k as usize),
        Some(k) => Err(Error::Semantic(format!("--{flag} must be nonnegative, got {k}"))),
    }
}

fn cmd_atk(s: &SessionFile, flags: &Flags) -> Result<CommandOutput> {
    let (name, ideal) = pick_seq(s, flags)?;
    let power = non_negative(flags.power.or(flags.k), "power", 1)?;
    let k = build_koszul(ideal)?;
    let at = atiyah_power(&basis_atiyah(k.complex().clone()), power);
    let kname = format!("K_{name}");
    let mut out = String::new();
    push_block(&mut out, write_complex(&kname, k.complex(), &s.ring));
    push_block(&mut out, write_map(&format!("At{power}"), &kname, &kname, at.map(), &s.ring));
    let _ = write!(out, "cocycle: {}", if at.map().is_cocycle() { "yes" } else { "no" });
    Ok(CommandOutput::ok(out))
}

fn cmd_ch(s: &SessionFile, flags: &Flags) -> Result<CommandOutput> {
    let (name, ideal) = pick_seq(s, flags)?;
    check_regular(ideal)?;
    let k = non_negative(flags.k, "k", ideal.len())?;
    let ch = chern_character(ideal, k)?;
    let mut out = String::new();
    legend(&mut out, name, ideal, &s.ring);
    let _ = writeln!(out, "ch{k} = {}", ch.display(&s.ring));
    if k == ideal.len() {
        let fc = fundamental_class(ideal)?;
        let _ = writeln!(out, "omega * df = {}", fc.display(&s.ring));
        let v = compare_classes(&ch, &fc, ideal.weights(), DEFAULT_EXPONENT_BOUND)?;
        let _ = write!(out, "VERDICT: {v}");
        return Ok(CommandOutput::verdict(out, v));
    }
    Ok(CommandOutput::ok(out.trim_end().to_string()))
}

fn pick_hom<'a>(s: &'a SessionFile, flags: &Flags) -> Result<(&'a str, &'a str, &'a crate::semireg::NormalHom)> {
    let name = match &flags.hom {
        Some(n) => n.as_str(),
        None => match s.homs.as_slice() {
            [(n, _, _)] => n.as_str(),
            _ => return Err(Error::Semantic("--hom is required".into())),
        },
    };
    s.homs
        .iter()
        .find(|(n, _, _)| n == name)
        .map(|(n, z, h)| (n.as_str(), z.as_str(), h))
        .ok_or_else(|| Error::Undeclared(name.into()))
}

fn cmd_semireg(s: &SessionFile, flags: &Flags) -> Result<CommandOutput> {
    let (hname, zname, phi) = pick_hom(s, flags)?;
    let ideal = phi.ideal();
    check_regular(ideal)?;
    let k = non_negative(flags.k, "k", ideal.len() - 1)?;
    let xi = ext1_representative(phi)?;
    let sigma = sigma_component(&xi, k)?;
    let mut out = String::new();
    legend(&mut out, zname, ideal, &s.ring);
    let _ = write!(out, "sigma{k}({hname}) = {}", sigma.display(&s.ring));
    Ok(CommandOutput::ok(out))
}

fn cmd_blochcmp(s: &SessionFile, flags: &Flags) -> Result<CommandOutput> {
    let (hname, zname, phi) = pick_hom(s, flags)?;
    check_regular(phi.ideal())?;
    let rep = compare_semireg(phi, DEFAULT_EXPONENT_BOUND)?;
    let mut out = String::new();
    legend(&mut out, zname, phi.ideal(), &s.ring);
    let _ = writeln!(out, "tau({hname}) = {}", rep.atiyah_route.display(&s.ring));
    let _ = writeln!(out, "mu({hname}) = {}", rep.bloch_route.display(&s.ring));
    let _ = write!(out, "VERDICT: {}", rep.verdict);
    Ok(CommandOutput::verdict(out, rep.verdict))
}

fn map_verdict(diff: &ChainMap) -> Result<Verdict> {
    if diff.is_zero() {
        return Ok(Verdict::Exact);
    }
    Ok(if solve_coboundary(diff)?.solvable {
        Verdict::Coboundary
    } else {
        Verdict::Fail
    })
}

fn cmd_obstruct(s: &SessionFile, flags: &Flags) -> Result<CommandOutput> {
    let (name, ideal) = pick_seq(s, flags)?;
    let inline;
    let delta = match flags.derivation.as_deref() {
        Some(d) if d.contains(':') => {
            inline = parse_derivation(&s.ring, d)?;
            &inline
        }
        Some(d) => s.der(d)?,
        None => match s.ders.as_slice() {
            [(_, d)] => d,
            _ => return Err(Error::Semantic("--derivation is required".into())),
        },
    };
    let k = build_koszul(ideal)?;
    let ob = obstruction_cocycle(ideal, delta)?;
    let ct = contract_derivation(delta, basis_atiyah(k.complex().clone()).map())?;
    let kname = format!("K_{name}");
    let mut out = String::new();
    push_block(&mut out, write_map("obstruction", &kname, &kname, &ob, &s.ring));
    push_block(&mut out, write_map("contraction", &kname, &kname, &ct, &s.ring));
    let v = map_verdict(&ob.checked_sub(&ct)?)?;
    let _ = write!(out, "VERDICT: {v}");
    Ok(CommandOutput::verdict(out, v))
}

fn cmd_sff(session: Option<&SessionFile>, flags: &Flags) -> Result<CommandOutput> {
    let preset = flags
        .preset
        .as_deref()
        .ok_or_else(|| Error::Semantic("--preset euler|hypersurface:<f> is required".into()))?;
    let mut out = String::new();
    if preset == "euler" {
        let (ring, data, w) = euler_preset();
        let sigma = second_fundamental_form(&data)?;
        let _ = writeln!(out, "ring {ring}");
        let _ = writeln!(out, "w = {}", w.display(&ring));
        let _ = writeln!(out, "sigma(w) = {}", sigma.entry(0, 0, 0).display(&ring));
        let v = if is_minus_identity(&sigma, &[w]) { Verdict::Exact } else { Verdict::Fail };
        let _ = write!(out, "sigma = -id: VERDICT: {v}");
        return Ok(CommandOutput::verdict(out, v));
    }
    let Some(ftext) = preset.strip_prefix("hypersurface:") else {
        return Err(Error::Semantic(format!("unknown preset `{preset}`")));
    };
    let ring = inferred_ring(session, flags, &[ftext])?;
    let f = parse_poly(&ring, ftext)?;
    let weights = vec![1; ring.len()];
    let (data, res) = hypersurface_preset(&f, weights)?;
    let rep = check_second_fundamental_form(&data, &res)?;
    let _ = writeln!(out, "ring {ring}");
    let _ = writeln!(out, "f = {}", f.display(&ring));
    let _ = writeln!(out, "sigma(w1) = {}", rep.sigma.entry(0, 0, 0).display(&ring));
    push_block(&mut out, write_map("delta1", "P1", "P1", &rep.delta1, &ring));
    push_block(&mut out, write_map("delta2", "P2", "P2", &rep.delta2, &ring));
    let _ = writeln!(out, "delta'(sigma) = At(P'): VERDICT: {}", rep.first);
    let _ = write!(out, "delta''(sigma) = -At(P''): VERDICT: {}", rep.second);
    let v = if rep.first == Verdict::Fail || rep.second == Verdict::Fail {
        Verdict::Fail
    } else {
        Verdict::Exact
    };
    Ok(CommandOutput::verdict(out, v))
}

/// The ring for commands without a sequence: the session's, `--vars`, or the
/// variables appearing in the inputs in alphabetical order.
fn inferred_ring(session: Option<&SessionFile>, flags: &Flags, texts: &[&str]) -> Result<Ring> {
    if let Some(v) = &flags.vars {
        return Ring::new(v.split(',').map(str::trim));
    }
    if let Some(s) = session {
        return Ok(s.ring.clone());
    }
    let mut names: Vec<String> = Vec::new();
    for t in texts {
        let mut cur = String::new();
        for c in t.chars().chain([' ']) {
            if c.is_ascii_alphanumeric() || c == '_' {
                cur.push(c);
            } else {
                if cur.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') && !names.contains(&cur) {
                    names.push(cur.clone());
                }
                cur.clear();
            }
        }
    }
    names.sort();
    Ring::new(names)
}

fn ideal_flag(flags: &Flags) -> Result<&str> {
    flags
        .ideal
        .as_deref()
        .ok_or_else(|| Error::Semantic("--ideal is required".into()))
}

fn cmd_iclosure(session: Option<&SessionFile>, flags: &Flags) -> Result<CommandOutput> {
    let itext = ideal_flag(flags)?;
    let ttext = flags
        .test
        .as_deref()
        .ok_or_else(|| Error::Semantic("--test is required".into()))?;
    let ring = inferred_ring(session, flags, &[itext, ttext])?;
    let ideal = MonomialIdeal::parse(&ring, itext)?;
    let a = parse_monomial(&ring, ttext)?;
    let cert = closure_member(&ideal, &a)?;
    debug_assert!(cert.verify(&ideal));
    let mut out = String::new();
    let _ = writeln!(out, "ring {ring}");
    let _ = writeln!(out, "ideal {}", ideal.display(&ring));
    let _ = writeln!(out, "test {}", monomial_text(&ring, &a));
    out.push_str(&cert.display(&ideal, &ring));
    Ok(CommandOutput::ok(out))
}

fn cmd_curvdim(session: Option<&SessionFile>, flags: &Flags) -> Result<CommandOutput> {
    let itext = ideal_flag(flags)?;
    let ring = inferred_ring(session, flags, &[itext])?;
    let ideal = MonomialIdeal::parse(&ring, itext)?;
    let gens = curvilinear_generators(&ideal)?;
    let mut out = String::new();
    let _ = writeln!(out, "ring {ring}");
    let _ = writeln!(out, "ideal {}", ideal.display(&ring));
    let names: Vec<String> = gens.iter().map(|g| monomial_text(&ring, g)).collect();
    let _ = writeln!(out, "not integral over mI: {}", names.join(", "));
    match t1_dim(&ideal) {
        Ok(t) => {
            let _ = writeln!(out, "t1 dim = {t}");
        }
        Err(e) => {
            let _ = writeln!(out, "t1 dim: not defined ({e})");
        }
    }
    let _ = write!(out, "curvilinear dim = {}", gens.len());
    Ok(CommandOutput::ok(out))
}

fn cmd_dimcheck(session: Option<&SessionFile>, flags: &Flags) -> Result<CommandOutput> {
    let itext = ideal_flag(flags)?;
    let ring = inferred_ring(session, flags, &[itext])?;
    let ideal = MonomialIdeal::parse(&ring, itext)?;
    let rep = dim_bound_check(&ideal)?;
    let text = format!("ring {ring}\nideal {}\n{rep}", ideal.display(&ring));
    let v = if rep.holds() { Verdict::Exact } else { Verdict::Fail };
    Ok(CommandOutput::verdict(text, v))
}

fn cmd_selftest(flags: &Flags) -> CommandOutput {
    let report = selftest::run(flags.seed.unwrap_or(selftest::DEFAULT_SEED));
    let code = if report.ok() { EXIT_OK } else { EXIT_FAIL };
    CommandOutput {
        text: report.to_string(),
        code,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::session::parse_session;

    #[test]
    fn verdict_exit_codes() {
        assert_eq!(CommandOutput::verdict(String::new(), Verdict::Exact).code, EXIT_OK);
        assert_eq!(CommandOutput::verdict(String::new(), Verdict::Coboundary).code, EXIT_OK);
        assert_eq!(CommandOutput::verdict(String::new(), Verdict::Fail).code, EXIT_FAIL);
    }

    #[test]
    fn dispatch_without_process() {
        let s = parse_session("ring Q[x]\nseq Z = x^2\nhom phi on Z = 1\n").unwrap();
        let out = run_command(Some(&s), "blochcmp", &Flags::default());
        assert_eq!(out.code, EXIT_OK, "{}", out.text);
        assert!(out.text.ends_with("VERDICT: exact"));
        let out = run_command(Some(&s), "frobnicate", &Flags::default());
        assert_eq!(out.code, EXIT_USAGE);
    }

    #[test]
    fn ring_inference() {
        let flags = Flags::default();
        let r = inferred_ring(None, &flags, &["z^2*x1, b", "a"]).unwrap();
        assert_eq!(r.to_string(), "Q[a, b, x1, z]");
    }
}

//! DIMACS CNF export/import. The variable ↔ triple correspondence and the
//! target class travel in comment lines so an exported file is
//! self-describing:
//!
//! ```text
//! c target pre-cc
//! c v1 = triple 0 1 2
//! p cnf 1 0
//! ```

use crate::error::{Error, Result};
use crate::system::CanonicalTriple;

use super::{CnfFormula, Lit, Target};

pub fn export_dimacs(f: &CnfFormula) -> String {
    let mut out = String::new();
    out.push_str(&format!("c target {}\n", f.target()));
    for (var, ct) in f.var_map().iter().enumerate() {
        out.push_str(&format!(
            "c v{} = triple {} {} {}\n",
            var + 1,
            ct.i(),
            ct.j(),
            ct.k()
        ));
    }
    out.push_str(&format!("p cnf {} {}\n", f.var_count(), f.clauses().len()));
    for clause in f.clauses() {
        for lit in clause {
            out.push_str(&format!("{} ", lit.to_dimacs()));
        }
        out.push_str("0\n");
    }
    out
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedDimacs(msg.into())
}

pub fn import_dimacs(text: &str) -> Result<CnfFormula> {
    let mut target: Option<Target> = None;
    let mut mappings: Vec<(usize, CanonicalTriple)> = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut clause_tokens: Vec<i64> = Vec::new();

    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('c') {
            let tokens: Vec<&str> = comment.split_whitespace().collect();
            match tokens.as_slice() {
                ["target", t] => {
                    target = Some(t.parse().map_err(malformed)?);
                }
                [v, "=", "triple", a, b, c] if v.starts_with('v') => {
                    let var: usize = v[1..]
                        .parse()
                        .map_err(|_| malformed(format!("bad variable tag `{v}`")))?;
                    let i = a.parse().map_err(|_| malformed(format!("bad point `{a}`")))?;
                    let j = b.parse().map_err(|_| malformed(format!("bad point `{b}`")))?;
                    let k = c.parse().map_err(|_| malformed(format!("bad point `{c}`")))?;
                    let ct = CanonicalTriple::new(i, j, k)
                        .map_err(|_| malformed(format!("triple {i} {j} {k} not ascending")))?;
                    mappings.push((var, ct));
                }
                _ => {} // free-form comment
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            if tokens.len() != 3 || tokens[0] != "cnf" {
                return Err(malformed(format!("bad problem line `{line}`")));
            }
            let vars = tokens[1]
                .parse()
                .map_err(|_| malformed(format!("bad variable count `{}`", tokens[1])))?;
            let clauses = tokens[2]
                .parse()
                .map_err(|_| malformed(format!("bad clause count `{}`", tokens[2])))?;
            header = Some((vars, clauses));
            continue;
        }
        if header.is_none() {
            return Err(malformed(format!("clause before problem line: `{line}`")));
        }
        for tok in line.split_whitespace() {
            let value: i64 = tok
                .parse()
                .map_err(|_| malformed(format!("bad literal `{tok}`")))?;
            clause_tokens.push(value);
        }
    }

    let (var_count, clause_count) =
        header.ok_or_else(|| malformed("missing `p cnf` problem line"))?;
    let target = target.ok_or_else(|| malformed("missing `c target` comment"))?;

    // Variable map must be the full triple ↔ variable bijection.
    let mut var_map: Vec<Option<CanonicalTriple>> = vec![None; var_count];
    let mut n = 0usize;
    for (var, ct) in mappings {
        if var == 0 || var > var_count {
            return Err(malformed(format!("variable v{var} out of range")));
        }
        if var_map[var - 1].replace(ct).is_some() {
            return Err(malformed(format!("duplicate mapping for v{var}")));
        }
        n = n.max(ct.k() + 1);
    }
    let var_map: Vec<CanonicalTriple> = var_map
        .into_iter()
        .enumerate()
        .map(|(i, ct)| ct.ok_or_else(|| malformed(format!("missing mapping for v{}", i + 1))))
        .collect::<Result<_>>()?;
    if crate::system::binom3(n) != var_count {
        return Err(malformed(format!(
            "{} variables cannot cover the {} canonical triples of {} points",
            var_count,
            crate::system::binom3(n),
            n
        )));
    }
    let mut seen = std::collections::HashSet::new();
    for ct in &var_map {
        if !seen.insert(*ct) {
            return Err(malformed(format!("triple {ct} mapped twice")));
        }
    }

    // Clauses: zero-terminated literal runs.
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    for value in clause_tokens {
        if value == 0 {
            clauses.push(std::mem::take(&mut current));
            continue;
        }
        let lit = Lit::from_dimacs(value).expect("nonzero");
        if lit.var() >= var_count {
            return Err(malformed(format!("literal {value} out of range")));
        }
        current.push(lit);
    }
    if !current.is_empty() {
        return Err(malformed("unterminated clause (missing trailing 0)"));
    }
    if clauses.len() != clause_count {
        return Err(malformed(format!(
            "problem line promises {clause_count} clauses, found {}",
            clauses.len()
        )));
    }

    let mut fixed = vec![None; var_count];
    for clause in &clauses {
        if let [unit] = clause.as_slice() {
            let slot = &mut fixed[unit.var()];
            if slot.is_none() {
                *slot = Some(unit.is_positive());
            }
        }
    }

    Ok(CnfFormula::from_parts(
        n,
        target,
        var_count,
        clauses,
        var_map,
        fixed,
    ))
}

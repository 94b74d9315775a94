use std::fmt::Write;

use anyhow::Result;
use serde::Serialize;
use spatemp::allen::{translation_table as rows, SignVector};
use spatemp::bounds::format_rational;
use spatemp::reasoner::{Conflict, Verdict, Witness};
use spatemp::tbox::TBox;

use crate::Format;

#[derive(Serialize)]
struct Report<'a> {
    verdict: &'static str,
    sat: bool,
    branches: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    conflict: Option<&'a Conflict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a Witness>,
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    trace: &'a [String],
}

pub fn report(t: &TBox, v: &Verdict, with_witness: bool, format: Format) -> Result<String> {
    let verdict = if v.sat { "SAT" } else { "UNSAT" };
    let witness = v.witness.as_ref().filter(|_| with_witness);
    match format {
        Format::Json => {
            let r = Report {
                verdict,
                sat: v.sat,
                branches: v.branches,
                conflict: v.conflict.as_ref(),
                witness,
                trace: &v.trace,
            };
            Ok(serde_json::to_string_pretty(&r)? + "\n")
        }
        Format::Text => {
            let mut out = String::new();
            for line in &v.trace {
                writeln!(out, "trace: {line}")?;
            }
            writeln!(out, "{verdict}")?;
            if let Some(c) = &v.conflict {
                writeln!(out, "conflict ({}): {}", c.stage, c.message)?;
            }
            writeln!(out, "branches: {}", v.branches)?;
            if let Some(w) = witness {
                out.push_str(&emit_witness(t, w, Format::Text)?);
            }
            Ok(out)
        }
    }
}

pub fn emit_witness(t: &TBox, w: &Witness, format: Format) -> Result<String> {
    if format == Format::Json {
        return Ok(serde_json::to_string_pretty(w)? + "\n");
    }
    let mut out = String::new();
    let class_name = |k: usize| w.scenario.classes[k].representative.to_string();

    writeln!(out, "endpoints:")?;
    for (c, s) in &w.endpoints {
        writeln!(out, "  {c} = ({}, {})", format_rational(&s.begin), format_rational(&s.end))?;
    }
    writeln!(out, "literals:")?;
    for (c, lits) in &w.literals {
        let lits: Vec<String> = lits.iter().map(|l| l.to_string()).collect();
        writeln!(out, "  {c} = {{{}}}", lits.join(", "))?;
    }
    writeln!(out, "classes:")?;
    for class in &w.scenario.classes {
        let members: Vec<String> = class.members.iter().map(|m| m.to_string()).collect();
        writeln!(out, "  {} = {{{}}}", class.representative, members.join(", "))?;
    }
    writeln!(out, "scenario ({}):", t.domain)?;
    for r in &w.scenario.relations {
        let args: Vec<String> = r.args.iter().map(|&k| class_name(k)).collect();
        writeln!(out, "  {}({})", r.atom, args.join(", "))?;
    }
    if !w.scenario.placement.is_empty() {
        writeln!(out, "placement (turns):")?;
        for (k, turn) in w.scenario.placement.iter().enumerate() {
            writeln!(out, "  {} = {turn}", class_name(k))?;
        }
    }
    writeln!(out, "disjuncts:")?;
    for (c, d) in &w.disjuncts {
        writeln!(out, "  {c} = {d}")?;
    }
    writeln!(out, "partitions:")?;
    for p in &w.partitions {
        writeln!(out, "  {}/{} {}", p.first, p.second, p.relation)?;
    }
    Ok(out)
}

fn signs(v: &SignVector) -> String {
    v.iter().map(|s| s.symbol().to_string()).collect::<Vec<_>>().join(" ")
}

const SLOTS: [&str; 4] = ["rbb", "rbe", "reb", "ree"];

/// One row per Allen atom: sign vectors of `(J_b-I_b, J_e-I_b, J_b-I_e, J_e-I_e)`
/// derived from endpoint orderings next to the published ones.
pub fn translation_table() -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<6}{:<15}{:<13}{:<13}", "atom", "name", "derived", "published");
    let _ = writeln!(out, "{:<21}{:<13}{:<13}", "", "bb be eb ee", "bb be eb ee");
    let mut errata = 0;
    for row in rows() {
        let mut line = format!(
            "{:<6}{:<15}{:<13}{:<13}",
            row.atom.short_name(),
            row.atom.long_name(),
            signs(&row.derived),
            signs(&row.published)
        );
        if row.is_erratum() {
            errata += 1;
            let slots: Vec<&str> = row.differing_slots().into_iter().map(|i| SLOTS[i]).collect();
            line.push_str(&format!("ERRATUM {}", slots.join(",")));
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
    let _ = writeln!(out, "{errata} errata");
    out
}

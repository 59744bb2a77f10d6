//! Plain-text rendering of output records.

use num_bigint::{BigInt, Sign};

use crate::record::{OutputRecord, RelationRecord};

/// `12*psi_1 - delta_irr - 12*delta_{0,{1,2}} = 0`, or `0 = 0`.
pub fn relation_line(rel: &RelationRecord) -> String {
    let mut out = String::new();
    for (name, coeff) in rel.generators.iter().zip(&rel.coeffs).filter(|(_, c)| c.0.sign() != Sign::NoSign) {
        let c = &coeff.0;
        let negative = c.sign() == Sign::Minus;
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        let magnitude = c.magnitude();
        if *magnitude != 1u32.into() {
            out.push_str(&format!("{}*", BigInt::from(magnitude.clone())));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out.push_str(" = 0");
    out
}

pub fn text(record: &OutputRecord) -> String {
    let mut lines = Vec::new();
    match record.command.as_str() {
        "relations" => {
            let p = &record.params;
            let r = p.r.map(|r| r.to_string()).unwrap_or_default();
            lines.push(format!(
                "# M_{{{},{}}}, r = {r}: {} relation(s)",
                p.g.unwrap_or(0),
                p.n.unwrap_or(0),
                record.relations.len()
            ));
            for rel in &record.relations {
                let tag = match &rel.a {
                    Some(a) => format!("{} a={a:?}", rel.source),
                    None => rel.source.clone(),
                };
                lines.push(format!("{}    # {tag}", relation_line(rel)));
            }
        }
        "pm-table" => {
            for (m, row) in record.table.iter().flatten().enumerate() {
                lines.push(format!("m={m}: {}", row.join(" ")));
            }
        }
        _ => {
            for v in &record.verdicts {
                lines.push(format!("[{}] {:>2} {}: {}", if v.passed { "PASS" } else { "FAIL" }, v.id, v.name, v.detail));
            }
            if let Some(s) = &record.spans {
                lines.push(if s.equal { "EQUAL".into() } else { "UNEQUAL".into() });
            } else if !record.verdicts.is_empty() {
                let passed = record.verdicts.iter().filter(|v| v.passed).count();
                lines.push(format!("{passed}/{} passed", record.verdicts.len()));
            }
        }
    }
    if let Some(t) = record.timing {
        lines.push(format!("# elapsed {:.3} ms", t.elapsed_us as f64 / 1000.0));
    }
    lines.join("\n")
}

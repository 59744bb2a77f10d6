use ppz_core::acceptance;
use ppz_core::cohft::{p_table, RSpinTheory};
use ppz_core::relations::{
    ac_relations, admissible_a_vectors, assemble_relation, extract_r_coefficients, ppz_relation_set, spans_equal,
    RMode, Relation, RelationError, RelationSet, Source,
};
use ppz_core::strata::DivisorClass;

use crate::record::{Coeff, OutputRecord, Params, RValue, RelationRecord, SpanRecord, VerdictRecord};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Usage = 1,
    Gate = 2,
    /// A verification ran to completion and found a discrepancy.
    Failed = 3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandError {
    pub exit: Exit,
    pub message: String,
}

impl From<RelationError> for CommandError {
    fn from(e: RelationError) -> Self {
        let exit = match e {
            RelationError::DegreeGate { .. } => Exit::Gate,
            _ => Exit::Usage,
        };
        CommandError { exit, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> CommandError {
    CommandError { exit: Exit::Usage, message: message.into() }
}

pub type Outcome = Result<(OutputRecord, Exit), CommandError>;

fn source_name(source: &Source) -> String {
    match source {
        Source::Assembled => "assembled".into(),
        Source::Extracted { power } => format!("r^{power}"),
        Source::Pullback => "pullback".into(),
        Source::Reference => "classical".into(),
        Source::Reduced => "reduced".into(),
    }
}

fn record_of(rel: &Relation, basis: &[DivisorClass], r: RValue, with_a: bool) -> Result<RelationRecord, CommandError> {
    let coeffs = rel.primitive_integers(basis).map_err(|e| usage(e.to_string()))?;
    Ok(RelationRecord {
        generators: basis.iter().map(ToString::to_string).collect(),
        coeffs: coeffs.into_iter().map(Coeff).collect(),
        r,
        g: rel.g,
        n: rel.n,
        a: with_a.then(|| rel.a.clone()),
        source: source_name(&rel.source),
    })
}

/// Independent sets are kept as computed; dependent ones are replaced by a
/// reduced basis of their span.
fn settle(set: RelationSet, raw: bool) -> Result<RelationSet, RelationError> {
    if raw || set.rank()? == set.relations.len() {
        Ok(set)
    } else {
        set.reduced_basis()
    }
}

/// Surfaces the degree gate for insertions `a` on `M̄_{g,n}`.
fn probe(g: u32, n: usize, a: &[u32], r: u32) -> Result<Relation, RelationError> {
    assemble_relation(g, n, a, RMode::Numeric(r))
}

pub fn relations(g: u32, n: usize, r: RValue, a: Option<Vec<u32>>, raw: bool) -> Outcome {
    let params = Params { g: Some(g), n: Some(n), r: Some(r), a: a.clone(), raw, ..Params::default() };
    let mut record = OutputRecord::new("relations", params);
    let mut set = RelationSet::new(g, n).map_err(CommandError::from)?;

    match (r, a) {
        (RValue::Numeric(rv), Some(a)) => {
            set.push(probe(g, n, &a, rv)?)?;
        }
        (RValue::Numeric(rv), None) => {
            if admissible_a_vectors(g, n, rv).is_empty() {
                probe(g, n, &vec![0; n], rv)?;
            }
            set = settle(ppz_relation_set(g, n, rv)?, raw)?;
        }
        (RValue::Symbolic, Some(a)) => {
            let rel = assemble_relation(g, n, &a, RMode::Symbolic)?;
            set = extract_r_coefficients(&rel)?;
        }
        (RValue::Symbolic, None) => {
            if g != 1 {
                return Err(RelationError::SymbolicUnsupported { g, sum: 0 }.into());
            }
            for i in 0..n {
                let mut a = vec![0; n];
                a[i] = 1;
                let rel = assemble_relation(g, n, &a, RMode::Symbolic)?;
                set.relations.extend(extract_r_coefficients(&rel)?.relations);
            }
            set = settle(set, raw)?;
        }
    }
    for rel in &set.relations {
        let with_a = !matches!(rel.source, Source::Reduced);
        record.relations.push(record_of(rel, &set.generators, r, with_a)?);
    }
    Ok((record, Exit::Success))
}

pub fn verify_ac(g: u32, n: usize, r: u32) -> Outcome {
    let params = Params { g: Some(g), n: Some(n), r: Some(RValue::Numeric(r)), ..Params::default() };
    let mut record = OutputRecord::new("verify-ac", params);
    let ppz = ppz_relation_set(g, n, r).map_err(|e| usage(e.to_string()))?;
    let ac = ac_relations(g, n).map_err(|e| usage(e.to_string()))?;
    let report = spans_equal(&ppz, &ac).map_err(|e| usage(e.to_string()))?;
    record.spans = Some(SpanRecord {
        rank_ppz: report.rank_left,
        rank_classical: report.rank_right,
        rank_union: report.rank_union,
        equal: report.equal,
    });
    record.verdicts.push(VerdictRecord {
        id: 1,
        name: "span comparison".into(),
        passed: report.equal,
        detail: format!(
            "{} r-spin relations of rank {}, classical rank {}, union rank {}",
            ppz.relations.len(),
            report.rank_left,
            report.rank_right,
            report.rank_union
        ),
        elapsed_us: None,
        limit_ms: None,
    });
    Ok((record, if report.equal { Exit::Success } else { Exit::Failed }))
}

pub fn pm_table(m_max: u32, r: u32) -> Outcome {
    let params = Params { r: Some(RValue::Numeric(r)), m_max: Some(m_max), ..Params::default() };
    let mut record = OutputRecord::new("pm-table", params);
    let theory = RSpinTheory::new(r).map_err(|e| usage(e.to_string()))?;
    let rows = p_table(m_max, &theory);
    record.table = Some(rows.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect());
    Ok((record, Exit::Success))
}

pub fn selftest(timing: bool) -> Outcome {
    let mut record = OutputRecord::new("selftest", Params::default());
    for v in acceptance::run_all() {
        record.verdicts.push(VerdictRecord {
            id: v.id,
            name: v.name.to_owned(),
            passed: v.passed,
            detail: v.detail,
            elapsed_us: timing.then_some(v.elapsed.as_micros() as u64),
            limit_ms: v.limit.map(|l| l.as_millis() as u64),
        });
    }
    let exit = if record.verdicts.iter().all(|v| v.passed) { Exit::Success } else { Exit::Failed };
    Ok((record, exit))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rel: &RelationRecord) -> Vec<i64> {
        rel.coeffs.iter().map(|c| i64::try_from(&c.0).unwrap()).collect()
    }

    #[test]
    fn genus_one_two_points_gives_three() {
        let (record, exit) = relations(1, 2, RValue::Numeric(3), None, false).unwrap();
        assert_eq!(exit, Exit::Success);
        assert_eq!(record.relations.len(), 3);
    }

    #[test]
    fn single_insertion_vector() {
        let (record, _) = relations(1, 2, RValue::Numeric(3), Some(vec![1, 0]), false).unwrap();
        assert_eq!(record.relations.len(), 1);
        assert_eq!(ints(&record.relations[0]), vec![7, -5, 5, -1, -7]);
        assert_eq!(record.relations[0].a, Some(vec![1, 0]));
    }

    #[test]
    fn genus_two_goes_through_pullback() {
        let (record, _) = relations(2, 3, RValue::Numeric(3), None, false).unwrap();
        assert_eq!(record.relations.len(), 1);
        assert_eq!(record.relations[0].source, "pullback");
    }

    #[test]
    fn gate_and_usage_errors() {
        let err = relations(4, 0, RValue::Numeric(3), None, false).unwrap_err();
        assert_eq!(err.exit, Exit::Gate);
        assert!(err.message.contains("D = 1"), "{}", err.message);
        assert_eq!(relations(3, 0, RValue::Numeric(5), None, false).unwrap_err().exit, Exit::Gate);
        assert_eq!(relations(2, 1, RValue::Symbolic, None, false).unwrap_err().exit, Exit::Usage);
        assert_eq!(relations(1, 0, RValue::Numeric(3), None, false).unwrap_err().exit, Exit::Usage);
        assert_eq!(verify_ac(4, 0, 3).unwrap_err().exit, Exit::Usage);
        assert_eq!(pm_table(1, 2).unwrap_err().exit, Exit::Usage);
    }

    #[test]
    fn pm_rows() {
        let (record, _) = pm_table(1, 3).unwrap();
        assert_eq!(record.table.unwrap(), vec![vec!["1", "1"], vec!["-5/24", "7/24"]]);
    }

    #[test]
    fn verify_small_cases() {
        for (g, n, rank) in [(1, 4, 5), (2, 0, 1), (3, 0, 0)] {
            let (record, exit) = verify_ac(g, n, 3).unwrap();
            assert_eq!(exit, Exit::Success);
            let spans = record.spans.unwrap();
            assert!(spans.equal);
            assert_eq!(spans.rank_union, rank);
        }
    }
}

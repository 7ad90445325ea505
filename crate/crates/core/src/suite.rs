//! Exhaustive verification grid over named types and grading elements.
//!
//! Every named simple type up to a rank bound is paired with every grading
//! element whose entries lie in `0..=max_e`. Points are evaluated in
//! parallel and merged back in (type, rank, lexicographic element) order, so
//! the summary does not depend on the thread count.

use rayon::prelude::*;
use serde::Serialize;

use crate::grading::{
    find_bracket_witness, grade, high_degree_subalgebra, verify_high_degree_closure,
    verify_positive_part_recovery, GradingElement,
};
use crate::rootsys::{
    build_root_system, named_types_up_to, CartanSpec, RootError, RootSystem, SimpleType,
};
use crate::verdict::Status;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridConfig {
    pub max_rank: usize,
    pub max_e: i64,
    /// Restrict to these letters; `None` means every type.
    pub types: Option<Vec<SimpleType>>,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            max_rank: 6,
            max_e: 2,
            types: None,
        }
    }
}

impl GridConfig {
    pub fn root_systems(&self) -> Vec<CartanSpec> {
        named_types_up_to(self.max_rank)
            .into_iter()
            .filter(|spec| match (&self.types, spec) {
                (Some(allowed), CartanSpec::Named { kind, .. }) => allowed.contains(kind),
                _ => true,
            })
            .collect()
    }
}

/// All vectors in `{0..=max}^rank`, lexicographically.
pub fn grading_elements(rank: usize, max: i64) -> Vec<GradingElement> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; rank];
    loop {
        out.push(GradingElement::new(cur.clone()).expect("entries are non-negative"));
        let mut i = rank;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < max {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridFailure {
    pub root_system: String,
    pub element: GradingElement,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GridSummary {
    pub root_systems: Vec<String>,
    pub points: usize,
    pub criterion_true: usize,
    /// Points with the generation criterion true and level at least three.
    pub applicable: usize,
    pub criterion_matches_oracle: usize,
    pub level_three_way_agreement: usize,
    pub bracket_compatible: usize,
    pub high_degree_closure_holds: usize,
    pub witness_found: usize,
    pub simple_witnesses: usize,
    pub positive_part_recovery_holds: usize,
    pub failures: Vec<GridFailure>,
}

impl GridSummary {
    pub fn counterexamples(&self) -> usize {
        self.failures.len()
    }

    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Default)]
struct PointOutcome {
    criterion: bool,
    applicable: bool,
    oracle_agrees: bool,
    level_agrees: bool,
    compatible: bool,
    closure_holds: bool,
    witness: Option<bool>,
    recovery_holds: bool,
    failures: Vec<(String, String)>,
}

fn evaluate(rs: &RootSystem, e: &GradingElement) -> PointOutcome {
    let dec = grade(rs, e).expect("grid elements have the right length");
    let mut out = PointOutcome {
        criterion: dec.generates_criterion(),
        ..Default::default()
    };
    let mut fail = |check: &str, detail: String| out.failures.push((check.to_string(), detail));

    let oracle = dec.generates_oracle();
    let oracle_agrees = oracle == out.criterion;
    if !oracle_agrees {
        fail(
            "generation criterion = oracle",
            format!("criterion {} but oracle {oracle}", out.criterion),
        );
    }

    let level = dec.level();
    let max_deg = dec.max_degree();
    let level_agrees = level == max_deg && dec.is_classical() == (max_deg <= 2);
    if !level_agrees {
        fail(
            "level three-way agreement",
            format!("highest-root pairing {level}, max degree {max_deg}"),
        );
    }

    let compatible = dec.is_bracket_compatible();
    if !compatible {
        fail("bracket compatibility", "degree additivity violated".into());
    }

    let applicable = out.criterion && level >= 3;
    let mut closure_holds = false;
    let mut witness = None;
    let mut recovery_holds = false;
    if applicable {
        let report = verify_high_degree_closure(rs, e).expect("valid element");
        closure_holds = report.verdict == Status::Holds;
        if !closure_holds {
            fail(
                "high-degree closure contains degree ±1",
                format!("{:?}", report.witness),
            );
        }
        match find_bracket_witness(rs, e) {
            Ok(w) => witness = Some(w.all_simple),
            Err(err) => fail("degree-three bracket witness", err.to_string()),
        }
        let h = high_degree_subalgebra(&dec);
        let report = verify_positive_part_recovery(rs, e, &h).expect("valid element");
        recovery_holds = report.verdict == Status::Holds;
        if !recovery_holds {
            fail(
                "positive part recovery",
                format!("verdict {:?}", report.verdict),
            );
        }
    }
    PointOutcome {
        applicable,
        oracle_agrees,
        level_agrees,
        compatible,
        closure_holds,
        witness,
        recovery_holds,
        ..out
    }
}

pub fn run_grid(config: &GridConfig) -> Result<GridSummary, RootError> {
    let mut summary = GridSummary::default();
    for spec in config.root_systems() {
        let label = spec.label();
        let rs = build_root_system(spec)?;
        let elements = grading_elements(rs.rank(), config.max_e);
        let outcomes: Vec<PointOutcome> = elements
            .par_iter()
            .map(|e| evaluate(&rs, e))
            .collect();
        for (e, o) in elements.iter().zip(outcomes) {
            summary.points += 1;
            summary.criterion_true += o.criterion as usize;
            summary.applicable += o.applicable as usize;
            summary.criterion_matches_oracle += o.oracle_agrees as usize;
            summary.level_three_way_agreement += o.level_agrees as usize;
            summary.bracket_compatible += o.compatible as usize;
            summary.high_degree_closure_holds += o.closure_holds as usize;
            summary.witness_found += o.witness.is_some() as usize;
            summary.simple_witnesses += (o.witness == Some(true)) as usize;
            summary.positive_part_recovery_holds += o.recovery_holds as usize;
            for (check, detail) in o.failures {
                summary.failures.push(GridFailure {
                    root_system: label.clone(),
                    element: e.clone(),
                    check,
                    detail,
                });
            }
        }
        summary.root_systems.push(label);
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_enumeration_is_lexicographic() {
        let all = grading_elements(2, 2);
        assert_eq!(all.len(), 9);
        assert_eq!(all[0].values(), &[0, 0]);
        assert_eq!(all[1].values(), &[0, 1]);
        assert_eq!(all[8].values(), &[2, 2]);
    }

    #[test]
    fn rank_one_grid_is_vacuous() {
        let summary = run_grid(&GridConfig {
            max_rank: 1,
            max_e: 2,
            types: Some(vec![SimpleType::A]),
        })
        .unwrap();
        assert_eq!(summary.root_systems, vec!["A1"]);
        assert_eq!(summary.points, 3);
        assert_eq!(summary.applicable, 0);
        assert!(summary.all_hold());
    }

    #[test]
    fn rank_two_grid_holds() {
        let summary = run_grid(&GridConfig {
            max_rank: 2,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(summary.root_systems, vec!["A1", "A2", "B2", "C2", "G2"]);
        assert!(summary.applicable > 0);
        assert!(summary.all_hold(), "{:?}", summary.failures);
    }
}

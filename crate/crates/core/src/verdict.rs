//! Three-valued verdicts shared by the lemma checkers.

use serde::Serialize;

use crate::rootsys::Root;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    NotApplicable,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Holds
        } else {
            Status::Fails
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::NotApplicable => "not_applicable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub status: Status,
}

/// Evidence attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `[g_{a+b+c}, g_{-a-b}] = g_c` with `a, b, c` of degree one.
    BracketTriple {
        roots: [Root; 3],
        sum: Root,
        all_simple: bool,
    },
    /// Roots that should have been present but were not.
    MissingRoots { roots: Vec<Root> },
    /// One nonzero entry per multiplication map, keyed by source Hodge index `p`.
    NonzeroEntries { entries: Vec<MatrixEntry> },
}

/// A nonzero entry of a multiplication map `R^d ⊗ R^a → R^{a+d}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixEntry {
    pub p: usize,
    pub source_degree: usize,
    pub target_degree: usize,
    pub theta: Vec<u32>,
    pub omega: Vec<u32>,
    pub target: Vec<u32>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub check: String,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: Status,
    pub verdict: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerdictReport {
    /// Overall verdict: not applicable as soon as one hypothesis fails,
    /// otherwise whatever the conclusion is.
    pub fn new(check: &str, hypotheses: Vec<Hypothesis>, conclusion: Status) -> Self {
        let verdict = if hypotheses.iter().any(|h| h.status != Status::Holds) {
            Status::NotApplicable
        } else {
            conclusion
        };
        VerdictReport {
            check: check.to_string(),
            hypotheses,
            conclusion,
            verdict,
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Status::Holds
    }

    /// Names of the hypotheses that did not hold.
    pub fn failed_hypotheses(&self) -> Vec<&str> {
        self.hypotheses
            .iter()
            .filter(|h| h.status != Status::Holds)
            .map(|h| h.name.as_str())
            .collect()
    }
}

pub(crate) fn hyp(name: &str, ok: bool) -> Hypothesis {
    Hypothesis {
        name: name.to_string(),
        status: Status::from_bool(ok),
    }
}

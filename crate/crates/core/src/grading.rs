//! Weight-zero Hodge gradings `g = ⊕ g^k` cut out by a grading element.
//!
//! A grading element is recorded by its (non-negative integer) values on the
//! simple roots; the degree of a root is then its pairing with those values.
//! Subalgebras are root-closed subsets of `Δ(g)` sharing the Cartan
//! subalgebra of `g`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::rootsys::{Bracket, Root, RootSystem};
use crate::verdict::{hyp, Status, VerdictReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("grading element entry {index} is {value}; entries must be non-negative")]
    NegativeGradingEntry { index: usize, value: i64 },
    #[error("grading element has {found} entries but the rank is {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cannot parse grading element: {0}")]
    Parse(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
}

/// Values `β_i(E)` of a grading element on the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GradingElement(Vec<i64>);

impl GradingElement {
    pub fn new(values: Vec<i64>) -> Result<Self, GradingError> {
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| **v < 0) {
            return Err(GradingError::NegativeGradingEntry { index, value });
        }
        Ok(GradingElement(values))
    }

    pub fn zero(rank: usize) -> Self {
        GradingElement(vec![0; rank])
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }
}

impl FromStr for GradingElement {
    type Err = GradingError;

    /// Accepts `1,0,2` or a JSON array `[1,0,2]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let values = body
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| GradingError::Parse(format!("`{t}` is not an integer")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        GradingElement::new(values)
    }
}

impl fmt::Display for GradingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", cells.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct GradedDecomposition<'a> {
    rs: &'a RootSystem,
    element: GradingElement,
    by_degree: BTreeMap<i64, Vec<Root>>,
}

/// Sort every root of `rs` into its degree class.
pub fn grade<'a>(
    rs: &'a RootSystem,
    element: &GradingElement,
) -> Result<GradedDecomposition<'a>, GradingError> {
    if element.0.len() != rs.rank() {
        return Err(GradingError::DimensionMismatch {
            expected: rs.rank(),
            found: element.0.len(),
        });
    }
    let mut by_degree: BTreeMap<i64, Vec<Root>> = BTreeMap::new();
    for root in rs.roots() {
        by_degree
            .entry(root.pair(&element.0))
            .or_default()
            .push(root);
    }
    Ok(GradedDecomposition {
        rs,
        element: element.clone(),
        by_degree,
    })
}

impl<'a> GradedDecomposition<'a> {
    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn element(&self) -> &GradingElement {
        &self.element
    }

    pub fn degree(&self, root: &Root) -> i64 {
        root.pair(&self.element.0)
    }

    pub fn roots_of_degree(&self, k: i64) -> &[Root] {
        self.by_degree.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Nonempty degree classes, in increasing degree.
    pub fn degrees(&self) -> impl Iterator<Item = (i64, &[Root])> {
        self.by_degree.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    /// `dim g^k`, counting the Cartan subalgebra in degree zero.
    pub fn dim(&self, k: i64) -> usize {
        let roots = self.roots_of_degree(k).len();
        if k == 0 {
            roots + self.rs.rank()
        } else {
            roots
        }
    }

    /// Roots of strictly positive degree.
    pub fn positive_part(&self) -> BTreeSet<Root> {
        self.by_degree
            .range(1..)
            .flat_map(|(_, v)| v.iter().cloned())
            .collect()
    }

    /// Highest root evaluated on the grading element.
    pub fn level(&self) -> i64 {
        self.rs.highest_root().pair(&self.element.0)
    }

    /// Largest degree whose class is nonempty (zero when everything sits in
    /// degree zero).
    pub fn max_degree(&self) -> i64 {
        self.by_degree.keys().next_back().copied().unwrap_or(0).max(0)
    }

    pub fn is_classical(&self) -> bool {
        self.level() <= 2
    }

    /// `g^1` generates `g^+` iff every simple root has degree 0 or 1.
    pub fn generates_criterion(&self) -> bool {
        self.element.0.iter().all(|&v| v == 0 || v == 1)
    }

    /// Brute force: close the degree-one roots under bracket and compare with
    /// the whole positive part.
    pub fn generates_oracle(&self) -> bool {
        let closure = subalgebra_closure(self.rs, self.roots_of_degree(1).iter().cloned());
        closure.roots == self.positive_part()
    }

    /// `[g^k, g^l] ⊂ g^{k+l}` on every pair of roots with a root sum, and
    /// `dim g^k = dim g^{-k}`.
    pub fn is_bracket_compatible(&self) -> bool {
        for (&k, roots) in &self.by_degree {
            if self.dim(k) != self.dim(-k) {
                return false;
            }
            for a in roots {
                if self.degree(&a.neg()) != -k {
                    return false;
                }
                for (&l, others) in &self.by_degree {
                    for b in others {
                        if let Bracket::Root(s) = self.rs.root_sum(a, b) {
                            if self.degree(&s) != k + l {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

/// A set of roots closed under bracket, plus the positive roots `α` whose
/// coroot `[g_α, g_{-α}]` it contains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubalgebraRootSet {
    pub roots: BTreeSet<Root>,
    pub cartan: BTreeSet<Root>,
}

impl SubalgebraRootSet {
    pub fn contains(&self, root: &Root) -> bool {
        self.roots.contains(root)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn is_closed(&self, rs: &RootSystem) -> bool {
        self.roots.iter().all(|a| {
            self.roots.iter().all(|b| match rs.root_sum(a, b) {
                Bracket::Root(s) => self.roots.contains(&s),
                _ => true,
            })
        })
    }
}

/// Smallest bracket-closed root set containing `seeds`.
///
/// `[t, g_β] = g_β`, so Cartan elements produced along the way never add
/// root spaces; they are only recorded.
pub fn subalgebra_closure<I>(rs: &RootSystem, seeds: I) -> SubalgebraRootSet
where
    I: IntoIterator<Item = Root>,
{
    let mut members: Vec<Root> = Vec::new();
    let mut seen: HashSet<Root> = HashSet::new();
    for s in seeds {
        debug_assert!(rs.contains(s.coords()), "seed {s} is not a root");
        if seen.insert(s.clone()) {
            members.push(s);
        }
    }
    let mut k = 0;
    while k < members.len() {
        for j in 0..=k {
            if let Bracket::Root(s) = rs.root_sum(&members[k], &members[j]) {
                if seen.insert(s.clone()) {
                    members.push(s);
                }
            }
        }
        k += 1;
    }
    let cartan = members
        .iter()
        .filter(|r| r.is_positive() && seen.contains(&r.neg()))
        .cloned()
        .collect();
    SubalgebraRootSet {
        roots: members.into_iter().collect(),
        cartan,
    }
}

const GENERATES: &str = "g^1 generates g^+";
const LEVEL_AT_LEAST_3: &str = "level >= 3";

/// The subalgebra generated by `g^{±k}`, `k >= 2`, contains `g^{±1}` when
/// `g^1` generates `g^+` and the level is at least three.
pub fn verify_high_degree_closure(
    rs: &RootSystem,
    element: &GradingElement,
) -> Result<VerdictReport, GradingError> {
    let dec = grade(rs, element)?;
    let seeds = dec
        .degrees()
        .filter(|(k, _)| k.abs() >= 2)
        .flat_map(|(_, roots)| roots.iter().cloned());
    let closure = subalgebra_closure(rs, seeds);
    let missing: Vec<Root> = dec
        .roots_of_degree(1)
        .iter()
        .chain(dec.roots_of_degree(-1))
        .filter(|r| !closure.contains(r))
        .cloned()
        .collect();
    let report = VerdictReport::new(
        "high_degree_closure",
        vec![
            hyp(GENERATES, dec.generates_criterion()),
            hyp(LEVEL_AT_LEAST_3, dec.level() >= 3),
        ],
        Status::from_bool(missing.is_empty()),
    );
    Ok(if missing.is_empty() {
        report
    } else {
        report.with_witness(Witness::MissingRoots { roots: missing })
    })
}

/// Degree-one roots `a, b, c` with `a + b` and `a + b + c` roots, so that
/// `[g_{a+b+c}, g_{-a-b}] = g_c` is a nonzero element of `[g^{-2}, g^3]`
/// inside `g^1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BracketWitness {
    pub roots: [Root; 3],
    pub sum: Root,
    /// All three roots are simple.
    pub all_simple: bool,
}

impl BracketWitness {
    pub fn to_witness(&self) -> Witness {
        Witness::BracketTriple {
            roots: self.roots.clone(),
            sum: self.sum.clone(),
            all_simple: self.all_simple,
        }
    }
}

/// Search for a [`BracketWitness`]: simple roots first, in index order, then
/// arbitrary degree-one roots when no simple triple exists (possible when
/// some simple roots sit in degree zero).
pub fn find_bracket_witness(
    rs: &RootSystem,
    element: &GradingElement,
) -> Result<BracketWitness, GradingError> {
    let dec = grade(rs, element)?;
    if !dec.generates_criterion() {
        return Err(GradingError::HypothesisFailed(format!(
            "{GENERATES} (grading element {element} has an entry >= 2)"
        )));
    }
    if dec.level() < 3 {
        return Err(GradingError::HypothesisFailed(format!(
            "{LEVEL_AT_LEAST_3} (level is {})",
            dec.level()
        )));
    }
    let simple: Vec<Root> = rs
        .simple_roots()
        .filter(|b| dec.degree(b) == 1)
        .collect();
    if let Some(w) = search_triple(rs, &simple, true) {
        return Ok(w);
    }
    let degree_one: Vec<Root> = dec
        .roots_of_degree(1)
        .iter()
        .filter(|r| r.is_positive())
        .cloned()
        .collect();
    search_triple(rs, &degree_one, false).ok_or_else(|| {
        GradingError::HypothesisFailed("no degree-three bracket witness exists".into())
    })
}

fn search_triple(rs: &RootSystem, pool: &[Root], all_simple: bool) -> Option<BracketWitness> {
    for a in pool {
        for b in pool {
            let Bracket::Root(ab) = rs.root_sum(a, b) else {
                continue;
            };
            for c in pool {
                let Bracket::Root(abc) = rs.root_sum(&ab, c) else {
                    continue;
                };
                // the bracket the witness certifies
                if rs.root_sum(&abc, &ab.neg()) == Bracket::Root(c.clone()) {
                    return Some(BracketWitness {
                        roots: [a.clone(), b.clone(), c.clone()],
                        sum: abc,
                        all_simple,
                    });
                }
            }
        }
    }
    None
}

/// If `g^1` generates `g^+`, the level is at least three and `h^k = g^k` for
/// all `|k| >= 2`, then `h^+ = g^+`.
pub fn verify_positive_part_recovery(
    rs: &RootSystem,
    element: &GradingElement,
    h: &SubalgebraRootSet,
) -> Result<VerdictReport, GradingError> {
    let dec = grade(rs, element)?;
    let high_degrees_agree = dec
        .degrees()
        .filter(|(k, _)| k.abs() >= 2)
        .all(|(_, roots)| roots.iter().all(|r| h.contains(r)));
    let missing: Vec<Root> = dec
        .positive_part()
        .into_iter()
        .filter(|r| !h.contains(r))
        .collect();
    let report = VerdictReport::new(
        "positive_part_recovery",
        vec![
            hyp("h closed under bracket", h.is_closed(rs)),
            hyp(GENERATES, dec.generates_criterion()),
            hyp(LEVEL_AT_LEAST_3, dec.level() >= 3),
            hyp("h^k = g^k for |k| >= 2", high_degrees_agree),
        ],
        Status::from_bool(missing.is_empty()),
    );
    Ok(if missing.is_empty() {
        report
    } else {
        report.with_witness(Witness::MissingRoots { roots: missing })
    })
}

/// Closure of all roots of degree `|k| >= 2`.
pub fn high_degree_subalgebra(dec: &GradedDecomposition<'_>) -> SubalgebraRootSet {
    subalgebra_closure(
        dec.root_system(),
        dec.degrees()
            .filter(|(k, _)| k.abs() >= 2)
            .flat_map(|(_, roots)| roots.iter().cloned()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_system;

    fn rs(name: &str) -> RootSystem {
        build_root_system(name.parse().unwrap()).unwrap()
    }

    fn e(v: &[i64]) -> GradingElement {
        GradingElement::new(v.to_vec()).unwrap()
    }

    fn roots(v: &[&[i64]]) -> BTreeSet<Root> {
        v.iter().map(|c| Root::new(c.to_vec())).collect()
    }

    #[test]
    fn a2_first_simple_root_grading() {
        let a2 = rs("A2");
        let dec = grade(&a2, &e(&[1, 0])).unwrap();
        let set = |k| dec.roots_of_degree(k).iter().cloned().collect::<BTreeSet<_>>();
        assert_eq!(set(1), roots(&[&[1, 0], &[1, 1]]));
        assert_eq!(set(0), roots(&[&[0, 1], &[0, -1]]));
        assert_eq!(set(-1), roots(&[&[-1, 0], &[-1, -1]]));
        assert_eq!(dec.dim(0), 4);
        assert_eq!(dec.level(), 1);
        assert!(dec.is_classical());
        assert!(dec.generates_criterion());
    }

    #[test]
    fn zero_grading_is_trivial() {
        let g2 = rs("G2");
        let dec = grade(&g2, &GradingElement::zero(2)).unwrap();
        assert_eq!(dec.roots_of_degree(0).len(), 12);
        assert_eq!(dec.level(), 0);
        assert_eq!(dec.max_degree(), 0);
        assert!(dec.is_classical());
        assert!(dec.generates_oracle());
    }

    #[test]
    fn g2_levels() {
        let g2 = rs("G2");
        let dec = grade(&g2, &e(&[1, 1])).unwrap();
        assert_eq!(dec.level(), 5);
        assert_eq!(dec.roots_of_degree(5), &[Root::new(vec![3, 2])]);
        assert!(!dec.is_classical());
        assert_eq!(grade(&g2, &e(&[0, 1])).unwrap().level(), 2);
        let bad = grade(&g2, &e(&[0, 2])).unwrap();
        assert!(!bad.generates_criterion());
        assert!(!bad.generates_oracle());
    }

    #[test]
    fn a3_all_ones_generates() {
        let a3 = rs("A3");
        let dec = grade(&a3, &e(&[1, 1, 1])).unwrap();
        assert!(dec.generates_criterion());
        assert!(dec.generates_oracle());
        assert_eq!(dec.level(), 3);
    }

    #[test]
    fn negative_entries_and_wrong_length_rejected() {
        assert_eq!(
            GradingElement::new(vec![1, -1]),
            Err(GradingError::NegativeGradingEntry { index: 1, value: -1 })
        );
        assert!(matches!(
            grade(&rs("A2"), &e(&[1])),
            Err(GradingError::DimensionMismatch { .. })
        ));
        assert_eq!("1, 0,2".parse::<GradingElement>().unwrap(), e(&[1, 0, 2]));
        assert_eq!("[1,1]".parse::<GradingElement>().unwrap(), e(&[1, 1]));
        assert!("1,x".parse::<GradingElement>().is_err());
    }

    #[test]
    fn closure_examples() {
        let a2 = rs("A2");
        let all = subalgebra_closure(&a2, [Root::new(vec![1, 0]), Root::new(vec![0, 1])]);
        assert_eq!(all.roots, roots(&[&[1, 0], &[0, 1], &[1, 1]]));
        assert!(all.cartan.is_empty());
        assert!(subalgebra_closure(&a2, []).is_empty());
        let mixed = subalgebra_closure(&a2, [Root::new(vec![1, 1]), Root::new(vec![-1, 0])]);
        assert_eq!(mixed.roots, roots(&[&[1, 1], &[-1, 0], &[0, 1]]));
        let sl2 = subalgebra_closure(&a2, [Root::new(vec![1, 1]), Root::new(vec![-1, -1])]);
        assert_eq!(sl2.cartan, roots(&[&[1, 1]]));
    }

    #[test]
    fn high_degree_closure_examples() {
        let a3 = verify_high_degree_closure(&rs("A3"), &e(&[1, 1, 1])).unwrap();
        assert!(a3.holds());
        let a2 = verify_high_degree_closure(&rs("A2"), &e(&[1, 1])).unwrap();
        assert_eq!(a2.verdict, Status::NotApplicable);
        assert_eq!(a2.failed_hypotheses(), vec![LEVEL_AT_LEAST_3]);
        let g2 = verify_high_degree_closure(&rs("G2"), &e(&[1, 1])).unwrap();
        assert!(g2.holds());
    }

    #[test]
    fn bracket_witness_examples() {
        let w = find_bracket_witness(&rs("A3"), &e(&[1, 1, 1])).unwrap();
        assert_eq!(
            w.roots,
            [
                Root::new(vec![1, 0, 0]),
                Root::new(vec![0, 1, 0]),
                Root::new(vec![0, 0, 1])
            ]
        );
        assert!(w.all_simple);
        assert!(matches!(
            find_bracket_witness(&rs("A2"), &e(&[1, 1])),
            Err(GradingError::HypothesisFailed(_))
        ));
        let b3 = rs("B3");
        let w = find_bracket_witness(&b3, &e(&[1, 1, 1])).unwrap();
        assert!(b3.contains(w.sum.coords()));
        assert_eq!(w.sum, w.roots[0].add(&w.roots[1]).add(&w.roots[2]));
    }

    #[test]
    fn witness_falls_back_to_non_simple_roots() {
        // degree-one simple roots β1, β3, β5 are pairwise orthogonal
        let a5 = rs("A5");
        let w = find_bracket_witness(&a5, &e(&[1, 0, 1, 0, 1])).unwrap();
        assert!(!w.all_simple);
        let dec = grade(&a5, &e(&[1, 0, 1, 0, 1])).unwrap();
        assert!(w.roots.iter().all(|r| dec.degree(r) == 1));
        assert_eq!(dec.degree(&w.sum), 3);
    }

    #[test]
    fn positive_part_recovery_examples() {
        let a3 = rs("A3");
        let el = e(&[1, 1, 1]);
        let dec = grade(&a3, &el).unwrap();
        let h = high_degree_subalgebra(&dec);
        let report = verify_positive_part_recovery(&a3, &el, &h).unwrap();
        assert!(report.hypotheses.iter().all(|h| h.status == Status::Holds));
        assert!(report.holds());

        let everything = subalgebra_closure(&a3, a3.roots());
        assert_eq!(
            verify_positive_part_recovery(&a3, &el, &everything)
                .unwrap()
                .conclusion,
            Status::Holds
        );

        let a2 = rs("A2");
        let el = e(&[1, 1]);
        let h = high_degree_subalgebra(&grade(&a2, &el).unwrap());
        assert_eq!(h.roots, roots(&[&[1, 1], &[-1, -1]]));
        let report = verify_positive_part_recovery(&a2, &el, &h).unwrap();
        assert_eq!(report.verdict, Status::NotApplicable);
        assert_eq!(report.conclusion, Status::Fails);
    }

    #[test]
    fn unclosed_h_is_not_applicable() {
        let a2 = rs("A2");
        let h = SubalgebraRootSet {
            roots: roots(&[&[1, 0], &[0, 1]]),
            cartan: BTreeSet::new(),
        };
        let report = verify_positive_part_recovery(&a2, &e(&[1, 1]), &h).unwrap();
        assert_eq!(report.hypotheses[0].status, Status::Fails);
        assert_eq!(report.verdict, Status::NotApplicable);
    }
}

//! Root systems of simple Lie algebras, enumerated from Cartan matrices.
//!
//! Roots live in the simple-root basis as integer vectors. No Euclidean
//! realisation is ever built; everything downstream only needs root addition
//! and pairings against grading elements.
//!
//! Cartan matrices follow the convention `a[i][j] = <β_i^∨, β_j>`, so the
//! custom matrix `[[2,-3],[-1,2]]` is G2 with `β_1` short and highest root
//! `3β_1 + 2β_2`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the number of positive roots produced for a custom matrix.
pub const DEFAULT_CLOSURE_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("not a Cartan matrix of a simple Lie algebra: {0}")]
    NonCartanMatrix(String),
    #[error("root closure exceeded the budget of {budget} positive roots (matrix is not of finite type?)")]
    ClosureBudgetExceeded { budget: usize },
    #[error("dimension mismatch: expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown simple type `{0}` (expected A1.., B2.., C2.., D3.., E6-E8, F4, G2)")]
    UnknownType(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SimpleType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl SimpleType {
    pub const ALL: [SimpleType; 7] = [
        SimpleType::A,
        SimpleType::B,
        SimpleType::C,
        SimpleType::D,
        SimpleType::E,
        SimpleType::F,
        SimpleType::G,
    ];

    pub fn letter(self) -> char {
        match self {
            SimpleType::A => 'A',
            SimpleType::B => 'B',
            SimpleType::C => 'C',
            SimpleType::D => 'D',
            SimpleType::E => 'E',
            SimpleType::F => 'F',
            SimpleType::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.letter() == c.to_ascii_uppercase())
    }

    /// Whether `rank` gives a simple algebra of this type.
    pub fn admits_rank(self, rank: usize) -> bool {
        match self {
            SimpleType::A => rank >= 1,
            SimpleType::B | SimpleType::C => rank >= 2,
            SimpleType::D => rank >= 3,
            SimpleType::E => (6..=8).contains(&rank),
            SimpleType::F => rank == 4,
            SimpleType::G => rank == 2,
        }
    }

    /// Number of positive roots, from the classification.
    pub fn positive_root_count(self, rank: usize) -> Option<usize> {
        if !self.admits_rank(rank) {
            return None;
        }
        let n = rank;
        Some(match self {
            SimpleType::A => n * (n + 1) / 2,
            SimpleType::B | SimpleType::C => n * n,
            SimpleType::D => n * (n - 1),
            SimpleType::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            SimpleType::F => 24,
            SimpleType::G => 6,
        })
    }
}

/// Every named simple type of rank at most `max_rank`, in (letter, rank) order.
pub fn named_types_up_to(max_rank: usize) -> Vec<CartanSpec> {
    let mut out = Vec::new();
    for kind in SimpleType::ALL {
        for rank in 1..=max_rank {
            if kind.admits_rank(rank) {
                out.push(CartanSpec::Named { kind, rank });
            }
        }
    }
    out
}

/// Input describing a simple root system: a named type or an explicit matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CartanSpec {
    Named { kind: SimpleType, rank: usize },
    Custom(Vec<Vec<i64>>),
}

impl CartanSpec {
    pub fn named(kind: SimpleType, rank: usize) -> Result<Self, RootError> {
        if kind.admits_rank(rank) {
            Ok(CartanSpec::Named { kind, rank })
        } else {
            Err(RootError::UnknownType(format!("{}{}", kind.letter(), rank)))
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            CartanSpec::Named { rank, .. } => *rank,
            CartanSpec::Custom(m) => m.len(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            CartanSpec::Named { kind, rank } => format!("{}{}", kind.letter(), rank),
            CartanSpec::Custom(m) => {
                let rows: Vec<String> = m
                    .iter()
                    .map(|r| {
                        let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                        format!("[{}]", cells.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            }
        }
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        match self {
            CartanSpec::Custom(m) => m.clone(),
            CartanSpec::Named { kind, rank } => standard_cartan(*kind, *rank),
        }
    }
}

impl fmt::Display for CartanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for CartanSpec {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = chars
            .next()
            .and_then(SimpleType::from_letter)
            .ok_or_else(|| RootError::UnknownType(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| RootError::UnknownType(s.to_string()))?;
        CartanSpec::named(kind, rank).map_err(|_| RootError::UnknownType(s.to_string()))
    }
}

/// Standard (Bourbaki-numbered) Cartan matrix, `a[i][j] = <β_i^∨, β_j>`.
fn standard_cartan(kind: SimpleType, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, ij: i64, ji: i64| {
        a[i][j] = ij;
        a[j][i] = ji;
    };
    match kind {
        SimpleType::A => {
            for i in 1..n {
                link(i - 1, i, -1, -1);
            }
        }
        SimpleType::B => {
            for i in 1..n - 1 {
                link(i - 1, i, -1, -1);
            }
            // β_n short
            link(n - 2, n - 1, -1, -2);
        }
        SimpleType::C => {
            for i in 1..n - 1 {
                link(i - 1, i, -1, -1);
            }
            // β_n long
            link(n - 2, n - 1, -2, -1);
        }
        SimpleType::D => {
            for i in 1..n - 1 {
                link(i - 1, i, -1, -1);
            }
            link(n - 3, n - 1, -1, -1);
        }
        SimpleType::E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            link(2, 3, -1, -1);
            for i in 4..n {
                link(i - 1, i, -1, -1);
            }
        }
        SimpleType::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        SimpleType::G => {
            link(0, 1, -3, -1);
        }
    }
    a
}

fn validate_cartan(a: &[Vec<i64>]) -> Result<(), RootError> {
    let n = a.len();
    if n == 0 {
        return Err(RootError::NonCartanMatrix("empty matrix".into()));
    }
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(RootError::NonCartanMatrix(format!(
                "row {i} has length {}, expected {n}",
                row.len()
            )));
        }
        for (j, &x) in row.iter().enumerate() {
            if i == j && x != 2 {
                return Err(RootError::NonCartanMatrix(format!(
                    "diagonal entry ({i},{i}) is {x}, expected 2"
                )));
            }
            if i != j {
                if x > 0 {
                    return Err(RootError::NonCartanMatrix(format!(
                        "off-diagonal entry ({i},{j}) is positive"
                    )));
                }
                if (x == 0) != (a[j][i] == 0) {
                    return Err(RootError::NonCartanMatrix(format!(
                        "entries ({i},{j}) and ({j},{i}) are not simultaneously zero"
                    )));
                }
            }
        }
    }
    // one simple factor only
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && a[i][j] != 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(RootError::NonCartanMatrix(
            "Dynkin diagram is disconnected; pass one simple factor at a time".into(),
        ));
    }
    Ok(())
}

/// A root written in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(Vec<i64>);

impl Root {
    pub fn new(coords: Vec<i64>) -> Self {
        Root(coords)
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `Σ coords_i · values_i`, i.e. the value of this root on a Cartan element
    /// given by its values on the simple roots.
    pub fn pair(&self, values: &[i64]) -> i64 {
        self.0.iter().zip(values).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Result of bracketing two root spaces `[g_a, g_b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracket {
    /// `a + b` is a root; the bracket is that root space.
    Root(Root),
    /// `b = -a`; the bracket lies in the Cartan subalgebra.
    Cartan,
    /// `a + b` is neither a root nor zero.
    Zero,
}

fn height_then_lex(a: &Root, b: &Root) -> Ordering {
    a.height().cmp(&b.height()).then_with(|| a.0.cmp(&b.0))
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    spec: CartanSpec,
    cartan: Vec<Vec<i64>>,
    positive: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    highest: Root,
}

/// Enumerate the positive roots with the default closure budget.
pub fn build_root_system(spec: CartanSpec) -> Result<RootSystem, RootError> {
    build_root_system_with_budget(spec, DEFAULT_CLOSURE_BUDGET)
}

/// Enumerate positive roots by root strings, one height at a time.
///
/// For a positive root `α` and simple root `β_i`, the `β_i`-string through
/// `α` runs from `α - pβ_i` to `α + qβ_i` with `p - q = <α, β_i^∨>`. All roots
/// of smaller height are already known when `α` is processed, so `p` is exact
/// and `α + β_i` is a root iff `q > 0`.
pub fn build_root_system_with_budget(
    spec: CartanSpec,
    budget: usize,
) -> Result<RootSystem, RootError> {
    let cartan = spec.matrix();
    validate_cartan(&cartan)?;
    let r = cartan.len();

    let mut positive: Vec<Root> = (0..r).map(|i| Root::simple(r, i)).collect();
    let mut index: HashMap<Vec<i64>, usize> = positive
        .iter()
        .enumerate()
        .map(|(k, root)| (root.0.clone(), k))
        .collect();
    if positive.len() > budget {
        return Err(RootError::ClosureBudgetExceeded { budget });
    }

    let mut layer: Vec<Root> = positive.clone();
    while !layer.is_empty() {
        let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
        for alpha in &layer {
            for (i, row) in cartan.iter().enumerate() {
                let mut p = 0i64;
                let mut probe = alpha.0.clone();
                loop {
                    probe[i] -= 1;
                    if index.contains_key(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = alpha.0.iter().zip(row).map(|(c, a)| c * a).sum();
                if p - pairing > 0 {
                    let mut up = alpha.0.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        layer.clear();
        for coords in next {
            if index.contains_key(&coords) {
                continue;
            }
            if positive.len() >= budget {
                return Err(RootError::ClosureBudgetExceeded { budget });
            }
            index.insert(coords.clone(), positive.len());
            let root = Root(coords);
            layer.push(root.clone());
            positive.push(root);
        }
    }

    positive.sort_by(height_then_lex);
    let index: HashMap<Vec<i64>, usize> = positive
        .iter()
        .enumerate()
        .map(|(k, root)| (root.0.clone(), k))
        .collect();

    let maximal: Vec<&Root> = positive
        .iter()
        .filter(|root| {
            (0..r).all(|i| {
                let mut up = root.0.clone();
                up[i] += 1;
                !index.contains_key(&up)
            })
        })
        .collect();
    if maximal.len() != 1 {
        return Err(RootError::NonCartanMatrix(format!(
            "expected a unique highest root, found {}",
            maximal.len()
        )));
    }
    let highest = maximal[0].clone();

    Ok(RootSystem {
        spec,
        cartan,
        positive,
        index,
        highest,
    })
}

impl RootSystem {
    pub fn spec(&self) -> &CartanSpec {
        &self.spec
    }

    pub fn label(&self) -> String {
        self.spec.label()
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Positive roots ordered by height, then lexicographically.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn highest_root(&self) -> &Root {
        &self.highest
    }

    pub fn simple_roots(&self) -> impl Iterator<Item = Root> + '_ {
        (0..self.rank()).map(move |i| Root::simple(self.rank(), i))
    }

    /// All roots: the positive ones in order, then their negatives in order.
    pub fn roots(&self) -> impl Iterator<Item = Root> + '_ {
        self.positive
            .iter()
            .cloned()
            .chain(self.positive.iter().map(Root::neg))
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive.len()
    }

    /// Dimension of the Lie algebra: roots plus the Cartan subalgebra.
    pub fn dim(&self) -> usize {
        self.num_roots() + self.rank()
    }

    /// Membership for a vector already known to have the right length.
    pub fn contains(&self, coords: &[i64]) -> bool {
        if coords.len() != self.rank() {
            return false;
        }
        if self.index.contains_key(coords) {
            return true;
        }
        let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
        self.index.contains_key(&neg)
    }

    pub fn is_root(&self, v: &[i64]) -> Result<bool, RootError> {
        if v.len() != self.rank() {
            return Err(RootError::DimensionMismatch {
                expected: self.rank(),
                found: v.len(),
            });
        }
        Ok(self.contains(v))
    }

    /// Position of a positive root in [`positive_roots`](Self::positive_roots).
    pub fn positive_index(&self, root: &Root) -> Option<usize> {
        self.index.get(&root.0).copied()
    }

    /// `[g_a, g_b]` at the level of root spaces.
    pub fn root_sum(&self, a: &Root, b: &Root) -> Bracket {
        debug_assert!(self.contains(&a.0) && self.contains(&b.0));
        let s = a.add(b);
        if s.is_zero() {
            Bracket::Cartan
        } else if self.contains(&s.0) {
            Bracket::Root(s)
        } else {
            Bracket::Zero
        }
    }

    /// `<α, β_i^∨>` for the `i`-th simple coroot.
    pub fn coroot_pairing(&self, alpha: &Root, i: usize) -> i64 {
        alpha.0.iter().zip(&self.cartan[i]).map(|(c, a)| c * a).sum()
    }
}

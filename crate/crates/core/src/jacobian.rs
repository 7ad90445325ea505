//! Graded Jacobian rings `R = S / J_F` of smooth projective hypersurfaces and
//! the multiplication maps that model the infinitesimal period relation.
//!
//! `X = {F = 0} ⊂ P^{n+1}` has `n + 2` variables. Under the residue
//! isomorphism the primitive piece `H^{p,n-p}` is `R^{e_p}` with
//! `e_p = (n - p + 1)d - (n + 2)`, the tangent space to the family is `R^d`,
//! and the differential of the period map is multiplication
//! `R^d ⊗ R^{e_p} → R^{e_p + d} = R^{e_{p-1}}`.
//!
//! Each graded piece is computed by exact elimination of the degree-`m` part
//! of the Jacobian ideal. Columns are the monomials of `S^m` in descending
//! lexicographic order; the basis of `R^m` is the set of non-pivot monomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{axpy, rank_of_rows, sparse_from_entries, Echelon, SparseVec};
use crate::verdict::{hyp, MatrixEntry, Status, VerdictReport, Witness};

pub type Exponents = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JacobianError {
    #[error("invalid hypersurface: {0}")]
    InvalidSpec(String),
    #[error(
        "singularity suspected: dim R^{degree} is {found} but a smooth hypersurface has {expected}"
    )]
    SingularitySuspected {
        degree: usize,
        expected: u64,
        found: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// A term `coeff · x^exponents`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub exponents: Exponents,
    pub coeff: BigRational,
}

/// Wire form of a [`Term`]: `{"exponents": [..], "coeff": "p/q"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermInput {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

impl TryFrom<TermInput> for Term {
    type Error = JacobianError;

    fn try_from(t: TermInput) -> Result<Self, Self::Error> {
        let coeff: BigRational = t.coeff.trim().parse().map_err(|_| {
            JacobianError::InvalidSpec(format!("`{}` is not a rational number", t.coeff))
        })?;
        Ok(Term {
            exponents: t.exponents,
            coeff,
        })
    }
}

impl From<&Term> for TermInput {
    fn from(t: &Term) -> Self {
        TermInput {
            exponents: t.exponents.clone(),
            coeff: t.coeff.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Form {
    /// `Σ x_i^d`
    Fermat,
    Explicit(Vec<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypersurfaceSpec {
    n: usize,
    d: usize,
    form: Form,
}

impl HypersurfaceSpec {
    pub fn fermat(n: usize, d: usize) -> Result<Self, JacobianError> {
        check_nd(n, d)?;
        Ok(HypersurfaceSpec {
            n,
            d,
            form: Form::Fermat,
        })
    }

    /// Explicit `F`; like terms are merged and zero terms dropped.
    pub fn explicit(n: usize, d: usize, terms: Vec<Term>) -> Result<Self, JacobianError> {
        check_nd(n, d)?;
        for t in &terms {
            if t.exponents.len() != n + 2 {
                return Err(JacobianError::InvalidSpec(format!(
                    "exponent vector {:?} has length {}, expected {}",
                    t.exponents,
                    t.exponents.len(),
                    n + 2
                )));
            }
            let deg: u32 = t.exponents.iter().sum();
            if deg as usize != d {
                return Err(JacobianError::InvalidSpec(format!(
                    "term {:?} has degree {deg}, expected {d}",
                    t.exponents
                )));
            }
        }
        let mut merged: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        for t in terms {
            *merged.entry(t.exponents).or_insert_with(BigRational::zero) += t.coeff;
        }
        let terms: Vec<Term> = merged
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exponents, coeff)| Term { exponents, coeff })
            .collect();
        if terms.is_empty() {
            return Err(JacobianError::InvalidSpec("F is identically zero".into()));
        }
        Ok(HypersurfaceSpec {
            n,
            d,
            form: Form::Explicit(terms),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn num_vars(&self) -> usize {
        self.n + 2
    }

    /// Degree of the top nonzero piece of `R`.
    pub fn socle_degree(&self) -> usize {
        (self.n + 2) * (self.d - 2)
    }

    pub fn terms(&self) -> Vec<Term> {
        match &self.form {
            Form::Explicit(t) => t.clone(),
            Form::Fermat => (0..self.num_vars())
                .map(|i| {
                    let mut e = vec![0; self.num_vars()];
                    e[i] = self.d as u32;
                    Term {
                        exponents: e,
                        coeff: BigRational::one(),
                    }
                })
                .collect(),
        }
    }

    fn partials(&self) -> Vec<Vec<(Exponents, BigRational)>> {
        let terms = self.terms();
        (0..self.num_vars())
            .map(|i| {
                terms
                    .iter()
                    .filter(|t| t.exponents[i] > 0)
                    .map(|t| {
                        let mut e = t.exponents.clone();
                        let k = e[i];
                        e[i] -= 1;
                        (e, &t.coeff * BigRational::from_integer(BigInt::from(k)))
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for HypersurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.form {
            Form::Fermat => "Fermat",
            Form::Explicit(_) => "explicit",
        };
        write!(f, "{kind} hypersurface n={} d={}", self.n, self.d)
    }
}

fn check_nd(n: usize, d: usize) -> Result<(), JacobianError> {
    if n < 1 {
        return Err(JacobianError::InvalidSpec(format!("n = {n}, need n >= 1")));
    }
    if d < 2 {
        return Err(JacobianError::InvalidSpec(format!("d = {d}, need d >= 2")));
    }
    Ok(())
}

/// All monomials of degree `degree` in `nvars` variables, descending lex.
pub fn monomials(nvars: usize, degree: usize) -> Vec<Exponents> {
    fn rec(nvars: usize, left: u32, prefix: &mut Exponents, out: &mut Vec<Exponents>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(nvars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(nvars, degree as u32, &mut Vec::with_capacity(nvars), &mut out);
    out
}

fn add_exponents(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Coefficient of `t^m` in `((1 - t^{d-1}) / (1 - t))^{n+2}`, the Hilbert
/// function of the Jacobian ring of a smooth degree-`d` hypersurface.
///
/// Panics if the coefficient does not fit in a `u64`.
pub fn hilbert_dim(n: usize, d: usize, m: usize) -> u64 {
    assert!(d >= 2, "degree must be at least 2");
    // (1 + t + ... + t^{d-2})^{n+2}, truncated at t^m
    let mut coeffs: Vec<u128> = vec![0; m + 1];
    coeffs[0] = 1;
    for _ in 0..n + 2 {
        let mut next = vec![0u128; m + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..=(d - 2) {
                if i + j > m {
                    break;
                }
                next[i + j] = next[i + j]
                    .checked_add(c)
                    .expect("Hilbert coefficient overflow");
            }
        }
        coeffs = next;
    }
    u64::try_from(coeffs[m]).expect("Hilbert coefficient does not fit in u64")
}

/// Residue degree `e_p = (n - p + 1)d - (n + 2)` housing `H^{p,n-p}_prim`,
/// or `None` when it is negative (the piece vanishes).
pub fn residue_degree(n: usize, d: usize, p: usize) -> Option<usize> {
    let e = (n as i64 - p as i64 + 1) * d as i64 - (n as i64 + 2);
    usize::try_from(e).ok()
}

/// `h^{p,n-p}_prim` for `p = n, n-1, …, 0`.
pub fn hodge_numbers_prim(n: usize, d: usize) -> Vec<u64> {
    (0..=n)
        .rev()
        .map(|p| residue_degree(n, d, p).map_or(0, |e| hilbert_dim(n, d, e)))
        .collect()
}

/// Monomials of degree `m` with every exponent at most `d - 2`: the basis of
/// `R^m` for the Fermat hypersurface.
pub fn fermat_basis(n: usize, d: usize, m: usize) -> Vec<Exponents> {
    monomials(n + 2, m)
        .into_iter()
        .filter(|e| e.iter().all(|&x| x as usize + 2 <= d))
        .collect()
}

/// `S^m` together with the elimination of `J^m`.
#[derive(Debug)]
pub struct GradedPiece {
    degree: usize,
    monomials: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
    basis: Vec<usize>,
    basis_pos: Vec<Option<usize>>,
    normal_forms: Vec<Option<SparseVec>>,
}

impl GradedPiece {
    fn empty(degree: usize) -> Self {
        GradedPiece {
            degree,
            monomials: Vec::new(),
            index: HashMap::new(),
            basis: Vec::new(),
            basis_pos: Vec::new(),
            normal_forms: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    /// Basis monomials of `R^m`, in order.
    pub fn basis(&self) -> impl ExactSizeIterator<Item = &Exponents> + '_ {
        self.basis.iter().map(move |&i| &self.monomials[i])
    }

    pub fn basis_monomial(&self, pos: usize) -> &Exponents {
        &self.monomials[self.basis[pos]]
    }

    /// Coordinates of the class of `x^e` in the basis. `e` must have this
    /// piece's degree; on pieces above the socle everything is zero.
    pub fn normal_form(&self, e: &[u32]) -> SparseVec {
        let Some(&idx) = self.index.get(e) else {
            debug_assert!(self.monomials.is_empty(), "monomial of the wrong degree");
            return Vec::new();
        };
        match self.basis_pos[idx] {
            Some(pos) => vec![(pos, BigRational::one())],
            None => self.normal_forms[idx].clone().unwrap_or_default(),
        }
    }
}

type PieceSlot = OnceLock<Result<Arc<GradedPiece>, JacobianError>>;

/// Graded Jacobian ring with a per-degree cache.
///
/// Pieces are built on first use; concurrent first uses of the same degree
/// block on a single build.
pub struct JacobianRing {
    spec: HypersurfaceSpec,
    partials: Vec<Vec<(Exponents, BigRational)>>,
    check_hilbert: bool,
    pieces: Vec<PieceSlot>,
}

impl fmt::Debug for JacobianRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JacobianRing")
            .field("spec", &self.spec)
            .field("check_hilbert", &self.check_hilbert)
            .finish()
    }
}

impl JacobianRing {
    /// Ring whose pieces are checked against the smooth Hilbert function;
    /// a mismatch surfaces as [`JacobianError::SingularitySuspected`].
    pub fn new(spec: HypersurfaceSpec) -> Self {
        Self::build(spec, true)
    }

    /// Ring that reports whatever elimination produces, with no comparison
    /// against the Hilbert function.
    pub fn new_unchecked(spec: HypersurfaceSpec) -> Self {
        Self::build(spec, false)
    }

    pub fn fermat(n: usize, d: usize) -> Result<Self, JacobianError> {
        Ok(Self::new(HypersurfaceSpec::fermat(n, d)?))
    }

    fn build(spec: HypersurfaceSpec, check_hilbert: bool) -> Self {
        let partials = spec.partials();
        let pieces = (0..=spec.socle_degree()).map(|_| OnceLock::new()).collect();
        JacobianRing {
            spec,
            partials,
            check_hilbert,
            pieces,
        }
    }

    pub fn spec(&self) -> &HypersurfaceSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn d(&self) -> usize {
        self.spec.d
    }

    pub fn socle_degree(&self) -> usize {
        self.spec.socle_degree()
    }

    /// `R^m` with its monomial basis.
    pub fn graded_piece(&self, m: usize) -> Result<Arc<GradedPiece>, JacobianError> {
        if m > self.socle_degree() {
            return Ok(Arc::new(GradedPiece::empty(m)));
        }
        self.pieces[m].get_or_init(|| self.eliminate(m)).clone()
    }

    pub fn dim(&self, m: usize) -> Result<usize, JacobianError> {
        Ok(self.graded_piece(m)?.dim())
    }

    /// Build every piece up to the socle; succeeds iff all dimensions match
    /// the smooth Hilbert function (for a checked ring).
    pub fn check_all_degrees(&self) -> Result<Vec<usize>, JacobianError> {
        (0..=self.socle_degree()).map(|m| self.dim(m)).collect()
    }

    fn eliminate(&self, m: usize) -> Result<Arc<GradedPiece>, JacobianError> {
        let nvars = self.spec.num_vars();
        let d = self.spec.d;
        let monos = monomials(nvars, m);
        let index: HashMap<Exponents, usize> = monos
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let mut ech = Echelon::new(monos.len());
        if m + 1 >= d {
            for shift in monomials(nvars, m + 1 - d) {
                for partial in &self.partials {
                    let row = sparse_from_entries(
                        partial
                            .iter()
                            .map(|(e, c)| (index[&add_exponents(e, &shift)], c.clone())),
                    );
                    if !row.is_empty() {
                        ech.insert(row);
                    }
                }
            }
        }
        let mut basis = Vec::new();
        let mut basis_pos = vec![None; monos.len()];
        for (i, slot) in basis_pos.iter_mut().enumerate() {
            if !ech.is_pivot(i) {
                *slot = Some(basis.len());
                basis.push(i);
            }
        }
        if self.check_hilbert {
            let expected = hilbert_dim(self.spec.n, d, m);
            if basis.len() as u64 != expected {
                return Err(JacobianError::SingularitySuspected {
                    degree: m,
                    expected,
                    found: basis.len(),
                });
            }
        }
        let mut normal_forms = vec![None; monos.len()];
        for col in ech.pivot_columns() {
            let residue = ech.reduce(&[(col, BigRational::one())]);
            let coords: SparseVec = residue
                .into_iter()
                .map(|(c, x)| (basis_pos[c].expect("residue lies on basis columns"), x))
                .collect();
            normal_forms[col] = Some(coords);
        }
        Ok(Arc::new(GradedPiece {
            degree: m,
            monomials: monos,
            index,
            basis,
            basis_pos,
            normal_forms,
        }))
    }

    /// Multiply a class in `R^a` (basis coordinates) by the monomial `x^theta`.
    pub fn multiply_by_monomial(
        &self,
        a: usize,
        v: &[(usize, BigRational)],
        theta: &[u32],
    ) -> Result<SparseVec, JacobianError> {
        let t: usize = theta.iter().map(|&x| x as usize).sum();
        let source = self.graded_piece(a)?;
        let target = self.graded_piece(a + t)?;
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (j, c) in v {
            let prod = add_exponents(source.basis_monomial(*j), theta);
            axpy(&mut acc, c, &target.normal_form(&prod));
        }
        Ok(acc.into_iter().collect())
    }

    /// Multiply a class in `R^a` by an arbitrary polynomial of degree `t`.
    pub fn multiply_by_polynomial(
        &self,
        a: usize,
        v: &[(usize, BigRational)],
        poly: &[Term],
    ) -> Result<SparseVec, JacobianError> {
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        for term in poly {
            let part = self.multiply_by_monomial(a, v, &term.exponents)?;
            axpy(&mut acc, &term.coeff, &part);
        }
        Ok(acc.into_iter().collect())
    }

    /// Ranks of `V_1, …, V_steps` where `V_0 = span(start)` ⊂ `R^a` and
    /// `V_{j+1} = R^d · V_j`. This is the image of `Sym^j R^d ⊗ V_0`.
    pub fn iterated_image_ranks(
        &self,
        a: usize,
        start: Vec<SparseVec>,
        steps: usize,
    ) -> Result<Vec<usize>, JacobianError> {
        let d = self.d();
        let thetas: Vec<Exponents> = self.graded_piece(d)?.basis().cloned().collect();
        let mut current = start;
        let mut ranks = Vec::with_capacity(steps);
        for step in 1..=steps {
            let source_degree = a + (step - 1) * d;
            let target = self.graded_piece(source_degree + d)?;
            let mut ech = Echelon::new(target.dim());
            if target.dim() > 0 {
                'fill: for v in &current {
                    for theta in &thetas {
                        ech.insert(self.multiply_by_monomial(source_degree, v, theta)?);
                        if ech.is_full() {
                            break 'fill;
                        }
                    }
                }
            }
            ranks.push(ech.rank());
            current = ech.rows().cloned().collect();
        }
        Ok(ranks)
    }

    fn unit_vectors(&self, a: usize) -> Result<Vec<SparseVec>, JacobianError> {
        Ok((0..self.dim(a)?)
            .map(|j| vec![(j, BigRational::one())])
            .collect())
    }

    /// Residue degree of `H^{p,n-p}` when that piece is nonzero.
    fn hodge_degree(&self, p: usize) -> Result<Option<usize>, JacobianError> {
        match residue_degree(self.n(), self.d(), p) {
            Some(e) if self.dim(e)? > 0 => Ok(Some(e)),
            _ => Ok(None),
        }
    }

    /// `dim R^{e_p}` for `p = n, …, 0`, by elimination.
    pub fn hodge_numbers_by_elimination(&self) -> Result<Vec<usize>, JacobianError> {
        (0..=self.n())
            .rev()
            .map(|p| match residue_degree(self.n(), self.d(), p) {
                Some(e) => self.dim(e),
                None => Ok(0),
            })
            .collect()
    }
}

/// `R^d ⊗ R^a → R^{a+d}` in the monomial bases; row `θ · source_dim + ω`
/// is the image of `θ ⊗ ω`.
#[derive(Debug, Clone)]
pub struct MultiplicationMap {
    pub theta_degree: usize,
    pub source_degree: usize,
    pub target_degree: usize,
    pub theta_dim: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rows: Vec<SparseVec>,
    pub rank: usize,
    pub is_nonzero: bool,
    pub is_surjective: bool,
}

pub fn mult_map(jr: &JacobianRing, a: usize) -> Result<MultiplicationMap, JacobianError> {
    let d = jr.d();
    let thetas = jr.graded_piece(d)?;
    let source = jr.graded_piece(a)?;
    let target = jr.graded_piece(a + d)?;
    let mut rows = Vec::with_capacity(thetas.dim() * source.dim());
    for theta in thetas.basis() {
        for omega in source.basis() {
            rows.push(target.normal_form(&add_exponents(theta, omega)));
        }
    }
    let rank = rank_of_rows(target.dim(), rows.iter().cloned());
    Ok(MultiplicationMap {
        theta_degree: d,
        source_degree: a,
        target_degree: a + d,
        theta_dim: thetas.dim(),
        source_dim: source.dim(),
        target_dim: target.dim(),
        rows,
        rank,
        is_nonzero: rank > 0,
        is_surjective: rank == target.dim(),
    })
}

/// First nonzero entry of `R^d ⊗ R^a → R^{a+d}`, scanning basis pairs.
fn first_nonzero_entry(
    jr: &JacobianRing,
    p: usize,
    a: usize,
) -> Result<Option<MatrixEntry>, JacobianError> {
    let d = jr.d();
    let thetas = jr.graded_piece(d)?;
    let source = jr.graded_piece(a)?;
    let target = jr.graded_piece(a + d)?;
    for theta in thetas.basis() {
        for omega in source.basis() {
            let nf = target.normal_form(&add_exponents(theta, omega));
            if let Some((pos, value)) = nf.first() {
                return Ok(Some(MatrixEntry {
                    p,
                    source_degree: a,
                    target_degree: a + d,
                    theta: theta.clone(),
                    omega: omega.clone(),
                    target: target.basis_monomial(*pos).clone(),
                    value: value.to_string(),
                }));
            }
        }
    }
    Ok(None)
}

/// Every map `R^d ⊗ R^{e_p} → R^{e_{p-1}}` with both sides nonzero is
/// nonzero, each exhibited by one explicit nonzero matrix entry.
pub fn macaulay_check(jr: &JacobianRing) -> Result<VerdictReport, JacobianError> {
    let (n, d) = (jr.n(), jr.d());
    let mut entries = Vec::new();
    let mut failing = Vec::new();
    let mut notes = Vec::new();
    for p in (1..=n).rev() {
        let Some(a) = residue_degree(n, d, p) else {
            notes.push(format!("p={p}: H^{{{p},{}}} vanishes, skipped", n - p));
            continue;
        };
        let (src, tgt) = (jr.dim(a)?, jr.dim(a + d)?);
        if src == 0 || tgt == 0 || jr.dim(d)? == 0 {
            notes.push(format!(
                "p={p}: dim R^{a} = {src}, dim R^{} = {tgt}, skipped",
                a + d
            ));
            continue;
        }
        match first_nonzero_entry(jr, p, a)? {
            Some(e) => entries.push(e),
            None => failing.push(p),
        }
    }
    let mut report = VerdictReport::new(
        "macaulay_nonvanishing",
        vec![hyp("Jacobian ring dimensions match a smooth hypersurface", true)],
        Status::from_bool(failing.is_empty()),
    )
    .with_witness(Witness::NonzeroEntries { entries });
    if !failing.is_empty() {
        report = report.with_note(format!("zero maps at p = {failing:?}"));
    }
    for note in notes {
        report = report.with_note(note);
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CouplingLength {
    pub value: usize,
    /// `dim` of the image of `Sym^m R^d ⊗ R^{e_n}`, for `m = 1..=n`.
    pub ranks: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Largest `m <= n` with `Sym^m R^d ⊗ H^{n,0} → H^{n-m,m}` nonzero.
pub fn coupling_length(jr: &JacobianRing) -> Result<CouplingLength, JacobianError> {
    let n = jr.n();
    let Some(e0) = jr.hodge_degree(n)? else {
        return Ok(CouplingLength {
            value: 0,
            ranks: Vec::new(),
            note: Some("NoTopForm: h^{n,0}_prim = 0".into()),
        });
    };
    let ranks = jr.iterated_image_ranks(e0, jr.unit_vectors(e0)?, n)?;
    let value = ranks.iter().take_while(|&&r| r > 0).count();
    Ok(CouplingLength {
        value,
        ranks,
        note: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateTerm {
    pub p: usize,
    pub source_degree: usize,
    pub target_degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub k: usize,
    pub nonzero: bool,
    /// What dimension counting alone predicts: some `p` has both sides nonzero.
    pub predicted: bool,
    pub terms: Vec<CertificateTerm>,
}

/// Certify `g^{-k,k} ≠ 0` through `Sym^k R^d ⊗ R^{e_p} → R^{e_p + kd}`.
pub fn g_nonvanishing_certificate(
    jr: &JacobianRing,
    k: usize,
) -> Result<Certificate, JacobianError> {
    if k == 0 {
        return Err(JacobianError::DimensionMismatch("k must be at least 1".into()));
    }
    let (n, d) = (jr.n(), jr.d());
    let mut terms = Vec::new();
    for p in (0..=n).rev() {
        let Some(a) = residue_degree(n, d, p) else {
            continue;
        };
        let (src, tgt) = (jr.dim(a)?, jr.dim(a + k * d)?);
        if src == 0 || tgt == 0 {
            continue;
        }
        let ranks = jr.iterated_image_ranks(a, jr.unit_vectors(a)?, k)?;
        terms.push(CertificateTerm {
            p,
            source_degree: a,
            target_degree: a + k * d,
            source_dim: src,
            target_dim: tgt,
            rank: *ranks.last().expect("k >= 1"),
        });
    }
    Ok(Certificate {
        k,
        nonzero: terms.iter().any(|t| t.rank > 0),
        predicted: !terms.is_empty(),
        terms,
    })
}

/// One `p → p-1` block of the tangent action: for each basis monomial `θ` of
/// `R^d`, the matrix of multiplication `R^{e_p} → R^{e_p + d}` by columns.
#[derive(Debug, Clone)]
pub struct TangentBlock {
    pub p: usize,
    pub source_degree: usize,
    pub target_degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub maps: Vec<Vec<SparseVec>>,
}

/// Image `𝒜` of `R^d` acting on `⊕_p R^{e_p}`.
#[derive(Debug, Clone)]
pub struct TangentImage {
    pub theta_dim: usize,
    pub blocks: Vec<TangentBlock>,
}

impl TangentImage {
    pub fn build(jr: &JacobianRing) -> Result<Self, JacobianError> {
        let (n, d) = (jr.n(), jr.d());
        let thetas = jr.graded_piece(d)?;
        let mut blocks = Vec::new();
        for p in (1..=n).rev() {
            let Some(a) = residue_degree(n, d, p) else {
                continue;
            };
            let source = jr.graded_piece(a)?;
            if source.dim() == 0 {
                continue;
            }
            let target = jr.graded_piece(a + d)?;
            let maps = thetas
                .basis()
                .map(|theta| {
                    source
                        .basis()
                        .map(|omega| target.normal_form(&add_exponents(theta, omega)))
                        .collect()
                })
                .collect();
            blocks.push(TangentBlock {
                p,
                source_degree: a,
                target_degree: a + d,
                source_dim: source.dim(),
                target_dim: target.dim(),
                maps,
            });
        }
        Ok(TangentImage {
            theta_dim: thetas.dim(),
            blocks,
        })
    }
}

fn apply_columns(cols: &[SparseVec], v: &[(usize, BigRational)]) -> SparseVec {
    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (j, c) in v {
        axpy(&mut acc, c, &cols[*j]);
    }
    acc.into_iter().collect()
}

/// `θ₁ ∘ θ₂ = θ₂ ∘ θ₁` on every `R^{e_p}`, for all pairs of basis elements
/// of `R^d` (which span all pairs by bilinearity).
pub fn abelian_check(ti: &TangentImage) -> bool {
    for pair in ti.blocks.windows(2) {
        let (first, second) = (&pair[0], &pair[1]);
        if first.target_degree != second.source_degree {
            continue;
        }
        for t1 in 0..ti.theta_dim {
            for t2 in t1 + 1..ti.theta_dim {
                for (j, _) in first.maps[t1].iter().enumerate() {
                    let a = apply_columns(&second.maps[t1], &first.maps[t2][j]);
                    let b = apply_columns(&second.maps[t2], &first.maps[t1][j]);
                    if a != b {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Rank of `span(forms) ⊗ H^{4,0} → H^{3,1}` for a fourfold, where `forms`
/// spans the annihilator `T_λ ⊂ R^d` of a Hodge class.
pub fn sigma_lambda_rank(jr: &JacobianRing, forms: &[Vec<Term>]) -> Result<usize, JacobianError> {
    let (n, d) = (jr.n(), jr.d());
    if n != 4 {
        return Err(JacobianError::DimensionMismatch(format!(
            "sigma(lambda) is defined for fourfolds, got n = {n}"
        )));
    }
    for form in forms {
        for t in form {
            let deg: u32 = t.exponents.iter().sum();
            if t.exponents.len() != n + 2 || deg as usize != d {
                return Err(JacobianError::DimensionMismatch(format!(
                    "annihilator term {:?} is not a degree-{d} monomial in {} variables",
                    t.exponents,
                    n + 2
                )));
            }
        }
    }
    let Some(e40) = residue_degree(n, d, 4) else {
        return Ok(0);
    };
    let target = jr.graded_piece(e40 + d)?;
    let mut ech = Echelon::new(target.dim());
    for omega in jr.unit_vectors(e40)? {
        for form in forms {
            ech.insert(jr.multiply_by_polynomial(e40, &omega, form)?);
            if ech.is_full() {
                return Ok(ech.rank());
            }
        }
    }
    Ok(ech.rank())
}

//! Codimension bookkeeping for special subvarieties of period images.
//!
//! Everything is reduced to dimension counts in one tangent space
//! `T_0 D ≅ g^-`, with `T_0 D_H ≅ h^-` and the period image tangent to the
//! horizontal piece `g^{-1}`. All quantities are exact integers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtypicalityError {
    #[error("inconsistent dimensions: {0}")]
    InconsistentDims(String),
    #[error("unsupported weight {0}; only weights 2 and 4 are handled")]
    UnsupportedWeight(u32),
    #[error("missing Hodge number h^{{{p},{q}}}")]
    MissingHodgeNumber { p: u32, q: u32 },
    #[error("negative correction: actual codimension {actual} exceeds expected {expected}")]
    NegativeCorrection { expected: i64, actual: i64 },
}

/// Dimension data at a point of `P_H = (P ∩ D_H)^0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimInput {
    /// `p ↦ dim g^{-p}` for `p >= 1`.
    pub dim_g_minus: BTreeMap<u32, u64>,
    /// `p ↦ dim h^{-p}` for `p >= 1`.
    pub dim_h_minus: BTreeMap<u32, u64>,
    /// `dim T_0 P`, a subspace of `g^{-1}`.
    #[serde(rename = "dim_T0P")]
    pub dim_t0p: u64,
    /// `dim T_0 P_H`, a subspace of `T_0 P ∩ h^{-1}`.
    #[serde(rename = "dim_T0PH")]
    pub dim_t0ph: u64,
}

impl CodimInput {
    pub fn g(&self, p: u32) -> u64 {
        self.dim_g_minus.get(&p).copied().unwrap_or(0)
    }

    pub fn h(&self, p: u32) -> u64 {
        self.dim_h_minus.get(&p).copied().unwrap_or(0)
    }

    /// `dim g^-`
    pub fn dim_g(&self) -> u64 {
        self.dim_g_minus.values().sum()
    }

    /// `dim h^-`
    pub fn dim_h(&self) -> u64 {
        self.dim_h_minus.values().sum()
    }

    pub fn validate(&self) -> Result<(), AtypicalityError> {
        let bad = |msg: String| Err(AtypicalityError::InconsistentDims(msg));
        if self.dim_g_minus.contains_key(&0) || self.dim_h_minus.contains_key(&0) {
            return bad("degrees must be >= 1".into());
        }
        for (&p, &h) in &self.dim_h_minus {
            if h > self.g(p) {
                return bad(format!("dim h^-{p} = {h} exceeds dim g^-{p} = {}", self.g(p)));
            }
        }
        if self.dim_t0p > self.g(1) {
            return bad(format!(
                "dim T0P = {} exceeds dim g^-1 = {}",
                self.dim_t0p,
                self.g(1)
            ));
        }
        if self.dim_t0ph > self.dim_t0p.min(self.h(1)) {
            return bad(format!(
                "dim T0PH = {} exceeds min(dim T0P, dim h^-1) = {}",
                self.dim_t0ph,
                self.dim_t0p.min(self.h(1))
            ));
        }
        // T0PH contains T0P ∩ h^{-1}, and both live in g^{-1}
        let floor = (self.dim_t0p + self.h(1)).saturating_sub(self.g(1));
        if self.dim_t0ph < floor {
            return bad(format!(
                "dim T0PH = {} is below dim(T0P ∩ h^-1) >= {floor}",
                self.dim_t0ph
            ));
        }
        Ok(())
    }

    /// `codim_D P_H = dim g^- - dim T_0 P_H`
    pub fn actual_codim(&self) -> Result<u64, AtypicalityError> {
        self.validate()?;
        Ok(self.dim_g() - self.dim_t0ph)
    }
}

/// `codim_D P + codim_D D_H = (dim g^- - dim T_0 P) + (dim g^- - dim h^-)`.
pub fn expected_codim(input: &CodimInput) -> Result<u64, AtypicalityError> {
    input.validate()?;
    let g = input.dim_g();
    Ok((g - input.dim_t0p) + (g - input.dim_h()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodimVerdict {
    pub expected_codim: u64,
    pub actual_codim: u64,
    pub atypical: bool,
}

/// Atypical iff the actual codimension is strictly below the expected one.
pub fn is_atypical(input: &CodimInput) -> Result<CodimVerdict, AtypicalityError> {
    let expected = expected_codim(input)?;
    let actual = input.actual_codim()?;
    Ok(CodimVerdict {
        expected_codim: expected,
        actual_codim: actual,
        atypical: actual < expected,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcingReport {
    /// `g^-` lives in degree one only; the forcing statement is vacuous.
    pub classical: bool,
    /// Degrees `p >= 2` on which typicality forces `h^{-p} = g^{-p}`.
    pub forced_degrees: Vec<u32>,
    /// `dim g^{-p} - dim h^{-p}` for each forced degree.
    pub deficits: BTreeMap<u32, u64>,
    /// `codim_{g^{-1}} T_0 P - codim_{h^{-1}} T_0 P_H`, never negative.
    pub tangent_deficit: u64,
    /// Some forced degree has a positive deficit, so the typicality equality
    /// cannot hold.
    pub violates_forcing: bool,
    /// The typicality equality holds for this input.
    pub equality_holds: bool,
    pub certifiably_atypical: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Under typicality,
/// `Σ_{p>=2} dim h^{-p} + codim_{h^{-1}} T_0 P_H = Σ_{p>=2} dim g^{-p} + codim_{g^{-1}} T_0 P`.
/// Each term on the left is bounded by its partner on the right, so equality
/// forces `h^{-p} = g^{-p}` for every `p >= 2`.
pub fn forcing_check(input: &CodimInput) -> Result<ForcingReport, AtypicalityError> {
    input.validate()?;
    let forced_degrees: Vec<u32> = input
        .dim_g_minus
        .iter()
        .filter(|(&p, &g)| p >= 2 && g > 0)
        .map(|(&p, _)| p)
        .collect();
    let deficits: BTreeMap<u32, u64> = forced_degrees
        .iter()
        .map(|&p| (p, input.g(p) - input.h(p)))
        .collect();
    let codim_in_g1 = input.g(1) - input.dim_t0p;
    let codim_in_h1 = input.h(1) - input.dim_t0ph;
    let tangent_deficit = codim_in_g1
        .checked_sub(codim_in_h1)
        .expect("validated: T0PH contains T0P ∩ h^-1");
    let violates_forcing = deficits.values().any(|&x| x > 0);
    let equality_holds = !violates_forcing && tangent_deficit == 0;
    let classical = forced_degrees.is_empty();
    Ok(ForcingReport {
        classical,
        forced_degrees,
        deficits,
        tangent_deficit,
        violates_forcing,
        equality_holds,
        certifiably_atypical: violates_forcing,
        note: classical.then(|| "classical case: the forcing statement is vacuous".to_string()),
    })
}

/// Difference `expected - actual`, the term restoring equality.
pub fn correction_term(expected: i64, actual: i64) -> Result<u64, AtypicalityError> {
    if actual > expected {
        return Err(AtypicalityError::NegativeCorrection { expected, actual });
    }
    Ok((expected - actual) as u64)
}

/// Hodge data for a Noether–Lefschetz locus `NL_λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NLInput {
    /// `[h^{w,0}, h^{w-1,1}, …, h^{0,w}]` of the fibre.
    pub hodge_numbers: Vec<u64>,
    /// `dim σ(λ)`
    #[serde(default)]
    pub dim_sigma: u64,
    pub weight: u32,
    /// Degree of a surface in `P^3`, enabling the lower bound `d - 3`.
    #[serde(default)]
    pub degree_d: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub weight: u32,
    /// `h^{2,0}` in weight 2, `h^{3,1}` in weight 4 (the naive expected
    /// codimension).
    pub naive_upper: u64,
    /// `h^{4,0} + h^{3,1}`, before transversality is used (weight 4 only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coarse_upper: Option<u64>,
    /// `naive_upper - dim σ(λ)`
    pub refined_upper: u64,
    /// `d - 3` for surfaces of degree `d`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<u64>,
    pub dim_sigma: u64,
}

pub fn nl_bounds(input: &NLInput) -> Result<BoundsReport, AtypicalityError> {
    let w = input.weight;
    let get = |i: usize| {
        input
            .hodge_numbers
            .get(i)
            .copied()
            .ok_or(AtypicalityError::MissingHodgeNumber {
                p: w - i as u32,
                q: i as u32,
            })
    };
    let (naive, coarse) = match w {
        2 => (get(0)?, None),
        4 => {
            let h40 = get(0)?;
            let h31 = get(1)?;
            (h31, Some(h40 + h31))
        }
        other => return Err(AtypicalityError::UnsupportedWeight(other)),
    };
    if input.dim_sigma > naive {
        return Err(AtypicalityError::InconsistentDims(format!(
            "dim sigma = {} exceeds the Hodge number {naive} it corrects",
            input.dim_sigma
        )));
    }
    let lower = match (w, input.degree_d) {
        (2, Some(d)) => Some(d.saturating_sub(3)),
        _ => None,
    };
    Ok(BoundsReport {
        weight: w,
        naive_upper: naive,
        coarse_upper: coarse,
        refined_upper: naive - input.dim_sigma,
        lower,
        dim_sigma: input.dim_sigma,
    })
}

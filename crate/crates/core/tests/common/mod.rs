//! Brute-force oracles shared by the integration targets.

#![allow(dead_code)]

use std::collections::BTreeSet;

use hodge_core::CodimInput;

/// Positive roots as the orbit of the simple roots under the simple
/// reflections `s_i(c)_i = c_i - Σ_j c_j a_ij`, keeping positive vectors.
pub fn reflection_closure(cartan: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let r = cartan.len();
    let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut frontier: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    all.extend(frontier.iter().cloned());
    while let Some(c) = frontier.pop() {
        for i in 0..r {
            let pairing: i64 = (0..r).map(|j| c[j] * cartan[i][j]).sum();
            let mut s = c.clone();
            s[i] -= pairing;
            if s.iter().all(|&x| x >= 0) && all.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    all
}

/// Typicality equality checked straight from the definitions.
pub fn brute_equality(x: &CodimInput) -> bool {
    let g: u64 = x.dim_g_minus.values().sum();
    let h: u64 = x.dim_h_minus.values().sum();
    let expected = (g - x.dim_t0p) + (g - h);
    let actual = g - x.dim_t0ph;
    expected == actual
}

/// Every valid input with degrees `1..=max_deg` and dimensions `<= max_dim`.
pub fn small_inputs(max_deg: u32, max_dim: u64) -> Vec<CodimInput> {
    let pairs: Vec<(u64, u64)> = (0..=max_dim)
        .flat_map(|g| (0..=g).map(move |h| (g, h)))
        .collect();
    let mut out = Vec::new();
    let slots = max_deg as usize;
    let mut idx = vec![0usize; slots];
    loop {
        let mut x = CodimInput {
            dim_g_minus: Default::default(),
            dim_h_minus: Default::default(),
            dim_t0p: 0,
            dim_t0ph: 0,
        };
        for (p, &i) in idx.iter().enumerate() {
            let (g, h) = pairs[i];
            x.dim_g_minus.insert(p as u32 + 1, g);
            x.dim_h_minus.insert(p as u32 + 1, h);
        }
        let (g1, h1) = pairs[idx[0]];
        for t0p in 0..=g1 {
            let lo = (t0p + h1).saturating_sub(g1);
            for t0ph in lo..=t0p.min(h1) {
                out.push(CodimInput {
                    dim_t0p: t0p,
                    dim_t0ph: t0ph,
                    ..x.clone()
                });
            }
        }
        let mut k = slots;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] + 1 < pairs.len() {
                idx[k] += 1;
                break;
            }
            idx[k] = 0;
        }
    }
}

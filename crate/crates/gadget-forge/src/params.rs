use serde::{Deserialize, Serialize};

use crate::build::plan_layout;
use crate::GadgetError;

/// Sizes of one gadget construction.
///
/// `m` is the base size (`8 | m`); cases 3 and 4 use `m_rho = m + 3` vertices
/// in `[m]` so that the big cycle has even length. `ell`, `g` and the quarter
/// length `m / 4` are computed from the base `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetParams {
    pub rho: u8,
    pub m: usize,
    pub m_rho: usize,
    pub ell: usize,
    pub k: usize,
    pub g: usize,
    pub s: usize,
    pub ell_prime: usize,
    pub k_prime: usize,
    /// Length of the big cycle.
    pub cycle_len: usize,
}

/// Explicit placement choices for small-scale builds. Positions are
/// clockwise offsets on the big cycle, with `s_3` at position 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overrides {
    #[serde(default)]
    pub s2: Option<usize>,
    #[serde(default)]
    pub s1: Option<usize>,
}

impl GadgetParams {
    /// Parameters with a hand-chosen `ell` and `g`. Requires `8 | m`, even
    /// `ell >= 2`, `4 | g` and `s >= 0`; placement is checked by the builder.
    pub fn custom(rho: u8, m: usize, ell: usize, g: usize) -> Result<Self, GadgetError> {
        if !(1..=4).contains(&rho) {
            return Err(GadgetError::InvalidParams(format!("rho = {rho} not in 1..=4")));
        }
        if m == 0 || m % 8 != 0 {
            return Err(GadgetError::InvalidParams(format!("m = {m} is not a positive multiple of 8")));
        }
        if ell < 2 || ell % 2 != 0 {
            return Err(GadgetError::Infeasible(format!("ell = {ell}: need an even ell >= 2")));
        }
        if g == 0 || g % 4 != 0 {
            return Err(GadgetError::InvalidParams(format!("g = {g} is not a positive multiple of 4")));
        }
        let k = 2 * ell;
        let m_rho = if rho >= 3 { m + 3 } else { m };
        let used = 7 + ell * (k + 2) + if rho >= 3 { 3 * k } else { 0 };
        if used > m_rho {
            return Err(GadgetError::Infeasible(format!(
                "s = {} - {} < 0 (m = {m}, ell = {ell}, k = {k})",
                m_rho, used
            )));
        }
        let cycle_len = m_rho - ell - if rho >= 3 { 3 } else { 0 };
        Ok(GadgetParams {
            rho,
            m,
            m_rho,
            ell,
            k,
            g,
            s: m_rho - used,
            ell_prime: ell - 1,
            k_prime: k - 2,
            cycle_len,
        })
    }

    /// `y_i` attachment offset `d(s_1, t_1)`.
    pub fn a_offset(&self) -> usize {
        if matches!(self.rho, 2 | 3) {
            self.k - 1
        } else {
            self.k - 2
        }
    }

    /// Offset `d(t_{2ell}, q)`, fixed by the short cycle having length
    /// `k(ell+1) - 2`.
    pub fn b_offset(&self) -> usize {
        2 * self.k - 5 - self.a_offset()
    }

    pub fn short_cycle_len(&self) -> usize {
        self.k * (self.ell + 1) - 2
    }

    pub fn vertex_count(&self) -> usize {
        self.m_rho + 2
    }
}

/// `floor(m^{1/4} / 4)` exactly.
fn quarter_root_floor(m: usize) -> usize {
    let mut f = 0usize;
    while ((4 * (f + 1)) as u128).pow(4) <= m as u128 {
        f += 1;
    }
    f
}

/// Smallest multiple of 4 strictly greater than `m^{3/4} / 4`.
fn g_formula(m: usize) -> usize {
    let mut j = 1usize;
    // 4j > m^{3/4}/4  <=>  (16j)^4 > m^3
    while ((16 * j) as u128).pow(4) <= (m as u128).pow(3) {
        j += 1;
    }
    4 * j
}

/// Parameters from the asymptotic formulas, with every placement constraint
/// checked. Errors name the first violated constraint.
pub fn derive_params(rho: u8, m: usize) -> Result<GadgetParams, GadgetError> {
    if m == 0 || m % 8 != 0 {
        return Err(GadgetError::InvalidParams(format!("m = {m} is not a positive multiple of 8")));
    }
    let f = quarter_root_floor(m);
    let ell = f.div_ceil(8) * 8;
    if ell == 0 {
        return Err(GadgetError::Infeasible(format!(
            "ell = floor(m^(1/4)/4) rounded to a multiple of 8 is 0 for m = {m} (needs m >= 256)"
        )));
    }
    let params = GadgetParams::custom(rho, m, ell, g_formula(m))?;
    plan_layout(&params, &Overrides::default())?;
    Ok(params)
}

/// Searches small overrides (`ell`, `g`, positions of `s_2` and `s_1`) for a
/// placement that fits, preferring the largest `g`, then the smallest `ell`.
/// When nothing fits, the error carries the reason for the default attempt.
pub fn desk_search(rho: u8, m: usize) -> Result<(GadgetParams, Overrides), GadgetError> {
    let first = GadgetParams::custom(rho, m, 2, 4).and_then(|p| plan_layout(&p, &Overrides::default()).map(|_| p));
    let base_err = match first {
        Ok(_) => None,
        Err(e) => Some(e),
    };
    let mut g = m.next_multiple_of(4);
    while g >= 4 {
        let mut ell = 2;
        while let Ok(p) = GadgetParams::custom(rho, m, ell, g) {
            let len = p.cycle_len;
            for s2 in (ell..len).step_by(2) {
                for s1 in (s2 + ell..len).step_by(2) {
                    let ov = Overrides { s2: Some(s2), s1: Some(s1) };
                    if plan_layout(&p, &ov).is_ok() {
                        return Ok((p, ov));
                    }
                }
            }
            ell += 2;
        }
        g -= 4;
    }
    let reason = base_err.map(|e| e.to_string()).unwrap_or_default();
    Err(GadgetError::Infeasible(format!(
        "no override (ell, g, s_2, s_1) fits at m = {m}, rho = {rho}; default attempt: {reason}"
    )))
}

//! Thermal error model: activated vortex motion against quantum tunneling.
//!
//! Units are `ħ = k_B = 1`. The numbers are order-of-magnitude estimates;
//! only the exponents are meaningful.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecoherenceError {
    #[error("no drive field: both hx and hy are zero")]
    NoDrive,
    #[error("tunneling exponent must be positive, got {0}")]
    NonPositiveExponent(f64),
    #[error("invalid parameter {name} = {value}")]
    Invalid { name: &'static str, value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalParams {
    pub g: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub hx: f64,
    pub hy: f64,
    pub lp: f64,
}

impl ThermalParams {
    pub fn validate(&self) -> Result<(), DecoherenceError> {
        let checks = [
            ("g", self.g, self.g > 0.0),
            ("T", self.t, self.t >= 0.0),
            ("hx", self.hx, self.hx >= 0.0),
            ("hy", self.hy, self.hy >= 0.0),
            ("Lp", self.lp, self.lp >= 1.0),
        ];
        match checks.into_iter().find(|(_, v, ok)| !ok || !v.is_finite()) {
            Some((name, value, _)) => Err(DecoherenceError::Invalid { name, value }),
            None => Ok(()),
        }
    }
}

/// Vortex effective mass `1/(2hx)`; infinite when the vortex cannot hop.
pub fn effective_mass(hx: f64) -> f64 {
    if hx == 0.0 {
        f64::INFINITY
    } else {
        1.0 / (2.0 * hx.abs())
    }
}

/// Time for a thermally activated vortex to cross `Lp` sites,
/// `Lp/√(T/M)·e^{4g/T}`. Infinite at `T = 0` or `hx = 0`.
pub fn decoherence_time(p: &ThermalParams) -> f64 {
    if p.t <= 0.0 || p.hx == 0.0 {
        return f64::INFINITY;
    }
    let velocity = (p.t / effective_mass(p.hx)).sqrt();
    p.lp / velocity * (4.0 * p.g / p.t).exp()
}

/// Natural log of [`decoherence_time`], finite where the time itself
/// overflows.
pub fn ln_decoherence_time(p: &ThermalParams) -> f64 {
    if p.t <= 0.0 || p.hx == 0.0 {
        return f64::INFINITY;
    }
    p.lp.ln() - 0.5 * (p.t * 2.0 * p.hx.abs()).ln() + 4.0 * p.g / p.t
}

/// Arrhenius rate, the reciprocal of [`decoherence_time`].
pub fn thermal_rate(p: &ThermalParams) -> f64 {
    1.0 / decoherence_time(p)
}

/// `max(Lp ln(4g/|hx|), Lp ln(8g/|hy|))`, skipping zero fields.
pub fn tunneling_exponent(g: f64, hx: f64, hy: f64, lp: f64) -> Result<f64, DecoherenceError> {
    let terms = [(hx, 4.0), (hy, 8.0)]
        .into_iter()
        .filter(|(h, _)| *h != 0.0)
        .map(|(h, c)| lp * (c * g / h.abs()).ln());
    terms.reduce(f64::max).ok_or(DecoherenceError::NoDrive)
}

pub fn crossover_temperature(g: f64, b: f64) -> Result<f64, DecoherenceError> {
    if b <= 0.0 || !b.is_finite() {
        return Err(DecoherenceError::NonPositiveExponent(b));
    }
    Ok(4.0 * g / b)
}

pub const DEFAULT_SAFETY_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SafetyReport {
    pub safe: bool,
    #[serde(rename = "T_star")]
    pub t_star: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub t_de: f64,
    pub ln_t_de: f64,
    pub safety_factor: f64,
}

/// Safe when `T ≤ T*/safety_factor`.
pub fn safe_to_operate(p: &ThermalParams, safety_factor: f64) -> Result<SafetyReport, DecoherenceError> {
    p.validate()?;
    let b = tunneling_exponent(p.g, p.hx, p.hy, p.lp)?;
    let t_star = crossover_temperature(p.g, b)?;
    Ok(SafetyReport {
        safe: p.t <= t_star / safety_factor,
        t_star,
        b,
        t_de: decoherence_time(p),
        ln_t_de: ln_decoherence_time(p),
        safety_factor,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossoverPoint {
    pub hx: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "T_star")]
    pub t_star: f64,
    pub t_de: f64,
    pub ln_t_de: f64,
}

/// Points evenly spaced in `hx` over `[from, to]`, inclusive.
pub fn sweep_hx(
    base: &ThermalParams,
    from: f64,
    to: f64,
    count: usize,
) -> Result<Vec<CrossoverPoint>, DecoherenceError> {
    let step = if count > 1 {
        (to - from) / (count - 1) as f64
    } else {
        0.0
    };
    (0..count)
        .map(|i| {
            let hx = from + step * i as f64;
            let p = ThermalParams { hx, ..*base };
            let b = tunneling_exponent(p.g, p.hx, p.hy, p.lp)?;
            Ok(CrossoverPoint {
                hx,
                b,
                t_star: crossover_temperature(p.g, b)?,
                t_de: decoherence_time(&p),
                ln_t_de: ln_decoherence_time(&p),
            })
        })
        .collect()
}

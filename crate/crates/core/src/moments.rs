//! Closed-form N-photon absorption rates for the recording-plane field.
//!
//! The normally ordered moment is a polynomial in `cos²χ`:
//!
//! ```text
//! ⟨a3†ᴺ a3ᴺ⟩ = Σ_{n=0}^{⌊N/2⌋} 2^{N−2n} |P^N_{N−2n}|² |V|^{2(N−n)} |U|^{2n} cos^{2n}χ
//! ```
//!
//! with `P^N_N = √(N!)` and
//! `P^N_{N−2n} = 2√(N−2n+1) P^{N−1}_{N−2n+1} + √(N−2n) P^{N−1}_{N−2n−1}`.

use crate::error::{invalid, Error, Result};
use crate::optics::{opa_coefficients, OpaParams};

/// Largest supported absorption order. `√(30!) ≈ 5.1e16`, and the series
/// coefficients stay far below `f64::MAX`.
pub const MAX_ORDER: usize = 30;

fn check_order(order: usize) -> Result<()> {
    if (1..=MAX_ORDER).contains(&order) {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange(order))
    }
}

/// `P^N_{N−2n}` for one order `N`; `values[n]` holds `P^N_{N−2n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PTable {
    order: usize,
    values: Vec<f64>,
}

impl PTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Series coefficients `2^{N−2n} |P^N_{N−2n}|²`, indexed by the power of `cos²χ`.
    pub fn series_coefficients(&self) -> Vec<f64> {
        self.values
            .iter()
            .enumerate()
            .map(|(n, p)| 2f64.powi((self.order - 2 * n) as i32) * p * p)
            .collect()
    }
}

/// Builds the P coefficients row by row from `P⁰₀ = 1`. Entries with a lower
/// index below zero, above the upper index, or of the wrong parity are zero.
pub fn p_table(order: usize) -> Result<PTable> {
    check_order(order)?;
    // row[m] = P^n_m for the current n
    let mut row = vec![1.0f64];
    for n in 1..=order {
        let prev = &row;
        let get = |m: isize| -> f64 {
            if m < 0 {
                0.0
            } else {
                prev.get(m as usize).copied().unwrap_or(0.0)
            }
        };
        let mut next = vec![0.0f64; n + 1];
        for m in (n % 2..=n).step_by(2) {
            next[m] = if m == n {
                // equals the recurrence with P^{n−1}_{n+1} = 0
                (n as f64).sqrt() * get(m as isize - 1)
            } else {
                2.0 * ((m + 1) as f64).sqrt() * get(m as isize + 1)
                    + (m as f64).sqrt() * get(m as isize - 1)
            };
        }
        row = next;
    }
    let values = (0..=order / 2).map(|k| row[order - 2 * k]).collect();
    Ok(PTable { order, values })
}

fn series(table: &PTable, u2: f64, v2: f64, cos2: f64) -> f64 {
    let order = table.order;
    table
        .series_coefficients()
        .iter()
        .enumerate()
        .map(|(n, c)| c * v2.powi((order - n) as i32) * u2.powi(n as i32) * cos2.powi(n as i32))
        .sum()
}

fn moment_at_cos2(table: &PTable, params: &OpaParams, cos2: f64) -> f64 {
    let pair = opa_coefficients(params);
    series(table, pair.u.norm_sqr(), pair.v.norm_sqr(), cos2)
}

/// `⟨a3†ᴺ a3ᴺ⟩` at classical phase `chi`.
pub fn moment(order: usize, params: &OpaParams, chi: f64) -> Result<f64> {
    let table = p_table(order)?;
    let c = chi.cos();
    Ok(moment_at_cos2(&table, params, c * c))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateQuery {
    pub order: usize,
    pub params: OpaParams,
    pub chi: f64,
    pub cross_section: f64,
}

impl RateQuery {
    pub fn new(order: usize, params: OpaParams, chi: f64, cross_section: f64) -> Result<Self> {
        check_order(order)?;
        if !chi.is_finite() {
            return Err(invalid("chi", format!("must be finite, got {chi}")));
        }
        if !cross_section.is_finite() || cross_section <= 0.0 {
            return Err(invalid(
                "cross_section",
                format!("must be positive, got {cross_section}"),
            ));
        }
        Ok(Self {
            order,
            params,
            chi,
            cross_section,
        })
    }

    /// Unit cross section.
    pub fn unit(order: usize, params: OpaParams, chi: f64) -> Result<Self> {
        Self::new(order, params, chi, 1.0)
    }
}

/// Absorption rate `R = σ ⟨a3†ᴺ a3ᴺ⟩`.
pub fn rate(query: &RateQuery) -> Result<f64> {
    Ok(query.cross_section * moment(query.order, &query.params, query.chi)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrema {
    pub min: f64,
    pub max: f64,
}

/// Fringe minimum and maximum of the moment. Every series term is a
/// nonnegative multiple of `cos^{2n}χ`, so they sit at `cos²χ = 0` and `1`.
pub fn rate_extrema(order: usize, params: &OpaParams) -> Result<Extrema> {
    let table = p_table(order)?;
    Ok(Extrema {
        min: moment_at_cos2(&table, params, 0.0),
        max: moment_at_cos2(&table, params, 1.0),
    })
}

/// Fringe visibility. At zero gain both extrema vanish; the value is then
/// 0 and `degenerate` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Visibility {
    pub value: f64,
    pub degenerate: bool,
}

pub fn visibility(order: usize, params: &OpaParams) -> Result<Visibility> {
    let Extrema { min, max } = rate_extrema(order, params)?;
    let total = max + min;
    if total == 0.0 {
        return Ok(Visibility {
            value: 0.0,
            degenerate: true,
        });
    }
    Ok(Visibility {
        value: ((max - min) / total).clamp(0.0, 1.0),
        degenerate: false,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VisibilityCurve {
    pub order: usize,
    pub gain_samples: Vec<f64>,
    pub visibilities: Vec<f64>,
    pub degenerate: Vec<bool>,
}

/// Uniform grid of `samples` points in `[start, stop]`, both ends included.
pub(crate) fn linspace(start: f64, stop: f64, samples: usize) -> Vec<f64> {
    let step = (stop - start) / (samples - 1) as f64;
    (0..samples)
        .map(|i| {
            if i == samples - 1 {
                stop
            } else {
                start + step * i as f64
            }
        })
        .collect()
}

pub fn visibility_curve(
    order: usize,
    gain_min: f64,
    gain_max: f64,
    samples: usize,
) -> Result<VisibilityCurve> {
    check_order(order)?;
    if !(gain_min.is_finite() && gain_max.is_finite()) || gain_min < 0.0 || gain_min >= gain_max {
        return Err(Error::InvalidRange(format!(
            "gain range must satisfy 0 <= min < max, got {gain_min}:{gain_max}"
        )));
    }
    if samples < 2 {
        return Err(Error::InvalidRange(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    let gain_samples = linspace(gain_min, gain_max, samples);
    let mut visibilities = Vec::with_capacity(samples);
    let mut degenerate = Vec::with_capacity(samples);
    for &g in &gain_samples {
        let v = visibility(order, &OpaParams::with_gain(g)?)?;
        visibilities.push(v.value);
        degenerate.push(v.degenerate);
    }
    Ok(VisibilityCurve {
        order,
        gain_samples,
        visibilities,
        degenerate,
    })
}

/// Point where the linear and quadratic parts of the two-photon fringe
/// maximum, `R_max/σ = a I + b I²`, are equal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverReport {
    pub intensity_star: f64,
    pub gain_star: f64,
    pub linear_coefficient: f64,
    pub quadratic_coefficient: f64,
}

impl CrossoverReport {
    /// `(a I, b I²)` at the given intensity.
    pub fn contributions(&self, intensity: f64) -> (f64, f64) {
        (
            self.linear_coefficient * intensity,
            self.quadratic_coefficient * intensity * intensity,
        )
    }
}

pub fn crossover() -> CrossoverReport {
    // R_max = c0 |V|⁴ + c1 |V|²|U|² with |V|² = I and |U|² = 1 + I,
    // so a = c1 and b = c0 + c1.
    let coeffs = p_table(2)
        .expect("order 2 is in range")
        .series_coefficients();
    let linear = coeffs[1];
    let quadratic = coeffs[0] + coeffs[1];
    let intensity_star = linear / quadratic;
    CrossoverReport {
        intensity_star,
        gain_star: intensity_star.sqrt().asinh(),
        linear_coefficient: linear,
        quadratic_coefficient: quadratic,
    }
}

/// Sampled absorption rate over a window of classical phase.
#[derive(Debug, Clone, PartialEq)]
pub struct FringeScan {
    pub order: usize,
    pub params: OpaParams,
    pub cross_section: f64,
    pub chi_samples: Vec<f64>,
    pub raw_rates: Vec<f64>,
    pub normalized_rates: Vec<f64>,
}

impl FringeScan {
    fn from_raw(
        order: usize,
        params: OpaParams,
        cross_section: f64,
        chi_samples: Vec<f64>,
        raw_rates: Vec<f64>,
    ) -> Self {
        let peak = raw_rates.iter().copied().fold(0.0f64, f64::max);
        let normalized_rates = raw_rates
            .iter()
            .map(|r| if peak > 0.0 { r / peak } else { 0.0 })
            .collect();
        Self {
            order,
            params,
            cross_section,
            chi_samples,
            raw_rates,
            normalized_rates,
        }
    }

    fn is_flat(&self) -> bool {
        let (lo, hi) = min_max(&self.raw_rates);
        hi - lo <= 1e-12 * hi.abs()
    }

    /// Phases of the sampled local maxima, endpoints included. Empty for a
    /// flat scan.
    pub fn maxima(&self) -> Vec<f64> {
        if self.is_flat() {
            return Vec::new();
        }
        let r = &self.raw_rates;
        (0..r.len())
            .filter(|&i| {
                let left = i == 0 || r[i] >= r[i - 1];
                let right = i + 1 == r.len() || r[i] >= r[i + 1];
                left && right
            })
            .map(|i| self.chi_samples[i])
            .collect()
    }
}

fn min_max(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
}

pub fn fringe_scan(
    order: usize,
    params: &OpaParams,
    chi_min: f64,
    chi_max: f64,
    samples: usize,
) -> Result<FringeScan> {
    let table = p_table(order)?;
    if !(chi_min.is_finite() && chi_max.is_finite()) || chi_min >= chi_max {
        return Err(Error::InvalidRange(format!(
            "phase range must satisfy min < max, got {chi_min}:{chi_max}"
        )));
    }
    if samples < 2 {
        return Err(Error::InvalidRange(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    let chi_samples = linspace(chi_min, chi_max, samples);
    let raw = chi_samples
        .iter()
        .map(|chi| {
            let c = chi.cos();
            moment_at_cos2(&table, params, c * c)
        })
        .collect();
    Ok(FringeScan::from_raw(order, *params, 1.0, chi_samples, raw))
}

/// Half-contrast full width of the fringe centred on `χ = 0`: the width at
/// the level midway between the scan minimum and maximum, with linear
/// interpolation between samples.
pub fn fringe_fwhm(scan: &FringeScan) -> Result<f64> {
    if scan.is_flat() {
        return Err(Error::NoFringe(format!(
            "order {} scan is flat",
            scan.order
        )));
    }
    let x = &scan.chi_samples;
    let y = &scan.normalized_rates;
    let centre = x
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(i, _)| i)
        .ok_or_else(|| Error::NoFringe("empty scan".into()))?;
    let is_peak = (centre == 0 || y[centre] >= y[centre - 1])
        && (centre + 1 == y.len() || y[centre] >= y[centre + 1]);
    if !is_peak {
        return Err(Error::NoFringe("no maximum at chi = 0".into()));
    }
    let (lo, hi) = min_max(y);
    let level = 0.5 * (lo + hi);
    let crossing = |step: isize| -> Result<f64> {
        let mut i = centre as isize;
        loop {
            let j = i + step;
            if j < 0 || j as usize >= y.len() {
                return Err(Error::NoFringe(
                    "half-contrast crossing not bracketed by the scan".into(),
                ));
            }
            let (a, b) = (i as usize, j as usize);
            if y[b] < level {
                let t = (y[a] - level) / (y[a] - y[b]);
                return Ok(x[a] + t * (x[b] - x[a]));
            }
            i = j;
        }
    };
    Ok(crossing(1)? - crossing(-1)?)
}

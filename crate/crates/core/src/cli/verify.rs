use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::moments::moment;
use crate::optics::OpaParams;
use crate::oracle::oracle_moment;

/// Largest accepted relative deviation between closed form and oracle.
pub const VERIFY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyPoint {
    pub order: usize,
    pub gain: f64,
    pub chi: f64,
    pub closed_form: f64,
    pub oracle: f64,
    pub relative_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub orders: Vec<usize>,
    pub gains: Vec<f64>,
    pub chis: Vec<f64>,
    pub points: Vec<VerifyPoint>,
    pub worst_deviation: f64,
    pub passed: bool,
}

impl VerifyReport {
    pub fn worst_point(&self) -> Option<&VerifyPoint> {
        self.points
            .iter()
            .max_by(|a, b| a.relative_deviation.total_cmp(&b.relative_deviation))
    }
}

/// `|closed − oracle| / max(oracle, 1e−300)`.
pub fn relative_deviation(closed_form: f64, oracle: f64) -> f64 {
    (closed_form - oracle).abs() / oracle.max(1e-300)
}

/// Evaluates every `(order, gain, chi)` combination with both routes. Points
/// run in parallel; the report keeps grid order.
pub fn verify_grid(orders: &[usize], gains: &[f64], chis: &[f64]) -> Result<VerifyReport> {
    if orders.is_empty() || gains.is_empty() || chis.is_empty() {
        return Err(invalid("grid", "orders, gains and phases must be nonempty"));
    }
    let mut grid = Vec::with_capacity(orders.len() * gains.len() * chis.len());
    for &order in orders {
        for &gain in gains {
            let params = OpaParams::with_gain(gain)?;
            for &chi in chis {
                grid.push((order, params, chi));
            }
        }
    }
    let points = grid
        .par_iter()
        .map(|&(order, params, chi)| {
            let closed_form = moment(order, &params, chi)?;
            let oracle = oracle_moment(&params, chi, order)?;
            Ok(VerifyPoint {
                order,
                gain: params.gain(),
                chi,
                closed_form,
                oracle,
                relative_deviation: relative_deviation(closed_form, oracle),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let worst_deviation = points
        .iter()
        .map(|p| p.relative_deviation)
        .fold(0.0, f64::max);
    Ok(VerifyReport {
        orders: orders.to_vec(),
        gains: gains.to_vec(),
        chis: chis.to_vec(),
        passed: worst_deviation <= VERIFY_TOLERANCE,
        worst_deviation,
        points,
    })
}

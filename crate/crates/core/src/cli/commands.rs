use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;

use super::output::{format_sig9 as sig, write_csv};
use super::verify::{verify_grid, VERIFY_TOLERANCE};
use super::{
    CoeffsArgs, Figure2Args, Format, FringeArgs, Outcome, OutputArgs, RateArgs, ValueRange,
    VerifyArgs, VisibilityArgs,
};
use crate::error::{Error, Result};
use crate::moments::{
    self, fringe_scan, rate_extrema, visibility_curve, FringeScan, RateQuery, VisibilityCurve,
};
use crate::optics::{
    chi_from_geometry, mode_intensity, opa_coefficients, FringeGeometry, OpaParams,
};
use crate::svg::{emit_svg, Plot};

fn stdout_err(source: std::io::Error) -> Error {
    Error::Io {
        path: "<stdout>".into(),
        source,
    }
}

macro_rules! out {
    ($w:expr, $($arg:tt)*) => {
        writeln!($w, $($arg)*).map_err(stdout_err)?
    };
}

fn complex(z: Complex64) -> String {
    format!(
        "{} {} {}i",
        sig(z.re),
        if z.im < 0.0 { '-' } else { '+' },
        sig(z.im.abs())
    )
}

fn nonempty_orders(orders: &[usize]) -> Result<()> {
    if orders.is_empty() {
        return Err(Error::Usage("at least one order is required".into()));
    }
    Ok(())
}

pub(super) fn coeffs(args: &CoeffsArgs, w: &mut dyn Write) -> Result<Outcome> {
    let params = OpaParams::new(args.gain, args.phase)?;
    let pair = opa_coefficients(&params);
    out!(w, "gain = {}", sig(params.gain()));
    out!(w, "phase = {}", sig(params.phase()));
    out!(w, "u = {}", complex(pair.u));
    out!(w, "v = {}", complex(pair.v));
    out!(w, "|u|^2 = {}", sig(pair.u.norm_sqr()));
    out!(w, "|v|^2 = {}", sig(pair.v.norm_sqr()));
    out!(
        w,
        "identity_residual = {}",
        sig(pair.hyperbolic_identity() - 1.0)
    );
    Ok(Outcome::Done)
}

fn resolve_chi(args: &RateArgs) -> Result<f64> {
    let geometry = [args.wavelength, args.angle, args.position];
    let any_geometry = geometry.iter().any(Option::is_some);
    match (args.chi, any_geometry) {
        (Some(_), true) => Err(Error::Usage(
            "give either --chi or --wavelength/--angle/--position, not both".into(),
        )),
        (Some(chi), false) => Ok(chi),
        (None, true) => match geometry {
            [Some(l), Some(a), Some(x)] => Ok(chi_from_geometry(&FringeGeometry::new(l, a, x)?)),
            _ => Err(Error::Usage(
                "geometry needs all of --wavelength, --angle and --position".into(),
            )),
        },
        (None, false) => Err(Error::Usage(
            "give --chi or --wavelength/--angle/--position".into(),
        )),
    }
}

pub(super) fn rate(args: &RateArgs, w: &mut dyn Write) -> Result<Outcome> {
    let chi = resolve_chi(args)?;
    let params = OpaParams::new(args.gain, args.phase)?;
    let query = RateQuery::new(args.order, params, chi, args.cross_section)?;
    let moment = moments::moment(query.order, &params, chi)?;
    let rate = moments::rate(&query)?;
    out!(w, "order = {}", query.order);
    out!(w, "chi = {}", sig(chi));
    out!(w, "moment = {}", sig(moment));
    out!(w, "rate = {}", sig(rate));
    Ok(Outcome::Done)
}

fn svg_path(output: &OutputArgs) -> Result<&std::path::Path> {
    output
        .output
        .as_deref()
        .ok_or_else(|| Error::Usage("--format svg needs --output".into()))
}

pub(super) fn fringe(args: &FringeArgs, w: &mut dyn Write) -> Result<Outcome> {
    nonempty_orders(&args.orders)?;
    let params = OpaParams::new(args.gain, args.phase)?;
    let ValueRange { start, end } = args.chi_range;
    let scans = args
        .orders
        .iter()
        .map(|&n| fringe_scan(n, &params, start, end, args.samples))
        .collect::<Result<Vec<FringeScan>>>()?;
    match args.output.format {
        Format::Svg => {
            let title = format!("Absorption rate vs chi, G = {}", params.gain());
            emit_svg(&Plot::fringes(title, &scans), svg_path(&args.output)?)?;
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = scans
                .iter()
                .flat_map(|s| {
                    s.chi_samples
                        .iter()
                        .zip(&s.raw_rates)
                        .zip(&s.normalized_rates)
                        .map(move |((chi, raw), norm)| {
                            vec![sig(*chi), s.order.to_string(), sig(*raw), sig(*norm)]
                        })
                })
                .collect();
            write_csv(
                args.output.output.as_deref(),
                w,
                &["chi", "order", "raw_rate", "normalized_rate"],
                &rows,
            )?;
        }
    }
    Ok(Outcome::Done)
}

pub(super) fn visibility(args: &VisibilityArgs, w: &mut dyn Write) -> Result<Outcome> {
    nonempty_orders(&args.orders)?;
    let ValueRange { start, end } = args.gain_range;
    let curves = args
        .orders
        .iter()
        .map(|&n| visibility_curve(n, start, end, args.samples))
        .collect::<Result<Vec<VisibilityCurve>>>()?;
    match args.output.format {
        Format::Svg => {
            emit_svg(
                &Plot::visibility("Fringe visibility vs gain", &curves),
                svg_path(&args.output)?,
            )?;
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = curves
                .iter()
                .flat_map(|c| {
                    c.gain_samples
                        .iter()
                        .zip(&c.visibilities)
                        .zip(&c.degenerate)
                        .map(move |((g, v), d)| {
                            vec![sig(*g), c.order.to_string(), sig(*v), d.to_string()]
                        })
                })
                .collect();
            write_csv(
                args.output.output.as_deref(),
                w,
                &["gain", "order", "visibility", "degenerate"],
                &rows,
            )?;
        }
    }
    Ok(Outcome::Done)
}

pub(super) fn crossover(w: &mut dyn Write) -> Result<Outcome> {
    let report = moments::crossover();
    let (linear, quadratic) = report.contributions(report.intensity_star);
    let params = OpaParams::with_gain(report.gain_star)?;
    out!(w, "intensity_star = {}", sig(report.intensity_star));
    out!(w, "gain_star = {}", sig(report.gain_star));
    out!(w, "gain_star_2dp = {:.2}", report.gain_star);
    out!(w, "linear_part = {}", sig(linear));
    out!(w, "quadratic_part = {}", sig(quadratic));
    out!(
        w,
        "consistency = {}",
        sig((mode_intensity(&params) - report.intensity_star).abs())
    );
    Ok(Outcome::Done)
}

pub(super) fn figure2(args: &Figure2Args, w: &mut dyn Write) -> Result<Outcome> {
    if args.samples < 2 {
        return Err(Error::InvalidRange(format!(
            "need at least 2 samples, got {}",
            args.samples
        )));
    }
    let by_gain = args.gain_range.is_some();
    let range = args
        .gain_range
        .or(args.intensity_range)
        .unwrap_or(ValueRange {
            start: 0.0,
            end: 2.0,
        });
    if !(range.start.is_finite() && range.end.is_finite())
        || range.start < 0.0
        || range.start >= range.end
    {
        return Err(Error::InvalidRange(format!(
            "range must satisfy 0 <= min < max, got {range}"
        )));
    }
    let crossover = moments::crossover();
    let mut rows = Vec::with_capacity(args.samples);
    for x in moments::linspace(range.start, range.end, args.samples) {
        let (intensity, params) = if by_gain {
            let params = OpaParams::with_gain(x)?;
            (mode_intensity(&params), params)
        } else {
            (x, OpaParams::with_gain(x.sqrt().asinh())?)
        };
        let extrema = rate_extrema(2, &params)?;
        let (linear, quadratic) = crossover.contributions(intensity);
        rows.push(vec![
            sig(intensity),
            sig(params.gain()),
            sig(extrema.max),
            sig(extrema.min),
            sig(linear),
            sig(quadratic),
        ]);
    }
    write_csv(
        args.output.as_deref(),
        w,
        &[
            "I",
            "G",
            "rate_max",
            "rate_min",
            "linear_part",
            "quadratic_part",
        ],
        &rows,
    )?;
    Ok(Outcome::Done)
}

pub(super) fn verify(args: &VerifyArgs, w: &mut dyn Write) -> Result<Outcome> {
    nonempty_orders(&args.orders)?;
    if args.chi_steps == 0 {
        return Err(Error::Usage("--chi-steps must be at least 1".into()));
    }
    let chis: Vec<f64> = (0..=args.chi_steps)
        .map(|k| k as f64 * PI / args.chi_steps as f64)
        .collect();
    let report = verify_grid(&args.orders, &args.gains, &chis)?;
    if let Some(path) = &args.csv {
        let rows: Vec<Vec<String>> = report
            .points
            .iter()
            .map(|p| {
                vec![
                    p.order.to_string(),
                    sig(p.gain),
                    sig(p.chi),
                    sig(p.closed_form),
                    sig(p.oracle),
                    sig(p.relative_deviation),
                ]
            })
            .collect();
        write_csv(
            Some(path),
            w,
            &[
                "order",
                "gain",
                "chi",
                "closed_form",
                "oracle",
                "relative_deviation",
            ],
            &rows,
        )?;
    }
    let orders: Vec<String> = report.orders.iter().map(ToString::to_string).collect();
    let gains: Vec<String> = report.gains.iter().map(ToString::to_string).collect();
    out!(w, "orders = {}", orders.join(","));
    out!(w, "gains = {}", gains.join(","));
    out!(
        w,
        "chi = k*pi/{} for k = 0..={}",
        args.chi_steps,
        args.chi_steps
    );
    out!(w, "points = {}", report.points.len());
    if let Some(p) = report.worst_point() {
        out!(
            w,
            "worst_relative_deviation = {} (order {}, gain {}, chi {})",
            sig(p.relative_deviation),
            p.order,
            p.gain,
            sig(p.chi)
        );
    }
    out!(w, "tolerance = {}", sig(VERIFY_TOLERANCE));
    out!(
        w,
        "result = {}",
        if report.passed { "PASS" } else { "FAIL" }
    );
    Ok(if report.passed {
        Outcome::Done
    } else {
        Outcome::VerificationFailed
    })
}

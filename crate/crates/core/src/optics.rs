//! Linear optics of the unseeded OPA source: Bogoliubov coefficients,
//! per-mode intensity, fringe geometry and the expansion of the field at the
//! recording plane over the vacuum input modes.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use num_complex::Complex64;

use crate::error::{invalid, Result};

/// Value of `[a3, a3†]` for the recording-plane field. The field is the sum
/// of the two beamsplitter output modes with unit-modulus weights, so the
/// commutator is 2 rather than 1.
pub const FIELD_COMMUTATOR: f64 = 2.0;

/// Single-pass gain `G` and interaction phase `φ` of the amplifier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpaParams {
    gain: f64,
    phase: f64,
}

impl OpaParams {
    /// Builds parameters, folding the phase into `[0, 2π)`.
    pub fn new(gain: f64, phase: f64) -> Result<Self> {
        if !gain.is_finite() || gain < 0.0 {
            return Err(invalid(
                "gain",
                format!("must be finite and >= 0, got {gain}"),
            ));
        }
        if !phase.is_finite() {
            return Err(invalid("phase", format!("must be finite, got {phase}")));
        }
        let mut phase = phase.rem_euclid(TAU);
        // rem_euclid can round up to exactly 2π for tiny negative inputs
        if phase >= TAU {
            phase = 0.0;
        }
        Ok(Self { gain, phase })
    }

    /// Zero interaction phase; every rate is independent of it.
    pub fn with_gain(gain: f64) -> Result<Self> {
        Self::new(gain, 0.0)
    }

    pub fn gain(&self) -> f64 {
        self.gain
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }
}

/// Pump-side description of the gain, `G = g |E_p| L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpSpec {
    gain_coefficient: f64,
    pump_amplitude: f64,
    interaction_length: f64,
}

impl PumpSpec {
    pub fn new(
        gain_coefficient: f64,
        pump_amplitude: f64,
        interaction_length: f64,
    ) -> Result<Self> {
        for (name, value) in [
            ("gain_coefficient", gain_coefficient),
            ("pump_amplitude", pump_amplitude),
            ("interaction_length", interaction_length),
        ] {
            if !value.is_finite() || value < 0.0 {
                return Err(invalid(
                    name,
                    format!("must be finite and >= 0, got {value}"),
                ));
            }
        }
        if gain_coefficient == 0.0 {
            return Err(invalid("gain_coefficient", "must be positive"));
        }
        Ok(Self {
            gain_coefficient,
            pump_amplitude,
            interaction_length,
        })
    }
}

pub fn gain_from_pump(spec: &PumpSpec) -> f64 {
    spec.gain_coefficient * spec.pump_amplitude * spec.interaction_length
}

/// Coefficients of `a1 = U a0 + V b0†`, `b1 = U b0 + V a0†`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovPair {
    pub u: Complex64,
    pub v: Complex64,
}

impl BogoliubovPair {
    /// `|u|² − |v|²`, which is 1 for any amplifier transform.
    pub fn hyperbolic_identity(&self) -> f64 {
        self.u.norm_sqr() - self.v.norm_sqr()
    }
}

/// `U = cosh G`, `V = −i e^{iφ} sinh G`.
pub fn opa_coefficients(params: &OpaParams) -> BogoliubovPair {
    let g = params.gain();
    let u = Complex64::new(g.cosh(), 0.0);
    let v = -Complex64::i() * Complex64::from_polar(1.0, params.phase()) * g.sinh();
    BogoliubovPair { u, v }
}

/// Mean photon number in each beamsplitter output mode for vacuum input.
pub fn mode_intensity(params: &OpaParams) -> f64 {
    opa_coefficients(params).v.norm_sqr()
}

/// Two plane waves of wavelength `λ` meeting the recording plane at `±θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FringeGeometry {
    wavelength: f64,
    angle: f64,
    position: f64,
}

impl FringeGeometry {
    pub fn new(wavelength: f64, angle: f64, position: f64) -> Result<Self> {
        if !wavelength.is_finite() || wavelength <= 0.0 {
            return Err(invalid(
                "wavelength",
                format!("must be positive, got {wavelength}"),
            ));
        }
        if !angle.is_finite() || angle <= 0.0 || angle >= PI / 2.0 {
            return Err(invalid(
                "angle",
                format!("must lie in (0, π/2), got {angle}"),
            ));
        }
        if !position.is_finite() {
            return Err(invalid(
                "position",
                format!("must be finite, got {position}"),
            ));
        }
        Ok(Self {
            wavelength,
            angle,
            position,
        })
    }
}

/// Classical one-photon phase `χ = 2 k x sin θ` with `k = 2π/λ`.
pub fn chi_from_geometry(geom: &FringeGeometry) -> f64 {
    let k = TAU / geom.wavelength;
    2.0 * k * geom.position * geom.angle.sin()
}

/// A single-mode operator written as a linear combination of the two vacuum
/// input modes and their adjoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldExpansion {
    pub coeff_a0: Complex64,
    pub coeff_b0: Complex64,
    pub coeff_a0_dag: Complex64,
    pub coeff_b0_dag: Complex64,
}

impl FieldExpansion {
    /// c-number value of `[f, f†]`.
    pub fn commutator(&self) -> f64 {
        self.coeff_a0.norm_sqr() + self.coeff_b0.norm_sqr()
            - self.coeff_a0_dag.norm_sqr()
            - self.coeff_b0_dag.norm_sqr()
    }

    /// Vacuum expectation `⟨f† f⟩`, carried entirely by the creation part.
    pub fn vacuum_intensity(&self) -> f64 {
        self.coeff_a0_dag.norm_sqr() + self.coeff_b0_dag.norm_sqr()
    }

    /// Expansion of `f†` over the same basis.
    pub fn adjoint(&self) -> Self {
        Self {
            coeff_a0: self.coeff_a0_dag.conj(),
            coeff_b0: self.coeff_b0_dag.conj(),
            coeff_a0_dag: self.coeff_a0.conj(),
            coeff_b0_dag: self.coeff_b0.conj(),
        }
    }
}

/// Field at the recording plane for classical phase `chi`:
///
/// `a3 = [(−e^{iχ} + i)(U a0 + V b0†) + (i e^{iχ} − 1)(U b0 + V a0†)] / √2`
pub fn recording_plane_field(params: &OpaParams, chi: f64) -> Result<FieldExpansion> {
    if !chi.is_finite() {
        return Err(invalid("chi", format!("must be finite, got {chi}")));
    }
    let BogoliubovPair { u, v } = opa_coefficients(params);
    let i = Complex64::i();
    let path = Complex64::from_polar(1.0, chi);
    let first = (-path + i) * FRAC_1_SQRT_2;
    let second = (i * path - 1.0) * FRAC_1_SQRT_2;
    Ok(FieldExpansion {
        coeff_a0: first * u,
        coeff_b0: second * u,
        coeff_a0_dag: second * v,
        coeff_b0_dag: first * v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(gain: f64) -> OpaParams {
        OpaParams::with_gain(gain).unwrap()
    }

    #[test]
    fn pump_product() {
        let g = |a, b, c| gain_from_pump(&PumpSpec::new(a, b, c).unwrap());
        assert_eq!(g(1.0, 0.0, 1.0), 0.0);
        assert_eq!(g(0.5, 2.0, 1.0), 1.0);
        assert!((g(0.1, 5.5, 1.0) - 0.55).abs() < 1e-15);
        assert!(PumpSpec::new(0.0, 1.0, 1.0).is_err());
        assert!(PumpSpec::new(1.0, -1.0, 1.0).is_err());
        assert!(PumpSpec::new(1.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn params_validation_and_phase_folding() {
        assert!(OpaParams::new(-0.1, 0.0).is_err());
        assert!(OpaParams::new(f64::INFINITY, 0.0).is_err());
        assert!(OpaParams::new(1.0, f64::NAN).is_err());
        let p = OpaParams::new(1.0, -PI / 2.0).unwrap();
        assert!((p.phase() - 1.5 * PI).abs() < 1e-15);
        let p = OpaParams::new(1.0, 5.0 * TAU + 0.25).unwrap();
        assert!((p.phase() - 0.25).abs() < 1e-12);
        let p = OpaParams::new(1.0, -1e-300).unwrap();
        assert!(p.phase() >= 0.0 && p.phase() < TAU);
    }

    #[test]
    fn coefficients_at_zero_gain_are_identity() {
        let pair = opa_coefficients(&params(0.0));
        assert_eq!(pair.u, Complex64::new(1.0, 0.0));
        assert_eq!(pair.v.norm(), 0.0);
    }

    #[test]
    fn crossover_gain_gives_a_third_photon_per_mode() {
        let pair = opa_coefficients(&params(0.55));
        assert!((pair.v.norm_sqr() - 0.334_259_276_911_128).abs() < 1e-12);
        assert!((mode_intensity(&params(0.55)) - 1.0 / 3.0).abs() < 3e-3);
    }

    #[test]
    fn unit_gain_quarter_phase() {
        let pair = opa_coefficients(&OpaParams::new(1.0, PI / 2.0).unwrap());
        assert!((pair.u.norm_sqr() - 2.381_097_845_541_816).abs() < 1e-12);
        assert!((pair.v.norm_sqr() - 1.381_097_845_541_816).abs() < 1e-12);
        assert!((pair.hyperbolic_identity() - 1.0).abs() < 1e-12);
        // −i e^{iπ/2} = 1
        assert!((pair.v - Complex64::new(1f64.sinh(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn intensity_values() {
        assert_eq!(mode_intensity(&params(0.0)), 0.0);
        assert!((mode_intensity(&params(1.0)) - 1.381_097_845_541_816).abs() < 1e-12);
        assert!((mode_intensity(&params(2.0)) - 2f64.sinh().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn geometry_to_chi() {
        let chi = |l, a, x| chi_from_geometry(&FringeGeometry::new(l, a, x).unwrap());
        assert_eq!(chi(1.0, 0.3, 0.0), 0.0);
        assert!((chi(1.0, PI / 6.0, 1.0) - TAU).abs() < 1e-12);
        assert!((chi(0.5, PI / 2.0 - 1e-9, 0.125) - PI).abs() < 1e-9);
        assert!(FringeGeometry::new(0.0, 0.3, 0.0).is_err());
        assert!(FringeGeometry::new(1.0, 0.0, 0.0).is_err());
        assert!(FringeGeometry::new(1.0, PI / 2.0, 0.0).is_err());
    }

    #[test]
    fn field_without_gain_is_passive() {
        for chi in [0.0, 0.4, 2.0, -3.0] {
            let f = recording_plane_field(&params(0.0), chi).unwrap();
            assert_eq!(f.coeff_a0_dag.norm(), 0.0);
            assert_eq!(f.coeff_b0_dag.norm(), 0.0);
            assert!(
                (f.coeff_a0.norm_sqr() + f.coeff_b0.norm_sqr() - FIELD_COMMUTATOR).abs() < 1e-12
            );
        }
    }

    #[test]
    fn field_dark_port_at_quarter_phase() {
        for g in [0.1, 1.0, 3.0] {
            let f = recording_plane_field(&params(g), PI / 2.0).unwrap();
            assert!(f.coeff_a0.norm() < 1e-15 * g.cosh());
            assert!(f.coeff_b0_dag.norm() < 1e-15 * g.cosh());
        }
    }

    #[test]
    fn field_at_zero_phase() {
        let f = recording_plane_field(&params(1.0), 0.0).unwrap();
        assert!((f.coeff_a0.norm_sqr() - 1f64.cosh().powi(2)).abs() < 1e-12);
        assert!((f.vacuum_intensity() - 2.0 * 1f64.sinh().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn field_rejects_non_finite_chi() {
        assert!(recording_plane_field(&params(1.0), f64::NAN).is_err());
    }

    #[test]
    fn adjoint_is_an_involution() {
        let f = recording_plane_field(&OpaParams::new(0.7, 1.1).unwrap(), 0.3).unwrap();
        assert_eq!(f.adjoint().adjoint(), f);
        assert!((f.adjoint().commutator() + f.commutator()).abs() < 1e-12);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn hyperbolic_identity_holds(g in 0.0f64..5.0, phi in 0.0f64..TAU) {
                let pair = opa_coefficients(&OpaParams::new(g, phi).unwrap());
                let scale = pair.u.norm_sqr();
                prop_assert!((pair.hyperbolic_identity() - 1.0).abs() <= 1e-12 * scale.max(1.0));
            }

            #[test]
            fn commutator_and_flat_intensity(g in 0.0f64..5.0, chi in -10.0f64..10.0) {
                let p = OpaParams::with_gain(g).unwrap();
                let f = recording_plane_field(&p, chi).unwrap();
                let scale = opa_coefficients(&p).u.norm_sqr();
                prop_assert!((f.commutator() - FIELD_COMMUTATOR).abs() <= 1e-12 * scale.max(1.0));
                let two_v2 = 2.0 * mode_intensity(&p);
                prop_assert!((f.vacuum_intensity() - two_v2).abs() <= 1e-12 * two_v2.max(1.0));
            }

            #[test]
            fn moduli_are_two_pi_periodic(g in 0.0f64..3.0, chi in -5.0f64..5.0) {
                let p = OpaParams::with_gain(g).unwrap();
                let a = recording_plane_field(&p, chi).unwrap();
                let b = recording_plane_field(&p, chi + TAU).unwrap();
                let pairs = [
                    (a.coeff_a0, b.coeff_a0),
                    (a.coeff_b0, b.coeff_b0),
                    (a.coeff_a0_dag, b.coeff_a0_dag),
                    (a.coeff_b0_dag, b.coeff_b0_dag),
                ];
                for (x, y) in pairs {
                    prop_assert!((x.norm_sqr() - y.norm_sqr()).abs() <= 1e-12 * g.cosh().powi(2));
                }
            }
        }
    }
}

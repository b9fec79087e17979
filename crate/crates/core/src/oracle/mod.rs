//! Exact evaluation of normally ordered moments on a truncated two-mode Fock
//! space, used as ground truth for the closed forms in [`crate::moments`].
//!
//! Every application of a field operator that is linear in the ladder
//! operators changes the total photon number by at most one, so `aᴺ|0,0⟩`
//! lives entirely in the shells `n_a + n_b <= N`. A cutoff equal to the
//! order therefore carries no truncation error.

mod basis;
mod operator;

pub use basis::{build_basis, FockBasis};
pub use operator::{Ladder, Mode, ModeOperator};

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::optics::{opa_coefficients, FieldExpansion, OpaParams};

/// Largest Fock cutoff accepted by [`build_basis`].
pub const MAX_CUTOFF: usize = 64;

/// Relative size of an imaginary part that is treated as an implementation
/// failure rather than rounding.
const IMAGINARY_RESIDUE_LIMIT: f64 = 1e-9;

pub fn field_operator(expansion: &FieldExpansion, basis: &FockBasis) -> ModeOperator {
    let a = ModeOperator::ladder(basis, Mode::A, Ladder::Lower);
    let b = ModeOperator::ladder(basis, Mode::B, Ladder::Lower);
    let a_dag = ModeOperator::ladder(basis, Mode::A, Ladder::Raise);
    let b_dag = ModeOperator::ladder(basis, Mode::B, Ladder::Raise);
    ModeOperator::linear_combination(
        basis,
        &[
            (expansion.coeff_a0, &a),
            (expansion.coeff_b0, &b),
            (expansion.coeff_a0_dag, &a_dag),
            (expansion.coeff_b0_dag, &b_dag),
        ],
    )
}

fn vacuum_state(basis: &FockBasis) -> Vec<Complex64> {
    let mut state = vec![Complex64::default(); basis.dimension()];
    state[basis.vacuum()] = Complex64::new(1.0, 0.0);
    state
}

fn real_part(z: Complex64) -> Result<f64> {
    if z.im.abs() > IMAGINARY_RESIDUE_LIMIT * z.re.abs().max(f64::MIN_POSITIVE) {
        return Err(Error::ImaginaryResidue {
            real: z.re,
            imag: z.im,
        });
    }
    Ok(z.re)
}

/// `‖opᴺ |0,0⟩‖²`, which equals `⟨0,0| op†ᴺ opᴺ |0,0⟩`.
fn vacuum_moment(op: &ModeOperator, order: usize) -> Result<f64> {
    let mut psi = vacuum_state(op.basis());
    for _ in 0..order {
        psi = op.apply(&psi);
    }
    let norm: Complex64 = psi.iter().map(|z| z.conj() * z).sum();
    real_part(norm)
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        return Err(invalid("order", "must be at least 1"));
    }
    if order > MAX_CUTOFF {
        return Err(Error::CutoffTooLarge(order));
    }
    Ok(())
}

/// `⟨a†ᴺ aᴺ⟩` in the two-mode vacuum for the field described by `expansion`.
pub fn normal_ordered_moment(expansion: &FieldExpansion, order: usize) -> Result<f64> {
    normal_ordered_moment_with_cutoff(expansion, order, order)
}

/// As [`normal_ordered_moment`] on a basis with an explicit cutoff, which
/// must be at least `order`.
pub fn normal_ordered_moment_with_cutoff(
    expansion: &FieldExpansion,
    order: usize,
    cutoff: usize,
) -> Result<f64> {
    check_order(order)?;
    if cutoff < order {
        return Err(invalid(
            "cutoff",
            format!("cutoff {cutoff} is below the order {order}"),
        ));
    }
    let basis = build_basis(cutoff)?;
    vacuum_moment(&field_operator(expansion, &basis), order)
}

/// Same moment as the vacuum element of the full matrix product
/// `(a†)ᴺ aᴺ`. A path leaving the `N`-photon space cannot return to the
/// vacuum within `2N` steps, so cutoff `N` is again exact.
pub fn normal_ordered_moment_by_products(expansion: &FieldExpansion, order: usize) -> Result<f64> {
    check_order(order)?;
    let basis = build_basis(order)?;
    let op = field_operator(expansion, &basis);
    let op_dag = op.adjoint();
    let mut total = op.clone();
    for _ in 1..order {
        total = op.product(&total);
    }
    for _ in 0..order {
        total = op_dag.product(&total);
    }
    real_part(total.element(basis.vacuum(), basis.vacuum()))
}

struct AmplifierOutputs {
    a2: ModeOperator,
    b2: ModeOperator,
}

/// Builds the amplifier outputs and the 50/50 beamsplitter from ladder
/// matrices: `a1 = U a0 + V b0†`, `b1 = U b0 + V a0†`,
/// `a2 = (−a1 + i b1)/√2`, `b2 = (i a1 − b1)/√2`.
fn amplifier_outputs(params: &OpaParams, basis: &FockBasis) -> AmplifierOutputs {
    let pair = opa_coefficients(params);
    let a0 = ModeOperator::ladder(basis, Mode::A, Ladder::Lower);
    let b0 = ModeOperator::ladder(basis, Mode::B, Ladder::Lower);
    let a0_dag = ModeOperator::ladder(basis, Mode::A, Ladder::Raise);
    let b0_dag = ModeOperator::ladder(basis, Mode::B, Ladder::Raise);
    let a1 = ModeOperator::linear_combination(basis, &[(pair.u, &a0), (pair.v, &b0_dag)]);
    let b1 = ModeOperator::linear_combination(basis, &[(pair.u, &b0), (pair.v, &a0_dag)]);
    let one = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let i = Complex64::new(0.0, FRAC_1_SQRT_2);
    AmplifierOutputs {
        a2: ModeOperator::linear_combination(basis, &[(-one, &a1), (i, &b1)]),
        b2: ModeOperator::linear_combination(basis, &[(i, &a1), (-one, &b1)]),
    }
}

/// Recording-plane field `a3 = e^{iχ} a2 + b2` assembled from the amplifier
/// and beamsplitter matrices, without going through [`FieldExpansion`].
pub fn recording_plane_operator(params: &OpaParams, chi: f64, basis: &FockBasis) -> ModeOperator {
    let out = amplifier_outputs(params, basis);
    ModeOperator::linear_combination(
        basis,
        &[
            (Complex64::from_polar(1.0, chi), &out.a2),
            (Complex64::new(1.0, 0.0), &out.b2),
        ],
    )
}

/// `⟨a3†ᴺ a3ᴺ⟩` from [`recording_plane_operator`].
pub fn oracle_moment(params: &OpaParams, chi: f64, order: usize) -> Result<f64> {
    check_order(order)?;
    if !chi.is_finite() {
        return Err(invalid("chi", format!("must be finite, got {chi}")));
    }
    let basis = build_basis(order)?;
    vacuum_moment(&recording_plane_operator(params, chi, &basis), order)
}

/// Photon number `⟨a2† a2⟩` of one beamsplitter output.
pub fn oracle_intensity_a2(params: &OpaParams) -> f64 {
    let basis = build_basis(1).expect("cutoff 1 is in range");
    let a2 = amplifier_outputs(params, &basis).a2;
    vacuum_moment(&a2, 1).expect("a norm has no imaginary part")
}

/// Vacuum expectation of `[op, op†]`.
pub fn oracle_commutator(op: &ModeOperator) -> Result<f64> {
    let basis = op.basis();
    let dag = op.adjoint();
    let comm = ModeOperator::linear_combination(
        basis,
        &[
            (Complex64::new(1.0, 0.0), &op.product(&dag)),
            (Complex64::new(-1.0, 0.0), &dag.product(op)),
        ],
    );
    real_part(comm.element(basis.vacuum(), basis.vacuum()))
}

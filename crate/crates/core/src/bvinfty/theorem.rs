use crate::linfty::{contraction_of, transfer, LInftyStructure};
use crate::scalar::{is_zero_vec, Parity, Scalar};
use crate::superalg::LinearOperator;

use super::{
    degeneration_check, fiber_structure, BVInfinity, BvError, DegenerationReport, HOperator,
};

/// Outcome of testing "degeneration ⇒ 𝔤 homotopy abelian" on one input.
#[derive(Clone, Debug)]
pub struct MainTheoremVerdict<S> {
    pub degenerate: bool,
    pub homotopy_abelian: bool,
    /// False only if the input is degenerate and 𝔤 is not homotopy abelian.
    pub consistent: bool,
    pub degeneration: DegenerationReport,
    /// Minimal model of 𝔤 up to the requested arity.
    pub minimal_model: LInftyStructure<S>,
}

/// Certifies degeneration up to `n_max` and computes the minimal model of the
/// fiber 𝔤 up to arity `up_to`.
pub fn main_theorem_check<S: Scalar>(
    bv: &BVInfinity<S>,
    up_to: usize,
    n_max: usize,
) -> Result<MainTheoremVerdict<S>, BvError> {
    let degeneration = degeneration_check(bv, n_max)?;
    let fiber = fiber_structure(bv, up_to);
    let c = contraction_of(fiber.space(), &fiber.m1_matrix())?;
    let minimal_model = transfer(&fiber, &c, up_to)?.structure;
    let degenerate = degeneration.is_degenerate();
    let homotopy_abelian = minimal_model.is_abelian();
    Ok(MainTheoremVerdict {
        degenerate,
        homotopy_abelian,
        consistent: !degenerate || homotopy_abelian,
        degeneration,
        minimal_model,
    })
}

/// The family `D(h) = e^{hR} D₀ e^{−hR}`, i.e. `D_n = ad(R)ⁿ(D₀)/n!`, truncated
/// at `h^N`. For `D₀` square-zero of order ≤ 1 and `R` even of order ≤ 2 with
/// `R(1) = 0`, this is a BV∞ family whose truncated homology is
/// `H(A, D₀) ⊗ k[h]/(h^N)`, hence degenerate.
pub fn gauge_family<S: Scalar>(
    d0: &LinearOperator<S>,
    r: &LinearOperator<S>,
    trunc: usize,
) -> Result<HOperator<S>, BvError> {
    if r.parity() != Parity::Even {
        return Err(BvError::Malformed("gauge generator must be even".into()));
    }
    let mut components = vec![d0.clone()];
    let mut term = d0.clone();
    for n in 1..trunc {
        term = r
            .graded_commutator(&term)
            .scale(&(S::one() / S::from_int(n as i64)));
        if term.is_zero() {
            break;
        }
        components.push(term.clone());
    }
    while components.len() > 1 && components.last().is_some_and(LinearOperator::is_zero) {
        components.pop();
    }
    HOperator::new(trunc, components)
}

/// True when `R` kills the unit, as a gauge generator must.
pub fn fixes_unit<S: Scalar>(r: &LinearOperator<S>, one: &[S]) -> bool {
    is_zero_vec(&r.apply(one))
}

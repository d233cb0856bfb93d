//! Exact dissimilarity values for analytically tractable copulas.
//!
//! Four functionals of a copula `C` drive the dissimilarity measures:
//! the centre-point value `C(1/2·1)`, the diagonal integral
//! `∫ C(t·1) dt`, the Lebesgue integral `∫ C dλ`, and the
//! self-concordance `∫ C dQ_C`. For polynomial copulas all four are finite
//! sums over monomials; for a comonotone block times a polynomial they
//! reduce to the polynomial case after collapsing the block onto a single
//! coordinate (exactly valid for every functional used here, because both
//! the integrand and the copula measure see only the block minimum).
//!
//! Lower-tail dissimilarities are not polynomial functionals; for the
//! families with a known tail limit (independence, comonotone, Clayton) the
//! population value is returned and the threshold parameter is ignored.

use copula_cluster::{ColumnSet, Error as CoreError, MeasureKind};

use crate::error::{LabError, Result};
use crate::poly::Poly;
use crate::spec::{fgm_triple_poly, CopulaSpec};

/// Analytic shape of a copula: plain polynomial, or a comonotone block of
/// leading coordinates times a polynomial on the remaining ones.
#[derive(Debug, Clone)]
pub(crate) enum CopulaForm {
    Poly(Poly),
    BlockMin { block: usize, rest: Poly },
}

/// `v * rest` as a polynomial in `1 + rest.dim()` variables, the new
/// variable first. Collapsing `min(u_1..u_b)` onto one coordinate is exact
/// for the functionals here: the copula's mass sits on the block diagonal.
fn prefix_coord(rest: &Poly) -> Poly {
    let raw = rest
        .terms()
        .iter()
        .map(|(c, exps)| {
            let mut e = Vec::with_capacity(exps.len() + 1);
            e.push(1u32);
            e.extend_from_slice(exps);
            (*c, e)
        })
        .collect();
    Poly::from_terms(rest.dim() + 1, raw)
}

impl CopulaForm {
    /// Margin onto the sorted coordinate set `keep`, re-indexed to
    /// `0..keep.len()`. Block coordinates precede rest coordinates, so the
    /// margined form keeps that layout; a block reduced to one survivor
    /// collapses into the polynomial part.
    fn margin(&self, keep: &[usize]) -> CopulaForm {
        match self {
            CopulaForm::Poly(p) => CopulaForm::Poly(p.margin(keep)),
            CopulaForm::BlockMin { block, rest } => {
                let in_block = keep.iter().take_while(|&&j| j < *block).count();
                let kept_rest: Vec<usize> =
                    keep[in_block..].iter().map(|&j| j - block).collect();
                let rest_margin = rest.margin(&kept_rest);
                match in_block {
                    0 => CopulaForm::Poly(rest_margin),
                    1 => CopulaForm::Poly(prefix_coord(&rest_margin)),
                    b => CopulaForm::BlockMin {
                        block: b,
                        rest: rest_margin,
                    },
                }
            }
        }
    }

    /// `C(1/2, ..., 1/2)`.
    fn center_value(&self) -> f64 {
        match self {
            CopulaForm::Poly(p) => p.eval_at_half(),
            CopulaForm::BlockMin { rest, .. } => 0.5 * rest.eval_at_half(),
        }
    }

    /// `∫_0^1 C(t, ..., t) dt`.
    fn diagonal_integral(&self) -> f64 {
        match self {
            CopulaForm::Poly(p) => p.diagonal_integral(),
            CopulaForm::BlockMin { rest, .. } => prefix_coord(rest).diagonal_integral(),
        }
    }

    /// `∫ C dλ` over the unit cube.
    fn lebesgue_integral(&self) -> f64 {
        match self {
            CopulaForm::Poly(p) => p.cube_integral(),
            CopulaForm::BlockMin { block, rest } => {
                // ∫ min(u_1..u_b) du = 1/(b+1), independent factor.
                rest.cube_integral() / (*block as f64 + 1.0)
            }
        }
    }

    /// `[C, C] = ∫ C dQ_C`.
    fn self_concordance(&self) -> f64 {
        match self {
            CopulaForm::Poly(p) => p.self_concordance(),
            CopulaForm::BlockMin { rest, .. } => prefix_coord(rest).self_concordance(),
        }
    }
}

/// Analytic form of the copula, if it has one.
pub(crate) fn polynomial_form(spec: &CopulaSpec) -> Option<CopulaForm> {
    match spec {
        CopulaSpec::Independence { dim } => Some(CopulaForm::Poly(Poly::product(*dim))),
        CopulaSpec::Comonotone { dim } => Some(CopulaForm::BlockMin {
            block: *dim,
            rest: Poly::constant(0, 1.0),
        }),
        CopulaSpec::FgmTriple { theta } => Some(CopulaForm::Poly(fgm_triple_poly(*theta))),
        CopulaSpec::PerturbedPi(p) => Some(CopulaForm::Poly(p.poly().clone())),
        CopulaSpec::BlockProduct(b) => Some(CopulaForm::BlockMin {
            block: b.block(),
            rest: b.rest().clone(),
        }),
        _ => None,
    }
}

fn measure_name(kind: MeasureKind) -> &'static str {
    match kind {
        MeasureKind::Beta => "beta",
        MeasureKind::Footrule => "footrule",
        MeasureKind::Kendall => "kendall",
        MeasureKind::Spearman => "spearman",
        MeasureKind::LowerTail { .. } => "lower-tail",
    }
}

/// Population lower-tail dissimilarity `1 − λ` where
/// `λ = lim_{t→0} C(t·1)/t` over the effective dimension.
fn lower_tail_limit(spec: &CopulaSpec, d_eff: usize) -> Result<f64> {
    match spec {
        // C(t·1) = t^d, so the tail coefficient vanishes for d ≥ 2.
        CopulaSpec::Independence { .. } => Ok(1.0),
        CopulaSpec::Comonotone { .. } => Ok(0.0),
        // C(t·1) = (d t^{−θ} − (d−1))^{−1/θ} ~ d^{−1/θ} t.
        CopulaSpec::Clayton { theta, .. } => Ok(1.0 - (d_eff as f64).powf(-1.0 / theta)),
        _ => Err(LabError::UnsupportedExact {
            family: spec.family_name(),
            measure: "lower-tail",
        }),
    }
}

/// Exact population dissimilarity between the variable sets `a` and `b`
/// under the copula `spec`.
///
/// Centre-point, footrule, Kendall, and Spearman types are evaluated via
/// monomial integration on the polynomial-representable families
/// (independence, comonotone, FGM triple, perturbed products, block
/// products). The lower-tail type returns the population limit for
/// independence, comonotone, and Clayton, ignoring the threshold `k`.
/// Any other combination reports an unsupported pairing.
pub fn exact_dissimilarity(
    spec: &CopulaSpec,
    a: &ColumnSet,
    b: &ColumnSet,
    kind: MeasureKind,
) -> Result<f64> {
    spec.validate()?;
    let union = a.union(b)?;
    if let Some(&max) = union.indices().last() {
        if max >= spec.dim() {
            return Err(LabError::Core(CoreError::ColumnOutOfBounds {
                index: max,
                cols: spec.dim(),
            }));
        }
    }
    let d_eff = union.len();
    if matches!(kind, MeasureKind::LowerTail { .. }) {
        return lower_tail_limit(spec, d_eff);
    }
    let form = polynomial_form(spec).ok_or(LabError::UnsupportedExact {
        family: spec.family_name(),
        measure: measure_name(kind),
    })?;
    let margin = form.margin(union.indices());
    Ok(match kind {
        MeasureKind::Beta => 0.5 - margin.center_value(),
        MeasureKind::Footrule => 0.5 - margin.diagonal_integral(),
        MeasureKind::Kendall => 0.5 - margin.self_concordance(),
        MeasureKind::Spearman => 1.0 / (d_eff as f64 + 1.0) - margin.lebesgue_integral(),
        MeasureKind::LowerTail { .. } => unreachable!("handled above"),
    })
}

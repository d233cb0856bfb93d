//! Copula family specifications with validated parameters.
//!
//! A [`CopulaSpec`] names a concrete copula: either a classical parametric
//! family (Clayton, Frank, Gumbel, equicorrelated Gaussian), a degenerate
//! reference (independence, comonotone), or an explicit polynomial
//! construction. Polynomial copulas come in two shapes:
//!
//! * [`PerturbedPi`]: a plain multivariate polynomial `C(u)`, typically the
//!   product copula plus a vanishing-at-the-boundary perturbation;
//! * [`BlockProduct`]: `min(u_1..u_b) * R(u_{b+1}..u_d)` — a comonotone
//!   block juxtaposed independently with a polynomial copula `R`.
//!
//! Polynomial constructors verify the copula properties that are checkable
//! on a polynomial: groundedness (every monomial touches every coordinate),
//! value 1 at the upper corner, exactly uniform univariate margins, and a
//! non-negative density on a `33^min(d,4)` validation grid (the density of
//! the instances shipped here depends only on their first four coordinates,
//! so the grid scan is exhaustive in the directions that matter).

use crate::error::{LabError, Result};
use crate::poly::Poly;

/// Number of grid points per axis used for density validation and for the
/// rejection-sampling bound.
const GRID_POINTS: usize = 33;
/// Safety factor applied to the grid maximum to obtain the rejection bound.
const BOUND_SAFETY: f64 = 1.25;
/// Tolerance for the polynomial copula checks.
const POLY_TOL: f64 = 1e-9;

/// Scans the density polynomial over a `GRID_POINTS^min(d,4)` grid (first
/// four coordinates; any remaining coordinates pinned at 1/2) and returns
/// the observed `(min, max)`.
pub(crate) fn density_grid_extrema(density: &Poly) -> (f64, f64) {
    let dim = density.dim();
    let axes = dim.min(4);
    let mut point = vec![0.5; dim];
    if axes == 0 {
        let v = density.eval(&point);
        return (v, v);
    }
    let step = 1.0 / (GRID_POINTS as f64 - 1.0);
    let mut idx = vec![0usize; axes];
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    loop {
        for (axis, &i) in idx.iter().enumerate() {
            point[axis] = i as f64 * step;
        }
        let v = density.eval(&point);
        lo = lo.min(v);
        hi = hi.max(v);
        // Mixed-radix increment over the grid indices.
        let mut carry = 0;
        loop {
            idx[carry] += 1;
            if idx[carry] < GRID_POINTS {
                break;
            }
            idx[carry] = 0;
            carry += 1;
            if carry == axes {
                return (lo, hi);
            }
        }
    }
}

/// Checks the polynomial copula properties that admit an exact or
/// grid-based test. Returns the rejection-sampling bound (grid maximum of
/// the density times a safety factor) on success.
fn validate_copula_poly(poly: &Poly) -> Result<(Poly, f64)> {
    if poly.dim() == 0 {
        return Err(LabError::NotACopula {
            reason: "polynomial has no variables".into(),
        });
    }
    for (_, exps) in poly.terms() {
        if exps.iter().any(|&e| e == 0) {
            return Err(LabError::NotACopula {
                reason: "a monomial is independent of some coordinate, so the \
                         polynomial is not grounded"
                    .into(),
            });
        }
    }
    let at_one = poly.eval(&vec![1.0; poly.dim()]);
    if (at_one - 1.0).abs() > POLY_TOL {
        return Err(LabError::NotACopula {
            reason: format!("value at the upper corner is {at_one}, expected 1"),
        });
    }
    for j in 0..poly.dim() {
        let margin = poly.margin(&[j]);
        let diff = margin.sub(&Poly::coord(1, 0));
        if diff.terms().iter().any(|(c, _)| c.abs() > POLY_TOL) {
            return Err(LabError::NotACopula {
                reason: format!("margin of coordinate {j} is not uniform"),
            });
        }
    }
    let density = poly.mixed_partial();
    let (lo, hi) = density_grid_extrema(&density);
    if lo < -POLY_TOL {
        return Err(LabError::NotACopula {
            reason: format!("density reaches {lo} on the validation grid"),
        });
    }
    Ok((density, hi.max(0.0) * BOUND_SAFETY))
}

/// A validated plain-polynomial copula.
#[derive(Debug, Clone)]
pub struct PerturbedPi {
    poly: Poly,
    density: Poly,
    rejection_bound: f64,
}

impl PerturbedPi {
    /// Validates `poly` as a copula and precomputes its density and
    /// rejection-sampling bound.
    pub fn new(poly: Poly) -> Result<Self> {
        if poly.dim() < 2 {
            return Err(LabError::DimensionTooSmall {
                family: "perturbed-pi",
                min: 2,
                got: poly.dim(),
            });
        }
        let (density, rejection_bound) = validate_copula_poly(&poly)?;
        Ok(PerturbedPi {
            poly,
            density,
            rejection_bound,
        })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub(crate) fn density(&self) -> &Poly {
        &self.density
    }

    pub(crate) fn rejection_bound(&self) -> f64 {
        self.rejection_bound
    }
}

/// A validated comonotone-block-times-polynomial copula:
/// `C(u) = min(u_1, ..., u_block) * rest(u_{block+1}, ..., u_d)`.
#[derive(Debug, Clone)]
pub struct BlockProduct {
    block: usize,
    rest: Poly,
    rest_density: Poly,
    rejection_bound: f64,
}

impl BlockProduct {
    /// Validates the rest polynomial as a copula; the comonotone block is a
    /// copula by construction.
    pub fn new(block: usize, rest: Poly) -> Result<Self> {
        if block < 2 {
            return Err(LabError::InvalidParameter {
                family: "block-product",
                reason: format!("comonotone block must have at least 2 coordinates, got {block}"),
            });
        }
        if rest.dim() == 0 {
            return Err(LabError::InvalidParameter {
                family: "block-product",
                reason: "rest polynomial must have at least one coordinate \
                         (use the comonotone family for a pure block)"
                    .into(),
            });
        }
        let (rest_density, rejection_bound) = validate_copula_poly(&rest)?;
        Ok(BlockProduct {
            block,
            rest,
            rest_density,
            rejection_bound,
        })
    }

    pub fn block(&self) -> usize {
        self.block
    }

    pub fn rest(&self) -> &Poly {
        &self.rest
    }

    pub(crate) fn rest_density(&self) -> &Poly {
        &self.rest_density
    }

    pub(crate) fn rejection_bound(&self) -> f64 {
        self.rejection_bound
    }

    pub fn dim(&self) -> usize {
        self.block + self.rest.dim()
    }
}

/// A concrete copula: family plus parameters.
#[derive(Debug, Clone)]
pub enum CopulaSpec {
    /// Product copula Π.
    Independence { dim: usize },
    /// Upper Fréchet bound M: all coordinates are one common uniform.
    Comonotone { dim: usize },
    /// Clayton with θ > 0 (lower-tail dependent).
    Clayton { dim: usize, theta: f64 },
    /// Frank with θ > 0. Dimensions above 2 require a completely monotone
    /// generator, which restricts θ to the positive half-line; the negative
    /// range is therefore not offered.
    Frank { dim: usize, theta: f64 },
    /// Gumbel with θ ≥ 1 (θ = 1 is independence).
    Gumbel { dim: usize, theta: f64 },
    /// Gaussian copula with a single correlation ρ on all off-diagonals,
    /// ρ ∈ (−1/(d−1), 1).
    GaussianEquicorr { dim: usize, rho: f64 },
    /// Trivariate FGM-type copula with a single third-order term:
    /// `u1 u2 u3 (1 + θ (1−u1)(1−u2)(1−u3))`, θ ∈ [−1, 1]. All bivariate
    /// margins are exactly independent; the dependence sits in the triple.
    FgmTriple { theta: f64 },
    /// Validated plain-polynomial copula.
    PerturbedPi(PerturbedPi),
    /// Comonotone block times a validated polynomial copula.
    BlockProduct(BlockProduct),
}

fn require_dim(family: &'static str, dim: usize, min: usize) -> Result<()> {
    if dim < min {
        return Err(LabError::DimensionTooSmall { family, min, got: dim });
    }
    Ok(())
}

fn require_param(family: &'static str, ok: bool, reason: String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(LabError::InvalidParameter { family, reason })
    }
}

impl CopulaSpec {
    pub fn independence(dim: usize) -> Result<Self> {
        require_dim("independence", dim, 2)?;
        Ok(CopulaSpec::Independence { dim })
    }

    pub fn comonotone(dim: usize) -> Result<Self> {
        require_dim("comonotone", dim, 2)?;
        Ok(CopulaSpec::Comonotone { dim })
    }

    pub fn clayton(dim: usize, theta: f64) -> Result<Self> {
        let spec = CopulaSpec::Clayton { dim, theta };
        spec.validate()?;
        Ok(spec)
    }

    pub fn frank(dim: usize, theta: f64) -> Result<Self> {
        let spec = CopulaSpec::Frank { dim, theta };
        spec.validate()?;
        Ok(spec)
    }

    pub fn gumbel(dim: usize, theta: f64) -> Result<Self> {
        let spec = CopulaSpec::Gumbel { dim, theta };
        spec.validate()?;
        Ok(spec)
    }

    pub fn gaussian_equicorr(dim: usize, rho: f64) -> Result<Self> {
        let spec = CopulaSpec::GaussianEquicorr { dim, rho };
        spec.validate()?;
        Ok(spec)
    }

    pub fn fgm_triple(theta: f64) -> Result<Self> {
        let spec = CopulaSpec::FgmTriple { theta };
        spec.validate()?;
        Ok(spec)
    }

    pub fn perturbed_pi(poly: Poly) -> Result<Self> {
        Ok(CopulaSpec::PerturbedPi(PerturbedPi::new(poly)?))
    }

    pub fn block_product(block: usize, rest: Poly) -> Result<Self> {
        Ok(CopulaSpec::BlockProduct(BlockProduct::new(block, rest)?))
    }

    /// Perturbation of independence whose three leading pairs are tilted by
    /// three different amounts (the pairwise centre-point gaps stand in the
    /// ratio 1 : 2 : 4). Coordinates beyond the third are independent.
    ///
    /// `C(u) = Π(u) − (1/3) Σ_{(a,b)} (1−u_a)(1−u_b) · u_a^{e_a} u_b^{e_b}
    ///          · Π_{i∉{a,b}} u_i`
    ///
    /// over the pairs `(a,b) ∈ {(1,2),(1,3),(2,3)}` with tilt exponents
    /// `e_1 = 3, e_2 = 2, e_3 = 1`. Each pair term touches only its own
    /// pair's exponents, which keeps the trivariate density non-negative
    /// (its minimum is exactly 0, at the upper corner); a single common
    /// factor `u1³u2²u3` shared across the pair sum would drive the
    /// density to −1 there. The bivariate margins are
    /// `u_a u_b − (1/3)(1−u_a)(1−u_b) u_a^{e_a} u_b^{e_b}`, giving
    /// centre-point gaps `(1/3)/2⁷`, `(2/3)/2⁷`, `(4/3)/2⁷`.
    pub fn perturbed_pi_graded(dim: usize) -> Result<Self> {
        require_dim("perturbed-pi", dim, 3)?;
        let mut pert = Poly::zero(dim);
        for (a, b) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let mut exps = vec![1u32; dim];
            exps[a] = 3 - a as u32;
            exps[b] = 3 - b as u32;
            let factor = Poly::from_terms(dim, vec![(1.0, exps)]);
            let term = Poly::one_minus_coord(dim, a)
                .mul(&Poly::one_minus_coord(dim, b))
                .mul(&factor);
            pert = pert.add(&term);
        }
        let poly = Poly::product(dim).sub(&pert.scale(1.0 / 3.0));
        CopulaSpec::perturbed_pi(poly)
    }

    /// Perturbation of independence that every proper margin collapses to
    /// plain independence (in particular all bivariate margins are exactly
    /// Π), yet the full vector is dependent:
    ///
    /// `C(u) = Π(u) + Π_i u_i (1 − u_i)`
    pub fn perturbed_pi_pairwise_independent(dim: usize) -> Result<Self> {
        require_dim("perturbed-pi", dim, 3)?;
        let mut pert = Poly::constant(dim, 1.0);
        for j in 0..dim {
            pert = pert.mul(&Poly::coord(dim, j).mul(&Poly::one_minus_coord(dim, j)));
        }
        CopulaSpec::perturbed_pi(Poly::product(dim).add(&pert))
    }

    /// Perturbation of independence concentrated on the first four
    /// coordinates; margins that drop any of those four are exactly
    /// independent:
    ///
    /// `C(u) = Π(u) + (Π_i u_i) · Π_{i≤4} (1 − u_i)`
    pub fn perturbed_pi_quad(dim: usize) -> Result<Self> {
        require_dim("perturbed-pi", dim, 4)?;
        let mut pert = Poly::product(dim);
        for j in 0..4 {
            pert = pert.mul(&Poly::one_minus_coord(dim, j));
        }
        CopulaSpec::perturbed_pi(Poly::product(dim).add(&pert))
    }

    /// Comonotone block of `block` coordinates, independent of `rest_dim`
    /// further coordinates that are themselves independent:
    /// `C(u) = min(u_1..u_block) · Π(u_rest)`.
    pub fn min_block_product(block: usize, rest_dim: usize) -> Result<Self> {
        if rest_dim == 0 {
            return Err(LabError::InvalidParameter {
                family: "block-product",
                reason: "rest dimension must be positive".into(),
            });
        }
        CopulaSpec::block_product(block, Poly::product(rest_dim))
    }

    /// Comonotone pair juxtaposed with an independent tail whose first two
    /// coordinates carry extra positive dependence:
    ///
    /// `C(u) = min(u1, u2) · Π_{i≥3} u_i · (1 − ½ (1−u3)(1−u4))`
    pub fn min_pair_coupled_tail(dim: usize) -> Result<Self> {
        require_dim("block-product", dim, 4)?;
        let r = dim - 2;
        let tilt = Poly::constant(r, 1.0).sub(
            &Poly::one_minus_coord(r, 0)
                .mul(&Poly::one_minus_coord(r, 1))
                .scale(0.5),
        );
        CopulaSpec::block_product(2, Poly::product(r).mul(&tilt))
    }

    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        match self {
            CopulaSpec::Independence { dim }
            | CopulaSpec::Comonotone { dim }
            | CopulaSpec::Clayton { dim, .. }
            | CopulaSpec::Frank { dim, .. }
            | CopulaSpec::Gumbel { dim, .. }
            | CopulaSpec::GaussianEquicorr { dim, .. } => *dim,
            CopulaSpec::FgmTriple { .. } => 3,
            CopulaSpec::PerturbedPi(p) => p.poly().dim(),
            CopulaSpec::BlockProduct(b) => b.dim(),
        }
    }

    /// Short family label for error messages and reports.
    pub fn family_name(&self) -> &'static str {
        match self {
            CopulaSpec::Independence { .. } => "independence",
            CopulaSpec::Comonotone { .. } => "comonotone",
            CopulaSpec::Clayton { .. } => "clayton",
            CopulaSpec::Frank { .. } => "frank",
            CopulaSpec::Gumbel { .. } => "gumbel",
            CopulaSpec::GaussianEquicorr { .. } => "gaussian-equicorr",
            CopulaSpec::FgmTriple { .. } => "fgm-triple",
            CopulaSpec::PerturbedPi(_) => "perturbed-pi",
            CopulaSpec::BlockProduct(_) => "block-product",
        }
    }

    /// Checks dimension and parameter domains. Polynomial variants were
    /// validated on construction, so this is cheap for every family.
    pub fn validate(&self) -> Result<()> {
        match *self {
            CopulaSpec::Independence { dim } => require_dim("independence", dim, 2),
            CopulaSpec::Comonotone { dim } => require_dim("comonotone", dim, 2),
            CopulaSpec::Clayton { dim, theta } => {
                require_dim("clayton", dim, 2)?;
                require_param(
                    "clayton",
                    theta.is_finite() && theta > 0.0,
                    format!("theta must be finite and positive, got {theta}"),
                )
            }
            CopulaSpec::Frank { dim, theta } => {
                require_dim("frank", dim, 2)?;
                require_param(
                    "frank",
                    theta.is_finite() && theta > 0.0,
                    format!("theta must be finite and positive, got {theta}"),
                )
            }
            CopulaSpec::Gumbel { dim, theta } => {
                require_dim("gumbel", dim, 2)?;
                require_param(
                    "gumbel",
                    theta.is_finite() && theta >= 1.0,
                    format!("theta must be finite and at least 1, got {theta}"),
                )
            }
            CopulaSpec::GaussianEquicorr { dim, rho } => {
                require_dim("gaussian-equicorr", dim, 2)?;
                let lower = -1.0 / (dim as f64 - 1.0);
                require_param(
                    "gaussian-equicorr",
                    rho.is_finite() && rho > lower && rho < 1.0,
                    format!("rho must lie in ({lower}, 1), got {rho}"),
                )
            }
            CopulaSpec::FgmTriple { theta } => require_param(
                "fgm-triple",
                theta.is_finite() && (-1.0..=1.0).contains(&theta),
                format!("theta must lie in [-1, 1], got {theta}"),
            ),
            // Validated on construction.
            CopulaSpec::PerturbedPi(_) | CopulaSpec::BlockProduct(_) => Ok(()),
        }
    }
}

/// The polynomial of the trivariate single-term FGM copula.
pub(crate) fn fgm_triple_poly(theta: f64) -> Poly {
    let mut pert = Poly::constant(3, 1.0);
    for j in 0..3 {
        pert = pert.mul(&Poly::coord(3, j).mul(&Poly::one_minus_coord(3, j)));
    }
    Poly::product(3).add(&pert.scale(theta))
}

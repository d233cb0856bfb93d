//! Seeded copula samplers.
//!
//! Every sampler is a deterministic function of `(spec, n, seed)`. The
//! Archimedean families use frailty mixing: a positive latent variable `V`
//! with the right Laplace transform `ψ` turns independent exponentials into
//! `U_j = ψ(E_j / V)`. Gamma frailty gives Clayton, positive-stable gives
//! Gumbel, log-series gives Frank. The Gaussian uses the equicorrelation
//! factor decomposition, and polynomial copulas are drawn by rejection
//! against the uniform density with a precomputed bound.

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Exp1, Gamma, StandardNormal};

use copula_cluster::DataMatrix;

use crate::error::{LabError, Result};
use crate::poly::Poly;
use crate::spec::{density_grid_extrema, fgm_triple_poly, CopulaSpec};

/// Derives an independent child seed from a master seed and an index
/// (SplitMix64-style finalizer). Parallel replications must use
/// `derive_seed(seed, replication_index)` so that any batch split of the
/// replication range reproduces the same streams.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn open01(rng: &mut ChaCha12Rng) -> f64 {
    rng.sample(Open01)
}

/// Standard normal CDF via the complementary error function.
fn norm_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Kanter's representation of the positive α-stable law with Laplace
/// transform `exp(−s^α)`, 0 < α < 1. Evaluated in log space to survive the
/// extreme exponents that arise when α approaches 1.
fn positive_stable(alpha: f64, rng: &mut ChaCha12Rng) -> f64 {
    let t = open01(rng) * std::f64::consts::PI;
    let w: f64 = rng.sample(Exp1);
    let ln_a = ((1.0 - alpha) * t).sin().ln()
        + alpha / (1.0 - alpha) * ((alpha * t).sin()).ln()
        - (t.sin()).ln() / (1.0 - alpha);
    ((1.0 - alpha) / alpha * (ln_a - w.ln())).exp()
}

/// Log-series frailty for the Frank generator, parameterized directly by
/// θ > 0 (success parameter p = 1 − e^{−θ}). Uses the mixture
/// representation: T with CDF ln(1−t)/ln(1−p) on (0, p), then a geometric
/// draw with failure probability T — two uniforms, no iteration.
fn log_series(theta: f64, rng: &mut ChaCha12Rng) -> f64 {
    let u = open01(rng);
    let v = open01(rng);
    // q = 1 − (1−p)^u = 1 − e^{−uθ}, computed without cancellation.
    let q = -(-u * theta).exp_m1();
    if q <= 0.0 {
        return 1.0;
    }
    let k = (1.0 + v.ln() / q.ln()).floor();
    k.clamp(1.0, 1e18)
}

/// One row of a polynomial copula via rejection sampling. `density` is the
/// copula's mixed partial; `bound` the precomputed grid bound.
fn rejection_row(
    density: &Poly,
    bound: f64,
    u: &mut [f64],
    rng: &mut ChaCha12Rng,
) -> Result<()> {
    loop {
        for x in u.iter_mut() {
            *x = open01(rng);
        }
        let dens = density.eval(u);
        if dens < -1e-9 {
            return Err(LabError::NotACopula {
                reason: format!("density {dens} encountered while sampling"),
            });
        }
        if dens > bound {
            return Err(LabError::RejectionBoundExceeded {
                value: dens,
                bound,
            });
        }
        if rng.random::<f64>() * bound < dens {
            return Ok(());
        }
    }
}

/// Draws `n` i.i.d. rows from the copula, returned column-major
/// (`dim` columns of length `n`), entries in (0, 1). Deterministic for a
/// fixed `(spec, n, seed)`.
pub fn sample(spec: &CopulaSpec, n: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    spec.validate()?;
    let d = spec.dim();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut cols = vec![Vec::with_capacity(n); d];
    match spec {
        CopulaSpec::Independence { .. } => {
            for _ in 0..n {
                for col in cols.iter_mut() {
                    col.push(open01(&mut rng));
                }
            }
        }
        CopulaSpec::Comonotone { .. } => {
            for _ in 0..n {
                let v = open01(&mut rng);
                for col in cols.iter_mut() {
                    col.push(v);
                }
            }
        }
        CopulaSpec::Clayton { theta, .. } => {
            let gamma = Gamma::new(1.0 / theta, 1.0)
                .expect("validated Clayton theta yields a positive Gamma shape");
            for _ in 0..n {
                let mut v: f64 = gamma.sample(&mut rng);
                while v <= 0.0 {
                    v = gamma.sample(&mut rng);
                }
                for col in cols.iter_mut() {
                    let e: f64 = rng.sample(Exp1);
                    col.push((1.0 + e / v).powf(-1.0 / theta));
                }
            }
        }
        CopulaSpec::Frank { theta, .. } => {
            // ψ(s) = −ln(1 + e^{−s}(e^{−θ}−1))/θ, the Laplace transform of
            // the log-series frailty.
            let w = (-theta).exp_m1();
            for _ in 0..n {
                let v = log_series(*theta, &mut rng);
                for col in cols.iter_mut() {
                    let e: f64 = rng.sample(Exp1);
                    col.push(-((-e / v).exp() * w).ln_1p() / theta);
                }
            }
        }
        CopulaSpec::Gumbel { theta, .. } => {
            if *theta == 1.0 {
                for _ in 0..n {
                    for col in cols.iter_mut() {
                        col.push(open01(&mut rng));
                    }
                }
            } else {
                let alpha = 1.0 / theta;
                for _ in 0..n {
                    let v = positive_stable(alpha, &mut rng);
                    for col in cols.iter_mut() {
                        let e: f64 = rng.sample(Exp1);
                        col.push((-(e / v).powf(alpha)).exp());
                    }
                }
            }
        }
        CopulaSpec::GaussianEquicorr { dim, rho } => {
            let a = (1.0 - rho).sqrt();
            let b = ((1.0 + (*dim as f64 - 1.0) * rho).sqrt() - a) / *dim as f64;
            let mut z = vec![0.0f64; d];
            for _ in 0..n {
                for zj in z.iter_mut() {
                    *zj = rng.sample(StandardNormal);
                }
                let s: f64 = z.iter().sum();
                for (col, &zj) in cols.iter_mut().zip(&z) {
                    col.push(norm_cdf(a * zj + b * s));
                }
            }
        }
        CopulaSpec::FgmTriple { theta } => {
            let density = fgm_triple_poly(*theta).mixed_partial();
            let bound = density_grid_extrema(&density).1.max(0.0) * 1.25;
            let mut row = vec![0.0; d];
            for _ in 0..n {
                rejection_row(&density, bound, &mut row, &mut rng)?;
                for (col, &x) in cols.iter_mut().zip(&row) {
                    col.push(x);
                }
            }
        }
        CopulaSpec::PerturbedPi(p) => {
            let mut row = vec![0.0; d];
            for _ in 0..n {
                rejection_row(p.density(), p.rejection_bound(), &mut row, &mut rng)?;
                for (col, &x) in cols.iter_mut().zip(&row) {
                    col.push(x);
                }
            }
        }
        CopulaSpec::BlockProduct(bp) => {
            let block = bp.block();
            let mut row = vec![0.0; d - block];
            for _ in 0..n {
                let v = open01(&mut rng);
                for col in cols.iter_mut().take(block) {
                    col.push(v);
                }
                rejection_row(bp.rest_density(), bp.rejection_bound(), &mut row, &mut rng)?;
                for (col, &x) in cols.iter_mut().skip(block).zip(&row) {
                    col.push(x);
                }
            }
        }
    }
    Ok(cols)
}

/// Samples into a [`DataMatrix`] with synthetic column names `v1..vd`.
pub fn sample_matrix(spec: &CopulaSpec, n: usize, seed: u64) -> Result<DataMatrix> {
    let cols = sample(spec, n, seed)?;
    let names = (1..=cols.len()).map(|j| format!("v{j}")).collect();
    Ok(DataMatrix::from_columns(cols, names)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use copula_cluster::{diss_kendall, ColumnSet};

    /// Empirical pairwise Kendall's tau of two sampled columns.
    fn pairwise_tau(spec: &CopulaSpec, n: usize, seed: u64) -> f64 {
        let m = sample_matrix(spec, n, seed).unwrap();
        let p = m.to_pseudo_observations();
        let d = diss_kendall(&p, &ColumnSet::singleton(0), &ColumnSet::singleton(1)).unwrap();
        1.0 - 4.0 * d
    }

    #[test]
    fn determinism_and_seed_sensitivity() {
        let spec = CopulaSpec::clayton(3, 1.5).unwrap();
        assert_eq!(sample(&spec, 50, 7).unwrap(), sample(&spec, 50, 7).unwrap());
        assert_ne!(sample(&spec, 50, 7).unwrap(), sample(&spec, 50, 8).unwrap());
    }

    #[test]
    fn comonotone_columns_identical() {
        let spec = CopulaSpec::comonotone(4).unwrap();
        let cols = sample(&spec, 100, 3).unwrap();
        for j in 1..4 {
            assert_eq!(cols[0], cols[j]);
        }
    }

    #[test]
    fn entries_lie_in_open_unit_interval() {
        for spec in [
            CopulaSpec::independence(2).unwrap(),
            CopulaSpec::clayton(2, 0.5).unwrap(),
            CopulaSpec::frank(2, 3.0).unwrap(),
            CopulaSpec::gumbel(2, 1.4).unwrap(),
            CopulaSpec::gaussian_equicorr(2, -0.4).unwrap(),
            CopulaSpec::fgm_triple(0.8).unwrap(),
            CopulaSpec::min_pair_coupled_tail(4).unwrap(),
        ] {
            let cols = sample(&spec, 500, 11).unwrap();
            assert!(cols
                .iter()
                .flatten()
                .all(|&u| u > 0.0 && u < 1.0 && u.is_finite()));
        }
    }

    #[test]
    fn independence_tau_near_zero() {
        let spec = CopulaSpec::independence(2).unwrap();
        let tau = pairwise_tau(&spec, 2000, 13);
        assert!(tau.abs() < 3.0 / (2000f64).sqrt(), "tau {tau}");
    }

    #[test]
    fn clayton_tau_matches_target() {
        let theta = crate::params::tau_to_param(crate::params::TauFamily::Clayton, 0.3).unwrap();
        let spec = CopulaSpec::clayton(2, theta).unwrap();
        let tau = pairwise_tau(&spec, 4000, 17);
        assert!((tau - 0.3).abs() < 0.03, "tau {tau}");
    }

    #[test]
    fn gumbel_tau_matches_target() {
        // θ = 2 gives τ = 1 − 1/θ = 0.5.
        let spec = CopulaSpec::gumbel(2, 2.0).unwrap();
        let tau = pairwise_tau(&spec, 4000, 19);
        assert!((tau - 0.5).abs() < 0.03, "tau {tau}");
    }

    #[test]
    fn frank_tau_matches_target() {
        let theta = crate::params::tau_to_param(crate::params::TauFamily::Frank, 0.3).unwrap();
        let spec = CopulaSpec::frank(2, theta).unwrap();
        let tau = pairwise_tau(&spec, 4000, 23);
        assert!((tau - 0.3).abs() < 0.03, "tau {tau}");
    }

    #[test]
    fn gaussian_tau_matches_target() {
        let rho =
            crate::params::tau_to_param(crate::params::TauFamily::GaussianEquicorr, 0.3).unwrap();
        let spec = CopulaSpec::gaussian_equicorr(2, rho).unwrap();
        let tau = pairwise_tau(&spec, 4000, 29);
        assert!((tau - 0.3).abs() < 0.03, "tau {tau}");
    }

    #[test]
    fn fgm_triple_pairwise_independent_in_sample() {
        let spec = CopulaSpec::fgm_triple(1.0).unwrap();
        let m = sample_matrix(&spec, 2000, 31).unwrap();
        let p = m.to_pseudo_observations();
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let d = diss_kendall(&p, &ColumnSet::singleton(i), &ColumnSet::singleton(j)).unwrap();
            let tau = 1.0 - 4.0 * d;
            assert!(tau.abs() < 0.08, "pair ({i},{j}): tau {tau}");
        }
    }

    #[test]
    fn block_product_block_is_comonotone() {
        let spec = CopulaSpec::min_block_product(2, 2).unwrap();
        let cols = sample(&spec, 200, 37).unwrap();
        assert_eq!(cols[0], cols[1]);
        assert_ne!(cols[2], cols[3]);
    }

    #[test]
    fn derived_seeds_are_distinct_and_stable() {
        let mut seen = std::collections::HashSet::new();
        for i in 0..100 {
            assert!(seen.insert(derive_seed(42, i)));
        }
        assert_eq!(derive_seed(42, 5), derive_seed(42, 5));
        assert_ne!(derive_seed(42, 5), derive_seed(43, 5));
    }

    #[test]
    fn sample_matrix_names_columns() {
        let spec = CopulaSpec::independence(3).unwrap();
        let m = sample_matrix(&spec, 10, 1).unwrap();
        assert_eq!(m.column_names(), &["v1", "v2", "v3"]);
        assert_eq!(m.n_rows(), 10);
    }
}

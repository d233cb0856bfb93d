//! Copula laboratory: reference copulas, seeded samplers, exact
//! dissimilarity evaluators, and a Monte-Carlo oracle.
//!
//! This crate complements the estimators in `copula-cluster` with ground
//! truth. A [`CopulaSpec`] describes a concrete dependence structure —
//! classical parametric families (Clayton, Frank, Gumbel, equicorrelated
//! Gaussian), degenerate references (independence, comonotone), or explicit
//! polynomial constructions. From a spec you can:
//!
//! * [`sample`] / [`sample_matrix`]: draw seeded i.i.d. observations;
//! * [`exact_dissimilarity`]: evaluate population dissimilarities in closed
//!   form where the copula is polynomial-representable (or has a known
//!   lower-tail limit);
//! * [`mc_oracle`]: estimate any dissimilarity by simulation, with a
//!   batch-means standard error;
//! * [`tau_to_param`]: convert a target pairwise Kendall's τ into family
//!   parameters.
//!
//! All randomness is explicit: samplers take a `u64` seed, and parallel
//! replications derive child seeds via [`derive_seed`].

mod error;
mod exact;
mod oracle;
mod params;
mod poly;
mod sample;
mod spec;

pub use error::{LabError, Result};
pub use exact::exact_dissimilarity;
pub use oracle::{mc_oracle, McEstimate, ORACLE_BATCHES};
pub use params::{debye1, frank_tau, tau_to_param, TauFamily};
pub use poly::Poly;
pub use sample::{derive_seed, sample, sample_matrix};
pub use spec::{BlockProduct, CopulaSpec, PerturbedPi};

//! Multivariate polynomial algebra on the unit cube.
//!
//! Polynomial copulas (independence, perturbations of independence, FGM-type
//! families) admit closed forms for every functional this crate needs: point
//! evaluation, the integral along the main diagonal, the integral against
//! Lebesgue measure, and the self-concordance integral `∫ C dQ_C`. All of
//! them reduce to sums over monomial terms, so this module stores a dense
//! term list and implements the four functionals exactly (up to f64
//! rounding).
//!
//! Terms are kept normalized: sorted by exponent vector, like terms combined,
//! exact-zero coefficients dropped. Equality on normalized polynomials is
//! therefore structural.

use std::collections::BTreeMap;

/// Polynomial in `dim` variables over the unit cube, stored as a sum of
/// monomials `coeff * u_1^{e_1} ... u_dim^{e_dim}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    dim: usize,
    /// Normalized monomials: `(coefficient, exponents)`, exponents of length
    /// `dim`, sorted by exponent vector, no duplicates, no zero coefficients.
    terms: Vec<(f64, Vec<u32>)>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero(dim: usize) -> Self {
        Poly { dim, terms: vec![] }
    }

    /// The constant polynomial `c`.
    pub fn constant(dim: usize, c: f64) -> Self {
        Poly::from_terms(dim, vec![(c, vec![0; dim])])
    }

    /// The coordinate monomial `u_j`.
    pub fn coord(dim: usize, j: usize) -> Self {
        assert!(j < dim, "coordinate index out of range");
        let mut exps = vec![0; dim];
        exps[j] = 1;
        Poly::from_terms(dim, vec![(1.0, exps)])
    }

    /// The polynomial `1 - u_j`.
    pub fn one_minus_coord(dim: usize, j: usize) -> Self {
        Poly::constant(dim, 1.0).sub(&Poly::coord(dim, j))
    }

    /// The product copula `u_1 u_2 ... u_dim`.
    pub fn product(dim: usize) -> Self {
        Poly::from_terms(dim, vec![(1.0, vec![1; dim])])
    }

    /// Builds a polynomial from raw terms, normalizing as it goes.
    pub fn from_terms(dim: usize, raw: Vec<(f64, Vec<u32>)>) -> Self {
        let mut map: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        for (c, e) in raw {
            assert!(e.len() == dim, "exponent vector length mismatch");
            *map.entry(e).or_insert(0.0) += c;
        }
        let terms = map
            .into_iter()
            .filter(|&(_, c)| c != 0.0)
            .map(|(e, c)| (c, e))
            .collect();
        Poly { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(f64, Vec<u32>)] {
        &self.terms
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut raw = self.terms.iter().map(|(c, e)| (*c, e.clone())).collect::<Vec<_>>();
        raw.extend(other.terms.iter().map(|(c, e)| (*c, e.clone())));
        Poly::from_terms(self.dim, raw)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, factor: f64) -> Poly {
        Poly::from_terms(
            self.dim,
            self.terms.iter().map(|(c, e)| (c * factor, e.clone())).collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (cs, es) in &self.terms {
            for (ct, et) in &other.terms {
                let exps: Vec<u32> = es.iter().zip(et).map(|(a, b)| a + b).collect();
                raw.push((cs * ct, exps));
            }
        }
        Poly::from_terms(self.dim, raw)
    }

    /// Evaluates the polynomial at `u`.
    pub fn eval(&self, u: &[f64]) -> f64 {
        assert_eq!(u.len(), self.dim, "point dimension mismatch");
        let mut acc = 0.0;
        for (c, exps) in &self.terms {
            let mut term = *c;
            for (&uj, &ej) in u.iter().zip(exps) {
                term *= uj.powi(ej as i32);
            }
            acc += term;
        }
        acc
    }

    /// Evaluates at the centre of the cube, `u = (1/2, ..., 1/2)`.
    pub fn eval_at_half(&self) -> f64 {
        self.eval(&vec![0.5; self.dim])
    }

    /// `∫_0^1 p(t, t, ..., t) dt`  — each monomial contributes
    /// `c / (e_1 + ... + e_dim + 1)`.
    pub fn diagonal_integral(&self) -> f64 {
        self.terms
            .iter()
            .map(|(c, exps)| {
                let total: u32 = exps.iter().sum();
                c / f64::from(total + 1)
            })
            .sum()
    }

    /// `∫_{[0,1]^dim} p(u) du` — each monomial contributes
    /// `c * Π_j 1/(e_j + 1)`.
    pub fn cube_integral(&self) -> f64 {
        self.terms
            .iter()
            .map(|(c, exps)| {
                let denom: f64 = exps.iter().map(|&e| f64::from(e + 1)).product();
                c / denom
            })
            .sum()
    }

    /// The mixed partial `∂^dim p / ∂u_1 ... ∂u_dim`.
    ///
    /// Monomials missing any coordinate vanish; the rest map to
    /// `c Π_j e_j * u^{e_j - 1}`.
    pub fn mixed_partial(&self) -> Poly {
        let raw = self
            .terms
            .iter()
            .filter(|(_, exps)| exps.iter().all(|&e| e >= 1))
            .map(|(c, exps)| {
                let factor: f64 = exps.iter().map(|&e| f64::from(e)).product();
                let dropped: Vec<u32> = exps.iter().map(|&e| e - 1).collect();
                (c * factor, dropped)
            })
            .collect();
        Poly::from_terms(self.dim, raw)
    }

    /// `∫ p dQ_p` where `Q_p` has density `∂^dim p / ∂u_1 ... ∂u_dim`.
    ///
    /// Expanding both sums: `Σ_s Σ_t c_s c_t Π_j e_{t,j} / (e_{s,j} + e_{t,j})`,
    /// where `t` ranges over monomials with every exponent at least one.
    pub fn self_concordance(&self) -> f64 {
        let mut acc = 0.0;
        for (ct, et) in &self.terms {
            if et.iter().any(|&e| e == 0) {
                continue;
            }
            for (cs, es) in &self.terms {
                let mut factor = 1.0;
                for (&esj, &etj) in es.iter().zip(et) {
                    factor *= f64::from(etj) / f64::from(esj + etj);
                }
                acc += cs * ct * factor;
            }
        }
        acc
    }

    /// Margin onto the (sorted, distinct) coordinates `keep`: all other
    /// variables are set to 1 and the survivors are re-indexed to
    /// `0..keep.len()` in order.
    pub fn margin(&self, keep: &[usize]) -> Poly {
        assert!(keep.windows(2).all(|w| w[0] < w[1]), "keep must be sorted and distinct");
        assert!(keep.iter().all(|&j| j < self.dim), "margin coordinate out of range");
        let raw = self
            .terms
            .iter()
            .map(|(c, exps)| {
                let kept: Vec<u32> = keep.iter().map(|&j| exps[j]).collect();
                (*c, kept)
            })
            .collect();
        Poly::from_terms(keep.len(), raw)
    }

    /// Maximum total degree across monomials (0 for the zero polynomial).
    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(_, exps)| exps.iter().sum())
            .max()
            .unwrap_or(0)
    }
}

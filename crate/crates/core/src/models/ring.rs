//! Two-arm bosonic ring in the single-particle sector.
//!
//! The ring is two engineered chains sharing their first and last sites
//! (A and B). `IndependentArms` treats the arms as separate chains for
//! interference bookkeeping; `CoupledRing` builds one hopping matrix on
//! `N_U + N_L - 2` sites with the explicit minus sign the hopping sum
//! carries. Interactions and on-site offsets vanish identically with a
//! single particle, so neither appears here.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::matrix::SquareComplexMatrix;

use super::chain::{build_xy_chain, ChainSpec};

/// Which ring picture to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingModel {
    /// Two separate chains evolved independently.
    IndependentArms,
    /// One matrix on the shared-site ring graph.
    CoupledRing,
}

/// Ring geometry: sites per arm and the common coupling scale.
#[derive(Clone, Copy, Debug)]
pub struct RingSpec {
    pub upper_sites: usize,
    pub lower_sites: usize,
    pub coupling: f64,
    pub model: RingModel,
}

impl RingSpec {
    pub fn new(
        upper_sites: usize,
        lower_sites: usize,
        coupling: f64,
        model: RingModel,
    ) -> Result<Self> {
        if upper_sites < 2 || lower_sites < 2 {
            return Err(Error::InvalidSpec(format!(
                "ring arms need at least 2 sites each, got {upper_sites} and {lower_sites}"
            )));
        }
        if coupling <= 0.0 || !coupling.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "ring coupling must be positive, got {coupling}"
            )));
        }
        Ok(Self {
            upper_sites,
            lower_sites,
            coupling,
            model,
        })
    }
}

/// Output of `build_ring_hamiltonian`.
#[derive(Clone, Debug)]
pub enum RingHamiltonian {
    /// The two arm matrices, each on its own site register.
    IndependentArms {
        upper: SquareComplexMatrix,
        lower: SquareComplexMatrix,
    },
    /// One matrix on the ring graph, with the indices of the shared sites.
    CoupledRing {
        matrix: SquareComplexMatrix,
        site_a: usize,
        site_b: usize,
    },
}

/// Build the requested ring picture.
pub fn build_ring_hamiltonian(spec: &RingSpec) -> Result<RingHamiltonian> {
    match spec.model {
        RingModel::IndependentArms => Ok(RingHamiltonian::IndependentArms {
            upper: build_xy_chain(&ChainSpec::new(spec.upper_sites, spec.coupling)?)?,
            lower: build_xy_chain(&ChainSpec::new(spec.lower_sites, spec.coupling)?)?,
        }),
        RingModel::CoupledRing => {
            let nu = spec.upper_sites;
            let nl = spec.lower_sites;
            let dim = nu + nl - 2;
            let site_a = 0usize;
            let site_b = nu - 1;
            // Global index of chain position `i` (1-based) on each arm.
            let upper_site = |i: usize| -> usize {
                if i == 1 {
                    site_a
                } else {
                    i - 1 // positions 2..=nu map to 1..=nu-1, ending at B
                }
            };
            let lower_site = |i: usize| -> usize {
                if i == 1 {
                    site_a
                } else if i == nl {
                    site_b
                } else {
                    nu - 2 + i // interior positions 2..=nl-1 map to nu..=nu+nl-3
                }
            };
            let mut h = SquareComplexMatrix::zeros(dim);
            let mut add_bond = |a: usize, b: usize, j: f64| {
                h[(a, b)] += C64::new(-j, 0.0);
                h[(b, a)] += C64::new(-j, 0.0);
            };
            for bond in 1..nu {
                let j = spec.coupling * ((bond * (nu - bond)) as f64).sqrt() / 2.0;
                add_bond(upper_site(bond), upper_site(bond + 1), j);
            }
            for bond in 1..nl {
                let j = spec.coupling * ((bond * (nl - bond)) as f64).sqrt() / 2.0;
                add_bond(lower_site(bond), lower_site(bond + 1), j);
            }
            Ok(RingHamiltonian::CoupledRing {
                matrix: h,
                site_a,
                site_b,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn independent_arms_are_plain_chains() {
        let spec = RingSpec::new(7, 5, 1.0, RingModel::IndependentArms).unwrap();
        match build_ring_hamiltonian(&spec).unwrap() {
            RingHamiltonian::IndependentArms { upper, lower } => {
                assert_eq!(upper.dim(), 7);
                assert_eq!(lower.dim(), 5);
                let chain = build_xy_chain(&ChainSpec::new(7, 1.0).unwrap()).unwrap();
                assert!(upper.max_abs_diff(&chain) < 1e-15);
            }
            other => panic!("unexpected variant {other:?}"),
        }
    }

    #[test]
    fn small_coupled_ring_structure() {
        // N_U = N_L = 3 gives a 4-site square ring, Hermitian, with both
        // arms tridiagonal through the shared endpoints.
        let spec = RingSpec::new(3, 3, 1.0, RingModel::CoupledRing).unwrap();
        match build_ring_hamiltonian(&spec).unwrap() {
            RingHamiltonian::CoupledRing {
                matrix,
                site_a,
                site_b,
            } => {
                assert_eq!(matrix.dim(), 4);
                assert!(matrix.hermitian_asymmetry() < 1e-15);
                assert_eq!(site_a, 0);
                assert_eq!(site_b, 2);
                // Every site on a two-arm ring has exactly two neighbors.
                for i in 0..4 {
                    let neighbors = (0..4)
                        .filter(|&j| j != i && matrix[(i, j)].norm() > 1e-15)
                        .count();
                    assert_eq!(neighbors, 2, "site {i}");
                }
                // Hopping entries carry the explicit minus sign.
                assert!(matrix[(0, 1)].re < 0.0);
            }
            other => panic!("unexpected variant {other:?}"),
        }
    }

    #[test]
    fn coupled_ring_dimension_is_shared_site_count() {
        let spec = RingSpec::new(7, 5, 1.0, RingModel::CoupledRing).unwrap();
        match build_ring_hamiltonian(&spec).unwrap() {
            RingHamiltonian::CoupledRing { matrix, .. } => assert_eq!(matrix.dim(), 10),
            other => panic!("unexpected variant {other:?}"),
        }
    }

    #[test]
    fn degree_counts_match_ring_graph() {
        let spec = RingSpec::new(5, 4, 2.0, RingModel::CoupledRing).unwrap();
        if let RingHamiltonian::CoupledRing { matrix, .. } = build_ring_hamiltonian(&spec).unwrap()
        {
            let dim = matrix.dim();
            for i in 0..dim {
                let neighbors = (0..dim)
                    .filter(|&j| j != i && matrix[(i, j)].norm() > 1e-15)
                    .count();
                assert_eq!(neighbors, 2, "site {i}");
            }
        } else {
            panic!("expected coupled ring");
        }
    }

    #[test]
    fn rejects_tiny_arms() {
        assert!(RingSpec::new(1, 5, 1.0, RingModel::CoupledRing).is_err());
        assert!(RingSpec::new(5, 0, 1.0, RingModel::IndependentArms).is_err());
    }
}

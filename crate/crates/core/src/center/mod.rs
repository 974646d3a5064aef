//! The center of S: Heisenberg symmetry, good bases, the central elements
//! g and z_i, the relation F and the Veronese data.

mod basis;
mod heisenberg;
mod presentation;

use thiserror::Error;

use crate::curve::CurveError;
use crate::freealg::RewriteError;

pub use basis::{family_for_class, find_tau, identify_rho, table_family, GoodBasis};
pub use heisenberg::{H3Element, Mat3};
pub use presentation::{
    central_g, central_relation_f, central_z, compute_center, correction_count, cubic_monomials,
    eval_in_u, express_central, extract_structural_data, g_coefficient, g_formula, g_normalizer, g_raw,
    independence_witness, nf_pow, rewrite_for, solve_f3, veronese_residue, weighted_monomials,
    z_formula, CenterOptions, CenterPresentation, CentralProducts, Structure, G, U_NAMES, Z_NAMES,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CenterError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("sigma has no finite order up to {0}")]
    NotPi(u32),
    #[error("PI degree {n} exceeds the configured maximum {max}")]
    TooLarge { n: u32, max: u32 },
    #[error("{what} is not central: [{what}, {generator}] = {witness}")]
    NotCentral {
        what: String,
        generator: char,
        witness: String,
    },
    #[error("no correction coefficients make z1 central")]
    NoSolution,
    #[error("correction coefficients are not unique ({0} free parameters)")]
    NonUnique(usize),
    #[error("kernel of the degree-{degree} monomial map has dimension {dim}, expected 1")]
    KernelDim { degree: u32, dim: usize },
    #[error("structure of F: {0}")]
    Structure(String),
    #[error("no table family gives a good basis: {0:?}")]
    NoGoodBasis(Vec<String>),
    #[error("{0}")]
    Rho(String),
    #[error("Veronese identity fails: {0}")]
    Veronese(String),
}

pub mod exactfield;
pub mod freealg;
pub mod curve;
pub mod commpoly;
pub mod linalg;
pub mod center;
pub mod poisson;
pub mod specialize;
pub mod strata;
pub mod reps;
pub mod cli;

//! Exact conformal weights, ellipticity criteria and refined Kato constants
//! for first-order conformally invariant operators on SO(n)/Spin(n) bundles.

pub mod casimir;
pub mod cli;
pub mod decomposition;
pub mod ellipticity;
pub mod kato;
pub mod numeric;
pub mod oracle;
pub mod tables;
pub mod verify;
pub mod weights;

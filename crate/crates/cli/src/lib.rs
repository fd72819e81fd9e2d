//! Report rendering, fixture verification and the floating-point oracle
//! behind the `wres` binary.

pub mod fixtures;
pub mod oracle;
pub mod report;
pub mod verify;

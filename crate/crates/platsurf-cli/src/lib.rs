//! Pipelines behind the `platsurf` command line tool: reference tables,
//! shared orbit handling and the acceptance suite.

pub mod golden;
pub mod pipeline;
pub mod verify;

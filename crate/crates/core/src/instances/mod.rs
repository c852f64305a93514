//! Test and benchmark instances.

mod analytic;
mod generator;
mod io;

pub use analytic::{analytic_instance, AnalyticKind, CentralPath};
pub use generator::{
    generate_checked, generate_random_qp, Generated, GeneratorSpec, RawStats, MAX_RETRIES,
};
pub use io::{qp_from_json, qp_to_json, read_qp, write_qp};

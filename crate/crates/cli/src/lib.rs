//! Library side of the `logqp` command-line tool: the `solve` driver and the
//! iteration-count benchmark.

pub mod bench;
pub mod solve;

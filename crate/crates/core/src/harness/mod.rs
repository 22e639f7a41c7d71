//! File formats, generators, solver dispatch and the self-test driver.

pub mod gen;
pub mod io;
pub mod run;

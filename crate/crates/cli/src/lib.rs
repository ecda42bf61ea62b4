//! Support library for the `superhh` binary: the JSON spec-file format and
//! the builtin catalog resolver. Lives in a lib target so integration tests
//! can exercise parsing and canonical export directly.

pub mod builtin;
pub mod format;

#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit 2.
    Input(String),
    /// The mathematics failed: exit 1.
    Math(String),
}

//! Resolution of `builtin:` names to catalog algebras and contexts.

use std::sync::Arc;

use superhh_core::builders;
use superhh_core::exactlin::FieldTag;
use superhh_core::superalg::SuperAlgebra;
use superhh_core::MoritaContext;

use crate::Failure;

pub const PREFIX: &str = "builtin:";

pub fn is_builtin(token: &str) -> bool {
    token.starts_with(PREFIX)
}

fn bad(token: &str) -> Failure {
    Failure::Input(format!(
        "unknown builtin {token:?}; run `superhh builtin-list` for the available names"
    ))
}

fn parse_sizes(token: &str, sizes: &str) -> Result<(usize, usize), Failure> {
    let (p, q) = sizes.split_once(',').ok_or_else(|| bad(token))?;
    let p = p.trim().parse().map_err(|_| bad(token))?;
    let q = q.trim().parse().map_err(|_| bad(token))?;
    Ok((p, q))
}

fn core_err(e: superhh_core::Error) -> Failure {
    Failure::Input(e.to_string())
}

/// Resolves `builtin:<name>` to an algebra.
pub fn algebra(token: &str, field: FieldTag) -> Result<Arc<SuperAlgebra>, Failure> {
    let name = token.strip_prefix(PREFIX).ok_or_else(|| bad(token))?;
    let algebra = match name {
        "field" => builders::ground_field(field),
        "dual-even" => builders::dual_numbers(superhh_core::Parity::Even, field),
        "dual-odd" => builders::dual_numbers(superhh_core::Parity::Odd, field),
        "clifford1" => builders::clifford1(field).map_err(core_err)?,
        "clifford1x2" => {
            let cl = builders::clifford1(field).map_err(core_err)?;
            cl.graded_tensor(&cl).map_err(core_err)?
        }
        _ => {
            let sizes = name
                .strip_prefix("matrix-super:")
                .ok_or_else(|| bad(token))?;
            let (p, q) = parse_sizes(token, sizes)?;
            builders::matrix_superalgebra(p, q, field).map_err(core_err)?
        }
    };
    Ok(Arc::new(algebra))
}

/// Resolves `builtin:matrix:p,q` or `builtin:self:<algebra>` to a context.
pub fn context(token: &str, field: FieldTag) -> Result<MoritaContext, Failure> {
    let name = token.strip_prefix(PREFIX).ok_or_else(|| bad(token))?;
    if let Some(sizes) = name.strip_prefix("matrix:") {
        let (p, q) = parse_sizes(token, sizes)?;
        return builders::standard_matrix_context(p, q, field).map_err(core_err);
    }
    if let Some(inner) = name.strip_prefix("self:") {
        let a = algebra(&format!("{PREFIX}{inner}"), field)?;
        return Ok(builders::self_context(a));
    }
    Err(bad(token))
}

pub const ALGEBRA_NAMES: &[(&str, &str)] = &[
    ("builtin:field", "the ground field, all even"),
    ("builtin:dual-even", "dual numbers, even nilpotent"),
    ("builtin:dual-odd", "dual numbers, odd nilpotent"),
    (
        "builtin:clifford1",
        "Clifford algebra on one odd unit-square generator",
    ),
    ("builtin:clifford1x2", "graded tensor square of clifford1"),
    (
        "builtin:matrix-super:P,Q",
        "matrix superalgebra M(P|Q), e.g. matrix-super:1,1",
    ),
];

pub const CONTEXT_NAMES: &[(&str, &str)] = &[
    (
        "builtin:matrix:P,Q",
        "M(P|Q) with its column and row modules over the ground field",
    ),
    (
        "builtin:self:<algebra>",
        "an algebra paired with itself by regular bimodules",
    ),
];

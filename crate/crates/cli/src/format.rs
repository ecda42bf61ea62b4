//! The JSON input/output formats. Coefficients travel as exact strings
//! ("3", "-1/2"); floats never parse. Export is canonical: fixed key
//! order, product entries sorted by index, scalars in lowest terms, so
//! export -> parse -> export is byte identical.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use superhh_core::bimod::GradedBimodule;
use superhh_core::exactlin::{FieldTag, Scalar};
use superhh_core::superalg::{BasisElement, Parity, SuperAlgebra};

use crate::Failure;

#[derive(Debug, Serialize, Deserialize)]
pub struct BasisEntry {
    pub label: String,
    pub parity: u8,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Term {
    pub k: usize,
    pub coeff: String,
}

/// One sparse table row: the expansion of the pair `(i, j)`. For products
/// both indices run over the algebra basis; for a left action `i` is the
/// algebra index and `j` the module index; for a right action `i` is the
/// module index and `j` the algebra index.
#[derive(Debug, Serialize, Deserialize)]
pub struct TableEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<Term>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecFile {
    pub name: String,
    pub field: String,
    pub basis: Vec<BasisEntry>,
    pub unit: Vec<String>,
    pub products: Vec<TableEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleSpecFile {
    pub name: String,
    pub left_algebra: String,
    pub right_algebra: String,
    pub basis: Vec<BasisEntry>,
    pub left_action: Vec<TableEntry>,
    pub right_action: Vec<TableEntry>,
}

pub enum SpecFile {
    Algebra(AlgebraSpecFile),
    Bimodule(BimoduleSpecFile),
}

/// Reads either file kind, discriminating on the `products` key.
pub fn read_spec(path: &str) -> Result<SpecFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{path}: invalid JSON: {e}")))?;
    let object = value
        .as_object()
        .ok_or_else(|| Failure::Input(format!("{path}: expected a JSON object")))?;
    if object.contains_key("products") {
        let spec = serde_json::from_value(value.clone())
            .map_err(|e| Failure::Input(format!("{path}: {e}")))?;
        Ok(SpecFile::Algebra(spec))
    } else if object.contains_key("left_action") {
        let spec = serde_json::from_value(value.clone())
            .map_err(|e| Failure::Input(format!("{path}: {e}")))?;
        Ok(SpecFile::Bimodule(spec))
    } else {
        Err(Failure::Input(format!(
            "{path}: neither an algebra file (products) nor a bimodule file (left_action)"
        )))
    }
}

fn parse_basis(entries: &[BasisEntry], at: &str) -> Result<Vec<BasisElement>, Failure> {
    entries
        .iter()
        .map(|e| {
            let parity = match e.parity {
                0 => Parity::Even,
                1 => Parity::Odd,
                other => {
                    return Err(Failure::Input(format!(
                        "{at}: parity must be 0 or 1, found {other}"
                    )))
                }
            };
            Ok(BasisElement {
                label: e.label.clone(),
                parity,
            })
        })
        .collect()
}

#[allow(clippy::type_complexity)]
fn parse_table(
    entries: &[TableEntry],
    field: FieldTag,
    at: &str,
) -> Result<Vec<((usize, usize), Vec<(usize, Scalar)>)>, Failure> {
    entries
        .iter()
        .map(|entry| {
            let terms = entry
                .terms
                .iter()
                .map(|t| {
                    let coeff = field
                        .parse(&t.coeff)
                        .map_err(|e| Failure::Input(format!("{at}: {e}")))?;
                    Ok((t.k, coeff))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            Ok(((entry.i, entry.j), terms))
        })
        .collect()
}

pub fn algebra_from_spec(spec: &AlgebraSpecFile) -> Result<SuperAlgebra, Failure> {
    let at = &spec.name;
    let field: FieldTag = spec
        .field
        .parse()
        .map_err(|e| Failure::Input(format!("{at}: {e}")))?;
    let basis = parse_basis(&spec.basis, at)?;
    let unit = spec
        .unit
        .iter()
        .map(|s| {
            field
                .parse(s)
                .map_err(|e| Failure::Input(format!("{at}: unit: {e}")))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let products = parse_table(&spec.products, field, at)?;
    SuperAlgebra::new(spec.name.clone(), field, basis, unit, products)
        .map_err(|e| Failure::Input(format!("{at}: {e}")))
}

pub fn bimodule_from_spec(
    spec: &BimoduleSpecFile,
    algebras: &HashMap<String, Arc<SuperAlgebra>>,
) -> Result<GradedBimodule, Failure> {
    let at = &spec.name;
    let look = |name: &str| {
        algebras.get(name).cloned().ok_or_else(|| {
            Failure::Input(format!(
                "{at}: references algebra {name:?}, which is not loaded in this invocation"
            ))
        })
    };
    let left = look(&spec.left_algebra)?;
    let right = look(&spec.right_algebra)?;
    let field = left.field();
    let basis = parse_basis(&spec.basis, at)?;
    let left_action = parse_table(&spec.left_action, field, at)?;
    let right_action = parse_table(&spec.right_action, field, at)?;
    GradedBimodule::new(
        spec.name.clone(),
        left,
        right,
        basis,
        left_action,
        right_action,
    )
    .map_err(|e| Failure::Input(format!("{at}: {e}")))
}

fn basis_entries(basis: &[BasisElement]) -> Vec<BasisEntry> {
    basis
        .iter()
        .map(|b| BasisEntry {
            label: b.label.clone(),
            parity: b.parity.is_odd() as u8,
        })
        .collect()
}

fn table_entries<'a>(
    pairs: impl Iterator<Item = ((usize, usize), &'a [(usize, Scalar)])>,
) -> Vec<TableEntry> {
    let mut entries: Vec<TableEntry> = pairs
        .filter(|(_, terms)| !terms.is_empty())
        .map(|((i, j), terms)| {
            let mut terms: Vec<Term> = terms
                .iter()
                .map(|(k, c)| Term {
                    k: *k,
                    coeff: c.to_string(),
                })
                .collect();
            terms.sort_by_key(|t| t.k);
            TableEntry { i, j, terms }
        })
        .collect();
    entries.sort_by_key(|e| (e.i, e.j));
    entries
}

pub fn algebra_to_spec(a: &SuperAlgebra) -> AlgebraSpecFile {
    let dim = a.dim();
    let pairs = (0..dim).flat_map(|i| (0..dim).map(move |j| ((i, j), a.product_terms(i, j))));
    AlgebraSpecFile {
        name: a.name().to_string(),
        field: a.field().to_string(),
        basis: basis_entries(a.basis()),
        unit: a.unit().iter().map(|c| c.to_string()).collect(),
        products: table_entries(pairs),
    }
}

pub fn bimodule_to_spec(m: &GradedBimodule) -> BimoduleSpecFile {
    let dim = m.dim();
    let left_dim = m.left_algebra().dim();
    let right_dim = m.right_algebra().dim();
    let left_pairs =
        (0..left_dim).flat_map(|i| (0..dim).map(move |j| ((i, j), m.left_terms(i, j))));
    let right_pairs =
        (0..dim).flat_map(|i| (0..right_dim).map(move |j| ((i, j), m.right_terms(i, j))));
    BimoduleSpecFile {
        name: m.name().to_string(),
        left_algebra: m.left_algebra().name().to_string(),
        right_algebra: m.right_algebra().name().to_string(),
        basis: basis_entries(m.basis()),
        left_action: table_entries(left_pairs),
        right_action: table_entries(right_pairs),
    }
}

pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("spec types serialize");
    text.push('\n');
    text
}

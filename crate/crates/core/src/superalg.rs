//! Finite-dimensional Z2-graded (super) algebras given by structure
//! constants, their validation, graded tensor products, and
//! supercommutators.

use std::collections::HashMap;
use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use serde::Serialize;

use crate::error::Error;
use crate::exactlin::{self, FieldTag, Scalar, SparseVec};

/// Z2 degree of a homogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Result<Parity, Error> {
        match bit {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            other => Err(Error::InvalidStructure(format!(
                "parity must be 0 or 1, got {other}"
            ))),
        }
    }

    pub fn bit(&self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(&self) -> bool {
        matches!(self, Parity::Odd)
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// `-1` when both parities are odd, `+1` otherwise: the sign picked up when
/// two homogeneous elements move past each other.
pub fn koszul_sign(a: Parity, b: Parity) -> i64 {
    if a.is_odd() && b.is_odd() {
        -1
    } else {
        1
    }
}

/// A labeled homogeneous basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub parity: Parity,
}

/// Structure-constant tables: key `(i, j)` holds the expansion of
/// `e_i * e_j`; absent keys mean the product is zero.
pub type ProductTable = HashMap<(usize, usize), Vec<(usize, Scalar)>>;

static EMPTY_TERMS: [(usize, Scalar); 0] = [];

/// A finite-dimensional superalgebra over an exact field. Immutable after
/// construction and freely shareable across threads.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperAlgebra {
    name: String,
    field: FieldTag,
    basis: Vec<BasisElement>,
    unit: Vec<Scalar>,
    products: ProductTable,
}

/// Structural identity check: pointer equality (the cheap, common case for
/// builder-produced `Arc`s) or full structural equality as a fallback so
/// that independently loaded copies of the same algebra interoperate.
pub fn same_algebra(a: &Arc<SuperAlgebra>, b: &Arc<SuperAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl SuperAlgebra {
    /// Structural construction: checks shapes and index ranges, normalizes
    /// the tables (sorted terms, zeros dropped), but does not check the
    /// algebra axioms; see [`SuperAlgebra::validate`].
    pub fn new(
        name: impl Into<String>,
        field: FieldTag,
        basis: Vec<BasisElement>,
        unit: Vec<Scalar>,
        products: impl IntoIterator<Item = ((usize, usize), Vec<(usize, Scalar)>)>,
    ) -> Result<SuperAlgebra, Error> {
        let name = name.into();
        let dim = basis.len();
        if dim == 0 {
            return Err(Error::InvalidStructure(format!(
                "algebra {name:?} has an empty basis"
            )));
        }
        if unit.len() != dim {
            return Err(Error::Shape(format!(
                "unit of {name:?} has {} coefficients, basis has {dim}",
                unit.len()
            )));
        }
        for c in &unit {
            if c.field() != field {
                return Err(Error::FieldMismatch(format!(
                    "unit coefficient of {name:?}"
                )));
            }
        }
        let mut table: ProductTable = HashMap::new();
        for ((i, j), terms) in products {
            if i >= dim || j >= dim {
                return Err(Error::IndexOutOfRange(format!(
                    "product key ({i}, {j}) in {name:?}, dimension {dim}"
                )));
            }
            if table.contains_key(&(i, j)) {
                return Err(Error::InvalidStructure(format!(
                    "duplicate product key ({i}, {j}) in {name:?}"
                )));
            }
            let mut merged: HashMap<usize, Scalar> = HashMap::new();
            for (k, c) in terms {
                if k >= dim {
                    return Err(Error::IndexOutOfRange(format!(
                        "product term index {k} in {name:?}, dimension {dim}"
                    )));
                }
                if c.field() != field {
                    return Err(Error::FieldMismatch(format!(
                        "coefficient in product ({i}, {j}) of {name:?}"
                    )));
                }
                match merged.get_mut(&k) {
                    Some(old) => *old = &*old + &c,
                    None => {
                        merged.insert(k, c);
                    }
                }
            }
            let mut clean: Vec<(usize, Scalar)> =
                merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            clean.sort_by_key(|(k, _)| *k);
            if !clean.is_empty() {
                table.insert((i, j), clean);
            }
        }
        Ok(SuperAlgebra {
            name,
            field,
            basis,
            unit,
            products: table,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis[i].parity
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Expansion of `e_i * e_j`; empty slice when the product vanishes.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        self.products
            .get(&(i, j))
            .map_or(&EMPTY_TERMS, |v| v.as_slice())
    }

    /// Bilinear extension of the structure constants to coefficient vectors.
    pub fn multiply_coeffs(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let factor = xi * yj;
                for (k, c) in self.product_terms(i, j) {
                    out[*k] = &out[*k] + &(&factor * c);
                }
            }
        }
        out
    }

    /// Checks the superalgebra axioms and reports every violation: parity
    /// homogeneity of all products, associativity on all basis triples,
    /// two-sided unit laws, and evenness of the unit.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new(&self.name);
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let expected = self.parity(i) + self.parity(j);
                for (k, _) in self.product_terms(i, j) {
                    if self.parity(*k) != expected {
                        report.push(
                            Axiom::ParityHomogeneity,
                            vec![i, j, *k],
                            format!(
                                "{} * {} hits {} of parity {}, expected {}",
                                self.label(i),
                                self.label(j),
                                self.label(*k),
                                self.parity(*k),
                                expected
                            ),
                        );
                    }
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let left = self.multiply_coeffs(
                        &self.multiply_coeffs(&basis_coeffs(self, i), &basis_coeffs(self, j)),
                        &basis_coeffs(self, k),
                    );
                    let right = self.multiply_coeffs(
                        &basis_coeffs(self, i),
                        &self.multiply_coeffs(&basis_coeffs(self, j), &basis_coeffs(self, k)),
                    );
                    if left != right {
                        report.push(
                            Axiom::Associativity,
                            vec![i, j, k],
                            format!(
                                "({} {}) {} differs from {} ({} {})",
                                self.label(i),
                                self.label(j),
                                self.label(k),
                                self.label(i),
                                self.label(j),
                                self.label(k)
                            ),
                        );
                    }
                }
            }
        }
        for j in 0..dim {
            let e = basis_coeffs(self, j);
            if self.multiply_coeffs(&self.unit, &e) != e {
                report.push(
                    Axiom::UnitLaw,
                    vec![j],
                    format!("1 * {} differs", self.label(j)),
                );
            }
            if self.multiply_coeffs(&e, &self.unit) != e {
                report.push(
                    Axiom::UnitLaw,
                    vec![j],
                    format!("{} * 1 differs", self.label(j)),
                );
            }
        }
        for (i, c) in self.unit.iter().enumerate() {
            if !c.is_zero() && self.parity(i).is_odd() {
                report.push(
                    Axiom::UnitParity,
                    vec![i],
                    format!("unit has odd support at {}", self.label(i)),
                );
            }
        }
        report
    }

    /// Graded tensor product `A (x) B` with product
    /// `(a (x) b)(a' (x) b') = (-1)^{|b||a'|} (a a') (x) (b b')`.
    pub fn graded_tensor(&self, other: &SuperAlgebra) -> Result<SuperAlgebra, Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "graded tensor of {:?} over {} with {:?} over {}",
                self.name, self.field, other.name, other.field
            )));
        }
        let (da, db) = (self.dim(), other.dim());
        let pair = |i: usize, j: usize| i * db + j;
        let basis: Vec<BasisElement> = (0..da)
            .flat_map(|i| {
                (0..db).map(move |j| BasisElement {
                    label: format!("{}⊗{}", self.label(i), other.label(j)),
                    parity: self.parity(i) + other.parity(j),
                })
            })
            .collect();
        let mut unit = vec![self.field.zero(); da * db];
        for (i, ci) in self.unit.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in other.unit.iter().enumerate() {
                if !cj.is_zero() {
                    unit[pair(i, j)] = ci * cj;
                }
            }
        }
        let mut products: Vec<((usize, usize), Vec<(usize, Scalar)>)> = Vec::new();
        for i in 0..da {
            for j in 0..db {
                for k in 0..da {
                    for l in 0..db {
                        let sign = koszul_sign(other.parity(j), self.parity(k));
                        let sign = self.field.from_i64(sign);
                        let mut terms = Vec::new();
                        for (x, cx) in self.product_terms(i, k) {
                            for (y, cy) in other.product_terms(j, l) {
                                terms.push((pair(*x, *y), &(&sign * cx) * cy));
                            }
                        }
                        if !terms.is_empty() {
                            products.push(((pair(i, j), pair(k, l)), terms));
                        }
                    }
                }
            }
        }
        SuperAlgebra::new(
            format!("{}⊗{}", self.name, other.name),
            self.field,
            basis,
            unit,
            products,
        )
    }
}

fn basis_coeffs(a: &SuperAlgebra, i: usize) -> Vec<Scalar> {
    let mut v = vec![a.field.zero(); a.dim()];
    v[i] = a.field.one();
    v
}

/// Which axiom a validation violation breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    ParityHomogeneity,
    Associativity,
    UnitLaw,
    UnitParity,
    LeftAssociativity,
    RightAssociativity,
    ActionCompatibility,
    UnitAction,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
    pub detail: String,
}

/// Outcome of an axiom check; empty means valid.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub(crate) fn new(subject: &str) -> ValidationReport {
        ValidationReport {
            subject: subject.to_string(),
            violations: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, axiom: Axiom, indices: Vec<usize>, detail: String) {
        self.violations.push(Violation {
            axiom,
            indices,
            detail,
        });
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "{}: valid", self.subject)
        } else {
            writeln!(
                f,
                "{}: {} violation(s)",
                self.subject,
                self.violations.len()
            )?;
            for v in &self.violations {
                writeln!(f, "  {:?} at {:?}: {}", v.axiom, v.indices, v.detail)?;
            }
            Ok(())
        }
    }
}

/// An element of a superalgebra, tied to its algebra.
#[derive(Clone, Debug)]
pub struct SuperVector {
    algebra: Arc<SuperAlgebra>,
    coeffs: Vec<Scalar>,
}

impl SuperVector {
    pub fn new(algebra: Arc<SuperAlgebra>, coeffs: Vec<Scalar>) -> Result<SuperVector, Error> {
        if coeffs.len() != algebra.dim() {
            return Err(Error::Shape(format!(
                "vector with {} coefficients in algebra {:?} of dimension {}",
                coeffs.len(),
                algebra.name(),
                algebra.dim()
            )));
        }
        for c in &coeffs {
            if c.field() != algebra.field() {
                return Err(Error::FieldMismatch(format!(
                    "vector over {:?}",
                    algebra.name()
                )));
            }
        }
        Ok(SuperVector { algebra, coeffs })
    }

    pub fn basis_vector(algebra: Arc<SuperAlgebra>, i: usize) -> Result<SuperVector, Error> {
        if i >= algebra.dim() {
            return Err(Error::IndexOutOfRange(format!(
                "basis index {i} in {:?} of dimension {}",
                algebra.name(),
                algebra.dim()
            )));
        }
        let coeffs = basis_coeffs(&algebra, i);
        Ok(SuperVector { algebra, coeffs })
    }

    pub fn zero(algebra: Arc<SuperAlgebra>) -> SuperVector {
        let coeffs = vec![algebra.field().zero(); algebra.dim()];
        SuperVector { algebra, coeffs }
    }

    pub fn algebra(&self) -> &Arc<SuperAlgebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// `Some(parity)` when the support is parity-homogeneous (the zero
    /// vector counts as even), `None` for mixed support.
    pub fn parity(&self) -> Option<Parity> {
        let mut seen: Option<Parity> = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = self.algebra.parity(i);
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                Some(_) => {}
            }
        }
        Some(seen.unwrap_or(Parity::Even))
    }

    fn check_same(&self, other: &SuperVector, op: &str) -> Result<(), Error> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(format!(
                "{op} of a vector over {:?} with a vector over {:?}",
                self.algebra.name(),
                other.algebra.name()
            )))
        }
    }

    pub fn multiply(&self, other: &SuperVector) -> Result<SuperVector, Error> {
        self.check_same(other, "product")?;
        Ok(SuperVector {
            algebra: self.algebra.clone(),
            coeffs: self.algebra.multiply_coeffs(&self.coeffs, &other.coeffs),
        })
    }

    fn parity_part(&self, p: Parity) -> Vec<Scalar> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if self.algebra.parity(i) == p {
                    c.clone()
                } else {
                    self.algebra.field().zero()
                }
            })
            .collect()
    }

    /// `{x, y} = xy - (-1)^{|x||y|} yx`, extended bilinearly from the
    /// homogeneous parts of both arguments.
    pub fn supercommutator(&self, other: &SuperVector) -> Result<SuperVector, Error> {
        self.check_same(other, "supercommutator")?;
        let alg = &self.algebra;
        let field = alg.field();
        let mut out = vec![field.zero(); alg.dim()];
        for p in [Parity::Even, Parity::Odd] {
            let xp = self.parity_part(p);
            for q in [Parity::Even, Parity::Odd] {
                let yq = other.parity_part(q);
                let xy = alg.multiply_coeffs(&xp, &yq);
                let yx = alg.multiply_coeffs(&yq, &xp);
                let sign = field.from_i64(koszul_sign(p, q));
                for k in 0..alg.dim() {
                    out[k] = &(&out[k] + &xy[k]) - &(&sign * &yx[k]);
                }
            }
        }
        Ok(SuperVector {
            algebra: alg.clone(),
            coeffs: out,
        })
    }
}

/// Dimension of the span of all basis-pair supercommutators
/// `{e_i, e_j} = e_i e_j - (-1)^{|e_i||e_j|} e_j e_i`.
pub fn supercommutator_span_dim(algebra: &SuperAlgebra) -> usize {
    let dim = algebra.dim();
    let field = algebra.field();
    let mut rows: Vec<SparseVec> = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            let sign = field.from_i64(koszul_sign(algebra.parity(i), algebra.parity(j)));
            let mut acc: HashMap<usize, Scalar> = HashMap::new();
            for (k, c) in algebra.product_terms(i, j) {
                match acc.get_mut(k) {
                    Some(old) => *old = &*old + c,
                    None => {
                        acc.insert(*k, c.clone());
                    }
                }
            }
            for (k, c) in algebra.product_terms(j, i) {
                let c = -&(&sign * c);
                match acc.get_mut(k) {
                    Some(old) => *old = &*old + &c,
                    None => {
                        acc.insert(*k, c);
                    }
                }
            }
            let mut row: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            row.sort_by_key(|(k, _)| *k);
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    dim - exactlin::quotient_dim(dim, &rows).expect("commutators live in the algebra")
}

//! Graded bimodules over pairs of superalgebras: validation, ground-field
//! tensor products, balanced tensor products over a middle algebra (as
//! explicit quotients with projection/section), and the coefficient modules
//! `P (x) B^n (x) Q` used by the double complex.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Error;
use crate::exactlin::{self, FieldTag, Scalar, SparseMatrix, SparseVec};
use crate::superalg::{same_algebra, Axiom, BasisElement, Parity, SuperAlgebra, ValidationReport};
use crate::tensor::TensorShape;

/// Action tables: for the left action the key is `(algebra index, module
/// index)`; for the right action it is `(module index, algebra index)`.
/// Absent keys mean the action result is zero.
pub type ActionTable = HashMap<(usize, usize), Vec<(usize, Scalar)>>;

static EMPTY_TERMS: [(usize, Scalar); 0] = [];

/// A finite-dimensional Z2-graded (A, C)-bimodule with homogeneous basis.
/// One-sided modules are represented with the ground field (a 1-dimensional
/// algebra) on the trivial side.
#[derive(Clone, Debug)]
pub struct GradedBimodule {
    name: String,
    left: Arc<SuperAlgebra>,
    right: Arc<SuperAlgebra>,
    basis: Vec<BasisElement>,
    left_action: ActionTable,
    right_action: ActionTable,
}

impl GradedBimodule {
    /// Structural construction (shapes, ranges, table normalization); axiom
    /// checks live in [`GradedBimodule::validate`].
    pub fn new(
        name: impl Into<String>,
        left: Arc<SuperAlgebra>,
        right: Arc<SuperAlgebra>,
        basis: Vec<BasisElement>,
        left_action: impl IntoIterator<Item = ((usize, usize), Vec<(usize, Scalar)>)>,
        right_action: impl IntoIterator<Item = ((usize, usize), Vec<(usize, Scalar)>)>,
    ) -> Result<GradedBimodule, Error> {
        let name = name.into();
        if left.field() != right.field() {
            return Err(Error::FieldMismatch(format!(
                "bimodule {name:?} between algebras over {} and {}",
                left.field(),
                right.field()
            )));
        }
        let field = left.field();
        let dim = basis.len();
        if dim == 0 {
            return Err(Error::InvalidStructure(format!(
                "bimodule {name:?} has an empty basis"
            )));
        }
        let normalize =
            |what: &str,
             first_dim: usize,
             second_dim: usize,
             table: Box<dyn Iterator<Item = ((usize, usize), Vec<(usize, Scalar)>)>>|
             -> Result<ActionTable, Error> {
                let mut out: ActionTable = HashMap::new();
                for ((i, j), terms) in table {
                    if i >= first_dim || j >= second_dim {
                        return Err(Error::IndexOutOfRange(format!(
                            "{what} key ({i}, {j}) in {name:?}"
                        )));
                    }
                    if out.contains_key(&(i, j)) {
                        return Err(Error::InvalidStructure(format!(
                            "duplicate {what} key ({i}, {j}) in {name:?}"
                        )));
                    }
                    let mut merged: HashMap<usize, Scalar> = HashMap::new();
                    for (k, c) in terms {
                        if k >= dim {
                            return Err(Error::IndexOutOfRange(format!(
                                "{what} term index {k} in {name:?}"
                            )));
                        }
                        if c.field() != field {
                            return Err(Error::FieldMismatch(format!(
                                "{what} coefficient in {name:?}"
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
                        out.insert((i, j), clean);
                    }
                }
                Ok(out)
            };
        let left_action = normalize(
            "left action",
            left.dim(),
            dim,
            Box::new(left_action.into_iter()),
        )?;
        let right_action = normalize(
            "right action",
            dim,
            right.dim(),
            Box::new(right_action.into_iter()),
        )?;
        Ok(GradedBimodule {
            name,
            left,
            right,
            basis,
            left_action,
            right_action,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn left_algebra(&self) -> &Arc<SuperAlgebra> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<SuperAlgebra> {
        &self.right
    }

    pub fn field(&self) -> FieldTag {
        self.left.field()
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

    /// Expansion of `a_i . m_j`.
    pub fn left_terms(&self, algebra_idx: usize, module_idx: usize) -> &[(usize, Scalar)] {
        self.left_action
            .get(&(algebra_idx, module_idx))
            .map_or(&EMPTY_TERMS, |v| v.as_slice())
    }

    /// Expansion of `m_i . c_j`.
    pub fn right_terms(&self, module_idx: usize, algebra_idx: usize) -> &[(usize, Scalar)] {
        self.right_action
            .get(&(module_idx, algebra_idx))
            .map_or(&EMPTY_TERMS, |v| v.as_slice())
    }

    /// Bilinear extension of the left action to coefficient vectors.
    pub fn act_left(&self, a: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
        let field = self.field();
        let mut out = vec![field.zero(); self.dim()];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, mj) in m.iter().enumerate() {
                if mj.is_zero() {
                    continue;
                }
                let factor = ai * mj;
                for (k, c) in self.left_terms(i, j) {
                    out[*k] = &out[*k] + &(&factor * c);
                }
            }
        }
        out
    }

    pub fn act_right(&self, m: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        let field = self.field();
        let mut out = vec![field.zero(); self.dim()];
        for (j, mj) in m.iter().enumerate() {
            if mj.is_zero() {
                continue;
            }
            for (i, ai) in a.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                let factor = mj * ai;
                for (k, c) in self.right_terms(j, i) {
                    out[*k] = &out[*k] + &(&factor * c);
                }
            }
        }
        out
    }

    /// Checks the bimodule axioms and reports every violation: parity
    /// homogeneity of both actions, left and right associativity, the
    /// compatibility `(a.m).c = a.(m.c)`, and both units acting as identity.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new(&self.name);
        let dim = self.dim();
        let field = self.field();
        let (la, ra) = (&self.left, &self.right);
        for i in 0..la.dim() {
            for j in 0..dim {
                let expected = la.parity(i) + self.parity(j);
                for (k, _) in self.left_terms(i, j) {
                    if self.parity(*k) != expected {
                        report.push(
                            Axiom::ParityHomogeneity,
                            vec![i, j, *k],
                            format!(
                                "{} . {} hits {} of parity {}, expected {}",
                                la.label(i),
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
        for j in 0..dim {
            for i in 0..ra.dim() {
                let expected = self.parity(j) + ra.parity(i);
                for (k, _) in self.right_terms(j, i) {
                    if self.parity(*k) != expected {
                        report.push(
                            Axiom::ParityHomogeneity,
                            vec![j, i, *k],
                            format!(
                                "{} . {} hits {} of parity {}, expected {}",
                                self.label(j),
                                ra.label(i),
                                self.label(*k),
                                self.parity(*k),
                                expected
                            ),
                        );
                    }
                }
            }
        }
        let unit_vec = |alg: &SuperAlgebra| alg.unit().to_vec();
        let basis_vec = |n: usize, i: usize| {
            let mut v = vec![field.zero(); n];
            v[i] = field.one();
            v
        };
        for i in 0..la.dim() {
            for j in 0..la.dim() {
                for m in 0..dim {
                    let ai = basis_vec(la.dim(), i);
                    let aj = basis_vec(la.dim(), j);
                    let mm = basis_vec(dim, m);
                    let nested = self.act_left(&ai, &self.act_left(&aj, &mm));
                    let flat = self.act_left(&la.multiply_coeffs(&ai, &aj), &mm);
                    if nested != flat {
                        report.push(
                            Axiom::LeftAssociativity,
                            vec![i, j, m],
                            format!(
                                "{} . ({} . {}) differs from ({} {}) . {}",
                                la.label(i),
                                la.label(j),
                                self.label(m),
                                la.label(i),
                                la.label(j),
                                self.label(m)
                            ),
                        );
                    }
                }
            }
        }
        for m in 0..dim {
            for i in 0..ra.dim() {
                for j in 0..ra.dim() {
                    let ci = basis_vec(ra.dim(), i);
                    let cj = basis_vec(ra.dim(), j);
                    let mm = basis_vec(dim, m);
                    let nested = self.act_right(&self.act_right(&mm, &ci), &cj);
                    let flat = self.act_right(&mm, &ra.multiply_coeffs(&ci, &cj));
                    if nested != flat {
                        report.push(
                            Axiom::RightAssociativity,
                            vec![m, i, j],
                            format!(
                                "({} . {}) . {} differs from {} . ({} {})",
                                self.label(m),
                                ra.label(i),
                                ra.label(j),
                                self.label(m),
                                ra.label(i),
                                ra.label(j)
                            ),
                        );
                    }
                }
            }
        }
        for i in 0..la.dim() {
            for m in 0..dim {
                for j in 0..ra.dim() {
                    let ai = basis_vec(la.dim(), i);
                    let cj = basis_vec(ra.dim(), j);
                    let mm = basis_vec(dim, m);
                    let lr = self.act_right(&self.act_left(&ai, &mm), &cj);
                    let rl = self.act_left(&ai, &self.act_right(&mm, &cj));
                    if lr != rl {
                        report.push(
                            Axiom::ActionCompatibility,
                            vec![i, m, j],
                            format!(
                                "({} . {}) . {} differs from {} . ({} . {})",
                                la.label(i),
                                self.label(m),
                                ra.label(j),
                                la.label(i),
                                self.label(m),
                                ra.label(j)
                            ),
                        );
                    }
                }
            }
        }
        for m in 0..dim {
            let mm = basis_vec(dim, m);
            if self.act_left(&unit_vec(la), &mm) != mm {
                report.push(
                    Axiom::UnitAction,
                    vec![m],
                    format!("left unit does not fix {}", self.label(m)),
                );
            }
            if self.act_right(&mm, &unit_vec(ra)) != mm {
                report.push(
                    Axiom::UnitAction,
                    vec![m],
                    format!("right unit does not fix {}", self.label(m)),
                );
            }
        }
        report
    }
}

/// The algebra as a bimodule over itself (both actions are multiplication).
pub fn regular_bimodule(algebra: &Arc<SuperAlgebra>) -> GradedBimodule {
    let dim = algebra.dim();
    let basis = algebra.basis().to_vec();
    let table = |_: ()| {
        let mut t: Vec<((usize, usize), Vec<(usize, Scalar)>)> = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let terms = algebra.product_terms(i, j);
                if !terms.is_empty() {
                    t.push(((i, j), terms.to_vec()));
                }
            }
        }
        t
    };
    GradedBimodule::new(
        algebra.name().to_string(),
        algebra.clone(),
        algebra.clone(),
        basis,
        table(()),
        table(()),
    )
    .expect("regular bimodule is structurally sound")
}

/// Ground-field tensor product `M (x) N` of an (A, B)-bimodule and a
/// (C, D)-bimodule, as an (A, D)-bimodule. The outer actions touch only the
/// end factors, so no Koszul sign arises.
pub fn tensor_ground(m: &GradedBimodule, n: &GradedBimodule) -> Result<GradedBimodule, Error> {
    if m.field() != n.field() {
        return Err(Error::FieldMismatch(format!(
            "tensor of {:?} over {} with {:?} over {}",
            m.name(),
            m.field(),
            n.name(),
            n.field()
        )));
    }
    let shape = TensorShape::new(vec![m.dim(), n.dim()]);
    let basis: Vec<BasisElement> = (0..m.dim())
        .flat_map(|i| {
            (0..n.dim()).map(move |j| BasisElement {
                label: format!("{}⊗{}", m.label(i), n.label(j)),
                parity: m.parity(i) + n.parity(j),
            })
        })
        .collect();
    let mut left: Vec<((usize, usize), Vec<(usize, Scalar)>)> = Vec::new();
    for a in 0..m.left_algebra().dim() {
        for i in 0..m.dim() {
            let terms = m.left_terms(a, i);
            if terms.is_empty() {
                continue;
            }
            for j in 0..n.dim() {
                let lifted: Vec<(usize, Scalar)> = terms
                    .iter()
                    .map(|(k, c)| (shape.flat(&[*k, j]), c.clone()))
                    .collect();
                left.push(((a, shape.flat(&[i, j])), lifted));
            }
        }
    }
    let mut right: Vec<((usize, usize), Vec<(usize, Scalar)>)> = Vec::new();
    for j in 0..n.dim() {
        for d in 0..n.right_algebra().dim() {
            let terms = n.right_terms(j, d);
            if terms.is_empty() {
                continue;
            }
            for i in 0..m.dim() {
                let lifted: Vec<(usize, Scalar)> = terms
                    .iter()
                    .map(|(k, c)| (shape.flat(&[i, *k]), c.clone()))
                    .collect();
                right.push(((shape.flat(&[i, j]), d), lifted));
            }
        }
    }
    GradedBimodule::new(
        format!("{}⊗{}", m.name(), n.name()),
        m.left_algebra().clone(),
        n.right_algebra().clone(),
        basis,
        left,
        right,
    )
}

/// A balanced tensor product `M (x)_B N` realized as an explicit quotient of
/// `M (x) N` by the span of `(m.b) (x) n - m (x) (b.n)`, together with the
/// projection from and section into the ambient space. The relation span is
/// exactly the kernel of `projection`.
pub struct BalancedTensor {
    pub quotient: GradedBimodule,
    pub projection: SparseMatrix,
    pub section: SparseMatrix,
    pub ambient_dim: usize,
    pub relation_rank: usize,
}

/// `M (x)_B N` for `M` an (A, B)-bimodule and `N` a (B, C)-bimodule.
pub fn tensor_over(m: &GradedBimodule, n: &GradedBimodule) -> Result<BalancedTensor, Error> {
    if !same_algebra(m.right_algebra(), n.left_algebra()) {
        return Err(Error::MiddleAlgebraMismatch(format!(
            "{:?} is a right {:?}-module, {:?} is a left {:?}-module",
            m.name(),
            m.right_algebra().name(),
            n.name(),
            n.left_algebra().name()
        )));
    }
    let field = m.field();
    let mid = m.right_algebra();
    let shape = TensorShape::new(vec![m.dim(), n.dim()]);
    let ambient_dim = shape.len();

    let mut relations: Vec<SparseVec> = Vec::new();
    for i in 0..m.dim() {
        for b in 0..mid.dim() {
            let mb = m.right_terms(i, b);
            for j in 0..n.dim() {
                let bn = n.left_terms(b, j);
                let mut acc: HashMap<usize, Scalar> = HashMap::new();
                for (k, c) in mb {
                    let idx = shape.flat(&[*k, j]);
                    match acc.get_mut(&idx) {
                        Some(old) => *old = &*old + c,
                        None => {
                            acc.insert(idx, c.clone());
                        }
                    }
                }
                for (k, c) in bn {
                    let idx = shape.flat(&[i, *k]);
                    let c = -c;
                    match acc.get_mut(&idx) {
                        Some(old) => *old = &*old + &c,
                        None => {
                            acc.insert(idx, c);
                        }
                    }
                }
                let mut row: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                row.sort_by_key(|(k, _)| *k);
                if !row.is_empty() {
                    relations.push(row);
                }
            }
        }
    }

    let quot = exactlin::quotient_basis(ambient_dim, &relations, field)?;
    let relation_rank = ambient_dim - quot.dim;

    let basis: Vec<BasisElement> = quot
        .picked
        .iter()
        .map(|&flat| {
            let idx = shape.unflat(flat);
            BasisElement {
                label: format!("{}⊗{}", m.label(idx[0]), n.label(idx[1])),
                parity: m.parity(idx[0]) + n.parity(idx[1]),
            }
        })
        .collect();

    // Induced actions: act on the picked representative in the ambient space
    // and project back down. The relation span is stable under both actions,
    // so this is independent of the choice of representative.
    let proj_cols = quot.projection.columns();
    let project_column = |ambient_col: &HashMap<usize, Scalar>| -> Vec<(usize, Scalar)> {
        let mut out: HashMap<usize, Scalar> = HashMap::new();
        for (amb, c) in ambient_col {
            for (qrow, qv) in &proj_cols[*amb] {
                let term = qv * c;
                match out.get_mut(qrow) {
                    Some(old) => *old = &*old + &term,
                    None => {
                        out.insert(*qrow, term);
                    }
                }
            }
        }
        let mut v: Vec<(usize, Scalar)> = out.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    };

    let la = m.left_algebra().clone();
    let ra = n.right_algebra().clone();
    let mut left: Vec<((usize, usize), Vec<(usize, Scalar)>)> = Vec::new();
    let mut right: Vec<((usize, usize), Vec<(usize, Scalar)>)> = Vec::new();
    for (qidx, &flat) in quot.picked.iter().enumerate() {
        let idx = shape.unflat(flat);
        let (mi, nj) = (idx[0], idx[1]);
        for a in 0..la.dim() {
            let mut amb: HashMap<usize, Scalar> = HashMap::new();
            for (k, c) in m.left_terms(a, mi) {
                amb.insert(shape.flat(&[*k, nj]), c.clone());
            }
            if !amb.is_empty() {
                let terms = project_column(&amb);
                if !terms.is_empty() {
                    left.push(((a, qidx), terms));
                }
            }
        }
        for d in 0..ra.dim() {
            let mut amb: HashMap<usize, Scalar> = HashMap::new();
            for (k, c) in n.right_terms(nj, d) {
                amb.insert(shape.flat(&[mi, *k]), c.clone());
            }
            if !amb.is_empty() {
                let terms = project_column(&amb);
                if !terms.is_empty() {
                    right.push(((qidx, d), terms));
                }
            }
        }
    }

    let quotient = GradedBimodule::new(
        format!("{}⊗[{}]{}", m.name(), mid.name(), n.name()),
        la,
        ra,
        basis,
        left,
        right,
    )?;
    Ok(BalancedTensor {
        quotient,
        projection: quot.projection,
        section: quot.section,
        ambient_dim,
        relation_rank,
    })
}

/// The (A, A)-bimodule `P (x) B^n (x) Q` for `P` an (A, B)-bimodule and `Q`
/// a (B, A)-bimodule: `A` acts on the `P` slot from the left and on the `Q`
/// slot from the right; the middle `B` factors are inert ground tensor
/// factors. No Koszul sign arises because the acting element crosses no
/// factor from its own side.
pub fn coefficient_bimodule(
    p: &GradedBimodule,
    middle_power: usize,
    q: &GradedBimodule,
) -> Result<GradedBimodule, Error> {
    if !same_algebra(p.right_algebra(), q.left_algebra()) {
        return Err(Error::MiddleAlgebraMismatch(format!(
            "{:?} is a right {:?}-module, {:?} is a left {:?}-module",
            p.name(),
            p.right_algebra().name(),
            q.name(),
            q.left_algebra().name()
        )));
    }
    let b = p.right_algebra().clone();
    let mut dims = vec![p.dim()];
    dims.extend(std::iter::repeat_n(b.dim(), middle_power));
    dims.push(q.dim());
    let shape = TensorShape::new(dims);
    let total = shape.len();

    let mut basis = Vec::with_capacity(total);
    let mut idx = Vec::new();
    for flat in 0..total {
        shape.unflat_into(flat, &mut idx);
        let mut parity = p.parity(idx[0]) + q.parity(idx[middle_power + 1]);
        let mut label = p.label(idx[0]).to_string();
        for slot in 1..=middle_power {
            parity = parity + b.parity(idx[slot]);
            label.push('⊗');
            label.push_str(b.label(idx[slot]));
        }
        label.push('⊗');
        label.push_str(q.label(idx[middle_power + 1]));
        basis.push(BasisElement { label, parity });
    }

    let mut left: Vec<((usize, usize), Vec<(usize, Scalar)>)> = Vec::new();
    let mut right: Vec<((usize, usize), Vec<(usize, Scalar)>)> = Vec::new();
    let a_left = p.left_algebra().clone();
    let a_right = q.right_algebra().clone();
    for flat in 0..total {
        shape.unflat_into(flat, &mut idx);
        for a in 0..a_left.dim() {
            let terms = p.left_terms(a, idx[0]);
            if !terms.is_empty() {
                let lifted: Vec<(usize, Scalar)> = terms
                    .iter()
                    .map(|(k, c)| {
                        let mut t = idx.clone();
                        t[0] = *k;
                        (shape.flat(&t), c.clone())
                    })
                    .collect();
                left.push(((a, flat), lifted));
            }
        }
        for a in 0..a_right.dim() {
            let terms = q.right_terms(idx[middle_power + 1], a);
            if !terms.is_empty() {
                let lifted: Vec<(usize, Scalar)> = terms
                    .iter()
                    .map(|(k, c)| {
                        let mut t = idx.clone();
                        t[middle_power + 1] = *k;
                        (shape.flat(&t), c.clone())
                    })
                    .collect();
                right.push(((flat, a), lifted));
            }
        }
    }

    GradedBimodule::new(
        format!("{}⊗{}^{}⊗{}", p.name(), b.name(), middle_power, q.name()),
        a_left,
        a_right,
        basis,
        left,
        right,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    fn q() -> FieldTag {
        FieldTag::Rational
    }

    #[test]
    fn regular_bimodule_validates() {
        let a = Arc::new(builders::matrix_superalgebra(1, 1, q()).unwrap());
        let m = regular_bimodule(&a);
        assert!(m.validate().is_valid());
        assert_eq!(m.dim(), 4);
    }

    #[test]
    fn column_module_validates() {
        let ctx = builders::standard_matrix_context(1, 1, q()).unwrap();
        assert!(ctx.p.validate().is_valid());
        assert!(ctx.q.validate().is_valid());
    }

    #[test]
    fn corrupted_action_compatibility_is_reported() {
        let ctx = builders::standard_matrix_context(1, 1, q()).unwrap();
        let p = &ctx.p;
        let f = q();
        // Rebuild the column module but break compatibility by sending
        // E12 . v2 to -v1 on the left while keeping the right action.
        let mut left: Vec<((usize, usize), Vec<(usize, Scalar)>)> = Vec::new();
        for a in 0..p.left_algebra().dim() {
            for m in 0..p.dim() {
                let terms = p.left_terms(a, m);
                if !terms.is_empty() {
                    left.push(((a, m), terms.to_vec()));
                }
            }
        }
        // E12 is index 1; v2 is index 1. Overwrite its image.
        for entry in &mut left {
            if entry.0 == (1, 1) {
                entry.1 = vec![(0, f.from_i64(-1))];
            }
        }
        let mut right: Vec<((usize, usize), Vec<(usize, Scalar)>)> = Vec::new();
        for m in 0..p.dim() {
            for a in 0..p.right_algebra().dim() {
                let terms = p.right_terms(m, a);
                if !terms.is_empty() {
                    right.push(((m, a), terms.to_vec()));
                }
            }
        }
        let broken = GradedBimodule::new(
            "broken-columns",
            p.left_algebra().clone(),
            p.right_algebra().clone(),
            p.basis().to_vec(),
            left,
            right,
        )
        .unwrap();
        let report = broken.validate();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| matches!(
            v.axiom,
            Axiom::LeftAssociativity | Axiom::ActionCompatibility | Axiom::ParityHomogeneity
        )));
    }

    #[test]
    fn tensor_ground_dims_and_unit_factor() {
        let ctx = builders::standard_matrix_context(1, 1, q()).unwrap();
        let pq = tensor_ground(&ctx.p, &ctx.q).unwrap();
        assert_eq!(pq.dim(), 4);
        assert!(pq.validate().is_valid());

        // tensoring with the ground field viewed as a bimodule changes nothing
        let k = Arc::new(builders::ground_field(q()));
        let kk = regular_bimodule(&k);
        let m = regular_bimodule(&Arc::new(builders::clifford1(q()).unwrap()));
        let km = tensor_ground(&kk, &m).unwrap();
        assert_eq!(km.dim(), m.dim());
        for i in 0..km.dim() {
            assert_eq!(km.parity(i), m.parity(i));
        }
    }

    #[test]
    fn balanced_tensor_over_self_recovers_algebra_dim() {
        let a = Arc::new(builders::matrix_superalgebra(1, 1, q()).unwrap());
        let reg = regular_bimodule(&a);
        let t = tensor_over(&reg, &reg).unwrap();
        assert_eq!(t.quotient.dim(), 4);
        assert!(t.quotient.validate().is_valid());
        let ps = t.projection.compose(&t.section).unwrap();
        assert_eq!(ps, SparseMatrix::identity(t.quotient.dim(), q()));
    }

    #[test]
    fn balanced_tensor_of_columns_and_rows() {
        let ctx = builders::standard_matrix_context(1, 1, q()).unwrap();
        // columns (x)_k rows: no relations, dimension 4
        let pq = tensor_over(&ctx.p, &ctx.q).unwrap();
        assert_eq!(pq.quotient.dim(), 4);
        assert_eq!(pq.relation_rank, 0);
        // rows (x)_{M(1|1)} columns: collapses to dimension 1
        let qp = tensor_over(&ctx.q, &ctx.p).unwrap();
        assert_eq!(qp.quotient.dim(), 1);
        assert!(qp.quotient.validate().is_valid());
    }

    #[test]
    fn tensor_over_rejects_middle_mismatch() {
        let ctx = builders::standard_matrix_context(1, 1, q()).unwrap();
        // P is an (A, k)-bimodule; P (x)_? P has mismatched middle algebras.
        assert!(matches!(
            tensor_over(&ctx.p, &ctx.p),
            Err(Error::MiddleAlgebraMismatch(_))
        ));
    }

    #[test]
    fn coefficient_bimodule_examples() {
        let ctx = builders::standard_matrix_context(1, 1, q()).unwrap();
        let c0 = coefficient_bimodule(&ctx.p, 0, &ctx.q).unwrap();
        assert_eq!(c0.dim(), 4);
        assert!(c0.validate().is_valid());
        let ground = tensor_ground(&ctx.p, &ctx.q).unwrap();
        for a in 0..4 {
            for m in 0..4 {
                assert_eq!(c0.left_terms(a, m), ground.left_terms(a, m));
                assert_eq!(c0.right_terms(m, a), ground.right_terms(m, a));
            }
        }
        let c2 = coefficient_bimodule(&ctx.p, 2, &ctx.q).unwrap();
        assert_eq!(c2.dim(), 4); // B = k is 1-dimensional
        assert!(c2.validate().is_valid());

        let a = Arc::new(builders::clifford1(q()).unwrap());
        let sctx = builders::self_context(a);
        let c3 = coefficient_bimodule(&sctx.p, 3, &sctx.q).unwrap();
        assert_eq!(c3.dim(), 2 * 2usize.pow(3) * 2);
    }
}

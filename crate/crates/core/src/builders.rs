//! A catalog of validated superalgebras, bimodules, and Morita contexts.
//! Everything constructed here passes the corresponding `validate` and
//! carries its hypotheses (unitality, freeness of the modules) by
//! construction rather than by an algorithmic check.

use std::sync::Arc;

use crate::bimod::{regular_bimodule, GradedBimodule};
use crate::error::Error;
use crate::exactlin::{FieldTag, Scalar};
use crate::superalg::{BasisElement, Parity, SuperAlgebra, ValidationReport};

/// The ground field as a one-dimensional superalgebra.
pub fn ground_field(field: FieldTag) -> SuperAlgebra {
    SuperAlgebra::new(
        "k",
        field,
        vec![BasisElement {
            label: "1".into(),
            parity: Parity::Even,
        }],
        vec![field.one()],
        vec![((0, 0), vec![(0, field.one())])],
    )
    .expect("ground field table is sound")
}

/// Block parity of row/column index `i` in `M(p|q)`: even for the first `p`
/// indices, odd for the remaining `q`.
fn block(i: usize, p: usize) -> Parity {
    if i < p {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// The matrix superalgebra `M(p|q)` on basis `E_ij` (row-major order), with
/// `parity(E_ij) = block(i) + block(j)` and `E_ij E_kl = [j = k] E_il`.
pub fn matrix_superalgebra(p: usize, q: usize, field: FieldTag) -> Result<SuperAlgebra, Error> {
    let n = p + q;
    if n == 0 {
        return Err(Error::InvalidStructure(
            "matrix superalgebra needs p + q >= 1".into(),
        ));
    }
    let basis: Vec<BasisElement> = (0..n)
        .flat_map(|i| {
            (0..n).map(move |j| BasisElement {
                label: format!("E{}{}", i + 1, j + 1),
                parity: block(i, p) + block(j, p),
            })
        })
        .collect();
    let mut unit = vec![field.zero(); n * n];
    for i in 0..n {
        unit[i * n + i] = field.one();
    }
    let mut products: Vec<((usize, usize), Vec<(usize, Scalar)>)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // E_ij . E_jl = E_il
                products.push(((i * n + j, j * n + l), vec![(i * n + l, field.one())]));
            }
        }
    }
    SuperAlgebra::new(format!("M({p}|{q})"), field, basis, unit, products)
}

/// The rank-1 Clifford algebra: basis `{1, ε}` with `ε` odd and `ε² = 1`.
/// Rejected in characteristic 2, where the odd part carries no sign
/// information.
pub fn clifford1(field: FieldTag) -> Result<SuperAlgebra, Error> {
    if field.characteristic() == 2 {
        return Err(Error::CharacteristicTwo(
            "clifford1 needs 2 invertible".into(),
        ));
    }
    SuperAlgebra::new(
        "Cl(1)",
        field,
        vec![
            BasisElement {
                label: "1".into(),
                parity: Parity::Even,
            },
            BasisElement {
                label: "ε".into(),
                parity: Parity::Odd,
            },
        ],
        vec![field.one(), field.zero()],
        vec![
            ((0, 0), vec![(0, field.one())]),
            ((0, 1), vec![(1, field.one())]),
            ((1, 0), vec![(1, field.one())]),
            ((1, 1), vec![(0, field.one())]),
        ],
    )
}

/// Dual numbers `k[ε]/(ε²)` with `ε` of the requested parity.
pub fn dual_numbers(epsilon_parity: Parity, field: FieldTag) -> SuperAlgebra {
    let tag = match epsilon_parity {
        Parity::Even => "even",
        Parity::Odd => "odd",
    };
    SuperAlgebra::new(
        format!("dual-{tag}"),
        field,
        vec![
            BasisElement {
                label: "1".into(),
                parity: Parity::Even,
            },
            BasisElement {
                label: "ε".into(),
                parity: epsilon_parity,
            },
        ],
        vec![field.one(), field.zero()],
        vec![
            ((0, 0), vec![(0, field.one())]),
            ((0, 1), vec![(1, field.one())]),
            ((1, 0), vec![(1, field.one())]),
        ],
    )
    .expect("dual number table is sound")
}

/// The stock algebras exercised by tests and the CLI `builtin` namespace.
/// Propagates the characteristic-2 rejection of [`clifford1`].
pub fn catalog_algebras(field: FieldTag) -> Result<Vec<Arc<SuperAlgebra>>, Error> {
    let cl1 = clifford1(field)?;
    let cl2 = cl1.graded_tensor(&cl1)?;
    Ok(vec![
        Arc::new(ground_field(field)),
        Arc::new(dual_numbers(Parity::Even, field)),
        Arc::new(dual_numbers(Parity::Odd, field)),
        Arc::new(cl1),
        Arc::new(cl2),
        Arc::new(matrix_superalgebra(1, 1, field)?),
        Arc::new(matrix_superalgebra(2, 1, field)?),
    ])
}

/// `A^rank` as a left A-module (an (A, k)-bimodule with trivial right
/// side): the action is multiplication within each copy.
pub fn free_left_module(a: &Arc<SuperAlgebra>, rank: usize) -> Result<GradedBimodule, Error> {
    free_module(a, rank, true)
}

/// `A^rank` as a right A-module (a (k, A)-bimodule).
pub fn free_right_module(a: &Arc<SuperAlgebra>, rank: usize) -> Result<GradedBimodule, Error> {
    free_module(a, rank, false)
}

fn free_module(a: &Arc<SuperAlgebra>, rank: usize, left: bool) -> Result<GradedBimodule, Error> {
    if rank == 0 {
        return Err(Error::InvalidStructure(
            "free module needs rank >= 1".into(),
        ));
    }
    let field = a.field();
    let dim = a.dim();
    let basis: Vec<BasisElement> = (0..rank)
        .flat_map(|r| {
            (0..dim).map(move |i| BasisElement {
                label: if rank == 1 {
                    a.label(i).to_string()
                } else {
                    format!("{}[{}]", a.label(i), r)
                },
                parity: a.parity(i),
            })
        })
        .collect();
    // Multiplication acts within each copy; the trivial side is identity.
    let mut action: Vec<((usize, usize), Vec<(usize, Scalar)>)> = Vec::new();
    for r in 0..rank {
        for i in 0..dim {
            for j in 0..dim {
                let terms: Vec<(usize, Scalar)> = a
                    .product_terms(i, j)
                    .iter()
                    .map(|(k, c)| (r * dim + k, c.clone()))
                    .collect();
                if terms.is_empty() {
                    continue;
                }
                if left {
                    action.push(((i, r * dim + j), terms));
                } else {
                    action.push(((r * dim + i, j), terms));
                }
            }
        }
    }
    let trivial: Vec<((usize, usize), Vec<(usize, Scalar)>)> = (0..rank * dim)
        .map(|x| {
            (
                (if left { x } else { 0 }, if left { 0 } else { x }),
                vec![(x, field.one())],
            )
        })
        .collect();
    let k = Arc::new(ground_field(field));
    let name = if rank == 1 {
        a.name().to_string()
    } else {
        format!("{}^{rank}", a.name())
    };
    if left {
        GradedBimodule::new(name, a.clone(), k, basis, action, trivial)
    } else {
        GradedBimodule::new(name, k, a.clone(), basis, trivial, action)
    }
}

/// A Morita-equivalence context: algebras `a`, `b` with an (a, b)-bimodule
/// `p` and a (b, a)-bimodule `q` whose balanced tensor products recover the
/// algebras. `name` records which builder produced it.
pub struct MoritaContext {
    pub name: String,
    pub a: Arc<SuperAlgebra>,
    pub b: Arc<SuperAlgebra>,
    pub p: GradedBimodule,
    pub q: GradedBimodule,
}

impl MoritaContext {
    /// Validation reports for all four constituents, in the order
    /// a, b, p, q.
    pub fn validation_reports(&self) -> Vec<ValidationReport> {
        vec![
            self.a.validate(),
            self.b.validate(),
            self.p.validate(),
            self.q.validate(),
        ]
    }

    pub fn is_valid(&self) -> bool {
        self.validation_reports().iter().all(|r| r.is_valid())
    }
}

/// The standard equivalence between `M(p|q)` and the ground field: `p` is
/// the column supermodule `k^(p|q)`, `q` the row supermodule. Columns are
/// free over `k` of rank p+q; the matrix algebra acts transitively enough
/// that both balanced tensors collapse to the expected dimensions.
pub fn standard_matrix_context(
    p: usize,
    q: usize,
    field: FieldTag,
) -> Result<MoritaContext, Error> {
    let n = p + q;
    let a = Arc::new(matrix_superalgebra(p, q, field)?);
    let b = Arc::new(ground_field(field));

    let col_basis: Vec<BasisElement> = (0..n)
        .map(|i| BasisElement {
            label: format!("v{}", i + 1),
            parity: block(i, p),
        })
        .collect();
    // E_ij . v_j = v_i
    let mut col_left: Vec<((usize, usize), Vec<(usize, Scalar)>)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            col_left.push(((i * n + j, j), vec![(i, field.one())]));
        }
    }
    let col_right: Vec<((usize, usize), Vec<(usize, Scalar)>)> =
        (0..n).map(|i| ((i, 0), vec![(i, field.one())])).collect();
    let columns = GradedBimodule::new(
        "columns",
        a.clone(),
        b.clone(),
        col_basis,
        col_left,
        col_right,
    )?;

    let row_basis: Vec<BasisElement> = (0..n)
        .map(|i| BasisElement {
            label: format!("w{}", i + 1),
            parity: block(i, p),
        })
        .collect();
    let row_left: Vec<((usize, usize), Vec<(usize, Scalar)>)> =
        (0..n).map(|i| ((0, i), vec![(i, field.one())])).collect();
    // w_i . E_il = w_l
    let mut row_right: Vec<((usize, usize), Vec<(usize, Scalar)>)> = Vec::new();
    for i in 0..n {
        for l in 0..n {
            row_right.push(((i, i * n + l), vec![(l, field.one())]));
        }
    }
    let rows = GradedBimodule::new("rows", b.clone(), a.clone(), row_basis, row_left, row_right)?;

    Ok(MoritaContext {
        name: format!("standard-matrix({p}|{q})"),
        a,
        b,
        p: columns,
        q: rows,
    })
}

/// The trivial self-equivalence of an algebra: both modules are the algebra
/// itself with multiplication actions.
pub fn self_context(a: Arc<SuperAlgebra>) -> MoritaContext {
    let reg = regular_bimodule(&a);
    MoritaContext {
        name: format!("self({})", a.name()),
        a: a.clone(),
        b: a,
        p: reg.clone(),
        q: reg,
    }
}

/// Contexts exercised by tests: the trivial field context, the standard
/// matrix contexts, and odd-rich self contexts.
pub fn catalog_contexts(field: FieldTag) -> Result<Vec<MoritaContext>, Error> {
    Ok(vec![
        standard_matrix_context(1, 0, field)?,
        standard_matrix_context(1, 1, field)?,
        self_context(Arc::new(clifford1(field)?)),
        self_context(Arc::new(dual_numbers(Parity::Odd, field))),
        self_context(Arc::new(matrix_superalgebra(1, 1, field)?)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimod::tensor_over;

    fn q() -> FieldTag {
        FieldTag::Rational
    }

    #[test]
    fn matrix_superalgebra_shapes() {
        assert!(matrix_superalgebra(0, 0, q()).is_err());

        let m10 = matrix_superalgebra(1, 0, q()).unwrap();
        assert_eq!(m10.dim(), 1);
        assert!(m10.validate().is_valid());

        let m11 = matrix_superalgebra(1, 1, q()).unwrap();
        assert_eq!(m11.dim(), 4);
        let odd = (0..4).filter(|&i| m11.parity(i).is_odd()).count();
        assert_eq!(odd, 2);
        assert!(m11.validate().is_valid());

        let m21 = matrix_superalgebra(2, 1, q()).unwrap();
        assert_eq!(m21.dim(), 9);
        let odd = (0..9).filter(|&i| m21.parity(i).is_odd()).count();
        assert_eq!(odd, 4);
        assert!(m21.validate().is_valid());
    }

    #[test]
    fn matrix_table_is_independent_of_grading() {
        let graded = matrix_superalgebra(1, 1, q()).unwrap();
        let even = matrix_superalgebra(2, 0, q()).unwrap();
        assert_eq!(graded.dim(), even.dim());
        for i in 0..graded.dim() {
            for j in 0..graded.dim() {
                assert_eq!(graded.product_terms(i, j), even.product_terms(i, j));
            }
        }
        assert!((0..even.dim()).all(|i| !even.parity(i).is_odd()));
    }

    #[test]
    fn clifford1_rejects_characteristic_two() {
        let f2 = FieldTag::prime(2).unwrap();
        assert!(matches!(clifford1(f2), Err(Error::CharacteristicTwo(_))));
        assert!(clifford1(FieldTag::prime(7).unwrap()).is_ok());
    }

    #[test]
    fn dual_numbers_square_to_zero() {
        for parity in [Parity::Even, Parity::Odd] {
            let d = dual_numbers(parity, q());
            assert!(d.validate().is_valid());
            assert!(d.product_terms(1, 1).is_empty());
            assert_eq!(d.parity(1), parity);
        }
    }

    #[test]
    fn catalog_algebras_all_validate() {
        let cat = catalog_algebras(q()).unwrap();
        assert_eq!(cat.len(), 7);
        for alg in cat {
            assert!(alg.validate().is_valid(), "algebra {}", alg.name());
        }
    }

    #[test]
    fn standard_matrix_context_shapes() {
        let ctx = standard_matrix_context(1, 1, q()).unwrap();
        assert!(ctx.is_valid());
        assert_eq!(ctx.p.dim(), 2);
        assert_eq!(ctx.q.dim(), 2);
        assert_eq!(ctx.p.parity(0), Parity::Even);
        assert_eq!(ctx.p.parity(1), Parity::Odd);

        let trivial = standard_matrix_context(1, 0, q()).unwrap();
        assert!(trivial.is_valid());
        assert_eq!(trivial.a.dim(), 1);
        assert_eq!(trivial.p.dim(), 1);
        assert_eq!(trivial.q.dim(), 1);
    }

    #[test]
    fn balanced_tensors_recover_algebra_dimensions() {
        for (p, q_) in [(1usize, 1usize), (2, 1)] {
            let ctx = standard_matrix_context(p, q_, q()).unwrap();
            let pq = tensor_over(&ctx.p, &ctx.q).unwrap();
            assert_eq!(pq.quotient.dim(), ctx.a.dim(), "P (x)_B Q for M({p}|{q_})");
            assert!(pq.quotient.validate().is_valid());
            let qp = tensor_over(&ctx.q, &ctx.p).unwrap();
            assert_eq!(qp.quotient.dim(), ctx.b.dim(), "Q (x)_A P for M({p}|{q_})");
            assert!(qp.quotient.validate().is_valid());
        }
    }

    #[test]
    fn self_context_shapes() {
        let ctx = self_context(Arc::new(clifford1(q()).unwrap()));
        assert!(ctx.is_valid());
        assert_eq!(
            (ctx.a.dim(), ctx.b.dim(), ctx.p.dim(), ctx.q.dim()),
            (2, 2, 2, 2)
        );
        let m = self_context(Arc::new(matrix_superalgebra(1, 1, q()).unwrap()));
        let pq = tensor_over(&m.p, &m.q).unwrap();
        assert_eq!(pq.quotient.dim(), 4);
    }

    #[test]
    fn free_modules_validate() {
        let a = Arc::new(matrix_superalgebra(1, 1, q()).unwrap());
        assert!(free_left_module(&a, 0).is_err());
        for rank in [1usize, 2] {
            let l = free_left_module(&a, rank).unwrap();
            assert_eq!(l.dim(), 4 * rank);
            assert!(l.validate().is_valid());
            let r = free_right_module(&a, rank).unwrap();
            assert_eq!(r.dim(), 4 * rank);
            assert!(r.validate().is_valid());
        }
    }

    #[test]
    fn catalog_contexts_all_validate() {
        for ctx in catalog_contexts(q()).unwrap() {
            assert!(ctx.is_valid(), "context {}", ctx.name);
        }
    }
}

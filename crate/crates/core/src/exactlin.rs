//! Exact scalars (arbitrary-precision rationals or prime fields) and sparse
//! matrices with rank, kernel, composition and quotient-space computations.
//!
//! Everything here is exact: no floating point enters at any stage, and all
//! eliminations are deterministic.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Zero};

use crate::error::Error;

/// Which field scalars live in. `Rational` is arbitrary-precision `Q`;
/// `Prime(p)` is `F_p` with `p` validated prime at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Rational,
    Prime(u64),
}

impl FieldTag {
    /// Builds the prime-field tag, rejecting composite moduli.
    pub fn prime(modulus: u64) -> Result<FieldTag, Error> {
        if is_prime_u64(modulus) {
            Ok(FieldTag::Prime(modulus))
        } else {
            Err(Error::NotPrime(modulus))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldTag::Rational => 0,
            FieldTag::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldTag::Rational => Scalar::Rational(BigRational::zero()),
            FieldTag::Prime(p) => Scalar::Prime {
                value: 0,
                modulus: *p,
            },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldTag::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldTag::Prime(p) => {
                let p = *p;
                let v = if n >= 0 {
                    n as u64 % p
                } else {
                    (p - (n.unsigned_abs() % p)) % p
                };
                Scalar::Prime {
                    value: v,
                    modulus: p,
                }
            }
        }
    }

    /// Parses an exact coefficient: an integer string or `a/b` in lowest or
    /// any terms. Floats and malformed input are rejected.
    pub fn parse(&self, text: &str) -> Result<Scalar, Error> {
        let s = text.trim();
        let bad = || Error::InvalidScalar(text.to_string());
        let (num_str, den_str) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (s, None),
        };
        let numer: BigInt = num_str.parse().map_err(|_| bad())?;
        let denom: BigInt = match den_str {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(bad());
        }
        match self {
            FieldTag::Rational => Ok(Scalar::Rational(BigRational::new(numer, denom))),
            FieldTag::Prime(p) => {
                let n = bigint_mod_u64(&numer, *p);
                let d = bigint_mod_u64(&denom, *p);
                let d_inv = inv_mod(d, *p).ok_or_else(bad)?;
                Ok(Scalar::Prime {
                    value: mul_mod(n, d_inv, *p),
                    modulus: *p,
                })
            }
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "Q"),
            FieldTag::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl std::str::FromStr for FieldTag {
    type Err = Error;

    /// Accepts the same surface syntax `Display` emits: `Q` or `Fp:<prime>`.
    fn from_str(s: &str) -> Result<FieldTag, Error> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldTag::Rational);
        }
        if let Some(p) = s.strip_prefix("Fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::InvalidScalar(format!("field modulus {p:?}")))?;
            return FieldTag::prime(p);
        }
        Err(Error::InvalidScalar(format!(
            "field {s:?} (expected \"Q\" or \"Fp:<prime>\")"
        )))
    }
}

impl serde::Serialize for FieldTag {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for FieldTag {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<FieldTag, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn bigint_mod_u64(n: &BigInt, p: u64) -> u64 {
    use num::Integer;
    let m = n.mod_floor(&BigInt::from(p));
    let (_, digits) = m.to_u64_digits();
    match digits.as_slice() {
        [] => 0,
        [d] => *d,
        _ => unreachable!("residue below u64 modulus"),
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    Some(pow_mod(a, p - 2, p))
}

/// Deterministic Miller-Rabin over the full u64 range.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An exact field element. Values of different fields never mix; doing so is
/// a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldTag {
        match self {
            Scalar::Rational(_) => FieldTag::Rational,
            Scalar::Prime { modulus, .. } => FieldTag::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Prime { value, modulus } => inv_mod(*value, *modulus).map(|v| Scalar::Prime {
                value: v,
                modulus: *modulus,
            }),
        }
    }
}

impl fmt::Display for Scalar {
    /// Canonical form: lowest-terms `p/q` with positive denominator, or a
    /// bare integer; prime-field values print their least residue.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mismatch() -> ! {
    panic!("scalar arithmetic across different fields")
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Prime {
                    value: a,
                    modulus: p,
                },
                Scalar::Prime {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Prime {
                value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => mismatch(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Prime {
                    value: a,
                    modulus: p,
                },
                Scalar::Prime {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Prime {
                value: mul_mod(*a, *b, *p),
                modulus: *p,
            },
            _ => mismatch(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: (*modulus - *value) % *modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// A sparse vector: (index, value) pairs sorted by index, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// `base + coeff * other`, both inputs canonical sparse vectors.
fn axpy(base: &SparseVec, coeff: &Scalar, other: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(base.len() + other.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < base.len() && j < other.len() {
        match base[i].0.cmp(&other[j].0) {
            std::cmp::Ordering::Less => {
                out.push(base[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                let v = coeff * &other[j].1;
                if !v.is_zero() {
                    out.push((other[j].0, v));
                }
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let v = &base[i].1 + &(coeff * &other[j].1);
                if !v.is_zero() {
                    out.push((base[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(base[i..].iter().cloned());
    for (c, v) in &other[j..] {
        let v = coeff * v;
        if !v.is_zero() {
            out.push((*c, v));
        }
    }
    out
}

fn sparse_get(row: &SparseVec, col: usize) -> Option<&Scalar> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|k| &row[k].1)
}

/// Incremental reduced row echelon form. Pivots are only ever chosen in
/// columns `< pivot_limit`; columns past the limit ride along (used for
/// solving with an augmented block). Rows are kept fully inter-reduced with
/// pivot coefficient one, so the stored rows are the canonical RREF of the
/// span of everything inserted.
struct Echelon {
    pivot_limit: usize,
    rows: Vec<SparseVec>,
    pivot_of_col: HashMap<usize, usize>,
}

impl Echelon {
    fn new(pivot_limit: usize) -> Echelon {
        Echelon {
            pivot_limit,
            rows: Vec::new(),
            pivot_of_col: HashMap::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut row: SparseVec) -> SparseVec {
        loop {
            let hit = row
                .iter()
                .find_map(|(c, _)| self.pivot_of_col.get(c).map(|r| (*c, *r)));
            let Some((col, ridx)) = hit else { return row };
            let coeff = -sparse_get(&row, col).expect("entry just found").clone();
            row = axpy(&row, &coeff, &self.rows[ridx]);
        }
    }

    /// Reduces `row` against the current rows and, if anything survives in
    /// the pivot range, normalizes and installs it. Returns the reduced row.
    fn insert(&mut self, row: SparseVec) -> SparseVec {
        let red = self.reduce(row);
        if let Some((pivot_col, pivot_val)) = red.iter().find(|(c, _)| *c < self.pivot_limit) {
            let pivot_col = *pivot_col;
            let inv = pivot_val.inv().expect("nonzero pivot");
            let norm: SparseVec = red.iter().map(|(c, v)| (*c, &inv * v)).collect();
            for r in 0..self.rows.len() {
                if let Some(coef) = sparse_get(&self.rows[r], pivot_col) {
                    let coef = -coef.clone();
                    self.rows[r] = axpy(&self.rows[r], &coef, &norm);
                }
            }
            self.pivot_of_col.insert(pivot_col, self.rows.len());
            self.rows.push(norm);
        }
        red
    }

    /// Pivot columns in increasing order.
    fn pivot_cols(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.pivot_of_col.keys().copied().collect();
        cols.sort_unstable();
        cols
    }

    fn row_for_pivot(&self, col: usize) -> &SparseVec {
        &self.rows[self.pivot_of_col[&col]]
    }
}

/// Feeds rows sparsest-first (stable on ties), which keeps fill-in low
/// without affecting the resulting canonical RREF.
fn echelon_of_rows(pivot_limit: usize, rows: Vec<SparseVec>) -> Echelon {
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| (rows[i].len(), i));
    let mut ech = Echelon::new(pivot_limit);
    for i in order {
        ech.insert(rows[i].clone());
    }
    ech
}

/// Below this edge length `rank` switches to a dense textbook elimination.
const DENSE_LIMIT: usize = 64;

/// A sparse matrix over a single field. Row-major storage; each row is
/// sorted by column and stores no zeros, so equality is entrywise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    n_rows: usize,
    n_cols: usize,
    field: FieldTag,
    rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(n_rows: usize, n_cols: usize, field: FieldTag) -> SparseMatrix {
        SparseMatrix {
            n_rows,
            n_cols,
            field,
            rows: vec![Vec::new(); n_rows],
        }
    }

    pub fn identity(n: usize, field: FieldTag) -> SparseMatrix {
        let rows = (0..n).map(|i| vec![(i, field.one())]).collect();
        SparseMatrix {
            n_rows: n,
            n_cols: n,
            field,
            rows,
        }
    }

    /// Builds from (row, col, value) triplets. Duplicate coordinates are
    /// summed; exact zeros are dropped.
    pub fn from_triplets<I>(
        n_rows: usize,
        n_cols: usize,
        field: FieldTag,
        triplets: I,
    ) -> Result<SparseMatrix, Error>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut buckets: Vec<HashMap<usize, Scalar>> = vec![HashMap::new(); n_rows];
        for (r, c, v) in triplets {
            if r >= n_rows || c >= n_cols {
                return Err(Error::IndexOutOfRange(format!(
                    "entry ({r}, {c}) outside {n_rows} x {n_cols}"
                )));
            }
            if v.field() != field {
                return Err(Error::FieldMismatch(format!(
                    "entry ({r}, {c}) is over {}, matrix is over {}",
                    v.field(),
                    field
                )));
            }
            match buckets[r].get_mut(&c) {
                Some(old) => *old = &*old + &v,
                None => {
                    buckets[r].insert(c, v);
                }
            }
        }
        let rows = buckets
            .into_iter()
            .map(|b| {
                let mut row: SparseVec = b.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                row.sort_by_key(|(c, _)| *c);
                row
            })
            .collect();
        Ok(SparseMatrix {
            n_rows,
            n_cols,
            field,
            rows,
        })
    }

    /// Dense integer constructor, mainly for tests and small fixtures.
    pub fn from_rows_i64(rows: &[Vec<i64>], field: FieldTag) -> SparseMatrix {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let trips = rows.iter().enumerate().flat_map(|(i, row)| {
            assert_eq!(row.len(), n_cols, "ragged dense input");
            row.iter()
                .enumerate()
                .filter(|(_, v)| **v != 0)
                .map(move |(j, v)| (i, j, field.from_i64(*v)))
                .collect::<Vec<_>>()
        });
        SparseMatrix::from_triplets(n_rows, n_cols, field, trips).expect("in-range fixture")
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<&Scalar> {
        self.rows.get(r).and_then(|row| sparse_get(row, c))
    }

    pub fn iter_entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.rows[r]
    }

    /// All columns as sparse vectors, in one pass.
    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.n_cols];
        for (r, c, v) in self.iter_entries() {
            cols[c].push((r, v.clone()));
        }
        cols
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.n_cols];
        for (r, c, v) in self.iter_entries() {
            rows[c].push((r, v.clone()));
        }
        SparseMatrix {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            field: self.field,
            rows,
        }
    }

    pub fn add(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, Error> {
        if self.n_rows != rhs.n_rows || self.n_cols != rhs.n_cols {
            return Err(Error::Shape(format!(
                "sum of {} x {} and {} x {}",
                self.n_rows, self.n_cols, rhs.n_rows, rhs.n_cols
            )));
        }
        let one = self.field.one();
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(a, b)| axpy(a, &one, b))
            .collect();
        Ok(SparseMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            field: self.field,
            rows,
        })
    }

    pub fn scale(&self, coeff: &Scalar) -> SparseMatrix {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter_map(|(c, v)| {
                        let v = coeff * v;
                        (!v.is_zero()).then_some((*c, v))
                    })
                    .collect()
            })
            .collect();
        SparseMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            field: self.field,
            rows,
        }
    }

    /// Matrix product `self * rhs`, i.e. the composition "`rhs` first, then
    /// `self`" when both are viewed as linear maps.
    pub fn compose(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, Error> {
        if self.n_cols != rhs.n_rows {
            return Err(Error::Shape(format!(
                "composition of {} x {} with {} x {}",
                self.n_rows, self.n_cols, rhs.n_rows, rhs.n_cols
            )));
        }
        let mut rows: Vec<SparseVec> = Vec::with_capacity(self.n_rows);
        for arow in &self.rows {
            let mut acc: HashMap<usize, Scalar> = HashMap::new();
            for (k, av) in arow {
                for (c, bv) in &rhs.rows[*k] {
                    let term = av * bv;
                    match acc.get_mut(c) {
                        Some(old) => *old = &*old + &term,
                        None => {
                            acc.insert(*c, term);
                        }
                    }
                }
            }
            let mut row: SparseVec = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            row.sort_by_key(|(c, _)| *c);
            rows.push(row);
        }
        Ok(SparseMatrix {
            n_rows: self.n_rows,
            n_cols: rhs.n_cols,
            field: self.field,
            rows,
        })
    }

    /// Exact rank. Small matrices take a dense textbook elimination; larger
    /// ones use the sparse echelon (same answer, property-tested).
    pub fn rank(&self) -> usize {
        if self.n_rows < DENSE_LIMIT && self.n_cols < DENSE_LIMIT {
            self.rank_dense()
        } else {
            self.rank_sparse()
        }
    }

    fn rank_sparse(&self) -> usize {
        echelon_of_rows(self.n_cols, self.rows.clone()).rank()
    }

    fn rank_dense(&self) -> usize {
        let mut m: Vec<Vec<Scalar>> = (0..self.n_rows)
            .map(|r| {
                let mut dense = vec![self.field.zero(); self.n_cols];
                for (c, v) in &self.rows[r] {
                    dense[*c] = v.clone();
                }
                dense
            })
            .collect();
        let mut rank = 0usize;
        for col in 0..self.n_cols {
            let Some(pr) = (rank..self.n_rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pr);
            let inv = m[rank][col].inv().expect("nonzero pivot");
            for c in col..self.n_cols {
                m[rank][c] = &inv * &m[rank][c];
            }
            for r in 0..self.n_rows {
                if r != rank && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c in col..self.n_cols {
                        let sub = &factor * &m[rank][c];
                        m[r][c] = &m[r][c] - &sub;
                    }
                }
            }
            rank += 1;
            if rank == self.n_rows {
                break;
            }
        }
        rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.n_cols - self.rank()
    }

    /// A basis of the kernel, one column per basis vector, columns ordered by
    /// their free coordinate.
    pub fn kernel_basis(&self) -> SparseMatrix {
        let ech = echelon_of_rows(self.n_cols, self.rows.clone());
        let pivots = ech.pivot_cols();
        let is_pivot: HashMap<usize, ()> = pivots.iter().map(|c| (*c, ())).collect();
        let free: Vec<usize> = (0..self.n_cols)
            .filter(|c| !is_pivot.contains_key(c))
            .collect();
        let mut triplets = Vec::new();
        for (j, f) in free.iter().enumerate() {
            triplets.push((*f, j, self.field.one()));
            for p in &pivots {
                if let Some(v) = sparse_get(ech.row_for_pivot(*p), *f) {
                    triplets.push((*p, j, -v));
                }
            }
        }
        SparseMatrix::from_triplets(self.n_cols, free.len(), self.field, triplets)
            .expect("kernel coordinates in range")
    }

    /// Solves `self * x = rhs` column by column. Returns `None` when any
    /// column is inconsistent; free variables are set to zero, so the answer
    /// is deterministic.
    pub fn solve(&self, rhs: &SparseMatrix) -> Result<Option<SparseMatrix>, Error> {
        if self.n_rows != rhs.n_rows {
            return Err(Error::Shape(format!(
                "solve with lhs {} x {} and rhs {} x {}",
                self.n_rows, self.n_cols, rhs.n_rows, rhs.n_cols
            )));
        }
        let limit = self.n_cols;
        let mut ech = Echelon::new(limit);
        let mut order: Vec<usize> = (0..self.n_rows).collect();
        order.sort_by_key(|&i| (self.rows[i].len() + rhs.rows[i].len(), i));
        for i in order {
            let mut merged = self.rows[i].clone();
            merged.extend(rhs.rows[i].iter().map(|(c, v)| (c + limit, v.clone())));
            let red = ech.insert(merged);
            if !red.is_empty() && red[0].0 >= limit {
                return Ok(None);
            }
        }
        let mut triplets = Vec::new();
        for p in ech.pivot_cols() {
            for (c, v) in ech.row_for_pivot(p) {
                if *c >= limit {
                    triplets.push((p, *c - limit, v.clone()));
                }
            }
        }
        Ok(Some(
            SparseMatrix::from_triplets(self.n_cols, rhs.n_cols, self.field, triplets)
                .expect("solution coordinates in range"),
        ))
    }
}

impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} x {} over {} ({} entries)",
            self.n_rows,
            self.n_cols,
            self.field,
            self.nnz()
        )?;
        if self.n_rows <= 16 && self.n_cols <= 16 {
            for r in 0..self.n_rows {
                let cells: Vec<String> = (0..self.n_cols)
                    .map(|c| {
                        self.entry(r, c)
                            .map_or_else(|| "0".into(), |v| v.to_string())
                    })
                    .collect();
                writeln!(f, "  [{}]", cells.join(" "))?;
            }
        }
        Ok(())
    }
}

fn check_span_vectors(ambient_dim: usize, spanning: &[SparseVec]) -> Result<(), Error> {
    for (i, v) in spanning.iter().enumerate() {
        if let Some((c, _)) = v.iter().find(|(c, _)| *c >= ambient_dim) {
            return Err(Error::Shape(format!(
                "spanning vector {i} touches coordinate {c}, ambient dimension is {ambient_dim}"
            )));
        }
    }
    Ok(())
}

/// Dimension of `ambient / span(spanning)`.
pub fn quotient_dim(ambient_dim: usize, spanning: &[SparseVec]) -> Result<usize, Error> {
    check_span_vectors(ambient_dim, spanning)?;
    let rank = echelon_of_rows(ambient_dim, spanning.to_vec()).rank();
    Ok(ambient_dim - rank)
}

/// A quotient of a coordinate space by a spanned subspace, with an explicit
/// projection and a section picked from coordinate vectors.
///
/// Invariants: `projection * section` is the identity on the quotient, and
/// the kernel of `projection` is exactly the span handed in.
pub struct Quotient {
    pub dim: usize,
    /// Ambient coordinates whose classes form the chosen quotient basis.
    pub picked: Vec<usize>,
    pub projection: SparseMatrix,
    pub section: SparseMatrix,
}

pub fn quotient_basis(
    ambient_dim: usize,
    spanning: &[SparseVec],
    field: FieldTag,
) -> Result<Quotient, Error> {
    check_span_vectors(ambient_dim, spanning)?;
    let ech = echelon_of_rows(ambient_dim, spanning.to_vec());
    let pivots = ech.pivot_cols();
    let pivot_set: HashMap<usize, ()> = pivots.iter().map(|c| (*c, ())).collect();
    let picked: Vec<usize> = (0..ambient_dim)
        .filter(|c| !pivot_set.contains_key(c))
        .collect();
    let quot_index: HashMap<usize, usize> =
        picked.iter().enumerate().map(|(j, c)| (*c, j)).collect();
    let dim = picked.len();

    let mut proj = Vec::new();
    for j in 0..ambient_dim {
        match quot_index.get(&j) {
            Some(q) => proj.push((*q, j, field.one())),
            None => {
                // j is a pivot: e_j reduces to -(free part of its RREF row).
                for (c, v) in ech.row_for_pivot(j) {
                    if *c != j {
                        proj.push((quot_index[c], j, -v));
                    }
                }
            }
        }
    }
    let projection = SparseMatrix::from_triplets(dim, ambient_dim, field, proj)?;
    let section = SparseMatrix::from_triplets(
        ambient_dim,
        dim,
        field,
        picked.iter().enumerate().map(|(j, c)| (*c, j, field.one())),
    )?;
    Ok(Quotient {
        dim,
        picked,
        projection,
        section,
    })
}

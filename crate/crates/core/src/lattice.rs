//! Integer matrices, Smith normal form, and sublattice indices.
//!
//! Everything here uses arbitrary-precision arithmetic: intermediate Smith
//! normal form entries can outgrow machine words even for small inputs. The
//! matrix type is generic over the integer scalar; [`crate::IntMatrix`] is
//! the `BigInt` instantiation used by the rest of the crate.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::sec::TupleWord;
use crate::words::{Alphabet, Word};
use crate::{Error, Int, IntMatrix, Result};

/// Dense row-major matrix over an integer scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Matrix<T> {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix<T> {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Matrix<T>> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>>
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<Output = T>,
    {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = self[(i, k)].clone() * other[(k, j)].clone();
                    let cur = std::mem::replace(&mut out[(i, j)], T::zero());
                    out[(i, j)] = cur + add;
                }
            }
        }
        Ok(out)
    }
}

impl Matrix<Int> {
    /// Parses the matrix text format: `rows cols` then row-major entries,
    /// all whitespace-separated.
    pub fn parse(text: &str) -> Result<IntMatrix> {
        let mut tokens = text.split_whitespace();
        let mut m = Matrix::parse_from_tokens(&mut tokens)?;
        if let Some(extra) = tokens.next() {
            return Err(Error::Parse(format!("trailing matrix input at {extra:?}")));
        }
        // normalize 0xN/Nx0 representation
        if m.rows == 0 || m.cols == 0 {
            m.data.clear();
        }
        Ok(m)
    }

    /// Parses one matrix from a whitespace token stream, leaving the rest of
    /// the stream untouched.
    pub fn parse_from_tokens<'a, I: Iterator<Item = &'a str>>(
        tokens: &mut I,
    ) -> Result<IntMatrix> {
        let mut dim = |name: &str| -> Result<usize> {
            tokens
                .next()
                .ok_or_else(|| Error::Parse(format!("missing {name} count")))?
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad {name} count")))
        };
        let rows = dim("row")?;
        let cols = dim("column")?;
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            let tok = tokens.next().ok_or_else(|| {
                Error::Parse(format!("expected {} entries", rows * cols))
            })?;
            let v = tok
                .parse::<Int>()
                .map_err(|_| Error::Parse(format!("bad integer entry {tok:?}")))?;
            data.push(v);
        }
        Ok(Matrix { rows, cols, data })
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Smith normal form `S = U * A * V` with unimodular `U`, `V`, non-negative
/// diagonal, and the divisibility chain `d1 | d2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult<T> {
    pub s: Matrix<T>,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: Clone + Zero> SnfResult<T> {
    /// Diagonal entries, including trailing zeros up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Number of non-zero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

struct SnfState<T> {
    s: Matrix<T>,
    u: Matrix<T>,
    v: Matrix<T>,
}

impl<T: Integer + Signed + Clone> SnfState<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.s.cols {
            self.s.data.swap(i * self.s.cols + c, j * self.s.cols + c);
        }
        for c in 0..self.u.cols {
            self.u.data.swap(i * self.u.cols + c, j * self.u.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.s.rows {
            self.s.data.swap(r * self.s.cols + i, r * self.s.cols + j);
        }
        for r in 0..self.v.rows {
            self.v.data.swap(r * self.v.cols + i, r * self.v.cols + j);
        }
    }

    /// row_i += q * row_j
    fn add_row_multiple(&mut self, i: usize, j: usize, q: &T) {
        for c in 0..self.s.cols {
            let add = q.clone() * self.s[(j, c)].clone();
            self.s[(i, c)] = self.s[(i, c)].clone() + add;
        }
        for c in 0..self.u.cols {
            let add = q.clone() * self.u[(j, c)].clone();
            self.u[(i, c)] = self.u[(i, c)].clone() + add;
        }
    }

    /// col_i += q * col_j
    fn add_col_multiple(&mut self, i: usize, j: usize, q: &T) {
        for r in 0..self.s.rows {
            let add = q.clone() * self.s[(r, j)].clone();
            self.s[(r, i)] = self.s[(r, i)].clone() + add;
        }
        for r in 0..self.v.rows {
            let add = q.clone() * self.v[(r, j)].clone();
            self.v[(r, i)] = self.v[(r, i)].clone() + add;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.s.cols {
            self.s[(i, c)] = -self.s[(i, c)].clone();
        }
        for c in 0..self.u.cols {
            self.u[(i, c)] = -self.u[(i, c)].clone();
        }
    }

    /// First non-zero entry of minimal absolute value in the trailing
    /// submatrix, scanning row-major.
    fn min_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.s.rows {
            for j in k..self.s.cols {
                if self.s[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some(b) => {
                        if self.s[(i, j)].abs() < self.s[b].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }
}

/// Computes the Smith normal form of `a`.
///
/// The pivot at each stage is the non-zero entry of minimal absolute value
/// in the trailing submatrix (first such in row-major order), which makes
/// `S` canonical regardless of input presentation; `U` and `V` are whatever
/// the elimination path produced and satisfy `S = U * A * V` exactly.
pub fn smith_normal_form<T: Integer + Signed + Clone + fmt::Debug>(a: &Matrix<T>) -> SnfResult<T> {
    let mut st = SnfState {
        s: a.clone(),
        u: Matrix::identity(a.rows()),
        v: Matrix::identity(a.cols()),
    };
    let mut k = 0;
    while let Some((pi, pj)) = st.min_pivot(k) {
        st.swap_rows(k, pi);
        st.swap_cols(k, pj);
        // clear column k, then row k; a non-zero remainder leaves a smaller
        // pivot in place for the next sweep
        let mut dirty = false;
        for i in k + 1..st.s.rows {
            if st.s[(i, k)].is_zero() {
                continue;
            }
            let q = -(st.s[(i, k)].div_floor(&st.s[(k, k)]));
            st.add_row_multiple(i, k, &q);
            if !st.s[(i, k)].is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        for j in k + 1..st.s.cols {
            if st.s[(k, j)].is_zero() {
                continue;
            }
            let q = -(st.s[(k, j)].div_floor(&st.s[(k, k)]));
            st.add_col_multiple(j, k, &q);
            if !st.s[(k, j)].is_zero() {
                dirty = true;
            }
        }
        if dirty {
            continue;
        }
        // pivot row and column are clear; enforce divisibility of the rest
        let pivot = st.s[(k, k)].clone();
        let mut offender = None;
        'scan: for i in k + 1..st.s.rows {
            for j in k + 1..st.s.cols {
                if !st.s[(i, j)].mod_floor(&pivot).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        match offender {
            Some(i) => {
                let one = T::one();
                st.add_row_multiple(k, i, &one);
            }
            None => k += 1,
        }
    }
    for i in 0..st.s.rows.min(st.s.cols) {
        if st.s[(i, i)].is_negative() {
            st.negate_row(i);
        }
    }
    debug_assert_eq!(st.u.mul(a).unwrap().mul(&st.v).unwrap(), st.s);
    SnfResult { s: st.s, u: st.u, v: st.v }
}

/// Index of a sublattice: finite with its value, or infinite when the
/// generators fail to span a full-rank sublattice. Infinite is a legitimate
/// negative answer, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(Int),
    Infinite,
}

impl LatticeIndex {
    pub fn is_finite(&self) -> bool {
        matches!(self, LatticeIndex::Finite(_))
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{n}"),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

/// Index in the ambient lattice of rank `ambient_rank` of the sublattice
/// spanned by the given vectors: the product of the Smith diagonal when the
/// span has full rank, infinite otherwise.
pub fn lattice_index(generators: &[Vec<Int>], ambient_rank: usize) -> Result<LatticeIndex> {
    for g in generators {
        if g.len() != ambient_rank {
            return Err(Error::DimensionMismatch(format!(
                "generator of length {} in ambient rank {ambient_rank}",
                g.len()
            )));
        }
    }
    let mut m = Matrix::zero(generators.len(), ambient_rank);
    for (i, g) in generators.iter().enumerate() {
        for (j, e) in g.iter().enumerate() {
            m[(i, j)] = e.clone();
        }
    }
    let snf = smith_normal_form(&m);
    if snf.rank() < ambient_rank {
        return Ok(LatticeIndex::Infinite);
    }
    let mut index = Int::one();
    for d in snf.diagonal() {
        index *= d;
    }
    Ok(LatticeIndex::Finite(index))
}

/// Signed exponent sums of a word over the given alphabet, as
/// arbitrary-precision integers.
pub fn exp_vector(g: &Word, alphabet: &Alphabet) -> Result<Vec<Int>> {
    if g.alphabet() != alphabet {
        return Err(Error::AlphabetMismatch(format!(
            "word {g} is not over {:?}",
            alphabet.names()
        )));
    }
    Ok(g.exponent_sums().into_iter().map(Int::from).collect())
}

/// Outcome of the pairwise projection test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairProjection {
    pub i: i64,
    pub j: i64,
    pub index: LatticeIndex,
}

/// Tests whether the `(i, j)`-coordinate pairs of the given tuples span a
/// finite-index sublattice of the rank-4 exponent lattice of the factor
/// pair, reporting the index when they do.
///
/// This is the abelianized finite-index projection test; it certifies
/// finite index of the projected subgroup itself only when the subgroup
/// contains the commutator-rich planted generators (true by construction
/// for [`crate::sec::sec_generators`] output with class at least 2), which
/// the caller asserts.
pub fn vsp_check(tuples: &[TupleWord], i: i64, j: i64) -> Result<PairProjection> {
    if i == j {
        return Err(Error::InvalidArgument("projection coordinates must differ".into()));
    }
    let ab = Alphabet::ab();
    let mut vectors = Vec::with_capacity(tuples.len());
    for t in tuples {
        let wi = t
            .get(i)
            .ok_or_else(|| Error::InvalidArgument(format!("coordinate {i} not in tuple")))?;
        let wj = t
            .get(j)
            .ok_or_else(|| Error::InvalidArgument(format!("coordinate {j} not in tuple")))?;
        let mut v = exp_vector(wi, &ab)?;
        v.extend(exp_vector(wj, &ab)?);
        vectors.push(v);
    }
    Ok(PairProjection { i, j, index: lattice_index(&vectors, 4)? })
}

/// Generators of the kernel of the summed map
/// `(l1, l2, l3) -> f1(l1) + f2(l2) + f3(l3)` into the abelian group
/// presented as the quotient of the free lattice by the rows of
/// `q_relations`.
///
/// Each `maps[t]` sends the free lattice of rank `r_t` (its columns) into
/// the ambient rank-`q` lattice; the kernel lives in the rank
/// `r_1 + r_2 + r_3` lattice and is returned as a generating set computed
/// through the Smith normal form of the stacked system.
pub fn abelian_sum_kernel(
    q_relations: &IntMatrix,
    maps: [&IntMatrix; 3],
) -> Result<Vec<Vec<Int>>> {
    let q = q_relations.cols();
    for m in maps {
        if m.rows() != q {
            return Err(Error::DimensionMismatch(format!(
                "map into rank {q} has {} rows",
                m.rows()
            )));
        }
    }
    let r_total: usize = maps.iter().map(|m| m.cols()).sum();
    let s = q_relations.rows();
    // stacked system [M1 | M2 | M3 | -R^T]: a tuple is in the kernel iff its
    // image is a relation combination
    let mut stacked = Matrix::zero(q, r_total + s);
    let mut offset = 0;
    for m in maps {
        for row in 0..q {
            for col in 0..m.cols() {
                stacked[(row, offset + col)] = m[(row, col)].clone();
            }
        }
        offset += m.cols();
    }
    for rel in 0..s {
        for row in 0..q {
            stacked[(row, r_total + rel)] = -q_relations[(rel, row)].clone();
        }
    }
    let snf = smith_normal_form(&stacked);
    let rank = snf.rank();
    let mut out = Vec::new();
    for col in rank..stacked.cols() {
        let vec: Vec<Int> = (0..r_total).map(|row| snf.v[(row, col)].clone()).collect();
        if vec.iter().any(|e| !e.is_zero()) {
            out.push(vec);
        }
    }
    Ok(out)
}

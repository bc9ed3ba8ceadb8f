//! Exact linear algebra: sparse matrices, kernels and images, homology of
//! three-term complexes and the module structure of nilpotent endomorphisms
//! (modules over `k[h]/(h^N)`).

use std::collections::BTreeMap;
use thiserror::Error;

use crate::scalar::{axpy, is_zero_vec, zeros, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("composite d_out . d_in is nonzero at ({row}, {col})")]
    CompositeNonzero { row: usize, col: usize },
    #[error("h-action is not nilpotent of order {order}")]
    NotNilpotent { order: usize },
}

/// Row-major sparse matrix. Rows hold `(column, value)` pairs sorted by column;
/// zeros are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, S::one())]).collect();
        SparseMatrix {
            rows: n,
            cols: n,
            data,
        }
    }

    /// Duplicate positions are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, S)>,
    {
        let mut acc: BTreeMap<(usize, usize), S> = BTreeMap::new();
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(LinalgError::OutOfBounds {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            let slot = acc.entry((r, c)).or_insert_with(S::zero);
            *slot = slot.clone() + v;
        }
        let mut data = vec![Vec::new(); rows];
        for ((r, c), v) in acc {
            if !v.is_zero() {
                data[r].push((c, v));
            }
        }
        Ok(SparseMatrix { rows, cols, data })
    }

    pub fn from_dense(rows: usize, cols: usize, dense: &[Vec<S>]) -> Self {
        let data = dense
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { rows, cols, data }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Self {
        let mut data = vec![Vec::new(); rows];
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    data[r].push((c, v.clone()));
                }
            }
        }
        SparseMatrix {
            rows,
            cols: columns.len(),
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, row: usize, col: usize) -> S {
        self.data[row]
            .binary_search_by_key(&col, |(c, _)| *c)
            .map(|i| self.data[row][i].1.clone())
            .unwrap_or_else(|_| S::zero())
    }

    pub fn row(&self, row: usize) -> &[(usize, S)] {
        &self.data[row]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &S)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn column(&self, col: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let mut out = vec![zeros(self.cols); self.rows];
        for (r, c, v) in self.iter() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(
            v.len(),
            self.cols,
            "vector length does not match matrix columns"
        );
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(c, _)| !v[*c].is_zero())
                    .fold(S::zero(), |acc, (c, a)| acc + a.clone() * v[*c].clone())
            })
            .collect()
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &SparseMatrix<S>) -> SparseMatrix<S> {
        assert_eq!(self.cols, rhs.rows, "incompatible shapes in composition");
        let mut data = Vec::with_capacity(self.rows);
        let mut acc: Vec<S> = zeros(rhs.cols);
        let mut touched: Vec<usize> = Vec::new();
        for row in &self.data {
            for (k, a) in row {
                for (c, b) in &rhs.data[*k] {
                    if acc[*c].is_zero() {
                        touched.push(*c);
                    }
                    acc[*c] = acc[*c].clone() + a.clone() * b.clone();
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::new();
            for &c in &touched {
                let v = std::mem::replace(&mut acc[c], S::zero());
                if !v.is_zero() {
                    out.push((c, v));
                }
            }
            touched.clear();
            data.push(out);
        }
        SparseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    pub fn linear_combination(&self, a: &S, other: &SparseMatrix<S>, b: &S) -> SparseMatrix<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut data = Vec::with_capacity(self.rows);
        for (x, y) in self.data.iter().zip(&other.data) {
            let mut out = Vec::with_capacity(x.len() + y.len());
            let (mut i, mut j) = (0, 0);
            while i < x.len() || j < y.len() {
                let v = if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
                    i += 1;
                    (x[i - 1].0, a.clone() * x[i - 1].1.clone())
                } else if i >= x.len() || y[j].0 < x[i].0 {
                    j += 1;
                    (y[j - 1].0, b.clone() * y[j - 1].1.clone())
                } else {
                    i += 1;
                    j += 1;
                    (
                        x[i - 1].0,
                        a.clone() * x[i - 1].1.clone() + b.clone() * y[j - 1].1.clone(),
                    )
                };
                if !v.1.is_zero() {
                    out.push(v);
                }
            }
            data.push(out);
        }
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, other: &SparseMatrix<S>) -> SparseMatrix<S> {
        self.linear_combination(&S::one(), other, &S::one())
    }

    pub fn sub(&self, other: &SparseMatrix<S>) -> SparseMatrix<S> {
        self.linear_combination(&S::one(), other, &-S::one())
    }

    pub fn scale(&self, c: &S) -> SparseMatrix<S> {
        if c.is_zero() {
            return SparseMatrix::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(k, v)| (*k, c.clone() * v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> SparseMatrix<S> {
        self.scale(&-S::one())
    }

    pub fn transpose(&self) -> SparseMatrix<S> {
        let mut data = vec![Vec::new(); self.cols];
        for (r, c, v) in self.iter() {
            data[c].push((r, v.clone()));
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn pow(&self, k: usize) -> SparseMatrix<S> {
        assert_eq!(self.rows, self.cols);
        (0..k).fold(SparseMatrix::identity(self.rows), |acc, _| {
            acc.compose(self)
        })
    }

    pub fn rank(&self) -> usize {
        rref(self.to_dense(), self.cols).1.len()
    }

    /// Restriction to the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix<S> {
        let mut col_pos = vec![usize::MAX; self.cols];
        for (j, &c) in cols.iter().enumerate() {
            col_pos[c] = j;
        }
        let data = rows
            .iter()
            .map(|&r| {
                let mut row: Vec<(usize, S)> = self.data[r]
                    .iter()
                    .filter(|(c, _)| col_pos[*c] != usize::MAX)
                    .map(|(c, v)| (col_pos[*c], v.clone()))
                    .collect();
                row.sort_by_key(|(c, _)| *c);
                row
            })
            .collect();
        SparseMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }
}

/// Reduced row echelon form, normalized pivots. Returns the reduced rows and
/// the pivot column of each nonzero row.
pub(crate) fn rref<S: Scalar>(mut m: Vec<Vec<S>>, ncols: usize) -> (Vec<Vec<S>>, Vec<usize>) {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = S::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -row[c].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Kernel and image bases of `m`. The image basis consists of the pivot
/// columns of `m`; the kernel basis is the standard one read off the reduced
/// echelon form.
pub fn kernel_image<S: Scalar>(m: &SparseMatrix<S>) -> (Vec<Vec<S>>, Vec<Vec<S>>) {
    let (red, pivots) = rref(m.to_dense(), m.ncols());
    let image = pivots.iter().map(|&c| m.column(c)).collect();
    (kernel_from_rref(&red, &pivots, m.ncols()), image)
}

pub(crate) fn kernel_from_rref<S: Scalar>(
    red: &[Vec<S>],
    pivots: &[usize],
    ncols: usize,
) -> Vec<Vec<S>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = zeros(ncols);
            v[f] = S::one();
            for (row, &p) in red.iter().zip(pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub fn kernel<S: Scalar>(m: &SparseMatrix<S>) -> Vec<Vec<S>> {
    kernel_image(m).0
}

/// Incrementally maintained echelon basis of a subspace, used to test
/// membership and to extend bases greedily.
#[derive(Clone, Debug)]
pub struct EchelonBasis<S> {
    dim: usize,
    rows: Vec<(usize, Vec<S>)>,
}

impl<S: Scalar> EchelonBasis<S> {
    pub fn new(dim: usize) -> Self {
        EchelonBasis {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[S]) -> Vec<S> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = -v[*p].clone();
                axpy(&mut v, &f, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[S]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v` if it is independent of the current span; returns whether it was added.
    pub fn insert(&mut self, v: &[S]) -> bool {
        assert_eq!(v.len(), self.dim);
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = S::one() / r[p].clone();
        let r: Vec<S> = r.into_iter().map(|x| x * inv.clone()).collect();
        self.rows.push((p, r));
        true
    }
}

/// Coordinates with respect to a fixed linearly independent family.
#[derive(Clone, Debug)]
pub struct CoordinateSystem<S> {
    dim: usize,
    len: usize,
    // Row j < len: functional giving coordinate j. Rows >= len: functionals
    // vanishing exactly on the span.
    functionals: Vec<Vec<S>>,
}

impl<S: Scalar> CoordinateSystem<S> {
    /// Panics if `basis` is linearly dependent.
    pub fn new(dim: usize, basis: &[Vec<S>]) -> Self {
        let len = basis.len();
        let augmented: Vec<Vec<S>> = (0..dim)
            .map(|i| {
                let mut row: Vec<S> = basis.iter().map(|b| b[i].clone()).collect();
                row.extend((0..dim).map(|j| if i == j { S::one() } else { S::zero() }));
                row
            })
            .collect();
        let (red, pivots) = rref(augmented, len + dim);
        assert!(
            pivots.len() >= len && pivots[..len].iter().enumerate().all(|(i, &p)| i == p),
            "coordinate basis is linearly dependent"
        );
        let functionals = red.into_iter().map(|row| row[len..].to_vec()).collect();
        CoordinateSystem {
            dim,
            len,
            functionals,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn eval(row: &[S], v: &[S]) -> S {
        row.iter()
            .zip(v)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        assert_eq!(v.len(), self.dim);
        if self.functionals[self.len..]
            .iter()
            .any(|f| !Self::eval(f, v).is_zero())
        {
            return None;
        }
        Some(
            self.functionals[..self.len]
                .iter()
                .map(|f| Self::eval(f, v))
                .collect(),
        )
    }
}

/// Homology `ker(d_out) / im(d_in)` with a chosen section of the quotient.
#[derive(Clone, Debug)]
pub struct SubquotientSpace<S> {
    pub ambient: usize,
    pub kernel: Vec<Vec<S>>,
    pub image: Vec<Vec<S>>,
    /// Cycles whose classes form a basis of the quotient.
    pub section: Vec<Vec<S>>,
    coords: CoordinateSystem<S>,
}

impl<S: Scalar> SubquotientSpace<S> {
    pub fn dim(&self) -> usize {
        self.section.len()
    }

    /// Class of a cycle in the basis given by `section`; `None` for non-cycles.
    pub fn quotient_coordinates(&self, z: &[S]) -> Option<Vec<S>> {
        let c = self.coords.coordinates(z)?;
        Some(c[self.image.len()..].to_vec())
    }
}

/// Homology at the middle of `· --d_in--> V --d_out--> ·`.
pub fn homology<S: Scalar>(
    d_in: &SparseMatrix<S>,
    d_out: &SparseMatrix<S>,
) -> Result<SubquotientSpace<S>, LinalgError> {
    if d_in.nrows() != d_out.ncols() {
        return Err(LinalgError::DimensionMismatch(format!(
            "d_in has {} rows but d_out has {} columns",
            d_in.nrows(),
            d_out.ncols()
        )));
    }
    if let Some((row, col, _)) = d_out.compose(d_in).iter().next() {
        return Err(LinalgError::CompositeNonzero { row, col });
    }
    let ambient = d_out.ncols();
    let (kernel, _) = kernel_image(d_out);
    let (_, image) = kernel_image(d_in);
    let mut span = EchelonBasis::new(ambient);
    for v in &image {
        span.insert(v);
    }
    let section: Vec<Vec<S>> = kernel.iter().filter(|z| span.insert(z)).cloned().collect();
    let mut all = image.clone();
    all.extend(section.iter().cloned());
    let coords = CoordinateSystem::new(ambient, &all);
    Ok(SubquotientSpace {
        ambient,
        kernel,
        image,
        section,
        coords,
    })
}

/// A finite-dimensional `k[h]/(h^N)`-module presented by its nilpotent `h`-action.
#[derive(Clone, Debug)]
pub struct TruncModule<S> {
    pub order: usize,
    pub h_action: SparseMatrix<S>,
}

impl<S: Scalar> TruncModule<S> {
    pub fn new(order: usize, h_action: SparseMatrix<S>) -> Result<Self, LinalgError> {
        if order == 0 || h_action.nrows() != h_action.ncols() {
            return Err(LinalgError::DimensionMismatch(
                "h-action must be square, order >= 1".into(),
            ));
        }
        if !h_action.pow(order).is_zero() {
            return Err(LinalgError::NotNilpotent { order });
        }
        Ok(TruncModule { order, h_action })
    }

    pub fn dim(&self) -> usize {
        self.h_action.nrows()
    }
}

/// Sizes of the indecomposable summands `k[h]/(h^j)`, largest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockInvariants {
    pub sizes: Vec<usize>,
}

impl BlockInvariants {
    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn is_free(&self, order: usize) -> bool {
        self.sizes.iter().all(|&s| s == order)
    }

    pub fn multiplicity(&self, size: usize) -> usize {
        self.sizes.iter().filter(|&&s| s == size).count()
    }
}

/// Jordan type of the `h`-action from the ranks of its powers.
pub fn block_invariants<S: Scalar>(m: &TruncModule<S>) -> BlockInvariants {
    let n = m.dim();
    let mut ranks = vec![n];
    let mut power = SparseMatrix::identity(n);
    for _ in 0..=m.order {
        power = power.compose(&m.h_action);
        ranks.push(power.rank());
    }
    let mut sizes = Vec::new();
    for j in (1..=m.order).rev() {
        let mult = ranks[j - 1] + ranks[j + 1] - 2 * ranks[j];
        sizes.extend(std::iter::repeat_n(j, mult));
    }
    BlockInvariants { sizes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn mat(rows: &[&[i64]]) -> SparseMatrix<Rational> {
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect();
        SparseMatrix::from_dense(rows.len(), rows[0].len(), &dense)
    }

    #[test]
    fn kernel_image_of_zero_matrix() {
        let (k, i) = kernel_image(&SparseMatrix::<Rational>::zeros(3, 3));
        assert_eq!(k.len(), 3);
        assert!(i.is_empty());
    }

    #[test]
    fn kernel_image_of_identity() {
        let (k, i) = kernel_image(&SparseMatrix::<Rational>::identity(2));
        assert!(k.is_empty());
        assert_eq!(i.len(), 2);
    }

    #[test]
    fn kernel_image_rank_one() {
        let (k, i) = kernel_image(&mat(&[&[1, 1], &[0, 0]]));
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
        assert_eq!(i, vec![vec![q(1), q(0)]]);
    }

    #[test]
    fn homology_trivial_cases() {
        let z = SparseMatrix::<Rational>::zeros(4, 4);
        assert_eq!(homology(&z, &z).unwrap().dim(), 4);
        let id = SparseMatrix::<Rational>::identity(4);
        assert_eq!(homology(&z, &id).unwrap().dim(), 0);
    }

    #[test]
    fn homology_rejects_nonzero_composite() {
        let id = SparseMatrix::<Rational>::identity(2);
        assert!(matches!(
            homology(&id, &id),
            Err(LinalgError::CompositeNonzero { .. })
        ));
    }

    #[test]
    fn de_rham_of_cubic_polynomials() {
        // Ω^0 = span(1,x,x²,x³), Ω^1 = span(dx, x dx, x² dx, x³ dx); d(x^k) = k x^{k-1} dx.
        let d = SparseMatrix::from_triplets(4, 4, (1..4).map(|k| (k - 1, k, q(k as i64)))).unwrap();
        let zero_in = SparseMatrix::<Rational>::zeros(4, 1);
        let zero_out = SparseMatrix::<Rational>::zeros(1, 4);
        let h0 = homology(&zero_in, &d).unwrap();
        assert_eq!(h0.dim(), 1);
        // x³dx is not exact inside the truncation: the boundary artifact.
        let h1 = homology(&d, &zero_out).unwrap();
        assert_eq!(h1.dim(), 1);
        assert_eq!(
            h1.quotient_coordinates(&[q(0), q(0), q(0), q(5)])
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            h1.quotient_coordinates(&[q(1), q(0), q(0), q(0)]).unwrap(),
            vec![q(0)]
        );
    }

    #[test]
    fn block_invariants_basic() {
        let m = TruncModule::new(2, SparseMatrix::<Rational>::zeros(3, 3)).unwrap();
        let b = block_invariants(&m);
        assert_eq!(b.sizes, vec![1, 1, 1]);
        assert!(!b.is_free(2));
        let jordan = mat(&[&[0, 0], &[1, 0]]);
        let b = block_invariants(&TruncModule::new(2, jordan).unwrap());
        assert_eq!(b.sizes, vec![2]);
        assert!(b.is_free(2));
    }

    #[test]
    fn nilpotency_violation() {
        let jordan3 = mat(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        assert!(matches!(
            TruncModule::new(2, jordan3),
            Err(LinalgError::NotNilpotent { order: 2 })
        ));
    }

    #[test]
    fn coordinates_roundtrip() {
        let basis = vec![vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]];
        let cs = CoordinateSystem::new(3, &basis);
        assert_eq!(cs.coordinates(&[q(2), q(5), q(3)]), Some(vec![q(2), q(3)]));
        assert_eq!(cs.coordinates(&[q(1), q(0), q(0)]), None);
    }
}

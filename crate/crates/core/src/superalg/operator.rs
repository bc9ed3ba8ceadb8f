use rayon::prelude::*;

use crate::combinat::multisets;
use crate::exactlin::SparseMatrix;
use crate::scalar::{axpy, signed, sub_vec, zeros, Parity, Scalar};

use super::{AlgebraError, MultiMap, SuperAlgebra, SuperSpace};

/// A homogeneous linear operator on a finite-dimensional super vector space.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearOperator<S> {
    parity: Parity,
    matrix: SparseMatrix<S>,
}

impl<S: Scalar> LinearOperator<S> {
    /// Checks that every nonzero entry maps a basis vector to one of the
    /// declared relative parity.
    pub fn new(
        space: &SuperSpace,
        parity: Parity,
        matrix: SparseMatrix<S>,
    ) -> Result<Self, AlgebraError> {
        if matrix.nrows() != space.dim() || matrix.ncols() != space.dim() {
            return Err(AlgebraError::Malformed(format!(
                "operator is {}x{} on a space of dimension {}",
                matrix.nrows(),
                matrix.ncols(),
                space.dim()
            )));
        }
        if let Some((r, c, _)) = matrix
            .iter()
            .find(|(r, c, _)| space.parity(*r) != space.parity(*c) + parity)
        {
            return Err(AlgebraError::ParityMismatch { row: r, col: c });
        }
        Ok(LinearOperator { parity, matrix })
    }

    pub(crate) fn from_matrix_unchecked(parity: Parity, matrix: SparseMatrix<S>) -> Self {
        LinearOperator { parity, matrix }
    }

    pub fn zero(dim: usize, parity: Parity) -> Self {
        LinearOperator {
            parity,
            matrix: SparseMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        LinearOperator {
            parity: Parity::Even,
            matrix: SparseMatrix::identity(dim),
        }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn matrix(&self) -> &SparseMatrix<S> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        self.matrix.apply(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearOperator<S>) -> LinearOperator<S> {
        LinearOperator {
            parity: self.parity + other.parity,
            matrix: self.matrix.compose(&other.matrix),
        }
    }

    /// Sum of operators of equal parity.
    pub fn add(&self, other: &LinearOperator<S>) -> LinearOperator<S> {
        assert_eq!(
            self.parity, other.parity,
            "adding operators of different parity"
        );
        LinearOperator {
            parity: self.parity,
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn sub(&self, other: &LinearOperator<S>) -> LinearOperator<S> {
        assert_eq!(
            self.parity, other.parity,
            "subtracting operators of different parity"
        );
        LinearOperator {
            parity: self.parity,
            matrix: self.matrix.sub(&other.matrix),
        }
    }

    pub fn scale(&self, c: &S) -> LinearOperator<S> {
        LinearOperator {
            parity: self.parity,
            matrix: self.matrix.scale(c),
        }
    }

    /// Graded commutator `[self, other] = self∘other − (−1)^{|self||other|} other∘self`.
    pub fn graded_commutator(&self, other: &LinearOperator<S>) -> LinearOperator<S> {
        let neg = self.parity.swap_sign(other.parity);
        let a = self.matrix.compose(&other.matrix);
        let b = other.matrix.compose(&self.matrix);
        let matrix = if neg { a.add(&b) } else { a.sub(&b) };
        LinearOperator {
            parity: self.parity + other.parity,
            matrix,
        }
    }
}

/// `[D, a] = D∘a − (−1)^{|D||a|} a∘D` for a homogeneous algebra element `a`.
pub fn commutator<S: Scalar>(
    alg: &SuperAlgebra<S>,
    op: &LinearOperator<S>,
    a: &[S],
) -> Result<LinearOperator<S>, AlgebraError> {
    Ok(op.graded_commutator(&alg.left_mult(a)?))
}

/// Result of [`operator_order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorOrder {
    Exactly(usize),
    ExceedsCap,
}

impl OperatorOrder {
    pub fn at_most(self, n: usize) -> bool {
        matches!(self, OperatorOrder::Exactly(k) if k <= n)
    }
}

/// Smallest `n <= cap` such that every `(n+1)`-fold iterated commutator of
/// `op` with basis multiplications vanishes.
///
/// Commutators with multiplication operators commute up to sign, so only
/// nondecreasing index sequences are visited.
pub fn operator_order<S: Scalar>(
    alg: &SuperAlgebra<S>,
    op: &LinearOperator<S>,
    cap: usize,
) -> OperatorOrder {
    if op.is_zero() {
        return OperatorOrder::Exactly(0);
    }
    let mults: Vec<LinearOperator<S>> = (0..alg.dim()).map(|i| alg.left_mult_basis(i)).collect();
    // (last index used, operator)
    let mut level: Vec<(usize, LinearOperator<S>)> = vec![(0, op.clone())];
    for n in 0..=cap {
        let next: Vec<(usize, LinearOperator<S>)> = level
            .par_iter()
            .flat_map_iter(|(start, p)| {
                (*start..alg.dim()).filter_map(|i| {
                    let c = p.graded_commutator(&mults[i]);
                    (!c.is_zero()).then_some((i, c))
                })
            })
            .collect();
        if next.is_empty() {
            return OperatorOrder::Exactly(n);
        }
        level = next;
    }
    OperatorOrder::ExceedsCap
}

/// Evaluates `[[…[D, a₁]…], aₙ](1)` for homogeneous `aᵢ`, where `D` is given by
/// its parity and action. Only `2ⁿ` applications of `D` are made; no operator
/// matrices are formed.
pub fn derived_eval<S: Scalar, F>(
    alg: &SuperAlgebra<S>,
    op_parity: Parity,
    op: &F,
    args: &[(Parity, Vec<S>)],
) -> Vec<S>
where
    F: Fn(&[S]) -> Vec<S> + ?Sized,
{
    fn go<S: Scalar, F: Fn(&[S]) -> Vec<S> + ?Sized>(
        alg: &SuperAlgebra<S>,
        op_parity: Parity,
        op: &F,
        args: &[(Parity, Vec<S>)],
        x: &[S],
    ) -> Vec<S> {
        let Some(((pa, a), rest)) = args.split_last() else {
            return op(x);
        };
        // P_k(x) = P_{k-1}(a x) − (−1)^{|P_{k-1}||a|} a P_{k-1}(x)
        let inner_parity = op_parity + rest.iter().map(|(p, _)| *p).sum::<Parity>();
        let ax = alg.mul(a, x);
        let first = go(alg, op_parity, op, rest, &ax);
        let second = alg.mul(a, &go(alg, op_parity, op, rest, x));
        if inner_parity.swap_sign(*pa) {
            first.into_iter().zip(second).map(|(u, v)| u + v).collect()
        } else {
            sub_vec(&first, &second)
        }
    }
    go(alg, op_parity, op, args, &alg.one())
}

/// Derived bracket of `op` on basis elements `indices`.
pub fn derived_on_basis<S: Scalar>(
    alg: &SuperAlgebra<S>,
    op: &LinearOperator<S>,
    indices: &[usize],
) -> Vec<S> {
    let args: Vec<(Parity, Vec<S>)> = indices
        .iter()
        .map(|&i| (alg.parity(i), alg.basis(i)))
        .collect();
    derived_eval(alg, op.parity(), &|v: &[S]| op.apply(v), &args)
}

/// Derived bracket on arbitrary vectors, splitting each argument into
/// homogeneous components.
pub fn derived_on_vectors<S: Scalar>(
    alg: &SuperAlgebra<S>,
    op: &LinearOperator<S>,
    args: &[Vec<S>],
) -> Vec<S> {
    let mut out = zeros(alg.dim());
    let split: Vec<[(Parity, Vec<S>); 2]> =
        args.iter().map(|a| alg.space().split_parity(a)).collect();
    let n = args.len();
    for mask in 0..(1u32 << n) {
        let chosen: Vec<(Parity, Vec<S>)> = (0..n)
            .map(|i| split[i][((mask >> i) & 1) as usize].clone())
            .collect();
        if chosen.iter().any(|(_, v)| v.iter().all(|x| x.is_zero())) {
            continue;
        }
        let v = derived_eval(alg, op.parity(), &|x: &[S]| op.apply(x), &chosen);
        axpy(&mut out, &S::one(), &v);
    }
    out
}

/// The `n`-ary derived map `m_n(a₁,…,aₙ) = [[…[D,a₁]…],aₙ](1)` tabulated on
/// basis multisets.
pub fn derived_map<S: Scalar>(
    alg: &SuperAlgebra<S>,
    op: &LinearOperator<S>,
    n: usize,
) -> MultiMap<S> {
    assert!(n >= 1, "derived maps have arity at least one");
    let space = alg.space();
    let keys: Vec<Vec<usize>> = multisets(alg.dim(), n)
        .into_iter()
        .filter(|t| !has_repeated_odd(space.parities(), t))
        .collect();
    let values: Vec<(Vec<usize>, Vec<S>)> = keys
        .into_par_iter()
        .map(|t| {
            let v = derived_on_basis(alg, op, &t);
            (t, v)
        })
        .collect();
    MultiMap::from_dense_values(n, op.parity(), space.clone(), 1, values)
}

pub(crate) fn has_repeated_odd(parities: &[Parity], sorted: &[usize]) -> bool {
    sorted
        .windows(2)
        .any(|w| w[0] == w[1] && parities[w[0]].is_odd())
}

/// Checks `D∘e^a = e^a ∘ e^{−ad(a)}(D)` as operators for an even `a` in the
/// designated ideal; `ad(a)(X) = [a, X]`.
pub fn exp_conjugation_check<S: Scalar>(
    alg: &SuperAlgebra<S>,
    op: &LinearOperator<S>,
    a: &[S],
) -> Result<bool, AlgebraError> {
    if alg.space().homogeneous_parity(a) != Some(Parity::Even) {
        return Err(AlgebraError::Inhomogeneous);
    }
    let ea = alg.left_mult(&alg.exp(a)?)?;
    let la = alg.left_mult(a)?;
    let lhs = op.compose(&ea);
    // e^{−ad a}(D) = Σ (−1)^k/k! ad(a)^k(D)
    let mut term = op.clone();
    let mut conj = op.clone();
    let limit = 2 * alg.dim() + 2;
    for k in 1..=limit {
        term = la.graded_commutator(&term);
        if term.is_zero() {
            let rhs = ea.compose(&conj);
            return Ok(lhs == rhs);
        }
        let c = signed(S::one() / S::factorial(k), k % 2 == 1);
        conj = conj.add(&term.scale(&c));
    }
    Err(AlgebraError::NotNilpotent)
}

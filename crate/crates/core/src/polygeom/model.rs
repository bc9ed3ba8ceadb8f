use crate::bvinfty::{BVInfinity, HOperator};
use crate::scalar::{is_zero_vec, signed, Parity, Scalar};
use crate::superalg::{exterior_sign, LinearOperator, SuperAlgebra};

use super::PolyError;

/// Structure constants `[e_i, e_j] = Σ_k c^k_{ij} e_k` of a Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct LieData<S> {
    dim: usize,
    /// `table[i][j]` = `[e_i, e_j]` as a coordinate vector.
    table: Vec<Vec<Vec<S>>>,
}

impl<S: Scalar> LieData<S> {
    /// Entries `(i, j, k, c)` for `i ≠ j`; `(j, i, k, −c)` is implied.
    pub fn new(
        dim: usize,
        constants: impl IntoIterator<Item = (usize, usize, usize, S)>,
    ) -> Result<Self, PolyError> {
        let mut table = vec![vec![vec![S::zero(); dim]; dim]; dim];
        for (i, j, k, c) in constants {
            if i >= dim || j >= dim || k >= dim {
                return Err(PolyError::Malformed(format!(
                    "structure constant ({i}, {j}, {k}) out of range"
                )));
            }
            if i == j {
                return Err(PolyError::Malformed(format!(
                    "[e{i}, e{i}] is forced to vanish"
                )));
            }
            table[i][j][k] = table[i][j][k].clone() + c.clone();
            table[j][i][k] = table[j][i][k].clone() - c;
        }
        let lie = LieData { dim, table };
        if !lie.satisfies_jacobi() {
            return Err(PolyError::Jacobi);
        }
        Ok(lie)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[S] {
        &self.table[i][j]
    }

    pub fn bracket(&self, u: &[S], v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                for (k, c) in self.table[i][j].iter().enumerate() {
                    out[k] = out[k].clone() + a.clone() * b.clone() * c.clone();
                }
            }
        }
        out
    }

    fn satisfies_jacobi(&self) -> bool {
        let e = |i: usize| {
            let mut v = vec![S::zero(); self.dim];
            v[i] = S::one();
            v
        };
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                (0..self.dim).all(|k| {
                    let a = self.bracket(&e(i), self.bracket_basis(j, k));
                    let b = self.bracket(&e(j), self.bracket_basis(k, i));
                    let c = self.bracket(&e(k), self.bracket_basis(i, j));
                    is_zero_vec(
                        &a.into_iter()
                            .zip(b)
                            .zip(c)
                            .map(|((x, y), z)| x + y + z)
                            .collect::<Vec<_>>(),
                    )
                })
            })
        })
    }

    /// The same Lie algebra in the basis given by the columns `basis[j]`, with
    /// `inverse` the inverse change of coordinates.
    pub fn rebased(&self, basis: &[Vec<S>], inverse: &[Vec<S>]) -> Result<Self, PolyError> {
        let n = self.dim;
        let mut constants = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let b = self.bracket(&basis[i], &basis[j]);
                for (k, row) in inverse.iter().enumerate() {
                    let c = row
                        .iter()
                        .zip(&b)
                        .fold(S::zero(), |acc, (r, x)| acc + r.clone() * x.clone());
                    if !c.is_zero() {
                        constants.push((i, j, k, c));
                    }
                }
            }
        }
        LieData::new(n, constants)
    }
}

/// Schouten bracket on `Λg`, elements given on the bitmask basis.
pub fn lie_schouten<S: Scalar>(lie: &LieData<S>, x: &[S], y: &[S]) -> Vec<S> {
    let n = lie.dim;
    let dim = 1usize << n;
    let mut out = vec![S::zero(); dim];
    let wedge_basis = |a: usize, b: usize| -> Option<(usize, bool)> {
        (a & b == 0).then(|| (a | b, exterior_sign(a, b)))
    };
    for (mx, cx) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (my, cy) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let ix: Vec<usize> = (0..n).filter(|i| mx & (1 << i) != 0).collect();
            let iy: Vec<usize> = (0..n).filter(|i| my & (1 << i) != 0).collect();
            for (p, &a) in ix.iter().enumerate() {
                for (q, &b) in iy.iter().enumerate() {
                    let rest_x = mx & !(1 << a);
                    let rest_y = my & !(1 << b);
                    // e_k ∧ e_{I∖a} ∧ e_{J∖b}
                    let Some((rest, s0)) = wedge_basis(rest_x, rest_y) else {
                        continue;
                    };
                    for (k, c) in lie.table[a][b]
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                    {
                        let Some((mask, s1)) = wedge_basis(1 << k, rest) else {
                            continue;
                        };
                        let neg = (p + q) % 2 == 1;
                        let v = c.clone() * cx.clone() * cy.clone();
                        out[mask] = out[mask].clone() + signed(v, neg ^ s0 ^ s1);
                    }
                }
            }
        }
    }
    out
}

/// Finite model of invariant forms: `(Λg*, d)` with the contractions by an
/// element `P ∈ Λg`.
#[derive(Clone, Debug)]
pub struct InvariantModel<S> {
    pub lie: LieData<S>,
    pub algebra: SuperAlgebra<S>,
    /// Chevalley–Eilenberg cochain differential, `d e^k = −Σ_{i<j} c^k_{ij} e^i e^j`.
    pub d: LinearOperator<S>,
    /// `P` on the bitmask basis of `Λg`.
    pub p: Vec<S>,
}

impl<S: Scalar> InvariantModel<S> {
    /// `i_Q` on `Λg*` for `Q ∈ Λg`, same convention as on polynomial forms.
    pub fn interior(&self, q: &[S]) -> LinearOperator<S> {
        let dim = self.algebra.dim();
        let mut acc = LinearOperator::zero(dim, Parity::Even);
        let mut acc_odd = LinearOperator::zero(dim, Parity::Odd);
        for (mask, c) in q.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let op = self
                .algebra
                .exterior_monomial_operator(0, mask)
                .expect("mask in range")
                .scale(c);
            if op.parity() == Parity::Even {
                acc = acc.add(&op);
            } else {
                acc_odd = acc_odd.add(&op);
            }
        }
        assert!(
            acc.is_zero() || acc_odd.is_zero(),
            "interior product needs a homogeneous multivector"
        );
        if acc_odd.is_zero() {
            acc
        } else {
            acc_odd
        }
    }

    /// `L_Q = [i_Q, d]`.
    pub fn lie_derivative(&self, q: &[S]) -> LinearOperator<S> {
        self.interior(q).graded_commutator(&self.d)
    }

    /// Component of `P` of multivector degree `k`.
    pub fn component(&self, k: u32) -> Vec<S> {
        self.p
            .iter()
            .enumerate()
            .map(|(m, c)| {
                if m.count_ones() == k {
                    c.clone()
                } else {
                    S::zero()
                }
            })
            .collect()
    }
}

/// Builds the model and its BV∞ family `D₀ = d`, `D_i = L_{P_i}` over
/// `k[h]/(h^trunc)`.
pub fn invariant_model<S: Scalar>(
    lie: &LieData<S>,
    p: &[S],
    trunc: usize,
) -> Result<(InvariantModel<S>, BVInfinity<S>), PolyError> {
    let n = lie.dim;
    if n > 12 {
        return Err(PolyError::Malformed(
            "Lie algebra too large for a dense exterior model".into(),
        ));
    }
    let dim = 1usize << n;
    if p.len() != dim {
        return Err(PolyError::Malformed(format!(
            "P must have {dim} coordinates"
        )));
    }
    for (mask, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let k = mask.count_ones() as usize;
        if k < 2 {
            return Err(PolyError::LowDegreeComponent(k));
        }
        if k % 2 == 1 {
            return Err(PolyError::NotEven(k));
        }
    }
    if !is_zero_vec(&lie_schouten(lie, p, p)) {
        return Err(PolyError::NotPoisson);
    }
    let labels: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let algebra = SuperAlgebra::exterior_named(&labels);
    let images: Vec<Vec<S>> = (0..n)
        .map(|k| {
            let mut v = vec![S::zero(); dim];
            for i in 0..n {
                for j in i + 1..n {
                    let c = &lie.table[i][j][k];
                    if !c.is_zero() {
                        v[(1 << i) | (1 << j)] = v[(1 << i) | (1 << j)].clone() - c.clone();
                    }
                }
            }
            v
        })
        .collect();
    let d = algebra.exterior_derivation(Parity::Odd, &images)?;
    let model = InvariantModel {
        lie: lie.clone(),
        algebra,
        d,
        p: p.to_vec(),
    };
    let mut components = vec![model.d.clone()];
    for i in 1..trunc {
        components.push(model.lie_derivative(&model.component(i as u32 + 1)));
    }
    while components.len() > 1 && components.last().is_some_and(LinearOperator::is_zero) {
        components.pop();
    }
    let bv = BVInfinity::new(model.algebra.clone(), HOperator::new(trunc, components)?)?;
    Ok((model, bv))
}

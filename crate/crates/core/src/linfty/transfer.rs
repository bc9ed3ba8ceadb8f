use rayon::prelude::*;

use crate::combinat::{multisets, set_partitions};
use crate::exactlin::{kernel, CoordinateSystem, EchelonBasis, SparseMatrix};
use crate::scalar::{axpy, is_zero_vec, koszul_sign_of, signed, unit, Parity, Scalar};
use crate::superalg::{has_repeated_odd, MultiMap, SuperSpace};

use super::{LInftyError, LInftyMorphism, LInftyStructure};

/// A contraction of `(W, m₁)` onto its homology `H`: `πι = id`,
/// `ιπ − id = m₁κ + κm₁`, `κ² = 0`, `κι = 0`, `πκ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Contraction<S> {
    space: SuperSpace,
    homology: SuperSpace,
    m1: SparseMatrix<S>,
    iota: SparseMatrix<S>,
    pi: SparseMatrix<S>,
    kappa: SparseMatrix<S>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContractionReport {
    pub retraction: bool,
    pub homotopy: bool,
    pub side_conditions: bool,
}

impl ContractionReport {
    pub fn is_valid(&self) -> bool {
        self.retraction && self.homotopy && self.side_conditions
    }
}

impl<S: Scalar> Contraction<S> {
    /// The trivial contraction of a complex with zero differential.
    pub fn identity(space: SuperSpace) -> Self {
        let n = space.dim();
        Contraction {
            homology: space.clone(),
            space,
            m1: SparseMatrix::zeros(n, n),
            iota: SparseMatrix::identity(n),
            pi: SparseMatrix::identity(n),
            kappa: SparseMatrix::zeros(n, n),
        }
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn homology(&self) -> &SuperSpace {
        &self.homology
    }

    pub fn iota(&self) -> &SparseMatrix<S> {
        &self.iota
    }

    pub fn pi(&self) -> &SparseMatrix<S> {
        &self.pi
    }

    pub fn kappa(&self) -> &SparseMatrix<S> {
        &self.kappa
    }

    pub fn check(&self) -> ContractionReport {
        let n = self.space.dim();
        let h = self.homology.dim();
        let retraction = self.pi.compose(&self.iota) == SparseMatrix::identity(h);
        let lhs = self.iota.compose(&self.pi).sub(&SparseMatrix::identity(n));
        let rhs = self
            .m1
            .compose(&self.kappa)
            .add(&self.kappa.compose(&self.m1));
        let side_conditions = self.kappa.compose(&self.kappa).is_zero()
            && self.kappa.compose(&self.iota).is_zero()
            && self.pi.compose(&self.kappa).is_zero();
        ContractionReport {
            retraction,
            homotopy: lhs == rhs,
            side_conditions,
        }
    }
}

/// Builds a contraction of `(W, m₁)`: `W = B ⊕ H ⊕ C` with `B = im m₁`,
/// `C` spanned by basis vectors mapping onto a basis of `B`, and `H` a
/// homogeneous complement of `B` in `ker m₁`.
pub fn contraction_of<S: Scalar>(
    space: &SuperSpace,
    m1: &SparseMatrix<S>,
) -> Result<Contraction<S>, LInftyError> {
    let n = space.dim();
    if m1.nrows() != n || m1.ncols() != n {
        return Err(LInftyError::Malformed("m_1 has the wrong shape".into()));
    }
    if !m1.compose(m1).is_zero() {
        return Err(LInftyError::NotSquareZero);
    }
    if m1.is_zero() {
        return Ok(Contraction::identity(space.clone()));
    }
    let mut image = EchelonBasis::new(n);
    let mut bounds: Vec<Vec<S>> = Vec::new();
    let mut lifts: Vec<usize> = Vec::new();
    for i in 0..n {
        let b = m1.column(i);
        if image.insert(&b) {
            bounds.push(b);
            lifts.push(i);
        }
    }
    let mut cycles: Vec<Vec<S>> = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let cols: Vec<usize> = (0..n).filter(|&i| space.parity(i) == parity).collect();
        let rows: Vec<usize> = (0..n).collect();
        for k in kernel(&m1.submatrix(&rows, &cols)) {
            let mut v = vec![S::zero(); n];
            for (j, &c) in cols.iter().enumerate() {
                v[c] = k[j].clone();
            }
            cycles.push(v);
        }
    }
    let mut harmonic: Vec<Vec<S>> = Vec::new();
    for z in cycles {
        if image.insert(&z) {
            harmonic.push(z);
        }
    }
    let h = harmonic.len();
    let mut frame = harmonic.clone();
    frame.extend(bounds.iter().cloned());
    frame.extend(lifts.iter().map(|&i| unit(n, i)));
    let coords = CoordinateSystem::new(n, &frame);
    let mut pi_cols = Vec::with_capacity(n);
    let mut kappa_cols = Vec::with_capacity(n);
    for j in 0..n {
        let x = coords
            .coordinates(&unit(n, j))
            .expect("frame spans the space");
        pi_cols.push(x[..h].to_vec());
        let mut k = vec![S::zero(); n];
        for (t, &c) in lifts.iter().enumerate() {
            k[c] = -x[h + t].clone();
        }
        kappa_cols.push(k);
    }
    let parities: Vec<Parity> = harmonic
        .iter()
        .map(|v| space.homogeneous_parity(v).expect("cycles are homogeneous"))
        .collect();
    let homology = SuperSpace::new((0..h).map(|i| format!("h{i}")).collect(), parities)?;
    Ok(Contraction {
        space: space.clone(),
        homology,
        m1: m1.clone(),
        iota: SparseMatrix::from_columns(n, &harmonic),
        pi: SparseMatrix::from_columns(h, &pi_cols),
        kappa: SparseMatrix::from_columns(n, &kappa_cols),
    })
}

/// Minimal model on `H` together with the L∞ quasi-isomorphism `H → W`
/// extending `ι`.
#[derive(Clone, Debug)]
pub struct Transferred<S> {
    pub structure: LInftyStructure<S>,
    pub inclusion: LInftyMorphism<S>,
}

/// Tree-sum homotopy transfer. With `λ₁ = ι` and, for `n ≥ 2`,
/// `Yₙ = Σ_π ε m_k(λ(t_{B₁}), …, λ(t_{B_k}))` over set partitions with `k ≥ 2`
/// blocks, the transferred brackets are `m'ₙ = πYₙ` and `λₙ = κYₙ`.
pub fn transfer<S: Scalar>(
    l: &LInftyStructure<S>,
    c: &Contraction<S>,
    up_to: usize,
) -> Result<Transferred<S>, LInftyError> {
    if l.trunc() != 1 {
        return Err(LInftyError::Malformed(
            "transfer needs a k-linear structure".into(),
        ));
    }
    if l.space() != c.space() {
        return Err(LInftyError::Malformed(
            "contraction is for a different space".into(),
        ));
    }
    let up_to = up_to.max(1);
    let h = c.homology().clone();
    let wdim = l.space().dim();
    let iota_values = (0..h.dim()).map(|i| (vec![i], c.iota.column(i)));
    let mut lambdas = vec![MultiMap::from_dense_values_to(
        1,
        Parity::Even,
        h.clone(),
        wdim,
        1,
        iota_values,
    )];
    let mut brackets = vec![MultiMap::zero(1, Parity::Odd, h.clone(), 1)];
    for n in 2..=up_to {
        let partitions: Vec<Vec<Vec<usize>>> = set_partitions(n)
            .into_iter()
            .filter(|p| p.len() >= 2 && p.len() <= l.arity_cap() && !l.bracket(p.len()).is_zero())
            .collect();
        let keys: Vec<Vec<usize>> = multisets(h.dim(), n)
            .into_iter()
            .filter(|t| !has_repeated_odd(h.parities(), t))
            .collect();
        let rows: Vec<(Vec<usize>, Vec<S>, Vec<S>)> = keys
            .into_par_iter()
            .map(|t| {
                let parities: Vec<Parity> = t.iter().map(|&i| h.parity(i)).collect();
                let mut y = vec![S::zero(); wdim];
                'partitions: for blocks in &partitions {
                    let mut values = Vec::with_capacity(blocks.len());
                    for b in blocks {
                        let args: Vec<usize> = b.iter().map(|&i| t[i]).collect();
                        let v = lambdas[b.len() - 1].on_basis(&args);
                        if is_zero_vec(&v) {
                            continue 'partitions;
                        }
                        values.push(v);
                    }
                    let neg = koszul_sign_of(&parities, &blocks.concat());
                    let refs: Vec<&[S]> = values.iter().map(Vec::as_slice).collect();
                    axpy(&mut y, &signed(S::one(), neg), &l.eval(&refs));
                }
                (t, c.kappa.apply(&y), c.pi.apply(&y))
            })
            .collect();
        let (lam, br): (Vec<_>, Vec<_>) = rows
            .into_iter()
            .map(|(t, k, p)| ((t.clone(), k), (t, p)))
            .unzip();
        lambdas.push(MultiMap::from_dense_values_to(
            n,
            Parity::Even,
            h.clone(),
            wdim,
            1,
            lam,
        ));
        brackets.push(MultiMap::from_dense_values(
            n,
            Parity::Odd,
            h.clone(),
            1,
            br,
        ));
    }
    let structure = LInftyStructure::new(h, 1, brackets)?;
    let inclusion = LInftyMorphism::new(structure.clone(), l.with_arity_cap(up_to), lambdas)?;
    Ok(Transferred {
        structure,
        inclusion,
    })
}

/// True iff the transferred brackets of arity `2..=up_to` all vanish.
pub fn is_homotopy_abelian_up_to<S: Scalar>(
    l: &LInftyStructure<S>,
    up_to: usize,
) -> Result<bool, LInftyError> {
    let c = contraction_of(l.space(), &l.m1_matrix())?;
    Ok(transfer(l, &c, up_to)?.structure.is_abelian())
}

use std::fmt;

use crate::exactlin::{EchelonBasis, SparseMatrix};
use crate::scalar::{is_zero_vec, signed, unit, zeros, Parity, Scalar};

use super::{AlgebraError, LinearOperator};

/// Ordered homogeneous basis of a super vector space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperSpace {
    labels: Vec<String>,
    parities: Vec<Parity>,
}

impl SuperSpace {
    pub fn new(labels: Vec<String>, parities: Vec<Parity>) -> Result<Self, AlgebraError> {
        if labels.len() != parities.len() {
            return Err(AlgebraError::Malformed(
                "labels and parities differ in length".into(),
            ));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(AlgebraError::Malformed(format!(
                    "duplicate basis label {l:?}"
                )));
            }
        }
        Ok(SuperSpace { labels, parities })
    }

    /// Basis `e0, e1, ...` with the given parities.
    pub fn anonymous(parities: Vec<Parity>) -> Self {
        let labels = (0..parities.len()).map(|i| format!("e{i}")).collect();
        SuperSpace { labels, parities }
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Parity reversion Π: same basis, every parity flipped.
    pub fn flip(&self) -> SuperSpace {
        SuperSpace {
            labels: self.labels.clone(),
            parities: self.parities.iter().map(|p| p.flip()).collect(),
        }
    }

    /// Parity of a vector if it is homogeneous (the zero vector counts as even).
    pub fn homogeneous_parity<S: Scalar>(&self, v: &[S]) -> Option<Parity> {
        let mut seen: Option<Parity> = None;
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            match seen {
                None => seen = Some(self.parities[i]),
                Some(p) if p != self.parities[i] => return None,
                _ => {}
            }
        }
        Some(seen.unwrap_or(Parity::Even))
    }

    /// Splits a vector into its even and odd components.
    pub fn split_parity<S: Scalar>(&self, v: &[S]) -> [(Parity, Vec<S>); 2] {
        let mut even = zeros(v.len());
        let mut odd = zeros(v.len());
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                match self.parities[i] {
                    Parity::Even => even[i] = x.clone(),
                    Parity::Odd => odd[i] = x.clone(),
                }
            }
        }
        [(Parity::Even, even), (Parity::Odd, odd)]
    }

    /// Graded tensor product basis; index of `(i, j)` is `i * other.dim() + j`.
    pub fn tensor(&self, other: &SuperSpace) -> SuperSpace {
        let mut labels = Vec::new();
        let mut parities = Vec::new();
        for (li, pi) in self.labels.iter().zip(&self.parities) {
            for (lj, pj) in other.labels.iter().zip(&other.parities) {
                labels.push(format!("{li}⊗{lj}"));
                parities.push(*pi + *pj);
            }
        }
        SuperSpace { labels, parities }
    }
}

/// A finite-dimensional unital super-commutative algebra given by structure
/// constants on a homogeneous basis, optionally with a designated nilpotent
/// ideal spanned by a subset of the basis.
#[derive(Clone)]
pub struct SuperAlgebra<S> {
    space: SuperSpace,
    unit: usize,
    // table[i][j] = e_i e_j, sparse.
    table: Vec<Vec<Vec<(usize, S)>>>,
    ideal: Option<Vec<usize>>,
}

impl<S: fmt::Debug> fmt::Debug for SuperAlgebra<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuperAlgebra")
            .field("labels", &self.space.labels)
            .field("unit", &self.unit)
            .field("ideal", &self.ideal)
            .finish()
    }
}

/// Outcome of [`SuperAlgebra::check`]. `failure` names the first offending
/// basis triple (or pair, with `k` unused).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraReport {
    pub unit_law: bool,
    pub associative: bool,
    pub super_commutative: bool,
    pub parity_consistent: bool,
    pub ideal_nilpotent: bool,
    pub failure: Option<AlgebraFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraFailure {
    Unit { i: usize },
    Associativity { i: usize, j: usize, k: usize },
    Commutativity { i: usize, j: usize },
    Parity { i: usize, j: usize, k: usize },
    IdealNotNilpotent,
    IdealNotClosed { i: usize, j: usize },
}

impl AlgebraReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

impl<S: Scalar> SuperAlgebra<S> {
    /// Builds an algebra from structure constants `(i, j, k, c)` meaning
    /// `e_i e_j` has coefficient `c` on `e_k`. Nothing beyond index bounds is
    /// validated here; use [`SuperAlgebra::check`].
    pub fn from_structure_constants(
        space: SuperSpace,
        unit: usize,
        constants: impl IntoIterator<Item = (usize, usize, usize, S)>,
    ) -> Result<Self, AlgebraError> {
        let n = space.dim();
        if unit >= n {
            return Err(AlgebraError::IndexOutOfRange(unit));
        }
        let mut dense = vec![vec![zeros::<S>(n); n]; n];
        for (i, j, k, c) in constants {
            for idx in [i, j, k] {
                if idx >= n {
                    return Err(AlgebraError::IndexOutOfRange(idx));
                }
            }
            dense[i][j][k] = dense[i][j][k].clone() + c;
        }
        let table = dense
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| {
                        v.into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(SuperAlgebra {
            space,
            unit,
            table,
            ideal: None,
        })
    }

    /// Designates the span of the given basis elements as the pronilpotent ideal.
    pub fn with_ideal(mut self, ideal: Vec<usize>) -> Result<Self, AlgebraError> {
        if let Some(&bad) = ideal.iter().find(|&&i| i >= self.dim()) {
            return Err(AlgebraError::IndexOutOfRange(bad));
        }
        let mut ideal = ideal;
        ideal.sort_unstable();
        ideal.dedup();
        self.ideal = Some(ideal);
        Ok(self)
    }

    /// Designates every basis element except the unit as the ideal.
    pub fn with_augmentation_ideal(self) -> Self {
        let ideal = (0..self.dim()).filter(|&i| i != self.unit).collect();
        self.with_ideal(ideal).expect("indices in range")
    }

    /// Exterior algebra on `n` odd generators; basis = subsets in bitmask order,
    /// `e_0 = 1`. Ideal: augmentation.
    pub fn exterior(n: usize) -> Self {
        Self::exterior_named(&(1..=n).map(|i| format!("θ{i}")).collect::<Vec<_>>())
    }

    pub fn exterior_named(generators: &[String]) -> Self {
        let n = generators.len();
        let dim = 1usize << n;
        let labels = (0..dim)
            .map(|m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    (0..n)
                        .filter(|i| m & (1 << i) != 0)
                        .map(|i| generators[i].clone())
                        .collect::<Vec<_>>()
                        .join("∧")
                }
            })
            .collect();
        let parities = (0..dim)
            .map(|m: usize| Parity::from_count(m.count_ones() as usize))
            .collect();
        let space = SuperSpace { labels, parities };
        let mut constants = Vec::new();
        for a in 0..dim {
            for b in 0..dim {
                if a & b == 0 {
                    constants.push((
                        a,
                        b,
                        a | b,
                        signed(S::one(), wedge_sign(a as u32, b as u32)),
                    ));
                }
            }
        }
        Self::from_structure_constants(space, 0, constants)
            .expect("exterior algebra indices in range")
            .with_augmentation_ideal()
    }

    /// `k[x]/(x^len)` with `x` even; basis `1, x, ..., x^{len-1}`. Ideal: `(x)`.
    pub fn truncated_polynomial(len: usize, var: &str) -> Self {
        assert!(len >= 1);
        let labels = (0..len)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            })
            .collect();
        let space = SuperSpace {
            labels,
            parities: vec![Parity::Even; len],
        };
        let constants = (0..len)
            .flat_map(|a| (0..len).map(move |b| (a, b)))
            .filter(|(a, b)| a + b < len)
            .map(|(a, b)| (a, b, a + b, S::one()));
        Self::from_structure_constants(space, 0, constants)
            .expect("indices in range")
            .with_augmentation_ideal()
    }

    /// Graded tensor product `self ⊗ other` with
    /// `(a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa' ⊗ bb'`. Ideal: `I⊗other + self⊗J`
    /// when both carry ideals and units; `I ⊗ other` if only `self` has one.
    pub fn tensor(&self, other: &SuperAlgebra<S>) -> SuperAlgebra<S> {
        let m = other.dim();
        let space = self.space.tensor(&other.space);
        let mut constants = Vec::new();
        for a in 0..self.dim() {
            for a2 in 0..self.dim() {
                for (k, c) in &self.table[a][a2] {
                    for b in 0..m {
                        for b2 in 0..m {
                            let neg = other.space.parity(b).swap_sign(self.space.parity(a2));
                            for (l, d) in &other.table[b][b2] {
                                constants.push((
                                    a * m + b,
                                    a2 * m + b2,
                                    k * m + l,
                                    signed(c.clone() * d.clone(), neg),
                                ));
                            }
                        }
                    }
                }
            }
        }
        let mut alg = Self::from_structure_constants(space, self.unit * m + other.unit, constants)
            .expect("tensor indices in range");
        let ideal: Option<Vec<usize>> = match (&self.ideal, &other.ideal) {
            (Some(i), Some(j)) => Some(
                (0..self.dim())
                    .flat_map(|a| (0..m).map(move |b| (a, b)))
                    .filter(|(a, b)| i.contains(a) || j.contains(b))
                    .map(|(a, b)| a * m + b)
                    .collect(),
            ),
            (Some(i), None) => Some(
                i.iter()
                    .flat_map(|a| (0..m).map(move |b| a * m + b))
                    .collect(),
            ),
            _ => None,
        };
        alg.ideal = ideal;
        alg
    }

    /// Same algebra, ideal replaced by `I ⊗ other`-style lifting of `self`'s ideal only.
    pub fn tensor_left_ideal(&self, other: &SuperAlgebra<S>) -> SuperAlgebra<S> {
        let mut alg = self.tensor(other);
        let m = other.dim();
        alg.ideal = self.ideal.as_ref().map(|i| {
            i.iter()
                .flat_map(|a| (0..m).map(move |b| a * m + b))
                .collect()
        });
        alg
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.space.parity(i)
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn one(&self) -> Vec<S> {
        unit(self.dim(), self.unit)
    }

    pub fn basis(&self, i: usize) -> Vec<S> {
        unit(self.dim(), i)
    }

    pub fn ideal(&self) -> Option<&[usize]> {
        self.ideal.as_deref()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.table[i][j]
    }

    /// Structure constants as `(i, j, k, c)` quadruples.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, S)> {
        let mut out = Vec::new();
        for (i, row) in self.table.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                for (k, c) in entry {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn mul(&self, u: &[S], v: &[S]) -> Vec<S> {
        let n = self.dim();
        let mut out: Vec<S> = zeros(n);
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.clone() * b.clone();
                for (k, c) in &self.table[i][j] {
                    out[*k] = out[*k].clone() + ab.clone() * c.clone();
                }
            }
        }
        out
    }

    /// Left multiplication by a homogeneous element, as an operator.
    pub fn left_mult(&self, a: &[S]) -> Result<LinearOperator<S>, AlgebraError> {
        let parity = self
            .space
            .homogeneous_parity(a)
            .ok_or(AlgebraError::Inhomogeneous)?;
        let n = self.dim();
        let mut entries = Vec::new();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in &self.table[i][j] {
                    entries.push((*k, j, x.clone() * c.clone()));
                }
            }
        }
        let m = SparseMatrix::from_triplets(n, n, entries).expect("indices in range");
        Ok(LinearOperator::from_matrix_unchecked(parity, m))
    }

    pub fn left_mult_basis(&self, i: usize) -> LinearOperator<S> {
        self.left_mult(&self.basis(i))
            .expect("basis elements are homogeneous")
    }

    pub fn in_ideal(&self, a: &[S]) -> Result<bool, AlgebraError> {
        let ideal = self.ideal.as_ref().ok_or(AlgebraError::NoIdeal)?;
        Ok(a.iter()
            .enumerate()
            .all(|(i, x)| x.is_zero() || ideal.binary_search(&i).is_ok()))
    }

    /// Smallest `e` with `I^e = 0`, or `None` if the ideal is not nilpotent.
    pub fn ideal_nilpotency(&self) -> Result<Option<usize>, AlgebraError> {
        let ideal = self.ideal.as_ref().ok_or(AlgebraError::NoIdeal)?;
        let n = self.dim();
        let gens: Vec<Vec<S>> = ideal.iter().map(|&i| self.basis(i)).collect();
        let mut power = gens.clone();
        for e in 1..=n + 1 {
            if power.iter().all(|v| is_zero_vec(v)) {
                return Ok(Some(e));
            }
            let mut next = EchelonBasis::new(n);
            let mut spanning = Vec::new();
            for p in &power {
                for g in &gens {
                    let v = self.mul(p, g);
                    if next.insert(&v) {
                        spanning.push(v);
                    }
                }
            }
            power = spanning;
        }
        Ok(None)
    }

    /// Verifies unit law, associativity, super-commutativity, parity
    /// consistency and (if designated) closure and nilpotency of the ideal.
    pub fn check(&self) -> AlgebraReport {
        let n = self.dim();
        let mut report = AlgebraReport {
            unit_law: true,
            associative: true,
            super_commutative: true,
            parity_consistent: true,
            ideal_nilpotent: true,
            failure: None,
        };
        let fail = |report: &mut AlgebraReport, f: AlgebraFailure| {
            if report.failure.is_none() {
                report.failure = Some(f);
            }
        };
        for i in 0..n {
            let e = self.basis(i);
            if self.mul(&self.one(), &e) != e || self.mul(&e, &self.one()) != e {
                report.unit_law = false;
                fail(&mut report, AlgebraFailure::Unit { i });
            }
        }
        for i in 0..n {
            for j in 0..n {
                let expected = self.parity(i) + self.parity(j);
                if let Some((k, _)) = self.table[i][j]
                    .iter()
                    .find(|(k, _)| self.parity(*k) != expected)
                {
                    report.parity_consistent = false;
                    fail(&mut report, AlgebraFailure::Parity { i, j, k: *k });
                }
                let ij = self.mul(&self.basis(i), &self.basis(j));
                let ji = self.mul(&self.basis(j), &self.basis(i));
                let neg = self.parity(i).swap_sign(self.parity(j));
                if ij
                    .iter()
                    .zip(&ji)
                    .any(|(a, b)| *a != signed(b.clone(), neg))
                {
                    report.super_commutative = false;
                    fail(&mut report, AlgebraFailure::Commutativity { i, j });
                }
            }
        }
        'assoc: for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&self.basis(i), &self.basis(j));
                for k in 0..n {
                    let left = self.mul(&ij, &self.basis(k));
                    let jk = self.mul(&self.basis(j), &self.basis(k));
                    let right = self.mul(&self.basis(i), &jk);
                    if left != right {
                        report.associative = false;
                        fail(&mut report, AlgebraFailure::Associativity { i, j, k });
                        break 'assoc;
                    }
                }
            }
        }
        if let Some(ideal) = &self.ideal {
            'closed: for &i in ideal {
                for j in 0..n {
                    let v = self.mul(&self.basis(i), &self.basis(j));
                    if !self.in_ideal(&v).unwrap_or(false) {
                        report.ideal_nilpotent = false;
                        fail(&mut report, AlgebraFailure::IdealNotClosed { i, j });
                        break 'closed;
                    }
                }
            }
            if report.ideal_nilpotent && self.ideal_nilpotency().ok().flatten().is_none() {
                report.ideal_nilpotent = false;
                fail(&mut report, AlgebraFailure::IdealNotNilpotent);
            }
        }
        report
    }

    /// Change of basis: returns the algebra whose basis element `i` is
    /// `columns[i]` written in the old basis. Columns must be homogeneous and
    /// invertible as a matrix; the unit moves to whichever new basis vector
    /// equals the old unit, if any.
    pub fn rebased(
        &self,
        columns: &[Vec<S>],
        inverse: &SparseMatrix<S>,
    ) -> Result<Self, AlgebraError> {
        let n = self.dim();
        let parities = columns
            .iter()
            .map(|c| {
                self.space
                    .homogeneous_parity(c)
                    .ok_or(AlgebraError::Inhomogeneous)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let unit_idx = columns
            .iter()
            .position(|c| *c == self.one())
            .ok_or_else(|| {
                AlgebraError::Malformed(
                    "change of basis must keep the unit as a basis vector".into(),
                )
            })?;
        let mut constants = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let prod = inverse.apply(&self.mul(&columns[i], &columns[j]));
                for (k, c) in prod.into_iter().enumerate() {
                    if !c.is_zero() {
                        constants.push((i, j, k, c));
                    }
                }
            }
        }
        let space = SuperSpace::new(self.space.labels.clone(), parities)?;
        let alg = Self::from_structure_constants(space, unit_idx, constants)?;
        match &self.ideal {
            Some(_) => Ok(alg.with_augmentation_ideal()),
            None => Ok(alg),
        }
    }
}

/// Sign of `θ_A θ_B = ± θ_{A∪B}` for disjoint bitmasks (generators in increasing order).
pub(crate) fn wedge_sign(a: u32, b: u32) -> bool {
    let mut count = 0;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        // generators of a with index > j must move past θ_j
        count += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    count % 2 == 1
}

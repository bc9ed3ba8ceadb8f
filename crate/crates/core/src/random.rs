//! Seeded generators of random test instances: square-zero operators and
//! perturbations, Maurer–Cartan candidates, Lie and L∞ structures, BV∞
//! families and multivector fields.

use rand::seq::SliceRandom;
use rand::Rng;
pub use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

use crate::bvinfty::{gauge_family, HOperator};
use crate::exactlin::{kernel, SparseMatrix};
use crate::linfty::{coefficient_operator, LInftyStructure, TestCdga};
use crate::polygeom::SuperPoly;
use crate::scalar::{is_zero_vec, Parity, Scalar};
use crate::superalg::{LinearOperator, MultiMap, SuperAlgebra};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small<S: Scalar>(rng: &mut impl Rng, bound: i64) -> S {
    S::from_int(rng.gen_range(-bound..=bound))
}

fn nonzero<S: Scalar>(rng: &mut impl Rng, bound: i64) -> S {
    let v = rng.gen_range(1..=bound);
    S::from_int(if rng.gen_bool(0.5) { v } else { -v })
}

/// A random finite super-commutative algebra of dimension ≤ 16 with a
/// nilpotent augmentation ideal.
pub fn random_algebra<S: Scalar>(rng: &mut impl Rng) -> SuperAlgebra<S> {
    match rng.gen_range(0..6) {
        0 | 1 => SuperAlgebra::exterior(rng.gen_range(2..=4)),
        2 => SuperAlgebra::truncated_polynomial(rng.gen_range(3..=6), "t"),
        3 => SuperAlgebra::truncated_polynomial(3, "t").tensor(&SuperAlgebra::exterior(2)),
        4 => SuperAlgebra::truncated_polynomial(2, "t").tensor(&SuperAlgebra::exterior(3)),
        _ => SuperAlgebra::exterior(2).tensor(&SuperAlgebra::truncated_polynomial(4, "t")),
    }
}

/// Product of random elementary matrices `1 + c E_ij` with `i ≠ j` of equal
/// parity, `j` not the unit; returns `(g, g⁻¹)`.
fn unipotent<S: Scalar>(
    rng: &mut impl Rng,
    alg: &SuperAlgebra<S>,
    steps: usize,
) -> (SparseMatrix<S>, SparseMatrix<S>) {
    let n = alg.dim();
    let mut g = SparseMatrix::identity(n);
    let mut ginv = SparseMatrix::identity(n);
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j || j == alg.unit_index() || alg.parity(i) != alg.parity(j) {
            continue;
        }
        let c: S = nonzero(rng, 2);
        let e = SparseMatrix::from_triplets(n, n, [(i, j, c.clone())]).expect("in range");
        g = g.compose(&SparseMatrix::identity(n).add(&e));
        ginv = SparseMatrix::identity(n).sub(&e).compose(&ginv);
    }
    (g, ginv)
}

/// `D = g D_s g⁻¹` with `D_s` sending some non-unit basis elements to basis
/// elements of opposite parity along disjoint pairs, and `g` unipotent,
/// parity-preserving and fixing `1`. Odd, `D(1) = 0`, `D² = 0`.
pub fn square_zero_operator<S: Scalar>(
    rng: &mut impl Rng,
    alg: &SuperAlgebra<S>,
) -> LinearOperator<S> {
    let n = alg.dim();
    let unit = alg.unit_index();
    let mut free: Vec<usize> = (0..n).collect();
    free.shuffle(rng);
    let mut used = vec![false; n];
    let mut entries = Vec::new();
    let pairs = rng.gen_range(1..=(n / 2).max(1));
    for &src in &free {
        if entries.len() >= pairs {
            break;
        }
        if src == unit || used[src] {
            continue;
        }
        let targets: Vec<usize> = (0..n)
            .filter(|&t| !used[t] && t != src && alg.parity(t) != alg.parity(src))
            .collect();
        let Some(&dst) = targets.choose(rng) else {
            continue;
        };
        used[src] = true;
        used[dst] = true;
        entries.push((dst, src, nonzero::<S>(rng, 3)));
    }
    let ds = SparseMatrix::from_triplets(n, n, entries).expect("in range");
    let (g, ginv) = unipotent(rng, alg, 2 * n);
    LinearOperator::new(alg.space(), Parity::Odd, g.compose(&ds).compose(&ginv))
        .expect("conjugation keeps parity")
}

/// An odd `E` with `E(1) = 0` such that `(D + E)² ≠ 0`.
pub fn perturbation<S: Scalar>(
    rng: &mut impl Rng,
    alg: &SuperAlgebra<S>,
    d: &LinearOperator<S>,
) -> Option<LinearOperator<S>> {
    let n = alg.dim();
    for _ in 0..200 {
        let col = rng.gen_range(0..n);
        let row = rng.gen_range(0..n);
        if col == alg.unit_index() || alg.parity(row) == alg.parity(col) {
            continue;
        }
        let e = SparseMatrix::from_triplets(n, n, [(row, col, nonzero::<S>(rng, 3))])
            .expect("in range");
        let e = LinearOperator::new(alg.space(), Parity::Odd, e).expect("odd entry");
        let sum = d.add(&e);
        if !sum.compose(&sum).is_zero() {
            return Some(e);
        }
    }
    None
}

/// A random operator of the given parity; entries respect the grading.
pub fn random_operator<S: Scalar>(
    rng: &mut impl Rng,
    alg: &SuperAlgebra<S>,
    parity: Parity,
    entries: usize,
) -> LinearOperator<S> {
    let n = alg.dim();
    let mut triplets = Vec::new();
    for _ in 0..entries * 4 {
        if triplets.len() >= entries {
            break;
        }
        let (r, c) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if alg.parity(r) + alg.parity(c) == parity {
            triplets.push((r, c, nonzero::<S>(rng, 3)));
        }
    }
    let m = SparseMatrix::from_triplets(n, n, triplets).expect("in range");
    LinearOperator::new(alg.space(), parity, m).expect("entries respect parity")
}

/// A random even element of the designated ideal (zero if there is none).
pub fn random_even_ideal_element<S: Scalar>(rng: &mut impl Rng, alg: &SuperAlgebra<S>) -> Vec<S> {
    let mut v = vec![S::zero(); alg.dim()];
    for &i in alg.ideal().unwrap_or(&[]) {
        if alg.parity(i) == Parity::Even && rng.gen_bool(0.6) {
            v[i] = small(rng, 3);
        }
    }
    v
}

/// A candidate `ξ ∈ (m_C ⊗ A)_even`: with probability ½ an MC element
/// `log(1 + y)` for a random cycle `y` of `d_C + D`, otherwise generic.
pub fn random_mc_candidate<S: Scalar>(
    rng: &mut impl Rng,
    alg: &SuperAlgebra<S>,
    d: &LinearOperator<S>,
    c: &TestCdga<S>,
) -> Vec<S> {
    let t = c.algebra().tensor_left_ideal(alg);
    if rng.gen_bool(0.5) {
        return random_even_ideal_element(rng, &t);
    }
    let dt = coefficient_operator(c, alg, d);
    let even: Vec<usize> = t
        .ideal()
        .unwrap_or(&[])
        .iter()
        .copied()
        .filter(|&i| t.parity(i) == Parity::Even)
        .collect();
    let cols: Vec<Vec<S>> = even.iter().map(|&i| dt.matrix().column(i)).collect();
    let cycles = kernel(&SparseMatrix::from_columns(t.dim(), &cols));
    let mut y = vec![S::zero(); t.dim()];
    for k in &cycles {
        let coeff: S = small(rng, 2);
        for (j, &i) in even.iter().enumerate() {
            y[i] = y[i].clone() + coeff.clone() * k[j].clone();
        }
    }
    let one_plus: Vec<S> = y.iter().zip(t.one()).map(|(a, b)| a.clone() + b).collect();
    t.log(&one_plus).expect("y lies in the nilpotent ideal")
}

/// Structure constants and an optional two-dimensional subalgebra `(u, v)`.
pub type LieSample<S> = (Vec<(usize, usize, usize, S)>, Option<(Vec<S>, Vec<S>)>);

/// A Lie algebra from a fixed catalog (dimension `dim ≤ 4`) in a random
/// integral basis, as structure constants `(i, j, k, c)` with `i < j`.
/// Returns the constants and, when the catalog entry has one, a basis `(u, v)`
/// of a two-dimensional subalgebra in the new coordinates.
pub fn random_lie_algebra<S: Scalar>(rng: &mut impl Rng, dim: usize) -> LieSample<S> {
    type Entry = (
        &'static [(usize, usize, usize, i64)],
        Option<(usize, usize)>,
    );
    let catalog: &[Entry] = match dim {
        0 | 1 => &[(&[], None)],
        2 => &[(&[], Some((0, 1))), (&[(0, 1, 1, 1)], Some((0, 1)))],
        3 => &[
            (&[], Some((0, 1))),
            (&[(0, 1, 2, 1)], Some((0, 2))),
            (&[(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)], Some((0, 1))),
            (&[(0, 1, 2, 1), (1, 2, 0, 1), (0, 2, 1, -1)], None),
            (&[(0, 1, 1, 1), (0, 2, 2, 1)], Some((1, 2))),
            (&[(0, 1, 1, 1), (0, 2, 2, -1)], Some((1, 2))),
            (&[(0, 1, 1, 1), (0, 2, 2, 2)], Some((0, 1))),
            (&[(0, 1, 1, 1)], Some((0, 1))),
        ],
        _ => &[
            (&[], Some((0, 1))),
            (&[(0, 1, 2, 1)], Some((0, 2))),
            (&[(0, 1, 2, 1), (0, 2, 3, 1)], Some((2, 3))),
            (&[(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)], Some((0, 1))),
            (&[(0, 1, 1, 1), (2, 3, 3, 1)], Some((1, 3))),
            (&[(0, 1, 1, 1), (0, 2, 2, 1), (0, 3, 3, 1)], Some((1, 2))),
        ],
    };
    let (constants, sub) = catalog.choose(rng).expect("nonempty catalog");
    // basis change b_j = Σ_i g_ij e_i
    let n = dim.max(1);
    let mut g: Vec<Vec<S>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { S::one() } else { S::zero() })
                .collect()
        })
        .collect();
    let mut ginv = g.clone();
    for _ in 0..2 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let c: S = nonzero(rng, 2);
        // g ← g (1 + c E_ij), g⁻¹ ← (1 − c E_ij) g⁻¹
        for row in g.iter_mut() {
            row[j] = row[j].clone() + c.clone() * row[i].clone();
        }
        let row_j = ginv[j].clone();
        for (x, y) in ginv[i].iter_mut().zip(row_j) {
            *x = x.clone() - c.clone() * y;
        }
    }
    let bracket = |u: &[S], v: &[S]| -> Vec<S> {
        let mut out = vec![S::zero(); n];
        for &(i, j, k, c) in constants.iter() {
            let coeff = u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone();
            out[k] = out[k].clone() + coeff * S::from_int(c);
        }
        out
    };
    let column = |j: usize| -> Vec<S> { g.iter().map(|row| row[j].clone()).collect() };
    let to_new = |v: &[S]| -> Vec<S> {
        ginv.iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let b = to_new(&bracket(&column(i), &column(j)));
            for (k, c) in b.into_iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, k, c));
                }
            }
        }
    }
    let unit = |i: usize| -> Vec<S> {
        (0..n)
            .map(|k| if k == i { S::one() } else { S::zero() })
            .collect()
    };
    let sub = sub.map(|(a, b)| (to_new(&unit(a)), to_new(&unit(b))));
    (out, sub)
}

/// `u ∧ v` on the bitmask basis of `Λ(k^n)`.
pub fn wedge_vectors<S: Scalar>(u: &[S], v: &[S]) -> Vec<S> {
    let n = u.len();
    let mut out = vec![S::zero(); 1 << n];
    for i in 0..n {
        for j in i + 1..n {
            out[(1 << i) | (1 << j)] = u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone();
        }
    }
    out
}

/// An L∞ structure on a purely odd space of dimension `dim ≤ 4`: a random
/// Lie bracket plus, in dimension 4, a random `m₄`. Only even arities can be
/// nonzero on a purely odd space, and with at most four odd coordinates every
/// relation involving `m₄` has too many inputs to be tested, so the result
/// is L∞ for any choice of `m₄`.
pub fn random_odd_linf<S: Scalar>(
    rng: &mut impl Rng,
    dim: usize,
    arity_cap: usize,
) -> LInftyStructure<S> {
    let (constants, _) = random_lie_algebra::<S>(rng, dim);
    let labels = (1..=dim).map(|i| format!("w{i}")).collect();
    let lie = LInftyStructure::from_lie(labels, constants, arity_cap)
        .expect("catalog entries are Lie algebras");
    if dim < 4 || arity_cap < 4 {
        return lie;
    }
    let space = lie.space().clone();
    let values: Vec<S> = (0..dim).map(|_| small(rng, 2)).collect();
    let m4 = MultiMap::from_dense_values(
        4,
        Parity::Odd,
        space.clone(),
        1,
        [(vec![0, 1, 2, 3], values)],
    );
    let mut brackets = lie.brackets().to_vec();
    brackets[3] = m4;
    LInftyStructure::new(space, 1, brackets).expect("brackets live on the same space")
}

/// A gauge-trivial BV∞ family on `Λ(θ₁..θₙ)`: `D₀` the cochain differential of
/// a random Lie algebra, conjugated by `e^{hR}` for a random nilpotent even
/// `R = Σ c θ_I ∂_J` with `|J| ∈ {1, 2}` and `|I| ≥ |J|`. The truncation is
/// chosen so that `D² = 0` holds exactly.
pub fn random_gauge_family<S: Scalar>(
    rng: &mut impl Rng,
    n: usize,
    min_trunc: usize,
) -> (SuperAlgebra<S>, HOperator<S>) {
    let alg = SuperAlgebra::exterior(n);
    let (constants, _) = random_lie_algebra::<S>(rng, n);
    let dim = alg.dim();
    let mut images = vec![vec![S::zero(); dim]; n];
    for (i, j, k, c) in constants {
        let slot = &mut images[k][(1 << i) | (1 << j)];
        *slot = slot.clone() - c;
    }
    let d0 = alg
        .exterior_derivation(Parity::Odd, &images)
        .expect("exterior algebra");
    loop {
        let mut r = LinearOperator::zero(dim, Parity::Even);
        for _ in 0..rng.gen_range(1..=3) {
            let j_size = rng.gen_range(1..=2usize);
            let i_size = j_size + 2 * rng.gen_range(0..=1usize);
            if i_size > n {
                continue;
            }
            let j_mask = random_mask(rng, n, j_size);
            let i_mask = random_mask(rng, n, i_size);
            let term = alg
                .exterior_monomial_operator(i_mask, j_mask)
                .expect("masks in range");
            r = r.add(&term.scale(&nonzero(rng, 2)));
        }
        if r.is_zero() || !r.matrix().pow(dim).is_zero() {
            continue;
        }
        let ops = gauge_family(&d0, &r, 2 * dim).expect("valid family");
        let needed = ops.components().len().max(min_trunc);
        if ops.components().len() < 2 && rng.gen_bool(0.8) {
            continue;
        }
        return (alg, ops.with_trunc(needed).expect("components fit"));
    }
}

fn random_mask(rng: &mut impl Rng, n: usize, size: usize) -> usize {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    idx[..size].iter().map(|i| 1 << i).sum()
}

/// A family `D = g(D_s + h D_t)g⁻¹` whose square vanishes exactly: `D_s`, `D_t`
/// pair disjoint sets of basis elements, so the homology typically has
/// `h`-torsion.
pub fn random_torsion_family<S: Scalar>(
    rng: &mut impl Rng,
    alg: &SuperAlgebra<S>,
    trunc: usize,
) -> HOperator<S> {
    let n = alg.dim();
    let mut idx: Vec<usize> = (0..n).filter(|&i| i != alg.unit_index()).collect();
    idx.shuffle(rng);
    let mut used = vec![false; n];
    let mut parts = [Vec::new(), Vec::new()];
    for &src in &idx {
        if used[src] {
            continue;
        }
        let Some(&dst) = idx
            .iter()
            .find(|&&t| !used[t] && t != src && alg.parity(t) != alg.parity(src))
        else {
            continue;
        };
        used[src] = true;
        used[dst] = true;
        parts[rng.gen_range(0..2)].push((dst, src, nonzero::<S>(rng, 2)));
    }
    let (g, ginv) = unipotent(rng, alg, 2 * n);
    let comps = parts
        .into_iter()
        .map(|e| {
            let m = SparseMatrix::from_triplets(n, n, e).expect("in range");
            LinearOperator::new(alg.space(), Parity::Odd, g.compose(&m).compose(&ginv))
                .expect("odd")
        })
        .collect();
    HOperator::new(trunc.max(2), comps).expect("two odd components")
}

/// A random `k`-vector field in `nvars` coordinates with coefficients of
/// degree ≤ `max_degree`.
pub fn random_multivector<S: Scalar>(
    rng: &mut impl Rng,
    nvars: usize,
    k: usize,
    max_degree: u32,
) -> SuperPoly<S> {
    let mut p = SuperPoly::zero(nvars);
    for _ in 0..rng.gen_range(1..=3) {
        let mut exps = vec![0u32; nvars];
        for _ in 0..rng.gen_range(0..=max_degree) {
            exps[rng.gen_range(0..nvars)] += 1;
        }
        let mask = random_mask(rng, nvars, k) as u32;
        p = p.add(&SuperPoly::monomial(nvars, exps, mask, nonzero(rng, 3)));
    }
    p
}

/// True when `v` is nonzero.
pub fn is_nonzero<S: Scalar>(v: &[S]) -> bool {
    !is_zero_vec(v)
}

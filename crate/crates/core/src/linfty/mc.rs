use crate::combinat::multisets;
use crate::exactlin::SparseMatrix;
use crate::scalar::{axpy, is_zero_vec, signed, sub_vec, zeros, Parity, Scalar};
use crate::superalg::{LinearOperator, MultiMap, SuperAlgebra};

use super::{LInftyError, LInftyMorphism, LInftyStructure};

/// A finite-dimensional local commutative dg algebra `(C, C₊, d_C)` used as
/// coefficients for Maurer–Cartan sets. The algebra's designated ideal is `C₊`.
#[derive(Clone, Debug)]
pub struct TestCdga<S> {
    name: String,
    alg: SuperAlgebra<S>,
    d: LinearOperator<S>,
    nilpotency: usize,
}

impl<S: Scalar> TestCdga<S> {
    /// Validates: algebra axioms, `C₊` = span of the non-unit basis and
    /// nilpotent, `d` odd, `d(1) = 0`, `d² = 0`, Leibniz rule on basis pairs.
    pub fn new(
        name: impl Into<String>,
        alg: SuperAlgebra<S>,
        d: LinearOperator<S>,
    ) -> Result<Self, LInftyError> {
        let bad = |why: &str| Err(LInftyError::InvalidTestCdga(why.to_string()));
        let report = alg.check();
        if !report.is_valid() {
            return bad(&format!("algebra axioms fail: {:?}", report.failure));
        }
        let expected: Vec<usize> = (0..alg.dim()).filter(|&i| i != alg.unit_index()).collect();
        if alg.ideal() != Some(expected.as_slice()) {
            return bad("maximal ideal must be spanned by the non-unit basis elements");
        }
        let Some(nilpotency) = alg.ideal_nilpotency()? else {
            return bad("maximal ideal is not nilpotent");
        };
        if d.parity() != Parity::Odd || d.dim() != alg.dim() {
            return bad("differential must be an odd operator on C");
        }
        if !is_zero_vec(&d.apply(&alg.one())) || !d.compose(&d).is_zero() {
            return bad("differential must kill 1 and square to zero");
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let (ei, ej) = (alg.basis(i), alg.basis(j));
                let lhs = d.apply(&alg.mul(&ei, &ej));
                let mut rhs = alg.mul(&d.apply(&ei), &ej);
                axpy(
                    &mut rhs,
                    &signed(S::one(), alg.parity(i).is_odd()),
                    &alg.mul(&ei, &d.apply(&ej)),
                );
                if lhs != rhs {
                    return bad(&format!("differential is not a derivation on ({i}, {j})"));
                }
            }
        }
        Ok(TestCdga {
            name: name.into(),
            alg,
            d,
            nilpotency,
        })
    }

    /// `C` with zero differential.
    pub fn without_differential(
        name: impl Into<String>,
        alg: SuperAlgebra<S>,
    ) -> Result<Self, LInftyError> {
        let d = LinearOperator::zero(alg.dim(), Parity::Odd);
        Self::new(name, alg, d)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &SuperAlgebra<S> {
        &self.alg
    }

    pub fn differential(&self) -> &LinearOperator<S> {
        &self.d
    }

    /// Smallest `e` with `C₊^e = 0`.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    /// The standard collection: square-zero extensions, truncated polynomial
    /// rings, exterior algebras, tensor products, with and without differential.
    pub fn zoo() -> Vec<TestCdga<S>> {
        let dual = || SuperAlgebra::<S>::truncated_polynomial(2, "ε");
        let ext1 = || SuperAlgebra::<S>::exterior_named(&["η".to_string()]);
        let mut out = vec![
            Self::without_differential("k[ε]/ε²", dual()).expect("valid"),
            Self::without_differential("k[t]/t³", SuperAlgebra::truncated_polynomial(3, "t"))
                .expect("valid"),
            Self::without_differential("k[ε₁,ε₂]/(ε₁²,ε₂²)", dual().tensor(&dual()))
                .expect("valid"),
            Self::without_differential(
                "Λ(η₁,η₂)",
                SuperAlgebra::exterior_named(&["η₁".to_string(), "η₂".to_string()]),
            )
            .expect("valid"),
        ];
        // d(t^a ⊗ η) = t^{a+1} ⊗ 1 on k[t]/t^len ⊗ Λ(η), index 2a + b for t^a ⊗ η^b
        for (name, len) in [("k[t]/t³ ⊗ Λ(η), dη = t", 3), ("k[ε]/ε² ⊗ Λ(η), dη = ε", 2)]
        {
            let alg = SuperAlgebra::truncated_polynomial(len, "t").tensor(&ext1());
            let entries = (0..len - 1).map(|a| (2 * (a + 1), 2 * a + 1, S::one()));
            let d = SparseMatrix::from_triplets(2 * len, 2 * len, entries).expect("in range");
            let d = LinearOperator::new(alg.space(), Parity::Odd, d).expect("odd");
            out.push(Self::new(name, alg, d).expect("valid"));
        }
        out
    }
}

/// Parity of the basis element `c ⊗ w` of `C ⊗ W`.
fn pair_parity<S: Scalar>(c: &TestCdga<S>, l: &LInftyStructure<S>, idx: usize) -> Parity {
    let wdim = l.full_dim();
    c.alg.parity(idx / wdim) + l.parity(idx % wdim)
}

fn check_element<S: Scalar>(
    c: &TestCdga<S>,
    l: &LInftyStructure<S>,
    xi: &[S],
) -> Result<(), LInftyError> {
    let wdim = l.full_dim();
    if xi.len() != c.dim() * wdim {
        return Err(LInftyError::Malformed(format!(
            "element has length {}, expected {}",
            xi.len(),
            c.dim() * wdim
        )));
    }
    for (i, x) in xi.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if pair_parity(c, l, i) != Parity::Even {
            return Err(LInftyError::NotEven);
        }
        if i / wdim == c.alg.unit_index() {
            return Err(LInftyError::NotInMaximalIdeal);
        }
    }
    Ok(())
}

/// `Σ_{i≤up_to} (1/i!) f_i^C(ξ, …, ξ)` for graded-symmetric maps extended
/// `C`-linearly, with `ξ` even; `maps[i-1]` has arity `i`.
fn exp_sum<S: Scalar>(
    c: &TestCdga<S>,
    maps: &[MultiMap<S>],
    wdim: usize,
    xi: &[S],
    up_to: usize,
) -> Vec<S> {
    let terms: Vec<(usize, usize, &S)> = xi
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i / wdim, i % wdim, x))
        .collect();
    let udim = maps.first().map(|m| m.full_target_dim()).unwrap_or(wdim);
    let mut out = zeros(c.dim() * udim);
    for (i, map) in maps.iter().enumerate().take(up_to) {
        let arity = i + 1;
        if map.is_zero() {
            continue;
        }
        for choice in multisets(terms.len(), arity) {
            // ordered sum over tuples = multinomial × sorted representative,
            // which absorbs 1/i! into 1/Π(multiplicity!)
            let mut coeff = S::one();
            let mut run = 1;
            for k in 0..arity {
                coeff = coeff * terms[choice[k]].2.clone();
                if k > 0 && choice[k] == choice[k - 1] {
                    run += 1;
                    coeff = coeff / S::from_int(run);
                } else {
                    run = 1;
                }
            }
            let args: Vec<(usize, usize)> =
                choice.iter().map(|&k| (terms[k].0, terms[k].1)).collect();
            let value = extended_on_basis(c, map, &args);
            axpy(&mut out, &coeff, &value);
        }
    }
    out
}

/// `f^C(c₁⊗w₁, …, cₙ⊗wₙ) = ± c₁⋯cₙ ⊗ f(w₁, …, wₙ)`, the sign coming from
/// moving `f` past the `cⱼ` and each `cⱼ` past the preceding `w`s.
pub fn extended_on_basis<S: Scalar>(
    c: &TestCdga<S>,
    map: &MultiMap<S>,
    args: &[(usize, usize)],
) -> Vec<S> {
    let udim = map.full_target_dim();
    let mut out = zeros(c.dim() * udim);
    let wb = map.base().dim();
    let wpar = |w: usize| map.base().parity(w % wb);
    let mut neg = false;
    let mut w_total = Parity::Even;
    let mut c_total = Parity::Even;
    for &(ci, wi) in args {
        let pc = c.alg.parity(ci);
        neg ^= pc.swap_sign(w_total);
        w_total = w_total + wpar(wi);
        c_total = c_total + pc;
    }
    neg ^= map.parity().swap_sign(c_total);
    let cprod = args[1..]
        .iter()
        .fold(c.alg.basis(args[0].0), |acc, &(ci, _)| {
            c.alg.mul(&acc, &c.alg.basis(ci))
        });
    if is_zero_vec(&cprod) {
        return out;
    }
    let ws: Vec<usize> = args.iter().map(|&(_, w)| w).collect();
    let value = map.on_basis(&ws);
    for (ci, x) in cprod.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let x = signed(x.clone(), neg);
        for (wi, y) in value.iter().enumerate() {
            if !y.is_zero() {
                let slot = &mut out[ci * udim + wi];
                *slot = slot.clone() + x.clone() * y.clone();
            }
        }
    }
    out
}

/// Left side of the Maurer–Cartan equation
/// `(d_C ⊗ 1)ξ + Σ_{i≥1} (1/i!) m_i^C(ξ, …, ξ)` in `C ⊗ W`.
pub fn mc_residual<S: Scalar>(
    l: &LInftyStructure<S>,
    c: &TestCdga<S>,
    xi: &[S],
) -> Result<Vec<S>, LInftyError> {
    check_element(c, l, xi)?;
    let needed = c.nilpotency() - 1;
    if l.arity_cap() < needed {
        return Err(LInftyError::ArityCapTooSmall {
            needed,
            cap: l.arity_cap(),
        });
    }
    let wdim = l.full_dim();
    let mut out = exp_sum(c, l.brackets(), wdim, xi, needed);
    for (i, x) in xi.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let dc = c.d.apply(&c.alg.basis(i / wdim));
        for (cj, y) in dc.iter().enumerate() {
            if !y.is_zero() {
                let slot = &mut out[cj * wdim + i % wdim];
                *slot = slot.clone() + x.clone() * y.clone();
            }
        }
    }
    Ok(out)
}

pub fn is_mc<S: Scalar>(
    l: &LInftyStructure<S>,
    c: &TestCdga<S>,
    xi: &[S],
) -> Result<bool, LInftyError> {
    Ok(is_zero_vec(&mc_residual(l, c, xi)?))
}

/// Image of an element under an L∞ morphism: `Σ (1/i!) f_i^C(ξ, …, ξ)`.
pub fn push_forward<S: Scalar>(
    f: &LInftyMorphism<S>,
    c: &TestCdga<S>,
    xi: &[S],
) -> Result<Vec<S>, LInftyError> {
    check_element(c, f.source(), xi)?;
    let needed = c.nilpotency() - 1;
    if f.arity_cap() < needed {
        return Err(LInftyError::ArityCapTooSmall {
            needed,
            cap: f.arity_cap(),
        });
    }
    let maps: Vec<MultiMap<S>> = (1..=f.arity_cap())
        .map(|n| f.component(n).clone())
        .collect();
    Ok(exp_sum(c, &maps, f.source().full_dim(), xi, needed))
}

/// `d_C ⊗ 1 + 1 ⊗ D` on `C ⊗ A`, with `(1 ⊗ D)(c ⊗ a) = (−1)^{|c|} c ⊗ Da`.
pub fn coefficient_operator<S: Scalar>(
    c: &TestCdga<S>,
    alg: &SuperAlgebra<S>,
    op: &LinearOperator<S>,
) -> LinearOperator<S> {
    let (cd, ad) = (c.dim(), alg.dim());
    let mut entries = Vec::new();
    for (r, col, x) in c.d.matrix().iter() {
        for a in 0..ad {
            entries.push((r * ad + a, col * ad + a, x.clone()));
        }
    }
    for ci in 0..cd {
        let neg = c.alg.parity(ci).is_odd() && op.parity().is_odd();
        for (r, col, x) in op.matrix().iter() {
            entries.push((ci * ad + r, ci * ad + col, signed(x.clone(), neg)));
        }
    }
    let m = SparseMatrix::from_triplets(cd * ad, cd * ad, entries).expect("in range");
    let space = c.alg.space().tensor(alg.space());
    LinearOperator::new(&space, op.parity(), m).expect("tensor operator has the parity of D")
}

/// Outcome of comparing the MC equation with the cycle condition on `e^ξ − 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct McCheck<S> {
    pub is_mc: bool,
    pub is_cycle: bool,
    /// `is_mc == is_cycle`; must always hold.
    pub agree: bool,
    /// `e^{−ξ} (d_C + D)(e^ξ − 1)` equals the MC residual exactly.
    pub identity_holds: bool,
    pub residual: Vec<S>,
}

/// Evaluates the MC equation for the derived brackets of `D` and, through an
/// independent path in the algebra `C ⊗ A`, whether `(d_C + D)(e^ξ − 1) = 0`.
pub fn mc_exponential_check<S: Scalar>(
    alg: &SuperAlgebra<S>,
    op: &LinearOperator<S>,
    c: &TestCdga<S>,
    xi: &[S],
) -> Result<McCheck<S>, LInftyError> {
    let cap = c.nilpotency().saturating_sub(1).max(1);
    let l = LInftyStructure::from_operator(alg, op, cap)?;
    let residual = mc_residual(&l, c, xi)?;
    let t = c.alg.tensor_left_ideal(alg);
    let dt = coefficient_operator(c, alg, op);
    let e = t.exp(xi)?;
    let image = dt.apply(&sub_vec(&e, &t.one()));
    let is_cycle = is_zero_vec(&image);
    let transported = t.mul(
        &t.exp(&xi.iter().map(|x| -x.clone()).collect::<Vec<_>>())?,
        &image,
    );
    let is_mc = is_zero_vec(&residual);
    Ok(McCheck {
        is_mc,
        is_cycle,
        agree: is_mc == is_cycle,
        identity_holds: transported == residual,
        residual,
    })
}

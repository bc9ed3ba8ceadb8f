use crate::scalar::{signed, Scalar};

use super::SuperPoly;

/// Multivector field: a [`SuperPoly`] whose odd generators stand for `∂ᵢ`.
pub type PolyMultivector<S> = SuperPoly<S>;

/// `v(f) = Σ vᵃ ∂ₐ f` for a vector field `v`.
pub fn apply_vector_field<S: Scalar>(v: &PolyMultivector<S>, f: &SuperPoly<S>) -> SuperPoly<S> {
    let n = v.nvars();
    (0..n).fold(SuperPoly::zero(n), |acc, a| {
        acc.add(&v.d_odd_left(a).mul(&f.d_even(a)))
    })
}

/// Lie bracket of vector fields, `[u, v] = Σ_b (u(vᵇ) − v(uᵇ)) ∂_b`.
pub fn lie_bracket<S: Scalar>(
    u: &PolyMultivector<S>,
    v: &PolyMultivector<S>,
) -> PolyMultivector<S> {
    let n = u.nvars();
    (0..n).fold(SuperPoly::zero(n), |acc, b| {
        let coeff =
            apply_vector_field(u, &v.d_odd_left(b)).sub(&apply_vector_field(v, &u.d_odd_left(b)));
        acc.add(&coeff.mul(&SuperPoly::theta(n, b)))
    })
}

/// Splits `f ∂_{i₁}∧…∧∂_{i_k}` into the vector fields `f∂_{i₁}, ∂_{i₂}, …`.
fn factor_term<S: Scalar>(
    n: usize,
    exps: &[u32],
    odd: u32,
    c: &S,
) -> (SuperPoly<S>, Vec<SuperPoly<S>>) {
    let coeff = SuperPoly::monomial(n, exps.to_vec(), 0, c.clone());
    let fields = (0..n)
        .filter(|i| odd & (1 << i) != 0)
        .map(|i| SuperPoly::theta(n, i))
        .collect();
    (coeff, fields)
}

fn wedge_all<S: Scalar>(n: usize, items: impl IntoIterator<Item = SuperPoly<S>>) -> SuperPoly<S> {
    items
        .into_iter()
        .fold(SuperPoly::one(n), |acc, x| acc.mul(&x))
}

/// Schouten bracket by the wedge formula on decomposable terms,
/// `[v₁∧…∧vₖ, w₁∧…∧wₘ] = Σ (−1)^{i+j} [vᵢ,wⱼ] ∧ v₁…v̂ᵢ…vₖ ∧ w₁…ŵⱼ…wₘ`,
/// with `[V, g] = Σ (−1)^{k−i} vᵢ(g) v₁…v̂ᵢ…vₖ` and graded antisymmetry
/// `[X, Y] = −(−1)^{(|X|−1)(|Y|−1)} [Y, X]` for the remaining case.
pub fn schouten<S: Scalar>(x: &PolyMultivector<S>, y: &PolyMultivector<S>) -> PolyMultivector<S> {
    let n = x.nvars();
    let mut out = SuperPoly::zero(n);
    for (mx, cx) in x.terms() {
        for (my, cy) in y.terms() {
            let (f, vs) = factor_term(n, &mx.exps, mx.odd, cx);
            let (g, ws) = factor_term(n, &my.exps, my.odd, cy);
            let term = match (vs.len(), ws.len()) {
                (0, 0) => SuperPoly::zero(n),
                (_, 0) => multivector_on_function(&f, &vs, &g),
                (0, m) => {
                    let t = multivector_on_function(&g, &ws, &f);
                    if m % 2 == 1 {
                        t.neg()
                    } else {
                        t
                    }
                }
                _ => {
                    let mut v = vs.clone();
                    v[0] = f.mul(&v[0]);
                    let mut w = ws.clone();
                    w[0] = g.mul(&w[0]);
                    let mut acc = SuperPoly::zero(n);
                    for p in 0..v.len() {
                        for q in 0..w.len() {
                            let rest_v = v
                                .iter()
                                .enumerate()
                                .filter(|(i, _)| *i != p)
                                .map(|(_, t)| t.clone());
                            let rest_w = w
                                .iter()
                                .enumerate()
                                .filter(|(j, _)| *j != q)
                                .map(|(_, t)| t.clone());
                            let t = wedge_all(
                                n,
                                std::iter::once(lie_bracket(&v[p], &w[q]))
                                    .chain(rest_v)
                                    .chain(rest_w),
                            );
                            acc = acc.add(&t.scale(&signed(S::one(), (p + q) % 2 == 1)));
                        }
                    }
                    acc
                }
            };
            out = out.add(&term);
        }
    }
    out
}

/// `[f ∂_{i₁}∧…∧∂_{i_k}, g]`.
fn multivector_on_function<S: Scalar>(
    f: &SuperPoly<S>,
    fields: &[SuperPoly<S>],
    g: &SuperPoly<S>,
) -> SuperPoly<S> {
    let n = f.nvars();
    let k = fields.len();
    let mut acc = SuperPoly::zero(n);
    for p in 0..k {
        let rest = fields
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != p)
            .map(|(_, t)| t.clone());
        let t = f
            .mul(&apply_vector_field(&fields[p], g))
            .mul(&wedge_all(n, rest));
        acc = if (k - 1 - p) % 2 == 1 {
            acc.sub(&t)
        } else {
            acc.add(&t)
        };
    }
    acc
}

/// Schouten bracket as the odd Poisson bracket in `(xᵢ, ξᵢ)`:
/// `[F, G] = Σᵢ (F ∂⃖/∂ξᵢ)(∂G/∂xᵢ) − (∂F/∂xᵢ)(∂⃗G/∂ξᵢ)`.
pub fn schouten_odd<S: Scalar>(
    x: &PolyMultivector<S>,
    y: &PolyMultivector<S>,
) -> PolyMultivector<S> {
    let n = x.nvars();
    (0..n).fold(SuperPoly::zero(n), |acc, i| {
        acc.add(&x.d_odd_right(i).mul(&y.d_even(i)))
            .sub(&x.d_even(i).mul(&y.d_odd_left(i)))
    })
}

/// `[P, P]` computed both ways; the pair is equal whenever the two
/// implementations agree.
pub fn schouten_square<S: Scalar>(
    p: &PolyMultivector<S>,
) -> (PolyMultivector<S>, PolyMultivector<S>) {
    (schouten(p, p), schouten_odd(p, p))
}

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{signed, Parity, Scalar};
use crate::superalg::exterior_sign;

/// A monomial `x^α θ_I`: exponents of the even coordinates and a bitmask of
/// odd generators, taken in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub exps: Vec<u32>,
    pub odd: u32,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn odd_degree(&self) -> u32 {
        self.odd.count_ones()
    }
}

/// Polynomial in `n` even coordinates `x₁..xₙ` and `n` odd generators
/// `θ₁..θₙ` over `S`, in canonical sparse form (no zero coefficients).
///
/// Differential forms take `θᵢ = dxᵢ`; multivector fields take `θᵢ = ∂ᵢ`.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperPoly<S> {
    nvars: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> SuperPoly<S> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= 16, "at most 16 coordinates are supported");
        SuperPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        Self::monomial(nvars, vec![0; nvars], 0, c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, S::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, odd: u32, c: S) -> Self {
        assert_eq!(exps.len(), nvars);
        assert!(odd >> nvars == 0, "odd generator out of range");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial { exps, odd }, c);
        }
        p
    }

    /// The coordinate `x_i`.
    pub fn x(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::monomial(nvars, exps, 0, S::one())
    }

    /// The odd generator `θ_i`.
    pub fn theta(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, vec![0; nvars], 1 << i, S::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32], odd: u32) -> S {
        self.terms
            .get(&Monomial {
                exps: exps.to_vec(),
                odd,
            })
            .cloned()
            .unwrap_or_else(S::zero)
    }

    fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SuperPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.odd & b.odd != 0 {
                    continue;
                }
                let exps = a.exps.iter().zip(&b.exps).map(|(p, q)| p + q).collect();
                let c = signed(
                    x.clone() * y.clone(),
                    exterior_sign(a.odd as usize, b.odd as usize),
                );
                out.add_term(
                    Monomial {
                        exps,
                        odd: a.odd | b.odd,
                    },
                    c,
                );
            }
        }
        out
    }

    /// `∂/∂x_i`.
    pub fn d_even(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[i] -= 1;
            out.add_term(
                Monomial { exps, odd: m.odd },
                c.clone() * S::from_int(e as i64),
            );
        }
        out
    }

    /// Left derivative `∂/∂θ_i`: `θ_i` is moved to the front first.
    pub fn d_odd_left(&self, i: usize) -> Self {
        self.d_odd(i, |odd| (odd & ((1 << i) - 1)).count_ones())
    }

    /// Right derivative: `θ_i` is moved to the back first.
    pub fn d_odd_right(&self, i: usize) -> Self {
        self.d_odd(i, |odd| (odd >> (i + 1)).count_ones())
    }

    fn d_odd(&self, i: usize, passes: impl Fn(u32) -> u32) -> Self {
        let bit = 1u32 << i;
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.odd & bit == 0 {
                continue;
            }
            out.add_term(
                Monomial {
                    exps: m.exps.clone(),
                    odd: m.odd ^ bit,
                },
                signed(c.clone(), passes(m.odd) % 2 == 1),
            );
        }
        out
    }

    /// Component with exactly `k` odd generators.
    pub fn odd_component(&self, k: u32) -> Self {
        SuperPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.odd_degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Number of odd generators when homogeneous; `None` for zero or mixed.
    pub fn odd_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::odd_degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn parity(&self) -> Option<Parity> {
        let mut it = self
            .terms
            .keys()
            .map(|m| Parity::from_count(m.odd_degree() as usize));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Largest polynomial degree in the even coordinates.
    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Substitutes the odd generators of every term by the products given, keeping
    /// coefficients: `θ_I ↦ Π_{i∈I} images[i]` in increasing order.
    pub fn map_odd(&self, images: &[SuperPoly<S>]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut t = Self::monomial(self.nvars, m.exps.clone(), 0, c.clone());
            for (i, img) in images.iter().enumerate() {
                if m.odd & (1 << i) != 0 {
                    t = t.mul(img);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Writes terms as `c*x1^2*o1^o3`, with `odd` naming the odd generators.
    pub fn render(&self, odd: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut factors = Vec::new();
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{e}", i + 1)),
                }
            }
            let odds: Vec<String> = (0..self.nvars)
                .filter(|i| m.odd & (1 << i) != 0)
                .map(|i| format!("{odd}{}", i + 1))
                .collect();
            if !odds.is_empty() {
                factors.push(odds.join("^"));
            }
            let body = factors.join("*");
            let term = if body.is_empty() {
                format!("{c}")
            } else if *c == S::one() {
                body
            } else if *c == -S::one() {
                format!("-{body}")
            } else {
                format!("{c}*{body}")
            };
            parts.push(term);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl<S: fmt::Debug> fmt::Debug for SuperPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(m, c)| ((&m.exps, m.odd), c)))
            .finish()
    }
}

impl<S: Scalar> fmt::Display for SuperPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("θ"))
    }
}

/// All monomials `x^α θ_I` in `nvars` coordinates with `|α| ≤ max_degree`.
pub fn monomials(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    fn exps(n: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            exps(n, budget - e, prefix, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    exps(nvars, max_degree, &mut Vec::new(), &mut all);
    all.into_iter()
        .flat_map(|e| {
            (0..1u32 << nvars).map(move |odd| Monomial {
                exps: e.clone(),
                odd,
            })
        })
        .collect()
}

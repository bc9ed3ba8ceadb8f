//! Scalar abstraction and super-vector-space parity bookkeeping.
//!
//! All algebra in this crate is generic over [`Scalar`]. The engine is meant to
//! be run over the exact rationals ([`crate::Rational`]); the bound is kept to
//! what the algorithms actually touch so that `Ratio<i64>` works as a fast
//! exact alternative and `f64` can be used for rough experiments.

use std::fmt::{Debug, Display};
use std::ops::{Add, Neg};

use num_traits::{FromPrimitive, Num};

/// Field elements the engine computes with. Division is assumed exact.
pub trait Scalar:
    Num
    + Neg<Output = Self>
    + FromPrimitive
    + Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer must be representable in the scalar type")
    }

    /// `n!` as a scalar.
    fn factorial(n: usize) -> Self {
        (1..=n as i64).fold(Self::one(), |acc, k| acc * Self::from_int(k))
    }
}

impl<T> Scalar for T where
    T: Num
        + Neg<Output = T>
        + FromPrimitive
        + Clone
        + PartialEq
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// `x` or `-x` depending on `negate`.
#[inline]
pub fn signed<S: Scalar>(x: S, negate: bool) -> S {
    if negate {
        -x
    } else {
        x
    }
}

/// Z/2 grading of a homogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Option<Parity> {
        match bit {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn from_count(n: usize) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// True when swapping elements of parities `self` and `other` costs a sign.
    #[inline]
    pub fn swap_sign(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl std::iter::Sum for Parity {
    fn sum<I: Iterator<Item = Parity>>(iter: I) -> Parity {
        iter.fold(Parity::Even, |a, b| a + b)
    }
}

impl Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// Koszul sign of the permutation that lists `order` (a permutation of
/// `0..parities.len()`) in its given sequence. Returns `true` for `-1`.
pub fn koszul_sign_of(parities: &[Parity], order: &[usize]) -> bool {
    let mut neg = false;
    for i in 0..order.len() {
        for j in (i + 1)..order.len() {
            if order[i] > order[j] && parities[order[i]].swap_sign(parities[order[j]]) {
                neg = !neg;
            }
        }
    }
    neg
}

/// Koszul sign of moving the elements at `front` (in increasing position) to
/// the front, keeping the remaining ones in order behind them.
pub fn unshuffle_sign(parities: &[Parity], front: &[usize], back: &[usize]) -> bool {
    let mut neg = false;
    for &f in front {
        for &b in back {
            if b < f && parities[f].swap_sign(parities[b]) {
                neg = !neg;
            }
        }
    }
    neg
}

// Dense vector helpers. Elements of finite-dimensional spaces are plain
// `Vec<S>` in coordinates of a fixed basis.

pub fn zeros<S: Scalar>(n: usize) -> Vec<S> {
    vec![S::zero(); n]
}

pub fn unit<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = zeros(n);
    v[i] = S::one();
    v
}

pub fn is_zero_vec<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// `acc += c * v`.
pub fn axpy<S: Scalar>(acc: &mut [S], c: &S, v: &[S]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = a.clone() + c.clone() * x.clone();
        }
    }
}

pub fn scale<S: Scalar>(c: &S, v: &[S]) -> Vec<S> {
    v.iter().map(|x| c.clone() * x.clone()).collect()
}

pub fn add_vec<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() + y.clone())
        .collect()
}

pub fn sub_vec<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() - y.clone())
        .collect()
}

pub fn neg_vec<S: Scalar>(a: &[S]) -> Vec<S> {
    a.iter().map(|x| -x.clone()).collect()
}

/// Indices of nonzero coordinates.
pub fn support<S: Scalar>(v: &[S]) -> impl Iterator<Item = usize> + '_ {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_arithmetic() {
        assert_eq!(Parity::Odd + Parity::Odd, Parity::Even);
        assert_eq!(Parity::Odd + Parity::Even, Parity::Odd);
        assert_eq!([Parity::Odd; 3].into_iter().sum::<Parity>(), Parity::Odd);
        assert!(Parity::Odd.swap_sign(Parity::Odd));
        assert!(!Parity::Odd.swap_sign(Parity::Even));
    }

    #[test]
    fn koszul_signs() {
        let p = [Parity::Odd, Parity::Odd, Parity::Even];
        assert!(koszul_sign_of(&p, &[1, 0, 2]));
        assert!(!koszul_sign_of(&p, &[2, 0, 1]));
        assert!(!koszul_sign_of(&p, &[0, 1, 2]));
        // moving position 1 in front of position 0
        assert!(unshuffle_sign(&p, &[1], &[0, 2]));
        assert!(!unshuffle_sign(&p, &[2], &[0, 1]));
    }

    #[test]
    fn factorial_values() {
        assert_eq!(i64::factorial(5), 120);
        assert_eq!(i64::factorial(0), 1);
    }
}

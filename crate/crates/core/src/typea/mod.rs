//! Root-system combinatorics of type A_n.
//!
//! Weights are integer tuples in the fundamental-weight basis. Nodes are
//! numbered `1..=n` in every public signature; vectors are indexed from zero.

mod character;
mod partition;
mod weyl;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Q;

pub use character::{char_simple, tensor_decompose, weyl_dim, Character};
pub use partition::Partition;
pub use weyl::WeylElt;

/// An integral weight `Σ c_i ω_i`, serialized as the array `[c_1, …, c_n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Weight {
        Weight(coords)
    }

    pub fn zero(n: usize) -> Weight {
        Weight(vec![0; n])
    }

    /// `ω_i` for `i` in `1..=n`.
    pub fn fundamental(n: usize, i: usize) -> Weight {
        let mut c = vec![0; n];
        c[i - 1] = 1;
        Weight(c)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// `λ(h_i)`, 1-based.
    pub fn at(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    /// Pairing with the coroot of a positive root; type A is simply laced so
    /// this is just the sum of the coordinates the root spans.
    pub fn pair(&self, root: PosRoot) -> i64 {
        self.0[root.lo - 1..root.hi].iter().sum()
    }

    pub fn to_q(&self) -> Vec<Q> {
        self.0.iter().map(|&c| Q::from_int(c)).collect()
    }

    pub fn check_rank(&self, n: usize) -> Result<()> {
        if self.rank() != n {
            return Err(Error::RankMismatch { expected: n, found: self.rank() });
        }
        Ok(())
    }

    pub(crate) fn require_dominant(&self) -> Result<()> {
        if !self.is_dominant() {
            return Err(Error::NotDominant(self.clone()));
        }
        Ok(())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        rhs.scale(self)
    }
}

/// A positive root `α_lo + α_{lo+1} + … + α_hi` (1-based, `lo <= hi`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PosRoot {
    pub lo: usize,
    pub hi: usize,
}

impl PosRoot {
    pub fn simple(i: usize) -> PosRoot {
        PosRoot { lo: i, hi: i }
    }

    pub fn height(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_simple(&self) -> bool {
        self.lo == self.hi
    }

    /// Whether the root's support contains node `i`, i.e. `ω_i(h_α) = 1`.
    pub fn contains(&self, i: usize) -> bool {
        self.lo <= i && i <= self.hi
    }

    pub fn weight(&self, n: usize) -> Weight {
        let mut c = vec![0; n];
        for k in self.lo..=self.hi {
            for (j, cj) in c.iter_mut().enumerate() {
                *cj += cartan_entry(j + 1, k);
            }
        }
        Weight(c)
    }
}

impl fmt::Display for PosRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_simple() {
            write!(f, "a{}", self.lo)
        } else {
            write!(f, "a{}..a{}", self.lo, self.hi)
        }
    }
}

fn cartan_entry(i: usize, j: usize) -> i64 {
    match i.abs_diff(j) {
        0 => 2,
        1 => -1,
        _ => 0,
    }
}

/// The root datum of `sl_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemA {
    n: usize,
    /// `cartan[i][j] = α_j(h_i)`.
    pub cartan: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    pub r_vee: i64,
    pub simple_roots: Vec<Weight>,
    pub theta: Weight,
    /// `inner[i][j] = (ω_i, ω_j)`, normalized so that `(θ, θ) = 2`.
    pub inner: Vec<Vec<Q>>,
}

impl RootSystemA {
    pub fn new(n: usize) -> Result<RootSystemA> {
        if n == 0 {
            return Err(Error::InvalidRank);
        }
        let cartan: Vec<Vec<i64>> = (1..=n)
            .map(|i| (1..=n).map(|j| cartan_entry(i, j)).collect())
            .collect();
        let simple_roots = (1..=n).map(|i| PosRoot::simple(i).weight(n)).collect();
        let theta = PosRoot { lo: 1, hi: n }.weight(n);
        let np1 = (n + 1) as i64;
        let inner = (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| {
                        let (lo, hi) = (i.min(j) as i64, i.max(j) as i64);
                        Q::new(lo * (np1 - hi), np1)
                    })
                    .collect()
            })
            .collect();
        Ok(RootSystemA { n, cartan, d: vec![1; n], r_vee: 1, simple_roots, theta, inner })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// `α_i`, 1-based.
    pub fn simple_root(&self, i: usize) -> &Weight {
        &self.simple_roots[i - 1]
    }

    pub fn positive_roots(&self) -> Vec<PosRoot> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * (n + 1) / 2);
        for lo in 1..=n {
            for hi in lo..=n {
                out.push(PosRoot { lo, hi });
            }
        }
        out
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.n])
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::NodeOutOfRange { node: i, rank: self.n });
        }
        Ok(())
    }

    /// `(λ, μ)` for rational coordinate vectors in the ω-basis.
    pub fn inner_q(&self, a: &[Q], b: &[Q]) -> Q {
        let mut acc = Q::ZERO;
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    acc += &(&(ai * bj) * &self.inner[i][j]);
                }
            }
        }
        acc
    }

    /// `λ ↦ λ(h_θ)`; for type A this is the coordinate sum.
    pub fn pair_theta_q(&self, a: &[Q]) -> Q {
        a.iter().cloned().sum()
    }
}

/// The invariant form `(λ, μ)` on integral weights.
pub fn inner_product(rs: &RootSystemA, lambda: &Weight, mu: &Weight) -> Result<Q> {
    lambda.check_rank(rs.rank())?;
    mu.check_rank(rs.rank())?;
    Ok(rs.inner_q(&lambda.to_q(), &mu.to_q()))
}

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Weight;
use crate::rational::Q;

/// An element of the Weyl group `S_{n+1}` of `sl_{n+1}`.
///
/// `perm[j]` is the image of the `j`-th standard basis vector `ε_j`
/// (0-based). Weights are converted to ε-coordinates, permuted and
/// converted back.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElt {
    perm: Vec<usize>,
}

impl WeylElt {
    pub fn identity(n: usize) -> WeylElt {
        WeylElt { perm: (0..=n).collect() }
    }

    /// Returns `None` unless `perm` is a permutation of `0..perm.len()`.
    pub fn from_perm(perm: Vec<usize>) -> Option<WeylElt> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return None;
            }
            seen[p] = true;
        }
        (perm.len() >= 2).then_some(WeylElt { perm })
    }

    /// The simple reflection `s_i`, `i` in `1..=n`.
    pub fn simple(n: usize, i: usize) -> WeylElt {
        let mut w = Self::identity(n);
        w.perm.swap(i - 1, i);
        w
    }

    pub fn longest(n: usize) -> WeylElt {
        WeylElt { perm: (0..=n).rev().collect() }
    }

    /// All `(n+1)!` elements, in lexicographic order of their permutations.
    pub fn all(n: usize) -> Vec<WeylElt> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..=n).collect();
        loop {
            out.push(WeylElt { perm: cur.clone() });
            // next lexicographic permutation
            let Some(k) = (0..cur.len() - 1).rev().find(|&k| cur[k] < cur[k + 1]) else {
                break;
            };
            let l = (k + 1..cur.len()).rev().find(|&l| cur[k] < cur[l]).unwrap();
            cur.swap(k, l);
            cur[k + 1..].reverse();
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.perm.len() - 1
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let p = &self.perm;
        let mut inv = 0;
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                if p[a] > p[b] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElt) -> WeylElt {
        WeylElt { perm: other.perm.iter().map(|&j| self.perm[j]).collect() }
    }

    pub fn inverse(&self) -> WeylElt {
        let mut inv = vec![0; self.perm.len()];
        for (j, &p) in self.perm.iter().enumerate() {
            inv[p] = j;
        }
        WeylElt { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| j == p)
    }

    fn permute_eps<T: Clone + Default>(&self, eps: &[T]) -> Vec<T> {
        let mut out = vec![T::default(); eps.len()];
        for (j, e) in eps.iter().enumerate() {
            out[self.perm[j]] = e.clone();
        }
        out
    }

    pub fn act(&self, w: &Weight) -> Weight {
        let c = w.coords();
        let n = c.len();
        debug_assert_eq!(n, self.rank());
        let mut eps = vec![0i64; n + 1];
        for j in (0..n).rev() {
            eps[j] = eps[j + 1] + c[j];
        }
        let eps = self.permute_eps(&eps);
        Weight::new((0..n).map(|j| eps[j] - eps[j + 1]).collect())
    }

    pub fn act_q(&self, c: &[Q]) -> Vec<Q> {
        let n = c.len();
        debug_assert_eq!(n, self.rank());
        let mut eps = vec![Q::ZERO; n + 1];
        for j in (0..n).rev() {
            eps[j] = &eps[j + 1] + &c[j];
        }
        let eps = self.permute_eps(&eps);
        (0..n).map(|j| &eps[j] - &eps[j + 1]).collect()
    }

    /// A reduced word (1-based simple reflections), leftmost factor first.
    pub fn reduced_word(&self) -> Vec<usize> {
        // bubble sort the one-line notation: w = s_{i1} … s_{ik}
        let mut p = self.perm.clone();
        let mut word = Vec::new();
        while let Some(j) = (0..p.len() - 1).find(|&j| p[j] > p[j + 1]) {
            p.swap(j, j + 1);
            word.push(j + 1);
        }
        word.reverse();
        word
    }
}

impl fmt::Debug for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{:?}", self.perm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typea::{inner_product, RootSystemA};

    #[test]
    fn longest_maps_fundamentals_to_negated_duals() {
        for n in 1..=4 {
            let w0 = WeylElt::longest(n);
            for i in 1..=n {
                let img = w0.act(&Weight::fundamental(n, i));
                assert_eq!(img, -&Weight::fundamental(n, n + 1 - i));
            }
            assert_eq!(w0.length(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn simple_reflection_formula() {
        let n = 3;
        let rs = RootSystemA::new(n).unwrap();
        let lam = Weight::new(vec![2, -1, 3]);
        for i in 1..=n {
            let want = &lam - &rs.simple_root(i).scale(lam.at(i));
            assert_eq!(WeylElt::simple(n, i).act(&lam), want);
        }
    }

    #[test]
    fn action_preserves_inner_product_and_composes() {
        let n = 3;
        let rs = RootSystemA::new(n).unwrap();
        let a = Weight::new(vec![1, 2, 0]);
        let b = Weight::new(vec![0, -1, 4]);
        let all = WeylElt::all(n);
        assert_eq!(all.len(), 24);
        for w in &all {
            assert_eq!(
                inner_product(&rs, &w.act(&a), &w.act(&b)).unwrap(),
                inner_product(&rs, &a, &b).unwrap()
            );
            for v in all.iter().step_by(5) {
                assert_eq!(w.compose(v).act(&a), w.act(&v.act(&a)));
            }
            assert!(w.compose(&w.inverse()).is_identity());
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            let rebuilt = word
                .iter()
                .fold(WeylElt::identity(n), |acc, &i| acc.compose(&WeylElt::simple(n, i)));
            assert_eq!(&rebuilt, w);
        }
    }
}

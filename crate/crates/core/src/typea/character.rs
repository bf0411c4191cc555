use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{RootSystemA, Weight, WeylElt};
use crate::error::Result;
use crate::rational::Q;

/// A finitely supported multiplicity function on weights.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Character {
    mults: BTreeMap<Weight, u64>,
}

#[derive(Serialize, Deserialize)]
struct CharEntry {
    weight: Weight,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct CharJson {
    rank: usize,
    entries: Vec<CharEntry>,
}

impl Character {
    pub fn new() -> Character {
        Character::default()
    }

    pub fn add(&mut self, w: Weight, k: u64) {
        if k > 0 {
            *self.mults.entry(w).or_insert(0) += k;
        }
    }

    /// Removes `k` copies of `w`; panics if fewer are present.
    fn remove(&mut self, w: &Weight, k: u64) {
        let m = self.mults.get_mut(w).expect("weight absent");
        assert!(*m >= k, "multiplicity underflow at {w}");
        *m -= k;
        if *m == 0 {
            self.mults.remove(w);
        }
    }

    pub fn mult(&self, w: &Weight) -> u64 {
        self.mults.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.mults.iter().map(|(w, &m)| (w, m))
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    /// Total multiplicity, i.e. the dimension of the module.
    pub fn dim(&self) -> u64 {
        self.mults.values().sum()
    }

    /// Character of the tensor product.
    pub fn product(&self, other: &Character) -> Character {
        let mut out = Character::new();
        for (a, ma) in &self.mults {
            for (b, mb) in &other.mults {
                out.add(a + b, ma * mb);
            }
        }
        out
    }

    pub fn is_w_invariant(&self) -> bool {
        let Some(n) = self.mults.keys().next().map(Weight::rank) else {
            return true;
        };
        (1..=n).all(|i| {
            let s = WeylElt::simple(n, i);
            self.mults.iter().all(|(w, &m)| self.mult(&s.act(w)) == m)
        })
    }

    pub fn to_json(&self, rank: usize) -> serde_json::Value {
        let entries = self
            .mults
            .iter()
            .map(|(w, &m)| CharEntry { weight: w.clone(), mult: m })
            .collect();
        serde_json::to_value(CharJson { rank, entries }).expect("serializable")
    }
}

impl FromIterator<(Weight, u64)> for Character {
    fn from_iter<T: IntoIterator<Item = (Weight, u64)>>(iter: T) -> Self {
        let mut c = Character::new();
        for (w, m) in iter {
            c.add(w, m);
        }
        c
    }
}

/// Dimension of `V(λ)` by the Weyl dimension formula.
pub fn weyl_dim(rs: &RootSystemA, lambda: &Weight) -> Result<u64> {
    lambda.check_rank(rs.rank())?;
    lambda.require_dominant()?;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for a in rs.positive_roots() {
        num *= (lambda.pair(a) + a.height() as i64) as u128;
        den *= a.height() as u128;
    }
    debug_assert_eq!(num % den, 0);
    Ok((num / den) as u64)
}

/// Weight multiplicities of `V(λ)` by Freudenthal's recursion.
///
/// Weights are generated layer by layer below `λ`; the multiplicity of `μ` is
///
/// ```text
/// m(μ) = 2 Σ_{α>0} Σ_{k≥1} m(μ+kα)(μ+kα, α) / ((λ+ρ,λ+ρ) − (μ+ρ,μ+ρ))
/// ```
pub fn char_simple(rs: &RootSystemA, lambda: &Weight) -> Result<Character> {
    lambda.check_rank(rs.rank())?;
    lambda.require_dominant()?;
    let n = rs.rank();
    let roots: Vec<Weight> = rs.positive_roots().iter().map(|a| a.weight(n)).collect();
    let rho = rs.rho();
    let norm = |w: &Weight| rs.inner_q(&w.to_q(), &w.to_q());
    let top = norm(&(lambda + &rho));

    let mut mults: BTreeMap<Weight, u64> = BTreeMap::new();
    mults.insert(lambda.clone(), 1);
    let mut layer: BTreeSet<Weight> = BTreeSet::from([lambda.clone()]);
    while !layer.is_empty() {
        let candidates: BTreeSet<Weight> = layer
            .iter()
            .flat_map(|w| rs.simple_roots.iter().map(move |a| w - a))
            .collect();
        let mut next = BTreeSet::new();
        for mu in candidates {
            let denom = &top - &norm(&(&mu + &rho));
            if denom.is_zero() || denom.is_negative() {
                continue;
            }
            let mut acc = Q::ZERO;
            for a in &roots {
                let aq = a.to_q();
                let mut nu = &mu + a;
                while let Some(&m) = mults.get(&nu) {
                    let ip = rs.inner_q(&nu.to_q(), &aq);
                    acc += &(&ip * &Q::from_int(m as i64));
                    nu = &nu + a;
                }
            }
            let m = &(&acc * &Q::from_int(2)) / &denom;
            let m = m.to_i64().expect("Freudenthal multiplicity is an integer");
            if m > 0 {
                mults.insert(mu.clone(), m as u64);
                next.insert(mu);
            }
        }
        layer = next;
    }
    Ok(Character { mults })
}

/// Decomposes `V(λ) ⊗ V(μ)` into simple modules by peeling off the character
/// of the highest remaining dominant weight.
pub fn tensor_decompose(
    rs: &RootSystemA,
    lambda: &Weight,
    mu: &Weight,
) -> Result<BTreeMap<Weight, u64>> {
    let mut rest = char_simple(rs, lambda)?.product(&char_simple(rs, mu)?);
    let rho = rs.rho().to_q();
    let mut out = BTreeMap::new();
    while !rest.is_empty() {
        let (top, m) = rest
            .iter()
            .filter(|(w, _)| w.is_dominant())
            .max_by_key(|(w, _)| (rs.inner_q(&w.to_q(), &rho), (*w).clone()))
            .map(|(w, m)| (w.clone(), m))
            .expect("a nonzero W-invariant character has a dominant weight");
        for (w, k) in char_simple(rs, &top)?.iter() {
            rest.remove(w, k * m);
        }
        out.insert(top, m);
    }
    Ok(out)
}

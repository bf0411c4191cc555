use serde::{Deserialize, Serialize};

use super::{cyclic_echelon, ops_for, tensor_gens, Gen, Gens, GModule, Rep, Shape};
use crate::error::{Error, Result};
use crate::linalg::{normalize, Echelon, SVec};
use crate::rational::Q;
use crate::typea::{Character, Weight};

/// A `g[t]`-module on which `a ⊗ t^k` acts as `Σ_z z^k L_z(a)`, one
/// component `L_z` per distinct evaluation point `z`.
///
/// Tables for `t^k` are stored for `k ≤ K`, where `K = max(1, p−1)` for
/// `p` points; higher powers are reduced with the Vandermonde relation
/// `∏_z (x − z) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtModule {
    n: usize,
    weights: Vec<Weight>,
    points: Vec<Q>,
    comps: Vec<Gens>,
    tables: Vec<Gens>,
    generator: Option<usize>,
}

/// `ev_z M`.
pub fn evaluation_module(m: &GModule, z: Q) -> GtModule {
    GtModule::from_components(
        m.rank(),
        m.weights().to_vec(),
        vec![z],
        vec![m.gens().clone()],
        m.generator(),
        None,
    )
}

impl GtModule {
    fn from_components(
        n: usize,
        weights: Vec<Weight>,
        points: Vec<Q>,
        comps: Vec<Gens>,
        generator: Option<usize>,
        truncation: Option<u32>,
    ) -> GtModule {
        let trunc = truncation.unwrap_or((points.len() as u32).saturating_sub(1).max(1));
        let dim = weights.len();
        let tables = (0..=trunc)
            .map(|k| {
                let terms: Vec<(Q, &Gens)> =
                    points.iter().map(|z| z.pow(k)).zip(comps.iter()).collect();
                Gens::lin_comb(n, dim, &terms)
            })
            .collect();
        GtModule { n, weights, points, comps, tables, generator }
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn points(&self) -> &[Q] {
        &self.points
    }

    pub fn generator(&self) -> Option<usize> {
        self.generator
    }

    /// The largest stored power `K`.
    pub fn truncation(&self) -> u32 {
        self.tables.len() as u32 - 1
    }

    /// The same module with tables stored up to `t^k`.
    pub fn with_truncation(&self, k: u32) -> GtModule {
        GtModule::from_components(
            self.n,
            self.weights.clone(),
            self.points.clone(),
            self.comps.clone(),
            self.generator,
            Some(k.max(self.points.len() as u32 - 1)),
        )
    }

    pub fn character(&self) -> Character {
        self.weights.iter().map(|w| (w.clone(), 1)).collect()
    }

    /// Coefficients `c_0, …, c_{p−1}` of `x^k mod ∏_z (x − z)`.
    pub fn vandermonde(&self, k: u32) -> Vec<Q> {
        let p = self.points.len();
        // monic modulus, low degree first
        let mut modulus = vec![Q::ONE];
        for z in &self.points {
            let mut next = vec![Q::ZERO; modulus.len() + 1];
            for (d, c) in modulus.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= &(c * z);
            }
            modulus = next;
        }
        let mut rem = vec![Q::ZERO; p];
        rem[0] = Q::ONE;
        for _ in 0..k {
            let top = rem[p - 1].clone();
            for d in (1..p).rev() {
                rem[d] = rem[d - 1].clone();
            }
            rem[0] = Q::ZERO;
            for d in 0..p {
                rem[d] -= &(&top * &modulus[d]);
            }
        }
        rem
    }

    /// `Σ_z z^k L_z(g) v`, bypassing the stored tables.
    pub fn act_direct(&self, g: Gen, k: u32, v: &SVec) -> SVec {
        let mut acc = Vec::new();
        for (z, comp) in self.points.iter().zip(&self.comps) {
            let s = z.pow(k);
            if !s.is_zero() {
                acc.extend(comp.get(g).apply(v).into_iter().map(|(i, c)| (i, &c * &s)));
            }
        }
        normalize(acc)
    }

    /// Tensor product; components at equal points are summed.
    pub fn tensor(factors: &[&GtModule]) -> Result<GtModule> {
        let Some(first) = factors.first() else {
            return Err(Error::InvalidRank);
        };
        let n = first.n;
        for f in factors {
            if f.n != n {
                return Err(Error::RankMismatch { expected: n, found: f.n });
            }
        }
        let shape = Shape::new(factors.iter().map(|f| f.dim()).collect());
        let labels: Vec<&[Weight]> = factors.iter().map(|f| f.weights.as_slice()).collect();
        let weights = shape.combine(&labels, Weight::zero(n), |a, b| a + b);
        let mut points: Vec<Q> = Vec::new();
        for f in factors {
            for z in &f.points {
                if !points.contains(z) {
                    points.push(z.clone());
                }
            }
        }
        let comps = points
            .iter()
            .map(|z| {
                let slots: Vec<Option<&Gens>> = factors
                    .iter()
                    .map(|f| f.points.iter().position(|w| w == z).map(|j| &f.comps[j]))
                    .collect();
                tensor_gens(n, &shape, &slots)
            })
            .collect();
        let generator = factors
            .iter()
            .map(|f| f.generator)
            .collect::<Option<Vec<_>>>()
            .map(|d| shape.index(&d));
        let natural = (points.len() as u32).saturating_sub(1).max(1);
        let trunc = factors.iter().map(|f| f.truncation()).fold(natural, u32::max);
        Ok(GtModule::from_components(n, weights, points, comps, generator, Some(trunc)))
    }

    /// The `g[t]`-submodule generated by `v`; the image of `v` is basis
    /// vector 0.
    pub fn cyclic_submodule(&self, v: &SVec) -> Result<GtModule> {
        let ops = ops_for(self.n, 0..=self.truncation());
        let ech = cyclic_echelon(self, v, &ops)?;
        self.restrict(&ech)
    }

    fn restrict(&self, ech: &Echelon) -> Result<GtModule> {
        let weights =
            (0..ech.len()).map(|id| self.weights[ech.vector(id)[0].0 as usize].clone()).collect();
        let comps = self.comps.iter().map(|c| c.restrict(ech)).collect::<Result<Vec<_>>>()?;
        Ok(GtModule::from_components(
            self.n,
            weights,
            self.points.clone(),
            comps,
            Some(0),
            Some(self.truncation()),
        ))
    }
}

impl Rep for GtModule {
    fn rank(&self) -> usize {
        self.n
    }

    fn dim(&self) -> usize {
        self.weights.len()
    }

    fn weight(&self, idx: usize) -> &Weight {
        &self.weights[idx]
    }

    fn act(&self, g: Gen, k: u32, v: &SVec) -> SVec {
        if let Some(t) = self.tables.get(k as usize) {
            return t.get(g).apply(v);
        }
        let mut acc = Vec::new();
        for (r, c) in self.vandermonde(k).iter().enumerate() {
            if !c.is_zero() {
                acc.extend(self.tables[r].get(g).apply(v).into_iter().map(|(i, d)| (i, &d * c)));
            }
        }
        normalize(acc)
    }

    fn stored_power(&self) -> u32 {
        self.truncation()
    }
}

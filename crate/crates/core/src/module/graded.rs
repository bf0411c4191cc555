use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{cyclic_echelon, ops_for, tensor_gens, Gen, Gens, GModule, Rep, Shape};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SMat, SVec};
use crate::typea::{Character, Weight};

/// A graded `g[t]`-module with a basis homogeneous in weight and degree.
///
/// `a ⊗ t^k` raises degree by `k`; tables are stored for
/// `k ≤ top_degree`, and larger powers act as zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedGtModule {
    n: usize,
    weights: Vec<Weight>,
    degrees: Vec<u32>,
    tables: Vec<Gens>,
    generator: Option<usize>,
}

impl GradedGtModule {
    pub(crate) fn from_parts(
        n: usize,
        weights: Vec<Weight>,
        degrees: Vec<u32>,
        tables: Vec<Gens>,
        generator: Option<usize>,
    ) -> GradedGtModule {
        debug_assert_eq!(tables.len() as u32, degrees.iter().max().copied().unwrap_or(0) + 1);
        GradedGtModule { n, weights, degrees, tables, generator }
    }

    /// `ev_0 M`, concentrated in degree 0.
    pub fn from_gmodule(m: &GModule) -> GradedGtModule {
        GradedGtModule {
            n: m.rank(),
            weights: m.weights().to_vec(),
            degrees: vec![0; m.dim()],
            tables: vec![m.gens().clone()],
            generator: m.generator(),
        }
    }

    pub fn trivial(n: usize) -> GradedGtModule {
        GradedGtModule::from_gmodule(&GModule::trivial(n))
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn top_degree(&self) -> u32 {
        self.tables.len() as u32 - 1
    }

    /// Index of the degree-0 cyclic generator, if known.
    pub fn generator(&self) -> Option<usize> {
        self.generator
    }

    /// Mutable access to the table of `g ⊗ t^k`, for building negative
    /// controls.
    pub fn table_mut(&mut self, g: Gen, k: u32) -> &mut SMat {
        self.tables[k as usize].get_mut(g)
    }

    pub fn graded_character(&self) -> GradedCharacter {
        let mut ch = GradedCharacter::new(self.n);
        for (w, &d) in self.weights.iter().zip(&self.degrees) {
            ch.add(w.clone(), d, 1);
        }
        ch
    }

    /// Tensor product; degrees add.
    pub fn tensor(factors: &[&GradedGtModule]) -> Result<GradedGtModule> {
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
        let wl: Vec<&[Weight]> = factors.iter().map(|f| f.weights.as_slice()).collect();
        let weights = shape.combine(&wl, Weight::zero(n), |a, b| a + b);
        let dl: Vec<&[u32]> = factors.iter().map(|f| f.degrees.as_slice()).collect();
        let degrees = shape.combine(&dl, 0, |a, b| a + b);
        let top: u32 = factors.iter().map(|f| f.top_degree()).sum();
        let tables = (0..=top)
            .map(|k| {
                let slots: Vec<Option<&Gens>> =
                    factors.iter().map(|f| f.tables.get(k as usize)).collect();
                tensor_gens(n, &shape, &slots)
            })
            .collect();
        let generator = factors
            .iter()
            .map(|f| f.generator)
            .collect::<Option<Vec<_>>>()
            .map(|d| shape.index(&d));
        Ok(GradedGtModule { n, weights, degrees, tables, generator })
    }

    /// The graded submodule generated by the bihomogeneous vector `v`, using
    /// `g ⊗ 1` and `g ⊗ t`, which generate `g[t]`.
    pub fn cyclic_submodule(&self, v: &SVec) -> Result<GradedGtModule> {
        self.cyclic_submodule_with(v, 1)
    }

    /// As [`cyclic_submodule`](Self::cyclic_submodule), closing under
    /// `g ⊗ t^k` for all `k ≤ max_power`.
    pub fn cyclic_submodule_with(&self, v: &SVec, max_power: u32) -> Result<GradedGtModule> {
        let ops = ops_for(self.n, 0..=max_power.min(self.top_degree()));
        let ech = cyclic_echelon(self, v, &ops)?;
        self.restrict(&ech)
    }

    fn restrict(&self, ech: &Echelon) -> Result<GradedGtModule> {
        let heads: Vec<usize> = (0..ech.len()).map(|id| ech.vector(id)[0].0 as usize).collect();
        let weights = heads.iter().map(|&i| self.weights[i].clone()).collect();
        let degrees: Vec<u32> = heads.iter().map(|&i| self.degrees[i]).collect();
        let top = degrees.iter().max().copied().unwrap_or(0);
        let tables = (0..=top)
            .map(|k| self.tables[k as usize].restrict(ech))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedGtModule { n: self.n, weights, degrees, tables, generator: Some(0) })
    }
}

impl Rep for GradedGtModule {
    fn rank(&self) -> usize {
        self.n
    }

    fn dim(&self) -> usize {
        self.weights.len()
    }

    fn weight(&self, idx: usize) -> &Weight {
        &self.weights[idx]
    }

    fn degree(&self, idx: usize) -> u32 {
        self.degrees[idx]
    }

    fn is_graded(&self) -> bool {
        true
    }

    fn act(&self, g: Gen, k: u32, v: &SVec) -> SVec {
        match self.tables.get(k as usize) {
            Some(t) => t.get(g).apply(v),
            None => Vec::new(),
        }
    }

    fn stored_power(&self) -> u32 {
        self.top_degree()
    }
}

/// Multiplicities of `(weight, degree)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CharJson", try_from = "CharJson")]
pub struct GradedCharacter {
    rank: usize,
    mults: BTreeMap<(u32, Weight), u64>,
}

#[derive(Serialize, Deserialize)]
struct CharJson {
    rank: usize,
    entries: Vec<CharEntry>,
}

#[derive(Serialize, Deserialize)]
struct CharEntry {
    weight: Weight,
    degree: u32,
    mult: u64,
}

impl From<GradedCharacter> for CharJson {
    fn from(c: GradedCharacter) -> CharJson {
        CharJson {
            rank: c.rank,
            entries: c
                .mults
                .into_iter()
                .map(|((degree, weight), mult)| CharEntry { weight, degree, mult })
                .collect(),
        }
    }
}

impl TryFrom<CharJson> for GradedCharacter {
    type Error = Error;
    fn try_from(j: CharJson) -> Result<GradedCharacter> {
        let mut c = GradedCharacter::new(j.rank);
        for e in j.entries {
            e.weight.check_rank(j.rank)?;
            c.add(e.weight, e.degree, e.mult);
        }
        Ok(c)
    }
}

impl GradedCharacter {
    pub fn new(rank: usize) -> GradedCharacter {
        GradedCharacter { rank, mults: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add(&mut self, w: Weight, degree: u32, k: u64) {
        if k > 0 {
            *self.mults.entry((degree, w)).or_insert(0) += k;
        }
    }

    pub fn mult(&self, w: &Weight, degree: u32) -> u64 {
        self.mults.get(&(degree, w.clone())).copied().unwrap_or(0)
    }

    /// `(weight, degree, multiplicity)`, sorted by degree then weight.
    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u32, u64)> {
        self.mults.iter().map(|((d, w), &k)| (w, *d, k))
    }

    pub fn dim(&self) -> u64 {
        self.mults.values().sum()
    }

    pub fn top_degree(&self) -> u32 {
        self.mults.keys().map(|(d, _)| *d).max().unwrap_or(0)
    }

    /// Total dimension in each degree.
    pub fn graded_dims(&self) -> BTreeMap<u32, u64> {
        let mut out = BTreeMap::new();
        for ((d, _), k) in &self.mults {
            *out.entry(*d).or_insert(0) += k;
        }
        out
    }

    /// The ungraded character.
    pub fn collapse(&self) -> Character {
        let mut ch = Character::new();
        for ((_, w), &k) in &self.mults {
            ch.add(w.clone(), k);
        }
        ch
    }

    pub fn slice(&self, degree: u32) -> Character {
        let mut ch = Character::new();
        for ((d, w), &k) in &self.mults {
            if *d == degree {
                ch.add(w.clone(), k);
            }
        }
        ch
    }
}

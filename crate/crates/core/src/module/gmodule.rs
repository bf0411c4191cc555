use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{close, cyclic_echelon, tensor_gens, Gen, Gens, Rep, Shape};
use crate::error::{Error, Result};
use crate::linalg::{unit, Echelon, SMat, SVec};
use crate::rational::Q;
use crate::typea::{Character, RootSystemA, Weight};

/// A finite-dimensional `sl_{n+1}`-module with a weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GModule {
    n: usize,
    weights: Vec<Weight>,
    gens: Gens,
    generator: Option<usize>,
}

impl GModule {
    /// The one-dimensional trivial module.
    pub fn trivial(n: usize) -> GModule {
        GModule { n, weights: vec![Weight::zero(n)], gens: Gens::zero(n, 1), generator: Some(0) }
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn gens(&self) -> &Gens {
        &self.gens
    }

    /// Mutable access to one table, for building negative controls.
    pub fn table_mut(&mut self, g: Gen) -> &mut SMat {
        self.gens.get_mut(g)
    }

    /// Index of the distinguished highest-weight basis vector, if any.
    pub fn generator(&self) -> Option<usize> {
        self.generator
    }

    pub fn character(&self) -> Character {
        let mut ch = Character::new();
        for w in &self.weights {
            ch.add(w.clone(), 1);
        }
        ch
    }

    /// Tensor product with the lexicographic product basis.
    pub fn tensor(factors: &[&GModule]) -> Result<GModule> {
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
        let gens = tensor_gens(n, &shape, &factors.iter().map(|f| Some(&f.gens)).collect::<Vec<_>>());
        let generator = factors
            .iter()
            .map(|f| f.generator)
            .collect::<Option<Vec<_>>>()
            .map(|d| shape.index(&d));
        Ok(GModule { n, weights, gens, generator })
    }

    /// The `U(g)`-submodule generated by `v`; the image of `v` is basis
    /// vector 0.
    pub fn cyclic_submodule(&self, v: &SVec) -> Result<GModule> {
        let ops: Vec<(Gen, u32)> = Gen::all(self.n).into_iter().map(|g| (g, 0)).collect();
        let ech = cyclic_echelon(self, v, &ops)?;
        self.restrict(&ech, Some(0))
    }

    fn restrict(&self, ech: &Echelon, generator: Option<usize>) -> Result<GModule> {
        let weights = (0..ech.len()).map(|id| self.weights[ech.vector(id)[0].0 as usize].clone()).collect();
        Ok(GModule { n: self.n, weights, gens: self.gens.restrict(ech)?, generator })
    }
}

impl Rep for GModule {
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
        if k == 0 {
            self.gens.get(g).apply(v)
        } else {
            Vec::new()
        }
    }

    fn stored_power(&self) -> u32 {
        0
    }
}

fn subsets(n_plus_1: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for a in start..=m - left {
            cur.push(a);
            rec(a + 1, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n_plus_1, i, &mut Vec::new(), &mut out);
    out
}

/// `V(ω_i) = Λ^i C^{n+1}` with basis the `i`-subsets of `{0, …, n}` in
/// lexicographic order; the top vector `{0, …, i−1}` comes first.
///
/// `e_j` replaces `j` by `j−1` and `f_j` replaces `j−1` by `j`; all
/// nonzero matrix entries are 1.
pub fn fundamental_gmodule(n: usize, i: usize) -> Result<GModule> {
    if n == 0 {
        return Err(Error::InvalidRank);
    }
    if i == 0 || i > n {
        return Err(Error::NodeOutOfRange { node: i, rank: n });
    }
    let basis = subsets(n + 1, i);
    let pos: HashMap<&Vec<usize>, usize> = basis.iter().enumerate().map(|(k, s)| (s, k)).collect();
    let weights: Vec<Weight> = basis
        .iter()
        .map(|s| {
            Weight::new(
                (1..=n)
                    .map(|j| s.contains(&(j - 1)) as i64 - s.contains(&j) as i64)
                    .collect(),
            )
        })
        .collect();
    let dim = basis.len();
    let mut gens = Gens::zero(n, dim);
    for j in 1..=n {
        let (mut e, mut f) = (vec![Vec::new(); dim], vec![Vec::new(); dim]);
        for (col, s) in basis.iter().enumerate() {
            let swapped = |from: usize, to: usize| -> Option<usize> {
                if s.contains(&from) && !s.contains(&to) {
                    let mut t: Vec<usize> = s.iter().map(|&a| if a == from { to } else { a }).collect();
                    t.sort_unstable();
                    Some(pos[&t])
                } else {
                    None
                }
            };
            if let Some(r) = swapped(j, j - 1) {
                e[col] = unit(r);
            }
            if let Some(r) = swapped(j - 1, j) {
                f[col] = unit(r);
            }
        }
        *gens.get_mut(Gen::e(j)) = SMat::from_cols(e);
        *gens.get_mut(Gen::f(j)) = SMat::from_cols(f);
        *gens.get_mut(Gen::h(j)) = SMat::from_cols(
            weights
                .iter()
                .enumerate()
                .map(|(c, w)| match w.at(j) {
                    0 => Vec::new(),
                    x => vec![(c as u32, Q::from_int(x))],
                })
                .collect(),
        );
    }
    Ok(GModule { n, weights, gens, generator: Some(0) })
}

/// `V(λ)` as the submodule of `⊗_i V(ω_i)^{⊗λ(h_i)}` generated by the tensor
/// of top vectors.
pub fn simple_gmodule(n: usize, lambda: &Weight) -> Result<GModule> {
    let rs = RootSystemA::new(n)?;
    lambda.check_rank(rs.rank())?;
    lambda.require_dominant()?;
    let mut fundamentals = Vec::new();
    for i in 1..=n {
        let v = fundamental_gmodule(n, i)?;
        for _ in 0..lambda.at(i) {
            fundamentals.push(v.clone());
        }
    }
    if fundamentals.is_empty() {
        return Ok(GModule::trivial(n));
    }
    let refs: Vec<&GModule> = fundamentals.iter().collect();
    let ambient = GModule::tensor(&refs)?;
    let top = unit(ambient.generator.expect("fundamentals have generators"));
    // a highest-weight vector generates over the lowering operators alone
    let lowering: Vec<(Gen, u32)> = (1..=n).map(|i| (Gen::f(i), 0)).collect();
    let mut ech = Echelon::new(ambient.key_index());
    close(&ambient, &mut ech, [top], &lowering)?;
    ambient.restrict(&ech, Some(0))
}

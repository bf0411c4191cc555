//! Explicit modules for `sl_{n+1}` and its current algebra `sl_{n+1}[t]`.
//!
//! Every module has a basis of weight vectors (and, for graded modules, of
//! fixed degree) and exact action tables for the Chevalley generators
//! `e_i = x_i^+`, `f_i = x_i^−`, `h_i`, possibly tensored with `t^k`.

mod axioms;
mod fusion;
mod gmodule;
mod graded;
mod gt;
mod word;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

pub use axioms::{check_axioms, AxiomReport};
pub use fusion::{
    default_points, fusion_character, fusion_filtration, fusion_of, fusion_product,
    FusionOptions,
};
pub use gmodule::{fundamental_gmodule, simple_gmodule, GModule};
pub use graded::{GradedCharacter, GradedGtModule};
pub use gt::{evaluation_module, GtModule};
pub use word::{apply_elt, apply_word, LieElt, Letter};

use crate::error::{Error, Result};
use crate::linalg::{normalize, Echelon, KeyIndex, SMat, SVec};
use crate::rational::Q;
use crate::typea::{RootSystemA, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenKind {
    E,
    F,
    H,
}

/// A Chevalley generator `e_i`, `f_i` or `h_i` (node `i` is 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gen {
    pub kind: GenKind,
    pub node: usize,
}

impl Gen {
    pub fn e(node: usize) -> Gen {
        Gen { kind: GenKind::E, node }
    }

    pub fn f(node: usize) -> Gen {
        Gen { kind: GenKind::F, node }
    }

    pub fn h(node: usize) -> Gen {
        Gen { kind: GenKind::H, node }
    }

    /// `e_1..e_n, f_1..f_n, h_1..h_n`.
    pub fn all(n: usize) -> Vec<Gen> {
        [GenKind::E, GenKind::F, GenKind::H]
            .into_iter()
            .flat_map(|kind| (1..=n).map(move |node| Gen { kind, node }))
            .collect()
    }

    /// `e_i` and `f_i` only.
    pub fn raising_lowering(n: usize) -> Vec<Gen> {
        (1..=n).flat_map(|i| [Gen::e(i), Gen::f(i)]).collect()
    }

    /// The weight by which the generator shifts.
    pub fn shift(&self, rs: &RootSystemA) -> Weight {
        match self.kind {
            GenKind::E => rs.simple_root(self.node).clone(),
            GenKind::F => -rs.simple_root(self.node),
            GenKind::H => Weight::zero(rs.rank()),
        }
    }
}

/// One action table per Chevalley generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gens {
    e: Vec<SMat>,
    f: Vec<SMat>,
    h: Vec<SMat>,
}

impl Gens {
    pub fn zero(n: usize, dim: usize) -> Gens {
        Gens { e: vec![SMat::zero(dim); n], f: vec![SMat::zero(dim); n], h: vec![SMat::zero(dim); n] }
    }

    pub fn rank(&self) -> usize {
        self.e.len()
    }

    pub fn get(&self, g: Gen) -> &SMat {
        match g.kind {
            GenKind::E => &self.e[g.node - 1],
            GenKind::F => &self.f[g.node - 1],
            GenKind::H => &self.h[g.node - 1],
        }
    }

    pub fn get_mut(&mut self, g: Gen) -> &mut SMat {
        match g.kind {
            GenKind::E => &mut self.e[g.node - 1],
            GenKind::F => &mut self.f[g.node - 1],
            GenKind::H => &mut self.h[g.node - 1],
        }
    }

    fn build(n: usize, mut f: impl FnMut(Gen) -> SMat) -> Gens {
        let mut out = Gens { e: Vec::new(), f: Vec::new(), h: Vec::new() };
        for g in Gen::all(n) {
            let m = f(g);
            match g.kind {
                GenKind::E => out.e.push(m),
                GenKind::F => out.f.push(m),
                GenKind::H => out.h.push(m),
            }
        }
        out
    }

    fn lin_comb(n: usize, dim: usize, terms: &[(Q, &Gens)]) -> Gens {
        Gens::build(n, |g| SMat::lin_comb(dim, terms.iter().map(|(k, t)| (k.clone(), t.get(g)))))
    }

    /// Action tables on the span of the rows of `ech`, in row coordinates.
    fn restrict(&self, ech: &Echelon) -> Result<Gens> {
        let n = self.rank();
        let rows: Vec<SVec> = (0..ech.len()).map(|id| ech.vector(id)).collect();
        let mut out = Gens::zero(n, rows.len());
        for g in Gen::all(n) {
            let table = self.get(g);
            let cols = rows
                .iter()
                .map(|r| restrict_col(ech, &table.apply(r)))
                .collect::<Result<Vec<_>>>()?;
            *out.get_mut(g) = SMat::from_cols(cols);
        }
        Ok(out)
    }
}

fn restrict_col(ech: &Echelon, image: &SVec) -> Result<SVec> {
    let coords = ech.decompose(image)?.ok_or(Error::NotStable)?;
    Ok(normalize(coords.into_iter().map(|(id, c)| (id as u32, c)).collect()))
}

/// Lexicographic indexing of a tensor product basis, first factor most
/// significant.
pub(crate) struct Shape {
    dims: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl Shape {
    pub(crate) fn new(dims: Vec<usize>) -> Shape {
        let mut strides = vec![1; dims.len()];
        for j in (0..dims.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * dims[j + 1];
        }
        let total = dims.iter().product();
        Shape { dims, strides, total }
    }

    pub(crate) fn total(&self) -> usize {
        self.total
    }

    pub(crate) fn index(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.strides).map(|(d, s)| d * s).sum()
    }

    /// Adds `k·(1 ⊗ … ⊗ a ⊗ … ⊗ 1)`, with `a` in slot `j`, to `cols`.
    pub(crate) fn lift_into(&self, j: usize, a: &SMat, k: &Q, cols: &mut [Vec<(u32, Q)>]) {
        if a.is_zero() || k.is_zero() {
            return;
        }
        let (stride, dim) = (self.strides[j], self.dims[j]);
        for (idx, col) in cols.iter_mut().enumerate() {
            let d = (idx / stride) % dim;
            let base = idx - d * stride;
            for (row, c) in a.col(d) {
                col.push(((base + *row as usize * stride) as u32, c * k));
            }
        }
    }

    /// Sums of per-factor labels, in basis order.
    pub(crate) fn combine<T: Clone>(
        &self,
        labels: &[&[T]],
        zero: T,
        add: impl Fn(&T, &T) -> T,
    ) -> Vec<T> {
        let mut out = vec![zero];
        for factor in labels {
            out = out.iter().flat_map(|a| factor.iter().map(|b| add(a, b))).collect();
        }
        debug_assert_eq!(out.len(), self.total);
        out
    }
}

/// Sum over factors of the lifted tables of generator `g`.
pub(crate) fn tensor_gens(n: usize, shape: &Shape, factors: &[Option<&Gens>]) -> Gens {
    Gens::build(n, |g| {
        let mut cols = vec![Vec::new(); shape.total()];
        for (j, f) in factors.iter().enumerate() {
            if let Some(f) = f {
                shape.lift_into(j, f.get(g), &Q::ONE, &mut cols);
            }
        }
        SMat::from_cols(cols.into_iter().map(normalize).collect())
    })
}

/// Common interface of the explicit module types.
pub trait Rep {
    fn rank(&self) -> usize;
    fn dim(&self) -> usize;
    fn weight(&self, idx: usize) -> &Weight;
    fn degree(&self, _idx: usize) -> u32 {
        0
    }
    fn is_graded(&self) -> bool {
        false
    }
    /// The action of `g ⊗ t^k`.
    fn act(&self, g: Gen, k: u32, v: &SVec) -> SVec;
    /// The largest `k` with an explicitly stored table.
    fn stored_power(&self) -> u32;

    /// Basis grouped by weight (and degree, for graded modules).
    fn key_index(&self) -> KeyIndex {
        KeyIndex::new((0..self.dim()).map(|i| (self.weight(i).clone(), self.degree(i))))
    }
}

/// Spans `seeds` and closes the span under `ops`, recording new row ids in
/// insertion order.
pub(crate) fn close<R: Rep + ?Sized>(
    m: &R,
    ech: &mut Echelon,
    seeds: impl IntoIterator<Item = SVec>,
    ops: &[(Gen, u32)],
) -> Result<Vec<usize>> {
    let mut added = Vec::new();
    let mut queue = VecDeque::new();
    for s in seeds {
        if let Some(id) = ech.insert(&s)? {
            queue.push_back(id);
            added.push(id);
        }
    }
    while let Some(id) = queue.pop_front() {
        let v = ech.vector(id);
        for &(g, k) in ops {
            if let Some(new) = ech.insert(&m.act(g, k, &v))? {
                queue.push_back(new);
                added.push(new);
            }
        }
    }
    Ok(added)
}

/// `(g, k)` for every generator and every `k` in `powers`.
pub(crate) fn ops_for(n: usize, powers: impl IntoIterator<Item = u32>) -> Vec<(Gen, u32)> {
    powers.into_iter().flat_map(|k| Gen::all(n).into_iter().map(move |g| (g, k))).collect()
}

/// The closure of `span{v}` under `ops`, checking `v ≠ 0`.
pub(crate) fn cyclic_echelon<R: Rep + ?Sized>(
    m: &R,
    v: &SVec,
    ops: &[(Gen, u32)],
) -> Result<Echelon> {
    if v.is_empty() {
        return Err(Error::ZeroVector);
    }
    let mut ech = Echelon::new(m.key_index());
    close(m, &mut ech, [v.clone()], ops)?;
    Ok(ech)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_indexing_and_combine() {
        let s = Shape::new(vec![2, 3]);
        assert_eq!(s.total(), 6);
        assert_eq!(s.index(&[1, 2]), 5);
        let labels = s.combine(&[&[10, 20], &[1, 2, 3]], 0, |a, b| a + b);
        assert_eq!(labels, vec![11, 12, 13, 21, 22, 23]);
    }

    #[test]
    fn lift_acts_on_one_slot() {
        let s = Shape::new(vec![2, 2]);
        let swap = SMat::from_cols(vec![crate::linalg::unit(1), crate::linalg::unit(0)]);
        let mut cols = vec![Vec::new(); 4];
        s.lift_into(1, &swap, &Q::ONE, &mut cols);
        let m = SMat::from_cols(cols.into_iter().map(normalize).collect());
        assert_eq!(m.apply(&crate::linalg::unit(0)), crate::linalg::unit(1));
        assert_eq!(m.apply(&crate::linalg::unit(2)), crate::linalg::unit(3));
    }

    #[test]
    fn generator_lists() {
        assert_eq!(Gen::all(2).len(), 6);
        assert_eq!(Gen::raising_lowering(3).len(), 6);
        let rs = RootSystemA::new(2).unwrap();
        assert_eq!(Gen::f(1).shift(&rs), Weight::new(vec![-2, 1]));
    }
}

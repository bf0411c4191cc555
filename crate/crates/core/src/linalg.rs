//! Exact sparse linear algebra over `Q`.
//!
//! Vectors are sorted `(index, coefficient)` lists with no zero entries.
//! Subspaces spanned by homogeneous vectors are kept in a semi-echelon form
//! per homogeneous component: every stored row is normalized to pivot 1 and
//! has zeros at the pivots of all earlier rows of its component, so
//! coordinates are recovered by one pass over the rows in insertion order.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Q;

pub type SVec = Vec<(u32, Q)>;

/// Sorts by index, merges duplicates and drops zeros.
pub fn normalize(mut v: Vec<(u32, Q)>) -> SVec {
    if v.len() <= 1 {
        v.retain(|(_, c)| !c.is_zero());
        return v;
    }
    v.sort_unstable_by_key(|&(i, _)| i);
    let mut out: SVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, d)) if *j == i => *d += &c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

pub fn scale(v: &SVec, k: &Q) -> SVec {
    if k.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, c)| (*i, c * k)).collect()
}

/// `a + k·b`.
pub fn axpy(a: &SVec, k: &Q, b: &SVec) -> SVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend(a.iter().cloned());
    out.extend(b.iter().map(|(i, c)| (*i, c * k)));
    normalize(out)
}

pub fn sub(a: &SVec, b: &SVec) -> SVec {
    axpy(a, &-Q::ONE, b)
}

pub fn unit(i: usize) -> SVec {
    vec![(i as u32, Q::ONE)]
}

/// A square sparse matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SMat {
    cols: Vec<SVec>,
}

impl SMat {
    pub fn zero(dim: usize) -> SMat {
        SMat { cols: vec![Vec::new(); dim] }
    }

    pub fn identity(dim: usize) -> SMat {
        SMat { cols: (0..dim).map(unit).collect() }
    }

    pub fn from_cols(cols: Vec<SVec>) -> SMat {
        SMat { cols }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &SVec {
        &self.cols[j]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut SVec {
        &mut self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        match v.as_slice() {
            [] => Vec::new(),
            [(j, c)] if c.is_one() => self.cols[*j as usize].clone(),
            _ => {
                let mut acc = Vec::new();
                for (j, c) in v {
                    acc.extend(self.cols[*j as usize].iter().map(|(i, d)| (*i, c * d)));
                }
                normalize(acc)
            }
        }
    }

    /// `Σ k_r A_r` over matrices of equal size.
    pub fn lin_comb<'a>(dim: usize, terms: impl IntoIterator<Item = (Q, &'a SMat)>) -> SMat {
        let mut cols: Vec<Vec<(u32, Q)>> = vec![Vec::new(); dim];
        for (k, m) in terms {
            if k.is_zero() {
                continue;
            }
            for (j, col) in m.cols.iter().enumerate() {
                cols[j].extend(col.iter().map(|(i, c)| (*i, c * &k)));
            }
        }
        SMat { cols: cols.into_iter().map(normalize).collect() }
    }

    pub fn compose(&self, other: &SMat) -> SMat {
        SMat { cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }
}

/// Groups basis indices by a homogeneity key (weight, or weight and degree).
#[derive(Clone, Debug)]
pub struct KeyIndex {
    key_of: Vec<u32>,
    local: Vec<u32>,
    members: Vec<Vec<u32>>,
}

impl KeyIndex {
    pub fn new<K: Hash + Eq>(keys: impl IntoIterator<Item = K>) -> KeyIndex {
        let mut ids: HashMap<K, u32> = HashMap::new();
        let mut key_of = Vec::new();
        let mut local = Vec::new();
        let mut members: Vec<Vec<u32>> = Vec::new();
        for (idx, k) in keys.into_iter().enumerate() {
            let next = ids.len() as u32;
            let id = *ids.entry(k).or_insert(next);
            if id as usize == members.len() {
                members.push(Vec::new());
            }
            key_of.push(id);
            local.push(members[id as usize].len() as u32);
            members[id as usize].push(idx as u32);
        }
        KeyIndex { key_of, local, members }
    }

    pub fn dim(&self) -> usize {
        self.key_of.len()
    }

    pub fn key_of(&self, idx: usize) -> usize {
        self.key_of[idx] as usize
    }

    pub fn num_keys(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, Debug, Default)]
struct Local {
    rows: Vec<Vec<(u32, Q)>>,
    pivots: Vec<u32>,
    ids: Vec<u32>,
}

/// A subspace spanned by homogeneous vectors, in per-key semi-echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    index: KeyIndex,
    spaces: Vec<Local>,
    rows: Vec<(u32, u32)>,
}

impl Echelon {
    pub fn new(index: KeyIndex) -> Echelon {
        let spaces = vec![Local::default(); index.num_keys()];
        Echelon { index, spaces, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn index(&self) -> &KeyIndex {
        &self.index
    }

    /// The key of the component containing row `id`.
    pub fn row_key(&self, id: usize) -> usize {
        self.rows[id].0 as usize
    }

    fn to_local(&self, v: &SVec) -> Result<Option<(usize, Vec<Q>)>> {
        let Some((first, _)) = v.first() else { return Ok(None) };
        let key = self.index.key_of(*first as usize);
        let mut dense = vec![Q::ZERO; self.index.members[key].len()];
        for (i, c) in v {
            if self.index.key_of(*i as usize) != key {
                return Err(Error::Inhomogeneous);
            }
            dense[self.index.local[*i as usize] as usize] = c.clone();
        }
        Ok(Some((key, dense)))
    }

    /// Reduces in place against component `key`, returning the coordinates.
    fn reduce(&self, key: usize, x: &mut [Q]) -> Vec<(usize, Q)> {
        let sp = &self.spaces[key];
        let mut coords = Vec::new();
        for ((row, &p), &id) in sp.rows.iter().zip(&sp.pivots).zip(&sp.ids) {
            let c = x[p as usize].clone();
            if c.is_zero() {
                continue;
            }
            for (col, r) in row {
                let t = &c * r;
                x[*col as usize] -= &t;
            }
            coords.push((id as usize, c));
        }
        coords
    }

    /// Adds `v` if it is independent of the stored rows; returns the new row id.
    pub fn insert(&mut self, v: &SVec) -> Result<Option<usize>> {
        let Some((key, mut x)) = self.to_local(v)? else { return Ok(None) };
        self.reduce(key, &mut x);
        let Some(p) = x.iter().position(|c| !c.is_zero()) else { return Ok(None) };
        let inv = x[p].recip();
        let row: Vec<(u32, Q)> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j as u32, c * &inv))
            .collect();
        let id = self.rows.len();
        let sp = &mut self.spaces[key];
        sp.rows.push(row);
        sp.pivots.push(p as u32);
        sp.ids.push(id as u32);
        self.rows.push((key as u32, (sp.rows.len() - 1) as u32));
        Ok(Some(id))
    }

    /// Coordinates of `v` in the stored rows, or `None` if `v` is outside
    /// their span.
    pub fn decompose(&self, v: &SVec) -> Result<Option<Vec<(usize, Q)>>> {
        let Some((key, mut x)) = self.to_local(v)? else { return Ok(Some(Vec::new())) };
        let coords = self.reduce(key, &mut x);
        Ok(x.iter().all(Q::is_zero).then_some(coords))
    }

    pub fn contains(&self, v: &SVec) -> Result<bool> {
        Ok(self.decompose(v)?.is_some())
    }

    /// Row `id` as an ambient vector.
    pub fn vector(&self, id: usize) -> SVec {
        let (key, r) = self.rows[id];
        let members = &self.index.members[key as usize];
        let mut out: SVec = self.spaces[key as usize].rows[r as usize]
            .iter()
            .map(|(j, c)| (members[*j as usize], c.clone()))
            .collect();
        out.sort_unstable_by_key(|&(i, _)| i);
        out
    }
}

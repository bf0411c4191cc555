use rayon::prelude::*;

use super::{
    close, evaluation_module, simple_gmodule, Gen, GradedCharacter, GradedGtModule, GtModule,
    Gens, Rep,
};
use crate::error::{Error, Result};
use crate::linalg::{normalize, unit, Echelon, SMat, SVec};
use crate::rational::Q;
use crate::typea::{Partition, Weight};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FusionOptions {
    /// Largest `k` for which `g ⊗ t^k` seeds new filtration levels; the
    /// module's stored truncation when unset.
    pub max_power: Option<u32>,
}

/// `0, 1, …, p−1`.
pub fn default_points(p: usize) -> Vec<Q> {
    (0..p as i64).map(Q::from_int).collect()
}

struct Filtration {
    ech: Echelon,
    level: Vec<u32>,
    top: u32,
}

/// `F^0 = U(g)v` and `F^r = U(g)(F^{r−1} + Σ_{k≥1} (g ⊗ t^k) F^{r−k})`.
fn filtrate(m: &GtModule, v: &SVec, opts: FusionOptions) -> Result<Filtration> {
    if v.is_empty() {
        return Err(Error::ZeroVector);
    }
    let n = m.rank();
    let kmax = opts.max_power.unwrap_or(m.truncation()).max(1);
    let g_ops: Vec<(Gen, u32)> = Gen::raising_lowering(n).into_iter().map(|g| (g, 0)).collect();
    let mut ech = Echelon::new(m.key_index());
    let mut levels = vec![close(m, &mut ech, [v.clone()], &g_ops)?];
    while ech.len() < m.dim() {
        let r = levels.len();
        let mut seeds = Vec::new();
        for k in 1..=kmax.min(r as u32) {
            for &u in &levels[r - k as usize] {
                let x = ech.vector(u);
                seeds.extend(Gen::all(n).into_iter().map(|g| m.act(g, k, &x)));
            }
        }
        let new = close(m, &mut ech, seeds, &g_ops)?;
        if new.is_empty() {
            return Err(Error::NotCyclic { generated: ech.len(), dim: m.dim() });
        }
        levels.push(new);
    }
    let mut level = vec![0; ech.len()];
    for (r, ids) in levels.iter().enumerate() {
        for &id in ids {
            level[id] = r as u32;
        }
    }
    Ok(Filtration { ech, level, top: levels.len() as u32 - 1 })
}

/// The associated graded module of the filtration of `m` generated by the
/// cyclic vector `v`.
///
/// Basis vector `u` of degree `s` is a representative of
/// `F^s/F^{s−1}`; `a ⊗ t^k` acts by the component of `(a ⊗ t^k)u` in
/// `F^{s+k}/F^{s+k−1}`. The image of `v` is basis vector 0.
pub fn fusion_filtration(m: &GtModule, v: &SVec, opts: FusionOptions) -> Result<GradedGtModule> {
    let Filtration { ech, level, top } = filtrate(m, v, opts)?;
    let m = &m.with_truncation(top);
    let n = m.rank();
    let rows: Vec<SVec> = (0..ech.len()).map(|id| ech.vector(id)).collect();
    let weights: Vec<Weight> = rows.iter().map(|r| m.weight(r[0].0 as usize).clone()).collect();
    let column = |g: Gen, k: u32, u: usize| -> Result<SVec> {
        let target = level[u] + k;
        if target > top {
            return Ok(Vec::new());
        }
        let coords = ech.decompose(&m.act(g, k, &rows[u]))?.ok_or(Error::NotStable)?;
        let mut col = Vec::new();
        for (id, c) in coords {
            assert!(level[id] <= target, "filtration is not compatible with the action");
            if level[id] == target {
                col.push((id as u32, c));
            }
        }
        Ok(normalize(col))
    };
    let jobs: Vec<(u32, Gen)> =
        (0..=top).flat_map(|k| Gen::all(n).into_iter().map(move |g| (k, g))).collect();
    let mats = jobs
        .par_iter()
        .map(|&(k, g)| {
            let cols = (0..rows.len()).map(|u| column(g, k, u)).collect::<Result<Vec<_>>>()?;
            Ok(SMat::from_cols(cols))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut tables: Vec<Gens> = (0..=top).map(|_| Gens::zero(n, rows.len())).collect();
    for ((k, g), mat) in jobs.into_iter().zip(mats) {
        *tables[k as usize].get_mut(g) = mat;
    }
    Ok(GradedGtModule::from_parts(n, weights, level, tables, Some(0)))
}

/// The graded character of [`fusion_filtration`] without building action
/// tables.
pub fn fusion_character(m: &GtModule, v: &SVec, opts: FusionOptions) -> Result<GradedCharacter> {
    let f = filtrate(m, v, opts)?;
    let mut ch = GradedCharacter::new(m.rank());
    for (id, &d) in f.level.iter().enumerate() {
        ch.add(m.weight(f.ech.vector(id)[0].0 as usize).clone(), d, 1);
    }
    Ok(ch)
}

/// `ev_{z_1} V(λ_1) ⊗ … ⊗ ev_{z_p} V(λ_p)` together with its tensor of top
/// vectors.
pub fn fusion_of(n: usize, weights: &[Weight], points: &[Q]) -> Result<(GtModule, SVec)> {
    if weights.len() != points.len() || weights.is_empty() {
        return Err(Error::BadPoints);
    }
    for (a, z) in points.iter().enumerate() {
        if points[..a].contains(z) {
            return Err(Error::BadPoints);
        }
    }
    let factors = weights
        .iter()
        .zip(points)
        .map(|(w, z)| Ok(evaluation_module(&simple_gmodule(n, w)?, z.clone())))
        .collect::<Result<Vec<_>>>()?;
    let m = GtModule::tensor(&factors.iter().collect::<Vec<_>>())?;
    let v = unit(m.generator().expect("simple modules have generators"));
    Ok((m, v))
}

/// `V(ξ_1 ω_i) * … * V(ξ_ℓ ω_i)` at the given points.
pub fn fusion_product(n: usize, i: usize, xi: &Partition, points: &[Q]) -> Result<GradedGtModule> {
    if i == 0 || i > n {
        return Err(Error::NodeOutOfRange { node: i, rank: n });
    }
    let weights: Vec<Weight> =
        xi.parts().iter().map(|&m| Weight::fundamental(n, i).scale(m as i64)).collect();
    let (m, v) = fusion_of(n, &weights, points)?;
    fusion_filtration(&m, &v, FusionOptions::default())
}

//! Local Weyl modules, rectangular and generalized Demazure modules, and
//! checks of their defining relations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{sub, unit, SVec};
use crate::module::{
    apply_elt, apply_word, default_points, fusion_of, fusion_filtration, FusionOptions, Gen,
    GradedGtModule, LieElt, Letter, Rep,
};
use crate::rational::Q;
use crate::typea::{Partition, PosRoot, RootSystemA, Weight};

/// `D(ell, lam)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DemazureSpec {
    pub ell: u32,
    pub lam: Weight,
}

impl DemazureSpec {
    /// `D(ell, ell·base)`.
    pub fn rectangular(ell: u32, base: &Weight) -> DemazureSpec {
        DemazureSpec { ell, lam: base.scale(ell as i64) }
    }

    /// `lam / ell` when every coordinate is divisible by `ell`.
    pub fn base(&self) -> Result<Weight> {
        if self.ell == 0 {
            return Err(Error::NonPositive { what: "level", value: 0 });
        }
        let l = self.ell as i64;
        if self.lam.coords().iter().any(|c| c % l != 0) {
            return Err(Error::NotRectangular { ell: self.ell, lam: self.lam.clone() });
        }
        Ok(Weight::new(self.lam.coords().iter().map(|c| c / l).collect()))
    }

    pub fn build(&self) -> Result<GradedGtModule> {
        rect_demazure(self.ell, &self.base()?)
    }
}

/// `D_i(xi)` for `sl_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenDemazureSpec {
    pub n: usize,
    pub i: usize,
    pub xi: Partition,
}

/// Order of the tensor factors of [`gen_demazure_ordered`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorOrder {
    Ascending,
    Descending,
}

/// `D(1, λ)`, realized as the fusion product of `λ(h_j)` copies of each
/// `V(ω_j)` at the points `0, 1, …`.
pub fn local_weyl(n: usize, lam: &Weight) -> Result<GradedGtModule> {
    lam.check_rank(n)?;
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam.clone()));
    }
    let weights: Vec<Weight> = (1..=n)
        .flat_map(|j| std::iter::repeat_n(Weight::fundamental(n, j), lam.at(j) as usize))
        .collect();
    if weights.is_empty() {
        return Ok(GradedGtModule::trivial(n));
    }
    let (m, v) = fusion_of(n, &weights, &default_points(weights.len()))?;
    fusion_filtration(&m, &v, FusionOptions::default())
}

/// `D(ell, ell·base)` as the submodule of `D(1, base)^{⊗ell}` generated by
/// the tensor of generators.
pub fn rect_demazure(ell: u32, base: &Weight) -> Result<GradedGtModule> {
    if ell == 0 {
        return Err(Error::NonPositive { what: "level", value: 0 });
    }
    let w = local_weyl(base.rank(), base)?;
    if ell == 1 {
        return Ok(w);
    }
    let t = GradedGtModule::tensor(&vec![&w; ell as usize])?;
    t.cyclic_submodule(&unit(t.generator().expect("local Weyl modules are cyclic")))
}

/// `D_i(xi) ⊆ D(b_1, b_1 m_1 ω_i) ⊗ … ⊗ D(b_s, b_s m_s ω_i)` with
/// `m_1 < … < m_s`.
pub fn gen_demazure(spec: &GenDemazureSpec) -> Result<GradedGtModule> {
    gen_demazure_ordered(spec, FactorOrder::Ascending)
}

pub fn gen_demazure_ordered(spec: &GenDemazureSpec, order: FactorOrder) -> Result<GradedGtModule> {
    let GenDemazureSpec { n, i, xi } = spec;
    RootSystemA::new(*n)?.check_node(*i)?;
    if xi.is_empty() {
        return Err(Error::InvalidPartition("generalized Demazure modules need a nonempty partition".into()));
    }
    let mut rle = xi.rle();
    if order == FactorOrder::Descending {
        rle.reverse();
    }
    let factors = rle
        .iter()
        .map(|&(m, b)| rect_demazure(b, &Weight::fundamental(*n, *i).scale(m as i64)))
        .collect::<Result<Vec<_>>>()?;
    if factors.len() == 1 {
        return Ok(factors.into_iter().next().expect("one factor"));
    }
    let t = GradedGtModule::tensor(&factors.iter().collect::<Vec<_>>())?;
    t.cyclic_submodule(&unit(t.generator().expect("Demazure modules are cyclic")))
}

/// One relation or non-relation tested on a module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: String,
    pub expect_zero: bool,
    pub is_zero: bool,
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        self.expect_zero == self.is_zero
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(RelationCheck::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.holds())
    }

    /// Number of checks asserting that something does not vanish.
    pub fn witnesses(&self) -> usize {
        self.checks.iter().filter(|c| !c.expect_zero).count()
    }

    fn push(&mut self, relation: String, expect_zero: bool, value: &SVec) {
        self.checks.push(RelationCheck { relation, expect_zero, is_zero: value.is_empty() });
    }

    fn word<R: Rep + ?Sized>(&mut self, m: &R, v: &SVec, word: &[Letter], expect_zero: bool) -> Result<()> {
        let desc: String = word.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
        self.push(format!("{desc} v"), expect_zero, &apply_word(m, v, word)?);
        Ok(())
    }

    fn cartan<R: Rep + ?Sized>(&mut self, m: &R, v: &SVec, lam: &Weight) {
        for j in 1..=m.rank() {
            for r in 0..=m.stored_power() + 1 {
                let mut got = m.act(Gen::h(j), r, v);
                if r == 0 {
                    got = sub(&got, &crate::linalg::scale(v, &Q::from_int(lam.at(j))));
                }
                let want = if r == 0 { lam.at(j) } else { 0 };
                self.push(format!("(h{j} t^{r}) v = {want} v"), true, &got);
            }
        }
    }
}

fn check_generator<R: Rep + ?Sized>(m: &R, v: &SVec, lam: &Weight) -> Result<()> {
    lam.check_rank(m.rank())?;
    if v.is_empty() {
        return Err(Error::ZeroVector);
    }
    if v.iter().any(|&(i, _)| m.weight(i as usize) != lam || m.degree(i as usize) != 0) {
        return Err(Error::Inhomogeneous);
    }
    Ok(())
}

/// `(s_α, m_α)` with `N = (s_α − 1)ℓ + m_α` and `0 < m_α ≤ ℓ`; `None` for
/// `N = 0`.
pub fn demazure_division(n_alpha: u32, ell: u32) -> Option<(u32, u32)> {
    if n_alpha == 0 {
        return None;
    }
    let s = n_alpha.div_ceil(ell);
    Some((s, n_alpha - (s - 1) * ell))
}

/// Tests the defining relations of `D(ell, lam)` on `v`, together with the
/// sharpness witnesses `(x_i^-)^{λ(h_i)} v ≠ 0` and
/// `(x_α^- ⊗ t^{s_α−1})^{m_α} v ≠ 0`.
///
/// For roots with `λ(h_α) = 0` it tests `(x_α^- ⊗ t^k) v = 0` for every
/// stored power `k`.
pub fn check_demazure_relations<R: Rep + ?Sized>(
    m: &R,
    v: &SVec,
    ell: u32,
    lam: &Weight,
) -> Result<RelationReport> {
    if ell == 0 {
        return Err(Error::NonPositive { what: "level", value: 0 });
    }
    check_generator(m, v, lam)?;
    let n = m.rank();
    let rs = RootSystemA::new(n)?;
    let kmax = m.stored_power() + 1;
    let mut rep = RelationReport::default();
    for j in 1..=n {
        rep.push(format!("(e{j} t^0) v"), true, &m.act(Gen::e(j), 0, v));
    }
    rep.cartan(m, v, lam);
    for j in 1..=n {
        let f = LieElt::Neg(PosRoot::simple(j));
        let lj = lam.at(j) as u32;
        rep.word(m, v, &[Letter::new(f, 0, lj + 1)], true)?;
        rep.word(m, v, &[Letter::new(f, 0, lj)], false)?;
    }
    for alpha in rs.positive_roots() {
        let f = LieElt::Neg(alpha);
        match demazure_division(lam.pair(alpha) as u32, ell) {
            None => {
                for k in 0..=kmax {
                    rep.word(m, v, &[Letter::new(f, k, 1)], true)?;
                }
            }
            Some((s, ma)) => {
                rep.word(m, v, &[Letter::new(f, s, 1)], true)?;
                rep.word(m, v, &[Letter::new(f, s - 1, ma + 1)], true)?;
                rep.word(m, v, &[Letter::new(f, s - 1, ma)], false)?;
            }
        }
    }
    Ok(rep)
}

/// Whether `(x_α^+ ⊗ t)^s (x_α^-)^{r+s} v = 0` is among the relations for
/// tail sums `tails` (`L_1, …, L_ℓ, 0`): `r + s ≥ 1 + kr + L_{k+1}` for some
/// `k ≥ 1`.
pub fn gradrel_in_range(r: u32, s: u32, tails: &[u32]) -> bool {
    let len = tails.len() - 1;
    (1..=len.max(1)).any(|k| {
        let lk = tails.get(k).copied().unwrap_or(0);
        r + s >= 1 + k as u32 * r + lk
    })
}

/// Tests the presentation of the graded limit attached to `(i, xi)` on the
/// degree-0 generator `v`.
///
/// Pairs `1 ≤ r, s ≤ L_1 + 1` are enumerated. For each root with
/// `ω_i(h_α) = 1` there is in addition one witness asserting that some
/// excluded pair with `r + s ≤ L_1` does not vanish, when such a pair exists.
pub fn check_gradrel_relations<R: Rep + ?Sized>(
    m: &R,
    v: &SVec,
    i: usize,
    xi: &Partition,
) -> Result<RelationReport> {
    let n = m.rank();
    let rs = RootSystemA::new(n)?;
    rs.check_node(i)?;
    let tails = xi.tail_sums();
    let l1 = tails[0];
    let lam = Weight::fundamental(n, i).scale(l1 as i64);
    check_generator(m, v, &lam)?;
    let kmax = m.stored_power() + 1;
    let mut rep = RelationReport::default();
    for alpha in rs.positive_roots() {
        for k in 0..=kmax {
            let x = apply_elt(m, LieElt::Pos(alpha), k, v)?;
            rep.push(format!("(x+[{alpha}] t^{k}) v"), true, &x);
        }
    }
    rep.cartan(m, v, &lam);
    for alpha in rs.positive_roots() {
        let (pos, neg) = (LieElt::Pos(alpha), LieElt::Neg(alpha));
        if !alpha.contains(i) {
            for k in 0..=kmax {
                rep.word(m, v, &[Letter::new(neg, k, 1)], true)?;
            }
            continue;
        }
        rep.word(m, v, &[Letter::new(neg, 0, l1 + 1)], true)?;
        let mut excluded = Vec::new();
        for r in 1..=l1 + 1 {
            for s in 1..=l1 + 1 {
                let word = [Letter::new(pos, 1, s), Letter::new(neg, 0, r + s)];
                if gradrel_in_range(r, s, &tails) {
                    rep.word(m, v, &word, true)?;
                } else if r + s <= l1 {
                    excluded.push((r, s, apply_word(m, v, &word)?));
                }
            }
        }
        if !excluded.is_empty() {
            let pairs: Vec<String> = excluded.iter().map(|(r, s, _)| format!("({r},{s})")).collect();
            let nonzero = excluded.iter().find(|e| !e.2.is_empty()).map_or(Vec::new(), |e| e.2.clone());
            rep.push(
                format!("some (x+[{alpha}] t^1)^s (x-[{alpha}] t^0)^(r+s) v with (r,s) in {}", pairs.join(" ")),
                false,
                &nonzero,
            );
        }
    }
    Ok(rep)
}

//! Verification suites comparing the fusion side with the Demazure side.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::affine::ExtAffineElt;
use crate::cache::Cache;
use crate::demazure::{
    check_gradrel_relations, gen_demazure, local_weyl, rect_demazure, GenDemazureSpec,
};
use crate::error::{Error, Result};
use crate::linalg::unit;
use crate::lweight::{blocks_cyclic, pi_blocks};
use crate::module::{default_points, fusion_product, GradedCharacter, GradedGtModule, Rep};
use crate::rational::Q;
use crate::typea::{char_simple, tensor_decompose, weyl_dim, Character, Partition, RootSystemA, Weight, WeylElt};

pub const DEFAULT_CAP: usize = 5000;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_TRIALS: u32 = 3;
pub const DEFAULT_SAMPLES: u32 = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub xi: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub points: Option<Vec<Q>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<u32>,
}

impl Params {
    pub fn case(n: usize, i: usize, xi: &Partition) -> Params {
        Params { n: Some(n), i: Some(i), xi: Some(xi.clone()), ..Params::default() }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        if let Some(i) = self.i {
            parts.push(format!("i={i}"));
        }
        if let Some(xi) = &self.xi {
            parts.push(format!("xi={xi}"));
        }
        if let Some(p) = &self.points {
            let p: Vec<String> = p.iter().map(|z| z.to_string()).collect();
            parts.push(format!("points={}", p.join(",")));
        }
        if let Some(s) = self.seed {
            parts.push(format!("seed={s}"));
        }
        if let Some(s) = self.samples {
            parts.push(format!("samples={s}"));
        }
        f.write_str(&parts.join(" "))
    }
}

/// One `(check, expected, got)` witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Detail {
    pub check: String,
    pub expected: String,
    pub got: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub params: Params,
    pub status: Status,
    pub details: Vec<Detail>,
}

impl Report {
    fn new(name: &str, params: Params) -> Report {
        Report { name: name.to_string(), params, status: Status::Pass, details: Vec::new() }
    }

    fn check(&mut self, check: impl Into<String>, expected: impl ToString, got: impl ToString, ok: bool) {
        self.details.push(Detail {
            check: check.into(),
            expected: expected.to_string(),
            got: got.to_string(),
            ok,
        });
        if !ok {
            self.status = Status::Fail;
        }
    }

    fn eq<T: PartialEq + ToString>(&mut self, check: impl Into<String>, expected: T, got: T) {
        let ok = expected == got;
        self.check(check, expected, got, ok);
    }

    /// Records a construction error: resource caps skip, anything else fails.
    fn error(mut self, e: Error) -> Report {
        let skip = matches!(e, Error::ResourceCap { .. });
        self.check("construction", "success", e.to_string(), false);
        if skip {
            self.status = Status::Skipped;
        }
        self
    }

    fn run(name: &str, params: Params, body: impl FnOnce(&mut Report) -> Result<()>) -> Report {
        let mut r = Report::new(name, params);
        match body(&mut r) {
            Ok(()) => r,
            Err(e) => r.error(e),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Verification context: resource cap and module cache.
#[derive(Debug)]
pub struct Verifier {
    pub cap: usize,
    pub cache: Cache,
}

impl Default for Verifier {
    fn default() -> Verifier {
        Verifier { cap: DEFAULT_CAP, cache: Cache::memory() }
    }
}

fn fmt_dims(ch: &GradedCharacter) -> String {
    let parts: Vec<String> = ch.graded_dims().iter().map(|(d, k)| format!("{d}:{k}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn first_difference(a: &GradedCharacter, b: &GradedCharacter) -> Option<(Weight, u32, u64, u64)> {
    let keys: std::collections::BTreeSet<(u32, Weight)> =
        a.iter().chain(b.iter()).map(|(w, d, _)| (d, w.clone())).collect();
    keys.into_iter()
        .map(|(d, w)| (a.mult(&w, d), b.mult(&w, d), w, d))
        .find(|(x, y, _, _)| x != y)
        .map(|(x, y, w, d)| (w, d, x, y))
}

fn product_dim(factors: impl IntoIterator<Item = u64>) -> usize {
    factors
        .into_iter()
        .try_fold(1usize, |acc, f| acc.checked_mul(usize::try_from(f).ok()?))
        .unwrap_or(usize::MAX)
}

fn points_key(points: &[Q]) -> String {
    points.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(",")
}

impl Verifier {
    pub fn new(cap: usize, cache: Cache) -> Verifier {
        Verifier { cap, cache }
    }

    fn guard(&self, dim: usize) -> Result<()> {
        if dim > self.cap {
            return Err(Error::ResourceCap { dim, cap: self.cap });
        }
        Ok(())
    }

    /// Ambient dimension of the fusion construction: `∏_k dim V(ξ_k ω_i)`.
    pub fn fusion_ambient(n: usize, i: usize, xi: &Partition) -> Result<usize> {
        let rs = RootSystemA::new(n)?;
        rs.check_node(i)?;
        let dims = xi
            .parts()
            .iter()
            .map(|&m| weyl_dim(&rs, &Weight::fundamental(n, i).scale(m as i64)))
            .collect::<Result<Vec<_>>>()?;
        Ok(product_dim(dims))
    }

    /// Largest ambient space used to build `D_i(ξ)`.
    pub fn demazure_ambient(n: usize, i: usize, xi: &Partition) -> Result<usize> {
        let rs = RootSystemA::new(n)?;
        rs.check_node(i)?;
        let c = weyl_dim(&rs, &Weight::fundamental(n, i))?;
        let mut worst = 1;
        let mut gen = Vec::new();
        for (m, b) in xi.rle() {
            worst = worst.max(product_dim(std::iter::repeat_n(c, (m * b) as usize)));
            let level = weyl_dim(&rs, &Weight::fundamental(n, i).scale(b as i64))?;
            gen.extend(std::iter::repeat_n(level, m as usize));
        }
        Ok(worst.max(product_dim(gen)))
    }

    pub fn fusion(&self, n: usize, i: usize, xi: &Partition, points: &[Q]) -> Result<Arc<GradedGtModule>> {
        self.guard(Verifier::fusion_ambient(n, i, xi)?)?;
        let key = format!("fusion n={n} i={i} xi={xi} points={}", points_key(points));
        self.cache.get_or_build(&key, || fusion_product(n, i, xi, points))
    }

    pub fn gen_demazure(&self, n: usize, i: usize, xi: &Partition) -> Result<Arc<GradedGtModule>> {
        self.guard(Verifier::demazure_ambient(n, i, xi)?)?;
        let key = format!("gendemazure n={n} i={i} xi={xi}");
        let spec = GenDemazureSpec { n, i, xi: xi.clone() };
        self.cache.get_or_build(&key, || gen_demazure(&spec))
    }

    pub fn rect_demazure(&self, ell: u32, base: &Weight) -> Result<Arc<GradedGtModule>> {
        let rs = RootSystemA::new(base.rank())?;
        let c = (1..=base.rank())
            .map(|j| Ok(weyl_dim(&rs, &Weight::fundamental(base.rank(), j))?.pow(base.at(j).max(0) as u32)))
            .collect::<Result<Vec<u64>>>()?;
        self.guard(product_dim(std::iter::repeat_n(product_dim(c) as u64, ell as usize)))?;
        let key = format!("rect ell={ell} base={base}");
        self.cache.get_or_build(&key, || rect_demazure(ell, base))
    }

    /// Graded characters of `V(ξ_1ω_i) * … * V(ξ_ℓω_i)` and `D_i(ξ')` agree,
    /// the collapsed fusion character is `∏_k ch V(ξ_kω_i)`, and the
    /// graded-limit relations hold on the fusion generator.
    pub fn verify_main(&self, n: usize, i: usize, xi: &Partition, points: Option<&[Q]>) -> Report {
        let points = points.map(<[Q]>::to_vec).unwrap_or_else(|| default_points(xi.len()));
        let mut params = Params::case(n, i, xi);
        params.points = Some(points.clone());
        Report::run("verify-main", params, |r| {
            let fusion = self.fusion(n, i, xi, &points)?;
            let dem = self.gen_demazure(n, i, &xi.conjugate())?;
            let (fc, dc) = (fusion.graded_character(), dem.graded_character());
            r.eq("dimension", fusion.dim(), dem.dim());
            r.check("graded character", fmt_dims(&fc), fmt_dims(&dc), fc == dc);
            if let Some((w, d, x, y)) = first_difference(&fc, &dc) {
                r.check(format!("multiplicity of weight {w} in degree {d}"), x, y, false);
            }
            let rs = RootSystemA::new(n)?;
            let mut prod = Character::from_iter([(Weight::zero(n), 1)]);
            for &m in xi.parts() {
                prod = prod.product(&char_simple(&rs, &Weight::fundamental(n, i).scale(m as i64))?);
            }
            let collapsed = fc.collapse();
            r.check("collapsed character", prod.dim(), collapsed.dim(), prod == collapsed);
            let rel = check_gradrel_relations(fusion.as_ref(), &unit(0), i, xi)?;
            let bad: Vec<String> = rel.failures().map(|c| c.relation.clone()).collect();
            let got = match bad.first() {
                None => format!("{} checks hold ({} witnesses)", rel.checks.len(), rel.witnesses()),
                Some(first) => format!("{} of {} fail, first: {first}", bad.len(), rel.checks.len()),
            };
            r.check("graded-limit relations", "all hold", got, bad.is_empty());
            Ok(())
        })
    }

    /// `dim D(ℓ_j, ℓ_j n_j ω_i) = dim V(ℓ_j ω_i)^{n_j}` for every block.
    pub fn verify_dim(&self, n: usize, i: usize, xi: &Partition) -> Report {
        Report::run("verify-dim", Params::case(n, i, xi), |r| {
            let rs = RootSystemA::new(n)?;
            rs.check_node(i)?;
            for block in pi_blocks(i, xi) {
                let (l, nj) = (block.factor.len, block.copies);
                let d = self.rect_demazure(l, &Weight::fundamental(n, i).scale(nj as i64))?;
                let want = weyl_dim(&rs, &Weight::fundamental(n, i).scale(l as i64))?.pow(nj);
                r.eq(format!("block (n, l) = ({nj}, {l})"), want, d.dim() as u64);
            }
            Ok(())
        })
    }

    /// The blocks of `π_{i,ξ}` satisfy the cyclicity condition.
    pub fn verify_blocks(&self, n: usize, i: usize, xi: &Partition) -> Report {
        Report::run("verify-blocks", Params::case(n, i, xi), |r| {
            RootSystemA::new(n)?.check_node(i)?;
            r.eq("blocks in cyclic order", true, blocks_cyclic(n, i, xi));
            Ok(())
        })
    }

    /// Fusion characters at `trials` random sets of distinct integers in
    /// `[−9, 9]` coincide.
    pub fn verify_point_independence(
        &self,
        n: usize,
        i: usize,
        xi: &Partition,
        trials: u32,
        seed: u64,
    ) -> Report {
        let mut params = Params::case(n, i, xi);
        params.seed = Some(seed);
        params.samples = Some(trials);
        Report::run("verify-points", params, |r| {
            if xi.len() > 19 {
                return Err(Error::BadPoints);
            }
            let mut rng = item_rng(seed, &format!("points {n} {i} {xi}"));
            let mut first: Option<GradedCharacter> = None;
            for _ in 0..trials {
                let mut pts: Vec<i64> = sample(&mut rng, 19, xi.len()).into_iter().map(|k| k as i64 - 9).collect();
                pts.sort_unstable();
                let points: Vec<Q> = pts.iter().map(|&z| Q::from_int(z)).collect();
                let ch = self.fusion(n, i, xi, &points)?.graded_character();
                let check = format!("points {}", points_key(&points));
                match &first {
                    None => {
                        r.check(check, "reference", fmt_dims(&ch), true);
                        first = Some(ch);
                    }
                    Some(f) => r.check(check, fmt_dims(f), fmt_dims(&ch), *f == ch),
                }
            }
            Ok(())
        })
    }

    /// `ℓ(t_{−λ} t_{−μ} w) = ℓ(t_{−λ}) + ℓ(t_{−μ} w)` on random dominant `λ, μ`
    /// with coordinates at most 3 and random `w`.
    pub fn verify_lemma_length(&self, n: usize, samples: u32, seed: u64) -> Report {
        let params = Params { n: Some(n), seed: Some(seed), samples: Some(samples), ..Params::default() };
        Report::run("verify-length", params, |r| {
            let rs = RootSystemA::new(n)?;
            let weyl = WeylElt::all(n);
            let mut rng = item_rng(seed, &format!("length {n}"));
            let mut failures = 0;
            for _ in 0..samples {
                let mut dominant = || Weight::new((0..n).map(|_| rng.gen_range(0..=3)).collect());
                let (lam, mu) = (dominant(), dominant());
                let w = weyl[rng.gen_range(0..weyl.len())].clone();
                let t_lam = ExtAffineElt::translation(-&lam);
                let t_mu_w = ExtAffineElt::translation(-&mu).compose(&ExtAffineElt::finite(w.clone()));
                let lhs = t_lam.compose(&t_mu_w).length(&rs);
                let rhs = t_lam.length(&rs) + t_mu_w.length(&rs);
                if lhs != rhs {
                    failures += 1;
                    r.check(format!("lambda={lam} mu={mu} w={w:?}"), rhs, lhs, false);
                }
            }
            r.eq("samples with additive length", samples, samples - failures);
            Ok(())
        })
    }

    /// Dimension facts around the affinizations of `V(2ω_2)` for `sl_4`.
    pub fn verify_remark_sl4(&self) -> Report {
        Report::run("verify-remark", Params { n: Some(3), ..Params::default() }, |r| {
            let rs = RootSystemA::new(3)?;
            let w = |c: [i64; 3]| Weight::new(c.to_vec());
            let top = weyl_dim(&rs, &w([0, 2, 0]))?;
            let adj = weyl_dim(&rs, &w([1, 0, 1]))?;
            r.eq("dim V(2w2)", 20, top);
            r.eq("dim V(w1+w3)", 15, adj);
            let dec = tensor_decompose(&rs, &w([0, 1, 0]), &w([0, 1, 0]))?;
            let want = BTreeMap::from([(w([0, 2, 0]), 1), (w([1, 0, 1]), 1), (w([0, 0, 0]), 1)]);
            r.eq("V(w2) x V(w2)", format!("{want:?}"), format!("{dec:?}"));
            let local = local_weyl(3, &w([0, 2, 0]))?.dim() as u64;
            r.eq("dim D(1, 2w2)", 36, local);
            r.check("proper quotient", format!("> {}", top + adj), local, local > top + adj);
            Ok(())
        })
    }

    /// Every check for every `n ≤ max_rank`, node `i` and `ξ ⊢ m ≤ max_size`,
    /// plus the length lemma per rank and the `sl_4` facts; sorted by name
    /// and parameters.
    pub fn verify_suite(&self, max_rank: usize, max_size: u32, seed: u64) -> Vec<Report> {
        #[derive(Clone)]
        enum Item {
            Case(usize, usize, Partition),
            Length(usize),
            Remark,
        }
        let mut items = Vec::new();
        for n in 1..=max_rank {
            items.push(Item::Length(n));
            for i in 1..=n {
                for m in 1..=max_size {
                    items.extend(Partition::all(m).into_iter().map(|xi| Item::Case(n, i, xi)));
                }
            }
        }
        if max_rank >= 3 {
            items.push(Item::Remark);
        }
        let mut reports: Vec<Report> = items
            .par_iter()
            .flat_map_iter(|item| match item {
                Item::Case(n, i, xi) => vec![
                    self.verify_main(*n, *i, xi, None),
                    self.verify_dim(*n, *i, xi),
                    self.verify_blocks(*n, *i, xi),
                    self.verify_point_independence(*n, *i, xi, DEFAULT_TRIALS, seed),
                ],
                Item::Length(n) => vec![self.verify_lemma_length(*n, DEFAULT_SAMPLES, seed)],
                Item::Remark => vec![self.verify_remark_sl4()],
            })
            .collect();
        reports.sort_by(|a, b| (&a.name, &a.params).cmp(&(&b.name, &b.params)));
        reports
    }
}

/// A generator depending only on the user seed and the item label.
fn item_rng(seed: u64, label: &str) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(label.as_bytes());
    ChaCha8Rng::from_seed(h.finalize().into())
}

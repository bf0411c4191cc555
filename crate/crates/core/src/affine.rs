//! The extended affine Weyl group of type `A_n^{(1)}` acting on affine weights.
//!
//! An affine weight is `λ + kΛ_0 + dδ` with `λ` rational in the ω-basis. The
//! extended group is `W ⋉ T_P`; an element is stored as a pair `(w, μ)`
//! standing for `t_μ ∘ w`, so `(w, μ)(w', μ') = (ww', μ + wμ')`. The diagram
//! automorphism part is never split off; the length function below is the
//! affine inversion count, which gives those automorphisms length zero.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::typea::{RootSystemA, Weight, WeylElt};

/// `λ + level·Λ_0 + dcoef·δ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineWeight {
    pub finite: Vec<Q>,
    pub level: Q,
    pub dcoef: Q,
}

impl AffineWeight {
    pub fn new(finite: Vec<Q>, level: Q, dcoef: Q) -> AffineWeight {
        AffineWeight { finite, level, dcoef }
    }

    pub fn from_weight(lambda: &Weight) -> AffineWeight {
        AffineWeight::new(lambda.to_q(), Q::ZERO, Q::ZERO)
    }

    pub fn lambda0(n: usize) -> AffineWeight {
        AffineWeight::new(vec![Q::ZERO; n], Q::ONE, Q::ZERO)
    }

    pub fn delta(n: usize) -> AffineWeight {
        AffineWeight::new(vec![Q::ZERO; n], Q::ZERO, Q::ONE)
    }

    /// `Λ_i = ω_i + ω_i(h_θ)Λ_0` for `i ≥ 1`, and `Λ_0` for `i = 0`.
    pub fn fundamental(n: usize, i: usize) -> AffineWeight {
        if i == 0 {
            return Self::lambda0(n);
        }
        let w = Weight::fundamental(n, i);
        let theta_pair: i64 = w.coords().iter().sum();
        AffineWeight::new(w.to_q(), Q::from_int(theta_pair), Q::ZERO)
    }

    /// The simple root `α_i`, with `α_0 = δ − θ`.
    pub fn simple_root(rs: &RootSystemA, i: usize) -> AffineWeight {
        if i == 0 {
            let minus_theta = rs.theta.to_q().iter().map(|c| -c).collect();
            AffineWeight::new(minus_theta, Q::ZERO, Q::ONE)
        } else {
            AffineWeight::from_weight(rs.simple_root(i))
        }
    }

    pub fn rank(&self) -> usize {
        self.finite.len()
    }

    /// `Λ(h_i)` for `i ∈ {0, …, n}`, using `h_0 = c − h_θ`.
    pub fn pair(&self, i: usize) -> Q {
        if i == 0 {
            &self.level - &self.finite.iter().cloned().sum::<Q>()
        } else {
            self.finite[i - 1].clone()
        }
    }

    pub fn is_dominant(&self) -> bool {
        (0..=self.rank()).all(|i| !self.pair(i).is_negative())
    }

    pub fn add(&self, other: &AffineWeight) -> AffineWeight {
        self.axpy(&Q::ONE, other)
    }

    /// `self + k·other`.
    pub fn axpy(&self, k: &Q, other: &AffineWeight) -> AffineWeight {
        AffineWeight {
            finite: self.finite.iter().zip(&other.finite).map(|(a, b)| a + &(k * b)).collect(),
            level: &self.level + &(k * &other.level),
            dcoef: &self.dcoef + &(k * &other.dcoef),
        }
    }

    pub fn scale(&self, k: &Q) -> AffineWeight {
        AffineWeight {
            finite: self.finite.iter().map(|a| a * k).collect(),
            level: &self.level * k,
            dcoef: &self.dcoef * k,
        }
    }

    /// Equality up to a multiple of `δ`.
    pub fn eq_mod_delta(&self, other: &AffineWeight) -> bool {
        self.finite == other.finite && self.level == other.level
    }

    pub fn without_delta(&self) -> AffineWeight {
        AffineWeight { dcoef: Q::ZERO, ..self.clone() }
    }

    fn check_rank(&self, n: usize) -> Result<()> {
        if self.rank() != n {
            return Err(Error::RankMismatch { expected: n, found: self.rank() });
        }
        Ok(())
    }
}

/// `t_μ(Λ)`: `t_μ(λ) = λ − (λ,μ)δ` on level-zero weights and
/// `t_μ(Λ_0) = Λ_0 + μ − ½(μ,μ)δ`, extended linearly.
pub fn translate(rs: &RootSystemA, mu: &Weight, big: &AffineWeight) -> Result<AffineWeight> {
    mu.check_rank(rs.rank())?;
    big.check_rank(rs.rank())?;
    Ok(translate_q(rs, &mu.to_q(), big))
}

fn translate_q(rs: &RootSystemA, mu: &[Q], big: &AffineWeight) -> AffineWeight {
    let lam_mu = rs.inner_q(&big.finite, mu);
    let mu_mu = rs.inner_q(mu, mu);
    let finite = big.finite.iter().zip(mu).map(|(a, m)| a + &(&big.level * m)).collect();
    let dcoef = &(&big.dcoef - &lam_mu) - &(&(&big.level * &mu_mu) / &Q::from_int(2));
    AffineWeight { finite, level: big.level.clone(), dcoef }
}

/// `s_i(Λ) = Λ − Λ(h_i)α_i` for `i ∈ {0, …, n}`.
pub fn reflect(rs: &RootSystemA, i: usize, big: &AffineWeight) -> Result<AffineWeight> {
    big.check_rank(rs.rank())?;
    if i > rs.rank() {
        return Err(Error::NodeOutOfRange { node: i, rank: rs.rank() });
    }
    let k = -big.pair(i);
    Ok(big.axpy(&k, &AffineWeight::simple_root(rs, i)))
}

/// `t_μ ∘ w` in the extended affine Weyl group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtAffineElt {
    pub w: WeylElt,
    pub mu: Weight,
}

impl ExtAffineElt {
    pub fn identity(n: usize) -> ExtAffineElt {
        ExtAffineElt { w: WeylElt::identity(n), mu: Weight::zero(n) }
    }

    pub fn translation(mu: Weight) -> ExtAffineElt {
        ExtAffineElt { w: WeylElt::identity(mu.rank()), mu }
    }

    pub fn finite(w: WeylElt) -> ExtAffineElt {
        let n = w.rank();
        ExtAffineElt { w, mu: Weight::zero(n) }
    }

    /// The simple reflection `s_i`, `i ∈ {0, …, n}`; `s_0 = t_θ s_θ`.
    pub fn simple(rs: &RootSystemA, i: usize) -> ExtAffineElt {
        let n = rs.rank();
        if i == 0 {
            let mut perm: Vec<usize> = (0..=n).collect();
            perm.swap(0, n);
            let s_theta = WeylElt::from_perm(perm).expect("transposition");
            ExtAffineElt { w: s_theta, mu: rs.theta.clone() }
        } else {
            ExtAffineElt::finite(WeylElt::simple(n, i))
        }
    }

    pub fn rank(&self) -> usize {
        self.mu.rank()
    }

    pub fn compose(&self, other: &ExtAffineElt) -> ExtAffineElt {
        ExtAffineElt { w: self.w.compose(&other.w), mu: &self.mu + &self.w.act(&other.mu) }
    }

    pub fn inverse(&self) -> ExtAffineElt {
        let winv = self.w.inverse();
        let mu = -&winv.act(&self.mu);
        ExtAffineElt { w: winv, mu }
    }

    pub fn act(&self, rs: &RootSystemA, big: &AffineWeight) -> Result<AffineWeight> {
        big.check_rank(rs.rank())?;
        let moved = AffineWeight {
            finite: self.w.act_q(&big.finite),
            level: big.level.clone(),
            dcoef: big.dcoef.clone(),
        };
        translate(rs, &self.mu, &moved)
    }

    /// Number of positive affine real roots `α + kδ` sent to negative ones.
    ///
    /// `t_μ w (α + kδ) = wα + (k − (wα, μ))δ`; for each finite root the
    /// offending `k` form an interval, so the count is closed form.
    pub fn length(&self, rs: &RootSystemA) -> u64 {
        let n = rs.rank();
        let positive: HashSet<Weight> =
            rs.positive_roots().iter().map(|a| a.weight(n)).collect();
        let mut total: i64 = 0;
        for a in &positive {
            for alpha in [a.clone(), -a] {
                let alpha_pos = positive.contains(&alpha);
                let image = self.w.act(&alpha);
                let image_pos = positive.contains(&image);
                let c = rs
                    .inner_q(&image.to_q(), &self.mu.to_q())
                    .to_i64()
                    .expect("roots pair integrally with weights");
                let k_min = if alpha_pos { 0 } else { 1 };
                let k_max = if image_pos { c - 1 } else { c };
                total += (k_max - k_min + 1).max(0);
            }
        }
        total as u64
    }
}

/// Finds the dominant `Λ` of level `ℓ` and the shortest `x` with
/// `xΛ ≡ w_0λ + ℓΛ_0 (mod δ)`.
///
/// The target is reflected into the dominant chamber, always using the
/// smallest node with a negative pairing; the word read backwards is `x`.
/// Returned `Λ` has zero δ-coefficient.
pub fn demazure_pair(
    rs: &RootSystemA,
    ell: i64,
    lambda: &Weight,
) -> Result<(ExtAffineElt, AffineWeight)> {
    if ell < 1 {
        return Err(Error::NonPositive { what: "level", value: ell });
    }
    lambda.check_rank(rs.rank())?;
    lambda.require_dominant()?;
    let n = rs.rank();
    let w0 = WeylElt::longest(n);
    let target = AffineWeight::new(w0.act(lambda).to_q(), Q::from_int(ell), Q::ZERO);
    let mut y = target;
    let mut word = Vec::new();
    while let Some(i) = (0..=n).find(|&i| y.pair(i).is_negative()) {
        y = reflect(rs, i, &y)?;
        word.push(i);
    }
    let x = word
        .iter()
        .fold(ExtAffineElt::identity(n), |acc, &i| acc.compose(&ExtAffineElt::simple(rs, i)));
    Ok((x, y.without_delta()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    /// Independent length: act on the regular dominant weight Σ Λ_i and count
    /// the simple reflections needed to return to the dominant chamber.
    fn straightening_length(rs: &RootSystemA, x: &ExtAffineElt) -> u64 {
        let n = rs.rank();
        let rho_hat = (0..=n)
            .map(|i| AffineWeight::fundamental(n, i))
            .fold(AffineWeight::new(vec![Q::ZERO; n], Q::ZERO, Q::ZERO), |a, b| a.add(&b));
        let mut y = x.act(rs, &rho_hat).unwrap();
        let mut steps = 0;
        while let Some(i) = (0..=n).find(|&i| y.pair(i).is_negative()) {
            y = reflect(rs, i, &y).unwrap();
            steps += 1;
        }
        steps
    }

    fn random_elt(rng: &mut ChaCha8Rng, n: usize) -> ExtAffineElt {
        let all = WeylElt::all(n);
        let w = all[rng.gen_range(0..all.len())].clone();
        let mu = Weight::new((0..n).map(|_| rng.gen_range(-3..=3)).collect());
        ExtAffineElt { w, mu }
    }

    #[test]
    fn translate_examples() {
        let rs = RootSystemA::new(1).unwrap();
        let l0 = AffineWeight::lambda0(1);
        assert_eq!(translate(&rs, &Weight::zero(1), &l0).unwrap(), l0);
        let minus_alpha = Weight::new(vec![-2]);
        let r = translate(&rs, &minus_alpha, &l0).unwrap();
        assert_eq!(r, AffineWeight::new(vec![q(-2)], q(1), q(-1)));
        let l1 = AffineWeight::fundamental(1, 1);
        let r = translate(&rs, &minus_alpha, &l1).unwrap();
        // Λ_1 = ω_1 + Λ_0 ↦ −ω_1 + Λ_0, with δ-part 1 − 1 = 0
        assert_eq!(r.finite, vec![q(-1)]);
        assert_eq!(r.level, q(1));
        assert_eq!(r.dcoef, q(0));
    }

    #[test]
    fn reflect_examples() {
        let rs = RootSystemA::new(1).unwrap();
        let l1 = AffineWeight::fundamental(1, 1);
        let r = reflect(&rs, 1, &l1).unwrap();
        assert_eq!(r, l1.axpy(&q(-1), &AffineWeight::simple_root(&rs, 1)));
        let l0 = AffineWeight::lambda0(1);
        let r = reflect(&rs, 0, &l0).unwrap();
        assert_eq!(r, AffineWeight::new(vec![q(2)], q(1), q(-1)));
        assert!(reflect(&rs, 2, &l0).is_err());
        for i in 0..=1 {
            let twice = reflect(&rs, i, &reflect(&rs, i, &l1).unwrap()).unwrap();
            assert_eq!(twice, l1);
        }
    }

    #[test]
    fn fundamental_pairings() {
        for n in 1..=3 {
            for i in 0..=n {
                let big = AffineWeight::fundamental(n, i);
                for j in 0..=n {
                    assert_eq!(big.pair(j), if i == j { Q::ONE } else { Q::ZERO });
                }
            }
        }
    }

    #[test]
    fn length_examples() {
        let rs = RootSystemA::new(1).unwrap();
        assert_eq!(ExtAffineElt::identity(1).length(&rs), 0);
        assert_eq!(ExtAffineElt::translation(Weight::new(vec![-2])).length(&rs), 2);
        assert_eq!(ExtAffineElt::translation(Weight::new(vec![-1])).length(&rs), 1);
        for n in 1..=3 {
            let rs = RootSystemA::new(n).unwrap();
            for i in 0..=n {
                assert_eq!(ExtAffineElt::simple(&rs, i).length(&rs), 1);
            }
        }
    }

    #[test]
    fn simple_elements_act_like_reflections() {
        for n in 1..=3 {
            let rs = RootSystemA::new(n).unwrap();
            let probe = AffineWeight::new(
                (0..n).map(|k| Q::new(2 * k as i64 - 1, 3)).collect(),
                Q::new(5, 2),
                Q::new(-1, 7),
            );
            for i in 0..=n {
                assert_eq!(
                    ExtAffineElt::simple(&rs, i).act(&rs, &probe).unwrap(),
                    reflect(&rs, i, &probe).unwrap()
                );
            }
        }
    }

    #[test]
    fn length_agrees_with_straightening_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=3 {
            let rs = RootSystemA::new(n).unwrap();
            for _ in 0..60 {
                let x = random_elt(&mut rng, n);
                assert_eq!(x.length(&rs), straightening_length(&rs, &x), "{x:?}");
                assert_eq!(x.length(&rs), x.inverse().length(&rs));
                for i in 0..=n {
                    let sx = ExtAffineElt::simple(&rs, i).compose(&x);
                    assert_eq!(sx.length(&rs).abs_diff(x.length(&rs)), 1);
                }
            }
        }
    }

    #[test]
    fn action_is_compatible_with_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=3 {
            let rs = RootSystemA::new(n).unwrap();
            let basis: Vec<AffineWeight> = (0..=n)
                .map(|i| AffineWeight::fundamental(n, i))
                .chain([AffineWeight::delta(n)])
                .collect();
            for _ in 0..20 {
                let (x, y) = (random_elt(&mut rng, n), random_elt(&mut rng, n));
                for b in &basis {
                    let lhs = x.compose(&y).act(&rs, b).unwrap();
                    let rhs = x.act(&rs, &y.act(&rs, b).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                    assert_eq!(lhs.level, b.level);
                    // acting by (w, μ) is translating w·Λ by μ
                    let moved = ExtAffineElt::finite(x.w.clone()).act(&rs, b).unwrap();
                    assert_eq!(x.act(&rs, b).unwrap(), translate(&rs, &x.mu, &moved).unwrap());
                }
                let mu = Weight::new((0..n).map(|_| rng.gen_range(-2..=2)).collect());
                let nu = Weight::new((0..n).map(|_| rng.gen_range(-2..=2)).collect());
                for b in &basis {
                    let two = translate(&rs, &mu, &translate(&rs, &nu, b).unwrap()).unwrap();
                    assert_eq!(two, translate(&rs, &(&mu + &nu), b).unwrap());
                }
                assert_eq!(
                    translate(&rs, &mu, &AffineWeight::delta(n)).unwrap(),
                    AffineWeight::delta(n)
                );
            }
        }
    }

    #[test]
    fn lemma_length_additivity_small() {
        let rs = RootSystemA::new(1).unwrap();
        let w1 = Weight::new(vec![1]);
        let t = |m: &Weight| ExtAffineElt::translation(-m);
        let x = t(&w1).compose(&t(&w1));
        assert_eq!(x.length(&rs), 2);
        assert_eq!(t(&w1).length(&rs) + t(&w1).length(&rs), 2);
    }

    #[test]
    fn demazure_pair_examples() {
        let rs = RootSystemA::new(1).unwrap();
        let (x, big) = demazure_pair(&rs, 3, &Weight::zero(1)).unwrap();
        assert_eq!(x, ExtAffineElt::identity(1));
        assert_eq!(big, AffineWeight::lambda0(1).scale(&q(3)));

        let (x, big) = demazure_pair(&rs, 1, &Weight::new(vec![1])).unwrap();
        assert_eq!(big, AffineWeight::fundamental(1, 1));
        let target = AffineWeight::new(vec![q(-1)], q(1), q(0));
        assert!(x.act(&rs, &big).unwrap().eq_mod_delta(&target));
        assert_eq!(x.length(&rs), 1);
        // t_{-α} also solves the equation, but is longer
        let t = ExtAffineElt::translation(Weight::new(vec![-2]));
        assert!(t.act(&rs, &big).unwrap().eq_mod_delta(&target));
        assert!(t.length(&rs) > x.length(&rs));

        let (x, big) = demazure_pair(&rs, 2, &Weight::new(vec![2])).unwrap();
        assert_eq!(big, AffineWeight::fundamental(1, 1).scale(&q(2)));
        let target = AffineWeight::new(vec![q(-2)], q(2), q(0));
        assert!(x.act(&rs, &big).unwrap().eq_mod_delta(&target));

        assert!(demazure_pair(&rs, 0, &Weight::zero(1)).is_err());
        assert!(demazure_pair(&rs, 1, &Weight::new(vec![-1])).is_err());
    }

    #[test]
    fn demazure_pair_is_minimal_in_its_coset() {
        for n in 1..=2 {
            let rs = RootSystemA::new(n).unwrap();
            for ell in 1..=2 {
                for c in 0..3i64.pow(n as u32) {
                    let lam = Weight::new((0..n).map(|k| (c / 3i64.pow(k as u32)) % 3).collect());
                    let (x, big) = demazure_pair(&rs, ell, &lam).unwrap();
                    assert!(big.is_dominant());
                    assert_eq!(big.level, q(ell));
                    let target = AffineWeight::new(
                        WeylElt::longest(n).act(&lam).to_q(),
                        q(ell),
                        Q::ZERO,
                    );
                    assert!(x.act(&rs, &big).unwrap().eq_mod_delta(&target));
                    // no simple reflection fixing Λ shortens x
                    for i in 0..=n {
                        if big.pair(i).is_zero() {
                            let xs = x.compose(&ExtAffineElt::simple(&rs, i));
                            assert!(xs.length(&rs) > x.length(&rs));
                        }
                    }
                }
            }
        }
    }
}
